use num::{BigInt, BigRational, ToPrimitive, Zero};

use crate::coeffs::{coeff_d_rational, margin_closed_form_rational};

/// Outcome of the exact-arithmetic damping audit over `k = 1 ..= max_k`.
///
/// `all_positive` certifies every gap `d_{k+1} - d_k` exceeds `1/2`;
/// `identity_holds` certifies the definitional margins agree with the
/// expanded closed form at every index, which pins the `d` sequence
/// itself; `monotone_decreasing_from` is the first index after which the
/// margins strictly decrease (the sequence rises from `1/16` at `k = 1`
/// to its peak at `k = 2`, then decays like `1/k^2`).
#[derive(Debug, Clone)]
pub struct DampingReport {
    pub checked_up_to: u64,
    pub all_positive: bool,
    pub identity_holds: bool,
    pub monotone_decreasing_from: u64,
    pub min_margin: f64,
    pub argmin_k: u64,
    /// Upper bound on the quadratic form over unit vectors supported on
    /// the audited range: `-(1/2) - min_margin`.
    pub max_quadratic_bound: f64,
    /// Logarithmically spaced `(k, margin)` table for reporting.
    pub samples: Vec<(u64, f64)>,
}

impl DampingReport {
    /// True when every certificate in the report holds.
    pub fn passed(&self) -> bool {
        self.all_positive && self.identity_holds && self.monotone_decreasing_from == 2
    }
}

/// Audits the damping margins `d_{k+1} - d_k - 1/2` in exact rational
/// arithmetic up to `max_k`.
pub fn damping_audit(max_k: u64) -> DampingReport {
    run_audit(max_k, coeff_d_rational)
}

/// Re-runs the audit with `d_{corrupt_k}` perturbed by `1/1000` and
/// reports whether the audit notices. A sound audit must: the margins at
/// `corrupt_k - 1` and `corrupt_k` both leave the closed-form identity.
/// This guards the auditor itself against vacuous-pass regressions.
pub fn audit_detects_corruption(corrupt_k: u64, max_k: u64) -> bool {
    let bump = BigRational::new(BigInt::from(1), BigInt::from(1000));
    let report = run_audit(max_k, move |k| {
        let d = coeff_d_rational(k);
        if k == corrupt_k {
            d + &bump
        } else {
            d
        }
    });
    !report.passed()
}

fn run_audit<F: Fn(u64) -> BigRational>(max_k: u64, d: F) -> DampingReport {
    assert!(max_k >= 2, "audit needs at least two margins");
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    let mut all_positive = true;
    let mut identity_holds = true;
    let mut monotone_from = 1_u64;
    let mut min_margin: Option<(u64, BigRational)> = None;
    let mut samples = Vec::new();
    let mut next_sample = 1_u64;

    let mut d_prev = d(1);
    let mut margin_prev: Option<BigRational> = None;
    for k in 1..=max_k {
        let d_next = d(k + 1);
        let m = &d_next - &d_prev - &half;
        if m <= BigRational::zero() {
            all_positive = false;
        }
        if m != margin_closed_form_rational(k) {
            identity_holds = false;
        }
        if let Some(prev) = &margin_prev {
            if m >= *prev {
                // Not yet strictly decreasing: restart the tail here.
                monotone_from = k;
            }
        }
        match &min_margin {
            Some((_, best)) if *best <= m => {}
            _ => min_margin = Some((k, m.clone())),
        }
        if k == next_sample || k == max_k {
            samples.push((k, m.to_f64().unwrap_or(f64::NAN)));
            next_sample = next_sample.saturating_mul(2);
        }
        margin_prev = Some(m);
        d_prev = d_next;
    }

    let (argmin_k, min_rational) = min_margin.expect("non-empty audit range");
    let min_margin = min_rational.to_f64().unwrap_or(f64::NAN);
    DampingReport {
        checked_up_to: max_k,
        all_positive,
        identity_holds,
        monotone_decreasing_from: monotone_from,
        min_margin,
        argmin_k,
        max_quadratic_bound: -0.5 - min_margin,
        samples,
    }
}
