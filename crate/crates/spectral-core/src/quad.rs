//! Scalar quadrature helpers for non-periodic integrands.
//!
//! The collocation grid's trapezoid rule ([`crate::Grid::integrate`]) is the
//! right tool for smooth periodic integrands; these routines cover the rest:
//! oracle integrals with non-periodic factors, and integrands with algebraic
//! endpoint singularities.

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
///
/// Classic recursive bisection with the 15-point error estimate; intended for
/// smooth integrands. `tol` is an absolute tolerance for the whole interval.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Composite Simpson rule with `n` sub-intervals (`n` rounded up to even).
pub fn composite_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n.max(2) } else { n + 1 };
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Quadrature of `f` over `[a, b]` when `f` has algebraic (Hölder-type)
/// singular behavior at one or both endpoints.
///
/// The interval is split at its midpoint and each half is covered by dyadic
/// cells shrinking geometrically toward the flagged endpoint, with composite
/// Simpson (`n_per_cell` sub-intervals) inside each cell. Cells narrower than
/// `~1e-15·(b−a)` are dropped; for integrands bounded by `|x−endpoint|^γ`
/// with `γ > −1/2` the discarded mass is far below any tolerance used here.
pub fn graded_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    singular_at_a: bool,
    singular_at_b: bool,
    n_per_cell: usize,
) -> f64 {
    assert!(b > a, "empty interval");
    let mid = 0.5 * (a + b);
    let mut total = 0.0;
    if singular_at_a {
        total += graded_half(f, a, mid, true, n_per_cell);
    } else {
        total += composite_simpson(f, a, mid, n_per_cell);
    }
    if singular_at_b {
        total += graded_half(f, mid, b, false, n_per_cell);
    } else {
        total += composite_simpson(f, mid, b, n_per_cell);
    }
    total
}

/// Dyadic cells on `[a, b]` accumulating toward `a` (`toward_left`) or `b`.
fn graded_half<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    toward_left: bool,
    n_per_cell: usize,
) -> f64 {
    let len = b - a;
    let mut total = 0.0;
    let mut outer = len;
    // 50 halvings puts the innermost cell edge at ~1e-15 of the interval.
    for _ in 0..50 {
        let inner = outer * 0.5;
        let (lo, hi) = if toward_left {
            (a + inner, a + outer)
        } else {
            (b - outer, b - inner)
        };
        total += composite_simpson(f, lo, hi, n_per_cell);
        outer = inner;
    }
    total
}
