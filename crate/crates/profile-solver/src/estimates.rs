use spectral_core::OddField;
use weighted_spaces::{h_norm, w_value};

use crate::newton::{solve_profile, ProfileSolution, SolverOptions};
use crate::Result;

/// Distances of a profile from the stationary pair `(-sin x, 1 - a)`,
/// together with the normalized ratios that the perturbative regime
/// predicts to stay bounded as `a -> 1`.
#[derive(Debug, Clone)]
pub struct ProfileEstimates {
    pub a: f64,
    pub c: f64,
    pub one_minus_a: f64,
    /// `sqrt` of the strengthened functional of `omega + sin x`.
    pub w_distance: f64,
    /// Weighted-space norm of `omega + sin x`.
    pub h_distance: f64,
    /// `|c - (1 - a)|`.
    pub c_deviation: f64,
    /// `w_distance / |1 - a|`; zero at `a = 1`.
    pub w_ratio: f64,
    /// `c_deviation / (1 - a)^2`; zero at `a = 1`.
    pub c_ratio: f64,
}

/// Measures how far a converged profile sits from the stationary state.
/// The difference `omega + sin x` has no origin slope (both terms carry
/// unit slope of opposite sign), so the weighted norms apply to it even
/// though neither term alone is admissible.
pub fn profile_estimates(solution: &ProfileSolution) -> Result<ProfileEstimates> {
    let field = solution.field();
    let sin = OddField::from_coeffs(solution.grid().clone(), vec![1.0])?;
    let diff = field.add_scaled(&sin, 1.0)?;
    let w_distance = w_value(&diff)?.sqrt();
    let h_distance = h_norm(&diff)?;
    let one_minus_a = 1.0 - solution.a;
    let c_deviation = (solution.c - one_minus_a).abs();
    let (w_ratio, c_ratio) = if one_minus_a == 0.0 {
        (0.0, 0.0)
    } else {
        (
            w_distance / one_minus_a.abs(),
            c_deviation / (one_minus_a * one_minus_a),
        )
    };
    Ok(ProfileEstimates {
        a: solution.a,
        c: solution.c,
        one_minus_a,
        w_distance,
        h_distance,
        c_deviation,
        w_ratio,
        c_ratio,
    })
}

/// Solves the profile problem along a parameter list, warm-starting each
/// solve from the most recent success. Failures do not abort the sweep;
/// each entry carries its own outcome.
pub fn continuation_sweep(
    a_values: &[f64],
    n: usize,
    options: &SolverOptions,
) -> Vec<(f64, Result<ProfileSolution>)> {
    let mut results = Vec::with_capacity(a_values.len());
    let mut warm: Option<Vec<f64>> = None;
    for &a in a_values {
        let mut opts = options.clone();
        if opts.initial.is_none() {
            opts.initial = warm.clone();
        }
        let outcome = solve_profile(a, n, &opts);
        if let Ok(sol) = &outcome {
            warm = Some(sol.coeffs.clone());
        }
        results.push((a, outcome));
    }
    results
}
