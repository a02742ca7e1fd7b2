use crate::error::ProfileError;
use crate::newton::ProfileSolution;
use crate::Result;

/// Sup-norm defect of the induced self-similar field
/// `omega(x) / (1 + c t)` in the unrescaled equation at time `t`.
///
/// All three terms of the equation scale like `(1 + c t)^{-2}`, so the
/// defect is the stationary one divided by that square. For `c < 0` the
/// field ceases to exist at `t* = -1/c`; evaluation there or beyond is a
/// domain error rather than a number.
pub fn self_similar_residual(solution: &ProfileSolution, t: f64) -> Result<f64> {
    let denom = 1.0 + solution.c * t;
    if denom <= 0.0 {
        let t_star = if solution.c != 0.0 {
            -1.0 / solution.c
        } else {
            f64::INFINITY
        };
        return Err(ProfileError::BeyondBlowup { t, t_star });
    }
    Ok(solution.residual_sup / (denom * denom))
}
