use spectral_core::SpectralError;
use thiserror::Error;
use weighted_spaces::SpaceError;

#[derive(Debug, Error)]
pub enum ProfileError {
    /// Newton failed to reach the residual tolerance. The last iterate is
    /// carried along so a caller can inspect it or restart from it.
    #[error(
        "Newton did not converge after {iterations} iterations \
         (last residual sup {last_residual:.3e})"
    )]
    NonConvergence {
        iterations: usize,
        last_residual: f64,
        last_coeffs: Vec<f64>,
    },

    /// The linearized system became numerically singular.
    #[error("singular Newton system at iteration {iteration}")]
    SingularSystem { iteration: usize },

    /// A self-similar evaluation was requested at or beyond the blow-up
    /// time of the profile.
    #[error("time {t} is at or beyond the blow-up time {t_star}")]
    BeyondBlowup { t: f64, t_star: f64 },

    /// Exponent outside the admissible window for the cusped family.
    #[error("alpha = {alpha} outside the admissible window ({lo}, {hi})")]
    AlphaOutOfRange { alpha: f64, lo: f64, hi: f64 },

    #[error(transparent)]
    Spectral(#[from] SpectralError),

    #[error(transparent)]
    Space(#[from] SpaceError),
}
