use spectral_core::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpaceError {
    /// The field has a nonzero slope at the origin, so the singular weight
    /// `rho ~ 1/x^2` makes its `H` norm divergent. The offending residual
    /// `sum_m m a_m` is reported relative to the coefficient scale
    /// `sum_m |m a_m|`.
    #[error(
        "field is not in H: slope residual sum(m a_m) = {slope:.3e} \
         exceeds 1e-9 of coefficient scale {scale:.3e}"
    )]
    NotInH { slope: f64, scale: f64 },

    /// A tilde-coefficient vector is too long for the requested grid.
    #[error("{needed} sine modes needed to hold {k} basis coefficients, grid has {available}")]
    TildeTooLong {
        k: usize,
        needed: usize,
        available: usize,
    },

    /// Energy parameters outside the range the damping analysis covers.
    #[error("invalid energy configuration: {0}")]
    InvalidEnergyConfig(String),

    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
