use spectral_core::SpectralError;
use thiserror::Error;
use weighted_spaces::SpaceError;

#[derive(Debug, Error)]
pub enum OperatorError {
    #[error(transparent)]
    Spectral(#[from] SpectralError),

    #[error(transparent)]
    Space(#[from] SpaceError),

    /// The Galerkin dimension does not fit on the supplied grid.
    #[error("truncation dimension {dim} needs a grid with at least {needed} modes")]
    DimensionTooLarge { dim: usize, needed: usize },
}
