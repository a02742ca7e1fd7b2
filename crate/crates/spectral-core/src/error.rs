use thiserror::Error;

/// Errors from grid construction, transforms and products.
#[derive(Debug, Clone, Error)]
pub enum SpectralError {
    /// The requested collocation count cannot serve the requested mode count.
    #[error("invalid grid: M = {m} points for N = {n_modes} modes; M must be even and at least 3N + 1")]
    InvalidGrid { m: usize, n_modes: usize },

    /// A sample vector does not match the grid it claims to live on.
    #[error("sample count {got} does not match grid size {expected}")]
    SampleCount { got: usize, expected: usize },

    /// Samples handed to an odd (resp. even) analysis are not odd (resp. even)
    /// under `x ↦ −x` to within the stated tolerance.
    #[error("samples violate {expected_parity} symmetry: relative asymmetry {asymmetry:.3e} exceeds {tol:.1e}")]
    ParityViolation {
        expected_parity: &'static str,
        asymmetry: f64,
        tol: f64,
    },

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: (N = {left_n}, M = {left_m}) vs (N = {right_n}, M = {right_m})")]
    GridMismatch {
        left_n: usize,
        left_m: usize,
        right_n: usize,
        right_m: usize,
    },

    /// `eval_derivative_at_zero` supports orders 1 and 3 only.
    #[error("derivative order {0} at x = 0 is not supported (only 1 and 3)")]
    UnsupportedOrder(usize),
}
