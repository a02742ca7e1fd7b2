//! The linearization of the rescaled vorticity dynamics about the
//! stationary profile `omega = -sin x`, in two interchangeable forms.
//!
//! **Physical form.** [`apply_l1`] realizes
//!
//! ```text
//! L_1 f = -sin(x) f_x + cos(x) f - sin(x) u_x + cos(x) u,    u_xx = f,
//! ```
//!
//! through the pseudospectral primitives, [`apply_a`] the bounded
//! correction that carries the normalization feedback, and [`apply_la`]
//! the family `L_a = L_1 + (1 - a) A` parameterized by the advection
//! strength `a`.
//!
//! **Basis form.** In the orthonormal basis `e~_k` of the weighted space
//! the operator `L_1` is tridiagonal with entries built from the single
//! closed-form sequence `d_k = (k+1)^2 (k-1)^2 / (2 k^3)`; see
//! [`TridiagonalOperator`]. The quadratic form telescopes to
//! `-sum_k (d_{k+1} - d_k) c_k^2` with no truncation defect, so spectral
//! damping reduces to positivity of the gap sequence `d_{k+1} - d_k - 1/2`.
//! [`damping_audit`] certifies that positivity in exact rational
//! arithmetic, and [`truncated_spectrum`] computes eigenvalues of the
//! Galerkin truncation of `L_a` for direct inspection.

mod audit;
mod coeffs;
mod error;
mod physical;
mod spectrum;
mod tridiagonal;

pub use audit::{audit_detects_corruption, damping_audit, DampingReport};
pub use coeffs::{
    coeff_a, coeff_b, coeff_d, coeff_d_rational, margin, margin_closed_form_rational,
    margin_rational,
};
pub use error::OperatorError;
pub use physical::{apply_a, apply_l1, apply_la};
pub use spectrum::{build_la_matrix, truncated_spectrum};
pub use tridiagonal::TridiagonalOperator;

pub type Result<T> = std::result::Result<T, OperatorError>;
