//! Pseudospectral kernel for odd and even 2π-periodic scalar fields on the torus.
//!
//! Fields are represented by finite sine or cosine series. Collocation uses a
//! uniform grid with a half-cell shift, `x_j = −π + (j + 1/2)·2π/M`, so that no
//! node ever lands on `x = 0` or `x = ±π`; downstream consumers evaluate
//! singular weights and cusped profiles at the nodes and rely on this.
//!
//! The grid carries enough points (`M ≥ 3N + 1`, rounded up to even) that a
//! pointwise product of two `N`-mode fields, re-analyzed and truncated back to
//! `N` modes, reproduces the exact convolution coefficients: quadratic products
//! are alias-free in the retained range.
//!
//! Parity is enforced in the type system: differentiation maps [`OddField`] to
//! [`EvenField`] and back, and the product routines encode the odd/even
//! multiplication table.

mod error;
mod field;
mod grid;
mod product;
pub mod quad;
mod velocity;

pub use error::SpectralError;
pub use field::{EvenField, OddField};
pub use grid::Grid;
pub use product::{mul_even_even, mul_odd_even, mul_odd_odd};
pub use velocity::{recover_velocity, VelocityPair};

/// Convenience alias used throughout the workspace.
pub type Result<T> = std::result::Result<T, SpectralError>;
