//! Weighted inner products, norms, and energy hierarchies for odd periodic
//! fields on the shifted torus grid.
//!
//! The central object is the Hilbert space `H` of odd functions with
//! vanishing slope at the origin, equipped with the inner product
//!
//! ```text
//! <f, g>_H = integral f_x g_x rho dx,      rho(x) = 1 / (4 pi sin^2(x/2)).
//! ```
//!
//! The weight blows up like `1/x^2` at the origin, so membership in `H`
//! forces `f_x(0) = 0` on top of oddness: admissible fields vanish to third
//! order at `x = 0`. In sine-coefficient terms the constraint is
//! `sum_m m a_m = 0`, and the space has an explicit orthonormal basis
//!
//! ```text
//! e~_k = sin((k+1)x)/(k+1) - sin(kx)/k,    k = 1, 2, ...
//! ```
//!
//! [`to_tilde`] and [`from_tilde`] convert between sine coefficients and
//! basis coefficients in `O(N)` via a telescoping recurrence, which makes
//! `H` norms exact sums of squares instead of singular quadratures.
//!
//! On top of `H` the crate provides the stronger functional [`w_value`]
//! (adds a second-derivative term weighted by `cos^2(x/2)`), the weighted
//! derivative hierarchy [`ek_norm`] with weights `(1 + cos x)^k`, and the
//! blended energies [`energy_e`] and [`energy_i`] used to monitor damping
//! in time evolution.

mod energy;
mod error;
mod norms;
mod tilde;
mod weights;

pub use energy::{ek_norm, energy_e, energy_i, EnergyConfig};
pub use error::SpaceError;
pub use norms::{derivative_samples, dx_weighted, h_inner, h_norm, project_h, w_value};
pub use tilde::{e_tilde, from_tilde, to_tilde, TildeCoeffs};
pub use weights::WeightSpec;

pub type Result<T> = std::result::Result<T, SpaceError>;
