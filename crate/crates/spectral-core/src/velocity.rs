use crate::field::OddField;

/// The velocity recovered from a vorticity field, together with its slope at
/// the origin.
#[derive(Debug, Clone)]
pub struct VelocityPair {
    /// The unique odd periodic `u` with `u_xx = ω`.
    pub u: OddField,
    /// `u_x(0) = −Σ a_m/m`; equals `(1/2π)∫₀^{2π} y ω(y) dy`.
    pub u_x0: f64,
}

/// Solve `u_xx = ω` for the odd 2π-periodic velocity.
///
/// In modes this is `u_m = −a_m/m²`; oddness and periodicity fix the two
/// integration constants, and the slope at the origin comes out as
/// `u_x(0) = −Σ a_m/m`.
pub fn recover_velocity(omega: &OddField) -> VelocityPair {
    let mut u_coeffs = Vec::with_capacity(omega.coeffs().len());
    let mut u_x0 = 0.0;
    for (i, &a) in omega.coeffs().iter().enumerate() {
        let m = (i + 1) as f64;
        u_coeffs.push(-a / (m * m));
        u_x0 -= a / m;
    }
    let u = OddField::from_coeffs(omega.grid().clone(), u_coeffs)
        .expect("velocity inherits the vorticity mode count");
    VelocityPair { u, u_x0 }
}
