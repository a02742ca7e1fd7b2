use spectral_core::{mul_odd_even, recover_velocity, EvenField, OddField};

use crate::Result;

/// First linearized operator in physical form:
/// `L_1 f = -sin(x) f_x + cos(x) f - sin(x) u_x + cos(x) u` with
/// `u_xx = f`. Maps the weighted space into itself: the four slope
/// contributions at the origin cancel in pairs.
pub fn apply_l1(f: &OddField) -> Result<OddField> {
    let grid = f.grid().clone();
    let sin = OddField::from_coeffs(grid.clone(), vec![1.0])?;
    let cos = EvenField::from_coeffs(grid, 0.0, vec![1.0])?;
    let pair = recover_velocity(f);

    let sin_fx = mul_odd_even(&sin, &f.differentiate())?;
    let cos_f = mul_odd_even(f, &cos)?;
    let sin_ux = mul_odd_even(&sin, &pair.u.differentiate())?;
    let cos_u = mul_odd_even(&pair.u, &cos)?;

    let mut out = cos_f.add_scaled(&sin_fx, -1.0)?;
    out = out.add_scaled(&sin_ux, -1.0)?;
    out = out.add_scaled(&cos_u, 1.0)?;
    Ok(out)
}

/// Bounded correction carrying the normalization feedback:
/// `A f = -u_x(0) sin(x) + f - cos(x) f + sin(x) u_x`. Also slope-free
/// at the origin, so it preserves the weighted space.
pub fn apply_a(f: &OddField) -> Result<OddField> {
    let grid = f.grid().clone();
    let sin = OddField::from_coeffs(grid.clone(), vec![1.0])?;
    let cos = EvenField::from_coeffs(grid, 0.0, vec![1.0])?;
    let pair = recover_velocity(f);

    let cos_f = mul_odd_even(f, &cos)?;
    let sin_ux = mul_odd_even(&sin, &pair.u.differentiate())?;

    let mut out = f.add_scaled(&cos_f, -1.0)?;
    out = out.add_scaled(&sin_ux, 1.0)?;
    out = out.add_scaled(&sin, -pair.u_x0)?;
    Ok(out)
}

/// The full linearization family `L_a = L_1 + (1 - a) A`.
pub fn apply_la(f: &OddField, a: f64) -> Result<OddField> {
    let l1 = apply_l1(f)?;
    if a == 1.0 {
        return Ok(l1);
    }
    let corr = apply_a(f)?;
    Ok(l1.add_scaled(&corr, 1.0 - a)?)
}
