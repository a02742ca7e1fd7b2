use spectral_core::{mul_odd_even, OddField};

use crate::tilde::to_tilde;
use crate::weights::WeightSpec;
use crate::Result;

/// `H` inner product `integral f_x g_x rho dx`, computed exactly as a dot
/// product of orthonormal basis coefficients. Errors if either field has a
/// nonzero slope at the origin.
pub fn h_inner(f: &OddField, g: &OddField) -> Result<f64> {
    let cf = to_tilde(f)?;
    let cg = to_tilde(g)?;
    Ok(cf.inner(&cg))
}

/// `H` norm `sqrt(<f, f>_H)`.
pub fn h_norm(f: &OddField) -> Result<f64> {
    Ok(to_tilde(f)?.norm_sq().sqrt())
}

/// The strengthened functional
/// `||f||_H^2 + integral f_xx^2 cos^2(x/2) dx`.
///
/// This is a squared-norm-like quantity and is reported un-square-rooted.
/// The second term is a regular quadrature: the half-angle cosine weight
/// is bounded, so only the `H` part carries the origin constraint.
pub fn w_value(f: &OddField) -> Result<f64> {
    let h_sq = to_tilde(f)?.norm_sq();
    let f_xx = f.differentiate().differentiate();
    let samples = f_xx.synthesize();
    let weighted: Vec<f64> = f_xx
        .grid()
        .points()
        .iter()
        .zip(samples.iter())
        .map(|(&x, &v)| v * v * WeightSpec::Cos2Half.eval(x))
        .collect();
    Ok(h_sq + f_xx.grid().integrate(&weighted))
}

/// The weighted derivative `D_x f = sin(x) f_x`, itself an odd field.
///
/// The product is formed pseudospectrally and truncated to the grid's mode
/// count, which discards the single mode by which `sin(x) f_x` overruns
/// the expansion of `f`.
pub fn dx_weighted(f: &OddField) -> Result<OddField> {
    let sin = OddField::from_coeffs(f.grid().clone(), vec![1.0])?;
    Ok(mul_odd_even(&sin, &f.differentiate())?)
}

/// Grid samples of the `order`-th derivative of `f` (`order = 0` returns
/// samples of `f` itself). Derivatives are exact mode-by-mode operations,
/// alternating between sine and cosine expansions.
pub fn derivative_samples(f: &OddField, order: usize) -> Vec<f64> {
    if order == 0 {
        return f.synthesize();
    }
    let mut even = f.differentiate();
    let mut remaining = order - 1;
    loop {
        if remaining == 0 {
            return even.synthesize();
        }
        let odd = even.differentiate();
        remaining -= 1;
        if remaining == 0 {
            return odd.synthesize();
        }
        even = odd.differentiate();
        remaining -= 1;
    }
}

/// Orthogonal-in-slope projection onto `H`: adjusts the `sin(x)`
/// coefficient so the slope at the origin vanishes, leaving all other
/// modes untouched. Useful for building admissible perturbations from
/// arbitrary sine data.
pub fn project_h(f: &OddField) -> OddField {
    let mut coeffs = f.coeffs().to_vec();
    let slope: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1) as f64 * a)
        .sum();
    coeffs[0] -= slope;
    OddField::from_coeffs(f.grid().clone(), coeffs)
        .expect("mode count unchanged by slope projection")
}
