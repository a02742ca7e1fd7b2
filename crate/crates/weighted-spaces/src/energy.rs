use spectral_core::OddField;

use crate::error::SpaceError;
use crate::norms::{derivative_samples, dx_weighted, h_norm};
use crate::tilde::to_tilde;
use crate::weights::WeightSpec;
use crate::Result;

/// Parameters of the blended energy [`energy_i`]: the slope weight `mu`
/// for the single-level energy, the geometric mixing ratio `mu1`, and the
/// deepest level `k0` of the derivative hierarchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConfig {
    pub mu: f64,
    pub mu1: f64,
    pub k0: u32,
}

impl Default for EnergyConfig {
    fn default() -> Self {
        Self {
            mu: 2.0,
            mu1: 0.1,
            k0: 4,
        }
    }
}

impl EnergyConfig {
    /// Validated constructor: `mu > 1`, `0 < mu1 < 1`, `k0 >= 4`. These
    /// ranges are what the damping arguments for the blended energy need;
    /// the struct fields stay public for exploratory use outside them.
    pub fn new(mu: f64, mu1: f64, k0: u32) -> Result<Self> {
        if !(mu > 1.0) || !mu.is_finite() {
            return Err(SpaceError::InvalidEnergyConfig(format!(
                "mu must be a finite number > 1, got {mu}"
            )));
        }
        if !(mu1 > 0.0 && mu1 < 1.0) {
            return Err(SpaceError::InvalidEnergyConfig(format!(
                "mu1 must lie strictly between 0 and 1, got {mu1}"
            )));
        }
        if k0 < 4 {
            return Err(SpaceError::InvalidEnergyConfig(format!(
                "k0 must be at least 4, got {k0}"
            )));
        }
        Ok(Self { mu, mu1, k0 })
    }
}

/// The `k`-th level of the weighted derivative hierarchy,
/// `E_k(f)^2 = integral (f^(k+1))^2 (1 + cos x)^k dx`.
///
/// `E_0` coincides with the `H` norm and requires a vanishing slope at the
/// origin; for `k >= 1` the weight is bounded and any odd field is
/// admissible.
pub fn ek_norm(f: &OddField, k: u32) -> Result<f64> {
    if k == 0 {
        return h_norm(f);
    }
    let samples = derivative_samples(f, k as usize + 1);
    let integrand: Vec<f64> = f
        .grid()
        .points()
        .iter()
        .zip(samples.iter())
        .map(|(&x, &v)| v * v * WeightSpec::RhoK(k).eval(x))
        .collect();
    Ok(f.grid().integrate(&integrand).sqrt())
}

/// The slope-weighted energy
/// `E(f)^2 = || d/dx (sin(x) f_x) ||_rho^2 + mu ||f||_H^2`,
/// where `|| . ||_rho` is the plain `L^2` norm against the singular weight.
///
/// For fields in `H` the first integrand is regular: `d/dx (sin(x) f_x)`
/// vanishes at the origin fast enough to cancel the `1/x^2` weight.
pub fn energy_e(f: &OddField, mu: f64) -> Result<f64> {
    let h_sq = to_tilde(f)?.norm_sq();
    let dxd = dx_weighted(f)?.differentiate();
    let samples = dxd.synthesize();
    let integrand: Vec<f64> = f
        .grid()
        .points()
        .iter()
        .zip(samples.iter())
        .map(|(&x, &v)| v * v * WeightSpec::Rho.eval(x))
        .collect();
    Ok((f.grid().integrate(&integrand) + mu * h_sq).sqrt())
}

/// The geometrically blended hierarchy energy
/// `I(f)^2 = sum_{k=0}^{k0} mu1^k E_k(f)^2`.
///
/// The derivative chain is advanced once and reused across levels, so the
/// cost matches a single pass to the deepest derivative.
pub fn energy_i(f: &OddField, config: &EnergyConfig) -> Result<f64> {
    let mut total = to_tilde(f)?.norm_sq();
    let grid = f.grid().clone();
    let points: Vec<f64> = grid.points().to_vec();
    let mut weight = vec![1.0; points.len()];
    let mut factor = 1.0;

    let mut even = Some(f.differentiate());
    let mut odd: Option<OddField> = None;
    for _k in 1..=config.k0 {
        let samples = if let Some(e) = even.take() {
            let o = e.differentiate();
            let s = o.synthesize();
            odd = Some(o);
            s
        } else {
            let o = odd.take().expect("derivative chain alternates parity");
            let e = o.differentiate();
            let s = e.synthesize();
            even = Some(e);
            s
        };
        factor *= config.mu1;
        for (w, &x) in weight.iter_mut().zip(points.iter()) {
            *w *= 1.0 + x.cos();
        }
        let integrand: Vec<f64> = samples
            .iter()
            .zip(weight.iter())
            .map(|(&v, &w)| v * v * w)
            .collect();
        total += factor * grid.integrate(&integrand);
    }
    Ok(total.sqrt())
}
