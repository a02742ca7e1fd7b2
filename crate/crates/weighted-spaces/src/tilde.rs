use std::sync::Arc;

use spectral_core::{Grid, OddField};

use crate::error::SpaceError;
use crate::Result;

/// Relative tolerance on the slope residual `sum_m m a_m` below which a
/// sine expansion is accepted as a member of `H`.
pub(crate) const SLOPE_TOL: f64 = 1e-9;

/// Coefficients of an `H` field in the orthonormal basis
/// `e~_k = sin((k+1)x)/(k+1) - sin(kx)/k`, stored for `k = 1..`.
///
/// Because the basis is orthonormal, `H` inner products of tilde vectors
/// are plain dot products; see [`TildeCoeffs::inner`].
#[derive(Debug, Clone, PartialEq)]
pub struct TildeCoeffs {
    coeffs: Vec<f64>,
}

impl TildeCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    /// Number of stored basis coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e~_k` (1-based `k`); zero beyond the stored range.
    pub fn get(&self, k: usize) -> f64 {
        assert!(k >= 1, "basis index starts at 1");
        self.coeffs.get(k - 1).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Dot product; vectors of different lengths are padded with zeros.
    pub fn inner(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

/// Expands an odd field over the orthonormal basis of `H`.
///
/// The conversion runs the telescoping recurrence `c_m = c_{m-1} - m a_m`
/// with `c_0 = 0` and returns `c_1 ... c_{N-1}`. It is exact for fields in
/// the span of `e~_1 ... e~_{N-1}`. Fields whose slope residual
/// `sum_m m a_m` exceeds `1e-9` of the coefficient scale `sum_m |m a_m|`
/// are rejected: they have `f_x(0) != 0` and lie outside `H`.
pub fn to_tilde(f: &OddField) -> Result<TildeCoeffs> {
    let coeffs = f.coeffs();
    let slope: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1) as f64 * a)
        .sum();
    let scale: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| ((i + 1) as f64 * a).abs())
        .sum();
    if slope.abs() > SLOPE_TOL * scale {
        return Err(SpaceError::NotInH { slope, scale });
    }

    let n = coeffs.len();
    let mut tilde = Vec::with_capacity(n.saturating_sub(1));
    let mut c = 0.0;
    for (i, a) in coeffs.iter().enumerate().take(n.saturating_sub(1)) {
        c -= (i + 1) as f64 * a;
        tilde.push(c);
    }
    Ok(TildeCoeffs::new(tilde))
}

/// Reconstructs the odd field `sum_k c_k e~_k` on `grid`.
///
/// `K` basis coefficients occupy `K + 1` sine modes, so the grid must
/// resolve at least that many. Composed with [`to_tilde`] this is the
/// identity on `H` fields resolved by the grid.
pub fn from_tilde(grid: &Arc<Grid>, tilde: &TildeCoeffs) -> Result<OddField> {
    let k = tilde.len();
    if k + 1 > grid.n_modes() {
        return Err(SpaceError::TildeTooLong {
            k,
            needed: k + 1,
            available: grid.n_modes(),
        });
    }
    let mut coeffs = vec![0.0; k + 1];
    let mut prev = 0.0;
    for (i, &c) in tilde.coeffs().iter().enumerate() {
        let m = (i + 1) as f64;
        coeffs[i] = (prev - c) / m;
        prev = c;
    }
    coeffs[k] = prev / (k + 1) as f64;
    Ok(OddField::from_coeffs(grid.clone(), coeffs)?)
}

/// The `k`-th orthonormal basis element `e~_k` as a sine expansion on
/// `grid`, for `1 <= k <= N - 1`.
pub fn e_tilde(grid: &Arc<Grid>, k: usize) -> Result<OddField> {
    assert!(k >= 1, "basis index starts at 1");
    if k + 1 > grid.n_modes() {
        return Err(SpaceError::TildeTooLong {
            k,
            needed: k + 1,
            available: grid.n_modes(),
        });
    }
    let mut coeffs = vec![0.0; k + 1];
    coeffs[k - 1] = -1.0 / k as f64;
    coeffs[k] = 1.0 / (k + 1) as f64;
    Ok(OddField::from_coeffs(grid.clone(), coeffs)?)
}
