use std::sync::Arc;

use crate::error::SpectralError;
use crate::grid::Grid;

/// Relative tolerance for the parity check in the analysis routines.
const PARITY_TOL: f64 = 1e-10;

/// An odd, 2π-periodic, real scalar field `f(x) = Σ_{m=1}^{N} a_m sin(m x)`.
#[derive(Debug, Clone)]
pub struct OddField {
    coeffs: Vec<f64>,
    grid: Arc<Grid>,
}

/// An even, 2π-periodic, real scalar field `g(x) = b_0 + Σ_{m=1}^{N} b_m cos(m x)`.
#[derive(Debug, Clone)]
pub struct EvenField {
    b0: f64,
    coeffs: Vec<f64>,
    grid: Arc<Grid>,
}

fn check_len(len: usize, grid: &Grid) -> crate::Result<()> {
    if len > grid.n_modes() {
        return Err(SpectralError::SampleCount {
            got: len,
            expected: grid.n_modes(),
        });
    }
    Ok(())
}

/// Max over mirrored node pairs of `|f(x) ⊙ f(−x)|`, where `⊙` is `+` for an
/// odd check and `−` for an even check, relative to the sample scale.
fn asymmetry(samples: &[f64], sign: f64) -> f64 {
    let m = samples.len();
    let scale = samples
        .iter()
        .fold(0.0f64, |acc, s| acc.max(s.abs()))
        .max(1e-300);
    let mut worst = 0.0f64;
    for j in 0..m / 2 {
        worst = worst.max((samples[j] + sign * samples[m - 1 - j]).abs());
    }
    worst / scale
}

impl OddField {
    /// Field from explicit sine coefficients `a_1..a_n` (`n ≤ N`); missing
    /// high modes are zero.
    pub fn from_coeffs(grid: Arc<Grid>, coeffs: Vec<f64>) -> crate::Result<Self> {
        check_len(coeffs.len(), &grid)?;
        let mut full = coeffs;
        full.resize(grid.n_modes(), 0.0);
        Ok(Self { coeffs: full, grid })
    }

    /// The zero field.
    pub fn zero(grid: Arc<Grid>) -> Self {
        let n = grid.n_modes();
        Self {
            coeffs: vec![0.0; n],
            grid,
        }
    }

    /// Sine coefficients of the trigonometric interpolant of `samples`,
    /// truncated to the grid's `N` modes. Rejects samples that are not odd
    /// under `x ↦ −x` to within `1e-10` of their scale.
    pub fn analyze(grid: Arc<Grid>, samples: &[f64]) -> crate::Result<Self> {
        if samples.len() != grid.num_points() {
            return Err(SpectralError::SampleCount {
                got: samples.len(),
                expected: grid.num_points(),
            });
        }
        let asym = asymmetry(samples, 1.0);
        if asym > PARITY_TOL {
            return Err(SpectralError::ParityViolation {
                expected_parity: "odd",
                asymmetry: asym,
                tol: PARITY_TOL,
            });
        }
        let coeffs = grid.analyze_sine(samples);
        Ok(Self { coeffs, grid })
    }

    /// Samples at the grid nodes.
    pub fn synthesize(&self) -> Vec<f64> {
        self.grid.synthesize_sine(&self.coeffs)
    }

    /// Pointwise evaluation anywhere (direct summation, grid-independent).
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * ((i + 1) as f64 * x).sin())
            .sum()
    }

    /// Termwise derivative `Σ m·a_m cos(m x)`.
    pub fn differentiate(&self) -> EvenField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| (i + 1) as f64 * a)
            .collect();
        EvenField {
            b0: 0.0,
            coeffs,
            grid: self.grid.clone(),
        }
    }

    /// `f_x(0) = Σ m·a_m` (order 1) or `f_xxx(0) = −Σ m³·a_m` (order 3).
    ///
    /// The even-order derivatives of an odd field vanish at the origin, so
    /// these two are the only interesting ones.
    pub fn eval_derivative_at_zero(&self, order: usize) -> crate::Result<f64> {
        match order {
            1 => Ok(self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| (i + 1) as f64 * a)
                .sum()),
            3 => Ok(-self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let m = (i + 1) as f64;
                    m * m * m * a
                })
                .sum::<f64>()),
            other => Err(SpectralError::UnsupportedOrder(other)),
        }
    }

    /// Sine coefficients `a_1..a_N`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Largest absolute node value.
    pub fn sup_norm(&self) -> f64 {
        self.synthesize()
            .iter()
            .fold(0.0f64, |acc, s| acc.max(s.abs()))
    }

    /// `self + scale·other` on a shared grid.
    pub fn add_scaled(&self, other: &OddField, scale: f64) -> crate::Result<OddField> {
        if !self.grid.same_as(&other.grid) {
            return Err(self.grid.mismatch_error(&other.grid));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + scale * b)
            .collect();
        Ok(OddField {
            coeffs,
            grid: self.grid.clone(),
        })
    }

    /// Rescale in place.
    pub fn scale(&mut self, factor: f64) {
        for a in &mut self.coeffs {
            *a *= factor;
        }
    }
}

impl EvenField {
    /// Field from a constant term and cosine coefficients `b_1..b_n`.
    pub fn from_coeffs(grid: Arc<Grid>, b0: f64, coeffs: Vec<f64>) -> crate::Result<Self> {
        check_len(coeffs.len(), &grid)?;
        let mut full = coeffs;
        full.resize(grid.n_modes(), 0.0);
        Ok(Self {
            b0,
            coeffs: full,
            grid,
        })
    }

    /// Cosine-series interpolant of `samples`; rejects samples that are not
    /// even under `x ↦ −x` to within `1e-10` of their scale.
    pub fn analyze(grid: Arc<Grid>, samples: &[f64]) -> crate::Result<Self> {
        if samples.len() != grid.num_points() {
            return Err(SpectralError::SampleCount {
                got: samples.len(),
                expected: grid.num_points(),
            });
        }
        let asym = asymmetry(samples, -1.0);
        if asym > PARITY_TOL {
            return Err(SpectralError::ParityViolation {
                expected_parity: "even",
                asymmetry: asym,
                tol: PARITY_TOL,
            });
        }
        let (b0, coeffs) = grid.analyze_cosine(samples);
        Ok(Self { b0, coeffs, grid })
    }

    pub fn synthesize(&self) -> Vec<f64> {
        self.grid.synthesize_cosine(self.b0, &self.coeffs)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.b0
            + self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, b)| b * ((i + 1) as f64 * x).cos())
                .sum::<f64>()
    }

    /// Termwise derivative `−Σ m·b_m sin(m x)`; the constant drops out.
    pub fn differentiate(&self) -> OddField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, b)| -((i + 1) as f64) * b)
            .collect();
        OddField {
            coeffs,
            grid: self.grid.clone(),
        }
    }

    /// Constant term `b_0`.
    pub fn mean(&self) -> f64 {
        self.b0
    }

    /// Cosine coefficients `b_1..b_N`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    /// Value at the origin, `b_0 + Σ b_m`.
    pub fn eval_at_zero(&self) -> f64 {
        self.b0 + self.coeffs.iter().sum::<f64>()
    }
}
