use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::SpectralError;

/// Uniform collocation grid on `[−π, π)` with a half-cell shift.
///
/// Nodes are `x_j = −π + (j + 1/2)·2π/M` for `j = 0..M−1`. The shift makes the
/// node set symmetric (`x_{M−1−j} = −x_j`) while avoiding `0` and `±π`
/// exactly; `M` is kept even so that neither point can appear for any `j`.
///
/// A grid is built for a fixed retained mode count `N` and requires
/// `M ≥ 3N + 1`. The extra point beyond the plain 3N rule closes the corner
/// case `q + m = M` (product mode `q = 2N` folding onto retained mode
/// `m = N`), so quadratic products are exactly alias-free after truncation.
pub struct Grid {
    n_modes: usize,
    m: usize,
    points: Vec<f64>,
    /// Unnormalized inverse FFT of length `m` (exp(+2πi jk/M) convention).
    fft: Arc<dyn Fft<f64>>,
    /// Phase factors `exp(i k x_0)` with `x_0` the first node, `k = 0..m−1`.
    twiddles: Vec<Complex<f64>>,
}

impl Grid {
    /// Grid with the default collocation count: the smallest even `M ≥ 3N + 1`.
    pub fn new(n_modes: usize) -> Arc<Self> {
        let m = 3 * n_modes + if (3 * n_modes) % 2 == 0 { 2 } else { 1 };
        Self::with_points(n_modes, m).expect("default grid parameters are valid")
    }

    /// Grid with an explicit collocation count `m` (even, at least `3N + 1`).
    pub fn with_points(n_modes: usize, m: usize) -> crate::Result<Arc<Self>> {
        if n_modes == 0 || m % 2 != 0 || m < 3 * n_modes + 1 {
            return Err(SpectralError::InvalidGrid { m, n_modes });
        }
        let h = 2.0 * PI / m as f64;
        // Build the nodes exactly mirror-symmetric: compute the positive half
        // and negate it, so x_{M−1−j} = −x_j holds bitwise.
        let mut points = vec![0.0; m];
        for j in 0..m / 2 {
            let s = PI - (j as f64 + 0.5) * h;
            points[j] = -s;
            points[m - 1 - j] = s;
        }
        let x0 = points[0];
        let twiddles: Vec<Complex<f64>> = (0..m)
            .map(|k| Complex::from_polar(1.0, k as f64 * x0))
            .collect();
        let fft = FftPlanner::new().plan_fft_inverse(m);
        Ok(Arc::new(Self {
            n_modes,
            m,
            points,
            fft,
            twiddles,
        }))
    }

    /// Number of retained modes `N`.
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Number of collocation points `M`.
    pub fn num_points(&self) -> usize {
        self.m
    }

    /// Collocation abscissae, ascending in `(−π, π)`.
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Grid spacing `2π/M`.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.m as f64
    }

    /// Trapezoid rule over the full period; spectrally accurate for smooth
    /// periodic integrands sampled on this grid.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.m);
        samples.iter().sum::<f64>() * self.spacing()
    }

    /// Two grids are interchangeable when both shape parameters agree.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.n_modes == other.n_modes && self.m == other.m
    }

    pub(crate) fn mismatch_error(&self, other: &Grid) -> SpectralError {
        SpectralError::GridMismatch {
            left_n: self.n_modes,
            left_m: self.m,
            right_n: other.n_modes,
            right_m: other.m,
        }
    }

    /// `Σ_k coeffs[k]·exp(i k x_j)` for all nodes, via one inverse FFT.
    fn synthesize_complex(&self, coeffs: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut buf = vec![Complex::default(); self.m];
        buf[..coeffs.len()].copy_from_slice(coeffs);
        for (k, v) in buf.iter_mut().enumerate() {
            *v *= self.twiddles[k];
        }
        self.fft.process(&mut buf);
        buf
    }

    /// `Z[k] = Σ_j samples[j]·exp(i k x_j)` for `k = 0..M−1`.
    fn analyze_complex(&self, samples: &[f64]) -> Vec<Complex<f64>> {
        let mut buf: Vec<Complex<f64>> = samples.iter().map(|&s| Complex::new(s, 0.0)).collect();
        self.fft.process(&mut buf);
        for (k, v) in buf.iter_mut().enumerate() {
            *v *= self.twiddles[k];
        }
        buf
    }

    /// Samples of `Σ_{k=1}^{len} a_k sin(k x)` at the nodes.
    pub(crate) fn synthesize_sine(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut packed = vec![Complex::default(); coeffs.len() + 1];
        for (k, &a) in coeffs.iter().enumerate() {
            packed[k + 1] = Complex::new(a, 0.0);
        }
        self.synthesize_complex(&packed)
            .into_iter()
            .map(|z| z.im)
            .collect()
    }

    /// Samples of `b_0 + Σ_{k=1}^{len} b_k cos(k x)` at the nodes.
    pub(crate) fn synthesize_cosine(&self, b0: f64, coeffs: &[f64]) -> Vec<f64> {
        let mut packed = vec![Complex::default(); coeffs.len() + 1];
        packed[0] = Complex::new(b0, 0.0);
        for (k, &b) in coeffs.iter().enumerate() {
            packed[k + 1] = Complex::new(b, 0.0);
        }
        self.synthesize_complex(&packed)
            .into_iter()
            .map(|z| z.re)
            .collect()
    }

    /// Sine coefficients `a_1..a_N` of the trigonometric interpolant.
    pub(crate) fn analyze_sine(&self, samples: &[f64]) -> Vec<f64> {
        let z = self.analyze_complex(samples);
        let scale = 2.0 / self.m as f64;
        (1..=self.n_modes).map(|k| scale * z[k].im).collect()
    }

    /// Constant and cosine coefficients `(b_0, b_1..b_N)` of the interpolant.
    pub(crate) fn analyze_cosine(&self, samples: &[f64]) -> (f64, Vec<f64>) {
        let z = self.analyze_complex(samples);
        let scale = 2.0 / self.m as f64;
        let b0 = z[0].re / self.m as f64;
        (b0, (1..=self.n_modes).map(|k| scale * z[k].re).collect())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n_modes", &self.n_modes)
            .field("points", &self.m)
            .finish()
    }
}
