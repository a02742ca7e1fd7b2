use nalgebra::DMatrix;

use crate::coeffs::coeff_d;

/// Galerkin truncation of the linearized operator in the orthonormal
/// basis: for a coefficient vector `c_1 ... c_n` (boundary values
/// `c_0 = c_{n+1} = 0`),
///
/// ```text
/// (L c)_k = -d_k c_{k-1} - (d_{k+1} - d_k) c_k + d_{k+1} c_{k+1}.
/// ```
///
/// The off-diagonal contributions to the quadratic form cancel pairwise,
/// so `<Lc, c> = -sum_k (d_{k+1} - d_k) c_k^2` holds exactly for the
/// truncation, not merely up to a boundary defect. With every gap
/// `d_{k+1} - d_k` above `1/2` (see [`crate::damping_audit`]) the
/// truncated operator inherits the full damping estimate.
#[derive(Debug, Clone)]
pub struct TridiagonalOperator {
    /// `d_1 ... d_{n+1}`; entry `k` lives at index `k - 1`.
    d: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "empty truncation");
        let d = (1..=dim as u64 + 1).map(coeff_d).collect();
        Self { d }
    }

    pub fn dim(&self) -> usize {
        self.d.len() - 1
    }

    /// Applies the truncated operator to basis coefficients `c_1 ... c_n`.
    pub fn apply(&self, c: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(c.len(), n, "coefficient count must match truncation");
        let mut out = vec![0.0; n];
        for k in 1..=n {
            let d_k = self.d[k - 1];
            let d_k1 = self.d[k];
            let mut v = -(d_k1 - d_k) * c[k - 1];
            if k >= 2 {
                v -= d_k * c[k - 2];
            }
            if k < n {
                v += d_k1 * c[k];
            }
            out[k - 1] = v;
        }
        out
    }

    /// The exactly telescoped quadratic form `<Lc, c>`.
    pub fn quadratic_form(&self, c: &[f64]) -> f64 {
        let n = self.dim();
        assert_eq!(c.len(), n, "coefficient count must match truncation");
        -(1..=n)
            .map(|k| (self.d[k] - self.d[k - 1]) * c[k - 1] * c[k - 1])
            .sum::<f64>()
    }

    /// Rayleigh quotient `<Lc, c> / <c, c>`; `None` for the zero vector.
    pub fn rayleigh(&self, c: &[f64]) -> Option<f64> {
        let norm_sq: f64 = c.iter().map(|v| v * v).sum();
        if norm_sq == 0.0 {
            return None;
        }
        Some(self.quadratic_form(c) / norm_sq)
    }

    /// Dense matrix of the truncation (column-major, `n x n`).
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |row, col| {
            let k = row + 1;
            if col + 2 == k {
                -self.d[k - 1]
            } else if col + 1 == k {
                -(self.d[k] - self.d[k - 1])
            } else if col == k {
                self.d[k]
            } else {
                0.0
            }
        })
    }
}
