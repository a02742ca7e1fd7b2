use nalgebra::{Complex, DMatrix};
use spectral_core::Grid;
use weighted_spaces::{e_tilde, to_tilde};

use crate::physical::apply_la;
use crate::Result;

/// Dense Galerkin matrix of `L_a` in the orthonormal basis, built by
/// probing the physical-space operator column by column. Probing shares
/// no code with the closed-form tridiagonal entries, so agreement of the
/// two routes (at `a = 1`) cross-validates both.
pub fn build_la_matrix(dim: usize, a: f64) -> Result<DMatrix<f64>> {
    assert!(dim >= 1, "empty truncation");
    let grid = Grid::new(dim + 2);
    let mut mat = DMatrix::zeros(dim, dim);
    for k in 1..=dim {
        let e = e_tilde(&grid, k)?;
        let image = apply_la(&e, a)?;
        let tilde = to_tilde(&image)?;
        for row in 1..=dim {
            mat[(row - 1, k - 1)] = tilde.get(row);
        }
    }
    Ok(mat)
}

/// Eigenvalues of the Galerkin truncation of `L_a`, sorted by descending
/// real part. The leading real part is the quantity of interest: for
/// `a = 1` it must sit at or below `-1/2` at every truncation order.
pub fn truncated_spectrum(dim: usize, a: f64) -> Result<Vec<Complex<f64>>> {
    let mat = build_la_matrix(dim, a)?;
    let mut eigs: Vec<Complex<f64>> = mat.complex_eigenvalues().iter().copied().collect();
    eigs.sort_by(|p, q| {
        q.re.partial_cmp(&p.re)
            .expect("finite eigenvalues")
            .then(q.im.partial_cmp(&p.im).expect("finite eigenvalues"))
    });
    Ok(eigs)
}
