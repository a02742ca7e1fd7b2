#![allow(dead_code)]

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use spectral_core::{Grid, OddField};

/// Seeded random odd field with coefficients uniform in `[-1, 1]`.
pub fn random_odd(grid: &Arc<Grid>, seed: u64) -> OddField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..grid.n_modes()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    OddField::from_coeffs(grid.clone(), coeffs).unwrap()
}

/// Seeded random odd field with spectrally decaying coefficients, giving a
/// smooth function with derivatives of moderate size.
pub fn random_smooth_odd(grid: &Arc<Grid>, seed: u64, decay: f64) -> OddField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..grid.n_modes())
        .map(|i| rng.gen_range(-1.0..1.0) * (-decay * i as f64).exp())
        .collect();
    OddField::from_coeffs(grid.clone(), coeffs).unwrap()
}

/// Finite-difference weights on the stencil `offsets` (in units of `h`) for
/// the `deriv`-th derivative, by Fornberg's recurrence.
pub fn fornberg_weights(offsets: &[f64], deriv: usize) -> Vec<f64> {
    let n = offsets.len();
    let m = deriv;
    // delta[j][k] = weight of node j in the k-th derivative formula, grown
    // one node at a time (Fornberg's recurrence, expansion point 0).
    let mut delta = vec![vec![0.0f64; m + 1]; n];
    delta[0][0] = 1.0;
    let mut c1 = 1.0f64;
    for i in 1..n {
        let mut c2 = 1.0f64;
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                let prev = delta[i - 1].clone();
                for k in (1..=m.min(i)).rev() {
                    delta[i][k] = c1 * (k as f64 * prev[k - 1] - offsets[i - 1] * prev[k]) / c2;
                }
                delta[i][0] = -c1 * offsets[i - 1] * prev[0] / c2;
            }
            for k in (1..=m.min(i)).rev() {
                let lower = delta[j][k - 1];
                delta[j][k] = (offsets[i] * delta[j][k] - k as f64 * lower) / c3;
            }
            delta[j][0] = offsets[i] * delta[j][0] / c3;
        }
        c1 = c2;
    }
    delta.into_iter().map(|row| row[m]).collect()
}

/// High-order finite-difference estimate of `f^{(deriv)}(x)` using a centered
/// 13-point stencil with spacing `h`.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: &F, x: f64, deriv: usize, h: f64) -> f64 {
    let offsets: Vec<f64> = (-6..=6).map(|i| i as f64).collect();
    let weights = fornberg_weights(&offsets, deriv);
    let sum: f64 = offsets
        .iter()
        .zip(&weights)
        .map(|(o, w)| w * f(x + o * h))
        .sum();
    sum / h.powi(deriv as i32)
}
