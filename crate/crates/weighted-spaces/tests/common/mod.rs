#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectral_core::{Grid, OddField};
use weighted_spaces::project_h;

/// Random odd field with exponentially decaying mode envelope.
pub fn random_smooth_odd(grid: &Arc<Grid>, seed: u64, decay: f64) -> OddField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..grid.n_modes())
        .map(|i| rng.gen_range(-1.0..1.0) * (-decay * i as f64).exp())
        .collect();
    OddField::from_coeffs(grid.clone(), coeffs).unwrap()
}

/// Random smooth odd field with the origin slope projected out, so it is a
/// legitimate member of the weighted space.
pub fn random_h_field(grid: &Arc<Grid>, seed: u64, decay: f64) -> OddField {
    project_h(&random_smooth_odd(grid, seed, decay))
}

/// Trapezoid integral of `f(x) * g(x)` over the grid given two sample sets.
pub fn integrate_product(grid: &Grid, f: &[f64], g: &[f64]) -> f64 {
    let samples: Vec<f64> = f.iter().zip(g.iter()).map(|(a, b)| a * b).collect();
    grid.integrate(&samples)
}
