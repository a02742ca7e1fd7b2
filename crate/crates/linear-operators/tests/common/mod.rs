#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectral_core::{Grid, OddField};
use weighted_spaces::project_h;

/// Random smooth odd field with the origin slope projected out.
pub fn random_h_field(grid: &Arc<Grid>, seed: u64, decay: f64) -> OddField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..grid.n_modes())
        .map(|i| rng.gen_range(-1.0..1.0) * (-decay * i as f64).exp())
        .collect();
    project_h(&OddField::from_coeffs(grid.clone(), coeffs).unwrap())
}

/// Random basis-coefficient vector with decaying envelope.
pub fn random_tilde(dim: usize, seed: u64, decay: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..dim)
        .map(|i| rng.gen_range(-1.0..1.0) * (-decay * i as f64).exp())
        .collect()
}
