mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use spectral_core::{mul_even_even, mul_odd_even, mul_odd_odd, EvenField, Grid, OddField, SpectralError};

/// Exact convolution coefficients of `(Σ a_p sin px)(Σ b_q sin qx)` via
/// product-to-sum identities: an even series `c_0 + Σ c_r cos rx`.
fn convolve_odd_odd(a: &[f64], b: &[f64], out_modes: usize) -> (f64, Vec<f64>) {
    let mut c0 = 0.0;
    let mut c = vec![0.0; out_modes];
    for (pi, &ap) in a.iter().enumerate() {
        let p = pi + 1;
        for (qi, &bq) in b.iter().enumerate() {
            let q = qi + 1;
            let half = 0.5 * ap * bq;
            let diff = p.abs_diff(q);
            if diff == 0 {
                c0 += half;
            } else if diff <= out_modes {
                c[diff - 1] += half;
            }
            let sum = p + q;
            if sum <= out_modes {
                c[sum - 1] -= half;
            }
        }
    }
    (c0, c)
}

/// Exact convolution of `(Σ a_p sin px)(b_0 + Σ b_q cos qx)`: an odd series.
fn convolve_odd_even(a: &[f64], b0: f64, b: &[f64], out_modes: usize) -> Vec<f64> {
    let mut c = vec![0.0; out_modes];
    for (pi, &ap) in a.iter().enumerate() {
        let p = pi + 1;
        if p <= out_modes {
            c[p - 1] += b0 * ap;
        }
        for (qi, &bq) in b.iter().enumerate() {
            let q = qi + 1;
            let half = 0.5 * ap * bq;
            let sum = p + q;
            if sum <= out_modes {
                c[sum - 1] += half;
            }
            // sin((p-q)x) = -sin((q-p)x)
            if p > q {
                c[p - q - 1] += half;
            } else if q > p && q - p <= out_modes {
                c[q - p - 1] -= half;
            }
        }
    }
    c
}

#[test]
fn sine_times_cosine_is_half_sine_double() {
    let grid = Grid::new(4);
    let f = OddField::from_coeffs(grid.clone(), vec![1.0]).unwrap();
    let g = EvenField::from_coeffs(grid, 0.0, vec![1.0]).unwrap();
    let p = mul_odd_even(&f, &g).unwrap();
    assert_abs_diff_eq!(p.coeffs()[1], 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(p.coeffs()[0], 0.0, epsilon = 1e-14);
}

#[test]
fn product_with_zero_is_zero() {
    let grid = Grid::new(6);
    let f = common::random_odd(&grid, 11);
    let z = OddField::zero(grid);
    let p = mul_odd_odd(&f, &z).unwrap();
    assert_eq!(p.mean(), 0.0);
    assert!(p.coeffs().iter().all(|&c| c == 0.0));
}

#[test]
fn sine_squared_is_even_with_constant_half() {
    let grid = Grid::new(4);
    let f = OddField::from_coeffs(grid, vec![1.0]).unwrap();
    let p = mul_odd_odd(&f, &f).unwrap();
    assert_abs_diff_eq!(p.mean(), 0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(p.coeffs()[1], -0.5, epsilon = 1e-14);
    assert_abs_diff_eq!(p.coeffs()[0], 0.0, epsilon = 1e-14);
    assert_abs_diff_eq!(p.coeffs()[2], 0.0, epsilon = 1e-14);
}

#[test]
fn products_on_distinct_grids_are_rejected() {
    let f = common::random_odd(&Grid::new(8), 1);
    let g = common::random_odd(&Grid::new(9), 2);
    assert!(matches!(
        mul_odd_odd(&f, &g).unwrap_err(),
        SpectralError::GridMismatch { .. }
    ));
}

#[test]
fn top_mode_products_are_alias_free() {
    // Both inputs saturated up to mode N, including a_N itself: the product
    // has content at mode 2N, which must not fold back onto the retained
    // range. This is exactly the corner the M ≥ 3N + 1 rule protects.
    let n = 8;
    let grid = Grid::new(n);
    let coeffs = vec![1.0; n];
    let f = OddField::from_coeffs(grid.clone(), coeffs.clone()).unwrap();
    let g = OddField::from_coeffs(grid, coeffs.clone()).unwrap();
    let p = mul_odd_odd(&f, &g).unwrap();
    let (c0, c) = convolve_odd_odd(&coeffs, &coeffs, n);
    assert_abs_diff_eq!(p.mean(), c0, epsilon = 1e-12);
    for (got, want) in p.coeffs().iter().zip(&c) {
        assert_abs_diff_eq!(got, want, epsilon = 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Retained modes of odd×odd products equal the exact convolution.
    #[test]
    fn odd_odd_product_matches_convolution(
        a in prop::collection::vec(-1.0f64..1.0, 8),
        b in prop::collection::vec(-1.0f64..1.0, 8),
    ) {
        let grid = Grid::new(8);
        let f = OddField::from_coeffs(grid.clone(), a.clone()).unwrap();
        let g = OddField::from_coeffs(grid, b.clone()).unwrap();
        let p = mul_odd_odd(&f, &g).unwrap();
        let (c0, c) = convolve_odd_odd(&a, &b, 8);
        prop_assert!((p.mean() - c0).abs() <= 1e-12);
        for (got, want) in p.coeffs().iter().zip(&c) {
            prop_assert!((got - want).abs() <= 1e-12);
        }
    }

    /// Retained modes of odd×even products equal the exact convolution.
    #[test]
    fn odd_even_product_matches_convolution(
        a in prop::collection::vec(-1.0f64..1.0, 8),
        b0 in -1.0f64..1.0,
        b in prop::collection::vec(-1.0f64..1.0, 8),
    ) {
        let grid = Grid::new(8);
        let f = OddField::from_coeffs(grid.clone(), a.clone()).unwrap();
        let g = EvenField::from_coeffs(grid, b0, b.clone()).unwrap();
        let p = mul_odd_even(&f, &g).unwrap();
        let c = convolve_odd_even(&a, b0, &b, 8);
        for (got, want) in p.coeffs().iter().zip(&c) {
            prop_assert!((got - want).abs() <= 1e-12);
        }
    }

    /// Parity closure, checked on synthesized samples at mirrored nodes.
    #[test]
    fn products_close_under_parity(
        a in prop::collection::vec(-1.0f64..1.0, 6),
        b in prop::collection::vec(-1.0f64..1.0, 6),
    ) {
        let grid = Grid::new(6);
        let f = OddField::from_coeffs(grid.clone(), a.clone()).unwrap();
        let g = OddField::from_coeffs(grid.clone(), b.clone()).unwrap();
        let ge = EvenField::from_coeffs(grid.clone(), 0.3, b.clone()).unwrap();
        let m = grid.num_points();

        // odd × odd → even
        let even = mul_odd_odd(&f, &g).unwrap().synthesize();
        // odd × even → odd
        let odd = mul_odd_even(&f, &ge).unwrap().synthesize();
        // even × even → even
        let even2 = mul_even_even(&ge, &ge).unwrap().synthesize();
        for j in 0..m / 2 {
            prop_assert!((even[j] - even[m - 1 - j]).abs() <= 1e-11);
            prop_assert!((odd[j] + odd[m - 1 - j]).abs() <= 1e-11);
            prop_assert!((even2[j] - even2[m - 1 - j]).abs() <= 1e-11);
        }
    }
}
