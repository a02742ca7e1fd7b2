use crate::field::{EvenField, OddField};

/// Pointwise product of two odd fields; the result is even.
///
/// Modes above `N` are discarded. Because the grid carries `M ≥ 3N + 1`
/// points, the retained coefficients equal the exact convolution result.
pub fn mul_odd_odd(f: &OddField, g: &OddField) -> crate::Result<EvenField> {
    if !f.grid().same_as(g.grid()) {
        return Err(f.grid().mismatch_error(g.grid()));
    }
    let product = pointwise(&f.synthesize(), &g.synthesize());
    EvenField::analyze(f.grid().clone(), &product)
}

/// Pointwise product of an odd and an even field; the result is odd.
pub fn mul_odd_even(f: &OddField, g: &EvenField) -> crate::Result<OddField> {
    if !f.grid().same_as(g.grid()) {
        return Err(f.grid().mismatch_error(g.grid()));
    }
    let product = pointwise(&f.synthesize(), &g.synthesize());
    OddField::analyze(f.grid().clone(), &product)
}

/// Pointwise product of two even fields; the result is even.
pub fn mul_even_even(f: &EvenField, g: &EvenField) -> crate::Result<EvenField> {
    if !f.grid().same_as(g.grid()) {
        return Err(f.grid().mismatch_error(g.grid()));
    }
    let product = pointwise(&f.synthesize(), &g.synthesize());
    EvenField::analyze(f.grid().clone(), &product)
}

fn pointwise(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}
