use std::f64::consts::PI;

/// The pointwise weights that appear in the norms and energies.
///
/// All three are even, nonnegative, and smooth away from their zeros;
/// `Rho` is singular at `x = 0` (like `1/(pi x^2)` to leading order) and
/// vanishing at `x = +-pi`, while the polynomial family `RhoK` and the
/// half-angle cosine are bounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightSpec {
    /// `rho(x) = 1 / (4 pi sin^2(x/2))`.
    Rho,
    /// `rho_k(x) = (1 + cos x)^k`. `RhoK(0)` is the constant `1`.
    RhoK(u32),
    /// `cos^2(x/2) = (1 + cos x)/2`.
    Cos2Half,
}

impl WeightSpec {
    /// Evaluates the weight at `x`. `Rho` returns `+inf` at multiples of
    /// `2 pi`; callers on the shifted grid never sample those points.
    pub fn eval(self, x: f64) -> f64 {
        match self {
            WeightSpec::Rho => {
                let s = (0.5 * x).sin();
                1.0 / (4.0 * PI * s * s)
            }
            WeightSpec::RhoK(k) => (1.0 + x.cos()).powi(k as i32),
            WeightSpec::Cos2Half => {
                let c = (0.5 * x).cos();
                c * c
            }
        }
    }
}
