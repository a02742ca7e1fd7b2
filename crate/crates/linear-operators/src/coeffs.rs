use num::{BigInt, BigRational};

/// Coefficient of `sin((k+1)x)` in the single-mode action
/// `L_1 sin(kx) = A_k sin((k+1)x) + B_k sin((k-1)x)`:
/// `A_k = -(k+1)(k-1)^2 / (2 k^2)`.
pub fn coeff_a(k: u64) -> f64 {
    assert!(k >= 1, "mode index starts at 1");
    let kf = k as f64;
    -((kf + 1.0) * (kf - 1.0) * (kf - 1.0)) / (2.0 * kf * kf)
}

/// Coefficient of `sin((k-1)x)` in the single-mode action:
/// `B_k = (k+1)^2 (k-1) / (2 k^2)`.
pub fn coeff_b(k: u64) -> f64 {
    assert!(k >= 1, "mode index starts at 1");
    let kf = k as f64;
    ((kf + 1.0) * (kf + 1.0) * (kf - 1.0)) / (2.0 * kf * kf)
}

/// The coupling sequence of the tridiagonal basis representation,
/// `d_k = (k+1)^2 (k-1)^2 / (2 k^3)`. `d_1 = 0`, consistent with
/// `sin(x)` being stationary.
pub fn coeff_d(k: u64) -> f64 {
    assert!(k >= 1, "mode index starts at 1");
    let kf = k as f64;
    let p = (kf + 1.0) * (kf - 1.0);
    p * p / (2.0 * kf * kf * kf)
}

/// Exact rational value of `d_k`.
pub fn coeff_d_rational(k: u64) -> BigRational {
    assert!(k >= 1, "mode index starts at 1");
    let kb = BigInt::from(k);
    let one = BigInt::from(1);
    let p = (&kb + &one) * (&kb - &one);
    let num = &p * &p;
    let den = BigInt::from(2) * &kb * &kb * &kb;
    BigRational::new(num, den)
}

/// Damping margin of the `k`-th diagonal entry beyond the critical value
/// `1/2`: `margin(k) = d_{k+1} - d_k - 1/2`.
///
/// Evaluated through the closed form
/// `(2k^4 + 4k^3 - k^2 - 3k - 1) / (2 k^3 (k+1)^3)` with exact integer
/// numerator and denominator, so the only roundings are the two
/// conversions and the final division. The naive difference of two
/// nearly-linear `d` values would lose most significant digits at
/// large `k`.
pub fn margin(k: u64) -> f64 {
    assert!(k >= 1, "mode index starts at 1");
    assert!(k <= 10_000_000, "closed-form margin overflows i128 beyond 1e7");
    let ki = k as i128;
    let k2 = ki * ki;
    let k3 = k2 * ki;
    let k4 = k2 * k2;
    let num = 2 * k4 + 4 * k3 - k2 - 3 * ki - 1;
    let kp = ki + 1;
    let den = 2 * k3 * kp * kp * kp;
    num as f64 / den as f64
}

/// `margin(k)` computed definitionally from the rational `d` sequence.
pub fn margin_rational(k: u64) -> BigRational {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    coeff_d_rational(k + 1) - coeff_d_rational(k) - half
}

/// `margin(k)` from the expanded closed form, sharing no code with the
/// definitional route. Agreement of the two is an exact identity check.
pub fn margin_closed_form_rational(k: u64) -> BigRational {
    assert!(k >= 1, "mode index starts at 1");
    let kb = BigInt::from(k);
    let k2 = &kb * &kb;
    let k3 = &k2 * &kb;
    let k4 = &k2 * &k2;
    let num = BigInt::from(2) * &k4 + BigInt::from(4) * &k3 - &k2 - BigInt::from(3) * &kb
        - BigInt::from(1);
    let kp = &kb + BigInt::from(1);
    let den = BigInt::from(2) * &k3 * &kp * &kp * &kp;
    BigRational::new(num, den)
}
