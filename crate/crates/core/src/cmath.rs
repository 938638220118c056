//! Small complex-analysis helpers shared by the r-matrix constructors.

use crate::C64;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub fn expm1(z: C64) -> C64 {
    let (a, b) = (z.re, z.im);
    let em1 = a.exp_m1();
    let half = (0.5 * b).sin();
    // e^a cos b - 1 = (e^a - 1) cos b - 2 sin^2(b/2)
    let real = em1 * b.cos() - 2.0 * half * half;
    let imag = a.exp() * b.sin();
    C64::new(real, imag)
}

/// `1 / (exp(z) - 1)`.
pub fn inv_expm1(z: C64) -> C64 {
    expm1(z).inv()
}

/// `exp(z/2) - exp(-z/2)`, i.e. `2 sinh(z/2)`.
pub fn two_sinh_half(z: C64) -> C64 {
    // 2 sinh(z/2) = e^{-z/2} (e^z - 1)
    (-0.5 * z).exp() * expm1(z)
}

/// Integer power of a complex number (negative exponents allowed).
pub fn powi(z: C64, k: i64) -> C64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.inv().powu((-k) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_matches_exp_away_from_zero() {
        for &z in &[c(0.7, -1.3), c(-2.0, 0.4), c(0.0, 3.0)] {
            assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn expm1_is_accurate_near_zero() {
        let z = c(1e-9, -2e-9);
        let series = z + z * z / 2.0;
        assert!((expm1(z) - series).norm() < 1e-24);
    }

    #[test]
    fn two_sinh_half_identity() {
        let z = c(0.3, 0.9);
        let direct = (z / 2.0).exp() - (-z / 2.0).exp();
        assert!((two_sinh_half(z) - direct).norm() < 1e-14);
    }
}
