use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// log Γ(z) for Re z ≥ 0.5, principal branch of the Lanczos form.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// The gamma function on the complex plane.
///
/// Uses the reflection formula for `Re z < 0.5`. Nonpositive integers are
/// poles and return [`Error::Pole`].
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(z.re));
    }
    let value = if z.re < 0.5 {
        let s = (z * PI).sin();
        PI / (s * ln_gamma_right(1.0 - z).exp())
    } else {
        ln_gamma_right(z).exp()
    };
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow(format!("gamma({z}) is not representable")));
    }
    // Keep real arguments exactly real.
    Ok(if z.im == 0.0 { Complex64::new(value.re, 0.0) } else { value })
}

/// 1/Γ(z), an entire function: zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    let value = if z.re < 0.5 {
        let s = (z * PI).sin();
        s * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    };
    if z.im == 0.0 {
        Complex64::new(value.re, 0.0)
    } else {
        value
    }
}

/// Real gamma function for positive arguments, convenient for constants.
pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn integers_are_factorials() {
        assert!((gamma(Complex64::new(1.0, 0.0)).unwrap().re - 1.0).abs() < 1e-15);
        assert!((gamma(Complex64::new(3.0, 0.0)).unwrap().re - 2.0).abs() < 1e-14);
        let mut fact = 1.0;
        for n in 1..20 {
            let g = gamma(Complex64::new(n as f64 + 1.0, 0.0)).unwrap();
            fact *= n as f64;
            assert!((g.re - fact).abs() / fact < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        for n in 0..5 {
            let err = gamma(Complex64::new(-(n as f64), 0.0)).unwrap_err();
            assert!(matches!(err, Error::Pole(_)));
        }
        assert_eq!(rgamma(Complex64::new(-3.0, 0.0)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn recurrence_holds() {
        let points = [
            Complex64::new(0.3, 0.7),
            Complex64::new(-2.2, 1.1),
            Complex64::new(7.5, -4.0),
            Complex64::new(15.0, 12.0),
        ];
        for z in points {
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn reciprocal_matches() {
        let z = Complex64::new(-1.3, 0.4);
        assert!(rel(rgamma(z) * gamma(z).unwrap(), Complex64::new(1.0, 0.0)) < 1e-14);
    }
}
