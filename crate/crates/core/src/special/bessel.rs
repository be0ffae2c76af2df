use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::dd::{Dd, DdComplex};
use super::gamma::rgamma;
use super::ComplexOrder;
use crate::error::{Error, Result};

/// Arguments at or below this value use the power series (for |ν| ≤ 20).
pub const SERIES_THRESHOLD: f64 = 30.0;

// Below this argument the series loses at most a couple of digits to
// cancellation, so plain f64 accumulation is enough.
const DOUBLE_SERIES_LIMIT: f64 = 4.0;
const MAX_SERIES_TERMS: usize = 200;
const MAX_ASYMPTOTIC_TERMS: usize = 60;

/// Argument at which `bessel_j` switches from the series to the
/// large-argument expansion for order `nu`.
pub fn regime_threshold(nu: Complex64) -> f64 {
    SERIES_THRESHOLD.max(1.5 * nu.norm())
}

/// J_ν(x) for complex order with Re ν > −1 and x ≥ 0.
///
/// At x = 0 the order must satisfy Re ν ≥ 0; a purely imaginary order has no
/// limit there and is rejected. For real ν the imaginary part is exactly 0.
pub fn bessel_j(nu: ComplexOrder, x: f64) -> Result<Complex64> {
    bessel_j_unrestricted(nu.value(), x)
}

/// J_ν(x) for any order that is not a negative integer after reflection.
/// Used internally for recurrences that step below Re ν = −1.
pub(crate) fn bessel_j_unrestricted(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_j needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return if nu == Complex64::new(0.0, 0.0) {
            Ok(Complex64::new(1.0, 0.0))
        } else if nu.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::Domain(format!(
                "J_nu(0) has no finite limit for nu = {nu}"
            )))
        };
    }
    let value = if x <= regime_threshold(nu) {
        bessel_j_series(nu, x)?
    } else {
        bessel_j_asymptotic(nu, x)?
    };
    Ok(realify(nu, value))
}

fn realify(nu: Complex64, value: Complex64) -> Complex64 {
    if nu.im == 0.0 {
        Complex64::new(value.re, 0.0)
    } else {
        value
    }
}

fn negative_integer(nu: Complex64) -> Option<i64> {
    (nu.im == 0.0 && nu.re < 0.0 && nu.re == nu.re.round()).then_some(nu.re as i64)
}

/// Defining power series Σ (−1)^k (x/2)^{ν+2k} / (k! Γ(k+ν+1)).
///
/// Summed in double-double once x exceeds a few units so that the
/// alternating terms cancel without eating the result.
pub fn bessel_j_series(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return bessel_j_unrestricted(nu, x);
    }
    if let Some(n) = negative_integer(nu) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return bessel_j_series(Complex64::new(-(n as f64), 0.0), x).map(|j| j * sign);
    }
    let half = 0.5 * x;
    let prefactor = (nu * half.ln()).exp() * rgamma(nu + 1.0);
    if !prefactor.re.is_finite() || !prefactor.im.is_finite() {
        return Err(Error::Overflow(format!(
            "(x/2)^nu / Gamma(nu+1) overflows for nu = {nu}, x = {x}"
        )));
    }
    let sum = if x <= DOUBLE_SERIES_LIMIT {
        series_sum_f64(nu, half * half)
    } else {
        series_sum_dd(nu, half)
    };
    let value = prefactor * sum;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Overflow(format!("series overflow at nu = {nu}, x = {x}")));
    }
    Ok(realify(nu, value))
}

fn series_sum_f64(nu: Complex64, q: f64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= -q / (kf * (nu + kf));
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn series_sum_dd(nu: Complex64, half: f64) -> Complex64 {
    let q = Dd::from_f64(half) * Dd::from_f64(half);
    let minus_q = -q;
    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    for k in 1..=MAX_SERIES_TERMS {
        let kf = k as f64;
        let den = DdComplex::from_parts(
            Dd::from_f64(kf) * (Dd::from_f64(kf) + Dd::from_f64(nu.re)),
            Dd::from_f64(nu.im).mul_f64(kf),
        );
        term = term.scale(minus_q).div(den);
        sum = sum + term;
        if term.norm_l1() <= 1e-26 * sum.norm_l1() {
            break;
        }
    }
    sum.to_c64()
}

/// Hankel's large-argument expansion, applied at the order reduced to
/// |Re ν₀| ≤ 1/2 and carried to ν by three-term recurrence.
pub fn bessel_j_asymptotic(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("asymptotic J needs x > 0, got {x}")));
    }
    let shift = nu.re.round();
    let base = nu - shift;
    let j0 = hankel_expansion(base, x)?;
    let j1 = hankel_expansion(base + 1.0, x)?;
    let steps = shift as i64;
    let value = if steps >= 0 {
        let (mut prev, mut cur) = (j0, j1);
        if steps == 0 {
            cur = prev;
        } else {
            for k in 1..steps {
                let mu = base + k as f64;
                let next = cur * (2.0 * mu / x) - prev;
                prev = cur;
                cur = next;
            }
        }
        cur
    } else {
        // J_{μ−1} = (2μ/x) J_μ − J_{μ+1}, walking down from (ν₀, ν₀+1).
        let (mut upper, mut cur) = (j1, j0);
        for k in 0..(-steps) {
            let mu = base - k as f64;
            let next = cur * (2.0 * mu / x) - upper;
            upper = cur;
            cur = next;
        }
        cur
    };
    Ok(realify(nu, value))
}

fn hankel_expansion(mu: Complex64, x: f64) -> Result<Complex64> {
    let m4 = 4.0 * mu * mu;
    let mut p = Complex64::new(1.0, 0.0);
    let mut q = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut converged = false;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = term * (m4 - odd * odd) / (8.0 * k as f64 * x);
        if next.norm() > term.norm() && k > 2 {
            break;
        }
        term = next;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += term * sign;
        } else {
            q += term * sign;
        }
        if term.norm() <= 1e-17 * (p.norm() + q.norm()) {
            converged = true;
            break;
        }
    }
    if !converged && term.norm() > 1e-12 * (p.norm() + q.norm()) {
        return Err(Error::Domain(format!(
            "large-argument expansion does not converge for order {mu} at x = {x}"
        )));
    }
    // cos(x − φ) and sin(x − φ) with the reduction done on real x alone.
    let phase = mu * FRAC_PI_2 + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = (phase.sin(), phase.cos());
    let cos_w = cp * cx + sp * sx;
    let sin_w = cp * sx - sp * cx;
    Ok((2.0 / (PI * x)).sqrt() * (p * cos_w - q * sin_w))
}

/// Modified Bessel function K of nonnegative real order for y > 0.
///
/// Half-integer orders use the terminating closed form; other orders use the
/// trapezoidal rule on ∫₀^∞ e^{−y cosh t} cosh(νt) dt, which converges
/// geometrically for this entire integrand.
pub fn bessel_k(order: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain(format!("bessel_k needs y > 0, got {y}")));
    }
    let order = order.abs();
    let twice = 2.0 * order;
    if twice == twice.round() && (twice as i64) % 2 == 1 {
        return Ok(bessel_k_half_integer((order - 0.5) as u32, y));
    }
    Ok(bessel_k_trapezoid(order, y))
}

fn bessel_k_half_integer(n: u32, y: f64) -> f64 {
    // K_{n+1/2}(y) = sqrt(π/(2y)) e^{−y} Σ_k (n+k)! / (k! (n−k)! (2y)^k)
    let mut sum = 0.0;
    let mut coeff = 1.0;
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            coeff *= (n as f64 + kf) * (n as f64 - kf + 1.0) / kf;
        }
        sum += coeff / (2.0 * y).powi(k as i32);
    }
    (PI / (2.0 * y)).sqrt() * (-y).exp() * sum
}

fn bessel_k_trapezoid(order: f64, y: f64) -> f64 {
    const STEP: f64 = 0.05;
    let exponent = |t: f64| order * t - y * t.cosh();
    let peak_t = (order / y).asinh();
    let peak = exponent(peak_t);
    let integrand = |t: f64| {
        let c = y * t.cosh();
        0.5 * ((order * t - c - peak).exp() + (-order * t - c - peak).exp())
    };
    let mut sum = 0.5 * integrand(0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * STEP;
        let v = integrand(t);
        sum += v;
        if t > peak_t && exponent(t) - peak < -60.0 {
            break;
        }
        k += 1;
    }
    STEP * sum * peak.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(re: f64, im: f64) -> ComplexOrder {
        ComplexOrder::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_j(order(0.0, 0.0), 0.0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(bessel_j(order(2.5, 1.0), 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(bessel_j(order(-0.5, 0.0), 0.0).is_err());
        assert!(bessel_j(order(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn negative_argument_is_domain_error() {
        assert!(matches!(
            bessel_j(order(1.0, 0.0), -1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(bessel_k(1.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn half_order_closed_form() {
        for &x in &[0.3, 1.0, 2.5, 6.0, 17.0, 29.0, 31.0, 80.0, 900.0] {
            let exact = (2.0 / (PI * x)).sqrt() * x.sin();
            let j = bessel_j(order(0.5, 0.0), x).unwrap();
            assert!((j.re - exact).abs() <= 1e-13 * (1.0 + exact.abs()), "x = {x}");
            assert_eq!(j.im, 0.0);
        }
        let at_pi = bessel_j(order(0.5, 0.0), PI).unwrap();
        assert!(at_pi.norm() < 1e-15);
    }

    #[test]
    fn negative_integer_reflection_in_series() {
        let j = bessel_j_series(Complex64::new(-3.0, 0.0), 2.0).unwrap();
        let k = bessel_j_series(Complex64::new(3.0, 0.0), 2.0).unwrap();
        assert!((j + k).norm() < 1e-16);
    }

    #[test]
    fn k_half_integer_matches_exponential() {
        let y: f64 = 1.7;
        let exact = (PI / (2.0 * y)).sqrt() * (-y).exp();
        assert!((bessel_k(0.5, y).unwrap() - exact).abs() < 1e-16);
        // K_{3/2} = K_{1/2} (1 + 1/y)
        assert!((bessel_k(1.5, y).unwrap() - exact * (1.0 + 1.0 / y)).abs() < 1e-15);
    }

    #[test]
    fn k_trapezoid_agrees_with_closed_form_near_half_integer() {
        // Continuity in the order across the closed-form branch.
        let y = 2.3;
        let a = bessel_k_trapezoid(2.5, y);
        let b = bessel_k_half_integer(2, y);
        assert!((a - b).abs() / b < 1e-13);
    }
}
