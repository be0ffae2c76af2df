//! Double-double arithmetic, just enough to sum the Bessel power series
//! without losing the digits that cancel between large alternating terms.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub(crate) const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub(crate) fn abs(self) -> f64 {
        self.hi.abs()
    }

    pub(crate) fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub(crate) fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub(crate) fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DdComplex {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl DdComplex {
    pub(crate) const ONE: DdComplex = DdComplex { re: Dd::ONE, im: Dd::ZERO };

    pub(crate) fn from_parts(re: Dd, im: Dd) -> Self {
        DdComplex { re, im }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn norm_l1(self) -> f64 {
        self.re.abs() + self.im.abs()
    }

    pub(crate) fn scale(self, k: Dd) -> Self {
        DdComplex { re: self.re * k, im: self.im * k }
    }

    pub(crate) fn div(self, b: DdComplex) -> DdComplex {
        let den = b.re * b.re + b.im * b.im;
        let inv = den.recip();
        let re = self.re * b.re + self.im * b.im;
        let im = self.im * b.re - self.re * b.im;
        DdComplex { re: re * inv, im: im * inv }
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_digits_lost_in_double() {
        // (1 + 2^-60) - 1 vanishes in f64 but not in double-double.
        let tiny = 2f64.powi(-60);
        let a = Dd::ONE + Dd::from_f64(tiny);
        let b = a - Dd::ONE;
        assert_eq!(b.to_f64(), tiny);
    }

    #[test]
    fn division_is_accurate() {
        let third = Dd::ONE.div(Dd::from_f64(3.0));
        let back = third.mul_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn complex_division_roundtrip() {
        let a = DdComplex::from_parts(Dd::from_f64(1.5), Dd::from_f64(-2.0));
        let b = DdComplex::from_parts(Dd::from_f64(0.25), Dd::from_f64(3.0));
        let q = a.div(b);
        let back = q * b;
        assert!((back.to_c64() - a.to_c64()).norm() < 1e-28);
    }
}
