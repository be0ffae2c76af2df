//! Gamma, Bessel J of complex order, Bessel K, and generalized Laguerre
//! polynomials in double precision.

mod bessel;
pub(crate) mod dd;
mod gamma;
mod laguerre;

use num_complex::Complex64;
use std::fmt;

use crate::error::{Error, Result};

pub use bessel::{
    bessel_j, bessel_j_asymptotic, bessel_j_series, bessel_k, regime_threshold, SERIES_THRESHOLD,
};
pub use gamma::{gamma, gamma_real, rgamma};
pub use laguerre::{laguerre, laguerre_coefficients};

/// Order ν of a Hankel transform; always satisfies Re ν > −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder(Complex64);

impl ComplexOrder {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re > -1.0) || !value.im.is_finite() {
            return Err(Error::Domain(format!(
                "order must satisfy Re(nu) > -1, got {value}"
            )));
        }
        Ok(ComplexOrder(value))
    }

    pub fn real(value: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0))
    }

    /// Integer weight d ≥ 1 of a discrete-series representation.
    pub fn weight(d: u32) -> Self {
        ComplexOrder(Complex64::new(d as f64, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.im == 0.0
    }

    /// The integer value when the order is a nonnegative integer.
    pub fn as_integer(self) -> Option<u32> {
        let v = self.0;
        (v.im == 0.0 && v.re >= 0.0 && v.re == v.re.round()).then_some(v.re as u32)
    }

    /// Exponent (ν+1)/2 of the x^{(ν+1)/2} prefactor.
    pub fn half_shift(self) -> Complex64 {
        (self.0 + 1.0) * 0.5
    }
}

impl fmt::Display for ComplexOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "{}{:+}i", self.0.re, self.0.im)
        }
    }
}
