//! The K-finite orthonormal system
//!
//! e_n(x) = c_n x^{(d+1)/2} e^{−x} L_n^d(2x), c_n = (2^{d+1} n!/(n+d)!)^{1/2},
//!
//! orthonormal in L²((0,∞), dx/x). All pairings go through the closed-form
//! inner product, so nothing here uses quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hankel::inner_product;
use crate::profile::{Atom, Profile, Side};
use crate::representation::{act_lie, KirillovSign, LieElement};
use crate::special::{laguerre_coefficients, ComplexOrder};

#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub n: u32,
    pub d: u32,
    pub profile: Profile,
}

/// c_n² = 2^{d+1} / ((n+1)(n+2)⋯(n+d)).
pub fn normalization(n: u32, d: u32) -> f64 {
    let mut sq = 2f64.powi(d as i32 + 1);
    for j in 1..=d {
        sq /= (n + j) as f64;
    }
    sq.sqrt()
}

pub fn basis_vector(n: u32, d: u32) -> Result<BasisVector> {
    if d == 0 {
        return Err(Error::Domain("basis weight d must be positive".into()));
    }
    let c = normalization(n, d);
    let mut scale = c;
    let coefficients = laguerre_coefficients(n, d)
        .into_iter()
        .map(|a| {
            let v = Complex64::new(a * scale, 0.0);
            scale *= 2.0;
            v
        })
        .collect();
    let atom = Atom::new(coefficients, Complex64::new(1.0, 0.0), 0.0)?;
    let profile = Profile::new(ComplexOrder::weight(d), vec![atom], Side::Positive);
    Ok(BasisVector { n, d, profile })
}

fn check_order(f: &Profile, d: u32) -> Result<()> {
    if d == 0 || f.order().as_integer() != Some(d) {
        return Err(Error::Domain(format!("expansion in weight {d} needs a profile of order {d}, got {}", f.order())));
    }
    Ok(())
}

/// ⟨f, e_n⟩ for n = 0..=N.
pub fn expand(f: &Profile, d: u32, n_max: u32) -> Result<Vec<Complex64>> {
    check_order(f, d)?;
    (0..=n_max).map(|n| inner_product(f, &basis_vector(n, d)?.profile)).collect()
}

/// ‖f‖² − Σ_{n ≤ N} |⟨f, e_n⟩|².
pub fn parseval_residual(f: &Profile, d: u32, n_max: u32) -> Result<f64> {
    let norm = inner_product(f, f)?.re;
    let captured: f64 = expand(f, d, n_max)?.iter().map(|c| c.norm_sqr()).sum();
    Ok(norm - captured)
}

/// Gram matrix ⟨e_m, e_n⟩ for m, n ≤ N, row-major.
pub fn gram(d: u32, n_max: u32) -> Result<Vec<Vec<Complex64>>> {
    let basis = (0..=n_max).map(|n| basis_vector(n, d)).collect::<Result<Vec<_>>>()?;
    basis
        .iter()
        .map(|a| basis.iter().map(|b| inner_product(&a.profile, &b.profile)).collect())
        .collect()
}

/// max |G − I| over the entries.
pub fn gram_deviation(gram: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - target).norm());
        }
    }
    worst
}

/// i(X − Y) acting on e_n under R_d^+: returns the coefficient on e_n and
/// the norm of what is left after removing it.
pub fn compact_eigenvalue(n: u32, d: u32) -> Result<(Complex64, f64)> {
    let e = basis_vector(n, d)?;
    let generator = LieElement { x: 1.0, h: 0.0, y: -1.0 };
    let image = act_lie(&generator, &e.profile, KirillovSign::Plus)?.scale(Complex64::new(0.0, 1.0));
    let lambda = inner_product(&image, &e.profile)?;
    let residual = image.sub(&e.profile.scale(lambda))?;
    let off = inner_product(&residual, &residual)?.re.max(0.0);
    Ok((lambda, off.sqrt()))
}
