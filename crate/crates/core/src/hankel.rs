//! The Hankel transform
//!
//! H_ν f(y) = ∫₀^∞ f(x) √(xy) J_ν(2√(xy)) dx/x,
//!
//! by quadrature and, on the atom family, exactly through Weber's integral
//! H_ν(x^{(ν+1)/2} e^{−βx}) = β^{−(ν+1)} y^{(ν+1)/2} e^{−y/β}.
//!
//! Negative-side profiles are transformed in the variable |x|, which is the
//! same integral with |xy| in the kernel.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::profile::{Atom, Grid, Profile, SampledFunction, Side};
use crate::quadrature::{integrate_halfline, Decay, QuadratureResult};
use crate::special::dd::{Dd, DdComplex};
use crate::special::{bessel_j, gamma, ComplexOrder};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One value of the kernel √(xy) J_ν(2√(xy)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelKernelPoint {
    pub nu: ComplexOrder,
    pub x: f64,
    pub y: f64,
    pub value: Complex64,
}

impl HankelKernelPoint {
    pub fn new(nu: ComplexOrder, x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::Domain(format!("kernel needs x, y > 0, got ({x}, {y})")));
        }
        let r = (x * y).sqrt();
        let value = bessel_j(nu, 2.0 * r)? * r;
        Ok(HankelKernelPoint { nu, x, y, value })
    }
}

/// H_ν f at one point y > 0 (|y| for negative-side profiles), by quadrature.
///
/// With x = u² the integral becomes 2√y ∫₀^∞ f(u²) J_ν(2u√y) du, whose
/// integrand is bounded at u = 0 for every Re ν > −1 and decays like a
/// Gaussian.
pub fn hankel_at(f: &Profile, y: f64, tol: f64) -> Result<QuadratureResult> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("hankel transform point must be positive, got {y}")));
    }
    let Some(rate) = f.decay_rate() else {
        return Ok(QuadratureResult { value: ZERO, error_estimate: 0.0, evaluations: 1 });
    };
    let nu = f.order();
    let sy = y.sqrt();
    let budget = (1.0 / tol).ln().max(1.0) + 10.0;
    // Exponential-decay hint whose nominal cut lands at the Gaussian cut.
    let u_rate = (rate * budget).sqrt();
    let u_cut = budget / u_rate;
    let oscillation = 2.0 * sy + 2.0 * f.max_frequency() * u_cut;
    let integrand = |u: f64| {
        if u == 0.0 {
            return ZERO;
        }
        match bessel_j(nu, 2.0 * u * sy) {
            Ok(j) => f.evaluate_abs(u * u) * j * (2.0 * sy),
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    integrate_halfline(integrand, Decay::Exponential(u_rate), oscillation, tol)
}

/// H_ν f on a grid by quadrature, points evaluated in parallel. The output
/// lives on the same side as `f`.
pub fn hankel_transform(f: &Profile, out_grid: &Grid, tol: f64) -> Result<SampledFunction> {
    let points = out_grid.points()?;
    let values = points
        .par_iter()
        .map(|&y| hankel_at(f, y, tol).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(points, values, f.order(), f.side())
}

/// Exact image of an unmodulated atom as a positive-side profile.
pub fn hankel_closed_form(atom: &Atom, nu: ComplexOrder) -> Result<Profile> {
    if atom.modulation() != 0.0 {
        return Err(Error::Unsupported(
            "closed-form Hankel transform needs an unmodulated atom".into(),
        ));
    }
    Ok(Profile::new(nu, atom_image(atom, nu).into_iter().collect(), Side::Positive))
}

/// Exact H_ν f for any profile. The modulation is folded into a complex
/// rate β = α − ib, for which Weber's formula still holds because Re β > 0.
pub fn hankel_image(f: &Profile) -> Profile {
    let nu = f.order();
    Profile::new(nu, f.atoms().iter().filter_map(|a| atom_image(a, nu)).collect(), f.side())
}

// x^m e^{−βx} corresponds to (−d/dβ)^m; with u = 1/β this is (u² d/du)^m
// acting on u^{ν+1} e^{−yu}. Terms u^{ν+1+a} y^j e^{−yu} map to
// (ν+1+a) u^{ν+2+a} y^j − u^{ν+3+a} y^{j+1}.
fn atom_image(atom: &Atom, nu: ComplexOrder) -> Option<Atom> {
    let beta = atom.exponent();
    let u = beta.inv();
    let nu1 = nu.value() + 1.0;
    let degree = atom.degree();
    let base = u.powc(nu1);
    let mut out = vec![ZERO; degree + 1];
    // terms[a][j], a ≤ 2m, j ≤ m
    let mut terms = vec![vec![ZERO; degree + 1]; 2 * degree + 1];
    terms[0][0] = Complex64::new(1.0, 0.0);
    let mut u_pow = vec![Complex64::new(1.0, 0.0); 2 * degree + 1];
    for a in 1..u_pow.len() {
        u_pow[a] = u_pow[a - 1] * u;
    }
    for (m, &c) in atom.coefficients().iter().enumerate() {
        if m > 0 {
            let mut next = vec![vec![ZERO; degree + 1]; 2 * degree + 1];
            for a in 0..=2 * (m - 1) {
                for j in 0..m {
                    let t = terms[a][j];
                    if t == ZERO {
                        continue;
                    }
                    next[a + 1][j] += t * (nu1 + a as f64);
                    next[a + 2][j + 1] -= t;
                }
            }
            terms = next;
        }
        if c == ZERO {
            continue;
        }
        for (a, row) in terms.iter().enumerate() {
            for (j, &t) in row.iter().enumerate() {
                if t != ZERO {
                    out[j] += c * t * u_pow[a];
                }
            }
        }
    }
    // Only underflow can make the image of a nonzero atom vanish.
    Atom::from_parts(out.into_iter().map(|c| c * base).collect(), u, 0.0)
}

/// ⟨f, g⟩ = ∫ f conj(g) dx/x over the half line, in closed form. Profiles on
/// different sides are orthogonal.
pub fn inner_product(f: &Profile, g: &Profile) -> Result<Complex64> {
    pairing(f, g, true)
}

/// ∫ f g dx/x without conjugation.
pub fn bilinear(f: &Profile, g: &Profile) -> Result<Complex64> {
    pairing(f, g, false)
}

// ∫ x^{S−1} e^{−Cx} dx = Γ(S) C^{−S} per pair of monomials; the moments
// for S + 1, S + 2, … follow by multiplying with S/C.
fn pairing(f: &Profile, g: &Profile, conjugate: bool) -> Result<Complex64> {
    if f.side() != g.side() {
        return Ok(ZERO);
    }
    let conj = |z: Complex64| if conjugate { z.conj() } else { z };
    let s0 = f.order().half_shift() + conj(g.order().half_shift());
    let mut total = dd(ZERO);
    for a in f.atoms() {
        for b in g.atoms() {
            let c = a.exponent() + conj(b.exponent());
            // Summed in double-double: the Laguerre-type combinations cancel
            // heavily against each other.
            let dc = dd(c);
            let mut moments = Vec::with_capacity(a.degree() + b.degree() + 1);
            let mut m = dd(gamma(s0)? * c.powc(-s0));
            for k in 0..=a.degree() + b.degree() {
                moments.push(m);
                m = (m * dd(s0 + k as f64)).div(dc);
            }
            for (j, &cj) in a.coefficients().iter().enumerate() {
                for (k, &dk) in b.coefficients().iter().enumerate() {
                    total = total + dd(cj) * dd(conj(dk)) * moments[j + k];
                }
            }
        }
    }
    Ok(total.to_c64())
}

fn dd(z: Complex64) -> DdComplex {
    DdComplex::from_parts(Dd::from_f64(z.re), Dd::from_f64(z.im))
}

/// ‖f‖² = ⟨f, f⟩.
pub fn norm_squared(f: &Profile) -> Result<f64> {
    inner_product(f, f).map(|v| v.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn order(re: f64, im: f64) -> ComplexOrder {
        ComplexOrder::new(c(re, im)).unwrap()
    }

    #[test]
    fn weber_closed_form() {
        let nu = order(1.0, 0.0);
        let f = Profile::exponential(nu, c(2.0, 0.0)).unwrap();
        let h = hankel_image(&f);
        for y in [0.1f64, 1.0, 4.0] {
            let want = 0.25 * y * (-y / 2.0).exp();
            assert!((h.evaluate(y).unwrap() - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn first_moment_image() {
        let nu = order(0.7, 0.3);
        let atom = Atom::new(vec![ZERO, c(1.0, 0.0)], c(1.0, 0.0), 0.0).unwrap();
        let h = hankel_closed_form(&atom, nu).unwrap();
        assert_eq!(h.atoms()[0].coefficients(), &[nu.value() + 1.0, c(-1.0, 0.0)]);
        let modulated = Atom::new(vec![c(1.0, 0.0)], c(1.0, 0.0), 0.5).unwrap();
        assert!(matches!(hankel_closed_form(&modulated, nu), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closed_form_is_an_involution() {
        let nu = order(2.0, 0.0);
        let atom = Atom::exponential(c(1.0, 0.0), c(2.0, 0.0)).unwrap();
        let once = hankel_closed_form(&atom, nu).unwrap();
        let twice = hankel_image(&once);
        let a = &twice.atoms()[0];
        assert!((a.rate() - c(2.0, 0.0)).norm() < 1e-15);
        assert!((a.coefficients()[0] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for nu in [order(-0.5, 0.0), order(0.7, 0.3), order(3.0, 0.0)] {
            let f = Profile::new(
                nu,
                vec![
                    Atom::new(vec![c(1.0, 0.0), c(0.0, -0.5), c(0.25, 0.0)], c(1.3, 0.2), 0.0)
                        .unwrap(),
                    Atom::new(vec![c(0.5, 0.5)], c(0.8, 0.0), 1.5).unwrap(),
                ],
                Side::Positive,
            );
            let exact = hankel_image(&f);
            for y in [1e-3, 0.3, 2.0, 17.0] {
                let q = hankel_at(&f, y, 1e-12).unwrap().value;
                let e = exact.evaluate(y).unwrap();
                assert!((q - e).norm() < 1e-10, "nu={nu} y={y}: {q} vs {e}");
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let d1 = order(1.0, 0.0);
        let f = Profile::exponential(d1, c(1.0, 0.0)).unwrap();
        assert!((inner_product(&f, &f).unwrap() - c(0.25, 0.0)).norm() < 1e-15);
        let g = Profile::new(
            d1,
            vec![Atom::new(vec![c(0.3, 1.0), c(0.0, 2.0)], c(2.0, -0.5), 0.4).unwrap()],
            Side::Positive,
        );
        let fg = inner_product(&f, &g).unwrap();
        let gf = inner_product(&g, &f).unwrap();
        assert!((fg - gf.conj()).norm() < 1e-15);
        assert_eq!(inner_product(&f, &f.clone().with_side(Side::Negative)).unwrap(), ZERO);
    }

    #[test]
    fn kernel_point() {
        let p = HankelKernelPoint::new(order(0.5, 0.0), 1.0, 1.0).unwrap();
        let want = (2.0 / (std::f64::consts::PI * 2.0)).sqrt() * 2f64.sin();
        assert!((p.value - c(want, 0.0)).norm() < 1e-15);
        assert!(HankelKernelPoint::new(order(0.5, 0.0), 0.0, 1.0).is_err());
    }
}
