//! The operators T_ν, W_ν and M_d, the induced picture F_φ of a function
//! φ ∈ I_d, its norm, the functionals l_{λ,n}, and asymptotic expansions at
//! infinity.
//!
//! Fourier conventions: T_ν uses e^{+ixz}, M_d uses e^{−ixy}.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::profile::{Profile, Side};
use crate::quadrature::{integrate, integrate_halfline, integrate_line, Decay};
use crate::representation::{iwasawa, GroupElement};
use crate::special::{gamma, ComplexOrder};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Where an induced function came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    FromTTransform,
}

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A function φ on ℝ standing for a vector of I_d.
#[derive(Clone)]
pub struct InducedFunction {
    evaluator: Evaluator,
    weight: u32,
    provenance: Provenance,
}

impl fmt::Debug for InducedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedFunction")
            .field("weight", &self.weight)
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl InducedFunction {
    pub fn new(weight: u32, phi: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Result<Self> {
        if weight == 0 {
            return Err(Error::Domain("weight d must be positive".into()));
        }
        Ok(InducedFunction { evaluator: Arc::new(phi), weight, provenance: Provenance::ClosedForm })
    }

    /// φ = T_d f for a profile of positive integer order d.
    pub fn from_profile(f: &Profile) -> Result<Self> {
        let d = match f.order().as_integer() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::Domain(format!(
                    "T_d images need a positive integer order, got {}",
                    f.order()
                )))
            }
        };
        let t = TTransform::new(f)?;
        Ok(InducedFunction {
            evaluator: Arc::new(move |z| t.evaluate(z)),
            weight: d,
            provenance: Provenance::FromTTransform,
        })
    }

    /// φ₀(x) = (1 + x²)^{−(d+1)/2}.
    pub fn phi0(d: u32) -> Result<Self> {
        Self::new(d, move |x| Complex64::new((1.0 + x * x).powf(-(d as f64 + 1.0) / 2.0), 0.0))
    }

    /// φ(x) = (1 − ix)^{−(d+1)} = (1 + x²)^{−(d+1)/2} e^{i(d+1) arctan x}, the
    /// vector with F(r(θ)) = e^{i(d+1)θ}-type dependence.
    pub fn lowest_weight(d: u32) -> Result<Self> {
        Self::new(d, move |x| Complex64::new(1.0, -x).powi(-(d as i32) - 1))
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        (self.evaluator)(x)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn scale(&self, c: Complex64) -> InducedFunction {
        let inner = self.evaluator.clone();
        InducedFunction {
            evaluator: Arc::new(move |x| inner(x) * c),
            weight: self.weight,
            provenance: self.provenance,
        }
    }

    /// x ↦ φ(x + c).
    pub fn translate(&self, c: f64) -> InducedFunction {
        let inner = self.evaluator.clone();
        InducedFunction {
            evaluator: Arc::new(move |x| inner(x + c)),
            weight: self.weight,
            provenance: self.provenance,
        }
    }
}

/// Closed form of T_ν f: (2π)^{−1/2} Σ c_j Γ(ν+1+j) (β − iz)^{−(ν+1+j)} over
/// the monomials c_j x^j e^{−βx}; z is negated for negative-side profiles.
#[derive(Debug, Clone)]
pub struct TTransform {
    terms: Vec<(Complex64, Complex64, Complex64)>,
    side: Side,
}

impl TTransform {
    pub fn new(f: &Profile) -> Result<Self> {
        let nu1 = f.order().value() + 1.0;
        let mut terms = Vec::new();
        for atom in f.atoms() {
            for (j, &c) in atom.coefficients().iter().enumerate() {
                if c != ZERO {
                    let power = nu1 + j as f64;
                    terms.push((c * gamma(power)? * INV_SQRT_2PI, atom.exponent(), power));
                }
            }
        }
        Ok(TTransform { terms, side: f.side() })
    }

    pub fn evaluate(&self, z: f64) -> Complex64 {
        let iz = Complex64::new(0.0, z * self.side.sign());
        self.terms.iter().map(|&(c, beta, power)| c * (beta - iz).powc(-power)).sum()
    }
}

/// T_ν f(z) = (2π)^{−1/2} ∫₀^∞ x^{(ν−1)/2} f(x) e^{ixz} dx, in closed form.
pub fn t_transform(f: &Profile, z: f64) -> Result<Complex64> {
    Ok(TTransform::new(f)?.evaluate(z))
}

/// T_ν f(z) by quadrature, with x = u² to remove the endpoint singularity.
pub fn t_transform_quadrature(f: &Profile, z: f64, tol: f64) -> Result<Complex64> {
    let Some(rate) = f.decay_rate() else { return Ok(ZERO) };
    let nu = f.order().value();
    let zs = z * f.side().sign();
    let half = (nu - 1.0) * 0.5;
    // 2u · u^{ν−1} f(u²) e^{iu²z}
    let integrand = |u: f64| {
        if u == 0.0 {
            return ZERO;
        }
        let x = u * u;
        let power = (half * x.ln()).exp();
        f.evaluate_abs(x) * power * Complex64::new(0.0, x * zs).exp() * (2.0 * u)
    };
    let budget = (1.0 / tol).ln().max(1.0) + 10.0;
    let u_rate = (rate * budget).sqrt();
    let u_cut = budget / u_rate;
    let oscillation = 2.0 * (zs.abs() + f.max_frequency()) * u_cut;
    let r = integrate_halfline(integrand, Decay::Exponential(u_rate), oscillation, tol / INV_SQRT_2PI)?;
    Ok(r.value * INV_SQRT_2PI)
}

/// W_ν φ(x) = |x|^{−ν−1} e^{sgn(x)πi(ν+1)/2} φ(−1/x) for any φ.
pub fn weyl_apply(phi: impl Fn(f64) -> Complex64, nu: ComplexOrder, x: f64) -> Result<Complex64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::Domain("W is evaluated away from 0".into()));
    }
    let nu1 = nu.value() + 1.0;
    let modulus = Complex64::new(x.abs(), 0.0).powc(-nu1);
    let phase = (Complex64::new(0.0, x.signum() * PI * 0.5) * nu1).exp();
    Ok(modulus * phase * phi(-1.0 / x))
}

pub fn weyl_op(phi: &InducedFunction, nu: ComplexOrder, x: f64) -> Result<Complex64> {
    weyl_apply(|t| phi.evaluate(t), nu, x)
}

/// M_d φ(y) = |y|^{(1−d)/2} (2π)^{−1/2} ∫ φ(x) e^{−ixy} dx, by quadrature.
pub fn m_transform(phi: &InducedFunction, y: f64, tol: f64) -> Result<Complex64> {
    if y == 0.0 || !y.is_finite() {
        return Err(Error::Domain("M_d is evaluated away from 0".into()));
    }
    let d = phi.weight() as f64;
    let scale = y.abs().powf((1.0 - d) / 2.0) * INV_SQRT_2PI;
    let integrand = |x: f64| phi.evaluate(x) * Complex64::new(0.0, -x * y).exp();
    let r = integrate_line(integrand, Decay::Algebraic(d + 1.0), y.abs(), tol / scale)?;
    Ok(r.value * scale)
}

/// Checks that φ decays like |x|^{−d−1}: the weighted values
/// |φ(x)|(1+x²)^{(d+1)/2} may not keep growing out to |x| = 10⁴.
fn decay_screen(phi: &InducedFunction) -> Result<()> {
    let d = phi.weight() as f64;
    let weighted = |x: f64| phi.evaluate(x).norm() * (1.0 + x * x).powf((d + 1.0) / 2.0);
    for sign in [1.0, -1.0] {
        let w2 = weighted(sign * 1e2);
        let w3 = weighted(sign * 1e3);
        let w4 = weighted(sign * 1e4);
        if !w4.is_finite() || (w4 > 2.0 * w3 && w3 > 2.0 * w2 && w4 > 1e-12) {
            return Err(Error::Divergence(format!(
                "phi does not decay like |x|^-{}: weighted values {w2:e}, {w3:e}, {w4:e}",
                d + 1.0
            )));
        }
    }
    Ok(())
}

/// ‖F_φ‖² = (1/π) ∫ (1+x²)^d |φ(x)|² dx.
pub fn induced_norm(phi: &InducedFunction, tol: f64) -> Result<f64> {
    decay_screen(phi)?;
    let d = phi.weight() as i32;
    let integrand = |x: f64| Complex64::new((1.0 + x * x).powi(d) * phi.evaluate(x).norm_sqr(), 0.0);
    let r = integrate_line(integrand, Decay::Algebraic(2.0), 0.0, tol * PI)?;
    Ok(r.value.re / PI)
}

/// The same norm as (1/π) ∫₀^π |F_φ(r(θ))|² dθ.
pub fn induced_norm_theta(phi: &InducedFunction, tol: f64) -> Result<f64> {
    decay_screen(phi)?;
    let d = phi.weight();
    let integrand = |theta: f64| {
        let value = induced_rotation(phi, d, theta);
        Complex64::new(value.norm_sqr(), 0.0)
    };
    let r = integrate(integrand, 0.0, PI, tol * PI)?;
    Ok(r.value.re / PI)
}

// F_φ(r(θ)) = φ(x)/sin^{d+1}θ with x = −cot θ, for θ ∈ (0, π).
fn induced_rotation(phi: &InducedFunction, d: u32, theta: f64) -> Complex64 {
    let (sin, cos) = theta.sin_cos();
    phi.evaluate(-cos / sin) * sin.powi(-(d as i32) - 1)
}

// Order of the fit used for the value at θ = π.
fn fit_order(d: u32) -> usize {
    d as usize + 3
}

/// F_φ(r(θ)) for θ ∈ (0, π]. At θ = π this is lim x^{d+1}φ(x) as x → ∞,
/// read off the asymptotic fit.
pub fn induced_from_phi(phi: &InducedFunction, theta: f64) -> Result<Complex64> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::Domain(format!("theta must lie in (0, pi], got {theta}")));
    }
    let d = phi.weight();
    if theta == PI {
        let report = asymptotic_check(phi, fit_order(d))?;
        return Ok(report.coefficients[d as usize + 1]);
    }
    Ok(induced_rotation(phi, d, theta))
}

/// F_φ(g) = a^{d+1} F_φ(r(θ)) for g = n(y)s(a)r(θ).
pub fn induced_at(phi: &InducedFunction, g: &GroupElement) -> Result<Complex64> {
    let form = iwasawa(g);
    Ok(induced_from_phi(phi, form.theta)? * form.a.powi(phi.weight() as i32 + 1))
}

/// l_{λ,n}(φ) = ∫ tⁿ φ(t) e^{−iλt} dt for 0 ≤ n ≤ d − 1.
pub fn l_functional(phi: &InducedFunction, lambda: f64, n: u32, tol: f64) -> Result<Complex64> {
    let d = phi.weight();
    if n >= d {
        return Err(Error::Domain(format!("n = {n} must be at most d - 1 = {}", d - 1)));
    }
    decay_screen(phi)?;
    let integrand = |t: f64| phi.evaluate(t) * t.powi(n as i32) * Complex64::new(0.0, -lambda * t).exp();
    let power = (d + 1 - n) as f64;
    Ok(integrate_line(integrand, Decay::Algebraic(power), lambda.abs(), tol)?.value)
}

/// Estimated coefficients a_0..a_M of φ(x) ≈ Σ a_m x^{−m} as x → +∞.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub coefficients: Vec<Complex64>,
    /// Largest x^{d+1}-weighted misfit over the sample points.
    pub residual: f64,
}

impl AsymptoticReport {
    /// φ ∈ I_d needs a_m = 0 for m ≤ d.
    pub fn leading_vanish(&self, d: u32, tol: f64) -> bool {
        self.coefficients.iter().take(d as usize + 1).all(|a| a.norm() <= tol)
    }
}

// Sample points 2^{k/2}, k = 12..=28: the powers 2^6..2^14 and their
// geometric midpoints.
fn asymptotic_samples() -> Vec<f64> {
    (12..=28).map(|k| 2f64.powf(k as f64 / 2.0)).collect()
}

const FIT_EXTRA: usize = 4;

/// Least-squares fit of φ(1/t) by a polynomial of degree M in t = 1/x,
/// weighted by x^{d+1} so that every sample counts on the scale of a_{d+1}.
pub fn asymptotic_check(phi: &InducedFunction, m: usize) -> Result<AsymptoticReport> {
    let d = phi.weight() as usize;
    if m > d + 4 {
        return Err(Error::Domain(format!("M = {m} exceeds d + 4 = {}", d + 4)));
    }
    let xs = asymptotic_samples();
    let t_max = 1.0 / xs[0];
    // Columns (t/t_max)^j scaled by the row weight x^{d+1}. Terms past M are
    // fitted too so that they do not leak into the reported coefficients.
    let rows = xs.len();
    let cols = (m + 1 + FIT_EXTRA).min(rows - 2);
    let mut a = DMatrix::<f64>::zeros(rows, cols);
    let mut b_re = DVector::<f64>::zeros(rows);
    let mut b_im = DVector::<f64>::zeros(rows);
    for (i, &x) in xs.iter().enumerate() {
        let weight = x.powi(d as i32 + 1) * t_max.powi(d as i32 + 1);
        let u = 1.0 / (x * t_max);
        for j in 0..cols {
            a[(i, j)] = weight * u.powi(j as i32);
        }
        let v = phi.evaluate(x) * weight;
        b_re[i] = v.re;
        b_im[i] = v.im;
    }
    // Equilibrate the columns; their scales differ by powers of 2^8.
    let norms: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    let mut scaled = a.clone();
    for (j, &n) in norms.iter().enumerate() {
        scaled.column_mut(j).scale_mut(1.0 / n);
    }
    let svd = scaled.svd(true, true);
    let sv = &svd.singular_values;
    let largest = sv.max();
    let smallest = sv.min();
    if !(smallest > largest * 1e-12) {
        return Err(Error::IllConditioned(format!(
            "asymptotic fit of order {m}: singular values {largest:e} .. {smallest:e}"
        )));
    }
    let solve = |b: &DVector<f64>| -> Result<DVector<f64>> {
        let mut x = svd.solve(b, 0.0).map_err(|e| Error::IllConditioned(e.to_string()))?;
        for (j, &n) in norms.iter().enumerate() {
            x[j] /= n;
        }
        Ok(x)
    };
    let c_re = solve(&b_re)?;
    let c_im = solve(&b_im)?;
    let fit_re = &a * &c_re;
    let fit_im = &a * &c_im;
    let mut residual: f64 = 0.0;
    for i in 0..rows {
        // Undo the t_max^{d+1} scaling so the residual is on the x^{d+1}φ scale.
        let scale = t_max.powi(-(d as i32) - 1);
        let e = Complex64::new(fit_re[i] - b_re[i], fit_im[i] - b_im[i]) * scale;
        residual = residual.max(e.norm());
    }
    let coefficients = (0..=m)
        .map(|j| Complex64::new(c_re[j], c_im[j]) * t_max.powi(-(j as i32)))
        .collect();
    Ok(AsymptoticReport { coefficients, residual })
}
