//! Numerical verification suites: each one draws a deterministic set of cases,
//! runs the identity it is named after, and records one or more checks per
//! case.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::corpus::{random_profile, CorpusOptions};
use crate::error::{Error, Result};
use crate::hankel::{hankel_at, hankel_image, hankel_transform, inner_product};
use crate::intertwiners::{
    asymptotic_check, induced_norm, induced_norm_theta, l_functional, m_transform, t_transform_quadrature, weyl_apply,
    InducedFunction, TTransform,
};
use crate::kfinite::{basis_vector, compact_eigenvalue, gram, gram_deviation};
use crate::profile::{Grid, Profile, Side};
use crate::representation::{
    act_generator, act_induced, act_kirillov, act_kirillov_word, act_lie, gl2_act, gl2_w_integral, random_element,
    Character, CharacterPair, FunctionPair, GL2Element, Generator, KirillovSign, LieElement,
};
use crate::special::ComplexOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Inversion,
    Weber,
    Diagram,
    Isometry,
    Derivative,
    GroupLaw,
    Intertwining,
    Lie,
    Basis,
    Membership,
    Gl2,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Inversion,
        Suite::Weber,
        Suite::Diagram,
        Suite::Isometry,
        Suite::Derivative,
        Suite::GroupLaw,
        Suite::Intertwining,
        Suite::Lie,
        Suite::Basis,
        Suite::Membership,
        Suite::Gl2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Inversion => "inversion",
            Suite::Weber => "weber",
            Suite::Diagram => "diagram",
            Suite::Isometry => "isometry",
            Suite::Derivative => "derivative",
            Suite::GroupLaw => "grouplaw",
            Suite::Intertwining => "intertwining",
            Suite::Lie => "lie",
            Suite::Basis => "basis",
            Suite::Membership => "membership",
            Suite::Gl2 => "gl2",
        }
    }

    /// Suites parameterized by the Hankel order ν; the rest use the weight d.
    pub fn uses_order(self) -> bool {
        matches!(
            self,
            Suite::Inversion | Suite::Weber | Suite::Diagram | Suite::Isometry | Suite::Derivative
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Hankel orders; `None` selects the standard set.
    pub orders: Option<Vec<ComplexOrder>>,
    /// Weights d; `None` selects the suite's default range.
    pub weights: Option<Vec<u32>>,
    /// Overrides every check's default bound when set.
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub grid: Grid,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { orders: None, weights: None, tolerance: None, seed: 0, grid: Grid::default() }
    }
}

impl SuiteConfig {
    fn orders(&self) -> Vec<ComplexOrder> {
        self.orders.clone().unwrap_or_else(standard_orders)
    }

    fn weights(&self, default: &[u32]) -> Vec<u32> {
        self.weights.clone().unwrap_or_else(|| default.to_vec())
    }

    fn bound(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// ν ∈ {−0.5, 0, 0.7+0.3i, 1, 2, 3}.
pub fn standard_orders() -> Vec<ComplexOrder> {
    [(-0.5, 0.0), (0.0, 0.0), (0.7, 0.3), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]
        .into_iter()
        .map(|(re, im)| ComplexOrder::new(Complex64::new(re, im)).expect("standard orders are valid"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub case: String,
    pub name: &'static str,
    pub value: f64,
    pub bound: f64,
    pub kind: Bound,
}

impl Check {
    pub fn passed(&self) -> bool {
        match self.kind {
            Bound::AtMost => self.value <= self.bound,
            Bound::Above => self.value > self.bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, cases: 0, checks: Vec::new() }
    }

    fn case(&mut self) -> usize {
        self.cases += 1;
        self.cases
    }

    fn at_most(&mut self, case: &str, name: &'static str, value: f64, bound: f64) {
        self.checks.push(Check { case: case.to_string(), name, value, bound, kind: Bound::AtMost });
    }

    fn above(&mut self, case: &str, name: &'static str, value: f64, bound: f64) {
        self.checks.push(Check { case: case.to_string(), name, value, bound, kind: Bound::Above });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    /// Largest error over the upper-bounded checks; NaN if any is NaN.
    pub fn max_error(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.kind == Bound::AtMost)
            .map(|c| c.value)
            .fold(0.0, nan_max)
    }

    /// Largest error of one named check.
    pub fn max_of(&self, name: &str) -> Option<f64> {
        self.checks.iter().filter(|c| c.name == name).map(|c| c.value).reduce(f64::max)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn run(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Inversion => inversion(config),
        Suite::Weber => weber(config),
        Suite::Diagram => diagram(config),
        Suite::Isometry => isometry(config),
        Suite::Derivative => derivative(config),
        Suite::GroupLaw => group_law(config),
        Suite::Intertwining => intertwining(config),
        Suite::Lie => lie(config),
        Suite::Basis => basis(config),
        Suite::Membership => membership(config),
        Suite::Gl2 => gl2(config),
    }
}

const QUAD_TOL: f64 = 1e-12;

fn lin(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

fn log_points(a: f64, b: f64, n: usize) -> Vec<f64> {
    Grid::Log { start: a, end: b, count: n }.points().expect("valid log grid")
}

fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, nan_max)
}

fn sup(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn values(f: &Profile, xs: &[f64]) -> Result<Vec<Complex64>> {
    xs.iter().map(|&x| f.evaluate(x)).collect()
}

fn order_tag(nu: ComplexOrder) -> String {
    format!("nu={nu}")
}

// H_ν(H_ν f) = f: quadrature applied to the exact image.
fn inversion(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Inversion);
    let bound = config.bound(1e-8);
    for (i, nu) in config.orders().into_iter().enumerate() {
        let mut rng = config.rng(100 + i as u64);
        for _ in 0..10 {
            let f = random_profile(&mut rng, nu, CorpusOptions::default());
            let once = hankel_image(&f);
            let twice = hankel_transform(&once, &config.grid, QUAD_TOL)?;
            let err = twice.relative_deviation(&f.sample(&config.grid)?)?;
            report.case();
            report.at_most(&format!("{} f={f}", order_tag(nu)), "relative", err, bound);
        }
    }
    Ok(report)
}

// Quadrature against α^{−(ν+1)} y^{(ν+1)/2} e^{−y/α}, written out directly.
fn weber(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Weber);
    let bound = config.bound(1e-9);
    let ys = config.grid.points()?;
    for nu in config.orders() {
        let nu1 = nu.value() + 1.0;
        for alpha in [1.0, 2.0, 3.5] {
            let f = Profile::exponential(nu, Complex64::new(alpha, 0.0))?;
            let h = hankel_transform(&f, &config.grid, QUAD_TOL)?;
            let want: Vec<Complex64> = ys
                .iter()
                .map(|&y| {
                    Complex64::new(alpha, 0.0).powc(-nu1) * Complex64::new(y, 0.0).powc(nu1 * 0.5) * (-y / alpha).exp()
                })
                .collect();
            let err = sup_diff(h.values(), &want) / sup(&want);
            report.case();
            report.at_most(&format!("{} alpha={alpha}", order_tag(nu)), "relative", err, bound);
        }
    }
    Ok(report)
}

const DIAGRAM_POINTS: [f64; 6] = [0.25, -0.25, 1.0, -1.0, 4.0, -4.0];

// T_ν(H_ν f) = W_ν(T_ν f): quadrature T of the exact H image against the
// closed-form T followed by W.
fn diagram(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Diagram);
    let bound = config.bound(1e-7);
    for (i, nu) in config.orders().into_iter().enumerate() {
        let mut rng = config.rng(200 + i as u64);
        for _ in 0..6 {
            let f = random_profile(&mut rng, nu, CorpusOptions::default());
            let hf = hankel_image(&f);
            let tf = TTransform::new(&f)?;
            let mut worst: f64 = 0.0;
            for z in DIAGRAM_POINTS {
                let lhs = t_transform_quadrature(&hf, z, QUAD_TOL * 1e-1)?;
                let rhs = weyl_apply(|t| tf.evaluate(t), nu, z)?;
                let scale = 1.0 + tf.evaluate(-1.0 / z).norm();
                worst = nan_max(worst, (lhs - rhs).norm() / scale);
            }
            report.case();
            report.at_most(&format!("{} f={f}", order_tag(nu)), "scaled", worst, bound);
        }
    }
    Ok(report)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

// ⟨H f₁, H f₂⟩ = ⟨f₁, f₂⟩ for real orders and real atoms, and the induced
// norm of T_d f against ⟨f, f⟩.
fn isometry(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Isometry);
    let bound = config.bound(1e-8);
    let orders: Vec<ComplexOrder> = config.orders().into_iter().filter(|nu| nu.is_real()).collect();
    if orders.is_empty() {
        return Err(Error::Domain("the isometry suite needs a real order".into()));
    }
    let mut rng = config.rng(300);
    let real = CorpusOptions { real: true, modulated: false };
    for k in 0..20 {
        let nu = orders[k % orders.len()];
        let f1 = random_profile(&mut rng, nu, real);
        let f2 = random_profile(&mut rng, nu, real);
        let lhs = inner_product(&hankel_image(&f1), &hankel_image(&f2))?;
        let rhs = inner_product(&f1, &f2)?;
        report.case();
        report.at_most(&format!("{} f1={f1} f2={f2}", order_tag(nu)), "absolute", (lhs - rhs).norm(), bound);
    }
    // The weighted norm is proportional to ⟨f, f⟩ on the lowest K-type only;
    // compare it there, and against its θ-integral form.
    let norm_bound = config.bound(1e-6);
    for d in 1..=3u32 {
        let c = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        let f = basis_vector(0, d)?.profile.scale(c);
        let phi = InducedFunction::from_profile(&f)?;
        let direct = induced_norm(&phi, 1e-11)?;
        let theta = induced_norm_theta(&phi, 1e-11)?;
        let kirillov = induced_norm_constant(d) * inner_product(&f, &f)?.re;
        let case = format!("d={d} f={f}");
        report.case();
        report.at_most(&case, "induced_norm", (direct - kirillov).abs() / kirillov, norm_bound);
        report.at_most(&case, "induced_norm_theta", (direct - theta).abs() / direct, norm_bound);
    }
    Ok(report)
}

fn factorial(d: u32) -> f64 {
    (1..=d).map(f64::from).product()
}

/// ‖T_d e₀‖² in the induced norm divided by ⟨e₀, e₀⟩: d! 2^d / π.
pub fn induced_norm_constant(d: u32) -> f64 {
    factorial(d) * 2f64.powi(d as i32) / PI
}

// H(Df) = −D(Hf) with D = x d/dx: quadrature on the left, exact on the right.
fn derivative(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Derivative);
    let bound = config.bound(1e-6);
    let ys = lin(0.1, 10.0, 12);
    for (i, nu) in config.orders().into_iter().enumerate() {
        let mut rng = config.rng(400 + i as u64);
        for _ in 0..3 {
            let f = random_profile(&mut rng, nu, CorpusOptions::default());
            let df = f.euler_derivative();
            let rhs = hankel_image(&f).euler_derivative().scale(Complex64::new(-1.0, 0.0));
            let mut worst: f64 = 0.0;
            for &y in &ys {
                let lhs = hankel_at(&df, y, QUAD_TOL)?.value;
                worst = nan_max(worst, (lhs - rhs.evaluate(y)?).norm());
            }
            report.case();
            report.at_most(&format!("{} f={f}", order_tag(nu)), "absolute", worst, bound);
        }
    }
    Ok(report)
}

fn weights_profile(rng: &mut ChaCha8Rng, d: u32) -> Profile {
    random_profile(rng, ComplexOrder::weight(d), CorpusOptions::default())
}

// π(g₁)π(g₂) = π(g₁g₂) in the induced model, R(g₁)R(g₂) = R(g₁g₂) in both
// Kirillov models, and R(w)² = (−1)^{d+1}.
fn group_law(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::GroupLaw);
    let induced_bound = config.bound(1e-9);
    let kirillov_bound = config.bound(1e-6);
    let w2_bound = config.bound(1e-8);
    let xs = lin(-5.0, 5.0, 41);
    let grid = config.grid.points()?;
    for d in config.weights(&[1, 2, 3]) {
        let mut rng = config.rng(500 + d as u64);
        for _ in 0..20 {
            let f = weights_profile(&mut rng, d);
            let g1 = random_element(&mut rng);
            let g2 = random_element(&mut rng);
            let g12 = g1 * g2;
            let case = format!("d={d} g1={g1} g2={g2} f={f}");
            report.case();

            let phi = InducedFunction::from_profile(&f)?;
            let inner = {
                let phi = phi.clone();
                InducedFunction::new(d, move |x| {
                    act_induced(&g2, &phi, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                })?
            };
            let mut nested = Vec::new();
            let mut direct = Vec::new();
            for &x in &xs {
                let d1 = g1.r * x + g1.p;
                let z = (g1.s * x + g1.q) / d1;
                let d2 = g2.r * z + g2.p;
                let d12 = g12.r * x + g12.p;
                if d1.abs() < 1e-3 || d2.abs() < 1e-3 || d12.abs() < 1e-3 {
                    continue;
                }
                nested.push(act_induced(&g1, &inner, x)?);
                direct.push(act_induced(&g12, &phi, x)?);
            }
            let err = sup_diff(&nested, &direct) / sup(&direct).max(f64::MIN_POSITIVE);
            report.at_most(&case, "induced", err, induced_bound);

            for sign in [KirillovSign::Plus, KirillovSign::Minus] {
                let lhs = act_kirillov(&g1, &act_kirillov(&g2, &f, sign)?, sign)?;
                let rhs = act_kirillov(&g12, &f, sign)?;
                let (a, b) = (values(&lhs, &grid)?, values(&rhs, &grid)?);
                let name = if sign == KirillovSign::Plus { "kirillov_plus" } else { "kirillov_minus" };
                report.at_most(&case, name, sup_diff(&a, &b) / sup(&b), kirillov_bound);
            }

            let ww = act_kirillov_word(&[Generator::W, Generator::W], &f, KirillovSign::Plus)?;
            let sign = if d % 2 == 0 { -1.0 } else { 1.0 };
            let (a, b) = (values(&ww, &grid)?, values(&f.scale(Complex64::new(sign, 0.0)), &grid)?);
            report.at_most(&case, "w_squared", sup_diff(&a, &b) / sup(&b), w2_bound);
        }
    }
    Ok(report)
}

// R_d^+(g) f = M_d(π_d(g) T_d f) for g ∈ {n(1), s(2), w}, and M_d T_d f = f.
fn intertwining(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Intertwining);
    let bound = config.bound(1e-6);
    let ys = log_points(0.05, 20.0, 16);
    let elements = [
        ("n(1)", Generator::N(1.0)),
        ("s(2)", Generator::S(2.0)),
        ("w", Generator::W),
    ];
    for d in config.weights(&[1, 2, 3]) {
        let mut rng = config.rng(600 + d as u64);
        for _ in 0..2 {
            let f = weights_profile(&mut rng, d);
            let phi = InducedFunction::from_profile(&f)?;
            let scale = sup(&values(&f, &ys)?).max(1e-3);

            let mut err: f64 = 0.0;
            for &y in &ys {
                err = nan_max(err, (m_transform(&phi, y, 1e-11)? - f.evaluate(y)?).norm());
            }
            report.case();
            report.at_most(&format!("d={d} g=id f={f}"), "m_inverts_t", err / scale, bound);

            for (label, gen) in elements {
                let g = gen.matrix();
                let moved = {
                    let phi = phi.clone();
                    InducedFunction::new(d, move |x| {
                        act_induced(&g, &phi, x).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                    })?
                };
                let exact = act_generator(gen, &f, KirillovSign::Plus)?;
                let mut err: f64 = 0.0;
                for &y in &ys {
                    err = nan_max(err, (m_transform(&moved, y, 1e-11)? - exact.evaluate(y)?).norm());
                }
                report.case();
                report.at_most(&format!("d={d} g={label} f={f}"), "intertwining", err / scale, bound);
            }
        }
    }
    Ok(report)
}

const LIE_STEP: f64 = 1e-5;

// Central differences of t ↦ R(exp tZ) f against the derived action, and
// [X, Y] = H.
fn lie(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lie);
    let fd_bound = config.bound(1e-5);
    let bracket_bound = config.bound(1e-8);
    let xs = log_points(0.05, 20.0, 24);
    let t = LIE_STEP;
    // exp(tX) = n(t), exp(tH) = s(e^t), exp(tY) = w n(−t) w⁻¹ with w⁻¹ = s(−1) w.
    let words = |t: f64| -> [(&'static str, LieElement, Vec<Generator>); 3] {
        [
            ("X", LieElement::X, vec![Generator::N(t)]),
            ("H", LieElement::H, vec![Generator::S(t.exp())]),
            ("Y", LieElement::Y, vec![Generator::W, Generator::N(-t), Generator::S(-1.0), Generator::W]),
        ]
    };
    for d in config.weights(&[1, 2, 3]) {
        let mut rng = config.rng(700 + d as u64);
        for _ in 0..2 {
            let f = weights_profile(&mut rng, d);
            for sign in [KirillovSign::Plus, KirillovSign::Minus] {
                let case = format!("d={d} sign={sign:?} f={f}");
                report.case();
                for ((name, el, forward), (_, _, backward)) in words(t).into_iter().zip(words(-t)) {
                    let plus = values(&act_kirillov_word(&forward, &f, sign)?, &xs)?;
                    let minus = values(&act_kirillov_word(&backward, &f, sign)?, &xs)?;
                    let fd: Vec<Complex64> = plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * t)).collect();
                    let exact = values(&act_lie(&el, &f, sign)?, &xs)?;
                    let check = match name {
                        "X" => "exp_x",
                        "H" => "exp_h",
                        _ => "exp_y",
                    };
                    report.at_most(&case, check, sup_diff(&fd, &exact), fd_bound);
                }
                let xy = act_lie(&LieElement::X, &act_lie(&LieElement::Y, &f, sign)?, sign)?;
                let yx = act_lie(&LieElement::Y, &act_lie(&LieElement::X, &f, sign)?, sign)?;
                let h = values(&act_lie(&LieElement::H, &f, sign)?, &xs)?;
                let bracket = values(&xy.sub(&yx)?, &xs)?;
                report.at_most(&case, "bracket", sup_diff(&bracket, &h) / sup(&h).max(1.0), bracket_bound);
            }
        }
    }
    Ok(report)
}

/// √(2π)/d! · y^{(d+1)/2} e^{−y}.
pub fn lowest_weight_image(d: u32, y: f64) -> f64 {
    (2.0 * PI).sqrt() / factorial(d) * y.powf((d as f64 + 1.0) / 2.0) * (-y).exp()
}

// Orthonormality, H_d e₀ = e₀, the closed form of M_d on the lowest-weight
// vector, and the spectrum of i(X − Y).
fn basis(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Basis);
    for d in config.weights(&[1, 2, 3, 4, 5]) {
        let case = format!("d={d}");
        report.case();
        report.at_most(&case, "gram", gram_deviation(&gram(d, 10)?), config.bound(1e-8));

        let e0 = basis_vector(0, d)?.profile;
        let h = hankel_transform(&e0, &config.grid, 1e-13)?;
        report.at_most(&case, "hankel_fixed", h.relative_deviation(&e0.sample(&config.grid)?)?, config.bound(1e-9));

        let phi = InducedFunction::lowest_weight(d)?;
        let mut err: f64 = 0.0;
        for y in [0.1, 0.5, 1.0, 2.0, 5.0] {
            err = nan_max(err, (m_transform(&phi, y, 1e-11)? - lowest_weight_image(d, y)).norm());
        }
        report.at_most(&case, "m_lowest_weight", err, config.bound(1e-7));

        if d <= 3 {
            let mut residual: f64 = 0.0;
            let mut step: f64 = 0.0;
            let mut previous: Option<f64> = None;
            for n in 0..=5 {
                let (lambda, off) = compact_eigenvalue(n, d)?;
                residual = nan_max(residual, off.max(lambda.im.abs()));
                if let Some(p) = previous {
                    step = nan_max(step, ((lambda.re - p).abs() - 2.0).abs());
                }
                previous = Some(lambda.re);
            }
            report.at_most(&case, "eigen_residual", residual, config.bound(1e-6));
            report.at_most(&case, "eigen_step", step, config.bound(1e-9));
        }
    }
    Ok(report)
}

// T_d images lie in I_d: leading asymptotic coefficients vanish and
// l_{λ,n} = 0 for λ ≤ 0, while l_{1,0} of a witness does not.
fn membership(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Membership);
    for d in config.weights(&[1, 2, 3]) {
        let mut rng = config.rng(800 + d as u64);
        for _ in 0..3 {
            let f = weights_profile(&mut rng, d);
            let phi = InducedFunction::from_profile(&f)?;
            let case = format!("d={d} f={f}");
            report.case();
            let fit = asymptotic_check(&phi, d as usize + 3)?;
            let leading = fit.coefficients.iter().take(d as usize + 1).map(|a| a.norm()).fold(0.0, f64::max);
            report.at_most(&case, "asymptotic_leading", leading, config.bound(1e-5));
            let mut l_max: f64 = 0.0;
            for lambda in [0.0, -0.5, -2.0] {
                for n in 0..d {
                    l_max = nan_max(l_max, l_functional(&phi, lambda, n, 1e-10)?.norm());
                }
            }
            report.at_most(&case, "l_vanishes", l_max, config.bound(1e-7));
        }
        let witness = basis_vector(0, d)?.profile;
        let phi = InducedFunction::from_profile(&witness)?;
        report.case();
        report.above(&format!("d={d} witness"), "l_positive", l_functional(&phi, 1.0, 0, 1e-10)?.norm(), 1e-3);
    }
    Ok(report)
}

fn characters(d: u32) -> Result<CharacterPair> {
    let second = Character { s: Complex64::new(0.25, 0.1), m: 0 };
    let first = Character { s: second.s + d as f64, m: ((d + 1) % 2) as u8 };
    CharacterPair::new(first, second)
}

// The GL(2) w-action through j_d against the Hankel path, the SL(2) path on
// the positive half line, and the central character.
fn gl2(config: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Gl2);
    let bound = config.bound(1e-7);
    let central_bound = config.bound(1e-13);
    let ys = [0.3, -0.3, 1.0, -1.0, 3.0, -3.0];
    for d in config.weights(&[1, 2, 3]) {
        let chars = characters(d)?;
        let order = ComplexOrder::weight(d);
        let w = GL2Element::new(0.0, -1.0, 1.0, 0.0, chars)?;
        let mut rng = config.rng(900 + d as u64);
        for _ in 0..2 {
            let pos = weights_profile(&mut rng, d);
            let neg = weights_profile(&mut rng, d).with_side(Side::Negative);
            let inputs = [
                FunctionPair::new(pos.clone(), Profile::zero(order, Side::Negative))?,
                FunctionPair::new(Profile::zero(order, Side::Positive), neg.clone())?,
            ];
            for (label, pair) in ["positive", "negative"].into_iter().zip(&inputs) {
                let case = format!("d={d} {label} f+={} f-={}", pair.positive, pair.negative);
                report.case();
                let image = gl2_act(&w, pair)?;
                let mut err: f64 = 0.0;
                let mut scale: f64 = 1.0;
                for y in ys {
                    let exact = image.evaluate(y)?;
                    scale = scale.max(exact.norm());
                    err = nan_max(err, (gl2_w_integral(pair, &chars, y, 1e-12)? - exact).norm());
                }
                report.at_most(&case, "w_kernel", err / scale, bound);
                if label == "positive" {
                    let sl2 = act_generator(Generator::W, &pair.positive, KirillovSign::Plus)?;
                    let mut err: f64 = 0.0;
                    for y in ys.into_iter().filter(|&y| y > 0.0) {
                        err = nan_max(err, (sl2.evaluate(y)? - image.evaluate(y)?).norm());
                    }
                    report.at_most(&case, "sl2_path", err / scale, bound);
                }
            }
            let pair = FunctionPair::new(pos, neg)?;
            for b in [2.0, -0.5, 3.0] {
                let g = GL2Element::new(b, 0.0, 0.0, b, chars)?;
                let image = gl2_act(&g, &pair)?;
                let omega = chars.omega(b);
                let mut err: f64 = 0.0;
                let mut scale: f64 = 0.0;
                for y in lin(-4.0, 4.0, 17).into_iter().filter(|&y| y != 0.0) {
                    let want = pair.evaluate(y)? * omega;
                    scale = scale.max(want.norm());
                    err = nan_max(err, (image.evaluate(y)? - want).norm());
                }
                report.case();
                report.at_most(&format!("d={d} central b={b}"), "central", err / scale, central_bound);
            }
        }
    }
    Ok(report)
}
