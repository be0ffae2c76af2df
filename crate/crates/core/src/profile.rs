//! Closed-form functions x^{(ν+1)/2} Σ p_k(x) e^{−α_k x + i b_k x} on a half
//! line, grids, and sampled functions.

use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special::ComplexOrder;

mod parse;

pub use parse::parse_spec;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Which half line a profile lives on. Negative-side profiles are written in
/// the variable t = |x|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Positive => Side::Negative,
            Side::Negative => Side::Positive,
        }
    }
}

/// p(t) e^{−α t + i b t}.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    coefficients: Vec<Complex64>,
    rate: Complex64,
    modulation: f64,
}

impl Atom {
    /// Trailing zero coefficients are dropped; an all-zero polynomial is
    /// rejected.
    pub fn new(coefficients: Vec<Complex64>, rate: Complex64, modulation: f64) -> Result<Self> {
        if !(rate.re > 0.0) || !rate.im.is_finite() || !rate.re.is_finite() {
            return Err(Error::Domain(format!("atom rate must have Re > 0, got {rate}")));
        }
        if !modulation.is_finite() {
            return Err(Error::Domain("atom modulation must be finite".into()));
        }
        if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("atom coefficients must be finite".into()));
        }
        let coefficients = trim(coefficients);
        if coefficients.is_empty() {
            return Err(Error::Domain("atom polynomial must be nonzero".into()));
        }
        Ok(Atom { coefficients, rate, modulation })
    }

    /// c·e^{−α t}.
    pub fn exponential(coefficient: Complex64, rate: Complex64) -> Result<Self> {
        Self::new(vec![coefficient], rate, 0.0)
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn rate(&self) -> Complex64 {
        self.rate
    }

    pub fn modulation(&self) -> f64 {
        self.modulation
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// β = α − ib, so the atom is p(t) e^{−β t}.
    pub fn exponent(&self) -> Complex64 {
        self.rate - Complex64::new(0.0, self.modulation)
    }

    pub fn polynomial_at(&self, t: f64) -> Complex64 {
        horner(&self.coefficients, Complex64::new(t, 0.0))
    }

    // Builds an atom from possibly-zero polynomial data; None when it vanishes.
    pub(crate) fn from_parts(coefficients: Vec<Complex64>, rate: Complex64, modulation: f64) -> Option<Self> {
        let coefficients = trim(coefficients);
        (!coefficients.is_empty()).then_some(Atom { coefficients, rate, modulation })
    }

    fn same_exponent(&self, other: &Atom) -> bool {
        self.rate == other.rate && self.modulation == other.modulation
    }
}

fn trim(mut c: Vec<Complex64>) -> Vec<Complex64> {
    while c.last() == Some(&ZERO) {
        c.pop();
    }
    c
}

fn horner(c: &[Complex64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, &ck| acc * t + ck)
}

/// Polynomial helpers on coefficient vectors (index = power).
pub(crate) mod poly {
    use super::ZERO;
    use num_complex::Complex64;

    pub fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; a.len().max(b.len())];
        for (k, &c) in a.iter().enumerate() {
            out[k] += c;
        }
        for (k, &c) in b.iter().enumerate() {
            out[k] += c;
        }
        out
    }

    pub fn scale(a: &[Complex64], s: Complex64) -> Vec<Complex64> {
        a.iter().map(|&c| c * s).collect()
    }

    /// t·p(t)
    pub fn shift(a: &[Complex64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(a.len() + 1);
        out.push(ZERO);
        out.extend_from_slice(a);
        out
    }

    pub fn derivative(a: &[Complex64]) -> Vec<Complex64> {
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect()
    }
}

/// An element x^{(ν+1)/2} Σ p_k e^{−β_k t} of the Schwartz-type space on one
/// half line. The empty atom list is the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    order: ComplexOrder,
    atoms: Vec<Atom>,
    side: Side,
}

impl Profile {
    pub fn new(order: ComplexOrder, atoms: Vec<Atom>, side: Side) -> Self {
        let mut p = Profile { order, atoms: Vec::new(), side };
        for atom in atoms {
            p.push_atom(atom);
        }
        p
    }

    pub fn zero(order: ComplexOrder, side: Side) -> Self {
        Profile { order, atoms: Vec::new(), side }
    }

    /// x^{(ν+1)/2} e^{−α x} on the positive half line.
    pub fn exponential(order: ComplexOrder, rate: Complex64) -> Result<Self> {
        Ok(Self::new(order, vec![Atom::exponential(Complex64::new(1.0, 0.0), rate)?], Side::Positive))
    }

    pub fn order(&self) -> ComplexOrder {
        self.order
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn with_side(mut self, side: Side) -> Self {
        self.side = side;
        self
    }

    pub fn with_order(mut self, order: ComplexOrder) -> Self {
        self.order = order;
        self
    }

    // Merges atoms that share an exponent so the representation stays canonical.
    fn push_atom(&mut self, atom: Atom) {
        if let Some(existing) = self.atoms.iter_mut().position(|a| a.same_exponent(&atom)) {
            let merged = poly::add(&self.atoms[existing].coefficients, &atom.coefficients);
            match Atom::from_parts(merged, atom.rate, atom.modulation) {
                Some(a) => self.atoms[existing] = a,
                None => {
                    self.atoms.remove(existing);
                }
            }
        } else {
            self.atoms.push(atom);
        }
    }

    fn map_atoms(&self, f: impl Fn(&Atom) -> Option<Atom>) -> Profile {
        Profile::new(self.order, self.atoms.iter().filter_map(f).collect(), self.side)
    }

    /// Value at a point of the profile's half line; 0 at the origin.
    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        let t = x * self.side.sign();
        if t < 0.0 || x.is_nan() {
            return Err(Error::Domain(format!(
                "x = {x} lies outside the {:?} half line",
                self.side
            )));
        }
        Ok(self.evaluate_abs(t))
    }

    /// Value at t = |x| ≥ 0, ignoring the side.
    pub fn evaluate_abs(&self, t: f64) -> Complex64 {
        if t == 0.0 {
            return ZERO;
        }
        let ln_t = t.ln();
        let s = self.order.half_shift();
        self.atoms
            .iter()
            .map(|a| a.polynomial_at(t) * (s * ln_t - a.exponent() * t).exp())
            .sum()
    }

    /// Applies D = x d/dx.
    pub fn euler_derivative(&self) -> Profile {
        let s = self.order.half_shift();
        self.map_atoms(|a| {
            // x^s[(s p + t p' − β t p)] e^{−βt}
            let c = &a.coefficients;
            let sp = poly::scale(c, s);
            let tdp = poly::shift(&poly::derivative(c));
            let btp = poly::scale(&poly::shift(c), -a.exponent());
            Atom::from_parts(poly::add(&poly::add(&sp, &tdp), &btp), a.rate, a.modulation)
        })
    }

    pub fn scale(&self, c: Complex64) -> Profile {
        if c == ZERO {
            return Profile::zero(self.order, self.side);
        }
        self.map_atoms(|a| Atom::from_parts(poly::scale(&a.coefficients, c), a.rate, a.modulation))
    }

    /// Sum of two profiles of the same order and side.
    pub fn add(&self, other: &Profile) -> Result<Profile> {
        if self.order != other.order || self.side != other.side {
            return Err(Error::Domain("profiles must share order and side".into()));
        }
        let mut out = self.clone();
        for atom in &other.atoms {
            out.push_atom(atom.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Profile) -> Result<Profile> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Multiplication by e^{iyx}. On the negative side x = −t, so the
    /// modulation in t moves the other way.
    pub fn modulate(&self, y: f64) -> Profile {
        let db = y * self.side.sign();
        self.map_atoms(|a| Some(Atom { modulation: a.modulation + db, ..a.clone() }))
    }

    /// x ↦ f(c x) for c > 0.
    pub fn dilate(&self, c: f64) -> Result<Profile> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Domain(format!("dilation factor must be positive, got {c}")));
        }
        let prefactor = Complex64::new(c, 0.0).powc(self.order.half_shift());
        Ok(self.map_atoms(|a| {
            let coefficients = a
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, &ck)| ck * prefactor * c.powi(k as i32))
                .collect();
            Atom::from_parts(coefficients, a.rate * c, a.modulation * c)
        }))
    }

    /// Multiplication by t^k with t = |x|.
    pub fn mul_power(&self, k: usize) -> Profile {
        self.map_atoms(|a| {
            let mut c = vec![ZERO; k];
            c.extend_from_slice(&a.coefficients);
            Atom::from_parts(c, a.rate, a.modulation)
        })
    }

    /// Smallest Re α over the atoms (the decay rate), or None for zero.
    pub fn decay_rate(&self) -> Option<f64> {
        self.atoms.iter().map(|a| a.rate.re).reduce(f64::min)
    }

    /// Largest oscillation frequency |Im β| over the atoms.
    pub fn max_frequency(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| (a.modulation - a.rate.im).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_modulated(&self) -> bool {
        self.atoms.iter().any(|a| a.modulation != 0.0)
    }

    pub fn sample(&self, grid: &Grid) -> Result<SampledFunction> {
        let points = grid.points()?;
        let values = points.iter().map(|&t| self.evaluate_abs(t)).collect();
        SampledFunction::new(points, values, self.order, self.side)
    }
}

impl fmt::Display for Profile {
    /// Canonical spec text; `parse_spec` reads it back exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::print(self, f)
    }
}

/// Description of a positive, strictly increasing set of sample points.
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    /// `log:start:end:count`, geometric spacing.
    Log { start: f64, end: f64, count: usize },
    /// `lin:start:end:count`, uniform spacing.
    Linear { start: f64, end: f64, count: usize },
    /// Comma-separated explicit points.
    Points(Vec<f64>),
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Log { start: 1e-4, end: 50.0, count: 512 }
    }
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let points = match self {
            Grid::Log { start, end, count } => spaced(*start, *end, *count, |a, b, u| {
                (a.ln() + (b.ln() - a.ln()) * u).exp()
            })?,
            Grid::Linear { start, end, count } => {
                spaced(*start, *end, *count, |a, b, u| a + (b - a) * u)?
            }
            Grid::Points(p) => p.clone(),
        };
        if points.is_empty() {
            return Err(Error::Domain("grid is empty".into()));
        }
        if !(points[0] > 0.0) || !points.iter().all(|p| p.is_finite()) {
            return Err(Error::Domain("grid points must be positive and finite".into()));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("grid must be strictly increasing".into()));
        }
        Ok(points)
    }
}

fn spaced(a: f64, b: f64, n: usize, f: impl Fn(f64, f64, f64) -> f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Domain("grid is empty".into()));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let mut out: Vec<f64> = (0..n).map(|k| f(a, b, k as f64 / (n - 1) as f64)).collect();
    // Pin the endpoints exactly.
    out[0] = a;
    out[n - 1] = b;
    Ok(out)
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax { offset: 0, message: format!("grid '{s}': {msg}") };
        let parts: Vec<&str> = s.split(':').collect();
        let grid = match parts.as_slice() {
            [kind @ ("log" | "lin"), a, b, n] => {
                let start: f64 = a.trim().parse().map_err(|_| bad("bad start"))?;
                let end: f64 = b.trim().parse().map_err(|_| bad("bad end"))?;
                let count: usize = n.trim().parse().map_err(|_| bad("bad count"))?;
                if *kind == "log" {
                    Grid::Log { start, end, count }
                } else {
                    Grid::Linear { start, end, count }
                }
            }
            [list] => Grid::Points(
                list.split(',')
                    .map(|p| p.trim().parse::<f64>().map_err(|_| bad("bad point")))
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(bad("expected log:a:b:n, lin:a:b:n or a point list")),
        };
        grid.points()?;
        Ok(grid)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Log { start, end, count } => write!(f, "log:{start:?}:{end:?}:{count}"),
            Grid::Linear { start, end, count } => write!(f, "lin:{start:?}:{end:?}:{count}"),
            Grid::Points(p) => {
                let s: Vec<String> = p.iter().map(|x| format!("{x:?}")).collect();
                write!(f, "{}", s.join(","))
            }
        }
    }
}

/// Values of a function at the points t of a positive grid, on one side:
/// the value stored at t belongs to x = ±t.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Vec<f64>,
    values: Vec<Complex64>,
    order: ComplexOrder,
    side: Side,
}

impl SampledFunction {
    pub fn new(
        grid: Vec<f64>,
        values: Vec<Complex64>,
        order: ComplexOrder,
        side: Side,
    ) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain("grid and values differ in length".into()));
        }
        if grid.is_empty() {
            return Err(Error::Domain("grid is empty".into()));
        }
        Grid::Points(grid.clone()).points()?;
        Ok(SampledFunction { grid, values, order, side })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn order(&self) -> ComplexOrder {
        self.order
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// (x, value) pairs with x carrying the side's sign.
    pub fn points(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        let sign = self.side.sign();
        self.grid.iter().zip(&self.values).map(move |(&t, &v)| (sign * t, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max |self − other| over the shared grid.
    pub fn max_deviation(&self, other: &SampledFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Domain("sampled functions live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Sup-norm relative deviation ‖self − other‖∞ / ‖other‖∞.
    pub fn relative_deviation(&self, other: &SampledFunction) -> Result<f64> {
        let scale = other.max_abs();
        let dev = self.max_deviation(other)?;
        Ok(if scale == 0.0 { dev } else { dev / scale })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(v: f64) -> ComplexOrder {
        ComplexOrder::real(v).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn evaluate_examples() {
        let f = Profile::exponential(order(2.0), c(1.0)).unwrap();
        assert!((f.evaluate(1.0).unwrap() - c((-1.0f64).exp())).norm() < 1e-16);
        assert_eq!(f.evaluate(0.0).unwrap(), ZERO);
        assert!(f.evaluate(-1.0).is_err());
        let g = Profile::exponential(ComplexOrder::new(Complex64::new(0.5, 0.5)).unwrap(), c(1.0))
            .unwrap();
        assert!((g.evaluate(1.0).unwrap() - c((-1.0f64).exp())).norm() < 1e-16);
        let neg = f.clone().with_side(Side::Negative);
        assert_eq!(neg.evaluate(-2.0).unwrap(), f.evaluate(2.0).unwrap());
        assert!(neg.evaluate(2.0).is_err());
    }

    #[test]
    fn atoms_validate() {
        assert!(Atom::new(vec![c(1.0)], c(0.0), 0.0).is_err());
        assert!(Atom::new(vec![c(0.0)], c(1.0), 0.0).is_err());
        assert!(Atom::new(vec![], c(1.0), 0.0).is_err());
        let a = Atom::new(vec![c(1.0), c(2.0), c(0.0)], c(1.0), 0.0).unwrap();
        assert_eq!(a.degree(), 1);
    }

    #[test]
    fn euler_derivative_of_exponential() {
        let nu = order(1.5);
        let f = Profile::exponential(nu, c(1.0)).unwrap();
        let d = f.euler_derivative();
        assert_eq!(d.atoms()[0].coefficients(), &[nu.half_shift(), c(-1.0)]);
        assert!(Profile::zero(nu, Side::Positive).euler_derivative().is_zero());
    }

    #[test]
    fn merging_cancels() {
        let f = Profile::exponential(order(1.0), c(2.0)).unwrap();
        assert!(f.sub(&f).unwrap().is_zero());
        assert_eq!(f.add(&f).unwrap().atoms().len(), 1);
    }

    #[test]
    fn dilation_and_modulation() {
        let f = Profile::new(
            order(1.0),
            vec![Atom::new(vec![c(1.0), c(0.5)], Complex64::new(1.0, 0.2), 0.3).unwrap()],
            Side::Positive,
        );
        let g = f.dilate(2.5).unwrap();
        let h = f.modulate(0.7);
        for x in [0.1, 1.0, 3.3] {
            assert!((g.evaluate(x).unwrap() - f.evaluate(2.5 * x).unwrap()).norm() < 1e-14);
            let want = f.evaluate(x).unwrap() * Complex64::new(0.0, 0.7 * x).exp();
            assert!((h.evaluate(x).unwrap() - want).norm() < 1e-14);
        }
        let n = f.with_side(Side::Negative);
        let hn = n.modulate(0.7);
        let want = n.evaluate(-2.0).unwrap() * Complex64::new(0.0, -1.4).exp();
        assert!((hn.evaluate(-2.0).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn grids() {
        let g: Grid = "log:1e-4:50:512".parse().unwrap();
        let p = g.points().unwrap();
        assert_eq!(p.len(), 512);
        assert_eq!(p[0], 1e-4);
        assert_eq!(p[511], 50.0);
        assert!(((p[1] / p[0]) - (p[511] / p[510])).abs() < 1e-12);
        assert_eq!(g, Grid::default());
        assert!("2,1".parse::<Grid>().is_err());
        assert!("0,1".parse::<Grid>().is_err());
        assert!(Grid::Points(vec![]).points().is_err());
        let g: Grid = "1,2,3".parse().unwrap();
        assert_eq!(g.to_string().parse::<Grid>().unwrap(), g);
        let f = Profile::exponential(order(0.0), c(1.0)).unwrap();
        let s = f.sample(&g).unwrap();
        for (x, v) in s.points() {
            assert!((v - c(x.sqrt() * (-x).exp())).norm() < 1e-16);
        }
    }
}
