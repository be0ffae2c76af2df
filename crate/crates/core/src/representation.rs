//! SL(2,ℝ) and GL(2,ℝ) elements, their factorizations, and the actions on
//! the induced model and the Kirillov model of the weight-d discrete series.
//!
//! Generators: n(y) = [[1, y], [0, 1]], s(z) = diag(z, 1/z),
//! w = [[0, −1], [1, 0]], r(θ) = [[cos θ, sin θ], [−sin θ, cos θ]].

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::hankel::{hankel_at, hankel_image};
use crate::intertwiners::InducedFunction;
use crate::profile::{poly, Atom, Profile, Side};
use crate::quadrature::{integrate_halfline, Decay};
use crate::special::bessel_j;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A matrix [[p, q], [r, s]] of determinant 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
}

impl GroupElement {
    /// Rescales to determinant exactly 1 (up to rounding); matrices whose
    /// determinant is not within 1e-6 of 1 are rejected.
    pub fn new(p: f64, q: f64, r: f64, s: f64) -> Result<Self> {
        let det = p * s - q * r;
        if !det.is_finite() || (det - 1.0).abs() > 1e-6 {
            return Err(Error::Domain(format!("determinant {det} is not 1")));
        }
        let k = det.sqrt().recip();
        Ok(GroupElement { p: p * k, q: q * k, r: r * k, s: s * k })
    }

    pub const fn identity() -> Self {
        GroupElement { p: 1.0, q: 0.0, r: 0.0, s: 1.0 }
    }

    pub const fn n(y: f64) -> Self {
        GroupElement { p: 1.0, q: y, r: 0.0, s: 1.0 }
    }

    pub fn s(z: f64) -> Result<Self> {
        if z == 0.0 || !z.is_finite() {
            return Err(Error::Domain(format!("s(z) needs a nonzero z, got {z}")));
        }
        Ok(GroupElement { p: z, q: 0.0, r: 0.0, s: 1.0 / z })
    }

    pub const fn w() -> Self {
        GroupElement { p: 0.0, q: -1.0, r: 1.0, s: 0.0 }
    }

    pub fn rotation(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        GroupElement { p: cos, q: sin, r: -sin, s: cos }
    }

    pub fn det(&self) -> f64 {
        self.p * self.s - self.q * self.r
    }

    pub fn inverse(&self) -> Self {
        GroupElement { p: self.s, q: -self.q, r: -self.r, s: self.p }
    }

    /// Largest entrywise difference.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        [self.p - other.p, self.q - other.q, self.r - other.r, self.s - other.s]
            .iter()
            .map(|d| d.abs())
            .fold(0.0, f64::max)
    }

    /// Möbius action x ↦ (sx + q)/(rx + p) used by the induced model, and
    /// the factor rx + p.
    fn cocycle(&self, x: f64) -> (f64, f64) {
        let denom = self.r * x + self.p;
        ((self.s * x + self.q) / denom, denom)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, o: GroupElement) -> GroupElement {
        GroupElement {
            p: self.p * o.p + self.q * o.r,
            q: self.p * o.q + self.q * o.s,
            r: self.r * o.p + self.s * o.r,
            s: self.r * o.q + self.s * o.s,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.p, self.q, self.r, self.s)
    }
}

/// g = n(y) s(a) r(θ) with θ ∈ (0, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaForm {
    pub y: f64,
    pub a: f64,
    pub theta: f64,
}

impl IwasawaForm {
    pub fn compose(&self) -> GroupElement {
        let s = GroupElement { p: self.a, q: 0.0, r: 0.0, s: 1.0 / self.a };
        GroupElement::n(self.y) * s * GroupElement::rotation(self.theta)
    }
}

/// The bottom row of n(y)s(a)r(θ) is (−sin θ/a, cos θ/a); θ ∈ (0, π] fixes
/// the sign of a.
pub fn iwasawa(g: &GroupElement) -> IwasawaForm {
    let (a, sin, cos, theta) = if g.r != 0.0 {
        let rho = g.r.hypot(g.s);
        let a = -g.r.signum() / rho;
        let (sin, cos) = (-a * g.r, a * g.s);
        (a, sin, cos, sin.atan2(cos))
    } else {
        (-1.0 / g.s, 0.0, -1.0, PI)
    };
    let y = a * (g.q * cos - g.p * sin);
    IwasawaForm { y, a, theta }
}

/// One factor of a Bruhat word.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    N(f64),
    S(f64),
    W,
}

impl Generator {
    pub fn matrix(&self) -> GroupElement {
        match *self {
            Generator::N(y) => GroupElement::n(y),
            Generator::S(z) => GroupElement { p: z, q: 0.0, r: 0.0, s: 1.0 / z },
            Generator::W => GroupElement::w(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::N(y) => write!(f, "n({y})"),
            Generator::S(z) => write!(f, "s({z})"),
            Generator::W => write!(f, "w"),
        }
    }
}

/// g = n(qp)s(p) when r = 0, else g = n(p/r) w s(r) n(s/r); trivial factors
/// are left out.
pub fn bruhat(g: &GroupElement) -> Vec<Generator> {
    let raw = if g.r == 0.0 {
        vec![Generator::N(g.q * g.p), Generator::S(g.p)]
    } else {
        vec![
            Generator::N(g.p / g.r),
            Generator::W,
            Generator::S(g.r),
            Generator::N(g.s / g.r),
        ]
    };
    raw.into_iter()
        .filter(|gen| !matches!(gen, Generator::N(y) if *y == 0.0) && *gen != Generator::S(1.0))
        .collect()
}

pub fn compose_word(word: &[Generator]) -> GroupElement {
    word.iter().fold(GroupElement::identity(), |acc, g| acc * g.matrix())
}

/// A random element, drawn in the Iwasawa chart with |y| ≤ 3,
/// |a| ∈ [1/3, 3] and θ ∈ (0, π].
pub fn random_element<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    let y = rng.gen_range(-3.0..=3.0);
    let magnitude: f64 = rng.gen_range((1.0f64 / 3.0).ln()..=3.0f64.ln()).exp();
    let a = if rng.gen_bool(0.5) { magnitude } else { -magnitude };
    let theta = PI - rng.gen_range(0.0..PI);
    IwasawaForm { y, a, theta }.compose()
}

/// (π_d(g)φ)(x) = (rx + p)^{−d−1} φ((sx + q)/(rx + p)).
pub fn act_induced(g: &GroupElement, phi: &InducedFunction, x: f64) -> Result<Complex64> {
    let (z, denom) = g.cocycle(x);
    if denom == 0.0 || !z.is_finite() {
        return Err(Error::Singular(x));
    }
    let value = phi.evaluate(z) * denom.powi(-(phi.weight() as i32) - 1);
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Singular(x));
    }
    Ok(value)
}

/// Which of the two Kirillov actions R_d^±.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KirillovSign {
    Plus,
    Minus,
}

impl KirillovSign {
    fn sign(self) -> f64 {
        match self {
            KirillovSign::Plus => 1.0,
            KirillovSign::Minus => -1.0,
        }
    }
}

fn kirillov_weight(f: &Profile) -> Result<u32> {
    match f.order().as_integer() {
        Some(d) if d >= 1 && f.side() == Side::Positive => Ok(d),
        _ => Err(Error::Domain(format!(
            "Kirillov actions need a positive-side profile of positive integer order, got order {}",
            f.order()
        ))),
    }
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => I,
        2 => Complex64::new(-1.0, 0.0),
        _ => -I,
    }
}

fn sign_pow(z: f64, k: u32) -> f64 {
    if z < 0.0 && k % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Applies one generator in R_d^±. The result is exact: w uses the Weber
/// image, which covers modulated atoms through their complex rate.
pub fn act_generator(gen: Generator, f: &Profile, sign: KirillovSign) -> Result<Profile> {
    let d = kirillov_weight(f)?;
    match gen {
        Generator::N(y) => Ok(f.modulate(sign.sign() * y)),
        Generator::S(z) => {
            if z == 0.0 {
                return Err(Error::Domain("s(0) is not a group element".into()));
            }
            Ok(f.dilate(z * z)?.scale(Complex64::new(sign_pow(z, d + 1), 0.0)))
        }
        Generator::W => {
            let k = d as i64 + 1;
            let phase = if sign == KirillovSign::Plus { i_pow(-k) } else { i_pow(k) };
            Ok(hankel_image(f).scale(phase))
        }
    }
}

/// R(g_1 ⋯ g_k) f, applying the rightmost generator first.
pub fn act_kirillov_word(word: &[Generator], f: &Profile, sign: KirillovSign) -> Result<Profile> {
    word.iter().rev().try_fold(f.clone(), |acc, &gen| act_generator(gen, &acc, sign))
}

/// R_d^±(g) f through the Bruhat factorization of g.
pub fn act_kirillov(g: &GroupElement, f: &Profile, sign: KirillovSign) -> Result<Profile> {
    act_kirillov_word(&bruhat(g), f, sign)
}

/// R_d^+(w) f at one point by quadrature, for cross-checking the exact path.
pub fn act_w_quadrature(f: &Profile, x: f64, sign: KirillovSign, tol: f64) -> Result<Complex64> {
    let d = kirillov_weight(f)? as i64;
    let phase = if sign == KirillovSign::Plus { i_pow(-(d + 1)) } else { i_pow(d + 1) };
    Ok(hankel_at(f, x, tol)?.value * phase)
}

/// cX·X + cH·H + cY·Y in sl(2,ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LieElement {
    pub x: f64,
    pub h: f64,
    pub y: f64,
}

impl LieElement {
    pub const X: LieElement = LieElement { x: 1.0, h: 0.0, y: 0.0 };
    pub const H: LieElement = LieElement { x: 0.0, h: 1.0, y: 0.0 };
    pub const Y: LieElement = LieElement { x: 0.0, h: 0.0, y: 1.0 };
}

/// The derived action: X ↦ ±ix f, H ↦ 2x f′, Y ↦ ±(−i(d²−1)/(4x) f + ix f″).
///
/// Writing f = x^{(d+1)/2} g, the Y term is i x^{(d+1)/2}(x g″ + (d+1) g′),
/// so the 1/x pole cancels inside the atom family.
pub fn act_lie(el: &LieElement, f: &Profile, sign: KirillovSign) -> Result<Profile> {
    let d = kirillov_weight(f)?;
    let pm = Complex64::new(sign.sign(), 0.0);
    let mut out = Profile::zero(f.order(), f.side());
    if el.x != 0.0 {
        out = out.add(&f.mul_power(1).scale(I * pm * el.x))?;
    }
    if el.h != 0.0 {
        out = out.add(&f.euler_derivative().scale(Complex64::new(2.0 * el.h, 0.0)))?;
    }
    if el.y != 0.0 {
        let atoms = f
            .atoms()
            .iter()
            .filter_map(|a| {
                let p = a.coefficients();
                let beta = a.exponent();
                let dp = poly::derivative(p);
                let ddp = poly::derivative(&dp);
                // g′ = (p′ − βp), g″ = (p″ − 2βp′ + β²p), times e^{−βx}
                let g1 = poly::add(&dp, &poly::scale(p, -beta));
                let g2 = poly::add(
                    &poly::add(&ddp, &poly::scale(&dp, -2.0 * beta)),
                    &poly::scale(p, beta * beta),
                );
                let body = poly::add(&poly::shift(&g2), &poly::scale(&g1, Complex64::new(d as f64 + 1.0, 0.0)));
                Atom::from_parts(poly::scale(&body, I * pm * el.y), a.rate(), a.modulation())
            })
            .collect();
        out = out.add(&Profile::new(f.order(), atoms, f.side()))?;
    }
    Ok(out)
}

/// A character t ↦ |t|^s sgn(t)^m of ℝ^*.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Character {
    pub s: Complex64,
    pub m: u8,
}

/// A pair of characters whose quotient is t^d sgn(t) for a positive integer
/// d, i.e. s₁ − s₂ = d and m₁ − m₂ ≡ d + 1 (mod 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacterPair {
    pub first: Character,
    pub second: Character,
    d: u32,
}

impl CharacterPair {
    pub fn new(first: Character, second: Character) -> Result<Self> {
        if first.m > 1 || second.m > 1 {
            return Err(Error::Domain("character signs must be 0 or 1".into()));
        }
        let diff = first.s - second.s;
        let d = diff.re.round();
        if diff.im.abs() > 1e-12 || (diff.re - d).abs() > 1e-12 || d < 1.0 {
            return Err(Error::Domain(format!(
                "s1 - s2 = {diff} must be a positive integer"
            )));
        }
        let d = d as u32;
        if (first.m + 2 - second.m) % 2 != ((d + 1) % 2) as u8 {
            return Err(Error::Domain(format!(
                "m1 - m2 must have the parity of d + 1 = {}",
                d + 1
            )));
        }
        Ok(CharacterPair { first, second, d })
    }

    pub fn weight(&self) -> u32 {
        self.d
    }

    /// Central character ω(b) = |b|^{s₁+s₂+1} sgn(b)^{m₁+m₂}.
    pub fn omega(&self, b: f64) -> Complex64 {
        let magnitude = Complex64::new(b.abs(), 0.0).powc(self.first.s + self.second.s + 1.0);
        magnitude * sign_pow(b, (self.first.m + self.second.m) as u32)
    }
}

/// An invertible real 2×2 matrix together with its character data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GL2Element {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub characters: CharacterPair,
}

impl GL2Element {
    pub fn new(p: f64, q: f64, r: f64, s: f64, characters: CharacterPair) -> Result<Self> {
        let det = p * s - q * r;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Domain("matrix is not invertible".into()));
        }
        Ok(GL2Element { p, q, r, s, characters })
    }

    pub fn det(&self) -> f64 {
        self.p * self.s - self.q * self.r
    }
}

/// A function on ℝ^* stored as its two half-line pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionPair {
    pub positive: Profile,
    pub negative: Profile,
}

impl FunctionPair {
    pub fn new(positive: Profile, negative: Profile) -> Result<Self> {
        if positive.side() != Side::Positive || negative.side() != Side::Negative {
            return Err(Error::Domain("pair pieces must lie on their own sides".into()));
        }
        if positive.order() != negative.order() {
            return Err(Error::Domain("pair pieces must share the order".into()));
        }
        Ok(FunctionPair { positive, negative })
    }

    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        if x > 0.0 {
            self.positive.evaluate(x)
        } else if x < 0.0 {
            self.negative.evaluate(x)
        } else {
            Ok(ZERO)
        }
    }

    fn map(&self, f: impl Fn(&Profile) -> Result<Profile>) -> Result<FunctionPair> {
        Ok(FunctionPair { positive: f(&self.positive)?, negative: f(&self.negative)? })
    }

    fn scale(&self, c: Complex64) -> FunctionPair {
        FunctionPair { positive: self.positive.scale(c), negative: self.negative.scale(c) }
    }
}

/// j_d(x) = i^{−(d+1)} √x J_d(2√x) for x > 0 and 0 for x < 0.
pub fn j_kernel(d: u32, x: f64) -> Result<Complex64> {
    if x == 0.0 || x.is_nan() {
        return Err(Error::Domain("j_d is evaluated away from 0".into()));
    }
    if x < 0.0 {
        return Ok(ZERO);
    }
    let order = crate::special::ComplexOrder::weight(d);
    Ok(i_pow(-(d as i64 + 1)) * bessel_j(order, 2.0 * x.sqrt())? * x.sqrt())
}

/// The GL(2,ℝ) Kirillov action R_{χ₁,χ₂}(g) on a pair of half-line profiles.
///
/// g is split as diag(det g, 1)·g′ with g′ ∈ SL(2,ℝ); g′ acts through its
/// Bruhat word and diag(a, 1) acts by ω(|a|^{1/2}) f(ax).
pub fn gl2_act(g: &GL2Element, f: &FunctionPair) -> Result<FunctionPair> {
    let chars = g.characters;
    let d = chars.weight();
    if f.positive.order().as_integer() != Some(d) {
        return Err(Error::Domain(format!("pair order must equal the weight {d}")));
    }
    let delta = g.det();
    let sl = GroupElement { p: g.p / delta, q: g.q / delta, r: g.r, s: g.s };
    let mut out = f.clone();
    for gen in bruhat(&sl).into_iter().rev() {
        out = gl2_generator(gen, &out, &chars)?;
    }
    gl2_diagonal(delta, &out, &chars)
}

fn gl2_diagonal(a: f64, f: &FunctionPair, chars: &CharacterPair) -> Result<FunctionPair> {
    let omega = chars.omega(a.abs().sqrt());
    let t = a.abs();
    let (pos, neg) = if a > 0.0 {
        (f.positive.dilate(t)?, f.negative.dilate(t)?)
    } else {
        // f(ax) with a < 0 swaps the half lines.
        (
            f.negative.dilate(t)?.with_side(Side::Positive),
            f.positive.dilate(t)?.with_side(Side::Negative),
        )
    };
    Ok(FunctionPair { positive: pos, negative: neg }.scale(omega))
}

fn gl2_generator(gen: Generator, f: &FunctionPair, chars: &CharacterPair) -> Result<FunctionPair> {
    let d = chars.weight();
    let m_sum = (chars.first.m + chars.second.m) as u32;
    match gen {
        Generator::N(y) => f.map(|p| Ok(p.modulate(y))),
        Generator::S(z) => {
            let sign = Complex64::new(sign_pow(z, m_sum), 0.0);
            Ok(f.map(|p| p.dilate(z * z))?.scale(sign))
        }
        Generator::W => {
            let phase = i_pow(-(d as i64 + 1));
            let neg_sign = sign_pow(-1.0, chars.second.m as u32 + d + 1);
            Ok(FunctionPair {
                positive: hankel_image(&f.positive).scale(phase),
                negative: hankel_image(&f.negative).scale(phase * neg_sign),
            })
        }
    }
}

/// (R(w) f)(y) = sgn(y)^{m₂+d+1} ∫ f(x) j_d(xy) dx/|x|, by quadrature with
/// the kernel j_d itself.
pub fn gl2_w_integral(f: &FunctionPair, chars: &CharacterPair, y: f64, tol: f64) -> Result<Complex64> {
    let d = chars.weight();
    if y == 0.0 {
        return Err(Error::Domain("the w-integral is evaluated away from 0".into()));
    }
    let sign = sign_pow(y, chars.second.m as u32 + d + 1);
    let mut total = ZERO;
    for piece in [&f.positive, &f.negative] {
        let Some(rate) = piece.decay_rate() else { continue };
        let side = piece.side().sign();
        // x = side·u², dx/|x| = 2 du/u
        let integrand = |u: f64| {
            if u == 0.0 {
                return ZERO;
            }
            let x = side * u * u;
            match j_kernel(d, x * y) {
                Ok(j) if j == ZERO => ZERO,
                Ok(j) => piece.evaluate_abs(u * u) * j * (2.0 / u),
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            }
        };
        let budget = (1.0 / tol).ln().max(1.0) + 10.0;
        let u_rate = (rate * budget).sqrt();
        let oscillation = 2.0 * y.abs().sqrt() + 2.0 * piece.max_frequency() * budget / u_rate;
        total += integrate_halfline(integrand, Decay::Exponential(u_rate), oscillation, tol)?.value;
    }
    Ok(total * sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::ComplexOrder;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &GroupElement, b: &GroupElement) -> bool {
        a.distance(b) < 1e-12
    }

    #[test]
    fn iwasawa_examples() {
        let f = iwasawa(&GroupElement::identity());
        assert_eq!((f.y, f.a, f.theta), (0.0, -1.0, PI));
        let f = iwasawa(&GroupElement::n(5.0));
        assert_eq!((f.y, f.a, f.theta), (5.0, -1.0, PI));
        let f = iwasawa(&GroupElement::w());
        assert!(f.y.abs() < 1e-15 && f.a == -1.0 && (f.theta - PI / 2.0).abs() < 1e-15);
        assert!(close(&f.compose(), &GroupElement::w()));
    }

    #[test]
    fn iwasawa_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let g = random_element(&mut rng);
            let form = iwasawa(&g);
            assert!(form.theta > 0.0 && form.theta <= PI);
            assert!(close(&form.compose(), &g), "{g}");
        }
    }

    #[test]
    fn bruhat_examples() {
        assert_eq!(bruhat(&GroupElement::s(2.0).unwrap()), vec![Generator::S(2.0)]);
        assert_eq!(bruhat(&GroupElement::w()), vec![Generator::W]);
        let g = GroupElement::new(1.0, 0.0, 1.0, 1.0).unwrap();
        let word = bruhat(&g);
        assert_eq!(word, vec![Generator::N(1.0), Generator::W, Generator::N(1.0)]);
        assert!(close(&compose_word(&word), &g));
    }

    #[test]
    fn constructor_normalizes() {
        let g = GroupElement::new(2.0, 1.0, 1.0, 1.0 + 1e-9).unwrap();
        assert!((g.det() - 1.0).abs() < 1e-15);
        assert!(GroupElement::new(2.0, 0.0, 0.0, 2.0).is_err());
        assert!(GroupElement::s(0.0).is_err());
    }

    #[test]
    fn characters() {
        let ch = |s: f64, m: u8| Character { s: Complex64::new(s, 0.0), m };
        assert!(CharacterPair::new(ch(1.0, 1), ch(-1.0, 0)).is_ok());
        assert!(CharacterPair::new(ch(1.0, 0), ch(-1.0, 0)).is_err());
        assert!(CharacterPair::new(ch(1.0, 1), ch(0.5, 0)).is_err());
        let pair = CharacterPair::new(ch(0.5, 0), ch(-1.5, 1)).unwrap();
        assert_eq!(pair.weight(), 2);
        assert_eq!(pair.omega(-1.0), Complex64::new(-1.0, 0.0));
        assert_eq!(pair.omega(2.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn j_kernel_examples() {
        assert_eq!(j_kernel(2, -3.0).unwrap(), ZERO);
        let v = j_kernel(1, 1.0).unwrap();
        assert!((v - Complex64::new(-0.576_724_807_756_873_4, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn w_squared_is_central() {
        let d = ComplexOrder::weight(2);
        let f = Profile::new(
            d,
            vec![Atom::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.5)], Complex64::new(1.5, 0.0), 0.3).unwrap()],
            Side::Positive,
        );
        for sign in [KirillovSign::Plus, KirillovSign::Minus] {
            let ww = act_kirillov_word(&[Generator::W, Generator::W], &f, sign).unwrap();
            for x in [0.2, 1.0, 4.0] {
                let want = -f.evaluate(x).unwrap();
                assert!((ww.evaluate(x).unwrap() - want).norm() < 1e-13);
            }
        }
    }
}
