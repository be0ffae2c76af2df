//! Random test profiles shared by the verification suites and benchmarks.
//!
//! Profiles have one or two atoms of degree at most 2, decay rates with
//! real part in [0.7, 2] and imaginary part in [−0.5, 0.5], and modulation
//! |b| ≤ 0.5 when enabled.

use num_complex::Complex64;
use rand::Rng;

use crate::profile::{Atom, Profile, Side};
use crate::special::ComplexOrder;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusOptions {
    pub real: bool,
    pub modulated: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { real: false, modulated: true }
    }
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, order: ComplexOrder, options: CorpusOptions) -> Profile {
    let count = rng.gen_range(1..=2);
    let atoms = (0..count).map(|_| random_atom(rng, options)).collect();
    Profile::new(order, atoms, Side::Positive)
}

fn random_atom<R: Rng + ?Sized>(rng: &mut R, options: CorpusOptions) -> Atom {
    let degree = rng.gen_range(0..=2);
    let scalar = |rng: &mut R| {
        let re = rng.gen_range(-1.0..=1.0);
        let im = if options.real { 0.0 } else { rng.gen_range(-1.0..=1.0) };
        Complex64::new(re, im)
    };
    let mut coefficients: Vec<Complex64> = (0..=degree).map(|_| scalar(rng)).collect();
    // Keep the leading coefficient away from 0.
    if coefficients[degree].norm() < 0.2 {
        coefficients[degree] += Complex64::new(0.5, 0.0);
    }
    let rate_re = rng.gen_range(0.7..=2.0);
    let rate_im = if options.real { 0.0 } else { rng.gen_range(-0.5..=0.5) };
    let modulation = if options.modulated && !options.real && rng.gen_bool(0.3) {
        rng.gen_range(-0.5..=0.5)
    } else {
        0.0
    };
    Atom::new(coefficients, Complex64::new(rate_re, rate_im), modulation)
        .expect("corpus atoms satisfy the atom invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_and_bounded() {
        let order = ComplexOrder::weight(2);
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50).map(|_| random_profile(&mut rng, order, CorpusOptions::default())).collect::<Vec<_>>()
        };
        let a = draw(3);
        assert_eq!(a, draw(3));
        for p in &a {
            assert!(!p.atoms().is_empty() && p.atoms().len() <= 2);
            for atom in p.atoms() {
                assert!(atom.degree() <= 2);
                assert!((0.7..=2.0).contains(&atom.rate().re));
                assert!(atom.modulation().abs() <= 0.5);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let real = random_profile(&mut rng, order, CorpusOptions { real: true, modulated: false });
        assert!(real.atoms().iter().all(|a| a.rate().im == 0.0 && a.coefficients().iter().all(|c| c.im == 0.0)));
    }
}
