use hankel_core::hankel::{hankel_at, hankel_image, inner_product};
use hankel_core::intertwiners::weyl_apply;
use hankel_core::representation::{act_kirillov, bruhat, compose_word, iwasawa, GroupElement};
use hankel_core::{parse_spec, Atom, ComplexOrder, Grid, KirillovSign, Profile, Side};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex(range: f64) -> impl Strategy<Value = Complex64> {
    (-range..=range, -range..=range).prop_map(|(re, im)| Complex64::new(re, im))
}

fn atom() -> impl Strategy<Value = Atom> {
    (
        prop::collection::vec(complex(2.0), 1..=3),
        0.5f64..3.0,
        -0.5f64..0.5,
        prop_oneof![Just(0.0), -1.0f64..1.0],
    )
        .prop_filter_map("leading coefficient vanishes", |(coefficients, re, im, b)| {
            Atom::new(coefficients, Complex64::new(re, im), b).ok()
        })
}

fn order() -> impl Strategy<Value = ComplexOrder> {
    prop_oneof![
        (-0.9f64..4.0).prop_map(|v| ComplexOrder::real(v).unwrap()),
        (-0.9f64..4.0, -1.0f64..1.0).prop_map(|(re, im)| ComplexOrder::new(Complex64::new(re, im)).unwrap()),
    ]
}

fn profile_of(order: impl Strategy<Value = ComplexOrder>) -> impl Strategy<Value = Profile> {
    (order, prop::collection::vec(atom(), 1..=2)).prop_map(|(nu, atoms)| Profile::new(nu, atoms, Side::Positive))
}

fn profile() -> impl Strategy<Value = Profile> {
    profile_of(order())
}

fn weight_profile() -> impl Strategy<Value = Profile> {
    profile_of((1u32..=4).prop_map(ComplexOrder::weight))
}

fn group_element() -> impl Strategy<Value = GroupElement> {
    (-3.0f64..3.0, 0.3f64..3.0, any::<bool>(), 0.01f64..std::f64::consts::PI).prop_map(|(y, a, neg, theta)| {
        let a = if neg { -a } else { a };
        let s = GroupElement::s(a).unwrap();
        GroupElement::n(y) * s * GroupElement::rotation(theta)
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_profiles_parse_back(f in profile()) {
        let text = f.to_string();
        let back = parse_spec(&text, f.order()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn grid_descriptors_round_trip(a in 1e-6f64..1.0, span in 1.0f64..100.0, n in 2usize..600, log in any::<bool>()) {
        let grid = if log {
            Grid::Log { start: a, end: a + span, count: n }
        } else {
            Grid::Linear { start: a, end: a + span, count: n }
        };
        let back: Grid = grid.to_string().parse().unwrap();
        prop_assert_eq!(back.points().unwrap(), grid.points().unwrap());
    }

    #[test]
    fn euler_derivative_matches_differences(f in profile(), x in 0.2f64..6.0) {
        let h = 1e-5 * x;
        let fd = (f.evaluate(x + h).unwrap() - f.evaluate(x - h).unwrap()) * (x / (2.0 * h));
        let exact = f.euler_derivative().evaluate(x).unwrap();
        prop_assert!(close(fd, exact, 1e-6), "{} vs {}", fd, exact);
    }

    #[test]
    fn inner_product_is_hermitian(f in profile_of(Just(ComplexOrder::weight(2))), g in profile_of(Just(ComplexOrder::weight(2)))) {
        let fg = inner_product(&f, &g).unwrap();
        let gf = inner_product(&g, &f).unwrap();
        prop_assert!(close(fg, gf.conj(), 1e-13));
        prop_assert!(inner_product(&f, &f).unwrap().re > 0.0);
    }

    #[test]
    fn exact_transform_is_an_involution(f in profile(), y in 0.01f64..20.0) {
        let twice = hankel_image(&hankel_image(&f));
        prop_assert!(close(twice.evaluate(y).unwrap(), f.evaluate(y).unwrap(), 1e-10));
    }

    #[test]
    fn weyl_operator_is_an_involution(nu in order(), x in prop_oneof![-20.0f64..-0.05, 0.05f64..20.0]) {
        let phi = |t: f64| Complex64::new(1.0, -t).powf(-2.5) * Complex64::new(t.cos(), 0.3);
        let once = |t: f64| weyl_apply(phi, nu, t).unwrap();
        let twice = weyl_apply(once, nu, x).unwrap();
        prop_assert!(close(twice, phi(x), 1e-12));
    }

    #[test]
    fn iwasawa_and_bruhat_reconstruct(g in group_element()) {
        prop_assert!(iwasawa(&g).compose().distance(&g) < 1e-12);
        prop_assert!(compose_word(&bruhat(&g)).distance(&g) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn kirillov_actions_compose(f in weight_profile(), g1 in group_element(), g2 in group_element(), plus in any::<bool>()) {
        let sign = if plus { KirillovSign::Plus } else { KirillovSign::Minus };
        let nested = act_kirillov(&g1, &act_kirillov(&g2, &f, sign).unwrap(), sign).unwrap();
        let direct = act_kirillov(&(g1 * g2), &f, sign).unwrap();
        for x in [0.05, 0.5, 2.0, 8.0] {
            prop_assert!(close(nested.evaluate(x).unwrap(), direct.evaluate(x).unwrap(), 1e-9));
        }
    }

    #[test]
    fn transforms_decay_rapidly(
        coefficients in prop::collection::vec(complex(1.0), 1..=3),
        alpha in 0.9f64..1.1,
        nu in (0.0f64..3.0).prop_map(|v| ComplexOrder::real(v).unwrap()),
    ) {
        let atom = match Atom::new(coefficients, Complex64::new(alpha, 0.0), 0.0) {
            Ok(a) => a,
            Err(_) => return Ok(()),
        };
        let f = Profile::new(nu, vec![atom], Side::Positive);
        let exact = hankel_image(&f);
        let weighted = |y: f64| exact.evaluate(y).unwrap().norm() * y.powi(6);
        prop_assert!(weighted(80.0) < weighted(40.0) && weighted(80.0) < 1e-6);
        // Quadrature resolves the tail down to its absolute tolerance.
        let v = hankel_at(&f, 80.0, 1e-14).unwrap().value;
        prop_assert!((v - exact.evaluate(80.0).unwrap()).norm() < 1e-12, "|Hf(80)| = {}", v.norm());
    }
}
