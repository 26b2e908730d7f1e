use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kbsm::characters::{character_eval, TorusRep};
use kbsm::diagram::{build_product_diagram, Multicurve, SurfaceKind};
use kbsm::format::{read_element, write_element};
use kbsm::poisson::{character_mul, poisson_statesum, CharacterElement};
use kbsm::rings::text::parse_laurent;
use kbsm::rings::{expand_laurent, LaurentPolynomial, TruncatedSeries};
use kbsm::skein::{bracket_resolve, skein_commutator, skein_mul, SkeinElement};

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((-6i32..=6, -5i64..=5), 0..5)
        .prop_map(|t| LaurentPolynomial::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn primitive() -> impl Strategy<Value = (i64, i64)> {
    (0i64..=3, -3i64..=3).prop_filter("primitive", |&(p, q)| p.gcd(&q) == 1 && (p > 0 || q > 0))
}

fn curve((p, q): (i64, i64)) -> Multicurve {
    Multicurve::torus(p, q, 1).unwrap()
}

fn torus_one(m: Multicurve) -> SkeinElement<LaurentPolynomial> {
    SkeinElement::basis(SurfaceKind::Torus, m, LaurentPolynomial::one())
}

/// The class `(p,q)` as a basis element, or the zero class as `-2` times
/// the empty curve.
fn class_term(p: i64, q: i64, coeff: LaurentPolynomial) -> SkeinElement<LaurentPolynomial> {
    if p == 0 && q == 0 {
        let minus_two = LaurentPolynomial::monomial(0, -2);
        return SkeinElement::basis(SurfaceKind::Torus, Multicurve::Empty, &coeff * &minus_two);
    }
    SkeinElement::basis(SurfaceKind::Torus, curve((p, q)), coeff)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &LaurentPolynomial::one(), a);
    }

    #[test]
    fn expansion_is_a_ring_homomorphism(a in laurent(), b in laurent(), order in prop::sample::select(vec![2usize, 6, 10])) {
        let e = |x: &LaurentPolynomial| expand_laurent(x, order);
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        prop_assert_eq!(e(&-&a), -&e(&a));
    }

    #[test]
    fn inverting_the_variable(a in laurent(), b in laurent(), order in prop::sample::select(vec![2usize, 6, 10])) {
        prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
        prop_assert_eq!((&a * &b).invert_variable(), &a.invert_variable() * &b.invert_variable());
        // A -> 1/A is h -> -h after expansion.
        let flipped: Vec<BigRational> = expand_laurent(&a, order)
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
            .collect();
        prop_assert_eq!(expand_laurent(&a.invert_variable(), order), TruncatedSeries::from_coeffs(flipped));
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        prop_assert_eq!(parse_laurent(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn series_truncation_commutes_with_products(a in laurent(), b in laurent()) {
        let (x, y) = (expand_laurent(&a, 10), expand_laurent(&b, 10));
        prop_assert_eq!((&x * &y).truncate(4), &x.truncate(4) * &y.truncate(4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Product-to-sum for primitive classes whose sum and difference are
    /// primitive or zero.
    #[test]
    fn torus_product_to_sum(x in primitive(), y in primitive()) {
        let (p, q) = x;
        let (r, s) = y;
        let d = p * s - q * r;
        let ok = |a: i64, b: i64| (a == 0 && b == 0) || a.gcd(&b) == 1;
        prop_assume!(d.abs() <= 7 && ok(p + r, q + s) && ok(p - r, q - s));
        let got = skein_mul(&torus_one(curve(x)), &torus_one(curve(y))).unwrap();
        let expected = class_term(p + r, q + s, LaurentPolynomial::monomial(d as i32, 1))
            + class_term(p - r, q - s, LaurentPolynomial::monomial(-d as i32, 1));
        prop_assert_eq!(got, expected);
    }

    /// Stacking in the other order is the mirror image.
    #[test]
    fn reversed_stacking_inverts_the_variable(x in primitive(), y in primitive(), m in 1u32..=2) {
        let a = torus_one(curve(x).with_multiplicity(m));
        let b = torus_one(curve(y));
        prop_assume!((x.0 * y.1 - x.1 * y.0).abs() * m as i64 <= 8);
        prop_assert_eq!(skein_mul(&b, &a).unwrap(), skein_mul(&a, &b).unwrap().invert_variable());
        let c = skein_commutator(&a.expand(4), &b.expand(4), 4).unwrap();
        let c_rev = skein_commutator(&b.expand(4), &a.expand(4), 4).unwrap();
        prop_assert_eq!(c, -&c_rev);
    }

    #[test]
    fn mirrored_product_diagrams(x in primitive(), y in primitive()) {
        prop_assume!((x.0 * y.1 - x.1 * y.0).abs() <= 7);
        let d = build_product_diagram(SurfaceKind::Torus, &curve(x), &curve(y)).unwrap();
        prop_assert_eq!(bracket_resolve(&d.mirror()).unwrap(), bracket_resolve(&d).unwrap().invert_variable());
    }

    /// The classical limit of product-to-sum: the bracket of two primitive
    /// classes with primitive sum and difference.
    #[test]
    fn poisson_bracket_of_simple_classes(x in primitive(), y in primitive()) {
        let (p, q) = x;
        let (r, s) = y;
        let d = p * s - q * r;
        let ok = |a: i64, b: i64| a.gcd(&b) == 1;
        prop_assume!(d != 0 && ok(p + r, q + s) && ok(p - r, q - s));
        let a = poisson_statesum(SurfaceKind::Torus, &curve(x), &curve(y)).unwrap();
        let b = poisson_statesum(SurfaceKind::Torus, &curve(y), &curve(x)).unwrap();
        prop_assert_eq!(&a, &-&b);
        let half = BigRational::new(d.into(), 2.into());
        let expected = SkeinElement::from_terms(
            SurfaceKind::Torus,
            [(curve((p - r, q - s)), half.clone()), (curve((p + r, q + s)), -half)],
        );
        prop_assert_eq!(a, expected);
    }

    #[test]
    fn characters_are_multiplicative(x in primitive(), y in primitive(), seed in 0u64..1000) {
        let rho = TorusRep::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let one = BigRational::from_integer(1.into());
        let a: CharacterElement = SkeinElement::basis(SurfaceKind::Torus, curve(x), one.clone());
        let b: CharacterElement = SkeinElement::basis(SurfaceKind::Torus, curve(y), one);
        let prod = character_eval(&character_mul(&a, &b).unwrap(), &rho);
        let direct: Complex64 = character_eval(&a, &rho) * character_eval(&b, &rho);
        prop_assert!((prod - direct).norm() <= 1e-9 * direct.norm().max(1.0));
    }

    #[test]
    fn element_format_round_trip(x in primitive(), y in primitive()) {
        prop_assume!((x.0 * y.1 - x.1 * y.0).abs() <= 6);
        let e = skein_mul(&torus_one(curve(x)), &torus_one(curve(y))).unwrap();
        let back: SkeinElement<LaurentPolynomial> = read_element(&write_element(&e)).unwrap();
        prop_assert_eq!(&back, &e);
        let s = e.expand(5);
        let back: SkeinElement<TruncatedSeries> = read_element(&write_element(&s)).unwrap();
        prop_assert_eq!(back, s);
    }
}
