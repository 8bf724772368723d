use cliffqt::algebra::{
    blade_commutation_sign, blade_mul, parse_mv, Backend, Blade, Coeff, Conjugation, Field, Multivector, Real,
    Signature, Space,
};
use cliffqt::qtype::{classify, classify_by_conjugation, qtype_project, MainType};
use proptest::prelude::*;

fn space_strategy() -> impl Strategy<Value = Space> {
    (1usize..=6, 0usize..=6, any::<bool>()).prop_filter_map("n in 1..=6", |(n, q, cx)| {
        let q = q.min(n);
        let field = if cx { Field::Complex } else { Field::Real };
        Some(Space::new(Signature::new(n - q, q).ok()?, field, Backend::Exact))
    })
}

fn coeff(field: Field) -> impl Strategy<Value = Coeff> {
    let part = (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Real::from_ratio(a, b, Backend::Exact));
    (part.clone(), part).prop_map(move |(re, im)| match field {
        Field::Real => Coeff::real(re),
        Field::Complex => Coeff::new(re, im),
    })
}

fn mv(space: Space, max_terms: usize) -> impl Strategy<Value = Multivector> {
    let full = space.signature.full_mask();
    prop::collection::vec((0..=full, coeff(space.field)), 0..=max_terms)
        .prop_map(move |terms| Multivector::from_terms(space, terms.into_iter().map(|(m, c)| (Blade::from_mask(m), c))).unwrap())
}

fn with_space<T: std::fmt::Debug>(
    f: impl Fn(Space) -> BoxedStrategy<T> + 'static,
) -> impl Strategy<Value = (Space, T)> {
    space_strategy().prop_flat_map(move |s| (Just(s), f(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_is_associative((_, (a, b, c)) in with_space(|s| (mv(s, 6), mv(s, 6), mv(s, 6)).boxed())) {
        let left = a.geometric_product(&b).unwrap().geometric_product(&c).unwrap();
        let right = a.geometric_product(&b.geometric_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_half_commutator_plus_anticommutator((s, (u, v)) in with_space(|s| (mv(s, 8), mv(s, 8)).boxed())) {
        let half = Coeff::from_ratio(1, 2, Backend::Exact);
        let sum = u.commutator(&v).unwrap().add(&u.anticommutator(&v).unwrap()).unwrap().scalar_mul(&half).unwrap();
        prop_assert_eq!(u.geometric_product(&v).unwrap(), sum);
        let _ = s;
    }

    #[test]
    fn conjugations_are_involutive_and_respect_products((s, (u, v)) in with_space(|s| (mv(s, 6), mv(s, 6)).boxed())) {
        let ops: &[Conjugation] = if s.field == Field::Complex { &Conjugation::ALL } else { &Conjugation::REAL };
        for &c in ops {
            prop_assert_eq!(u.conjugate(c).unwrap().conjugate(c).unwrap(), u.clone());
            let uv = u.geometric_product(&v).unwrap().conjugate(c).unwrap();
            let (cu, cv) = (u.conjugate(c).unwrap(), v.conjugate(c).unwrap());
            let expected = if c.is_anti_automorphism() { cv.geometric_product(&cu) } else { cu.geometric_product(&cv) };
            prop_assert_eq!(uv, expected.unwrap(), "{:?}", c);
        }
    }

    #[test]
    fn grade_projections_sum_to_identity((s, u) in with_space(|s| mv(s, 12).boxed())) {
        let mut acc = Multivector::zero(s);
        for k in 0..=s.n() {
            acc = acc.add(&u.grade_project(k).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, u);
    }

    #[test]
    fn type_projections_sum_to_identity((s, u) in with_space(|s| mv(s, 12).boxed())) {
        let mut acc = Multivector::zero(s);
        for k in MainType::ALL {
            acc = acc.add(&qtype_project(&u, k)).unwrap();
        }
        prop_assert_eq!(acc, u);
    }

    #[test]
    fn even_part_is_grade_involution_fixed_part((s, u) in with_space(|s| mv(s, 12).boxed())) {
        let half = Coeff::from_ratio(1, 2, Backend::Exact);
        let fixed = u.add(&u.grade_involution()).unwrap().scalar_mul(&half).unwrap();
        prop_assert_eq!(u.even_part(), fixed);
        prop_assert_eq!(u.even_part().add(&u.odd_part()).unwrap(), u);
        let _ = s;
    }

    #[test]
    fn classifiers_agree((_, u) in with_space(|s| mv(s, 12).boxed())) {
        prop_assert_eq!(classify(&u), classify_by_conjugation(&u, 0.0));
    }

    #[test]
    fn format_parse_round_trip((s, u) in with_space(|s| mv(s, 50).boxed())) {
        let text = u.to_string();
        prop_assert_eq!(parse_mv(&text, s).unwrap(), u, "{}", text);
    }

    #[test]
    fn commutation_sign_matches_products(p in 0usize..5, q in 0usize..5, a in 0u64..512, b in 0u64..512) {
        prop_assume!(p + q > 0);
        let s = Signature::new(p, q).unwrap();
        let (a, b) = (Blade::from_mask(a & s.full_mask()), Blade::from_mask(b & s.full_mask()));
        let (s1, r1) = blade_mul(a, b, s);
        let (s2, r2) = blade_mul(b, a, s);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(s1, s2 * blade_commutation_sign(a, b));
    }
}

#[test]
fn float_backend_tracks_exact() {
    let exact = Space::real_exact(Signature::new(3, 2).unwrap());
    let float = Space::new(exact.signature, Field::Real, Backend::Float);
    let text = "1/3 + 2*e1 - 5/7*e23 + e12345";
    let (u, uf) = (parse_mv(text, exact).unwrap(), parse_mv(text, float).unwrap());
    let sq = u.geometric_product(&u).unwrap();
    let sqf = uf.geometric_product(&uf).unwrap();
    let lifted = parse_mv(&sq.to_string(), float).unwrap();
    assert!(sqf.approx_eq(&lifted, 1e-9), "{sqf} vs {sq}");
}
