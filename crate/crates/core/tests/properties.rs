mod common;

use proptest::prelude::*;
use segre_core::lct::diagonal_exit_from_facets;
use segre_core::{
    diagonal_exit, in_newton_region, lct, lct_condition, newton_polyhedron, region_condition,
    ExponentVector, MonomialIdeal, Rational, RationalPoint, StretchFactors,
};

fn arb_ideal(max_n: usize, max_gens: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(0..=max_exp, n), 1..=max_gens)
            .prop_filter("needs a nonzero generator", |g| g.iter().any(|v| v.iter().any(|&e| e > 0)))
            .prop_map(move |g| {
                let gens = g
                    .into_iter()
                    .filter(|v| v.iter().any(|&e| e > 0))
                    .map(ExponentVector);
                MonomialIdeal::new(n, gens).unwrap()
            })
    })
}

fn arb_point(n: usize) -> impl Strategy<Value = RationalPoint> {
    proptest::collection::vec((0i64..40, 1i64..6), n)
        .prop_map(|v| RationalPoint(v.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect()))
}

fn ideal_and_point() -> impl Strategy<Value = (MonomialIdeal, RationalPoint)> {
    arb_ideal(3, 4, 6).prop_flat_map(|i| {
        let n = i.n();
        (Just(i), arb_point(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn facet_and_lp_membership_agree((i, p) in ideal_and_point()) {
        let poly = newton_polyhedron(&i);
        prop_assert_eq!(poly.contains(&p).unwrap(), poly.contains_lp(&p).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn stretching_scales_extreme_points(i in arb_ideal(3, 4, 5), seed in proptest::collection::vec(1u64..5, 3)) {
        let n = i.n();
        let r = StretchFactors::new(seed[..n].to_vec()).unwrap();
        let stretched = newton_polyhedron(&i.stretch(&r).unwrap());
        let mut expected: Vec<Vec<u64>> = newton_polyhedron(&i)
            .extreme_points()
            .iter()
            .map(|v| v.0.iter().zip(r.as_slice()).map(|(a, b)| a * b).collect())
            .collect();
        expected.sort();
        let mut got: Vec<Vec<u64>> = stretched.extreme_points().iter().map(|v| v.0.clone()).collect();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn region_is_star_shaped((i, p) in ideal_and_point(), t in (0i64..=8, 1i64..=8)) {
        prop_assume!(t.0 <= t.1);
        if in_newton_region(&i, &p).unwrap() {
            let s = Rational::new(t.0.into(), t.1.into());
            let q = RationalPoint(p.0.iter().map(|c| c * &s).collect());
            prop_assert!(in_newton_region(&i, &q).unwrap());
        }
    }

    #[test]
    fn minimal_generators_are_stable(i in arb_ideal(3, 6, 5)) {
        let again = MonomialIdeal::new(i.n(), i.generators().iter().cloned()).unwrap();
        prop_assert_eq!(&again, &i);
        for (a, g) in i.generators().iter().enumerate() {
            for (b, h) in i.generators().iter().enumerate() {
                prop_assert!(a == b || !g.divides(h));
            }
        }
    }

    #[test]
    fn uniform_stretch_divides_threshold(i in arb_ideal(3, 4, 5), r in 1u64..6) {
        let n = i.n();
        let stretched = i.stretch(&StretchFactors::new(vec![r; n]).unwrap()).unwrap();
        let r = Rational::from_integer(r.into());
        prop_assert_eq!(lct(&stretched).0, lct(&i).0 / r);
    }

    #[test]
    fn lp_and_facet_diagonal_exit_agree(i in arb_ideal(3, 5, 6)) {
        let p = newton_polyhedron(&i);
        prop_assert_eq!(diagonal_exit(&p), diagonal_exit_from_facets(&p));
    }

    #[test]
    fn threshold_in_range(i in arb_ideal(3, 5, 6)) {
        let t = lct(&i).0;
        prop_assert!(t > Rational::from_integer(0.into()));
        prop_assert!(t <= Rational::from_integer((i.n() as i64).into()));
    }

    #[test]
    fn threshold_conditions_match_polyhedron(
        i in arb_ideal(3, 4, 6),
        a in proptest::collection::vec(2u64..=20, 3),
        m in 1u64..=50,
    ) {
        let n = i.n();
        let a = &a[..n];
        let p = RationalPoint::scaled_lattice(a, m);
        let poly = newton_polyhedron(&i);
        prop_assert_eq!(region_condition(&i, a, m).unwrap(), poly.in_region(&p).unwrap());
        prop_assert_eq!(lct_condition(&i, a, m).unwrap(), poly.contains(&p).unwrap());
    }

    #[test]
    fn conditions_cover_every_point(
        i in arb_ideal(3, 4, 6),
        a in proptest::collection::vec(1u64..=20, 3),
        m in 1u64..=50,
    ) {
        let a = &a[..i.n()];
        prop_assert!(region_condition(&i, a, m).unwrap() || lct_condition(&i, a, m).unwrap());
    }
}

#[test]
fn parse_round_trip_on_random_ideals() {
    let mut rng = common::rng(7);
    for _ in 0..200 {
        let n = 1 + (rand::Rng::gen_range(&mut rng, 0..4usize));
        let i = common::random_ideal(&mut rng, n, 5, 7);
        let text = i.to_string();
        assert_eq!(MonomialIdeal::parse(&text, Some(n)).unwrap(), i);
        let json = serde_json::to_string(&i.to_json()).unwrap();
        assert_eq!(MonomialIdeal::parse(&json, None).unwrap(), i);
    }
}
