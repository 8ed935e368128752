use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

use haros_core::analytics::{closed_form_p, scaling_map, thomae};
use haros_core::cf::{cf_to_path, rational_to_cf, ContinuedFraction};
use haros_core::farey::{path_to_rational, rational_to_path};
use haros_core::graph::{mean_degree, Degree};
use haros_core::{build, build_profile, build_rational, FareyPath, Rational, Symbol};

fn fraction() -> impl Strategy<Value = Rational> {
    (2u64..400)
        .prop_flat_map(|q| (1..q, Just(q)))
        .prop_filter("reduced", |(p, q)| num_integer::gcd(*p, *q) == 1)
        .prop_map(|(p, q)| Rational::from_u64(p, q))
}

fn path(max_len: usize) -> impl Strategy<Value = FareyPath> {
    prop::collection::vec(prop::bool::ANY, 0..max_len).prop_map(|bits| {
        let mut symbols = vec![Symbol::L];
        symbols.extend(bits.into_iter().map(|b| if b { Symbol::R } else { Symbol::L }));
        FareyPath::new(symbols).unwrap()
    })
}

proptest! {
    #[test]
    fn path_round_trip(x in fraction()) {
        let p = rational_to_path(&x).unwrap();
        prop_assert_eq!(path_to_rational(&p), x);
    }

    #[test]
    fn cf_and_path_agree(x in fraction()) {
        let cf = rational_to_cf(&x).unwrap();
        prop_assert_eq!(cf.value(), x.clone());
        prop_assert_eq!(cf_to_path(&cf), rational_to_path(&x).unwrap());
    }

    #[test]
    fn mirror_symmetry(x in fraction()) {
        let a = build_rational(&x).degree_distribution();
        let b = build_rational(&x.complement()).degree_distribution();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn collapsed_sequence_invariants(p in path(14)) {
        let g = build(&p);
        let seq = g.collapse();
        let q = g.q() as u64;
        prop_assert_eq!(seq.len() as u64, q);
        prop_assert_eq!(seq.sum(), 4 * q - 2);
        let dist = g.degree_distribution();
        prop_assert_eq!(mean_degree(&dist), thomae(g.label()));
    }

    #[test]
    fn profile_matches_sequence(p in path(16)) {
        let profile = build_profile(p.symbols().iter().copied());
        let g = build(&p);
        prop_assert_eq!(profile.label(), g.label());
        prop_assert_eq!(profile.distribution(), g.degree_distribution());
    }

    #[test]
    fn closed_form_matches_construction(x in fraction(), k in 2u32..30) {
        let built = build_rational(&x).degree_distribution().probability(k);
        prop_assert_eq!(closed_form_p(k, &x), built);
    }

    #[test]
    fn scaling_shifts_degrees(x in fraction(), m in 1u64..4) {
        // the image has the same degree multiset with inner degrees >= 5 shifted by m
        let q = x.denom().clone();
        let y = scaling_map(&x, m);
        let here = build_rational(&x).degree_distribution();
        let there = build_rational(&y).degree_distribution();
        for k in 5..(here.max_degree() + 1) {
            prop_assert_eq!(here.count(k), there.count(k + m as Degree), "k = {}", k);
        }
        prop_assert_eq!(y.denom(), &(q + x.numer() * BigUint::from(m)));
    }

    #[test]
    fn scaling_shifts_first_cf_term(x in fraction(), m in 1u64..5) {
        let cf = rational_to_cf(&x).unwrap();
        let shifted = rational_to_cf(&scaling_map(&x, m)).unwrap();
        let mut expected = cf.terms().to_vec();
        expected[0] += BigUint::from(m);
        prop_assert_eq!(shifted, ContinuedFraction::new(expected).unwrap());
    }

    #[test]
    fn probabilities_sum_to_one(x in fraction()) {
        let dist = build_rational(&x).degree_distribution();
        let total: num_rational::BigRational = dist.entries().map(|(_, p)| p.to_ratio()).sum();
        prop_assert!(total.is_one());
        prop_assert!(dist.total_probability().is_one());
    }
}
