//! Property tests for the invariants the analysis relies on.

use lie_gradings::exact::{fmt_q, parse_q, Rational};
use lie_gradings::grading::{alcove_adjacent, peel_sl2};
use lie_gradings::pyramids::{classical_oracle, ClassicalNilpotent, ClassicalType, Partition};
use lie_gradings::restrict::RestrictedRootSystem;
use lie_gradings::rootsys::{CartanType, RootSystem};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fractions_survive_printing(x in rational()) {
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn sl2_characters_peel_back_to_their_summands(parts in prop::collection::vec((0i64..8, 1usize..4), 0..6)) {
        let mut weights = Vec::new();
        for &(top, m) in &parts {
            for _ in 0..m {
                weights.extend((0..=top).map(|k| top - 2 * k));
            }
        }
        let mut expected: std::collections::BTreeMap<i64, usize> = Default::default();
        for &(top, m) in &parts {
            *expected.entry(top).or_default() += m;
        }
        let peeled = peel_sl2(&weights).unwrap();
        prop_assert_eq!(peeled, expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn alcove_adjacency_is_symmetric(
        functionals in prop::collection::vec(prop::collection::vec(-2i64..3, 2), 1..5),
        y in prop::collection::vec(rational(), 2),
        y2 in prop::collection::vec(rational(), 2),
    ) {
        prop_assert_eq!(alcove_adjacent(&functionals, &y, &y2), alcove_adjacent(&functionals, &y2, &y));
        prop_assert!(alcove_adjacent(&functionals, &y, &y));
    }

    #[test]
    fn partitions_print_and_parse(mut parts in prop::collection::vec(1usize..7, 1..7)) {
        let p = Partition::new(&parts).unwrap();
        let shown = p.to_string();
        let reparsed: Partition = shown.trim_matches(|c| c == '(' || c == ')').parse().unwrap();
        prop_assert_eq!(&reparsed, &p);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(&p.0[..], &parts[..]);
    }

    #[test]
    fn restricted_roots_are_closed(mask in 0u32..16) {
        let rs = RootSystem::build(CartanType::F, 4).unwrap();
        let j: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
        let rrs = RestrictedRootSystem::new(&rs, &j).unwrap();
        prop_assert!(rrs.check_difference_closure());
        prop_assert!(rrs.check_proportional_multiples());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Membership in the polytope agrees with the direct rank test at
    /// random points of the sl_n centraliser torus.
    #[test]
    fn polytope_membership_matches_rank_test(
        parts in prop::collection::vec(1usize..4, 2..4),
        raw in prop::collection::vec((-40i64..40, 1i64..12), 3),
    ) {
        let p = Partition::new(&parts).unwrap();
        let cn = ClassicalNilpotent::new(ClassicalType::Sl, &p).unwrap();
        prop_assume!(cn.polytope.dim > 0);
        let y: Vec<Rational> = raw[..cn.polytope.dim]
            .iter()
            .map(|&(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        let report = classical_oracle(&cn, &cn.from_coords(&y)).unwrap();
        prop_assert_eq!(cn.polytope.contains(&y), report.good);
    }
}
