use std::collections::BTreeSet;

use ipset_core::enumeration::canonicalize;
use ipset_core::geometry::DistanceMatrix;
use ipset_core::search::{
    all_sets_with, find_sets, find_sets_with, minimal_diameter, SearchOptions,
};
use ipset_core::{validate, Error, Exec, PositionClass};
use proptest::prelude::*;

const CONSTRAINTS: [PositionClass; 3] = [
    PositionClass::Any,
    PositionClass::SemiGeneral,
    PositionClass::General,
];

/// Minimal diameters, cross-checked against a separate brute-force clique count.
#[test]
fn frozen_minimal_diameters() {
    let any = [(3, 1), (4, 4), (5, 7), (6, 8), (7, 17)];
    let semi = [(3, 1), (4, 4), (5, 8), (6, 8), (7, 33)];
    let general = [(3, 1), (4, 8)];
    for (constraint, table) in [
        (PositionClass::Any, &any[..]),
        (PositionClass::SemiGeneral, &semi[..]),
        (PositionClass::General, &general[..]),
    ] {
        for &(n, d) in table {
            let r = minimal_diameter(n, constraint, 40).unwrap();
            assert_eq!(r.d, d, "n={n} {constraint}");
            assert_eq!(r.exhausted_up_to, d - 1);
            assert!(!r.witnesses.is_empty());
        }
    }
}

#[test]
fn witnesses_are_sound() {
    for constraint in CONSTRAINTS {
        for d in 1..=14 {
            for set in all_sets_with(d, constraint, &SearchOptions::default()).unwrap() {
                let v = validate(&set);
                assert!(v.valid, "{set}");
                assert!(v.position >= constraint, "{set}");
                assert_eq!(DistanceMatrix::of(&set).unwrap().diameter(), d);
                assert_eq!(canonicalize(&set).unwrap(), set);
            }
        }
    }
}

#[test]
fn stronger_constraints_give_fewer_sets() {
    for d in 1..=12 {
        for n in 3..=6 {
            let sets: Vec<BTreeSet<_>> = CONSTRAINTS
                .iter()
                .map(|&c| find_sets(n, d, c, true).unwrap().into_iter().collect())
                .collect();
            assert!(sets[1].is_subset(&sets[0]), "n={n} d={d}");
            assert!(sets[2].is_subset(&sets[1]), "n={n} d={d}");
        }
    }
}

#[test]
fn minimal_diameter_is_monotone() {
    for constraint in [PositionClass::Any, PositionClass::SemiGeneral] {
        let ds: Vec<u64> = (3..=6)
            .map(|n| minimal_diameter(n, constraint, 40).unwrap().d)
            .collect();
        assert!(ds.windows(2).all(|w| w[0] <= w[1]), "{constraint}: {ds:?}");
    }
    for n in 3..=6 {
        let any = minimal_diameter(n, PositionClass::Any, 40).unwrap().d;
        let semi = minimal_diameter(n, PositionClass::SemiGeneral, 40)
            .unwrap()
            .d;
        assert!(any <= semi);
    }
}

#[test]
fn budget_reports_exhausted_range() {
    assert_eq!(
        minimal_diameter(4, PositionClass::SemiGeneral, 3),
        Err(Error::BudgetExceeded {
            n: 4,
            constraint: PositionClass::SemiGeneral,
            exhausted_up_to: 3
        })
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sequential_and_parallel_agree(n in 3usize..6, d in 1u64..16, c in 0usize..3, all in any::<bool>()) {
        let par = SearchOptions { all_witnesses: all, ..Default::default() };
        let seq = SearchOptions { exec: Exec::Sequential, ..par };
        prop_assert_eq!(
            find_sets_with(n, d, CONSTRAINTS[c], &seq).unwrap(),
            find_sets_with(n, d, CONSTRAINTS[c], &par).unwrap()
        );
    }

    #[test]
    fn first_witness_is_among_all(n in 3usize..6, d in 1u64..16, c in 0usize..3) {
        let first = find_sets(n, d, CONSTRAINTS[c], false).unwrap();
        let all = find_sets(n, d, CONSTRAINTS[c], true).unwrap();
        prop_assert_eq!(first.is_empty(), all.is_empty());
        prop_assert!(first.iter().all(|s| all.contains(s)));
    }
}
