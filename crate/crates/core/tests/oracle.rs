//! Clique search against plain subset enumeration over the candidate pool.

use std::collections::BTreeSet;

use ipset_core::enumeration::{candidate_points, canonicalize};
use ipset_core::search::find_sets;
use ipset_core::{
    classify_position, integral_distance, Characteristic, Point, PointSet, PositionClass,
};

/// Every canonical `n`-set of diameter `d` built from `O`, `A` and `n − 2`
/// pool points, checked with exact rational distances only.
pub fn naive_sets(n: usize, d: u64, constraint: PositionClass) -> BTreeSet<PointSet> {
    let pool = candidate_points(d).unwrap();
    let mut out = BTreeSet::new();
    for (&k, off) in &pool.by_characteristic {
        let mut vertices: Vec<Point> = off.iter().map(|c| c.point.clone()).collect();
        vertices.extend(pool.on_line.iter().map(|c| c.point.clone()));
        let len = vertices.len();
        let fits: Vec<Vec<bool>> = (0..len)
            .map(|i| {
                (0..len)
                    .map(|j| {
                        i != j
                            && integral_distance(&vertices[i], &vertices[j], k)
                                .is_some_and(|e| e <= d)
                    })
                    .collect()
            })
            .collect();
        let mut chosen = Vec::new();
        subsets(
            &vertices,
            &fits,
            k,
            n - 2,
            0,
            &mut chosen,
            d,
            constraint,
            &mut out,
        );
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn subsets(
    vertices: &[Point],
    fits: &[Vec<bool>],
    k: Characteristic,
    need: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    d: u64,
    constraint: PositionClass,
    out: &mut BTreeSet<PointSet>,
) {
    if chosen.len() == need {
        let mut points = vec![Point::int(0, 0), Point::int(d as i64, 0)];
        points.extend(chosen.iter().map(|&i| vertices[i].clone()));
        if points.iter().all(|p| p.is_on_axis()) {
            return;
        }
        let set = PointSet::new(k, points).unwrap();
        if classify_position(&set) >= constraint {
            out.insert(canonicalize(&set).unwrap());
        }
        return;
    }
    for i in from..vertices.len() {
        if chosen.iter().all(|&j| fits[i][j]) {
            chosen.push(i);
            subsets(vertices, fits, k, need, i + 1, chosen, d, constraint, out);
            chosen.pop();
        }
    }
}

#[test]
fn clique_search_matches_subset_enumeration() {
    for constraint in [
        PositionClass::Any,
        PositionClass::SemiGeneral,
        PositionClass::General,
    ] {
        for d in 1..=7 {
            for n in 3..=5 {
                let naive = naive_sets(n, d, constraint);
                let fast: BTreeSet<_> = find_sets(n, d, constraint, true)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(fast, naive, "n={n} d={d} {constraint}");
            }
        }
    }
}

#[test]
fn oracle_sees_known_sets() {
    let rect = naive_sets(4, 5, PositionClass::SemiGeneral);
    let expected = canonicalize(
        &PointSet::new(
            Characteristic::RATIONAL,
            vec![
                Point::int(0, 0),
                Point::int(4, 0),
                Point::int(4, 3),
                Point::int(0, 3),
            ],
        )
        .unwrap(),
    )
    .unwrap();
    assert!(rect.contains(&expected));
    assert_eq!(naive_sets(3, 1, PositionClass::General).len(), 1);
    assert!(naive_sets(4, 3, PositionClass::SemiGeneral).is_empty());
}
