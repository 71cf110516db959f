//! Candidate pools for a fixed diameter and canonical forms of point sets.
//!
//! With the base pair fixed at `O = (0, 0)` and `A = (d, 0)`, every further
//! point of a set of diameter `d` is the apex of a triangle with integer sides
//! `a = |PO| ≤ d`, `b = |PA| ≤ d` on the base `OA`. That apex has abscissa
//! `x = (d² + a² − b²) / 2d` and ordinate `y` with
//! `4d²y² = (2da)² − (d² + a² − b²)²`, so scaling both coordinates by `2d`
//! yields integers. The pool keeps exact rational points for the public API
//! and the scaled integers for the search.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::arith::{squarefree_split, Characteristic, DEFAULT_FACTOR_BOUND};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{DistanceMatrix, Point, PointSet};

/// Coordinates scaled by `2d`: the point is `(x / 2d, s·√k / 2d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Scaled {
    pub x: i64,
    pub s: i64,
}

/// A point at integer distances `a` from `O` and `b` from `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub point: Point,
    pub a: u64,
    pub b: u64,
    /// Characteristic of the ordinate; `1` for points on the base line.
    pub k: Characteristic,
    pub on_line: bool,
    pub(crate) scaled: Scaled,
}

impl Candidate {
    fn new(d: u64, a: u64, b: u64, k: Characteristic, scaled: Scaled) -> Self {
        let two_d = 2 * d as i64;
        let point = Point::new(
            BigRational::new(scaled.x.into(), two_d.into()),
            BigRational::new(scaled.s.into(), two_d.into()),
        );
        Candidate {
            point,
            a,
            b,
            k,
            on_line: scaled.s == 0,
            scaled,
        }
    }

    /// Base point `O` of the frame for diameter `d`.
    pub(crate) fn origin(d: u64) -> Self {
        Candidate::new(d, 0, d, Characteristic::RATIONAL, Scaled { x: 0, s: 0 })
    }

    /// Base point `A = (d, 0)`.
    pub(crate) fn far_end(d: u64) -> Self {
        Candidate::new(
            d,
            d,
            0,
            Characteristic::RATIONAL,
            Scaled {
                x: 2 * (d * d) as i64,
                s: 0,
            },
        )
    }

    fn mirrored(&self, d: u64) -> Self {
        Candidate::new(
            d,
            self.a,
            self.b,
            self.k,
            Scaled {
                x: self.scaled.x,
                s: -self.scaled.s,
            },
        )
    }
}

/// All candidates for one diameter, grouped by characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePool {
    pub d: u64,
    /// Off-line candidates, each list sorted by `(x, r)`.
    pub by_characteristic: BTreeMap<Characteristic, Vec<Candidate>>,
    /// Points strictly between `O` and `A`, sorted by `x`.
    pub on_line: Vec<Candidate>,
}

impl CandidatePool {
    pub fn off_line_len(&self) -> usize {
        self.by_characteristic.values().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.off_line_len() + self.on_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every candidate, off-line classes in `k` order first, then the line.
    pub fn iter(&self) -> impl Iterator<Item = &Candidate> {
        self.by_characteristic
            .values()
            .flatten()
            .chain(self.on_line.iter())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub exec: Exec,
    pub factor_bound: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            exec: Exec::default(),
            factor_bound: DEFAULT_FACTOR_BOUND,
        }
    }
}

/// Candidate pool for diameter `d` with default options.
pub fn candidate_points(d: u64) -> Result<CandidatePool> {
    candidate_points_with(d, &EnumerationOptions::default())
}

fn row(d: u64, a: u64, factor_bound: u64) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    let (di, ai) = (d as i128, a as i128);
    for b in 1..=d {
        let bi = b as i128;
        let x = di * di + ai * ai - bi * bi;
        let disc = 4 * di * di * ai * ai - x * x;
        if disc < 0 {
            continue;
        }
        let scaled_x = i64::try_from(x)
            .map_err(|_| Error::InvalidParameter(format!("diameter {d} too large")))?;
        if disc == 0 {
            // x = ±a·2d; only x = +a with b = d - a keeps b ≥ 1.
            out.push(Candidate::new(
                d,
                a,
                b,
                Characteristic::RATIONAL,
                Scaled { x: scaled_x, s: 0 },
            ));
            continue;
        }
        let split = squarefree_split(disc as u128, factor_bound)?;
        let s = i64::try_from(split.square)
            .map_err(|_| Error::InvalidParameter(format!("diameter {d} too large")))?;
        let k = Characteristic::new_unchecked(split.k);
        let upper = Candidate::new(d, a, b, k, Scaled { x: scaled_x, s });
        out.push(upper.mirrored(d));
        out.push(upper);
    }
    Ok(out)
}

/// Every point at integer distance `≤ d` from both `O = (0,0)` and `A = (d,0)`.
///
/// Output order is normalized (by `(k, x, r)`), so it does not depend on how
/// the `(a, b)` grid was split across workers.
pub fn candidate_points_with(d: u64, options: &EnumerationOptions) -> Result<CandidatePool> {
    if d == 0 {
        return Err(Error::NonPositive("diameter 0".into()));
    }
    if d > 1 << 20 {
        return Err(Error::InvalidParameter(format!(
            "diameter {d} beyond enumeration range"
        )));
    }
    let rows: Vec<u64> = (1..=d).collect();
    let rows = options
        .exec
        .map(&rows, |&a| row(d, a, options.factor_bound));

    let mut by_characteristic: BTreeMap<Characteristic, Vec<Candidate>> = BTreeMap::new();
    let mut on_line = Vec::new();
    for c in rows
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
    {
        if c.on_line {
            on_line.push(c);
        } else {
            by_characteristic.entry(c.k).or_default().push(c);
        }
    }
    for list in by_characteristic.values_mut() {
        list.sort_by(|p, q| p.point.cmp(&q.point));
        debug_assert!(list.windows(2).all(|w| w[0].point != w[1].point));
    }
    on_line.sort_by(|p, q| p.point.cmp(&q.point));
    Ok(CandidatePool {
        d,
        by_characteristic,
        on_line,
    })
}

/// Canonical representative of the congruence class of an integral set.
///
/// Every ordered diameter-realizing pair `(i, j)` is moved to `(0,0), (p,0)`,
/// optionally reflected in the x-axis, and its points sorted; the
/// lexicographically least result is returned. The orbit contains the frame
/// symmetries `x → p − x` and `r → −r`, so mirror images collapse, and it
/// does not depend on which diameter pair a search used as its base.
pub fn canonicalize(set: &PointSet) -> Result<PointSet> {
    let matrix = DistanceMatrix::of(set)?;
    let p = matrix.diameter();
    let mut best: Option<PointSet> = None;
    for (i, j) in matrix.pairs().filter(|&(i, j)| matrix.get(i, j) == p) {
        for (from, to) in [(i, j), (j, i)] {
            let framed = set.reframe(from, to)?;
            for image in [framed.reflected().sorted(), framed.sorted()] {
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
    }
    best.ok_or(Error::TooFewPoints {
        needed: 2,
        got: set.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::integral_distance;
    use proptest::prelude::*;

    fn k(v: u64) -> Characteristic {
        Characteristic::new(v).unwrap()
    }

    fn has(pool: &CandidatePool, p: &Point, kv: u64) -> bool {
        pool.by_characteristic
            .get(&k(kv))
            .is_some_and(|l| l.iter().any(|c| &c.point == p))
    }

    #[test]
    fn diameter_four_examples() {
        let pool = candidate_points(4).unwrap();
        assert!(has(&pool, &Point::int(2, 2), 3));
        assert!(has(&pool, &Point::int(2, -2), 3));
        assert!(has(&pool, &Point::ratio(1, 2, 1, 2), 15));
        assert!(has(&pool, &Point::ratio(1, 2, -1, 2), 15));
        let line: Vec<_> = pool
            .on_line
            .iter()
            .map(|c| (c.point.clone(), c.a, c.b))
            .collect();
        assert_eq!(
            line,
            vec![
                (Point::int(1, 0), 1, 3),
                (Point::int(2, 0), 2, 2),
                (Point::int(3, 0), 3, 1)
            ]
        );
    }

    #[test]
    fn diameter_one_is_the_unit_apex() {
        let pool = candidate_points(1).unwrap();
        assert!(pool.on_line.is_empty());
        assert_eq!(pool.by_characteristic.len(), 1);
        let apexes = &pool.by_characteristic[&k(3)];
        assert_eq!(apexes.len(), 2);
        assert_eq!(apexes[1].point, Point::ratio(1, 2, 1, 2));
    }

    #[test]
    fn zero_diameter_rejected() {
        assert!(candidate_points(0).is_err());
    }

    #[test]
    fn sequential_and_default_agree() {
        let seq = candidate_points_with(
            17,
            &EnumerationOptions {
                exec: Exec::Sequential,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, candidate_points(17).unwrap());
    }

    /// Third vertices of all integer triangles with longest side `d`, by brute force.
    fn brute_force_apexes(d: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for a in 1..=d {
            for b in 1..=d {
                if a + b > d {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn pool_contains_every_triangle_apex() {
        for d in 1..=20 {
            let pool = candidate_points(d).unwrap();
            for (a, b) in brute_force_apexes(d) {
                let hits: Vec<_> = pool.iter().filter(|c| c.a == a && c.b == b).collect();
                assert_eq!(hits.len(), 2, "d={d} a={a} b={b}");
                assert_eq!(hits[0].point.x, hits[1].point.x);
                assert_eq!(hits[0].point.r, -hits[1].point.r.clone());
            }
        }
    }

    #[test]
    fn pool_invariants() {
        for d in 1..=24 {
            let pool = candidate_points(d).unwrap();
            assert!(pool.off_line_len() as u64 <= 2 * d * d);
            let o = Point::int(0, 0);
            let a_pt = Point::int(d as i64, 0);
            for c in pool.iter() {
                assert_eq!(integral_distance(&c.point, &o, c.k), Some(c.a));
                assert_eq!(integral_distance(&c.point, &a_pt, c.k), Some(c.b));
                assert!(c.a <= d && c.b <= d);
                assert!(c.a + c.b >= d);
                assert_eq!(c.a + c.b == d, c.on_line);
            }
            for (kk, list) in &pool.by_characteristic {
                for c in list {
                    let mirror = c.point.reflected();
                    assert!(list.iter().any(|o| o.point == mirror), "d={d} k={kk}");
                }
            }
        }
    }

    fn witness() -> PointSet {
        // trapezoid of diameter 4 with legs 2 and top 3
        PointSet::new(
            k(15),
            vec![
                Point::int(0, 0),
                Point::int(4, 0),
                Point::ratio(1, 2, 1, 2),
                Point::ratio(7, 2, 1, 2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_of_mirror_images() {
        let w = witness();
        let c = canonicalize(&w).unwrap();
        assert_eq!(canonicalize(&w.reflected()).unwrap(), c);
        assert_eq!(canonicalize(&c).unwrap(), c);
        // x -> d - x
        let flipped = PointSet::new(
            w.k(),
            w.points()
                .iter()
                .map(|p| Point::new(BigRational::from_integer(4.into()) - &p.x, p.r.clone()))
                .collect(),
        )
        .unwrap();
        assert_eq!(canonicalize(&flipped).unwrap(), c);
    }

    #[test]
    fn canonical_form_independent_of_diameter_pair() {
        let rect = PointSet::new(
            Characteristic::RATIONAL,
            vec![
                Point::int(0, 0),
                Point::int(4, 0),
                Point::int(4, 3),
                Point::int(0, 3),
            ],
        )
        .unwrap();
        let c = canonicalize(&rect).unwrap();
        let other_diag = rect.reframe(1, 3).unwrap();
        assert_eq!(canonicalize(&other_diag).unwrap(), c);
        assert_eq!(c.points()[0], Point::int(0, 0));
        assert!(c.points().contains(&Point::int(5, 0)));
    }

    proptest! {
        #[test]
        fn canonicalize_idempotent_under_motions(i in 0usize..4, j in 0usize..4, flip: bool) {
            prop_assume!(i != j);
            let w = witness();
            let moved = w.reframe(i, j);
            prop_assume!(moved.is_ok());
            let mut moved = moved.unwrap();
            if flip {
                moved = moved.reflected();
            }
            let c = canonicalize(&moved).unwrap();
            prop_assert_eq!(&c, &canonicalize(&w).unwrap());
            prop_assert_eq!(canonicalize(&c).unwrap(), c);
        }
    }
}
