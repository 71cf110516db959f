//! Points in `Q × Q·√k`, exact predicates and set-level metrics.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{is_perfect_square, Characteristic};
use crate::error::{Error, Result};

/// The plane point `(x, r·√k)` for the characteristic `k` of its owning set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: BigRational,
    pub r: BigRational,
}

impl Point {
    pub fn new(x: BigRational, r: BigRational) -> Self {
        Point { x, r }
    }

    /// Point with integer coordinates.
    pub fn int(x: i64, r: i64) -> Self {
        Point::new(
            BigRational::from_integer(x.into()),
            BigRational::from_integer(r.into()),
        )
    }

    /// Point `(xn/xd, rn/rd)`.
    pub fn ratio(xn: i64, xd: i64, rn: i64, rd: i64) -> Self {
        Point::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(rn.into(), rd.into()),
        )
    }

    pub fn is_on_axis(&self) -> bool {
        self.r.is_zero()
    }

    /// Mirror image in the x-axis.
    pub fn reflected(&self) -> Point {
        Point::new(self.x.clone(), -&self.r)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.r)
    }
}

/// Position constraint, ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PositionClass {
    Any,
    /// No three points collinear.
    SemiGeneral,
    /// Semi-general and no four points concyclic.
    General,
}

impl PositionClass {
    pub fn name(self) -> &'static str {
        match self {
            PositionClass::Any => "any",
            PositionClass::SemiGeneral => "semi-general",
            PositionClass::General => "general",
        }
    }
}

impl fmt::Display for PositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite point set sharing one characteristic. Points are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    k: Characteristic,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(k: Characteristic, points: Vec<Point>) -> Result<Self> {
        for (j, q) in points.iter().enumerate() {
            if points[..j].contains(q) {
                return Err(Error::DuplicatePoint(j));
            }
        }
        Ok(PointSet { k, points })
    }

    pub fn k(&self) -> Characteristic {
        self.k
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn dist_sq(&self, i: usize, j: usize) -> BigRational {
        dist_sq(&self.points[i], &self.points[j], self.k)
    }

    /// Mirror image in the x-axis (`r → −r`), points kept in order.
    pub fn reflected(&self) -> PointSet {
        PointSet {
            k: self.k,
            points: self.points.iter().map(Point::reflected).collect(),
        }
    }

    /// Same points sorted by `(x, r)`.
    pub fn sorted(mut self) -> PointSet {
        self.points.sort();
        self
    }

    /// Rigid motion taking point `i` to the origin and point `j` to `(|ij|, 0)`.
    ///
    /// The rotation has cosine `Δx/|ij|` and sine `Δr·√k/|ij|`, so the image of
    /// every point stays in the `(x, r·√k)` model with the same `k`. Point
    /// order is preserved. Fails when `|ij|` is irrational.
    pub fn reframe(&self, i: usize, j: usize) -> Result<PointSet> {
        let len = rational_sqrt(&self.dist_sq(i, j)).ok_or(Error::NotIntegral(i, j))?;
        if len.is_zero() {
            return Err(Error::DegenerateInput("reframe on coincident points"));
        }
        let k = k_rational(self.k);
        let origin = &self.points[i];
        let dx = &self.points[j].x - &origin.x;
        let dr = &self.points[j].r - &origin.r;
        let points = self
            .points
            .iter()
            .map(|p| {
                let ux = &p.x - &origin.x;
                let ur = &p.r - &origin.r;
                let x = (&dx * &ux + &k * &dr * &ur) / &len;
                let r = (&dx * &ur - &dr * &ux) / &len;
                Point::new(x, r)
            })
            .collect();
        Ok(PointSet { k: self.k, points })
    }

    /// Reframe on the first diameter-realizing pair `(i, j)`, `i < j`.
    pub fn canonical_frame(&self) -> Result<(PointSet, (usize, usize))> {
        let matrix = DistanceMatrix::of(self)?;
        let pair = matrix.diameter_pair();
        Ok((self.reframe(pair.0, pair.1)?, pair))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} {{", self.k)?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn k_rational(k: Characteristic) -> BigRational {
    BigRational::from_integer(k.get().into())
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = is_perfect_square(q.numer().magnitude())?;
    let d = is_perfect_square(q.denom().magnitude())?;
    Some(BigRational::new(n.into(), d.into()))
}

/// Squared distance `(Δx)² + k·(Δr)²`.
pub fn dist_sq(p: &Point, q: &Point, k: Characteristic) -> BigRational {
    let dx = &p.x - &q.x;
    let dr = &p.r - &q.r;
    &dx * &dx + k_rational(k) * &dr * &dr
}

/// The distance `|PQ|` when it is a positive integer.
///
/// Distances that do not fit in a `u64` are reported as `None`.
pub fn integral_distance(p: &Point, q: &Point, k: Characteristic) -> Option<u64> {
    let d2 = dist_sq(p, q, k);
    if !d2.is_integer() || d2.is_zero() {
        return None;
    }
    is_perfect_square(d2.numer().magnitude())?.to_u64()
}

fn orientation(p1: &Point, p2: &Point, p3: &Point) -> BigRational {
    (&p2.x - &p1.x) * (&p3.r - &p1.r) - (&p3.x - &p1.x) * (&p2.r - &p1.r)
}

/// Exact collinearity; the common `√k` factor of the determinant cancels.
pub fn collinear(p1: &Point, p2: &Point, p3: &Point) -> bool {
    orientation(p1, p2, p3).is_zero()
}

/// Whether four distinct points lie on one circle.
///
/// Four collinear points lie on no circle and give `false`, as does any
/// quadruple containing a collinear triple.
pub fn concyclic(
    p1: &Point,
    p2: &Point,
    p3: &Point,
    p4: &Point,
    k: Characteristic,
) -> Result<bool> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateInput(
                    "coincident points in concyclic test",
                ));
            }
        }
    }
    for skip in 0..4 {
        let t: Vec<_> = (0..4).filter(|&i| i != skip).map(|i| pts[i]).collect();
        if collinear(t[0], t[1], t[2]) {
            return Ok(false);
        }
    }
    Ok(circle_determinant(&pts, k).is_zero())
}

/// Rational part of the lifted 4×4 determinant with rows `(x² + k r², x, r, 1)`,
/// reduced to 3×3 by subtracting the last row.
fn circle_determinant(pts: &[&Point; 4], k: Characteristic) -> BigRational {
    let kq = k_rational(k);
    let lift = |p: &Point| &p.x * &p.x + &kq * &p.r * &p.r;
    let base = pts[3];
    let base_lift = lift(base);
    let rows: Vec<[BigRational; 3]> = pts[..3]
        .iter()
        .map(|p| [lift(p) - &base_lift, &p.x - &base.x, &p.r - &base.r])
        .collect();
    let m = |i: usize, j: usize| &rows[i][j];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Symmetric matrix of integral pairwise distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u64>,
}

impl DistanceMatrix {
    /// Fails with the first (lexicographic) non-integral pair.
    pub fn of(set: &PointSet) -> Result<Self> {
        let n = set.len();
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = integral_distance(&set.points[i], &set.points[j], set.k)
                    .ok_or(Error::NotIntegral(i, j))?;
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    /// Pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }

    pub fn diameter(&self) -> u64 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// Lexicographically first pair realizing the diameter.
    pub fn diameter_pair(&self) -> (usize, usize) {
        let p = self.diameter();
        self.pairs()
            .find(|&(i, j)| self.get(i, j) == p)
            .unwrap_or((0, 0))
    }

    /// Lexicographically first closest pair among points not in `skip`.
    fn closest_pair(&self, skip: Option<usize>) -> Option<(usize, usize)> {
        let mut best: Option<(u64, (usize, usize))> = None;
        for (i, j) in self.pairs() {
            if Some(i) == skip || Some(j) == skip {
                continue;
            }
            let d = self.get(i, j);
            if best.is_none_or(|(b, _)| d < b) {
                best = Some((d, (i, j)));
            }
        }
        best.map(|(_, pair)| pair)
    }

    pub fn min_distance(&self) -> u64 {
        self.pairs().map(|(i, j)| self.get(i, j)).min().unwrap_or(0)
    }
}

/// Diameter and the two extremal pairs used by the lower-bound argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalReport {
    /// Diameter.
    pub p: u64,
    /// `(M1, M2)`: the closest pair, `M1` its lower index.
    pub closest_pair: (usize, usize),
    /// `|M1 M2|`.
    pub closest: u64,
    /// Minimum distance with `M1` removed.
    pub m: u64,
    /// `(M3, M4)` realizing `m`.
    pub second_pair: (usize, usize),
}

/// Extremal distances of an integral set; ties go to the lexicographically smallest index pair.
pub fn extremal_distances(set: &PointSet) -> Result<ExtremalReport> {
    if set.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: set.len(),
        });
    }
    let matrix = DistanceMatrix::of(set)?;
    extremal_from_matrix(&matrix)
}

pub(crate) fn extremal_from_matrix(matrix: &DistanceMatrix) -> Result<ExtremalReport> {
    let too_few = || Error::TooFewPoints {
        needed: 3,
        got: matrix.len(),
    };
    let closest_pair = matrix.closest_pair(None).ok_or_else(too_few)?;
    let second_pair = matrix
        .closest_pair(Some(closest_pair.0))
        .ok_or_else(too_few)?;
    Ok(ExtremalReport {
        p: matrix.diameter(),
        closest_pair,
        closest: matrix.get(closest_pair.0, closest_pair.1),
        m: matrix.get(second_pair.0, second_pair.1),
        second_pair,
    })
}

fn has_collinear_triple(pts: &[Point]) -> bool {
    let n = pts.len();
    (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| collinear(&pts[a], &pts[b], &pts[c]))))
}

fn has_concyclic_quadruple(pts: &[Point], k: Characteristic) -> bool {
    let n = pts.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if concyclic(&pts[a], &pts[b], &pts[c], &pts[d], k).unwrap_or(false) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Strongest position class satisfied, by exhaustive triple and quadruple checks.
pub fn classify_position(set: &PointSet) -> PositionClass {
    if has_collinear_triple(&set.points) {
        PositionClass::Any
    } else if has_concyclic_quadruple(&set.points, set.k) {
        PositionClass::SemiGeneral
    } else {
        PositionClass::General
    }
}

/// Outcome of [`validate`]. Failures are entries, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub n: usize,
    /// Pairs `(i, j)`, `i < j`, whose distance is not a positive integer.
    pub non_integral: Vec<(usize, usize)>,
    /// True when every point lies on one line (always for `n ≤ 2`).
    pub all_collinear: bool,
    pub position: PositionClass,
    pub valid: bool,
}

impl ValidationReport {
    pub fn failure_reasons(&self) -> Vec<String> {
        let mut reasons = Vec::new();
        if self.all_collinear {
            reasons.push("points are situated on a straight line".to_string());
        }
        for (i, j) in &self.non_integral {
            reasons.push(format!(
                "distance between points {i} and {j} is not an integer"
            ));
        }
        reasons
    }
}

fn all_collinear(pts: &[Point]) -> bool {
    if pts.len() <= 2 {
        return true;
    }
    let (a, b) = (&pts[0], &pts[1]);
    pts[2..].iter().all(|c| collinear(a, b, c))
}

/// Check that a set is an integral point set and classify its position.
pub fn validate(set: &PointSet) -> ValidationReport {
    let n = set.len();
    let non_integral: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| integral_distance(&set.points[i], &set.points[j], set.k).is_none())
        .collect();
    let all_collinear = all_collinear(&set.points);
    ValidationReport {
        n,
        valid: non_integral.is_empty() && !all_collinear,
        non_integral,
        all_collinear,
        position: classify_position(set),
    }
}
