//! Bound formulas, lemma checkers and a replay of the `(n/5)^{5/4}` lower bound.
//!
//! Every accept/reject decision here is an exact integer or rational
//! comparison with the radicals cleared:
//!
//! | real inequality                | exact form                      |
//! |--------------------------------|---------------------------------|
//! | `p ≥ (n/5)^{5/4}`              | `5⁵·p⁴ ≥ n⁵`                    |
//! | `m ≤ p^{2/5}`                  | `m⁵ ≤ p²`                       |
//! | `2p^{4/5} ≤ q < 2p^{4/5} + 1`  | `q` least with `q⁵ ≥ 32·p⁴`     |
//! | `n ≤ 4p^{4/5}`                 | `n⁵ ≤ 4⁵·p⁴`                    |
//! | min height `≥ √(a − 1/4)`      | `16·Area² ≥ c²·(4a − 1)`        |
//!
//! Floating point is only used by [`bound_table`], whose values are for display.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::Characteristic;
use crate::error::{Error, Result};
use crate::geometry::{
    collinear, dist_sq, extremal_from_matrix, k_rational, validate, DistanceMatrix, ExtremalReport,
    Point, PointSet, PositionClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

impl Relation {
    fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Eq => "=",
        }
    }
}

/// One exact comparison with its operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: BigRational,
    pub holds: bool,
}

impl Inequality {
    pub fn new(
        name: impl Into<String>,
        lhs: impl Into<BigRational>,
        relation: Relation,
        rhs: impl Into<BigRational>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        Inequality {
            name: name.into(),
            holds: relation.holds(&lhs, &rhs),
            lhs,
            relation,
            rhs,
        }
    }

    fn int(name: impl Into<String>, lhs: BigInt, relation: Relation, rhs: BigInt) -> Self {
        Inequality::new(
            name,
            BigRational::from_integer(lhs),
            relation,
            BigRational::from_integer(rhs),
        )
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.holds { "pass" } else { "FAIL" }
        )
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(v: u64, e: u32) -> BigInt {
    num_traits::pow(big(v), e as usize)
}

/// `p ≥ (n/5)^{5/4}`, decided as `5⁵·p⁴ ≥ n⁵`.
pub fn theorem_bound_holds(n: u64, p: u64) -> bool {
    pow(5, 5) * pow(p, 4) >= pow(n, 5)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Binary,
}

impl LogBase {
    fn log(self, v: f64) -> f64 {
        match self {
            LogBase::Natural => v.ln(),
            LogBase::Binary => v.log2(),
        }
    }
}

/// Reading of the exponent `δ / (4 log 2(1+ε)) · log log n` of the
/// collinear-points bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CollinearForm {
    /// `δ / (4·log(2(1+ε)))`.
    #[default]
    LogOfTwoOnePlusEps,
    /// `δ / (4·log₂(1+ε))`.
    Log2OfOnePlusEps,
}

/// Parameters of [`bound_table`]; the constants `c2`, `c3` are unspecified in
/// the literature and default to `1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub c2: f64,
    pub c3: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub log_base: LogBase,
    pub collinear_form: CollinearForm,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams {
            c2: 1.0,
            c3: 1.0,
            delta: 1.0,
            epsilon: 1.0,
            log_base: LogBase::Natural,
            collinear_form: CollinearForm::LogOfTwoOnePlusEps,
        }
    }
}

/// Display values of the diameter bounds for one cardinality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    /// `(n/5)^{5/4}`.
    pub theorem_bound: f64,
    /// `5n/11`.
    pub linear_bound: f64,
    /// `n^{1/3}`.
    pub min_dist_bound: f64,
    /// `c3·n^{7/6}`.
    pub remark_bound: f64,
    /// `n^{c2·log log n}`.
    pub upper_bound: f64,
    /// `n^{δ/(4 log 2(1+ε))·log log n}` under the chosen reading.
    pub collinear_bound: f64,
}

pub fn bound_row(n: u64, params: &BoundParams) -> BoundReport {
    let nf = n as f64;
    let loglog = params.log_base.log(params.log_base.log(nf));
    let denom = match params.collinear_form {
        CollinearForm::LogOfTwoOnePlusEps => params.log_base.log(2.0 * (1.0 + params.epsilon)),
        CollinearForm::Log2OfOnePlusEps => (1.0 + params.epsilon).log2(),
    };
    BoundReport {
        n,
        theorem_bound: (nf / 5.0).powf(1.25),
        linear_bound: 5.0 * nf / 11.0,
        min_dist_bound: nf.cbrt(),
        remark_bound: params.c3 * nf.powf(7.0 / 6.0),
        upper_bound: nf.powf(params.c2 * loglog),
        collinear_bound: nf.powf(params.delta / (4.0 * denom) * loglog),
    }
}

pub fn bound_table(n_from: u64, n_to: u64, params: &BoundParams) -> Result<Vec<BoundReport>> {
    if n_from < 3 || n_from > n_to {
        return Err(Error::InvalidParameter(format!(
            "need 3 <= n_from <= n_to, got {n_from}..{n_to}"
        )));
    }
    if params.delta.is_nan()
        || params.delta <= 0.0
        || params.epsilon.is_nan()
        || params.epsilon <= 0.0
    {
        return Err(Error::InvalidParameter(format!(
            "delta and epsilon must be positive, got delta={} epsilon={}",
            params.delta, params.epsilon
        )));
    }
    if !params.c2.is_finite() || !params.c3.is_finite() {
        return Err(Error::InvalidParameter("c2 and c3 must be finite".into()));
    }
    Ok((n_from..=n_to).map(|n| bound_row(n, params)).collect())
}

/// `16·Area²` of the triangle with sides `a, b, c` (Heron).
pub fn heron_16_area_sq(a: u64, b: u64, c: u64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
}

fn check_triangle(a: u64, b: u64, c: u64) -> Result<()> {
    if a == 0 || a > b || b > c || a + b <= c {
        return Err(Error::DegenerateTriangle(a, b, c));
    }
    Ok(())
}

/// `16·Area² − c²·(4a − 1)`: the exact slack of `min height ≥ √(a − 1/4)`
/// for sides `a ≤ b ≤ c`.
pub fn min_height_slack(a: u64, b: u64, c: u64) -> Result<i128> {
    check_triangle(a, b, c)?;
    let ci = c as i128;
    Ok(heron_16_area_sq(a, b, c) - ci * ci * (4 * a as i128 - 1))
}

/// Whether the minimal height (onto `c`) is at least `√(a − 1/4)`.
pub fn min_height_check(a: u64, b: u64, c: u64) -> Result<bool> {
    Ok(min_height_slack(a, b, c)? >= 0)
}

/// Whether `N` lies on the line `M1M2` or on the perpendicular bisector of `M1M2`.
pub fn cross_membership(n: &Point, m1: &Point, m2: &Point, k: Characteristic) -> bool {
    collinear(n, m1, m2) || dist_sq(n, m1, k) == dist_sq(n, m2, k)
}

/// Validated integral set with its distance matrix.
struct Checked<'a> {
    set: &'a PointSet,
    matrix: DistanceMatrix,
    position: PositionClass,
}

fn checked(set: &PointSet) -> Result<Checked<'_>> {
    let report = validate(set);
    if !report.valid {
        return Err(Error::PreconditionViolated(format!(
            "not an integral point set: {}",
            report.failure_reasons().join("; ")
        )));
    }
    Ok(Checked {
        set,
        matrix: DistanceMatrix::of(set)?,
        position: report.position,
    })
}

fn checked_semi_general(set: &PointSet, min_n: usize) -> Result<Checked<'_>> {
    if set.len() < min_n {
        return Err(Error::PreconditionViolated(format!(
            "needs n >= {min_n}, got n = {}",
            set.len()
        )));
    }
    let c = checked(set)?;
    if c.position < PositionClass::SemiGeneral {
        return Err(Error::PreconditionViolated(
            "set has a collinear triple".into(),
        ));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolaCheck {
    pub report: ExtremalReport,
    pub inequalities: Vec<Inequality>,
    pub pass: bool,
}

fn hyperbola_inequalities(n: usize, report: &ExtremalReport) -> Vec<Inequality> {
    vec![
        Inequality::int("|M1M2| >= 2", big(report.closest), Relation::Ge, big(2)),
        Inequality::int("|M3M4| >= 2", big(report.m), Relation::Ge, big(2)),
        Inequality::int(
            "n <= 4*|M1M2|*|M3M4|",
            big(n as u64),
            Relation::Le,
            big(4 * report.closest * report.m),
        ),
    ]
}

/// `#M ≤ 4·|M1M2|·|M3M4|` for the extremal pairs of a semi-general set, `n ≥ 4`.
pub fn hyperbola_count_check(set: &PointSet) -> Result<HyperbolaCheck> {
    let c = checked_semi_general(set, 4)?;
    let report = extremal_from_matrix(&c.matrix)?;
    let inequalities = hyperbola_inequalities(set.len(), &report);
    Ok(HyperbolaCheck {
        pass: inequalities.iter().all(|i| i.holds),
        report,
        inequalities,
    })
}

/// Minimum distance at least `n^{1/3}`, decided as `min³ ≥ n`. Semi-general sets only.
pub fn cube_root_check(set: &PointSet) -> Result<Inequality> {
    let c = checked_semi_general(set, 3)?;
    let min = c.matrix.min_distance();
    Ok(Inequality::int(
        "min^3 >= n",
        pow(min, 3),
        Relation::Ge,
        big(set.len() as u64),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerCheck {
    pub p: u64,
    /// Set in the canonical frame of its first diameter pair.
    pub framed: PointSet,
    pub inequalities: Vec<Inequality>,
    pub pass: bool,
}

fn span<'a>(values: impl Iterator<Item = &'a BigRational> + Clone) -> BigRational {
    let max = values
        .clone()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    let min = values.min().cloned().unwrap_or_else(BigRational::zero);
    max - min
}

/// A set of diameter `p` fits in an axis-parallel `p × p` square once a
/// diameter pair is placed on the x-axis.
pub fn square_container_check(set: &PointSet) -> Result<ContainerCheck> {
    let c = checked(set)?;
    let p = c.matrix.diameter();
    let pair = c.matrix.diameter_pair();
    let framed = set.reframe(pair.0, pair.1)?;
    let width = span(framed.points().iter().map(|pt| &pt.x));
    let height = span(framed.points().iter().map(|pt| &pt.r));
    let p_q = BigRational::from_integer(big(p));
    let inequalities = vec![
        Inequality::new("x-span <= p", width, Relation::Le, p_q.clone()),
        Inequality::new(
            "k*(r-span)^2 <= p^2",
            k_rational(set.k()) * &height * &height,
            Relation::Le,
            &p_q * &p_q,
        ),
    ];
    Ok(ContainerCheck {
        p,
        pass: inequalities.iter().all(|i| i.holds),
        framed,
        inequalities,
    })
}

/// Least `q` with `q⁵ ≥ 32·p⁴`, i.e. `2p^{4/5} ≤ q < 2p^{4/5} + 1`.
pub fn strip_count(p: u64) -> u64 {
    let target = big(32) * pow(p, 4);
    let mut q = (2.0 * (p as f64).powf(0.8)).floor().max(1.0) as u64;
    while q > 1 && pow(q - 1, 5) >= target {
        q -= 1;
    }
    while pow(q, 5) < target {
        q += 1;
    }
    q
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripCheck {
    pub p: u64,
    pub q: u64,
    /// Points of `M ∖ {M1}` in each strip `[i·p/q, (i+1)·p/q)` (last strip closed).
    pub strip_counts: Vec<usize>,
    pub inequalities: Vec<Inequality>,
    pub pass: bool,
}

fn strips(c: &Checked<'_>, report: &ExtremalReport) -> Result<StripCheck> {
    let p = report.p;
    let q = strip_count(p);
    let pair = c.matrix.diameter_pair();
    let framed = c.set.reframe(pair.0, pair.1)?;
    let mut strip_counts = vec![0usize; q as usize];
    let mut in_square = true;
    let p_q = BigRational::from_integer(big(p));
    for (idx, pt) in framed.points().iter().enumerate() {
        if idx == report.closest_pair.0 {
            continue;
        }
        if pt.x.is_negative() || pt.x > p_q {
            in_square = false;
            continue;
        }
        let strip = (&pt.x * BigRational::from_integer(big(q)) / &p_q)
            .floor()
            .to_integer();
        let strip = strip.to_u64().unwrap_or(q).min(q - 1);
        strip_counts[strip as usize] += 1;
    }
    let fullest = strip_counts.iter().copied().max().unwrap_or(0) as u64;
    let counted: usize = strip_counts.iter().sum();
    let inequalities = vec![
        Inequality::int(
            "q^5 >= 32*p^4",
            pow(q, 5),
            Relation::Ge,
            big(32) * pow(p, 4),
        ),
        Inequality::int(
            "(q-1)^5 < 32*p^4",
            pow(q - 1, 5),
            Relation::Lt,
            big(32) * pow(p, 4),
        ),
        Inequality::int(
            "(4m-1)^5 > p^2 (min height exceeds strip width)",
            pow(4 * report.m - 1, 5),
            Relation::Gt,
            pow(p, 2),
        ),
        Inequality::int(
            "points of M\\{M1} inside [0, p]",
            big(counted as u64),
            Relation::Eq,
            big(c.set.len() as u64 - 1),
        ),
        Inequality::int("max strip count <= 2", big(fullest), Relation::Le, big(2)),
    ];
    Ok(StripCheck {
        p,
        q,
        strip_counts,
        pass: in_square && inequalities.iter().all(|i| i.holds),
        inequalities,
    })
}

/// Partition the canonical square into `q` vertical strips of width at most
/// `p^{1/5}/2` and check that none holds three points of `M ∖ {M1}`.
/// Only meaningful when `m⁵ > p²`.
pub fn strip_partition_check(set: &PointSet) -> Result<StripCheck> {
    let c = checked_semi_general(set, 4)?;
    let report = extremal_from_matrix(&c.matrix)?;
    if pow(report.m, 5) <= pow(report.p, 2) {
        return Err(Error::PreconditionViolated(format!(
            "strip branch needs m^5 > p^2, got m = {}, p = {}",
            report.m, report.p
        )));
    }
    strips(&c, &report)
}

/// Shape of a set around one unit pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPairShape {
    pub pair: (usize, usize),
    /// Points on the line through the pair, the pair included.
    pub on_line: usize,
    /// Points off that line.
    pub off_line: Vec<usize>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceOneReport {
    pub shapes: Vec<UnitPairShape>,
    pub conforming: bool,
}

/// For every pair at distance 1: all but one point lie on its line, and the
/// remaining point is on its perpendicular bisector.
pub fn distance_one_structure_check(set: &PointSet) -> Result<DistanceOneReport> {
    let c = checked(set)?;
    let n = set.len();
    let pts = set.points();
    let units: Vec<_> = c
        .matrix
        .pairs()
        .filter(|&(i, j)| c.matrix.get(i, j) == 1)
        .collect();
    if units.is_empty() {
        return Err(Error::NoUnitDistance);
    }
    let shapes: Vec<UnitPairShape> = units
        .into_iter()
        .map(|(i, j)| {
            let (off_line, on): (Vec<usize>, Vec<usize>) =
                (0..n).partition(|&l| l != i && l != j && !collinear(&pts[i], &pts[j], &pts[l]));
            let mut violations = Vec::new();
            if on.len() != n - 1 {
                violations.push(format!(
                    "{} of {n} points on the unit line, expected {}",
                    on.len(),
                    n - 1
                ));
            }
            for &l in &off_line {
                if dist_sq(&pts[l], &pts[i], set.k()) != dist_sq(&pts[l], &pts[j], set.k()) {
                    violations.push(format!(
                        "point {l} is off the line and off the perpendicular bisector"
                    ));
                }
            }
            UnitPairShape {
                pair: (i, j),
                on_line: on.len(),
                off_line,
                violations,
            }
        })
        .collect();
    Ok(DistanceOneReport {
        conforming: shapes.iter().all(|s| s.violations.is_empty()),
        shapes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `m ≤ p^{2/5}`: counting on hyperbolas.
    Hyperbola,
    /// `m > p^{2/5}`: counting in strips.
    Strip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTrace {
    pub n: usize,
    pub p: u64,
    pub report: ExtremalReport,
    pub branch: Branch,
    /// Strip count, strip branch only.
    pub q: Option<u64>,
    pub strip_counts: Vec<usize>,
    pub inequalities: Vec<Inequality>,
    pub pass: bool,
}

/// Steps of the branch `m ≤ p^{2/5}`: `n ≤ 4·|M1M2|·m ≤ 4p^{4/5}`.
fn hyperbola_branch_steps(n: usize, report: &ExtremalReport) -> Vec<Inequality> {
    let p = report.p;
    let mut steps = vec![Inequality::int(
        "m^5 <= p^2",
        pow(report.m, 5),
        Relation::Le,
        pow(p, 2),
    )];
    steps.extend(hyperbola_inequalities(n, report));
    steps.push(Inequality::int(
        "(|M1M2|*|M3M4|)^5 <= p^4",
        pow(report.closest * report.m, 5),
        Relation::Le,
        pow(p, 4),
    ));
    steps.push(Inequality::int(
        "n^5 <= 4^5*p^4",
        pow(n as u64, 5),
        Relation::Le,
        pow(4, 5) * pow(p, 4),
    ));
    steps
}

/// Replay the lower-bound argument on a concrete semi-general set, `n ≥ 4`,
/// recording every step as an exact comparison.
pub fn replay_theorem_proof(set: &PointSet) -> Result<ProofTrace> {
    let c = checked_semi_general(set, 4)?;
    let report = extremal_from_matrix(&c.matrix)?;
    let n = set.len();
    let (nb, p) = (n as u64, report.p);
    let mut inequalities = Vec::new();
    let (branch, q, strip_counts) = if pow(report.m, 5) <= pow(p, 2) {
        inequalities.extend(hyperbola_branch_steps(n, &report));
        (Branch::Hyperbola, None, Vec::new())
    } else {
        inequalities.push(Inequality::int(
            "m^5 > p^2",
            pow(report.m, 5),
            Relation::Gt,
            pow(p, 2),
        ));
        let strip = strips(&c, &report)?;
        if !strip.pass && strip.inequalities.iter().all(|i| i.holds) {
            inequalities.push(Inequality::int(
                "points inside the square",
                big(0),
                Relation::Eq,
                big(1),
            ));
        }
        inequalities.extend(strip.inequalities);
        inequalities.push(Inequality::int(
            "n - 1 <= 2*q",
            big(nb - 1),
            Relation::Le,
            big(2 * strip.q),
        ));
        inequalities.push(Inequality::int(
            "p^4 >= 3^5",
            pow(p, 4),
            Relation::Ge,
            pow(3, 5),
        ));
        inequalities.push(Inequality::int(
            "n^5 <= 5^5*p^4",
            pow(nb, 5),
            Relation::Le,
            pow(5, 5) * pow(p, 4),
        ));
        (Branch::Strip, Some(strip.q), strip.strip_counts)
    };
    inequalities.push(Inequality::int(
        "5^5*p^4 >= n^5",
        pow(5, 5) * pow(p, 4),
        Relation::Ge,
        pow(nb, 5),
    ));
    Ok(ProofTrace {
        n,
        p,
        pass: inequalities.iter().all(|i| i.holds),
        report,
        branch,
        q,
        strip_counts,
        inequalities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use proptest::prelude::*;

    fn rectangle() -> PointSet {
        PointSet::new(
            Characteristic::RATIONAL,
            vec![
                Point::int(0, 0),
                Point::int(4, 0),
                Point::int(4, 3),
                Point::int(0, 3),
            ],
        )
        .unwrap()
    }

    fn unit_equilateral() -> PointSet {
        PointSet::new(
            Characteristic::new(3).unwrap(),
            vec![Point::int(0, 0), Point::int(1, 0), Point::ratio(1, 2, 1, 2)],
        )
        .unwrap()
    }

    fn facher3() -> PointSet {
        PointSet::new(
            Characteristic::RATIONAL,
            vec![
                Point::int(-4, 0),
                Point::int(0, 0),
                Point::int(4, 0),
                Point::int(0, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn theorem_bound_examples() {
        assert!(theorem_bound_holds(5, 1));
        assert!(theorem_bound_holds(3125, 3125));
        assert!(!theorem_bound_holds(3125, 3124));
        assert!(!theorem_bound_holds(10, 2));
    }

    proptest! {
        #[test]
        fn theorem_bound_agrees_with_floats(n in 3u64..100_000, p in 1u64..1_000_000) {
            let real = (n as f64 / 5.0).powf(1.25);
            let rel = (p as f64 - real).abs() / real;
            prop_assume!(rel > 1e-9);
            prop_assert_eq!(theorem_bound_holds(n, p), p as f64 >= real);
        }

        #[test]
        fn strip_count_agrees_with_floats(p in 1u64..1_000_000) {
            let q = strip_count(p);
            let lower = 2.0 * (p as f64).powf(0.8);
            prop_assert!(q as f64 >= lower * (1.0 - 1e-9));
            prop_assert!((q as f64) < lower + 1.0 + 1e-9);
        }
    }

    #[test]
    fn bound_table_examples() {
        let params = BoundParams::default();
        let rows = bound_table(5, 11, &params).unwrap();
        assert!((rows[0].theorem_bound - 1.0).abs() < 1e-9);
        assert!((rows[6].linear_bound - 5.0).abs() < 1e-9);
        assert!((rows[3].min_dist_bound - 2.0).abs() < 1e-9);
    }

    #[test]
    fn bound_table_rejects_bad_params() {
        let mut params = BoundParams::default();
        assert!(bound_table(2, 5, &params).is_err());
        assert!(bound_table(6, 5, &params).is_err());
        params.epsilon = 0.0;
        assert!(bound_table(3, 5, &params).is_err());
        params.epsilon = 1.0;
        params.delta = -1.0;
        assert!(bound_table(3, 5, &params).is_err());
        params.delta = f64::NAN;
        assert!(bound_table(3, 5, &params).is_err());
    }

    #[test]
    fn collinear_forms_differ() {
        let mut params = BoundParams {
            epsilon: 0.5,
            ..Default::default()
        };
        let a = bound_row(1000, &params).collinear_bound;
        params.collinear_form = CollinearForm::Log2OfOnePlusEps;
        let b = bound_row(1000, &params).collinear_bound;
        // ln(3) ≈ 1.0986 vs log2(1.5) ≈ 0.585: the second exponent is larger
        let loglog = (1000f64).ln().ln();
        assert!((a - 1000f64.powf(loglog / (4.0 * 3f64.ln()))).abs() < 1e-9 * a);
        assert!((b - 1000f64.powf(loglog / (4.0 * 1.5f64.log2()))).abs() < 1e-9 * b);
    }

    #[test]
    fn min_height_examples() {
        assert_eq!(min_height_slack(1, 1, 1), Ok(0));
        assert_eq!(min_height_check(3, 4, 5), Ok(true));
        // 16A² = 9·5·3·1 = 135 against 16·7 = 112
        assert_eq!(heron_16_area_sq(2, 3, 4), 135);
        assert_eq!(min_height_slack(2, 3, 4), Ok(135 - 112));
        assert_eq!(
            min_height_check(1, 2, 3),
            Err(Error::DegenerateTriangle(1, 2, 3))
        );
        assert_eq!(
            min_height_check(3, 2, 4),
            Err(Error::DegenerateTriangle(3, 2, 4))
        );
    }

    #[test]
    fn min_height_sweep() {
        for c in 1..=50u64 {
            for b in 1..=c {
                for a in 1..=b {
                    if a + b > c {
                        assert_eq!(min_height_check(a, b, c), Ok(true), "({a},{b},{c})");
                        let h = 2.0 * (heron_16_area_sq(a, b, c) as f64).sqrt() / 4.0 / c as f64;
                        assert!(h >= (a as f64 - 0.25).sqrt() * (1.0 - 1e-9));
                    }
                }
            }
        }
    }

    #[test]
    fn cross_examples() {
        let (m1, m2) = (Point::int(0, 0), Point::int(4, 0));
        let k = Characteristic::RATIONAL;
        assert!(cross_membership(&Point::int(2, 0), &m1, &m2, k));
        assert!(cross_membership(&Point::int(2, 5), &m1, &m2, k));
        assert!(!cross_membership(&Point::int(1, 1), &m1, &m2, k));
    }

    #[test]
    fn hyperbola_examples() {
        let h = hyperbola_count_check(&rectangle()).unwrap();
        assert!(h.pass);
        assert_eq!(h.inequalities[2].rhs, BigRational::from_integer(36.into()));
        assert!(matches!(
            hyperbola_count_check(&unit_equilateral()),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            hyperbola_count_check(&facher3()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn distance_one_examples() {
        let r = distance_one_structure_check(&unit_equilateral()).unwrap();
        assert!(r.conforming);
        assert_eq!(r.shapes.len(), 3);
        assert_eq!(r.shapes[0].on_line, 2);
        assert_eq!(
            distance_one_structure_check(&rectangle()),
            Err(Error::NoUnitDistance)
        );
    }

    #[test]
    fn container_examples() {
        let c = square_container_check(&facher3()).unwrap();
        assert!(c.pass);
        assert_eq!(c.p, 8);
        assert!(square_container_check(&unit_equilateral()).unwrap().pass);
        assert!(square_container_check(&rectangle()).unwrap().pass);
    }

    /// Rectangle, p = 5, M1 = (0,0): framed on its diagonal the other points
    /// have x ∈ {16/5, 5, 9/5}; with q = 8 strips of width 5/8 they fall in
    /// strips 5, 7 (last, closed) and 2.
    #[test]
    fn strip_example_rectangle() {
        assert_eq!(strip_count(5), 8);
        let s = strip_partition_check(&rectangle()).unwrap();
        assert_eq!(s.q, 8);
        assert_eq!(s.strip_counts, vec![0, 0, 1, 0, 0, 1, 0, 1]);
        assert!(s.pass);
        assert!(matches!(
            strip_partition_check(&unit_equilateral()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn replay_rectangle() {
        let t = replay_theorem_proof(&rectangle()).unwrap();
        assert_eq!(t.branch, Branch::Strip);
        assert_eq!(t.q, Some(8));
        assert!(t.pass, "{:#?}", t.inequalities);
        let last = t
            .inequalities
            .iter()
            .find(|i| i.name == "n^5 <= 5^5*p^4")
            .unwrap();
        assert_eq!(last.lhs, BigRational::from_integer(1024.into()));
        assert_eq!(last.rhs, BigRational::from_integer((3125 * 625).into()));
        assert!(matches!(
            replay_theorem_proof(&unit_equilateral()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn hyperbola_steps_on_synthetic_report() {
        let report = ExtremalReport {
            p: 100,
            closest_pair: (0, 1),
            closest: 2,
            second_pair: (2, 3),
            m: 2,
        };
        let steps = hyperbola_branch_steps(6, &report);
        assert!(steps.iter().all(|s| s.holds), "{steps:#?}");
        assert_eq!(
            steps.last().unwrap().lhs,
            BigRational::from_integer(7776.into())
        );
        let crowded = hyperbola_branch_steps(17, &report);
        assert!(
            !crowded
                .iter()
                .find(|s| s.name == "n <= 4*|M1M2|*|M3M4|")
                .unwrap()
                .holds
        );
    }

    #[test]
    fn replay_is_deterministic() {
        assert_eq!(
            replay_theorem_proof(&rectangle()),
            replay_theorem_proof(&rectangle())
        );
    }

    #[test]
    fn cube_root_examples() {
        assert!(cube_root_check(&rectangle()).unwrap().holds);
        // 1³ < 3: the bound does not reach down to three points
        assert!(!cube_root_check(&unit_equilateral()).unwrap().holds);
        assert!(cube_root_check(&facher3()).is_err());
    }
}
