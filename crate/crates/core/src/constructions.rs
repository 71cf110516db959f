//! Facher sets and circular sets.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::Characteristic;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

/// Apex `(0, h)` over the line points `(±x, 0)` for every leg `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacherSpec {
    pub h: u64,
    /// Legs `x ≥ 0` with `x² + h²` a square, ascending.
    pub legs: Vec<u64>,
}

impl FacherSpec {
    /// Legs from the factorizations `h² = e·f`, `e ≤ f`, `e ≡ f (mod 2)`:
    /// leg `(f − e)/2`, hypotenuse `(f + e)/2`.
    pub fn new(h: u64) -> Self {
        let h2 = h * h;
        let mut legs: Vec<u64> = (1..=h)
            .filter(|e| h2.is_multiple_of(*e))
            .map(|e| (e, h2 / e))
            .filter(|(e, f)| (f - e) % 2 == 0)
            .map(|(e, f)| (f - e) / 2)
            .collect();
        legs.sort_unstable();
        legs.dedup();
        FacherSpec { h, legs }
    }

    /// Apex first, then the line points by increasing abscissa.
    pub fn point_set(&self) -> PointSet {
        let mut xs: Vec<i64> = self
            .legs
            .iter()
            .flat_map(|&x| {
                if x == 0 {
                    vec![0]
                } else {
                    vec![-(x as i64), x as i64]
                }
            })
            .collect();
        xs.sort_unstable();
        let mut points = vec![Point::int(0, self.h as i64)];
        points.extend(xs.into_iter().map(|x| Point::int(x, 0)));
        PointSet::new(Characteristic::RATIONAL, points).expect("facher points are distinct")
    }

    pub fn diameter(&self) -> u64 {
        let widest = self.legs.last().copied().unwrap_or(0);
        let hyp = (widest * widest + self.h * self.h).sqrt();
        (2 * widest).max(hyp)
    }
}

/// Facher set with apex height `h`. For `h ∈ {1, 2}` there are no nonzero
/// legs and the result has two points.
pub fn facher(h: u64) -> PointSet {
    FacherSpec::new(h).point_set()
}

/// Half-angle with rational cosine and sine `(c, s)`, `c² + s² = 1`, `s ≥ 0`.
pub type HalfAngle = (BigRational, BigRational);

/// Points `R·(cos 2φ, sin 2φ)` on a circle of radius `R = scale / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularSpec {
    pub angles: Vec<HalfAngle>,
    /// The circle diameter `2R`; every chord `2R·|sin(φ_i − φ_j)|` is an integer.
    pub scale: BigInt,
}

/// Hypotenuse bound of the Pythagorean triples used by [`circular`].
pub const DEFAULT_MAX_HYPOTENUSE: u64 = 10_000;

/// Primitive triples `(a, b, c)`, `a < b`, ordered by `(c, a)`.
fn primitive_triples(max_c: u64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut m = 2u64;
    while m * m < max_c {
        for n in 1..m {
            if (m - n) % 2 == 1 && m.gcd(&n) == 1 {
                let c = m * m + n * n;
                if c > max_c {
                    continue;
                }
                let (p, q) = (m * m - n * n, 2 * m * n);
                out.push((p.min(q) as i64, p.max(q) as i64, c as i64));
            }
        }
        m += 1;
    }
    out.sort_by_key(|&(a, _, c)| (c, a));
    out
}

fn half_angle(c: i64, s: i64, den: i64) -> HalfAngle {
    (
        BigRational::new(c.into(), den.into()),
        BigRational::new(s.into(), den.into()),
    )
}

/// Distinct half-angles in `[0, π)`: `0`, `π/2`, then for every triple with
/// angle `θ = atan(a/b) < π/4` the angles `θ`, `π/2 + θ`, `π/2 − θ`, `π − θ`.
fn angle_pool(max_c: u64) -> impl Iterator<Item = HalfAngle> {
    [half_angle(1, 0, 1), half_angle(0, 1, 1)]
        .into_iter()
        .chain(primitive_triples(max_c).into_iter().flat_map(|(a, b, c)| {
            [
                half_angle(b, a, c),
                half_angle(-a, b, c),
                half_angle(a, b, c),
                half_angle(-b, a, c),
            ]
        }))
}

impl CircularSpec {
    pub fn new(n: usize, max_hypotenuse: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "circular sets need n >= 3, got {n}"
            )));
        }
        let angles: Vec<HalfAngle> = angle_pool(max_hypotenuse).take(n).collect();
        if angles.len() < n {
            return Err(Error::ConstructionBudgetExceeded {
                requested: n,
                found: angles.len(),
            });
        }
        let mut scale = BigInt::one();
        for i in 0..n {
            for j in i + 1..n {
                scale = scale.lcm(chord_sine(&angles[i], &angles[j]).denom());
            }
        }
        Ok(CircularSpec { angles, scale })
    }

    pub fn point_set(&self) -> PointSet {
        let radius = BigRational::new(self.scale.clone(), 2.into());
        let points = self
            .angles
            .iter()
            .map(|(c, s)| {
                let x = &radius * (c * c - s * s);
                let y = &radius * BigRational::from_integer(2.into()) * s * c;
                Point::new(x, y)
            })
            .collect();
        PointSet::new(Characteristic::RATIONAL, points)
            .expect("distinct half-angles give distinct points")
    }
}

/// `|sin(φ − ψ)|`.
fn chord_sine(a: &HalfAngle, b: &HalfAngle) -> BigRational {
    (&a.1 * &b.0 - &a.0 * &b.1).abs()
}

/// An `n`-point integral set on one circle (hence without collinear triples).
/// No claim is made about the diameter being small.
pub fn circular(n: usize) -> Result<PointSet> {
    Ok(CircularSpec::new(n, DEFAULT_MAX_HYPOTENUSE)?.point_set())
}
