//! Integer square roots and squarefree decomposition.
//!
//! Ordinates of candidate points are stored as `r·√k` with `k` squarefree, so
//! every enumeration step needs `q = r²·k` for some positive rational `q`.
//! Factorization is by trial division up to a configurable bound; residual
//! cofactors above the bound are classified when that is provable and rejected
//! otherwise.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Default trial-division bound for [`squarefree_decompose`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Squarefree integer `k ≥ 1`; all ordinates of a set are rational multiples of `√k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Characteristic(u64);

impl Characteristic {
    /// `k = 1`: purely rational coordinates.
    pub const RATIONAL: Characteristic = Characteristic(1);

    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::NonPositive("0".into()));
        }
        if !is_squarefree(k) {
            return Err(Error::NotSquarefree(k));
        }
        Ok(Characteristic(k))
    }

    pub(crate) const fn new_unchecked(k: u64) -> Self {
        Characteristic(k)
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Squarefreeness of a machine integer by trial division up to its cube root.
///
/// After removing all primes `p ≤ ∛k` the cofactor has at most two prime
/// factors, so it is squarefree iff it is not a perfect square.
fn is_squarefree(k: u64) -> bool {
    let mut rest = k;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= k {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    rest == 1 || perfect_square_u128(rest as u128).is_none()
}

/// Exact integer square root: `Some(s)` with `s² = v` when `v` is a perfect square.
pub fn is_perfect_square(v: &BigUint) -> Option<BigUint> {
    let s = v.sqrt();
    if &s * &s == *v {
        Some(s)
    } else {
        None
    }
}

pub(crate) fn perfect_square_u128(v: u128) -> Option<u128> {
    let s = v.sqrt();
    (s * s == v).then_some(s)
}

/// `n = square² · k` with `k` squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SquarefreeSplit {
    pub square: u128,
    pub k: u64,
}

fn limit_error(value: u128, cofactor: u128, bound: u64) -> Error {
    Error::FactorizationLimitExceeded {
        value: value.to_string(),
        cofactor: cofactor.to_string(),
        bound,
    }
}

/// Squarefree split of a positive machine integer by trial division up to `bound`.
pub(crate) fn squarefree_split(n: u128, bound: u64) -> Result<SquarefreeSplit> {
    if n == 0 {
        return Err(Error::NonPositive("0".into()));
    }
    let bound = bound.max(2) as u128;
    let mut rest = n;
    let mut square: u128 = 1;
    let mut k: u128 = 1;
    let mut p: u128 = 2;
    while p <= bound && p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                k *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if p * p > rest {
            // rest is prime
            k *= rest;
        } else {
            // every prime factor of rest exceeds the bound
            let b2 = bound * bound;
            match perfect_square_u128(rest) {
                Some(s) if s < b2 => square *= s,
                Some(_) => return Err(limit_error(n, rest, bound as u64)),
                None if rest / b2 < bound => k *= rest,
                None => return Err(limit_error(n, rest, bound as u64)),
            }
        }
    }
    let k = u64::try_from(k).map_err(|_| limit_error(n, k, bound as u64))?;
    Ok(SquarefreeSplit { square, k })
}

/// Write a positive rational `q` as `r²·k` with `r > 0` rational and `k` squarefree.
///
/// ```
/// use ipset_core::{squarefree_decompose, BigRational, DEFAULT_FACTOR_BOUND};
/// let q = BigRational::new(18.into(), 25.into());
/// let (r, k) = squarefree_decompose(&q, DEFAULT_FACTOR_BOUND).unwrap();
/// assert_eq!(r, BigRational::new(3.into(), 5.into()));
/// assert_eq!(k.get(), 2);
/// ```
pub fn squarefree_decompose(q: &BigRational, bound: u64) -> Result<(BigRational, Characteristic)> {
    if !q.is_positive() {
        return Err(Error::NonPositive(q.to_string()));
    }
    // q = N/D = (N·D)/D², so decompose the integer N·D.
    let numer = q.numer().magnitude();
    let denom = q.denom().magnitude();
    let product = numer * denom;
    let n = product
        .to_u128()
        .ok_or_else(|| Error::FactorizationLimitExceeded {
            value: product.to_string(),
            cofactor: product.to_string(),
            bound,
        })?;
    let split = squarefree_split(n, bound)?;
    let r = BigRational::new(split.square.into(), denom.clone().into());
    Ok((r, Characteristic(split.k)))
}

/// `r²·k` back as a rational; used to check decompositions.
pub fn recompose(r: &BigRational, k: Characteristic) -> BigRational {
    r * r * BigRational::from_integer(k.get().into())
}
