//! Exact-arithmetic toolkit for planar integral point sets.
//!
//! Every point set lives in a single quadratic field: a point is stored as a
//! pair of rationals `(x, r)` standing for the plane point `(x, r·√k)`, where
//! `k` is a squarefree integer shared by the whole set. All predicates
//! (integral distance, collinearity, concyclicity, strip membership) reduce to
//! exact rational or integer tests; no floating point is used in any decision.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] – integer square roots and squarefree decomposition.
//! * [`geometry`] – points, point sets, predicates and set-level metrics.
//! * [`enumeration`] – candidate pools for a fixed diameter and canonical forms.
//! * [`search`] – exhaustive clique search for minimal-diameter sets.
//! * [`constructions`] – facher and circular families.
//! * [`bounds`] – bound evaluators, lemma checkers and the proof replay.
//!
//! With the default `parallel` feature the data-parallel loops run on rayon;
//! [`Exec::Sequential`] selects the plain iterator path at runtime.

pub mod arith;
pub mod bounds;
pub mod constructions;
pub mod enumeration;
mod error;
mod exec;
pub mod geometry;
pub mod search;

pub use arith::{is_perfect_square, squarefree_decompose, Characteristic, DEFAULT_FACTOR_BOUND};
pub use error::{Error, Result};
pub use exec::Exec;
pub use geometry::{
    classify_position, collinear, concyclic, dist_sq, extremal_distances, integral_distance,
    validate, ExtremalReport, Point, PointSet, PositionClass, ValidationReport,
};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
