//! Exhaustive search for integral point sets of a given diameter.
//!
//! A set of diameter exactly `d` can be moved so that a diameter pair sits at
//! `O = (0,0)`, `A = (d,0)`; the remaining points then come from the candidate
//! pool of `d`. Two off-line candidates with different characteristics are
//! never at integral distance, so cliques are searched independently inside
//! each characteristic class (joined with the on-line candidates when
//! collinear triples are allowed).
//!
//! Within a class the search is a fixed-size clique enumeration over a bitset
//! adjacency matrix: vertices ordered by decreasing degree, greedy colouring
//! as an upper bound on the clique that can still be added, and incremental
//! collinearity / concyclicity filters applied as each vertex is added. The
//! predicates in this module work on the scaled integer coordinates of
//! [`Candidate`]; emitted sets are built from the exact rational points and
//! canonicalized.

use std::collections::BTreeSet;

use num_integer::Roots;

use crate::arith::{Characteristic, DEFAULT_FACTOR_BOUND};
use crate::enumeration::{
    candidate_points_with, canonicalize, Candidate, EnumerationOptions, Scaled,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{PointSet, PositionClass};

/// Largest diameter the integer predicates are sized for.
pub const MAX_SEARCH_DIAMETER: u64 = 10_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub exec: Exec,
    pub factor_bound: u64,
    /// Collect every canonical witness rather than the first one.
    pub all_witnesses: bool,
    /// First diameter tried by [`minimal_diameter_with`]; diameters below it
    /// are taken as already refuted.
    pub start_diameter: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exec: Exec::default(),
            factor_bound: DEFAULT_FACTOR_BOUND,
            all_witnesses: true,
            start_diameter: 1,
        }
    }
}

/// Outcome of a minimal-diameter search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub constraint: PositionClass,
    /// Smallest diameter with a witness.
    pub d: u64,
    /// Canonical witnesses of diameter `d`, sorted.
    pub witnesses: Vec<PointSet>,
    /// Every diameter up to this value was searched exhaustively without success.
    pub exhausted_up_to: u64,
}

fn k_of(p: &Candidate, q: &Candidate) -> Option<u64> {
    match (p.on_line, q.on_line) {
        (false, false) if p.k != q.k => None,
        (false, _) => Some(p.k.get()),
        (true, false) => Some(q.k.get()),
        (true, true) => Some(1),
    }
}

fn integral_scaled_distance(p: Scaled, q: Scaled, k: u64, d: u64) -> Option<u64> {
    let dx = (p.x - q.x) as i128;
    let ds = (p.s - q.s) as i128;
    let v = (dx * dx + k as i128 * ds * ds) as u128;
    let t = v.sqrt();
    let two_d = 2 * d as u128;
    (t * t == v && t.is_multiple_of(two_d)).then(|| (t / two_d) as u64)
}

/// Whether two candidates of the pool for `d` can belong to one set of diameter `d`.
pub fn compatible(p: &Candidate, q: &Candidate, d: u64) -> bool {
    let Some(k) = k_of(p, q) else {
        return false;
    };
    matches!(integral_scaled_distance(p.scaled, q.scaled, k, d), Some(dist) if (1..=d).contains(&dist))
}

fn orientation(p: Scaled, q: Scaled, r: Scaled) -> i128 {
    (q.x - p.x) as i128 * (r.s - p.s) as i128 - (r.x - p.x) as i128 * (q.s - p.s) as i128
}

/// Rational part of the circle determinant, on scaled integer coordinates.
fn circle_det(pts: [Scaled; 4], k: u64) -> i128 {
    let k = k as i128;
    let lift = |p: Scaled| p.x as i128 * p.x as i128 + k * p.s as i128 * p.s as i128;
    let b = pts[3];
    let rows: Vec<[i128; 3]> = pts[..3]
        .iter()
        .map(|&p| [lift(p) - lift(b), (p.x - b.x) as i128, (p.s - b.s) as i128])
        .collect();
    let m = |i: usize, j: usize| rows[i][j];
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset(vec![0; len.div_ceil(64)])
    }

    fn full(len: usize) -> Self {
        let mut b = Bitset::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn difference_in_place(&mut self, other: &Bitset) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + bit
                })
            })
        })
    }
}

/// Compatibility graph of one characteristic class for diameter `d`.
///
/// The base points `O` and `A` are adjacent to every candidate by
/// construction and are kept implicit. Vertices are stored in decreasing
/// degree order.
#[derive(Clone, Debug)]
pub struct CompatibilityGraph {
    pub d: u64,
    pub k: Characteristic,
    vertices: Vec<Candidate>,
    adjacency: Vec<Bitset>,
}

impl CompatibilityGraph {
    pub fn new(d: u64, k: Characteristic, candidates: Vec<Candidate>) -> Self {
        let n = candidates.len();
        let mut adj = vec![Bitset::empty(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if compatible(&candidates[i], &candidates[j], d) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        // stable sort keeps the pool order among equal degrees
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(adj[i].count()));
        let mut position = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let adjacency = order
            .iter()
            .map(|&old| {
                let mut row = Bitset::empty(n);
                for j in adj[old].iter() {
                    row.insert(position[j]);
                }
                row
            })
            .collect();
        let vertices = order.iter().map(|&old| candidates[old].clone()).collect();
        CompatibilityGraph {
            d,
            k,
            vertices,
            adjacency,
        }
    }

    pub fn vertices(&self) -> &[Candidate] {
        &self.vertices
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bitset::count).sum::<usize>() / 2
    }

    /// Greedy colouring of `set`; the colour count bounds any clique inside it.
    fn colour_bound(&self, set: &Bitset) -> usize {
        let mut uncoloured = set.clone();
        let mut colours = 0;
        while !uncoloured.is_empty() {
            colours += 1;
            let mut open = uncoloured.clone();
            while let Some(v) = open.first() {
                open.remove(v);
                uncoloured.remove(v);
                open.difference_in_place(&self.adjacency[v]);
            }
        }
        colours
    }
}

struct CliqueSearch<'a> {
    graph: &'a CompatibilityGraph,
    need: usize,
    constraint: PositionClass,
    first_only: bool,
    chosen: Vec<Scaled>,
    found: Vec<Vec<usize>>,
}

impl CliqueSearch<'_> {
    /// Whether `v` can join the points chosen so far (including `O`, `A`).
    fn admissible(&self, v: Scaled) -> bool {
        if self.constraint == PositionClass::Any {
            return true;
        }
        let pts = &self.chosen;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if orientation(pts[i], pts[j], v) == 0 {
                    return false;
                }
            }
        }
        if self.constraint == PositionClass::General {
            let k = self.graph.k.get();
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    for l in j + 1..pts.len() {
                        if circle_det([pts[i], pts[j], pts[l], v], k) == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn emit(&mut self, clique: &[usize]) {
        // a set on the base line alone is not an integral point set
        if clique.iter().any(|&v| !self.graph.vertices[v].on_line) {
            self.found.push(clique.to_vec());
        }
    }

    /// Returns `true` once the search should stop.
    fn extend(&mut self, clique: &mut Vec<usize>, mut candidates: Bitset) -> bool {
        if clique.len() == self.need {
            self.emit(clique);
            return self.first_only && !self.found.is_empty();
        }
        let missing = self.need - clique.len();
        if candidates.count() < missing || self.graph.colour_bound(&candidates) < missing {
            return false;
        }
        while let Some(v) = candidates.first() {
            candidates.remove(v);
            if candidates.count() + 1 < missing {
                break;
            }
            let vs = self.graph.vertices[v].scaled;
            if !self.admissible(vs) {
                continue;
            }
            clique.push(v);
            self.chosen.push(vs);
            let next = candidates.intersect(&self.graph.adjacency[v]);
            let stop = self.extend(clique, next);
            self.chosen.pop();
            clique.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

/// Cliques of `need` vertices of `graph` that, together with `O` and `A`,
/// satisfy `constraint` and contain an off-line point. Vertex indices refer
/// to [`CompatibilityGraph::vertices`].
fn class_cliques(
    graph: &CompatibilityGraph,
    need: usize,
    constraint: PositionClass,
    first_only: bool,
) -> Vec<Vec<usize>> {
    let d = graph.d;
    let mut search = CliqueSearch {
        graph,
        need,
        constraint,
        first_only,
        chosen: vec![Candidate::origin(d).scaled, Candidate::far_end(d).scaled],
        found: Vec::new(),
    };
    search.extend(
        &mut Vec::with_capacity(need),
        Bitset::full(graph.vertices.len()),
    );
    search.found
}

fn to_point_set(graph: &CompatibilityGraph, clique: &[usize]) -> Result<PointSet> {
    let d = graph.d;
    let mut points = vec![Candidate::origin(d).point, Candidate::far_end(d).point];
    points.extend(clique.iter().map(|&v| graph.vertices[v].point.clone()));
    canonicalize(&PointSet::new(graph.k, points)?)
}

/// Characteristic classes worth searching for `n`-point sets.
fn class_graphs(
    n: usize,
    d: u64,
    constraint: PositionClass,
    options: &SearchOptions,
) -> Result<Vec<CompatibilityGraph>> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 3, got {n}"
        )));
    }
    if d == 0 || d > MAX_SEARCH_DIAMETER {
        return Err(Error::InvalidParameter(format!(
            "diameter must be in 1..={MAX_SEARCH_DIAMETER}, got {d}"
        )));
    }
    let pool = candidate_points_with(
        d,
        &EnumerationOptions {
            exec: options.exec,
            factor_bound: options.factor_bound,
        },
    )?;
    let with_line = constraint == PositionClass::Any;
    let need = n - 2;
    let classes: Vec<(Characteristic, Vec<Candidate>)> = pool
        .by_characteristic
        .iter()
        .map(|(&k, list)| {
            let mut vs = list.clone();
            if with_line {
                vs.extend(pool.on_line.iter().cloned());
            }
            (k, vs)
        })
        .filter(|(_, vs)| vs.len() >= need)
        .collect();
    Ok(options.exec.map(&classes, |(k, vs)| {
        CompatibilityGraph::new(d, *k, vs.clone())
    }))
}

/// Every canonical `n`-point set of diameter exactly `d` satisfying `constraint`
/// (only the first one when `all` is false).
pub fn find_sets(n: usize, d: u64, constraint: PositionClass, all: bool) -> Result<Vec<PointSet>> {
    find_sets_with(
        n,
        d,
        constraint,
        &SearchOptions {
            all_witnesses: all,
            ..Default::default()
        },
    )
}

pub fn find_sets_with(
    n: usize,
    d: u64,
    constraint: PositionClass,
    options: &SearchOptions,
) -> Result<Vec<PointSet>> {
    let graphs = class_graphs(n, d, constraint, options)?;
    let need = n - 2;
    if !options.all_witnesses {
        let first = options.exec.find_map_first(&graphs, |g| {
            class_cliques(g, need, constraint, true)
                .first()
                .map(|c| to_point_set(g, c))
        });
        return first.transpose().map(|w| w.into_iter().collect());
    }
    let per_class = options.exec.map(&graphs, |g| {
        class_cliques(g, need, constraint, false)
            .iter()
            .map(|c| to_point_set(g, c))
            .collect::<Result<BTreeSet<_>>>()
    });
    let mut all = BTreeSet::new();
    for class in per_class {
        all.extend(class?);
    }
    Ok(all.into_iter().collect())
}

/// Every canonical set of diameter exactly `d` (all cardinalities `≥ 3`) satisfying `constraint`.
pub fn all_sets_with(
    d: u64,
    constraint: PositionClass,
    options: &SearchOptions,
) -> Result<Vec<PointSet>> {
    let options = SearchOptions {
        all_witnesses: true,
        ..*options
    };
    let mut out = Vec::new();
    for n in 3.. {
        // an (n+1)-set minus a non-base point keeping an off-line point is an n-set
        let sets = find_sets_with(n, d, constraint, &options)?;
        if sets.is_empty() {
            break;
        }
        out.extend(sets);
    }
    Ok(out)
}

/// Smallest diameter `≤ d_max` of an `n`-point set satisfying `constraint`.
pub fn minimal_diameter(n: usize, constraint: PositionClass, d_max: u64) -> Result<SearchResult> {
    minimal_diameter_with(n, constraint, d_max, &SearchOptions::default())
}

pub fn minimal_diameter_with(
    n: usize,
    constraint: PositionClass,
    d_max: u64,
    options: &SearchOptions,
) -> Result<SearchResult> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 3, got {n}"
        )));
    }
    if d_max == 0 {
        return Err(Error::InvalidParameter("d_max must be positive".into()));
    }
    let start = options.start_diameter.max(1);
    for d in start..=d_max {
        let witnesses = find_sets_with(n, d, constraint, options)?;
        if !witnesses.is_empty() {
            return Ok(SearchResult {
                n,
                constraint,
                d,
                witnesses,
                exhausted_up_to: d - 1,
            });
        }
    }
    Err(Error::BudgetExceeded {
        n,
        constraint,
        exhausted_up_to: d_max.max(start - 1),
    })
}
