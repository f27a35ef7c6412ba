//! Choosing the integer transformation whose rows give the smallest node box.
//!
//! The objective is the node volume `prod_i (max_x r_i.x - min_x r_i.x + 1)`.
//! Rows are chosen greedily from candidate directions in ascending extent:
//! linear independence forms a matroid, and greedy returns a basis whose
//! sorted extents are componentwise minimal, so it minimizes the sum of log
//! extents (and the product) over all bases drawn from the candidates.

mod brute;
mod candidates;
mod reduce;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_geometry::{antipodal_cones, convex_hull, extent, Hull};
use crate::point::{IntMatrix, IntPoint};

pub use brute::{brute_force_optimize, brute_force_optimize_with, BruteForceOptions};
pub use candidates::{enumerate_candidates, TRUNCATED_SCAN_BUDGET};
pub use reduce::reduce_determinant;

/// A projection direction and its node extent over the hull.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CandidateVector {
    pub v: IntPoint,
    pub extent: i64,
    /// The antipodal cone it came from; `None` for the coordinate axes that
    /// seed the pruning incumbent.
    pub cone_id: Option<usize>,
}

/// Square integer matrix with nonzero determinant; rows are projection
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformMatrix {
    rows: Vec<IntPoint>,
    det: i128,
}

impl TransformMatrix {
    pub fn new(rows: Vec<IntPoint>) -> Result<Self> {
        let d = rows.len();
        if let Some(r) = rows.iter().find(|r| r.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: r.dim(),
            });
        }
        let det = IntMatrix::from_rows(&rows).det();
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(TransformMatrix { rows, det })
    }

    pub fn from_nested(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| IntPoint::new(r)).collect())
    }

    pub fn identity(d: usize) -> Self {
        Self::new((0..d).map(|i| IntPoint::unit(d, i)).collect()).expect("identity")
    }

    pub fn rows(&self) -> &[IntPoint] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn det(&self) -> i128 {
        self.det
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows)
    }

    /// `A x` exactly.
    pub fn apply(&self, x: &IntPoint) -> Result<IntPoint> {
        self.matrix().mul_point(x)
    }
}

/// A transformation with its per-row node extents over a hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub matrix: TransformMatrix,
    pub extents: Vec<i64>,
    pub node_volume: u128,
    pub det_abs: u128,
}

impl SearchResult {
    /// Extents of every row of `matrix` over `hull`.
    pub fn evaluate(matrix: TransformMatrix, hull: &Hull) -> Result<Self> {
        let extents = matrix
            .rows()
            .iter()
            .map(|r| extent(r, hull))
            .collect::<Result<Vec<_>>>()?;
        let node_volume = node_volume(&extents)?;
        Ok(SearchResult {
            det_abs: matrix.det().unsigned_abs(),
            matrix,
            extents,
            node_volume,
        })
    }
}

pub(crate) fn node_volume(extents: &[i64]) -> Result<u128> {
    extents.iter().try_fold(1u128, |acc, &e| {
        acc.checked_mul(e as u128).ok_or(Error::Overflow("node volume"))
    })
}

/// Greedy order: ascending extent, then lexicographically smaller vector.
pub(crate) fn greedy_key(c: &CandidateVector) -> (i64, &IntPoint) {
    (c.extent, &c.v)
}

/// Greedy basis over candidates already sorted by [`greedy_key`].
pub(crate) fn greedy_sorted<'a>(
    sorted: impl IntoIterator<Item = &'a CandidateVector>,
    d: usize,
) -> Vec<&'a CandidateVector> {
    let mut chosen: Vec<&CandidateVector> = Vec::with_capacity(d);
    let mut rows: Vec<IntPoint> = Vec::with_capacity(d);
    for c in sorted {
        rows.push(c.v.clone());
        if IntMatrix::from_rows(&rows).rank() == rows.len() {
            chosen.push(c);
            if chosen.len() == d {
                break;
            }
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Minimum-volume basis among the candidates (matroid greedy by extent,
/// ties broken by the lexicographically smaller vector).
pub fn select_basis(candidates: &[CandidateVector], d: usize) -> Result<SearchResult> {
    let mut sorted: Vec<&CandidateVector> = candidates.iter().filter(|c| c.v.dim() == d).collect();
    sorted.sort_by(|a, b| greedy_key(a).cmp(&greedy_key(b)));
    let chosen = greedy_sorted(sorted, d);
    if chosen.len() < d {
        return Err(Error::InsufficientSpan(d));
    }
    let extents: Vec<i64> = chosen.iter().map(|c| c.extent).collect();
    let matrix = TransformMatrix::new(chosen.iter().map(|c| c.v.clone()).collect())?;
    Ok(SearchResult {
        det_abs: matrix.det().unsigned_abs(),
        node_volume: node_volume(&extents)?,
        matrix,
        extents,
    })
}

/// Full pipeline on a hull: antipodal cones, pruned candidate enumeration,
/// greedy basis, then determinant reduction (which never grows an extent).
pub fn optimize_hull(hull: &Hull) -> Result<SearchResult> {
    let d = hull.dimension();
    let cones = antipodal_cones(hull)?;
    let candidates = enumerate_candidates(hull, &cones, Some(i64::MAX))?;
    let greedy = select_basis(&candidates, d)?;
    let reduced = reduce_determinant(&greedy.matrix, hull)?;
    let result = SearchResult::evaluate(reduced, hull)?;
    debug_assert!(result.node_volume <= greedy.node_volume);
    Ok(result)
}

/// Integer transformation minimizing the node volume of `points`' box.
pub fn optimize_transform(points: &[IntPoint]) -> Result<SearchResult> {
    let d = points
        .first()
        .map(IntPoint::dim)
        .ok_or_else(|| Error::DegenerateHull("no points".into()))?;
    optimize_hull(&convex_hull(points, d)?)
}
