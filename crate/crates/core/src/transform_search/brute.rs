use super::{node_volume, SearchResult, TransformMatrix};
use crate::error::{Error, Result};
use crate::lattice_geometry::{convex_hull, extent};
use crate::point::{IntMatrix, IntPoint};

/// Settings for [`brute_force_optimize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceOptions {
    /// Entries range over `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    /// Only consider matrices with this `|det|`.
    pub det_abs: Option<u128>,
    /// Cap on the number of row combinations examined.
    pub budget: u128,
}

impl BruteForceOptions {
    pub fn new(entry_bound: i64) -> Self {
        BruteForceOptions {
            entry_bound,
            det_abs: None,
            budget: 50_000_000,
        }
    }
}

/// Exhaustive minimum node volume over matrices with entries bounded by
/// `entry_bound`.
pub fn brute_force_optimize(points: &[IntPoint], entry_bound: i64) -> Result<SearchResult> {
    brute_force_optimize_with(points, BruteForceOptions::new(entry_bound))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Rows are sign-canonical and taken as increasing combinations, so each
/// matrix is visited once up to row order and row signs (neither changes
/// the volume or `|det|`). Ties go to the first combination in
/// `(extent, vector)` order.
pub fn brute_force_optimize_with(
    points: &[IntPoint],
    opts: BruteForceOptions,
) -> Result<SearchResult> {
    let d = points
        .first()
        .map(IntPoint::dim)
        .ok_or_else(|| Error::DegenerateHull("no points".into()))?;
    if !(2..=3).contains(&d) || opts.entry_bound < 1 {
        return Err(Error::PreconditionViolated(
            "need d in {2, 3} and entry_bound >= 1".into(),
        ));
    }
    let hull = convex_hull(points, d)?;

    let b = opts.entry_bound;
    let side = (2 * b + 1) as usize;
    let mut rows: Vec<(i64, IntPoint)> = Vec::new();
    for idx in 0..side.pow(d as u32) {
        let mut r = idx;
        let coords: Vec<i64> = (0..d)
            .map(|_| {
                let c = (r % side) as i64 - b;
                r /= side;
                c
            })
            .collect();
        let v = IntPoint::new(&coords);
        if !v.is_zero() && v.is_sign_canonical() {
            rows.push((extent(&v, &hull)?, v));
        }
    }
    rows.sort();

    let count = binomial(rows.len() as u128, d as u128);
    if count > opts.budget {
        return Err(Error::BudgetExceeded {
            count,
            budget: opts.budget,
        });
    }

    let mut best: Option<(u128, Vec<usize>)> = None;
    let mut idx: Vec<usize> = (0..d).collect();
    let n = rows.len();
    loop {
        let vol = idx.iter().try_fold(1u128, |acc, &i| acc.checked_mul(rows[i].0 as u128));
        let better = match (&best, vol) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some((bv, _)), Some(v)) => v < *bv,
        };
        if better {
            let m: Vec<IntPoint> = idx.iter().map(|&i| rows[i].1.clone()).collect();
            let det = IntMatrix::from_rows(&m).det().unsigned_abs();
            if det != 0 && opts.det_abs.is_none_or(|want| want == det) {
                best = Some((vol.expect("checked"), idx.clone()));
            }
        }
        // next increasing combination
        let mut k = d;
        while k > 0 && idx[k - 1] == n - d + k - 1 {
            k -= 1;
        }
        if k == 0 {
            break;
        }
        idx[k - 1] += 1;
        for j in k..d {
            idx[j] = idx[j - 1] + 1;
        }
    }

    let (_, idx) = best.ok_or(Error::InsufficientSpan(d))?;
    let extents: Vec<i64> = idx.iter().map(|&i| rows[i].0).collect();
    let matrix = TransformMatrix::new(idx.iter().map(|&i| rows[i].1.clone()).collect())?;
    Ok(SearchResult {
        det_abs: matrix.det().unsigned_abs(),
        node_volume: node_volume(&extents)?,
        matrix,
        extents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn planar_bound_8() {
        let r = brute_force_optimize(&fixtures::planar_points(), 8).unwrap();
        assert_eq!(r.node_volume, 30);
    }

    #[test]
    fn plane_example_both_determinants() {
        let pts = fixtures::det2_plane_points();
        for det in [1, 2] {
            let opts = BruteForceOptions {
                det_abs: Some(det),
                ..BruteForceOptions::new(3)
            };
            let r = brute_force_optimize_with(&pts, opts).unwrap();
            assert_eq!((r.node_volume, r.det_abs), (9, det));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = BruteForceOptions {
            budget: 10,
            ..BruteForceOptions::new(2)
        };
        assert!(matches!(
            brute_force_optimize_with(&fixtures::planar_points(), opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(62, 3), 37820);
        assert_eq!(binomial(5, 0), 1);
    }
}
