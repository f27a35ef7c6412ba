use std::collections::BTreeMap;

use super::{greedy_key, greedy_sorted, CandidateVector};
use crate::error::Result;
use crate::integer_points::{
    parallelepiped_to_tetrahedra, subdivide_parallelogram, subdivide_simplex, Barycentric,
    Simplex,
};
use crate::lattice_geometry::{extent, AntipodalCone, Hull};
use crate::point::{narrow, IntPoint};

/// Cell budget for the direct scan of a truncated origin simplex; larger
/// regions fall back to subdivision.
pub const TRUNCATED_SCAN_BUDGET: u128 = 1 << 22;

#[derive(Default)]
struct Collector {
    found: BTreeMap<IntPoint, CandidateVector>,
}

impl Collector {
    /// Records the direction of the cone point `x` (nonzero).
    fn add(&mut self, x: &IntPoint, cone: &AntipodalCone, id: usize) -> Result<()> {
        let p = x.primitive();
        let e = narrow(cone.extent_of(&p), "candidate extent")?;
        let v = p.sign_canonical();
        let c = self.found.entry(v.clone()).or_insert(CandidateVector {
            v,
            extent: e,
            cone_id: Some(id),
        });
        if c.cone_id.is_some_and(|old| old > id) {
            c.cone_id = Some(id);
        }
        Ok(())
    }

    fn sorted(&self) -> Vec<&CandidateVector> {
        let mut all: Vec<&CandidateVector> = self.found.values().collect();
        all.sort_by(|a, b| greedy_key(a).cmp(&greedy_key(b)));
        all
    }

    /// Largest extent in the greedy basis of everything found so far.
    fn incumbent_max(&self, d: usize) -> Option<i64> {
        let basis = greedy_sorted(self.sorted(), d);
        (basis.len() == d).then(|| basis.iter().map(|c| c.extent).max().unwrap_or(1))
    }
}

/// Candidate projection directions: every lattice point of the
/// parallelogram (2D) or parallelepiped (3D) spanned by each cone's
/// generators, except the origin and the far corner, reduced to primitive
/// sign-canonical form and deduplicated.
///
/// With `prune = Some(t)` the coordinate axes seed an incumbent greedy basis
/// and any simplex whose vertices all have extent at least
/// `min(t, largest incumbent extent)` is skipped; extent is affine on a cone,
/// so such a simplex holds nothing that could improve the basis. The
/// incumbent is refreshed after each cone. The greedy basis over the pruned
/// output has the same node volume as over the full output.
pub fn enumerate_candidates(
    hull: &Hull,
    cones: &[AntipodalCone],
    prune: Option<i64>,
) -> Result<Vec<CandidateVector>> {
    let d = hull.dimension();
    let mut col = Collector::default();
    let mut order: Vec<usize> = (0..cones.len()).collect();

    if prune.is_some() {
        for i in 0..d {
            let v = IntPoint::unit(d, i);
            let e = extent(&v, hull)?;
            col.found.insert(
                v.clone(),
                CandidateVector {
                    v,
                    extent: e,
                    cone_id: None,
                },
            );
        }
        let min_gen = |c: &AntipodalCone| c.generators.iter().map(|g| c.extent_of(g)).min();
        order.sort_by_key(|&i| (min_gen(&cones[i]), i));
    }

    for id in order {
        let threshold = match prune {
            None => None,
            Some(t) => {
                let inc = col.incumbent_max(d).unwrap_or(i64::MAX);
                Some(t.min(inc) as i128)
            }
        };
        enumerate_cone(&cones[id], id, threshold, &mut col)?;
    }

    Ok(col.sorted().into_iter().cloned().collect())
}

fn enumerate_cone(
    cone: &AntipodalCone,
    id: usize,
    threshold: Option<i128>,
    col: &mut Collector,
) -> Result<()> {
    let g = &cone.generators;
    let origin = IntPoint::zeros(g[0].dim());
    let far = g.iter().try_fold(origin.clone(), |acc, x| acc.checked_add(x))?;
    let mut stack: Vec<Simplex> = match g.len() {
        2 => subdivide_parallelogram(&origin, &g[0], &g[1])?.to_vec(),
        _ => parallelepiped_to_tetrahedra(&origin, &g[0], &g[1], &g[2])?.to_vec(),
    };

    while let Some(s) = stack.pop() {
        let v = s.vertices();
        if let Some(t) = threshold {
            let ext: Vec<i128> = v.iter().map(|x| cone.extent_of(x)).collect();
            if ext.iter().all(|&e| e >= t) {
                continue;
            }
            let at_origin = v.iter().any(IntPoint::is_zero);
            let rest_pruned = v.iter().zip(&ext).all(|(x, &e)| x.is_zero() || e >= t);
            if at_origin && rest_pruned && truncated_scan(&s, cone, id, t, col)? {
                continue;
            }
        }
        for x in v.iter().filter(|x| !x.is_zero() && **x != far) {
            col.add(x, cone, id)?;
        }
        stack.extend(subdivide_simplex(&s)?);
    }
    Ok(())
}

/// Collects the lattice points `x != 0` of an origin simplex with
/// `extent(x) < t` by scanning the bounding box of that truncated region.
/// Returns `false` without collecting when the box exceeds the budget.
fn truncated_scan(
    s: &Simplex,
    cone: &AntipodalCone,
    id: usize,
    t: i128,
    col: &mut Collector,
) -> Result<bool> {
    // extent(x) = x . diff + 1 < t  <=>  x . diff <= t - 2
    let bound = t - 2;
    if bound < 1 {
        return Ok(true);
    }
    let d = s.ambient_dim();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for y in s.vertices().iter().filter(|y| !y.is_zero()) {
        let den = y.dot(&cone.diff);
        for i in 0..d {
            let num = bound * y[i] as i128;
            lo[i] = lo[i].min(narrow(num.div_euclid(den), "truncated scan")?);
            hi[i] = hi[i].max(narrow((num + den - 1).div_euclid(den), "truncated scan")?);
        }
    }
    let cells: u128 = (0..d).map(|i| (hi[i] - lo[i] + 1) as u128).product();
    if cells > TRUNCATED_SCAN_BUDGET {
        return Ok(false);
    }

    let bary = Barycentric::new(s)?;
    let mut cur = lo.clone();
    loop {
        let x = IntPoint::new(&cur);
        if !x.is_zero() && x.dot(&cone.diff) <= bound && bary.classify(&x).is_some() {
            col.add(&x, cone, id)?;
        }
        let mut i = 0;
        while i < d && cur[i] == hi[i] {
            cur[i] = lo[i];
            i += 1;
        }
        if i == d {
            break;
        }
        cur[i] += 1;
    }
    Ok(true)
}
