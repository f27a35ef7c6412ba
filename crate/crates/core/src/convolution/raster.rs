use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LatticeSpec;
use crate::error::{Error, Result};
use crate::point::IntPoint;
use crate::transform_search::TransformMatrix;

/// Node indices beyond this magnitude are rejected before any integer math.
const MAX_NODE: f64 = (1u64 << 40) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RasterMode {
    /// All cell corners, weighted by the multilinear interpolation weights.
    Multilinear,
    /// One corner per point, drawn with probability equal to its multilinear
    /// weight.
    Nearest { seed: u64 },
}

/// Each point as a weighted combination of lattice nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRaster {
    /// Per input point: `(node, weight)` pairs with positive weights
    /// summing to 1.
    pub entries: Vec<Vec<(IntPoint, f64)>>,
    /// Every referenced node, sorted and deduplicated.
    pub active_nodes: Vec<IntPoint>,
}

fn cell_corners(p: &[f64], lattice: &LatticeSpec, index: usize) -> Result<Vec<(IntPoint, f64)>> {
    let d = lattice.dim();
    if p.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: p.len(),
        });
    }
    let mut base = Vec::with_capacity(d);
    let mut frac = Vec::with_capacity(d);
    for (&x, &o) in p.iter().zip(lattice.origin()) {
        let t = (x - o) / lattice.step();
        if !t.is_finite() {
            return Err(Error::NonFiniteCoordinate(index));
        }
        let f = t.floor();
        if f.abs() > MAX_NODE {
            return Err(Error::Overflow("node index"));
        }
        base.push(f as i64);
        frac.push(t - f);
    }
    let mut out = Vec::with_capacity(1 << d);
    for mask in 0..1usize << d {
        let mut w = 1.0;
        let mut node = base.clone();
        for a in 0..d {
            if mask >> a & 1 == 1 {
                w *= frac[a];
                node[a] += 1;
            } else {
                w *= 1.0 - frac[a];
            }
        }
        if w > 0.0 {
            out.push((IntPoint::from(node), w));
        }
    }
    Ok(out)
}

/// Maps world points to lattice nodes; see [`RasterMode`].
pub fn rasterize(points: &[Vec<f64>], lattice: &LatticeSpec, mode: RasterMode) -> Result<PointRaster> {
    let mut rng = match mode {
        RasterMode::Nearest { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        RasterMode::Multilinear => None,
    };
    let mut entries = Vec::with_capacity(points.len());
    let mut active = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        let corners = cell_corners(p, lattice, i)?;
        let picked = match rng.as_mut() {
            None => corners,
            Some(rng) => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let last = corners.len() - 1;
                let k = corners
                    .iter()
                    .position(|(_, w)| {
                        acc += w;
                        u < acc
                    })
                    .unwrap_or(last);
                vec![(corners[k].0.clone(), 1.0)]
            }
        };
        active.extend(picked.iter().map(|(n, _)| n.clone()));
        entries.push(picked);
    }
    Ok(PointRaster {
        entries,
        active_nodes: active.into_iter().collect(),
    })
}

/// Images `A n` of the active nodes (same order) and their bounding box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformedNodes {
    pub images: Vec<IntPoint>,
    pub lo: IntPoint,
    pub hi: IntPoint,
}

impl TransformedNodes {
    /// Node counts of the bounding box per axis.
    pub fn box_dims(&self) -> Vec<i64> {
        self.lo.coords().iter().zip(self.hi.coords()).map(|(l, h)| h - l + 1).collect()
    }
}

pub fn transform_nodes(raster: &PointRaster, a: &TransformMatrix) -> Result<TransformedNodes> {
    let d = a.dim();
    let m = a.matrix();
    let images = raster
        .active_nodes
        .iter()
        .map(|n| m.mul_point(n))
        .collect::<Result<Vec<_>>>()?;
    let first = images.first().ok_or_else(|| Error::DegenerateHull("no nodes".into()))?;
    let mut lo = first.to_vec();
    let mut hi = first.to_vec();
    for p in &images {
        for i in 0..d {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    Ok(TransformedNodes {
        images,
        lo: lo.into(),
        hi: hi.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize) -> LatticeSpec {
        LatticeSpec::with_step(1.0, d).unwrap()
    }

    #[test]
    fn node_and_cell_center() {
        let r = rasterize(&[vec![2.0, -3.0, 1.0]], &unit(3), RasterMode::Multilinear).unwrap();
        assert_eq!(r.entries[0], vec![(IntPoint::new(&[2, -3, 1]), 1.0)]);
        let r = rasterize(&[vec![0.5, 0.5, 0.5]], &unit(3), RasterMode::Multilinear).unwrap();
        assert_eq!(r.entries[0].len(), 8);
        assert!(r.entries[0].iter().all(|(_, w)| *w == 0.125));
        assert_eq!(r.active_nodes.len(), 8);
    }

    #[test]
    fn nearest_picks_one_corner() {
        let pts: Vec<Vec<f64>> = (0..50).map(|i| vec![i as f64 * 0.37, 0.25]).collect();
        let a = rasterize(&pts, &unit(2), RasterMode::Nearest { seed: 3 }).unwrap();
        let b = rasterize(&pts, &unit(2), RasterMode::Nearest { seed: 3 }).unwrap();
        assert_eq!(a, b);
        for (p, e) in pts.iter().zip(&a.entries) {
            assert_eq!(e.len(), 1);
            let n = &e[0].0;
            assert!((0..2).all(|i| (p[i] - n[i] as f64).abs() < 1.0));
        }
    }

    #[test]
    fn rejects_non_finite() {
        let r = rasterize(&[vec![0.0, 0.0], vec![f64::INFINITY, 0.0]], &unit(2), RasterMode::Multilinear);
        assert_eq!(r, Err(Error::NonFiniteCoordinate(1)));
    }

    #[test]
    fn planar_images() {
        let pts: Vec<Vec<f64>> = crate::fixtures::planar_points()
            .iter()
            .map(|p| p.coords().iter().map(|&c| c as f64).collect())
            .collect();
        let r = rasterize(&pts, &unit(2), RasterMode::Multilinear).unwrap();
        let a = TransformMatrix::from_nested(&[&[2, -1], &[-3, 2]]).unwrap();
        let t = transform_nodes(&r, &a).unwrap();
        assert_eq!(t.box_dims(), vec![6, 5]);
        let id = transform_nodes(&r, &TransformMatrix::identity(2)).unwrap();
        assert_eq!(id.images, r.active_nodes);
    }
}
