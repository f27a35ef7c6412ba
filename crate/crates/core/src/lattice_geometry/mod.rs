//! Exact integer convex hulls in two and three dimensions, projection widths,
//! and the antipodal direction cones used by the transform search.

mod cones;
pub(crate) mod quickhull;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{narrow, IntPoint};

pub use cones::{antipodal_cones, AntipodalCone};

/// Largest accepted |coordinate| for hull input; keeps every orientation
/// predicate and dot product exact in 128-bit arithmetic with wide margin.
pub const MAX_HULL_COORD: i64 = 1 << 20;

/// A triangular hull facet with outward primitive normal: `normal . x <= offset`
/// for every hull point, with equality on the facet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub vertices: [usize; 3],
    pub normal: IntPoint,
    pub offset: i64,
}

/// Convex hull of a full-dimensional integer point set.
///
/// In 2D the vertices are in strictly counterclockwise order with no
/// collinear triples and `facets` is empty. In 3D the facets triangulate the
/// boundary (coplanar triangles share the same normal).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hull {
    dimension: usize,
    vertices: Vec<IntPoint>,
    facets: Vec<Facet>,
}

impl Hull {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[IntPoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `true` when `p` satisfies every edge/facet inequality.
    pub fn contains(&self, p: &IntPoint) -> bool {
        match self.dimension {
            2 => {
                let n = self.vertices.len();
                (0..n).all(|i| {
                    let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
                    cross2(a, b, p) >= 0
                })
            }
            _ => self
                .facets
                .iter()
                .all(|f| f.normal.dot(p) <= f.offset as i128),
        }
    }
}

pub(crate) fn cross2(a: &IntPoint, b: &IntPoint, c: &IntPoint) -> i128 {
    let (ux, uy) = (b[0] as i128 - a[0] as i128, b[1] as i128 - a[1] as i128);
    let (vx, vy) = (c[0] as i128 - a[0] as i128, c[1] as i128 - a[1] as i128);
    ux * vy - uy * vx
}

fn check_input(points: &[IntPoint], dimension: usize) -> Result<()> {
    if dimension != 2 && dimension != 3 {
        return Err(Error::DegenerateHull(format!(
            "hulls are supported in 2 and 3 dimensions, not {dimension}"
        )));
    }
    for p in points {
        if p.dim() != dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: p.dim(),
            });
        }
        if p.max_abs() > MAX_HULL_COORD {
            return Err(Error::Overflow("hull input coordinate exceeds 2^20"));
        }
    }
    if points.len() <= dimension {
        return Err(Error::DegenerateHull(format!(
            "{} points cannot span {dimension} dimensions",
            points.len()
        )));
    }
    Ok(())
}

/// Exact convex hull (monotone chain in 2D, incremental in 3D).
pub fn convex_hull(points: &[IntPoint], dimension: usize) -> Result<Hull> {
    check_input(points, dimension)?;
    if dimension == 2 {
        hull2(points)
    } else {
        hull3(points)
    }
}

fn hull2(points: &[IntPoint]) -> Result<Hull> {
    let mut pts: Vec<IntPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateHull("fewer than 3 distinct points".into()));
    }
    let mut chain: Vec<IntPoint> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = chain.len();
        let iter: Box<dyn Iterator<Item = &IntPoint>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while chain.len() >= start + 2
                && cross2(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= 0
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain.pop();
    }
    if chain.len() < 3 {
        return Err(Error::DegenerateHull("points are collinear".into()));
    }
    Ok(Hull {
        dimension: 2,
        vertices: chain,
        facets: Vec::new(),
    })
}

fn hull3(points: &[IntPoint]) -> Result<Hull> {
    let raw: Vec<[i64; 3]> = points.iter().map(|p| [p[0], p[1], p[2]]).collect();
    let (extreme, facets) = quickhull::hull3(&raw)?;
    let mut index = vec![usize::MAX; raw.len()];
    for (k, &i) in extreme.iter().enumerate() {
        index[i as usize] = k;
    }
    let vertices: Vec<IntPoint> = extreme.iter().map(|&i| points[i as usize].clone()).collect();
    let facets = facets
        .into_iter()
        .map(|f| {
            let verts = f.verts.map(|v| index[v as usize]);
            let normal: IntPoint = f
                .normal
                .iter()
                .map(|&c| narrow(c, "facet normal"))
                .collect::<Result<Vec<_>>>()?
                .into();
            let normal = normal.primitive();
            let offset = narrow(normal.dot(&vertices[verts[0]]), "facet offset")?;
            Ok(Facet {
                vertices: verts,
                normal,
                offset,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Hull {
        dimension: 3,
        vertices,
        facets,
    })
}

/// `(min, max)` of `v . x` over the hull vertices. The node extent of the
/// projection is `max - min + 1`.
pub fn width(v: &IntPoint, hull: &Hull) -> Result<(i64, i64)> {
    if v.dim() != hull.dimension {
        return Err(Error::DimensionMismatch {
            expected: hull.dimension,
            got: v.dim(),
        });
    }
    let (mut lo, mut hi) = (i128::MAX, i128::MIN);
    for x in &hull.vertices {
        let d = v.dot(x);
        lo = lo.min(d);
        hi = hi.max(d);
    }
    Ok((narrow(lo, "width")?, narrow(hi, "width")?))
}

/// Node extent `max - min + 1` of the projection onto `v`.
pub fn extent(v: &IntPoint, hull: &Hull) -> Result<i64> {
    let (lo, hi) = width(v, hull)?;
    hi.checked_sub(lo)
        .and_then(|w| w.checked_add(1))
        .ok_or(Error::Overflow("extent"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::planar_points;

    #[test]
    fn planar_hull_vertices() {
        let hull = convex_hull(&planar_points(), 2).unwrap();
        let mut got = hull.vertices().to_vec();
        got.sort();
        let mut want: Vec<IntPoint> = [[1, 1], [1, 2], [5, 9], [13, 21], [9, 13]]
            .into_iter()
            .map(IntPoint::from)
            .collect();
        want.sort();
        assert_eq!(got, want);
        for p in planar_points() {
            assert!(hull.contains(&p));
        }
    }

    #[test]
    fn planar_widths() {
        let hull = convex_hull(&planar_points(), 2).unwrap();
        assert_eq!(width(&IntPoint::from([1, 0]), &hull).unwrap(), (1, 13));
        assert_eq!(width(&IntPoint::from([2, -1]), &hull).unwrap(), (0, 5));
        assert_eq!(width(&IntPoint::from([-3, 2]), &hull).unwrap(), (-1, 3));
        assert_eq!(extent(&IntPoint::from([2, -1]), &hull).unwrap(), 6);
        assert_eq!(extent(&IntPoint::from([-3, 2]), &hull).unwrap(), 5);
    }

    #[test]
    fn simplex_is_its_own_hull() {
        let pts: Vec<IntPoint> = [[0, 0], [1, 0], [0, 1]].into_iter().map(IntPoint::from).collect();
        let hull = convex_hull(&pts, 2).unwrap();
        assert_eq!(hull.vertices().len(), 3);
        assert!(cross2(&hull.vertices()[0], &hull.vertices()[1], &hull.vertices()[2]) > 0);
    }

    #[test]
    fn degenerate_inputs() {
        let line: Vec<IntPoint> = (0..5).map(|i| IntPoint::from([i, 2 * i])).collect();
        assert!(matches!(convex_hull(&line, 2), Err(Error::DegenerateHull(_))));
        let same = vec![IntPoint::from([3, 3, 3]); 6];
        assert!(matches!(convex_hull(&same, 3), Err(Error::DegenerateHull(_))));
        let big = vec![
            IntPoint::from([0, 0]),
            IntPoint::from([MAX_HULL_COORD + 1, 0]),
            IntPoint::from([0, 1]),
        ];
        assert!(matches!(convex_hull(&big, 2), Err(Error::Overflow(_))));
    }

    #[test]
    fn hull3_euler_and_primitive_normals() {
        let pts: Vec<IntPoint> = [
            [-2, -2, 1], [-2, -2, 3], [-2, 2, -1], [-2, 2, 1],
            [2, -2, -1], [2, -2, 1], [2, 2, -3], [2, 2, -1], [0, 0, 0], [1, 0, 0],
        ]
        .into_iter()
        .map(IntPoint::from)
        .collect();
        let hull = convex_hull(&pts, 3).unwrap();
        assert_eq!(hull.vertices().len(), 8);
        let f = hull.facets().len();
        let e = 3 * f / 2;
        assert_eq!(hull.vertices().len() + f - e, 2);
        for facet in hull.facets() {
            assert!(facet.normal.is_primitive());
        }
        for p in &pts {
            assert!(hull.contains(p));
        }
    }

    #[test]
    fn width_is_antisymmetric_under_negation() {
        let hull = convex_hull(&planar_points(), 2).unwrap();
        for v in [[1, 0], [2, -1], [5, 3], [-7, 4]] {
            let v = IntPoint::from(v);
            let (lo, hi) = width(&v, &hull).unwrap();
            assert_eq!(width(&-&v, &hull).unwrap(), (-hi, -lo));
        }
    }
}
