//! Lattice points in segments, triangles and tetrahedra.
//!
//! Triangles may live in any ambient dimension `d >= 2`; tetrahedra live in
//! `Z^3`. The interior-point searches reduce a simplex to a triangular form
//! `R` via a unimodular factor `X` (see [`decompose_triangle`] and
//! [`decompose_tetrahedron`]) and read lattice points off barycentric weights
//! whose denominator is `R`'s last pivot.

mod brute;
mod decompose;
mod interior;
mod stats;
mod subdivide;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{IntMatrix, IntPoint};

pub(crate) use brute::Barycentric;
pub use brute::{
    brute_force_classified, brute_force_interior_points, brute_force_interior_points_with_budget,
    PointClass, DEFAULT_SCAN_BUDGET,
};
pub use decompose::{
    decompose_tetrahedron, decompose_triangle, BarycentricWeights, Decomposition, TriangularForm2,
    TriangularForm3,
};
pub use interior::{
    tetrahedron_form_point, tetrahedron_interior_point, triangle_interior_point, TetraResolution,
};
pub use stats::{heuristic_stats, HeuristicRow, HeuristicStats};
pub use subdivide::{parallelepiped_to_tetrahedra, subdivide_parallelogram, subdivide_simplex};

/// A lattice triangle (3 vertices, ambient `d >= 2`) or tetrahedron
/// (4 vertices, ambient 3) with affinely independent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Simplex {
    vertices: Vec<IntPoint>,
}

impl Simplex {
    pub fn new(vertices: Vec<IntPoint>) -> Result<Self> {
        let d = vertices.first().map_or(0, IntPoint::dim);
        if let Some(bad) = vertices.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.dim(),
            });
        }
        let k = vertices.len().saturating_sub(1);
        let valid_shape = match k {
            2 => d >= 2,
            3 => d == 3,
            _ => false,
        };
        if !valid_shape {
            return Err(Error::PreconditionViolated(format!(
                "a simplex needs 3 vertices in d >= 2 or 4 vertices in d = 3, got {} in d = {d}",
                vertices.len()
            )));
        }
        let s = Simplex { vertices };
        if s.edge_matrix()?.rank() != k {
            return Err(Error::DegenerateSimplex);
        }
        Ok(s)
    }

    pub fn triangle(a: IntPoint, b: IntPoint, c: IntPoint) -> Result<Self> {
        Self::new(vec![a, b, c])
    }

    pub fn tetrahedron(a: IntPoint, b: IntPoint, c: IntPoint, d: IntPoint) -> Result<Self> {
        Self::new(vec![a, b, c, d])
    }

    pub fn vertices(&self) -> &[IntPoint] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// 2 for triangles, 3 for tetrahedra.
    pub fn order(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge vectors `v_i - v_0` as a list.
    pub fn edges(&self) -> Result<Vec<IntPoint>> {
        self.vertices[1..]
            .iter()
            .map(|v| v.checked_sub(&self.vertices[0]))
            .collect()
    }

    /// `d x k` matrix whose columns are the edge vectors from vertex 0.
    pub fn edge_matrix(&self) -> Result<IntMatrix> {
        Ok(IntMatrix::from_columns(&self.edges()?))
    }

    /// `k!` times the k-volume for full-dimensional simplices (the absolute
    /// edge determinant). For triangles embedded in `d > 2` this is the
    /// lattice-normalized area: the content of the cross product in 3D.
    pub fn normalized_volume(&self) -> Result<i128> {
        let e = self.edges()?;
        match (self.order(), self.ambient_dim()) {
            (2, 2) | (3, 3) => Ok(IntMatrix::from_columns(&e).det().abs()),
            (2, _) => {
                // gcd of all 2x2 minors = index of the plane's lattice spanned
                let (a, b) = (&e[0], &e[1]);
                let d = a.dim();
                let mut g = 0i128;
                for i in 0..d {
                    for j in i + 1..d {
                        let m = a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128;
                        g = crate::point::gcd128(g, m);
                    }
                }
                Ok(g)
            }
            _ => unreachable!("shape validated in Simplex::new"),
        }
    }
}

/// The `g - 1` lattice points strictly between `p` and `q`, ordered from `p`,
/// where `g` is the gcd of the coordinates of `q - p`.
pub fn segment_interior_points(p: &IntPoint, q: &IntPoint) -> Result<Vec<IntPoint>> {
    let d = q.checked_sub(p)?;
    let g = d.content();
    if g == 0 {
        return Err(Error::PreconditionViolated("segment endpoints coincide".into()));
    }
    let step = d.div_exact(g);
    let mut out = Vec::with_capacity((g - 1) as usize);
    let mut cur = p.clone();
    for _ in 1..g {
        cur = cur.checked_add(&step)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Number of lattice points strictly inside a planar triangle, by Pick's
/// theorem `A = i + b/2 - 1`.
pub fn pick_interior_count(tri: &Simplex) -> Result<i128> {
    if tri.order() != 2 || tri.ambient_dim() != 2 {
        return Err(Error::PreconditionViolated(
            "Pick's theorem needs a triangle in the plane".into(),
        ));
    }
    let twice_area = tri.normalized_volume()?;
    let v = tri.vertices();
    let boundary: i128 = (0..3)
        .map(|i| (&v[(i + 1) % 3] - &v[i]).content() as i128)
        .sum();
    Ok((twice_area - boundary + 2) / 2)
}

/// Rounds `num / den` (den > 0) to the nearest integer, ties away from zero.
pub(crate) fn round_div(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    if num >= 0 {
        (2 * num + den).div_euclid(2 * den)
    } else {
        -(2 * -num + den).div_euclid(2 * den)
    }
}

/// Componentwise rounded centroid of the vertices.
pub(crate) fn rounded_centroid(vertices: &[IntPoint]) -> IntPoint {
    let k = vertices.len() as i128;
    let d = vertices[0].dim();
    (0..d)
        .map(|i| {
            let s: i128 = vertices.iter().map(|v| v[i] as i128).sum();
            round_div(s, k) as i64
        })
        .collect::<Vec<_>>()
        .into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::new(c)
    }

    #[test]
    fn segment_points() {
        assert_eq!(segment_interior_points(&p(&[0, 0]), &p(&[4, 6])).unwrap(), vec![p(&[2, 3])]);
        assert_eq!(
            segment_interior_points(&p(&[1, 1]), &p(&[13, 21])).unwrap(),
            vec![p(&[4, 6]), p(&[7, 11]), p(&[10, 16])]
        );
        assert!(segment_interior_points(&p(&[0, 0]), &p(&[1, 0])).unwrap().is_empty());
        assert!(segment_interior_points(&p(&[0, 0]), &p(&[0, 0])).is_err());
    }

    #[test]
    fn pick_counts() {
        let t = |a: &[i64], b: &[i64], c: &[i64]| Simplex::triangle(p(a), p(b), p(c)).unwrap();
        assert_eq!(pick_interior_count(&t(&[0, 0], &[1, 0], &[0, 1])).unwrap(), 0);
        assert_eq!(pick_interior_count(&t(&[0, 0], &[1, 2], &[2, 1])).unwrap(), 1);
        assert_eq!(pick_interior_count(&t(&[0, 0], &[3, 0], &[0, 3])).unwrap(), 1);
    }

    #[test]
    fn degenerate_simplices_are_rejected() {
        assert_eq!(
            Simplex::triangle(p(&[0, 0]), p(&[1, 1]), p(&[2, 2])),
            Err(Error::DegenerateSimplex)
        );
        assert_eq!(
            Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[1, 1, 0])),
            Err(Error::DegenerateSimplex)
        );
        assert!(Simplex::new(vec![p(&[0, 0]), p(&[1, 0])]).is_err());
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round_div(5, 2), 3);
        assert_eq!(round_div(-5, 2), -3);
        assert_eq!(round_div(4, 3), 1);
        assert_eq!(round_div(-5, 3), -2);
        assert_eq!(round_div(0, 7), 0);
    }

    #[test]
    fn embedded_triangle_volume_is_lattice_index() {
        let t = Simplex::triangle(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 2, 0])).unwrap();
        assert_eq!(t.normalized_volume().unwrap(), 2);
        let t = Simplex::triangle(p(&[0, 0, 0]), p(&[1, 1, 0]), p(&[0, 1, 1])).unwrap();
        assert_eq!(t.normalized_volume().unwrap(), 1);
    }
}
