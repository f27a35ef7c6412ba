use serde::{Deserialize, Serialize};

use super::brute::Barycentric;
use super::decompose::{decompose_tetrahedron, decompose_triangle, TriangularForm3};
use super::{round_div, rounded_centroid, Simplex};
use crate::error::{Error, Result};
use crate::point::{ext_gcd, narrow, IntMatrix, IntPoint};

/// How [`tetrahedron_form_point`] settled a triangular form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TetraResolution {
    /// `a = 1` or `n < 4`: empty.
    EmptySmall,
    /// `a + b = n`: empty.
    EmptySum,
    /// `a + b = n + 1`: empty. Unreachable when the face conditions hold.
    EmptySumPlusOne,
    /// `a + b > n + 1`: the point `(1, 1, 1)`.
    UnitWeights,
    /// `i = floor(n / a)`.
    FloorRatio,
    /// `i` from `(a + b - 1) x + n y = 1`.
    Euclid,
    /// Rounded centroid of the vertices.
    RoundedCentroid,
    /// `i = floor(n / a) - 1`.
    FloorRatioMinusOne,
    /// Exhaustive scan over `i = 1..n-1`.
    Scan,
    /// The scan found nothing.
    EmptyScan,
}

impl TetraResolution {
    pub fn is_empty(self) -> bool {
        matches!(
            self,
            Self::EmptySmall | Self::EmptySum | Self::EmptySumPlusOne | Self::EmptyScan
        )
    }
}

/// Lattice point `q` (in `R`-space) strictly inside `conv(0, e1, e2, (a, b, n))`.
pub(crate) fn form_contains(f: &TriangularForm3, q: [i64; 3]) -> bool {
    let (a, b, n) = (f.a as i128, f.b as i128, f.n as i128);
    let [x, y, z] = q.map(|c| c as i128);
    let (al, be, ga) = (x * n - a * z, y * n - b * z, z);
    // weights are al/n, be/n, ga/n
    al > 0 && be > 0 && ga > 0 && al + be + ga < n
}

pub(crate) fn try_index(f: &TriangularForm3, i: i64) -> Option<[i64; 3]> {
    if i < 1 || i >= f.n {
        return None;
    }
    let w = f.weights_for(i);
    w.is_strictly_interior().then(|| f.point_for(&w))
}

pub(crate) fn floor_ratio_index(f: &TriangularForm3) -> i64 {
    f.n / f.a
}

pub(crate) fn euclid_index(f: &TriangularForm3) -> Option<i64> {
    let (g, x, _) = ext_gcd(f.a + f.b - 1, f.n);
    if g != 1 {
        return None;
    }
    Some(if x > 0 { x } else { f.n + x })
}

/// Rounded centroid of `conv(0, e1, e2, (a, b, n))`.
pub(crate) fn canonical_centroid(f: &TriangularForm3) -> [i64; 3] {
    [
        round_div(1 + f.a as i128, 4) as i64,
        round_div(1 + f.b as i128, 4) as i64,
        round_div(f.n as i128, 4) as i64,
    ]
}

/// The four `a + b < n` heuristics in order; each entry is the point it
/// produces, if any.
pub(crate) fn heuristic_points(f: &TriangularForm3, centroid: [i64; 3]) -> [Option<[i64; 3]>; 4] {
    let i0 = floor_ratio_index(f);
    [
        try_index(f, i0),
        euclid_index(f).and_then(|i| try_index(f, i)),
        form_contains(f, centroid).then_some(centroid),
        try_index(f, i0 - 1),
    ]
}

fn form_point_with(f: &TriangularForm3, centroid: [i64; 3]) -> (Option<[i64; 3]>, TetraResolution) {
    let (a, b, n) = (f.a, f.b, f.n);
    if a == 1 || n < 4 {
        return (None, TetraResolution::EmptySmall);
    }
    if a + b == n {
        return (None, TetraResolution::EmptySum);
    }
    if a + b == n + 1 {
        return (None, TetraResolution::EmptySumPlusOne);
    }
    if a + b > n + 1 {
        return (Some([1, 1, 1]), TetraResolution::UnitWeights);
    }
    let order = [
        TetraResolution::FloorRatio,
        TetraResolution::Euclid,
        TetraResolution::RoundedCentroid,
        TetraResolution::FloorRatioMinusOne,
    ];
    for (p, r) in heuristic_points(f, centroid).into_iter().zip(order) {
        if p.is_some() {
            return (p, r);
        }
    }
    match (1..n).find_map(|i| try_index(f, i)) {
        Some(p) => (Some(p), TetraResolution::Scan),
        None => (None, TetraResolution::EmptyScan),
    }
}

/// Interior lattice point of `conv(0, e1, e2, (a, b, n))` in `R`-space
/// coordinates, for a form with `0 <= a <= b < n` whose edge and face
/// conditions hold, and which rule settled it.
pub fn tetrahedron_form_point(form: &TriangularForm3) -> (Option<[i64; 3]>, TetraResolution) {
    form_point_with(form, canonical_centroid(form))
}

fn check_triangle_edges(tri: &Simplex) -> Result<()> {
    let v = tri.vertices();
    for i in 0..3 {
        let j = (i + 1) % 3;
        let g = (&v[j] - &v[i]).content();
        if g != 1 {
            return Err(Error::PreconditionViolated(format!(
                "edge {}-{} carries lattice points (gcd {g})",
                i.min(j),
                i.max(j)
            )));
        }
    }
    Ok(())
}

fn shifted(origin: &IntPoint, x: &IntMatrix, q: &[i64]) -> Result<IntPoint> {
    let mut padded = vec![0; x.cols()];
    padded[..q.len()].copy_from_slice(q);
    origin.checked_add(&x.mul_point(&IntPoint::from(padded))?)
}

/// A lattice point strictly inside a triangle with primitive edges, in any
/// ambient dimension; `None` exactly when the triangle has none.
///
/// Tries the integer centroid, then the rounded centroid (verified exactly),
/// then the point `X * (1, 1)` of the triangular form.
pub fn triangle_interior_point(tri: &Simplex) -> Result<Option<IntPoint>> {
    if tri.order() != 2 {
        return Err(Error::PreconditionViolated("expected a triangle".into()));
    }
    check_triangle_edges(tri)?;
    let v = tri.vertices();
    let d = tri.ambient_dim();
    let sums: Vec<i128> = (0..d).map(|i| v.iter().map(|p| p[i] as i128).sum()).collect();
    if sums.iter().all(|s| s % 3 == 0) {
        return Ok(Some(sums.iter().map(|s| (s / 3) as i64).collect::<Vec<_>>().into()));
    }
    let rc = rounded_centroid(v);
    if Barycentric::new(tri)?.is_interior(&rc) {
        return Ok(Some(rc));
    }
    let dec = decompose_triangle(tri)?;
    match dec.form.interior_weights() {
        Some(_) => Ok(Some(shifted(&v[0], &dec.x, &[1, 1])?)),
        None => Ok(None),
    }
}

/// Integer inverse of a unimodular matrix.
fn unimodular_inverse(x: &IntMatrix) -> Result<IntMatrix> {
    let det = x.det();
    debug_assert_eq!(det.abs(), 1);
    let adj = x.adjugate();
    let mut inv = IntMatrix::zeros(x.rows(), x.cols());
    for (i, row) in adj.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            inv[(i, j)] = narrow(v * det, "unimodular inverse")?;
        }
    }
    Ok(inv)
}

/// A lattice point strictly inside a tetrahedron whose edges and faces
/// carry no lattice points; `None` exactly when it has none.
pub fn tetrahedron_interior_point(tet: &Simplex) -> Result<Option<IntPoint>> {
    Ok(tetrahedron_interior_point_traced(tet)?.0)
}

pub(crate) fn tetrahedron_interior_point_traced(
    tet: &Simplex,
) -> Result<(Option<IntPoint>, TetraResolution)> {
    let dec = decompose_tetrahedron(tet)?;
    let origin = &tet.vertices()[dec.vertex_order[0]];
    let rc = rounded_centroid(tet.vertices()).checked_sub(origin)?;
    let q = unimodular_inverse(&dec.x)?.mul_point(&rc)?;
    let (p, how) = form_point_with(&dec.form, [q[0], q[1], q[2]]);
    let p = p.map(|p| shifted(origin, &dec.x, &p)).transpose()?;
    Ok((p, how))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer_points::brute_force_interior_points;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::new(c)
    }

    fn tet(a: i64, b: i64, n: i64) -> Simplex {
        Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[a, b, n])).unwrap()
    }

    #[test]
    fn triangle_examples() {
        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 2]), p(&[2, 1])).unwrap();
        assert_eq!(triangle_interior_point(&t).unwrap(), Some(p(&[1, 1])));

        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[2, 5])).unwrap();
        let got = triangle_interior_point(&t).unwrap().unwrap();
        assert!(brute_force_interior_points(&t).unwrap().contains(&got));

        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[0, 1])).unwrap();
        assert_eq!(triangle_interior_point(&t).unwrap(), None);

        let t = Simplex::triangle(p(&[0, 0]), p(&[2, 0]), p(&[0, 1])).unwrap();
        assert!(matches!(triangle_interior_point(&t), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn formula_path_is_interior() {
        // centroid (4/3, 5/3) rounds to (1, 2), which lies outside
        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[3, 5])).unwrap();
        let bary = Barycentric::new(&t).unwrap();
        assert!(!bary.is_interior(&rounded_centroid(t.vertices())));
        let got = triangle_interior_point(&t).unwrap().unwrap();
        assert!(brute_force_interior_points(&t).unwrap().contains(&got));
    }

    #[test]
    fn embedded_triangle_point() {
        let t = Simplex::triangle(p(&[0, 0, 0]), p(&[1, 2, 0]), p(&[2, 1, 5])).unwrap();
        let got = triangle_interior_point(&t).unwrap();
        let all = brute_force_interior_points(&t).unwrap();
        assert_eq!(got.is_some(), !all.is_empty());
        if let Some(g) = got {
            assert!(all.contains(&g));
        }
    }

    #[test]
    fn tetrahedron_examples() {
        let (pt, how) = tetrahedron_form_point(&TriangularForm3 { a: 3, b: 4, n: 5 });
        assert_eq!((pt, how), (Some([1, 1, 1]), TetraResolution::UnitWeights));
        assert_eq!(tetrahedron_interior_point(&tet(3, 4, 5)).unwrap(), Some(p(&[1, 1, 1])));
        assert_eq!(
            tetrahedron_form_point(&TriangularForm3 { a: 2, b: 3, n: 5 }),
            (None, TetraResolution::EmptySum)
        );
        assert_eq!(
            tetrahedron_form_point(&TriangularForm3 { a: 1, b: 1, n: 5 }),
            (None, TetraResolution::EmptySmall)
        );
        assert_eq!(tetrahedron_interior_point(&tet(2, 3, 5)).unwrap(), None);
    }

    #[test]
    fn form_contains_agrees_with_weights() {
        let f = TriangularForm3 { a: 4, b: 9, n: 19 };
        for i in 1..f.n {
            let w = f.weights_for(i);
            assert_eq!(form_contains(&f, f.point_for(&w)), w.is_strictly_interior());
        }
    }
}
