use serde::{Deserialize, Serialize};

use super::Simplex;
use crate::error::{Error, Result};
use crate::hermite::row_hermite;
use crate::point::{gcd, gcd_all, IntMatrix, IntPoint};

/// `R = [[1, m], [0, n]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangularForm2 {
    pub m: i64,
    pub n: i64,
}

/// `R = [[1, 0, a], [0, 1, b], [0, 0, n]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangularForm3 {
    pub a: i64,
    pub b: i64,
    pub n: i64,
}

/// Edge columns factored as `X * R` with `X` unimodular. `vertex_order`
/// records the vertex relabeling used to build the columns
/// (`column j = v[order[j+1]] - v[order[0]]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<F> {
    pub x: IntMatrix,
    pub r: IntMatrix,
    pub form: F,
    pub vertex_order: Vec<usize>,
}

/// Barycentric weights `numerators[i] / denominator` on the edge vectors
/// (the weight of vertex 0 is implied).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BarycentricWeights {
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl BarycentricWeights {
    /// Every weight in `(0, 1)` and their sum below 1.
    pub fn is_strictly_interior(&self) -> bool {
        let sum: i128 = self.numerators.iter().map(|&v| v as i128).sum();
        self.numerators.iter().all(|&v| v > 0) && sum < self.denominator as i128
    }
}

impl TriangularForm2 {
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_nested(&[&[1, self.m], &[0, self.n]])
    }

    /// Weights `((n - m)/n, 1/n)` of the point `(1, 1)`, which lies inside
    /// whenever `1 < m < n`.
    pub fn interior_weights(&self) -> Option<BarycentricWeights> {
        let w = BarycentricWeights {
            numerators: vec![self.n - self.m, 1],
            denominator: self.n,
        };
        w.is_strictly_interior().then_some(w)
    }
}

impl TriangularForm3 {
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_nested(&[&[1, 0, self.a], &[0, 1, self.b], &[0, 0, self.n]])
    }

    /// No lattice points inside the edges of `conv(0, e1, e2, (a, b, n))`.
    pub fn edge_conditions_hold(&self) -> bool {
        let (a, b, n) = (self.a, self.b, self.n);
        gcd_all(&[a, b, n]) == 1 && gcd_all(&[a - 1, b, n]) == 1 && gcd_all(&[a, b - 1, n]) == 1
    }

    /// No lattice points inside the faces through the apex `(a, b, n)`.
    pub fn face_conditions_hold(&self) -> bool {
        let (a, b, n) = (self.a, self.b, self.n);
        gcd(b, n) == 1 && gcd(a, n) == 1 && gcd(a + b - 1, n) == 1
    }

    /// Weights `(((-a i) mod n) / n, ((-b i) mod n) / n, i / n)`: the only
    /// candidates for lattice points with third weight `i / n`.
    pub fn weights_for(&self, i: i64) -> BarycentricWeights {
        let (a, b, n) = (self.a as i128, self.b as i128, self.n as i128);
        let i = i as i128;
        BarycentricWeights {
            numerators: vec![
                (-a * i).rem_euclid(n) as i64,
                (-b * i).rem_euclid(n) as i64,
                i as i64,
            ],
            denominator: self.n,
        }
    }

    /// `R * w` for weights with denominator `n`; always an integer vector.
    pub fn point_for(&self, w: &BarycentricWeights) -> [i64; 3] {
        let [al, be, ga] = [w.numerators[0], w.numerators[1], w.numerators[2]];
        [
            (al + self.a * ga) / self.n,
            (be + self.b * ga) / self.n,
            ga,
        ]
    }
}

fn triangle_columns(tri: &Simplex, order: &[usize]) -> Result<Vec<IntPoint>> {
    let v = tri.vertices();
    order[1..]
        .iter()
        .map(|&i| v[i].checked_sub(&v[order[0]]))
        .collect()
}

/// Factors the edge columns `[p1 p2]` of a triangle as `X * R`, with `R` in
/// Hermite form (`R[0][0] = 1`, `0 <= m < n`) and zero rows below row 1 when
/// the ambient dimension exceeds 2.
pub fn decompose_triangle(tri: &Simplex) -> Result<Decomposition<TriangularForm2>> {
    if tri.order() != 2 {
        return Err(Error::PreconditionViolated("expected a triangle".into()));
    }
    let order = vec![0, 1, 2];
    let cols = triangle_columns(tri, &order)?;
    let g = cols[0].content();
    if g != 1 {
        return Err(Error::NonPrimitiveEdge(cols[0].to_vec(), g));
    }
    let h = row_hermite(&IntMatrix::from_columns(&cols))?;
    debug_assert_eq!(h.r[(0, 0)], 1);
    let form = TriangularForm2 {
        m: h.r[(0, 1)],
        n: h.r[(1, 1)],
    };
    Ok(Decomposition {
        x: h.x,
        r: h.r,
        form,
        vertex_order: order,
    })
}

pub(crate) fn check_tetrahedron_boundary(tet: &Simplex) -> Result<()> {
    let v = tet.vertices();
    for i in 0..4 {
        for j in i + 1..4 {
            let g = (&v[j] - &v[i]).content();
            if g != 1 {
                return Err(Error::PreconditionViolated(format!(
                    "edge {i}-{j} carries lattice points (gcd {g})"
                )));
            }
        }
    }
    for skip in 0..4 {
        let f: Vec<IntPoint> = (0..4).filter(|&k| k != skip).map(|k| v[k].clone()).collect();
        let index = Simplex::new(f)?.normalized_volume()?;
        if index != 1 {
            return Err(Error::PreconditionViolated(format!(
                "face opposite vertex {skip} carries lattice points (index {index})"
            )));
        }
    }
    Ok(())
}

/// Factors the edge columns of an edge- and face-empty tetrahedron as
/// `X * R` with `R = [[1, 0, a], [0, 1, b], [0, 0, n]]`, `0 <= a <= b < n`
/// (vertices 1 and 2 are swapped when needed to get `a <= b`).
pub fn decompose_tetrahedron(tet: &Simplex) -> Result<Decomposition<TriangularForm3>> {
    if tet.order() != 3 {
        return Err(Error::PreconditionViolated("expected a tetrahedron".into()));
    }
    check_tetrahedron_boundary(tet)?;
    let mut order = vec![0, 1, 2, 3];
    loop {
        let cols = triangle_columns(tet, &order)?;
        let h = row_hermite(&IntMatrix::from_columns(&cols))?;
        debug_assert_eq!((h.r[(0, 0)], h.r[(1, 1)], h.r[(0, 1)]), (1, 1, 0));
        let form = TriangularForm3 {
            a: h.r[(0, 2)],
            b: h.r[(1, 2)],
            n: h.r[(2, 2)],
        };
        if form.a > form.b {
            order.swap(1, 2);
            continue;
        }
        return Ok(Decomposition {
            x: h.x,
            r: h.r,
            form,
            vertex_order: order,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::new(c)
    }

    fn check<F>(s: &Simplex, d: &Decomposition<F>) {
        let v = s.vertices();
        let o = &d.vertex_order;
        let cols: Vec<IntPoint> = o[1..].iter().map(|&i| &v[i] - &v[o[0]]).collect();
        assert_eq!(d.x.checked_mul(&d.r).unwrap(), IntMatrix::from_columns(&cols));
        assert_eq!(d.x.det().abs(), 1);
    }

    #[test]
    fn triangle_forms() {
        let s = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[2, 5])).unwrap();
        let d = decompose_triangle(&s).unwrap();
        check(&s, &d);
        assert_eq!(d.x, IntMatrix::identity(2));
        assert_eq!(d.form, TriangularForm2 { m: 2, n: 5 });

        let s = Simplex::triangle(p(&[0, 0]), p(&[1, 2]), p(&[2, 1])).unwrap();
        let d = decompose_triangle(&s).unwrap();
        check(&s, &d);
        assert_eq!(d.form, TriangularForm2 { m: 2, n: 3 });

        let s = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[0, 1])).unwrap();
        let d = decompose_triangle(&s).unwrap();
        assert_eq!((d.x.clone(), d.form), (IntMatrix::identity(2), TriangularForm2 { m: 0, n: 1 }));
    }

    #[test]
    fn triangle_with_long_first_edge_is_rejected() {
        let s = Simplex::triangle(p(&[0, 0]), p(&[2, 0]), p(&[0, 1])).unwrap();
        assert_eq!(decompose_triangle(&s), Err(Error::NonPrimitiveEdge(vec![2, 0], 2)));
    }

    #[test]
    fn embedded_triangle() {
        let s = Simplex::triangle(p(&[1, 0, 2]), p(&[2, 1, 2]), p(&[3, 4, 7])).unwrap();
        let d = decompose_triangle(&s).unwrap();
        check(&s, &d);
        assert_eq!(d.r.rows(), 3);
        assert_eq!(d.r[(2, 0)], 0);
        assert_eq!(d.r[(2, 1)], 0);
    }

    #[test]
    fn tetrahedron_forms() {
        let o = p(&[0, 0, 0]);
        let (e1, e2) = (p(&[1, 0, 0]), p(&[0, 1, 0]));
        let s = Simplex::tetrahedron(o.clone(), e1.clone(), e2.clone(), p(&[3, 4, 5])).unwrap();
        let d = decompose_tetrahedron(&s).unwrap();
        check(&s, &d);
        assert_eq!(d.form, TriangularForm3 { a: 3, b: 4, n: 5 });
        assert!(d.form.edge_conditions_hold() && d.form.face_conditions_hold());

        let s = Simplex::tetrahedron(o.clone(), e1.clone(), e2.clone(), p(&[1, 1, 2])).unwrap();
        let d = decompose_tetrahedron(&s).unwrap();
        assert_eq!(d.form, TriangularForm3 { a: 1, b: 1, n: 2 });

        let s = Simplex::tetrahedron(o.clone(), e1.clone(), e2.clone(), p(&[0, 0, 1])).unwrap();
        let d = decompose_tetrahedron(&s).unwrap();
        assert_eq!(d.form, TriangularForm3 { a: 0, b: 0, n: 1 });

        // a > b gets relabeled
        let s = Simplex::tetrahedron(o, e1, e2, p(&[4, 3, 5])).unwrap();
        let d = decompose_tetrahedron(&s).unwrap();
        check(&s, &d);
        assert_eq!(d.form, TriangularForm3 { a: 3, b: 4, n: 5 });
        assert_eq!(d.vertex_order, vec![0, 2, 1, 3]);
    }

    #[test]
    fn tetrahedron_boundary_preconditions() {
        let o = p(&[0, 0, 0]);
        let s = Simplex::tetrahedron(o.clone(), p(&[2, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])).unwrap();
        assert!(matches!(decompose_tetrahedron(&s), Err(Error::PreconditionViolated(_))));
        let s = Simplex::tetrahedron(o, p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[2, 5, 9])).unwrap();
        assert!(matches!(decompose_tetrahedron(&s), Err(Error::PreconditionViolated(m)) if m.contains("face")));
    }

    #[test]
    fn random_unimodular_images_keep_form() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let form = TriangularForm3 { a: 3, b: 4, n: 5 };
        let base = [p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[3, 4, 5])];
        for _ in 0..50 {
            // random product of elementary row operations
            let mut u = IntMatrix::identity(3);
            for _ in 0..6 {
                let (i, j) = (rng.random_range(0..3), rng.random_range(0..3));
                if i != j {
                    let c = rng.random_range(-2..=2);
                    let rj = u.row(j).scale(c);
                    let ri = &u.row(i) + &rj;
                    u.set_row(i, &ri);
                }
            }
            let shift = p(&[rng.random_range(-9..9), rng.random_range(-9..9), rng.random_range(-9..9)]);
            let verts: Vec<IntPoint> =
                base.iter().map(|v| &u.mul_point(v).unwrap() + &shift).collect();
            let s = Simplex::new(verts).unwrap();
            let d = decompose_tetrahedron(&s).unwrap();
            check(&s, &d);
            // the reduced form is a lattice invariant up to the vertex relabeling
            assert_eq!(d.form.n, form.n);
        }
    }
}
