use super::interior::{tetrahedron_interior_point, triangle_interior_point};
use super::{segment_interior_points, Simplex};
use crate::error::Result;
use crate::point::IntPoint;

/// Splits the parallelogram `origin + {s g1 + t g2 : s, t in [0, 1]}` along
/// the diagonal that avoids the origin: `(0, g1, g2)` and `(g1, g2, g1 + g2)`.
pub fn subdivide_parallelogram(
    origin: &IntPoint,
    g1: &IntPoint,
    g2: &IntPoint,
) -> Result<[Simplex; 2]> {
    let a = origin.checked_add(g1)?;
    let b = origin.checked_add(g2)?;
    let far = a.checked_add(g2)?;
    Ok([
        Simplex::triangle(origin.clone(), a.clone(), b.clone())?,
        Simplex::triangle(a, b, far)?,
    ])
}

/// Five tetrahedra tiling the parallelepiped spanned by `g1, g2, g3` at
/// `origin`: the corner at the origin, the central tetrahedron
/// `(g1, g2, g3, g1 + g2 + g3)` and the three corners at `gi + gj`.
pub fn parallelepiped_to_tetrahedra(
    origin: &IntPoint,
    g1: &IntPoint,
    g2: &IntPoint,
    g3: &IntPoint,
) -> Result<[Simplex; 5]> {
    let v1 = origin.checked_add(g1)?;
    let v2 = origin.checked_add(g2)?;
    let v3 = origin.checked_add(g3)?;
    let v12 = v1.checked_add(g2)?;
    let v13 = v1.checked_add(g3)?;
    let v23 = v2.checked_add(g3)?;
    let far = v12.checked_add(g3)?;
    Ok([
        Simplex::tetrahedron(origin.clone(), v1.clone(), v2.clone(), v3.clone())?,
        Simplex::tetrahedron(v1.clone(), v2.clone(), v3.clone(), far.clone())?,
        Simplex::tetrahedron(v12, v1.clone(), v2.clone(), far.clone())?,
        Simplex::tetrahedron(v13, v1, v3.clone(), far.clone())?,
        Simplex::tetrahedron(v23, v2, v3, far)?,
    ])
}

fn replace(s: &Simplex, k: usize, p: &IntPoint) -> Result<Simplex> {
    let mut v = s.vertices().to_vec();
    v[k] = p.clone();
    Simplex::new(v)
}

/// One refinement step: split at the first edge lattice point, else fan
/// from a face point (tetrahedra), else from an interior point. Returns an
/// empty list when the simplex has no lattice points besides its vertices.
pub fn subdivide_simplex(s: &Simplex) -> Result<Vec<Simplex>> {
    let v = s.vertices();
    let k = v.len();
    for i in 0..k {
        for j in i + 1..k {
            let (from, to) = if v[i] <= v[j] { (&v[i], &v[j]) } else { (&v[j], &v[i]) };
            if let Some(e) = segment_interior_points(from, to)?.first() {
                return Ok(vec![replace(s, i, e)?, replace(s, j, e)?]);
            }
        }
    }
    if k == 4 {
        for skip in (0..4).rev() {
            let idx: Vec<usize> = (0..4).filter(|&t| t != skip).collect();
            let face = Simplex::new(idx.iter().map(|&t| v[t].clone()).collect())?;
            if let Some(p) = triangle_interior_point(&face)? {
                return idx.iter().map(|&t| replace(s, t, &p)).collect();
            }
        }
    }
    let inner = if k == 3 {
        triangle_interior_point(s)?
    } else {
        tetrahedron_interior_point(s)?
    };
    match inner {
        Some(p) => (0..k).map(|t| replace(s, t, &p)).collect(),
        None => Ok(Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::integer_points::{brute_force_classified, DEFAULT_SCAN_BUDGET};

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::new(c)
    }

    fn lattice_points(s: &Simplex) -> BTreeSet<IntPoint> {
        brute_force_classified(s, DEFAULT_SCAN_BUDGET)
            .unwrap()
            .into_iter()
            .map(|(x, _)| x)
            .collect()
    }

    /// Refines until every piece is empty; returns the leaves.
    fn refine(s: &Simplex) -> Vec<Simplex> {
        let mut stack = vec![s.clone()];
        let mut leaves = Vec::new();
        while let Some(t) = stack.pop() {
            let kids = subdivide_simplex(&t).unwrap();
            if kids.is_empty() {
                leaves.push(t);
            } else {
                let vol = t.normalized_volume().unwrap();
                let total: i128 = kids.iter().map(|c| c.normalized_volume().unwrap()).sum();
                assert_eq!(total, vol);
                assert!(kids.iter().all(|c| c.normalized_volume().unwrap() < vol));
                stack.extend(kids);
            }
        }
        leaves
    }

    #[test]
    fn parallelogram_examples() {
        let [a, b] = subdivide_parallelogram(&p(&[0, 0]), &p(&[1, 0]), &p(&[0, 1])).unwrap();
        assert_eq!(a.vertices(), &[p(&[0, 0]), p(&[1, 0]), p(&[0, 1])]);
        assert_eq!(b.vertices(), &[p(&[1, 0]), p(&[0, 1]), p(&[1, 1])]);

        let (g1, g2) = (p(&[-3, 2]), p(&[1, 0]));
        let halves = subdivide_parallelogram(&p(&[0, 0]), &g1, &g2).unwrap();
        let det = (g1[0] * g2[1] - g1[1] * g2[0]).abs() as i128;
        let twice_area: i128 = halves.iter().map(|t| t.normalized_volume().unwrap()).sum();
        assert_eq!(twice_area, 2 * det);
        assert!(halves[1].vertices().iter().all(|v| !v.is_zero()));
    }

    #[test]
    fn parallelepiped_volumes() {
        let o = p(&[0, 0, 0]);
        let unit = [p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])];
        let tets = parallelepiped_to_tetrahedra(&o, &unit[0], &unit[1], &unit[2]).unwrap();
        let vols: Vec<i128> = tets.iter().map(|t| t.normalized_volume().unwrap()).collect();
        assert_eq!(vols, vec![1, 2, 1, 1, 1]);

        let g = [p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[1, 1, 2])];
        let tets = parallelepiped_to_tetrahedra(&o, &g[0], &g[1], &g[2]).unwrap();
        let total: i128 = tets.iter().map(|t| t.normalized_volume().unwrap()).sum();
        assert_eq!(total, 6 * 2);
    }

    #[test]
    fn parallelepiped_covers_its_lattice_points() {
        let o = p(&[0, 0, 0]);
        let g = [p(&[2, 1, 1]), p(&[1, 1, 0]), p(&[1, 0, 2])];
        let det = crate::point::IntMatrix::from_columns(&g).det();
        assert_eq!(det.abs(), 1);
        let tets = parallelepiped_to_tetrahedra(&o, &g[0], &g[1], &g[2]).unwrap();
        let covered: BTreeSet<IntPoint> = tets.iter().flat_map(lattice_points).collect();
        // oracle: x = G w with w in [0, 1]^3, w = adj(G) x / det
        let m = crate::point::IntMatrix::from_columns(&g);
        let adj = m.adjugate();
        let mut want = BTreeSet::new();
        for x in -1..=5 {
            for y in -1..=3 {
                for z in -1..=4 {
                    let v = [x as i128, y as i128, z as i128];
                    let inside = (0..3).all(|i| {
                        let w: i128 = (0..3).map(|j| adj[i][j] * v[j]).sum();
                        let w = if det < 0 { -w } else { w };
                        (0..=det.abs()).contains(&w)
                    });
                    if inside {
                        want.insert(p(&[x, y, z]));
                    }
                }
            }
        }
        assert_eq!(covered, want);
    }

    #[test]
    fn triangle_steps() {
        let t = Simplex::triangle(p(&[0, 0]), p(&[2, 0]), p(&[0, 1])).unwrap();
        let kids = subdivide_simplex(&t).unwrap();
        assert_eq!(kids.len(), 2);
        assert!(kids.iter().all(|k| k.vertices().contains(&p(&[1, 0]))));

        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 2]), p(&[2, 1])).unwrap();
        let kids = subdivide_simplex(&t).unwrap();
        assert_eq!(kids.len(), 3);
        assert!(kids.iter().all(|k| k.vertices().contains(&p(&[1, 1]))));

        let t = Simplex::triangle(p(&[0, 0]), p(&[1, 0]), p(&[0, 1])).unwrap();
        assert!(subdivide_simplex(&t).unwrap().is_empty());
    }

    #[test]
    fn refinement_partitions_lattice_points() {
        let cases = [
            Simplex::triangle(p(&[0, 0]), p(&[7, 2]), p(&[3, 9])).unwrap(),
            Simplex::triangle(p(&[0, 0, 0]), p(&[4, 2, 0]), p(&[1, 3, 5])).unwrap(),
            Simplex::tetrahedron(p(&[0, 0, 0]), p(&[4, 1, -2]), p(&[-1, 3, 2]), p(&[2, -3, 5]))
                .unwrap(),
            Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[4, 7, 19]))
                .unwrap(),
        ];
        for s in &cases {
            let leaves = refine(s);
            let verts: BTreeSet<IntPoint> =
                leaves.iter().flat_map(|l| l.vertices().to_vec()).collect();
            assert_eq!(verts, lattice_points(s));
            for l in &leaves {
                assert_eq!(lattice_points(l).len(), l.vertices().len());
            }
        }
    }
}
