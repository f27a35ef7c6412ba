use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::Simplex;
use crate::error::{Error, Result};
use crate::point::{IntMatrix, IntPoint};

/// Default cap on the number of lattice cells a brute-force scan may visit.
pub const DEFAULT_SCAN_BUDGET: u128 = 100_000_000;

/// Where a lattice point sits relative to a simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointClass {
    Interior,
    /// Relative interior of a 2-face of a tetrahedron.
    Face,
    /// Relative interior of an edge.
    Edge,
    Vertex,
}

/// Exact barycentric coordinates with a common positive denominator.
pub(crate) struct Barycentric {
    origin: IntPoint,
    edges: Vec<IntPoint>,
    sel: Vec<usize>,
    adj: Vec<Vec<i128>>,
    den: i128,
}

impl Barycentric {
    pub(crate) fn new(s: &Simplex) -> Result<Self> {
        let edges = s.edges()?;
        let (k, d) = (edges.len(), s.ambient_dim());
        let minor = |sel: &[usize]| {
            let rows: Vec<IntPoint> = sel
                .iter()
                .map(|&i| edges.iter().map(|e| e[i]).collect::<Vec<_>>().into())
                .collect();
            IntMatrix::from_rows(&rows)
        };
        let sel = combinations(d, k)
            .into_iter()
            .find(|sel| minor(sel).det() != 0)
            .ok_or(Error::DegenerateSimplex)?;
        let m = minor(&sel);
        let (mut adj, mut den) = (m.adjugate(), m.det());
        if den < 0 {
            den = -den;
            adj.iter_mut().flatten().for_each(|v| *v = -*v);
        }
        Ok(Barycentric {
            origin: s.vertices()[0].clone(),
            edges,
            sel,
            adj,
            den,
        })
    }

    /// `[l0, l1, ..., lk]` numerators over a common positive denominator, or `None`
    /// when `x` is off the simplex's affine hull.
    pub(crate) fn weights(&self, x: &IntPoint) -> Option<SmallVec<[i128; 4]>> {
        let r: SmallVec<[i128; 4]> = x
            .coords()
            .iter()
            .zip(self.origin.coords())
            .map(|(&a, &b)| a as i128 - b as i128)
            .collect();
        let k = self.edges.len();
        let w: SmallVec<[i128; 4]> = (0..k)
            .map(|c| (0..k).map(|j| self.adj[c][j] * r[self.sel[j]]).sum())
            .collect();
        if self.sel.len() < r.len() {
            for (i, &ri) in r.iter().enumerate() {
                let lhs: i128 = (0..k).map(|c| self.edges[c][i] as i128 * w[c]).sum();
                if lhs != self.den * ri {
                    return None;
                }
            }
        }
        let mut out = SmallVec::new();
        out.push(self.den - w.iter().sum::<i128>());
        out.extend(w);
        Some(out)
    }

    pub(crate) fn classify(&self, x: &IntPoint) -> Option<PointClass> {
        let w = self.weights(x)?;
        if w.iter().any(|&v| v < 0) {
            return None;
        }
        let zeros = w.iter().filter(|&&v| v == 0).count();
        let k = w.len() - 1;
        Some(match (k, zeros) {
            (_, 0) => PointClass::Interior,
            (3, 1) => PointClass::Face,
            (_, z) if z == k => PointClass::Vertex,
            _ => PointClass::Edge,
        })
    }

    pub(crate) fn is_interior(&self, x: &IntPoint) -> bool {
        self.classify(x) == Some(PointClass::Interior)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Bounding box of the slice of the simplex by the hyperplane `x_t = level`
/// over the remaining axes.
fn slice_box(v: &[IntPoint], t: usize, level: i64) -> Vec<(i64, i64)> {
    let d = v[0].dim();
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    let mut include = |num: &dyn Fn(usize) -> (i128, i128)| {
        for i in (0..d).filter(|&i| i != t) {
            let (n, q) = num(i);
            lo[i] = lo[i].min(n.div_euclid(q) as i64);
            hi[i] = hi[i].max((n + q - 1).div_euclid(q) as i64);
        }
    };
    for a in 0..v.len() {
        if v[a][t] == level {
            include(&|i| (v[a][i] as i128, 1));
        }
        for b in a + 1..v.len() {
            let (u, w) = (&v[a], &v[b]);
            let (ut, wt) = (u[t] as i128, w[t] as i128);
            let l = level as i128;
            if ut == wt || (ut - l) * (wt - l) >= 0 {
                continue;
            }
            include(&|i| {
                let (ui, wi) = (u[i] as i128, w[i] as i128);
                let (n, q) = (ui * (wt - ut) + (l - ut) * (wi - ui), wt - ut);
                if q < 0 {
                    (-n, -q)
                } else {
                    (n, q)
                }
            });
        }
    }
    lo.into_iter().zip(hi).collect()
}

/// Every lattice point of the closed simplex with its class, found by
/// scanning integer slices along the last axis. Fails with
/// [`Error::BoxTooLarge`] when the slice boxes hold more than `budget` cells.
pub fn brute_force_classified(s: &Simplex, budget: u128) -> Result<Vec<(IntPoint, PointClass)>> {
    let v = s.vertices();
    let d = s.ambient_dim();
    let t = d - 1;
    let bary = Barycentric::new(s)?;
    let zmin = v.iter().map(|p| p[t]).min().expect("vertices");
    let zmax = v.iter().map(|p| p[t]).max().expect("vertices");
    let mut boxes = Vec::with_capacity((zmax - zmin + 1) as usize);
    let mut cells: u128 = 0;
    for level in zmin..=zmax {
        let b = slice_box(v, t, level);
        let n: u128 = (0..d)
            .filter(|&i| i != t)
            .map(|i| (b[i].1 - b[i].0 + 1).max(0) as u128)
            .product();
        cells = cells.saturating_add(n);
        if cells > budget {
            return Err(Error::BoxTooLarge { cells, budget });
        }
        boxes.push((level, b));
    }

    let mut out = Vec::new();
    for (level, b) in boxes {
        let mut cur: Vec<i64> = b.iter().map(|r| r.0).collect();
        cur[t] = level;
        if (0..d).any(|i| i != t && b[i].0 > b[i].1) {
            continue;
        }
        loop {
            let x = IntPoint::new(&cur);
            if let Some(c) = bary.classify(&x) {
                out.push((x, c));
            }
            // odometer over the non-slice axes
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                if i == t {
                    i += 1;
                    continue;
                }
                if cur[i] < b[i].1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = b[i].0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Strictly interior lattice points with the default scan budget.
pub fn brute_force_interior_points(s: &Simplex) -> Result<Vec<IntPoint>> {
    brute_force_interior_points_with_budget(s, DEFAULT_SCAN_BUDGET)
}

pub fn brute_force_interior_points_with_budget(s: &Simplex, budget: u128) -> Result<Vec<IntPoint>> {
    Ok(brute_force_classified(s, budget)?
        .into_iter()
        .filter(|(_, c)| *c == PointClass::Interior)
        .map(|(p, _)| p)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::new(c)
    }

    fn tet(a: i64, b: i64, n: i64) -> Simplex {
        Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[a, b, n])).unwrap()
    }

    /// Plain bounding-box scan, used to check the slice scan.
    fn box_scan(s: &Simplex) -> Vec<(IntPoint, PointClass)> {
        let bary = Barycentric::new(s).unwrap();
        let v = s.vertices();
        let d = s.ambient_dim();
        let lo: Vec<i64> = (0..d).map(|i| v.iter().map(|x| x[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..d).map(|i| v.iter().map(|x| x[i]).max().unwrap()).collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let x = IntPoint::new(&cur);
            if let Some(c) = bary.classify(&x) {
                out.push((x, c));
            }
            for i in 0..d {
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    continue 'outer;
                }
                cur[i] = lo[i];
            }
            break;
        }
        out.sort();
        out
    }

    #[test]
    fn footnote_tetrahedra_have_no_interior_points() {
        for (a, b, n) in [(2, 5, 9), (3, 5, 14)] {
            let s = tet(a, b, n);
            assert!(brute_force_interior_points(&s).unwrap().is_empty());
            let all = brute_force_classified(&s, DEFAULT_SCAN_BUDGET).unwrap();
            assert!(all.iter().any(|(_, c)| *c == PointClass::Face));
        }
    }

    #[test]
    fn small_triangle() {
        let s = Simplex::triangle(p(&[0, 0]), p(&[1, 2]), p(&[2, 1])).unwrap();
        assert_eq!(brute_force_interior_points(&s).unwrap(), vec![p(&[1, 1])]);
    }

    #[test]
    fn slice_scan_matches_box_scan() {
        let cases = [
            Simplex::triangle(p(&[-3, 7]), p(&[5, -2]), p(&[4, 6])).unwrap(),
            Simplex::triangle(p(&[0, 0, 0]), p(&[4, 2, 0]), p(&[1, 3, 5])).unwrap(),
            Simplex::triangle(p(&[1, 1, 2]), p(&[3, 5, 2]), p(&[-2, 4, 2])).unwrap(),
            Simplex::tetrahedron(p(&[0, 0, 0]), p(&[4, 1, -2]), p(&[-1, 3, 2]), p(&[2, -3, 5]))
                .unwrap(),
            tet(3, 4, 5),
        ];
        for s in &cases {
            assert_eq!(brute_force_classified(s, DEFAULT_SCAN_BUDGET).unwrap(), box_scan(s));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = Simplex::triangle(p(&[0, 0]), p(&[1000, 0]), p(&[0, 1000])).unwrap();
        assert!(matches!(
            brute_force_interior_points_with_budget(&s, 1000),
            Err(Error::BoxTooLarge { .. })
        ));
    }

    #[test]
    fn classes_on_unit_cube_corner() {
        let s = tet(1, 1, 2);
        let all = brute_force_classified(&s, DEFAULT_SCAN_BUDGET).unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|(_, c)| *c == PointClass::Vertex));
    }
}
