//! Integer row reduction to upper-triangular (Hermite) form while tracking
//! the unimodular factor.
//!
//! For an `m x k` integer matrix `A` of full column rank we produce `X`
//! (`m x m`, `|det X| = 1`) and `R` (`m x k`, upper triangular, positive
//! diagonal, entries above each pivot reduced into `[0, pivot)`) with
//! `X * R = A`. Only row swaps, row negations and adding integer multiples of
//! one row to another are used.

use crate::error::{Error, Result};
use crate::point::{narrow, IntMatrix};

/// `X * R = A` with `X` unimodular and `R` in row Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowHermite {
    pub x: IntMatrix,
    pub r: IntMatrix,
}

struct Work {
    r: Vec<Vec<i128>>,
    x: Vec<Vec<i128>>,
}

impl Work {
    fn swap(&mut self, i: usize, j: usize) {
        self.r.swap(i, j);
        for row in &mut self.x {
            row.swap(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        self.r[i].iter_mut().for_each(|v| *v = -*v);
        for row in &mut self.x {
            row[i] = -row[i];
        }
    }

    /// row_i += c * row_j on `R`; the compensating column op on `X` is
    /// col_j -= c * col_i.
    fn add_multiple(&mut self, i: usize, j: usize, c: i128) {
        if c == 0 {
            return;
        }
        let (src, dst) = if i < j {
            let (a, b) = self.r.split_at_mut(j);
            (&b[0], &mut a[i])
        } else {
            let (a, b) = self.r.split_at_mut(i);
            (&a[j], &mut b[0])
        };
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            *d += c * s;
        }
        for row in &mut self.x {
            row[j] -= c * row[i];
        }
    }
}

/// Row Hermite normal form of `a`. Fails with [`Error::SingularMatrix`] when
/// the columns are linearly dependent.
pub fn row_hermite(a: &IntMatrix) -> Result<RowHermite> {
    let (m, k) = (a.rows(), a.cols());
    let mut w = Work {
        r: (0..m).map(|i| (0..k).map(|j| a[(i, j)] as i128).collect()).collect(),
        x: (0..m)
            .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
            .collect(),
    };
    for col in 0..k {
        let pivot = col;
        if pivot >= m {
            return Err(Error::SingularMatrix);
        }
        // Euclid down the column until only the pivot row is nonzero.
        loop {
            let best = (pivot..m)
                .filter(|&i| w.r[i][col] != 0)
                .min_by_key(|&i| w.r[i][col].abs());
            let Some(best) = best else {
                return Err(Error::SingularMatrix);
            };
            if best != pivot {
                w.swap(best, pivot);
            }
            let p = w.r[pivot][col];
            let mut done = true;
            for i in pivot + 1..m {
                let v = w.r[i][col];
                if v != 0 {
                    w.add_multiple(i, pivot, -v.div_euclid(p));
                    if w.r[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if w.r[pivot][col] < 0 {
            w.negate(pivot);
        }
        let p = w.r[pivot][col];
        for i in 0..pivot {
            let q = w.r[i][col].div_euclid(p);
            w.add_multiple(i, pivot, -q);
        }
    }
    let to_matrix = |rows: &Vec<Vec<i128>>, cols: usize| -> Result<IntMatrix> {
        let mut out = IntMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[(i, j)] = narrow(v, "hermite reduction")?;
            }
        }
        Ok(out)
    };
    Ok(RowHermite {
        x: to_matrix(&w.x, m)?,
        r: to_matrix(&w.r, k)?,
    })
}

/// `A = L * X` with `L` lower triangular and `X` unimodular (column
/// operations only), obtained by transposing the row form.
pub fn column_hermite(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let h = row_hermite(&a.transpose())?;
    Ok((h.r.transpose(), h.x.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> RowHermite {
        let h = row_hermite(a).unwrap();
        assert_eq!(h.x.checked_mul(&h.r).unwrap(), *a);
        assert_eq!(h.x.det().abs(), 1);
        for j in 0..a.cols() {
            assert!(h.r[(j, j)] > 0);
            for i in j + 1..a.rows() {
                assert_eq!(h.r[(i, j)], 0);
            }
            for i in 0..j {
                assert!((0..h.r[(j, j)]).contains(&h.r[(i, j)]));
            }
        }
        h
    }

    #[test]
    fn triangle_edge_matrix() {
        let h = check(&IntMatrix::from_nested(&[&[1, 2], &[2, 1]]));
        assert_eq!(h.r, IntMatrix::from_nested(&[&[1, 2], &[0, 3]]));
        let h = check(&IntMatrix::from_nested(&[&[1, 2], &[0, 5]]));
        assert_eq!(h.x, IntMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_square() {
        check(&IntMatrix::from_nested(&[&[3, 7], &[-5, 2], &[4, 4]]));
        check(&IntMatrix::from_nested(&[&[6, 4, -2], &[9, 1, 7], &[-3, 8, 5]]));
        assert_eq!(
            row_hermite(&IntMatrix::from_nested(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn column_form_is_lower_triangular() {
        let a = IntMatrix::from_nested(&[&[1, 0], &[1, 2]]);
        let (l, x) = column_hermite(&a).unwrap();
        assert_eq!(l.checked_mul(&x).unwrap(), a);
        assert_eq!(l[(0, 1)], 0);
    }
}
