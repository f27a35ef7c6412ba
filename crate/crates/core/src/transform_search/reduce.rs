use super::TransformMatrix;
use crate::error::{Error, Result};
use crate::hermite::column_hermite;
use crate::lattice_geometry::{extent, Hull};
use crate::point::IntPoint;

/// Lowers `|det|` to 1 (2D) or to 1 or 2 (3D) without growing any row's
/// extent over `hull`.
///
/// With rows primitive, write `A = L X` (`L` lower triangular, `X`
/// unimodular, below-diagonal entries of `L` reduced modulo the diagonal).
/// If `L[1] = (m, n)` with `n > 1`, the lattice vector `x0 + x1` equals
/// `(r1 + (n - m) r0) / n`; its width is at most the larger width of
/// `r0, r1`, and swapping it in for the wider of the two strictly lowers
/// `|det|`. In 3D, once `L[1] = (0, 1)`, the last row `L[2] = (a, b, c)`
/// is handled the same way with `u1 x0 + u2 x1 + x2`, `u_i` in `{0, 1}`
/// chosen to minimize `|c u1 - a|` and `|c u2 - b|`. The coefficient sum
/// stays at most 1 except for `(a, b, c) = (1, 1, 2)`, where `|det| = 2` is
/// kept.
pub fn reduce_determinant(m: &TransformMatrix, hull: &Hull) -> Result<TransformMatrix> {
    let d = m.dim();
    if d != hull.dimension() {
        return Err(Error::DimensionMismatch {
            expected: hull.dimension(),
            got: d,
        });
    }
    let mut rows: Vec<IntPoint> = m.rows().iter().map(IntPoint::primitive).collect();
    let mut ext: Vec<i64> = rows.iter().map(|r| extent(r, hull)).collect::<Result<_>>()?;

    loop {
        let a = crate::point::IntMatrix::from_rows(&rows);
        let (l, x) = column_hermite(&a)?;
        let (u, movable) = if l[(1, 1)] != 1 {
            (&x.row(0) + &x.row(1), [true, true, false])
        } else if d == 3 && l[(2, 2)] != 1 {
            let (a, b, c) = (l[(2, 0)], l[(2, 1)], l[(2, 2)]);
            if (a, b, c) == (1, 1, 2) {
                break;
            }
            let u1 = i64::from(a > c - a);
            let u2 = i64::from(b > c - b);
            let u = &(&x.row(0).scale(u1) + &x.row(1).scale(u2)) + &x.row(2);
            (u, [c * u1 != a, c * u2 != b, true])
        } else {
            break;
        };
        let u = u.primitive();
        let e = extent(&u, hull)?;
        // replace the widest row that carries weight; ties go to the later row
        let k = (0..d)
            .filter(|&i| movable[i])
            .max_by_key(|&i| (ext[i], i))
            .expect("some row carries weight");
        debug_assert!(e <= ext[k], "substitute row is wider");
        rows[k] = u;
        ext[k] = e;
    }
    TransformMatrix::new(rows)
}
