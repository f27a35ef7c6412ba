//! Exact integer lattice points and small dense integer matrices.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Greatest common divisor of two integers, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0, |g, &v| gcd(g, v))
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

pub(crate) fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// A point (or direction) of the integer lattice `Z^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IntPoint(SmallVec<[i64; 4]>);

impl IntPoint {
    pub fn new(coords: &[i64]) -> Self {
        IntPoint(SmallVec::from_slice(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        IntPoint(SmallVec::from_elem(0, dim))
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Self::zeros(dim);
        p.0[axis] = 1;
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Exact dot product; widened so that any two `i64` vectors of
    /// dimension <= 3 with |coord| < 2^62 cannot overflow.
    pub fn dot(&self, other: &IntPoint) -> i128 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    pub fn checked_add(&self, other: &IntPoint) -> Result<IntPoint> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &IntPoint) -> Result<IntPoint> {
        self.zip_with(other, i64::checked_sub)
    }

    fn zip_with(&self, other: &IntPoint, f: fn(i64, i64) -> Option<i64>) -> Result<IntPoint> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow("lattice point arithmetic")))
            .collect::<Result<SmallVec<_>>>()
            .map(IntPoint)
    }

    pub fn scale(&self, k: i64) -> IntPoint {
        IntPoint(
            self.0
                .iter()
                .map(|&c| c.checked_mul(k).expect("lattice coordinate overflow"))
                .collect(),
        )
    }

    /// Divides every coordinate by `k`, which must divide all of them.
    pub fn div_exact(&self, k: i64) -> IntPoint {
        debug_assert!(self.0.iter().all(|&c| c % k == 0));
        IntPoint(self.0.iter().map(|&c| c / k).collect())
    }

    /// gcd of all coordinates (0 for the zero vector).
    pub fn content(&self) -> i64 {
        gcd_all(&self.0)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The primitive vector in the same direction; zero stays zero.
    pub fn primitive(&self) -> IntPoint {
        match self.content() {
            0 | 1 => self.clone(),
            g => self.div_exact(g),
        }
    }

    /// `self` or `-self`, whichever has its first nonzero coordinate positive.
    pub fn sign_canonical(&self) -> IntPoint {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => -self,
            _ => self.clone(),
        }
    }

    pub fn is_sign_canonical(&self) -> bool {
        !matches!(self.0.iter().find(|&&c| c != 0), Some(&c) if c < 0)
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.0.to_vec()
    }
}

impl From<Vec<i64>> for IntPoint {
    fn from(v: Vec<i64>) -> Self {
        IntPoint(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[i64; N]> for IntPoint {
    fn from(v: [i64; N]) -> Self {
        IntPoint::new(&v)
    }
}

impl Index<usize> for IntPoint {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for IntPoint {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl Add for &IntPoint {
    type Output = IntPoint;
    fn add(self, rhs: &IntPoint) -> IntPoint {
        self.checked_add(rhs).expect("lattice coordinate overflow")
    }
}

impl Sub for &IntPoint {
    type Output = IntPoint;
    fn sub(self, rhs: &IntPoint) -> IntPoint {
        self.checked_sub(rhs).expect("lattice coordinate overflow")
    }
}

impl Neg for &IntPoint {
    type Output = IntPoint;
    fn neg(self) -> IntPoint {
        IntPoint(self.0.iter().map(|&c| -c).collect())
    }
}

impl fmt::Debug for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[IntPoint]) -> Self {
        let cols = rows.first().map_or(0, IntPoint::dim);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r.coords());
        }
        m
    }

    pub fn from_columns(cols: &[IntPoint]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_nested(rows: &[&[i64]]) -> Self {
        Self::from_rows(&rows.iter().map(|r| IntPoint::new(r)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> IntPoint {
        IntPoint::new(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn column(&self, j: usize) -> IntPoint {
        (0..self.rows).map(|i| self[(i, j)]).collect::<Vec<_>>().into()
    }

    pub fn row_vec(&self) -> Vec<IntPoint> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_row(&mut self, i: usize, r: &IntPoint) {
        assert_eq!(r.dim(), self.cols);
        self.data[i * self.cols..(i + 1) * self.cols].copy_from_slice(r.coords());
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let s: i128 = (0..self.cols)
                    .map(|k| self[(i, k)] as i128 * rhs[(k, j)] as i128)
                    .sum();
                out[(i, j)] = narrow(s, "matrix product")?;
            }
        }
        Ok(out)
    }

    pub fn mul_point(&self, v: &IntPoint) -> Result<IntPoint> {
        assert_eq!(self.cols, v.dim(), "shape mismatch");
        (0..self.rows)
            .map(|i| narrow(self.row(i).dot(v), "matrix-vector product"))
            .collect::<Result<Vec<_>>>()
            .map(IntPoint::from)
    }

    /// Exact determinant of a square matrix (fraction-free elimination).
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        match n {
            0 => 1,
            1 => self.data[0] as i128,
            2 => self[(0, 0)] as i128 * self[(1, 1)] as i128 - self[(0, 1)] as i128 * self[(1, 0)] as i128,
            3 => det3(
                [self[(0, 0)], self[(0, 1)], self[(0, 2)]],
                [self[(1, 0)], self[(1, 1)], self[(1, 2)]],
                [self[(2, 0)], self[(2, 1)], self[(2, 2)]],
            ),
            _ => bareiss_det(&self.data.iter().map(|&v| v as i128).collect::<Vec<_>>(), n),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] as i128).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                if m[r][c] != 0 {
                    let (a, b) = (m[rank][c], m[r][c]);
                    for k in c..self.cols {
                        m[r][k] = m[r][k] * a - m[rank][k] * b;
                    }
                    let g = m[r].iter().fold(0i128, |g, &v| gcd128(g, v));
                    if g > 1 {
                        m[r].iter_mut().for_each(|v| *v /= g);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Adjugate of a square matrix of size 2 or 3, so `self * adj = det * I`.
    pub fn adjugate(&self) -> Vec<Vec<i128>> {
        assert_eq!(self.rows, self.cols);
        let a = |i: usize, j: usize| self[(i, j)] as i128;
        match self.rows {
            1 => vec![vec![1]],
            2 => vec![vec![a(1, 1), -a(0, 1)], vec![-a(1, 0), a(0, 0)]],
            3 => {
                let mut adj = vec![vec![0i128; 3]; 3];
                for i in 0..3 {
                    for j in 0..3 {
                        let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                        let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                        adj[i][j] = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
                    }
                }
                adj
            }
            n => panic!("adjugate not implemented for {n}x{n}"),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

pub(crate) fn det3(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i128 {
    let w = |v: [i64; 3]| [v[0] as i128, v[1] as i128, v[2] as i128];
    let (a, b, c) = (w(a), w(b), w(c));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn bareiss_det(data: &[i128], n: usize) -> i128 {
    let mut m: Vec<Vec<i128>> = (0..n).map(|i| data[i * n..(i + 1) * n].to_vec()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
