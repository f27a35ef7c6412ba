use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Field, LatticeSpec};
use crate::error::{Error, Result};
use crate::point::IntPoint;
use crate::transform_search::TransformMatrix;

/// Default cap on kernel grid nodes.
pub const KERNEL_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelShape {
    /// `k(h) = 1 - h / bandwidth` on `[0, bandwidth)`.
    Triangular,
}

/// Isotropic kernel with compact support `[0, bandwidth)` in world units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    shape: KernelShape,
    bandwidth: f64,
}

impl KernelSpec {
    pub fn new(shape: KernelShape, bandwidth: f64) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::BadKernel(format!("bandwidth {bandwidth} must be positive")));
        }
        Ok(KernelSpec { shape, bandwidth })
    }

    pub fn triangular(bandwidth: f64) -> Result<Self> {
        Self::new(KernelShape::Triangular, bandwidth)
    }

    pub fn shape(&self) -> KernelShape {
        self.shape
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn eval(&self, h: f64) -> f64 {
        if h >= self.bandwidth {
            return 0.0;
        }
        match self.shape {
            KernelShape::Triangular => 1.0 - h / self.bandwidth,
        }
    }
}

pub fn kernel_grid(kernel: &KernelSpec, a: &TransformMatrix, lattice: &LatticeSpec) -> Result<Field> {
    kernel_grid_with_budget(kernel, a, lattice, KERNEL_BUDGET)
}

/// The kernel sampled at integer offsets `u` of the transformed lattice:
/// `k(|A^-1 u| * step)`. `A^-1 u` is formed exactly as `adj(A) u / det(A)`
/// so that offsets between images of nodes reproduce the original
/// distances bit for bit.
pub fn kernel_grid_with_budget(
    kernel: &KernelSpec,
    a: &TransformMatrix,
    lattice: &LatticeSpec,
    budget: u128,
) -> Result<Field> {
    kernel_grid_clamped(kernel, a, lattice, budget, &[])
}

/// As [`kernel_grid_with_budget`], with the half-width of axis `i` capped at
/// `max_radius[i]` when given.
pub(crate) fn kernel_grid_clamped(
    kernel: &KernelSpec,
    a: &TransformMatrix,
    lattice: &LatticeSpec,
    budget: u128,
    max_radius: &[i64],
) -> Result<Field> {
    let d = a.dim();
    if lattice.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: lattice.dim(),
        });
    }
    // |u_i| = |row_i . w| <= |row_i| |w| < |row_i| * bandwidth / step
    let reach = kernel.bandwidth() / lattice.step();
    let full: Vec<i64> = a
        .rows()
        .iter()
        .map(|r| {
            let norm = (r.dot(r) as f64).sqrt();
            let x = (norm * reach).ceil();
            if x > (1u64 << 40) as f64 {
                Err(Error::SupportTooLarge {
                    nodes: u128::MAX,
                    budget,
                })
            } else {
                Ok(x as i64)
            }
        })
        .collect::<Result<_>>()?;
    let radius: Vec<i64> = full
        .iter()
        .enumerate()
        .map(|(i, &r)| max_radius.get(i).map_or(r, |&m| r.min(m.max(0))))
        .collect();
    let nodes = radius
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(2 * r as u128 + 1))
        .unwrap_or(u128::MAX);
    if nodes > budget {
        return Err(Error::SupportTooLarge { nodes, budget });
    }

    let adj = a.matrix().adjugate();
    let det = a.det().unsigned_abs() as f64;
    let dims: Vec<usize> = radius.iter().map(|&r| 2 * r as usize + 1).collect();
    let offset: IntPoint = radius.iter().map(|&r| -r).collect::<Vec<_>>().into();
    let mut field = Field::zeros(dims, offset)?;
    let shape = field.clone_shape();
    field.values.par_iter_mut().enumerate().for_each(|(i, value)| {
        let u = shape.node_of(i);
        let norm2: i128 = adj
            .iter()
            .map(|row| {
                let w: i128 = row.iter().zip(u.coords()).map(|(&c, &x)| c * x as i128).sum();
                w * w
            })
            .sum();
        let h = (norm2 as f64).sqrt() / det * lattice.step();
        *value = kernel.eval(h);
    });
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bandwidth_must_be_positive() {
        assert!(matches!(KernelSpec::triangular(0.0), Err(Error::BadKernel(_))));
        assert!(matches!(KernelSpec::triangular(f64::NAN), Err(Error::BadKernel(_))));
    }

    #[test]
    fn identity_grid() {
        let k = KernelSpec::triangular(3.0).unwrap();
        let lat = LatticeSpec::with_step(1.0, 2).unwrap();
        let g = kernel_grid(&k, &TransformMatrix::identity(2), &lat).unwrap();
        assert_eq!(g.dims, vec![7, 7]);
        assert_eq!(g.get(&IntPoint::new(&[0, 0])), 1.0);
        assert_eq!(g.get(&IntPoint::new(&[3, 0])), 0.0);
        assert!((g.get(&IntPoint::new(&[1, 1])) - (1.0 - 2f64.sqrt() / 3.0)).abs() < 1e-15);
        for i in 0..g.values.len() {
            let u = g.node_of(i);
            assert_eq!(g.values[i], g.get(&-&u));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k = KernelSpec::triangular(1.0).unwrap();
        let lat = LatticeSpec::with_step(1e-3, 3).unwrap();
        assert!(matches!(
            kernel_grid_with_budget(&k, &TransformMatrix::identity(3), &lat, 1000),
            Err(Error::SupportTooLarge { .. })
        ));
    }
}
