//! Kernel convolution of lattice white noise in transformed coordinates.
//!
//! Surface points are rasterized onto a cubic lattice, the active nodes are
//! mapped by an integer matrix `A` into a (hopefully much smaller) box, and
//! the noise is convolved there with the kernel resampled at `A^-1 u`.
//! Because `A` is a bijection of nodes onto image nodes and the FFT is
//! padded to a full linear convolution, the result at each original node is
//! the same for every valid `A`.

mod fft;
mod kernel;
mod raster;
mod simulate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::IntPoint;

pub use fft::{direct_convolve, direct_convolve_with_budget, fft_convolve, DIRECT_BUDGET};
pub use kernel::{kernel_grid, kernel_grid_with_budget, KernelShape, KernelSpec, KERNEL_BUDGET};
pub use raster::{rasterize, transform_nodes, PointRaster, RasterMode, TransformedNodes};
pub use simulate::{node_noise, simulate, simulate_nodes, Simulation};

/// World placement of the lattice: node `i` sits at `origin + step * i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    step: f64,
    origin: Vec<f64>,
}

impl LatticeSpec {
    pub fn new(step: f64, origin: Vec<f64>) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::PreconditionViolated(format!("lattice step {step} must be positive")));
        }
        if let Some(i) = origin.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteCoordinate(i));
        }
        Ok(LatticeSpec { step, origin })
    }

    /// Lattice with its node 0 at the world origin.
    pub fn with_step(step: f64, dim: usize) -> Result<Self> {
        Self::new(step, vec![0.0; dim])
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }
}

/// Dense real grid over the lattice box `offset .. offset + dims`,
/// row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Field {
    pub dims: Vec<usize>,
    pub offset: IntPoint,
    pub values: Vec<f64>,
}

impl Field {
    pub fn new(dims: Vec<usize>, offset: IntPoint, values: Vec<f64>) -> Result<Self> {
        if dims.len() != offset.dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.len(),
                got: offset.dim(),
            });
        }
        let len = checked_len(&dims)?;
        if values.len() != len {
            return Err(Error::PreconditionViolated(format!(
                "field has {} values, dims need {len}",
                values.len()
            )));
        }
        Ok(Field { dims, offset, values })
    }

    pub fn zeros(dims: Vec<usize>, offset: IntPoint) -> Result<Self> {
        let len = checked_len(&dims)?;
        Self::new(dims, offset, vec![0.0; len])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    /// Same box with no values, for index arithmetic while `values` is
    /// borrowed.
    pub(crate) fn clone_shape(&self) -> Field {
        Field {
            dims: self.dims.clone(),
            offset: self.offset.clone(),
            values: Vec::new(),
        }
    }

    /// Lattice index of the last cell.
    pub fn upper(&self) -> IntPoint {
        self.offset
            .coords()
            .iter()
            .zip(&self.dims)
            .map(|(&o, &n)| o + n as i64 - 1)
            .collect::<Vec<_>>()
            .into()
    }

    /// Flat index of lattice node `p`, if it lies in the box.
    pub fn index_of(&self, p: &IntPoint) -> Option<usize> {
        let mut idx = 0usize;
        for ((&c, &o), &n) in p.coords().iter().zip(self.offset.coords()).zip(&self.dims) {
            let r = c.checked_sub(o)?;
            if r < 0 || r as usize >= n {
                return None;
            }
            idx = idx * n + r as usize;
        }
        Some(idx)
    }

    /// Value at lattice node `p`; zero outside the box.
    pub fn get(&self, p: &IntPoint) -> f64 {
        self.index_of(p).map_or(0.0, |i| self.values[i])
    }

    /// Lattice node of flat index `i`.
    pub fn node_of(&self, mut i: usize) -> IntPoint {
        let mut c = vec![0i64; self.dim()];
        for a in (0..self.dim()).rev() {
            c[a] = self.offset[a] + (i % self.dims[a]) as i64;
            i /= self.dims[a];
        }
        c.into()
    }

    /// Sub-box `lo ..= hi` (clamped to this field).
    pub fn crop(&self, lo: &IntPoint, hi: &IntPoint) -> Result<Field> {
        let up = self.upper();
        let lo: Vec<i64> = (0..self.dim()).map(|a| lo[a].max(self.offset[a])).collect();
        let hi: Vec<i64> = (0..self.dim()).map(|a| hi[a].min(up[a])).collect();
        let dims: Vec<usize> = lo.iter().zip(&hi).map(|(l, h)| (h - l + 1).max(0) as usize).collect();
        let mut out = Field::zeros(dims, lo.into())?;
        for i in 0..out.values.len() {
            let p = out.node_of(i);
            out.values[i] = self.get(&p);
        }
        Ok(out)
    }

    /// Smallest box holding every nonzero value, or `None` if all are zero.
    pub fn support(&self) -> Option<(IntPoint, IntPoint)> {
        let d = self.dim();
        let mut lo = vec![i64::MAX; d];
        let mut hi = vec![i64::MIN; d];
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0.0 {
                let p = self.node_of(i);
                for a in 0..d {
                    lo[a] = lo[a].min(p[a]);
                    hi[a] = hi[a].max(p[a]);
                }
            }
        }
        (lo[0] <= hi[0]).then(|| (lo.into(), hi.into()))
    }
}

pub(crate) fn checked_len(dims: &[usize]) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .ok_or(Error::SizeOverflow)
}
