use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::kernel::{kernel_grid_clamped, KERNEL_BUDGET};
use super::raster::{rasterize, transform_nodes, PointRaster, RasterMode, TransformedNodes};
use super::{fft_convolve, Field, KernelSpec, LatticeSpec};
use crate::error::{Error, Result};
use crate::point::IntPoint;
use crate::transform_search::TransformMatrix;

const NODE_BITS: u32 = 21;
const NODE_BIAS: i64 = 1 << (NODE_BITS - 1);

/// Standard normal draw for an original lattice node. The generator is
/// ChaCha8 seeded with `seed` on the stream given by the packed node
/// coordinates (21 bits each), so the value does not depend on the order
/// in which nodes are visited or on the transformation.
pub fn node_noise(seed: u64, node: &IntPoint) -> Result<f64> {
    if node.dim() > 3 {
        return Err(Error::PreconditionViolated("noise keys support up to 3 axes".into()));
    }
    let mut stream = 0u64;
    for (i, &c) in node.coords().iter().enumerate() {
        if c.abs() >= NODE_BIAS {
            return Err(Error::Overflow("noise key"));
        }
        stream |= ((c + NODE_BIAS) as u64) << (NODE_BITS * i as u32);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    Ok(rng.sample(StandardNormal))
}

/// Per-point values plus the convolved field over the image box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simulation {
    pub values: Vec<f64>,
    /// Convolved field on the transformed lattice, cropped to the image box.
    pub field: Field,
    pub nodes: TransformedNodes,
}

/// Unconditional simulation on an existing raster; see [`simulate`].
pub fn simulate_nodes(
    raster: &PointRaster,
    lattice: &LatticeSpec,
    kernel: &KernelSpec,
    a: &TransformMatrix,
    seed: u64,
) -> Result<Simulation> {
    let nodes = transform_nodes(raster, a)?;
    let dims: Vec<usize> = nodes.box_dims().iter().map(|&n| n as usize).collect();
    let mut noise = Field::zeros(dims, nodes.lo.clone())?;
    for (orig, img) in raster.active_nodes.iter().zip(&nodes.images) {
        let i = noise.index_of(img).expect("image inside its box");
        noise.values[i] = node_noise(seed, orig)?;
    }

    // offsets longer than the image box never connect two image nodes
    let span: Vec<i64> = nodes.box_dims().iter().map(|n| n - 1).collect();
    let grid = kernel_grid_clamped(kernel, a, lattice, KERNEL_BUDGET, &span)?;
    let grid = match grid.support() {
        Some((lo, hi)) => grid.crop(&lo, &hi)?,
        None => grid,
    };
    let conv = fft_convolve(&noise, &grid)?;

    let values = raster
        .entries
        .iter()
        .map(|entry| {
            entry
                .iter()
                .map(|(node, w)| {
                    let k = raster.active_nodes.binary_search(node).expect("active node");
                    w * conv.get(&nodes.images[k])
                })
                .sum()
        })
        .collect();
    let field = conv.crop(&nodes.lo, &nodes.hi)?;
    Ok(Simulation { values, field, nodes })
}

/// Unconditional Gaussian simulation at the given points.
///
/// Points are rasterized with multilinear weights, every active node gets
/// white noise keyed by its original coordinates, the noise is placed at
/// the node images under `a` and convolved with the kernel grid for `a`,
/// and each point reads back the convolved values at its nodes with its
/// raster weights. For any valid `a` the result agrees with `a = I` up to
/// FFT rounding.
pub fn simulate(
    points: &[Vec<f64>],
    lattice: &LatticeSpec,
    kernel: &KernelSpec,
    a: &TransformMatrix,
    seed: u64,
) -> Result<Vec<f64>> {
    let raster = rasterize(points, lattice, RasterMode::Multilinear)?;
    Ok(simulate_nodes(&raster, lattice, kernel, a, seed)?.values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_is_keyed_by_node() {
        let a = node_noise(7, &IntPoint::new(&[1, 2, 3])).unwrap();
        let b = node_noise(7, &IntPoint::new(&[1, 2, 3])).unwrap();
        let c = node_noise(7, &IntPoint::new(&[3, 2, 1])).unwrap();
        let d = node_noise(8, &IntPoint::new(&[1, 2, 3])).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert!(node_noise(7, &IntPoint::new(&[1 << 20, 0, 0])).is_err());
    }

    #[test]
    fn narrow_kernel_reads_own_corners() {
        let lat = LatticeSpec::with_step(1.0, 2).unwrap();
        let k = KernelSpec::triangular(0.5).unwrap();
        let pts = vec![vec![0.25, 0.5], vec![3.0, -1.0]];
        let got = simulate(&pts, &lat, &k, &TransformMatrix::identity(2), 5).unwrap();
        let raster = rasterize(&pts, &lat, RasterMode::Multilinear).unwrap();
        for (v, entry) in got.iter().zip(&raster.entries) {
            let want: f64 = entry.iter().map(|(n, w)| w * node_noise(5, n).unwrap()).sum();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn determinant_two_matches_identity() {
        let lat = LatticeSpec::with_step(0.5, 2).unwrap();
        let k = KernelSpec::triangular(2.2).unwrap();
        let pts: Vec<Vec<f64>> = (0..40)
            .map(|i| {
                let t = i as f64 * 0.13;
                vec![t.cos() * 3.0, t.sin() * 2.0 + t]
            })
            .collect();
        let id = simulate(&pts, &lat, &k, &TransformMatrix::identity(2), 9).unwrap();
        let a = TransformMatrix::from_nested(&[&[1, 1], &[1, -1]]).unwrap();
        let got = simulate(&pts, &lat, &k, &a, 9).unwrap();
        let err = id.iter().zip(&got).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }
}
