//! Area-uniform samples on a spherical cap of the unit sphere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// How far `|center|` may stray from 1 before it is rejected; accepted
/// centers are normalized. Loose enough for centers given to six decimals.
pub const CENTER_TOLERANCE: f64 = 1e-5;

/// `count` points within `radius_deg` (central angle) of `center`.
///
/// Around the north pole, `z` is uniform on `[cos r, 1]` and the azimuth is
/// uniform on `[0, 2 pi)`, which is uniform in area. The samples are then
/// rotated onto `center` about the common normal of the pole and `center`.
/// The generator is ChaCha8 seeded with `seed`; each point takes two draws.
pub fn sample_cap(count: usize, center: [f64; 3], radius_deg: f64, seed: u64) -> Result<Vec<[f64; 3]>, CliError> {
    let norm = center.iter().map(|c| c * c).sum::<f64>().sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > CENTER_TOLERANCE {
        return Err(CliError::BadCenter(norm));
    }
    if !(radius_deg > 0.0 && radius_deg < 90.0) {
        return Err(CliError::BadRadius(radius_deg));
    }
    let c = center.map(|x| x / norm);
    let rot = Rotation::pole_to(c);
    let zmin = radius_deg.to_radians().cos();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let z = zmin + rng.random::<f64>() * (1.0 - zmin);
            let phi = rng.random::<f64>() * std::f64::consts::TAU;
            let s = (1.0 - z * z).max(0.0).sqrt();
            rot.apply([s * phi.cos(), s * phi.sin(), z])
        })
        .collect())
}

/// Rodrigues rotation taking `(0, 0, 1)` to a unit vector.
struct Rotation {
    axis: [f64; 3],
    cos: f64,
    sin: f64,
}

impl Rotation {
    fn pole_to(c: [f64; 3]) -> Self {
        // axis = e_z x c
        let axis = [-c[1], c[0], 0.0];
        let sin = (axis[0] * axis[0] + axis[1] * axis[1]).sqrt();
        if sin == 0.0 {
            // c is a pole: identity, or a half turn about x
            return Rotation {
                axis: [1.0, 0.0, 0.0],
                cos: c[2].signum(),
                sin: 0.0,
            };
        }
        Rotation {
            axis: axis.map(|a| a / sin),
            cos: c[2],
            sin,
        }
    }

    fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        let k = self.axis;
        let cross = [
            k[1] * p[2] - k[2] * p[1],
            k[2] * p[0] - k[0] * p[2],
            k[0] * p[1] - k[1] * p[0],
        ];
        let dot = k[0] * p[0] + k[1] * p[1] + k[2] * p[2];
        std::array::from_fn(|i| p[i] * self.cos + cross[i] * self.sin + k[i] * dot * (1.0 - self.cos))
    }
}
