//! Oracle suites for `latbox verify`. Each suite compares a fast path with
//! an exhaustive one and reports how many checks ran and which failed.

use std::time::Instant;

use latbox::convolution::{direct_convolve, fft_convolve, Field};
use latbox::fixtures::{det2_plane_points, det2_space_points};
use latbox::integer_points::{
    brute_force_classified, brute_force_interior_points, pick_interior_count,
    tetrahedron_interior_point, PointClass, Simplex, TriangularForm3, DEFAULT_SCAN_BUDGET,
};
use latbox::lattice_geometry::{antipodal_cones, convex_hull};
use latbox::transform_search::{
    brute_force_optimize, brute_force_optimize_with, enumerate_candidates, optimize_transform,
    reduce_determinant, select_basis, BruteForceOptions, SearchResult, TransformMatrix,
};
use latbox::IntPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::CliError;

pub const SUITES: [&str; 8] = [
    "pick",
    "tetra-sweep",
    "empty-tetrahedra",
    "fft",
    "pruning",
    "oracle-2d",
    "det2-plane",
    "det2-space",
];

/// Failure messages kept per suite; the count is always exact.
const MAX_REPORTED: usize = 5;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checks > 0
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub seconds: f64,
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run(name: &str) -> Result<Vec<SuiteReport>, CliError> {
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => {
            return Err(CliError::Usage(format!(
                "unknown suite {s:?}; expected one of: all, {}",
                SUITES.join(", ")
            )))
        }
    };
    names
        .into_iter()
        .map(|s| {
            let t = Instant::now();
            let out = match s {
                "pick" => pick(1000)?,
                "tetra-sweep" => tetra_sweep(64)?,
                "empty-tetrahedra" => empty_tetrahedra()?,
                "fft" => fft(50)?,
                "pruning" => pruning(30)?,
                "oracle-2d" => oracle_2d(200)?,
                "det2-plane" => det2_plane()?,
                "det2-space" => det2_space()?,
                _ => unreachable!(),
            };
            Ok(SuiteReport {
                suite: s.to_string(),
                passed: out.passed(),
                checks: out.checks,
                failed: out.failed,
                failures: out.failures,
                seconds: t.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

fn p(c: &[i64]) -> IntPoint {
    IntPoint::new(c)
}

/// Random point set of `d + 1..=12` points in `[-r, r]^d` with a full
/// dimensional hull.
pub fn random_points(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Vec<IntPoint> {
    loop {
        let n = rng.random_range(d + 1..=12);
        let pts: Vec<IntPoint> = (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-r..=r)).collect::<Vec<_>>().into())
            .collect();
        if convex_hull(&pts, d).is_ok() {
            return pts;
        }
    }
}

/// Pick's theorem against a scan on random triangles, `|coords| <= 20`.
pub fn pick(count: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut out = Outcome::default();
    while out.checks < count {
        let v: Vec<IntPoint> = (0..3)
            .map(|_| p(&[rng.random_range(-20..=20), rng.random_range(-20..=20)]))
            .collect();
        let Ok(t) = Simplex::new(v) else { continue };
        let want = brute_force_interior_points(&t)?.len() as i128;
        let got = pick_interior_count(&t)?;
        out.check(got == want, || format!("{:?}: pick {got}, scan {want}", t.vertices()));
    }
    Ok(out)
}

fn canonical_tet(a: i64, b: i64, n: i64) -> Result<Simplex, CliError> {
    Ok(Simplex::tetrahedron(p(&[0, 0, 0]), p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[a, b, n]))?)
}

/// Every normalized form `0 <= a <= b < n <= n_max` passing the edge and
/// face conditions: the characterization agrees with the scan on existence,
/// returned points are interior, and empty cases have `a = 1`, `n < 4` or
/// `a + b = n`.
pub fn tetra_sweep(n_max: i64) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    for n in 1..=n_max {
        for a in 0..n {
            for b in a..n {
                let f = TriangularForm3 { a, b, n };
                if !f.edge_conditions_hold() || !f.face_conditions_hold() {
                    continue;
                }
                let tet = canonical_tet(a, b, n)?;
                let interior = brute_force_interior_points(&tet)?;
                let got = tetrahedron_interior_point(&tet)?;
                out.check(got.is_some() == !interior.is_empty(), || {
                    format!("({a},{b},{n}): found {got:?}, scan has {}", interior.len())
                });
                if let Some(q) = &got {
                    out.check(interior.contains(q), || format!("({a},{b},{n}): {q:?} not interior"));
                }
                if interior.is_empty() {
                    out.check(a == 1 || n < 4 || a + b == n, || format!("({a},{b},{n}): unexpected empty"));
                }
            }
        }
    }
    Ok(out)
}

/// The two forms that fail the face conditions have no interior points.
pub fn empty_tetrahedra() -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    for (a, b, n) in [(2, 5, 9), (3, 5, 14)] {
        let all = brute_force_classified(&canonical_tet(a, b, n)?, DEFAULT_SCAN_BUDGET)?;
        let inside = all.iter().filter(|(_, c)| *c == PointClass::Interior).count();
        out.check(inside == 0, || format!("({a},{b},{n}): {inside} interior points"));
    }
    Ok(out)
}

fn random_field(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> Result<Field, CliError> {
    let n = dims.iter().product();
    let offset: Vec<i64> = dims.iter().map(|_| rng.random_range(-20..=20)).collect();
    let values = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    Ok(Field::new(dims, offset.into(), values)?)
}

/// FFT against direct convolution: one pair of `8^3` grids, then `pairs`
/// random pairs of up to 32 per axis, alternating 2D and 3D.
pub fn fft(pairs: u64) -> Result<Outcome, CliError> {
    const TOL: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut out = Outcome::default();
    let compare = |out: &mut Outcome, x: &Field, k: &Field| -> Result<(), CliError> {
        let a = fft_convolve(x, k)?;
        let b = direct_convolve(x, k)?;
        let err = a.values.iter().zip(&b.values).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        let same = a.dims == b.dims && a.offset == b.offset;
        out.check(same && err < TOL, || format!("dims {:?} x {:?}: error {err:e}", x.dims, k.dims));
        Ok(())
    };
    let x = random_field(&mut rng, vec![8; 3])?;
    let k = random_field(&mut rng, vec![8; 3])?;
    compare(&mut out, &x, &k)?;
    for case in 0..pairs {
        let d = 2 + (case % 2) as usize;
        let dims: Vec<usize> = (0..d).map(|_| rng.random_range(1..=32)).collect();
        let x = random_field(&mut rng, dims)?;
        let dims: Vec<usize> = (0..d).map(|_| rng.random_range(1..=32)).collect();
        let k = random_field(&mut rng, dims)?;
        compare(&mut out, &x, &k)?;
    }
    Ok(out)
}

/// Pruned and full candidate enumeration select bases of equal volume.
pub fn pruning(sets: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut out = Outcome::default();
    // full 3D enumeration is only affordable for small coordinates
    for (d, r) in [(2, 12), (3, 2)] {
        for _ in 0..sets {
            let pts = random_points(&mut rng, d, r);
            let hull = convex_hull(&pts, d)?;
            let cones = antipodal_cones(&hull)?;
            let full = select_basis(&enumerate_candidates(&hull, &cones, None)?, d)?;
            let pruned = select_basis(&enumerate_candidates(&hull, &cones, Some(i64::MAX))?, d)?;
            out.check(full.node_volume == pruned.node_volume, || {
                format!("{pts:?}: full {}, pruned {}", full.node_volume, pruned.node_volume)
            });
        }
    }
    Ok(out)
}

/// Optimizer against bounded brute force (entries up to 8) on random 2D
/// sets with coordinates in `[-10, 10]`.
pub fn oracle_2d(sets: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut out = Outcome::default();
    for _ in 0..sets {
        let pts = random_points(&mut rng, 2, 10);
        let got = optimize_transform(&pts)?.node_volume;
        let want = brute_force_optimize(&pts, 8)?.node_volume;
        out.check(got == want, || format!("{pts:?}: optimizer {got}, brute force {want}"));
    }
    Ok(out)
}

/// The five-point plane set: minimum volume 9 at `|det|` 1 and 2, and
/// `[[1,0],[1,2]]` reduces to a unimodular matrix of the same volume.
pub fn det2_plane() -> Result<Outcome, CliError> {
    let pts = det2_plane_points();
    let hull = convex_hull(&pts, 2)?;
    let mut out = Outcome::default();
    let best = brute_force_optimize(&pts, 3)?.node_volume;
    out.check(best == 9, || format!("brute force minimum {best}"));
    for det in [1, 2] {
        let opts = BruteForceOptions {
            det_abs: Some(det),
            ..BruteForceOptions::new(3)
        };
        let v = brute_force_optimize_with(&pts, opts)?.node_volume;
        out.check(v == 9, || format!("|det| {det}: minimum {v}"));
    }
    let m = TransformMatrix::from_nested(&[&[1, 0], &[1, 2]])?;
    let at = SearchResult::evaluate(m.clone(), &hull)?.node_volume;
    out.check(at == 9, || format!("[[1,0],[1,2]] volume {at}"));
    let r = SearchResult::evaluate(reduce_determinant(&m, &hull)?, &hull)?;
    out.check(r.det_abs == 1 && r.node_volume == 9, || {
        format!("reduced to |det| {} volume {}", r.det_abs, r.node_volume)
    });
    Ok(out)
}

/// The space set: `[[1,0,0],[0,1,0],[1,1,2]]` gives 125, no unimodular
/// matrix with entries up to 2 does as well, and the optimizer reaches 125.
pub fn det2_space() -> Result<Outcome, CliError> {
    let pts = det2_space_points();
    let hull = convex_hull(&pts, 3)?;
    let mut out = Outcome::default();
    let m = TransformMatrix::from_nested(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])?;
    let at = SearchResult::evaluate(m, &hull)?.node_volume;
    out.check(at == 125, || format!("det-2 matrix volume {at}"));
    let unit = BruteForceOptions {
        det_abs: Some(1),
        ..BruteForceOptions::new(2)
    };
    let v = brute_force_optimize_with(&pts, unit)?.node_volume;
    out.check(v > 125, || format!("unimodular minimum {v}"));
    let r = optimize_transform(&pts)?.node_volume;
    out.check(r <= 125, || format!("optimizer volume {r}"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_usage_error() {
        assert!(matches!(run("nope"), Err(CliError::Usage(_))));
    }

    #[test]
    fn quick_suites_pass() {
        for s in ["empty-tetrahedra", "det2-plane", "det2-space"] {
            let r = run(s).unwrap();
            assert!(r[0].passed, "{:?}", r[0]);
        }
        assert!(tetra_sweep(16).unwrap().passed());
    }
}
