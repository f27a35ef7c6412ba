use latbox::convolution::{rasterize, simulate_nodes, KernelSpec, LatticeSpec, RasterMode, Simulation};
use latbox::integer_points::{heuristic_stats, HeuristicStats};
use latbox::lattice_geometry::convex_hull;
use latbox::transform_search::{optimize_transform, SearchResult, TransformMatrix};
use latbox::IntPoint;
use serde::Serialize;

use crate::CliError;

/// Largest `n_max` for `stats` without the long-run flag.
pub const STATS_QUICK_LIMIT: i64 = 1024;

/// Box statistics before and after the optimal transformation.
#[derive(Debug, Clone, Serialize)]
pub struct OptimizeReport {
    pub points: usize,
    pub active_nodes: usize,
    pub step: f64,
    pub original_dims: Vec<i64>,
    pub original_volume: u128,
    pub matrix: Vec<Vec<i64>>,
    pub det: i128,
    pub transformed_extents: Vec<i64>,
    pub transformed_volume: u128,
    pub volume_ratio: f64,
}

fn rows_of(m: &TransformMatrix) -> Vec<Vec<i64>> {
    m.rows().iter().map(IntPoint::to_vec).collect()
}

fn lattice_for(points: &[Vec<f64>], step: f64) -> Result<LatticeSpec, CliError> {
    let d = points.first().map_or(0, Vec::len);
    if !(2..=3).contains(&d) {
        return Err(CliError::Usage(format!("points must have 2 or 3 coordinates, found {d}")));
    }
    Ok(LatticeSpec::with_step(step, d)?)
}

fn report(points: usize, nodes: &[IntPoint], step: f64, best: &SearchResult) -> Result<OptimizeReport, CliError> {
    let d = best.matrix.dim();
    let hull = convex_hull(nodes, d)?;
    let original = SearchResult::evaluate(TransformMatrix::identity(d), &hull)?;
    Ok(OptimizeReport {
        points,
        active_nodes: nodes.len(),
        step,
        original_dims: original.extents.clone(),
        original_volume: original.node_volume,
        matrix: rows_of(&best.matrix),
        det: best.matrix.det(),
        transformed_extents: best.extents.clone(),
        transformed_volume: best.node_volume,
        volume_ratio: original.node_volume as f64 / best.node_volume as f64,
    })
}

/// Rasterizes the points (multilinear) and optimizes the active nodes.
pub fn optimize(points: &[Vec<f64>], step: f64) -> Result<OptimizeReport, CliError> {
    let lattice = lattice_for(points, step)?;
    let raster = rasterize(points, &lattice, RasterMode::Multilinear)?;
    let best = optimize_transform(&raster.active_nodes)?;
    report(points.len(), &raster.active_nodes, step, &best)
}

#[derive(Debug, Clone)]
pub struct SimulateOptions {
    pub step: f64,
    pub kernel: KernelSpec,
    pub seed: u64,
    /// Skip the optimizer and convolve in original coordinates.
    pub identity: bool,
}

pub struct SimulateOutput {
    pub simulation: Simulation,
    pub matrix: TransformMatrix,
    pub report: Option<OptimizeReport>,
}

pub fn simulate(points: &[Vec<f64>], opts: &SimulateOptions) -> Result<SimulateOutput, CliError> {
    let lattice = lattice_for(points, opts.step)?;
    let raster = rasterize(points, &lattice, RasterMode::Multilinear)?;
    let (matrix, report) = if opts.identity {
        (TransformMatrix::identity(lattice.dim()), None)
    } else {
        let best = optimize_transform(&raster.active_nodes)?;
        let r = report(points.len(), &raster.active_nodes, opts.step, &best)?;
        (best.matrix, Some(r))
    };
    let simulation = simulate_nodes(&raster, &lattice, &opts.kernel, &matrix, opts.seed)?;
    Ok(SimulateOutput {
        simulation,
        matrix,
        report,
    })
}

pub fn matrix_rows(m: &TransformMatrix) -> Vec<Vec<i64>> {
    rows_of(m)
}

#[derive(Debug, Serialize)]
struct StatsRow<'a> {
    heuristic: &'a str,
    cases: u64,
    solved: u64,
    fraction: Option<f64>,
    first_solved: u64,
    first_fraction: Option<f64>,
}

pub fn stats(n_max: i64, long: bool) -> Result<HeuristicStats, CliError> {
    if n_max > STATS_QUICK_LIMIT && !long {
        return Err(CliError::Usage(format!(
            "n_max {n_max} exceeds {STATS_QUICK_LIMIT}; pass --long to run it"
        )));
    }
    Ok(heuristic_stats(n_max))
}

/// CSV with one row per heuristic and a final `combined` row.
pub fn stats_csv(s: &HeuristicStats) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Parse(e.to_string());
    for r in &s.rows {
        w.serialize(StatsRow {
            heuristic: &r.name,
            cases: s.cases,
            solved: r.solved,
            fraction: r.fraction,
            first_solved: r.first_solved,
            first_fraction: r.first_fraction,
        })
        .map_err(csv_err)?;
    }
    w.serialize(StatsRow {
        heuristic: "combined",
        cases: s.cases,
        solved: s.combined_solved,
        fraction: s.combined_fraction,
        first_solved: s.combined_solved,
        first_fraction: s.combined_fraction,
    })
    .map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| CliError::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))
}
