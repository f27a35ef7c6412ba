use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decompose::TriangularForm3;
use super::interior::{canonical_centroid, heuristic_points, try_index};

/// One heuristic's coverage over the `a + b < n` cases that have an
/// interior point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicRow {
    pub name: String,
    /// Cases this heuristic solves on its own.
    pub solved: u64,
    pub fraction: Option<f64>,
    /// Cases where it is the first heuristic (in order) to succeed.
    pub first_solved: u64,
    pub first_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeuristicStats {
    pub n_max: i64,
    pub cases: u64,
    pub rows: Vec<HeuristicRow>,
    pub combined_solved: u64,
    pub combined_fraction: Option<f64>,
}

pub const HEURISTIC_NAMES: [&str; 4] = [
    "floor_ratio",
    "euclid",
    "rounded_centroid",
    "floor_ratio_minus_one",
];

#[derive(Default, Clone, Copy)]
struct Tally {
    cases: u64,
    solved: [u64; 4],
    first: [u64; 4],
    any: u64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.cases += o.cases;
        self.any += o.any;
        for i in 0..4 {
            self.solved[i] += o.solved[i];
            self.first[i] += o.first[i];
        }
        self
    }
}

fn tally_for(n: i64) -> Tally {
    let mut t = Tally::default();
    for a in 0..n {
        for b in a..n - a {
            let f = TriangularForm3 { a, b, n };
            if !f.edge_conditions_hold() || !f.face_conditions_hold() {
                continue;
            }
            if !(1..n).any(|i| try_index(&f, i).is_some()) {
                continue;
            }
            t.cases += 1;
            let hits = heuristic_points(&f, canonical_centroid(&f)).map(|p| p.is_some());
            for (i, &h) in hits.iter().enumerate() {
                t.solved[i] += u64::from(h);
            }
            if let Some(i) = hits.iter().position(|&h| h) {
                t.first[i] += 1;
                t.any += 1;
            }
        }
    }
    t
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

/// Coverage of the `a + b < n` heuristics over every normalized form
/// `0 <= a <= b`, `a + b < n <= n_max`, satisfying the edge and face
/// conditions and having an interior point. The centroid heuristic uses the
/// tetrahedron `conv(0, e1, e2, (a, b, n))`.
pub fn heuristic_stats(n_max: i64) -> HeuristicStats {
    let t = (4..=n_max.max(3))
        .into_par_iter()
        .map(tally_for)
        .reduce(Tally::default, Tally::merge);
    HeuristicStats {
        n_max,
        cases: t.cases,
        rows: HEURISTIC_NAMES
            .iter()
            .enumerate()
            .map(|(i, name)| HeuristicRow {
                name: name.to_string(),
                solved: t.solved[i],
                fraction: ratio(t.solved[i], t.cases),
                first_solved: t.first[i],
                first_fraction: ratio(t.first[i], t.cases),
            })
            .collect(),
        combined_solved: t.any,
        combined_fraction: ratio(t.any, t.cases),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_domain_reports_absent_fractions() {
        let s = heuristic_stats(4);
        assert_eq!(s.cases, 0);
        assert_eq!(s.combined_fraction, None);
        assert!(s.rows.iter().all(|r| r.fraction.is_none()));
    }

    #[test]
    fn first_success_counts_partition_combined() {
        let s = heuristic_stats(64);
        assert!(s.cases > 0);
        let firsts: u64 = s.rows.iter().map(|r| r.first_solved).sum();
        assert_eq!(firsts, s.combined_solved);
        assert!(s.combined_solved <= s.cases);
    }
}
