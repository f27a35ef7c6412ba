//! Points files, values files and grid dumps.
//!
//! Points and values are plain text: one record per line, whitespace
//! separated, `#` starts a comment. Reals are written with 17 significant
//! digits so they parse back to the same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use latbox::convolution::Field;
use serde::Serialize;

use crate::CliError;

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let p = body
            .split_whitespace()
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| CliError::Parse(format!("line {}: {t:?}: {e}", no + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = out.first() {
            if first.len() != p.len() {
                return Err(CliError::Parse(format!(
                    "line {}: expected {} coordinates, found {}",
                    no + 1,
                    first.len(),
                    p.len()
                )));
            }
        }
        out.push(p);
    }
    if out.is_empty() {
        return Err(CliError::Parse("no points".into()));
    }
    Ok(out)
}

pub fn read_points(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_points(&text)
}

pub fn format_rows<R: AsRef<[f64]>>(rows: &[R]) -> String {
    let mut s = String::new();
    for r in rows {
        let line: Vec<String> = r.as_ref().iter().map(|&x| format_real(x)).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Serialize)]
struct GridHeader<'a> {
    dims: &'a [usize],
    offset: Vec<i64>,
    step: f64,
    matrix: &'a [Vec<i64>],
    format: &'static str,
}

/// Writes `PREFIX.bin` (row-major little-endian `f64`) and `PREFIX.json`.
pub fn dump_grid(prefix: &Path, field: &Field, step: f64, matrix: &[Vec<i64>]) -> Result<(), CliError> {
    let bin = prefix.with_extension("bin");
    let json = prefix.with_extension("json");
    let bytes: Vec<u8> = field.values.iter().flat_map(|v| v.to_le_bytes()).collect();
    fs::write(&bin, bytes).map_err(|e| CliError::io(&bin, e))?;
    let header = GridHeader {
        dims: &field.dims,
        offset: field.offset.to_vec(),
        step,
        matrix,
        format: "f64-le row-major, last axis fastest",
    };
    let text = serde_json::to_string_pretty(&header).map_err(|e| CliError::Parse(e.to_string()))?;
    write_text(&json, &(text + "\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        let xs = [0.1, -1.0 / 3.0, 1e-300, 123456.789, f64::MIN_POSITIVE, 0.0];
        for x in xs {
            assert_eq!(format_real(x).parse::<f64>().unwrap(), x);
        }
        let text = format_rows(&[xs.to_vec()]);
        assert_eq!(parse_points(&text).unwrap(), vec![xs.to_vec()]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let pts = parse_points("# header\n1 2\n\n  3 4 # trailing\n").unwrap();
        assert_eq!(pts, vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(parse_points("1 2\n3\n").is_err());
        assert!(parse_points("# nothing\n").is_err());
        assert!(parse_points("1 x\n").is_err());
    }
}
