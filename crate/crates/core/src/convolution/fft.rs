use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

use super::{checked_len, Field};
use crate::error::{Error, Result};
use crate::point::IntPoint;

/// Default cap on multiply-adds for [`direct_convolve`].
pub const DIRECT_BUDGET: u128 = 4_000_000_000;

/// Smallest `m >= n` whose prime factors are all at most 7.
fn smooth7(n: usize) -> Result<usize> {
    let mut m = n.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5, 7] {
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        if r == 1 {
            return Ok(m);
        }
        m = m.checked_add(1).ok_or(Error::SizeOverflow)?;
    }
}

fn check_pair(noise: &Field, kernel: &Field) -> Result<()> {
    if noise.dim() != kernel.dim() {
        return Err(Error::DimensionMismatch {
            expected: noise.dim(),
            got: kernel.dim(),
        });
    }
    Ok(())
}

fn full_dims(noise: &Field, kernel: &Field) -> Result<Vec<usize>> {
    noise
        .dims
        .iter()
        .zip(&kernel.dims)
        .map(|(&n, &k)| {
            n.checked_add(k)
                .and_then(|s| s.checked_sub(1))
                .ok_or(Error::SizeOverflow)
        })
        .collect()
}

fn out_offset(noise: &Field, kernel: &Field) -> Result<IntPoint> {
    noise.offset.checked_add(&kernel.offset)
}

/// In-place d-dimensional FFT of a row-major array, one axis at a time.
fn fft_nd(data: &mut [Complex64], dims: &[usize], plans: &[Arc<dyn Fft<f64>>]) {
    for (a, plan) in plans.iter().enumerate() {
        let len = dims[a];
        let stride: usize = dims[a + 1..].iter().product();
        let block = len * stride;
        if stride == 1 {
            data.par_chunks_mut(block).for_each_init(
                || vec![Complex64::default(); plan.get_inplace_scratch_len()],
                |scratch, line| plan.process_with_scratch(line, scratch),
            );
            continue;
        }
        data.par_chunks_mut(block).for_each_init(
            || {
                (
                    vec![Complex64::default(); len],
                    vec![Complex64::default(); plan.get_inplace_scratch_len()],
                )
            },
            |(line, scratch), chunk| {
                for j in 0..stride {
                    for k in 0..len {
                        line[k] = chunk[k * stride + j];
                    }
                    plan.process_with_scratch(line, scratch);
                    for k in 0..len {
                        chunk[k * stride + j] = line[k];
                    }
                }
            },
        );
    }
}

fn embed(f: &Field, padded: &[usize]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); padded.iter().product()];
    let d = f.dim();
    let mut idx = vec![0usize; d];
    for &v in &f.values {
        let flat = idx.iter().zip(padded).fold(0usize, |acc, (&i, &n)| acc * n + i);
        out[flat] = Complex64::new(v, 0.0);
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < f.dims[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    out
}

/// Full linear convolution by FFT. Each axis is zero-padded to a 7-smooth
/// length of at least `n + k - 1`, so nothing wraps around. The output box
/// starts at `noise.offset + kernel.offset`.
pub fn fft_convolve(noise: &Field, kernel: &Field) -> Result<Field> {
    check_pair(noise, kernel)?;
    let dims = full_dims(noise, kernel)?;
    let offset = out_offset(noise, kernel)?;
    if dims.contains(&0) {
        return Field::zeros(dims, offset);
    }
    let padded: Vec<usize> = dims.iter().map(|&n| smooth7(n)).collect::<Result<_>>()?;
    let total = checked_len(&padded)?;

    let mut planner = FftPlanner::<f64>::new();
    let forward: Vec<_> = padded.iter().map(|&n| planner.plan_fft(n, FftDirection::Forward)).collect();
    let inverse: Vec<_> = padded.iter().map(|&n| planner.plan_fft(n, FftDirection::Inverse)).collect();

    let mut a = embed(noise, &padded);
    let mut b = embed(kernel, &padded);
    fft_nd(&mut a, &padded, &forward);
    fft_nd(&mut b, &padded, &forward);
    a.par_iter_mut().zip(b.par_iter()).for_each(|(x, y)| *x *= *y);
    drop(b);
    fft_nd(&mut a, &padded, &inverse);

    let scale = 1.0 / total as f64;
    let mut out = Field::zeros(dims, offset)?;
    let d = out.dim();
    let mut idx = vec![0usize; d];
    for v in out.values.iter_mut() {
        let flat = idx.iter().zip(&padded).fold(0usize, |acc, (&i, &n)| acc * n + i);
        *v = a[flat].re * scale;
        for ax in (0..d).rev() {
            idx[ax] += 1;
            if idx[ax] < out.dims[ax] {
                break;
            }
            idx[ax] = 0;
        }
    }
    Ok(out)
}

pub fn direct_convolve(noise: &Field, kernel: &Field) -> Result<Field> {
    direct_convolve_with_budget(noise, kernel, DIRECT_BUDGET)
}

/// Full linear convolution by direct summation (zero noise values are
/// skipped); the oracle for [`fft_convolve`].
pub fn direct_convolve_with_budget(noise: &Field, kernel: &Field, budget: u128) -> Result<Field> {
    check_pair(noise, kernel)?;
    let dims = full_dims(noise, kernel)?;
    let offset = out_offset(noise, kernel)?;
    let nonzero = noise.values.iter().filter(|&&v| v != 0.0).count() as u128;
    let count = nonzero.saturating_mul(kernel.values.len() as u128);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    let mut out = Field::zeros(dims, offset)?;
    let d = noise.dim();
    // flat offset in `out` of each kernel cell, relative to the noise cell
    let out_strides: Vec<usize> = (0..d).map(|a| out.dims[a + 1..].iter().product()).collect();
    let rel = |f: &Field, i: usize| -> usize {
        let mut rest = i;
        let mut flat = 0;
        for a in (0..d).rev() {
            flat += (rest % f.dims[a]) * out_strides[a];
            rest /= f.dims[a];
        }
        flat
    };
    let kernel_rel: Vec<usize> = (0..kernel.values.len()).map(|j| rel(kernel, j)).collect();
    for (i, &nv) in noise.values.iter().enumerate() {
        if nv == 0.0 {
            continue;
        }
        let base = rel(noise, i);
        for (j, &kv) in kernel.values.iter().enumerate() {
            out.values[base + kernel_rel[j]] += nv * kv;
        }
    }
    Ok(out)
}
