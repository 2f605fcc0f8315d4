//! Collocation transforms between coefficient boxes and uniform grids.
//!
//! Grid nodes are `x_ij = 2π(i/N, j/N) - (π, π)`, stored row-major with `i`
//! (the `x1` index) as the row. Synthesis uses one complex pass over the
//! `K + 1` non-negative `k2` columns followed by a complex-to-real pass along
//! each row, so only half of the spectrum is ever touched.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};
use rustfft::{Fft, FftPlanner};

use super::{TorusField, WaveVector};
use crate::error::{Error, Result};

/// Real samples of a field on an `N × N` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSamples {
    n: usize,
    values: Vec<f64>,
    /// Upper bound on the imaginary part discarded during synthesis.
    pub imag_residue: f64,
}

impl GridSamples {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "grid of size {n} needs {} values, got {}",
                n * n,
                values.len()
            )));
        }
        Ok(GridSamples {
            n,
            values,
            imag_residue: 0.0,
        })
    }

    /// Samples `g(x)` at every node.
    pub fn from_fn(n: usize, g: impl Fn([f64; 2]) -> f64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(g(node(n, i, j)));
            }
        }
        GridSamples {
            n,
            values,
            imag_residue: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Pointwise product with another grid of the same size.
    pub fn mul_assign(&mut self, other: &GridSamples) {
        assert_eq!(self.n, other.n, "grid sizes differ");
        self.values
            .par_iter_mut()
            .zip(other.values.par_iter())
            .for_each(|(a, b)| *a *= b);
    }

    pub fn map(&mut self, f: impl Fn(f64) -> f64 + Sync) {
        self.values.par_iter_mut().for_each(|v| *v = f(*v));
    }
}

/// Coordinates of node `(i, j)` on an `n`-point grid.
pub fn node(n: usize, i: usize, j: usize) -> [f64; 2] {
    let h = 2.0 * std::f64::consts::PI / n as f64;
    [
        h * i as f64 - std::f64::consts::PI,
        h * j as f64 - std::f64::consts::PI,
    ]
}

/// Smallest even 5-smooth integer `>= min`.
pub fn fft_size(min: usize) -> usize {
    let mut n = min.max(2);
    loop {
        if n.is_multiple_of(2) && is_smooth(n) {
            return n;
        }
        n += 1;
    }
}

fn is_smooth(mut n: usize) -> bool {
    for p in [2, 3, 5] {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

/// Minimum lossless grid for a band-`k` field.
pub fn min_grid(band: usize) -> usize {
    2 * band + 2
}

struct Plans {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    r2c: Arc<dyn RealToComplex<f64>>,
    c2r: Arc<dyn ComplexToReal<f64>>,
}

fn plans(n: usize) -> Arc<Plans> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Plans>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("fft plan cache poisoned");
    map.entry(n)
        .or_insert_with(|| {
            let mut cp = FftPlanner::new();
            let mut rp = RealFftPlanner::<f64>::new();
            Arc::new(Plans {
                forward: cp.plan_fft_forward(n),
                inverse: cp.plan_fft_inverse(n),
                r2c: rp.plan_fft_forward(n),
                c2r: rp.plan_fft_inverse(n),
            })
        })
        .clone()
}

#[inline]
fn sign(m: i64) -> f64 {
    if m.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Transposes a `rows × cols` row-major matrix into `cols × rows`.
fn transpose(src: &[Complex64], rows: usize, cols: usize, dst: &mut [Complex64]) {
    const BLOCK: usize = 32;
    dst.par_chunks_mut(rows * BLOCK.min(cols.max(1)))
        .enumerate()
        .for_each(|(bi, chunk)| {
            let c0 = bi * BLOCK;
            let ncols = chunk.len() / rows;
            for r0 in (0..rows).step_by(BLOCK) {
                let r1 = (r0 + BLOCK).min(rows);
                for dc in 0..ncols {
                    let c = c0 + dc;
                    for r in r0..r1 {
                        chunk[dc * rows + r] = src[r * cols + c];
                    }
                }
            }
        });
}

/// Evaluates `f` on the `n × n` grid.
pub fn to_grid(f: &TorusField, n: usize) -> Result<GridSamples> {
    let band = f.band();
    let need = min_grid(band);
    if n < need {
        return Err(Error::GridTooSmall { n, band, need });
    }
    let plans = plans(n);
    let cols = band + 1;
    let half = n / 2 + 1;
    let b = band as i64;

    // column-major half spectrum: column c = k2 ∈ [0, K], row = k1 mod n
    let mut spec = vec![Complex64::new(0.0, 0.0); cols * n];
    spec.par_chunks_mut(n).enumerate().for_each(|(c, col)| {
        let k2 = c as i64;
        for k1 in -b..=b {
            let v = f.coeff(WaveVector::new(k1, k2)) * sign(k1 + k2);
            col[k1.rem_euclid(n as i64) as usize] = v;
        }
    });
    spec.par_chunks_mut(n).for_each_init(
        || vec![Complex64::new(0.0, 0.0); plans.inverse.get_inplace_scratch_len()],
        |scratch, col| plans.inverse.process_with_scratch(col, scratch),
    );

    let mut rows = vec![Complex64::new(0.0, 0.0); cols * n];
    transpose(&spec, cols, n, &mut rows);
    drop(spec);

    let mut values = vec![0.0f64; n * n];
    values.par_chunks_mut(n).enumerate().for_each_init(
        || {
            (
                vec![Complex64::new(0.0, 0.0); half],
                vec![Complex64::new(0.0, 0.0); plans.c2r.get_scratch_len()],
            )
        },
        |(line, scratch), (i, out)| {
            line[..cols].copy_from_slice(&rows[i * cols..(i + 1) * cols]);
            for v in line[cols..].iter_mut() {
                *v = Complex64::new(0.0, 0.0);
            }
            line[0].im = 0.0;
            if n.is_multiple_of(2) {
                line[half - 1].im = 0.0;
            }
            plans
                .c2r
                .process_with_scratch(line, out, scratch)
                .expect("c2r length mismatch");
        },
    );

    Ok(GridSamples {
        n,
        values,
        imag_residue: f.imaginary_bound(),
    })
}

/// Band-`band` truncation of the discrete Fourier transform of `s`.
///
/// Frequencies that the grid cannot resolve (`|k|∞ > (N-1)/2`) come back as
/// zero. The `k2 = 0` column is symmetrised so the result is exactly real.
pub fn from_grid(s: &GridSamples, band: usize) -> TorusField {
    let n = s.n;
    let kmax = band.min((n - 1) / 2);
    let plans = plans(n);
    let cols = kmax + 1;
    let half = n / 2 + 1;

    let mut rows = vec![Complex64::new(0.0, 0.0); n * cols];
    rows.par_chunks_mut(cols).enumerate().for_each_init(
        || {
            (
                vec![0.0f64; n],
                vec![Complex64::new(0.0, 0.0); half],
                vec![Complex64::new(0.0, 0.0); plans.r2c.get_scratch_len()],
            )
        },
        |(line, spec, scratch), (i, out)| {
            line.copy_from_slice(&s.values[i * n..(i + 1) * n]);
            plans
                .r2c
                .process_with_scratch(line, spec, scratch)
                .expect("r2c length mismatch");
            out.copy_from_slice(&spec[..cols]);
        },
    );

    let mut spec = vec![Complex64::new(0.0, 0.0); cols * n];
    transpose(&rows, n, cols, &mut spec);
    drop(rows);
    spec.par_chunks_mut(n).for_each_init(
        || vec![Complex64::new(0.0, 0.0); plans.forward.get_inplace_scratch_len()],
        |scratch, col| plans.forward.process_with_scratch(col, scratch),
    );

    let norm = 1.0 / (n as f64 * n as f64);
    let kb = kmax as i64;
    let nn = n as i64;
    let at = |k1: i64, c: usize| -> Complex64 {
        spec[c * n + k1.rem_euclid(nn) as usize] * (sign(k1 + c as i64) * norm)
    };
    let mut out = TorusField::zeros(band);
    for k1 in -kb..=kb {
        // k2 = 0 column: average the two independent estimates of f̂(k1, 0)
        let v = (at(k1, 0) + at(-k1, 0).conj()) * 0.5;
        let i = out.index_unchecked(WaveVector::new(k1, 0));
        out.coeffs_mut()[i] = v;
        for c in 1..cols {
            let v = at(k1, c);
            let i = out.index_unchecked(WaveVector::new(k1, c as i64));
            out.coeffs_mut()[i] = v;
            let j = out.index_unchecked(WaveVector::new(-k1, -(c as i64)));
            out.coeffs_mut()[j] = v.conj();
        }
    }
    out
}
