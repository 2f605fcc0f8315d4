//! Sup norms on oversampled grids, the stress norm
//! `‖q‖_X = ‖q‖∞ + ‖R1°q‖∞ + ‖R2°q‖∞`, homogeneous Sobolev norms and two
//! Hölder proxies.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::multiplier::{riesz_odd, Axis};
use crate::spectral::{fft_size, min_grid, to_grid, TorusField};

/// Oversampling used when none is configured.
pub const DEFAULT_OVERSAMPLE: usize = 4;
/// Largest grid the norm routines pick on their own.
pub const DEFAULT_NORM_CAP: usize = 4096;

/// How finely sup norms are sampled: `oversample · (2K + 2)` points per
/// axis, but never more than `cap` unless the field itself needs more.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NormGrid {
    pub oversample: usize,
    pub cap: usize,
}

impl Default for NormGrid {
    fn default() -> Self {
        NormGrid {
            oversample: DEFAULT_OVERSAMPLE,
            cap: DEFAULT_NORM_CAP,
        }
    }
}

impl NormGrid {
    pub fn new(oversample: usize, cap: usize) -> Self {
        NormGrid { oversample, cap }
    }

    pub fn oversampled(oversample: usize) -> Self {
        NormGrid {
            oversample,
            cap: usize::MAX,
        }
    }

    /// Grid size used for a field of the given band.
    pub fn size(&self, band: usize) -> usize {
        let lossless = fft_size(min_grid(band));
        let want = fft_size(self.oversample.max(1) * min_grid(band));
        if want <= self.cap {
            want
        } else {
            // largest admissible size under the cap, but never below lossless
            let mut n = self.cap;
            while n > lossless && fft_size(n) != n {
                n -= 1;
            }
            n.max(lossless)
        }
    }
}

/// `max |f|` over the grid chosen by `grid`; a lower bound for `‖f‖∞`.
pub fn linf(f: &TorusField, grid: NormGrid) -> f64 {
    let t = f.trimmed();
    if t.max_abs() == 0.0 {
        return 0.0;
    }
    let n = grid.size(t.band());
    to_grid(&t, n).expect("norm grid holds the field").max_abs()
}

/// `‖q‖∞ + ‖R1°q‖∞ + ‖R2°q‖∞`. The mean of `q` only enters the first term.
pub fn x_norm(q: &TorusField, grid: NormGrid) -> f64 {
    let t = q.trimmed();
    linf(&t, grid) + linf(&riesz_odd(&t, Axis::X1), grid) + linf(&riesz_odd(&t, Axis::X2), grid)
}

/// `(Σ_{k≠0} |k|^{2s} |f̂(k)|²)^{1/2}`.
pub fn sobolev(f: &TorusField, s: f64) -> f64 {
    f.iter()
        .filter(|(k, c)| !k.is_zero() && (c.re != 0.0 || c.im != 0.0))
        .map(|(k, c)| (k.norm_sq() as f64).powf(s) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Index of the dyadic block holding `k`: 0 for `|k| <= 1`, otherwise the
/// `j` with `2^{j-1} < |k| <= 2^j`.
pub fn dyadic_index(norm_sq: i64) -> u32 {
    if norm_sq <= 1 {
        return 0;
    }
    let mut j = 1;
    while (1i64 << (2 * j)) < norm_sq {
        j += 1;
    }
    j
}

/// Littlewood–Paley block `j` of `f`.
pub fn dyadic_block(f: &TorusField, j: u32) -> TorusField {
    let band = f.band().min(1usize << j);
    let mut out = f.resized(band);
    for i in 0..out.coeffs().len() {
        let k = out.wave_at(i);
        if dyadic_index(k.norm_sq()) != j {
            out.coeffs_mut()[i] = num_complex::Complex64::new(0.0, 0.0);
        }
    }
    out
}

/// `sup_j 2^{jα} ‖Δ_j f‖∞`, a Besov `B^α_{∞,∞}` proxy for the `C^α` norm.
pub fn holder_besov(f: &TorusField, alpha: f64, grid: NormGrid) -> f64 {
    let t = f.trimmed();
    let top = t
        .iter()
        .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
        .map(|(k, _)| dyadic_index(k.norm_sq()))
        .max();
    let Some(top) = top else {
        return 0.0;
    };
    (0..=top)
        .map(|j| 2f64.powf(j as f64 * alpha) * linf(&dyadic_block(&t, j), grid))
        .fold(0.0, f64::max)
}

/// `‖f‖∞ + max |f(x) - f(y)| / |x - y|^α` over `samples` random node pairs
/// with log-uniform separation between one grid step and `π`.
pub fn holder_quotient(
    f: &TorusField,
    alpha: f64,
    samples: usize,
    seed: u64,
    grid: NormGrid,
) -> f64 {
    let t = f.trimmed();
    if t.max_abs() == 0.0 {
        return 0.0;
    }
    let n = grid.size(t.band());
    let g = to_grid(&t, n).expect("norm grid holds the field");
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let (lo, hi) = (h.ln(), std::f64::consts::PI.ln());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wrap = |d: i64| {
        let d = d.rem_euclid(n as i64);
        if d > n as i64 / 2 {
            d - n as i64
        } else {
            d
        }
    };
    let mut best = 0.0f64;
    for _ in 0..samples {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        let r = rng.random_range(lo..=hi).exp();
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let di = wrap((r * phi.cos() / h).round() as i64);
        let dj = wrap((r * phi.sin() / h).round() as i64);
        if di == 0 && dj == 0 {
            continue;
        }
        let i2 = (i as i64 + di).rem_euclid(n as i64) as usize;
        let j2 = (j as i64 + dj).rem_euclid(n as i64) as usize;
        let dist = h * ((di * di + dj * dj) as f64).sqrt();
        let q = (g.get(i, j) - g.get(i2, j2)).abs() / dist.powf(alpha);
        best = best.max(q);
    }
    best + g.max_abs()
}

/// All norms of one field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub linf: f64,
    pub xnorm: f64,
    pub sobolev: Vec<(f64, f64)>,
    pub holder_besov: f64,
    pub holder_quotient: f64,
    pub grid_used: usize,
}

pub fn norm_report(f: &TorusField, alpha: f64, orders: &[f64], grid: NormGrid) -> NormReport {
    NormReport {
        linf: linf(f, grid),
        xnorm: x_norm(f, grid),
        sobolev: orders.iter().map(|&s| (s, sobolev(f, s))).collect(),
        holder_besov: holder_besov(f, alpha, grid),
        holder_quotient: holder_quotient(f, alpha, 2000, 0, grid),
        grid_used: grid.size(f.trimmed().band()),
    }
}

/// Max and median of a sample of norm quotients.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioStats {
    pub max: f64,
    pub median: f64,
    pub samples: usize,
    pub excluded: usize,
}

impl RatioStats {
    pub fn from_samples(mut values: Vec<f64>, excluded: usize) -> Self {
        values.sort_by(|a, b| a.total_cmp(b));
        let n = values.len();
        let median = match n {
            0 => 0.0,
            _ if n % 2 == 1 => values[n / 2],
            _ => 0.5 * (values[n / 2 - 1] + values[n / 2]),
        };
        RatioStats {
            max: values.last().copied().unwrap_or(0.0),
            median,
            samples: n,
            excluded,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{random_field, WaveVector};

    fn cos(k1: i64, k2: i64) -> TorusField {
        TorusField::cos_mode(WaveVector::new(k1, k2), 1.0)
    }

    #[test]
    fn stats_median() {
        let s = RatioStats::from_samples(vec![3.0, 1.0, 2.0, 4.0], 1);
        assert_eq!((s.max, s.median, s.samples, s.excluded), (4.0, 2.5, 4, 1));
    }

    #[test]
    fn linf_values() {
        assert!((linf(&cos(1, 0), NormGrid::default()) - 1.0).abs() < 1e-15);
        assert_eq!(linf(&TorusField::zeros(3), NormGrid::default()), 0.0);
    }

    #[test]
    fn linf_refinement() {
        // oracle: the same field sampled 16 times finer
        let f = random_field(4, 8, true);
        let coarse = linf(&f, NormGrid::oversampled(4));
        let fine = linf(&f, NormGrid::oversampled(16));
        assert!(coarse <= fine * (1.0 + 1e-12));
        assert!(coarse > 0.99 * fine);
    }

    #[test]
    fn x_norm_of_diagonal_mode() {
        let g = NormGrid::default();
        assert!((x_norm(&cos(1, 1), g) - 3.0).abs() < 1e-14);
        assert_eq!(x_norm(&TorusField::zeros(2), g), 0.0);
        let q = random_field(2, 6, true);
        assert!((x_norm(&q.scaled(-3.0), g) - 3.0 * x_norm(&q, g)).abs() < 1e-12 * x_norm(&q, g));
    }

    #[test]
    fn sobolev_values() {
        assert!((sobolev(&cos(1, 0), 0.0) - 0.5f64.sqrt()).abs() < 1e-15);
        let want = 5f64.powf(-0.5) * 0.5f64.sqrt();
        assert!((sobolev(&cos(3, 4), -0.5) - want).abs() < 1e-15);
    }

    #[test]
    fn parseval() {
        let f = random_field(8, 7, true);
        let g = to_grid(&f, 32).unwrap();
        let mean_sq = g.values().iter().map(|v| v * v).sum::<f64>() / (32.0 * 32.0);
        assert!((sobolev(&f, 0.0).powi(2) - mean_sq).abs() < 1e-12 * mean_sq);
    }

    #[test]
    fn dyadic_blocks_partition() {
        assert_eq!(dyadic_index(0), 0);
        assert_eq!(dyadic_index(1), 0);
        assert_eq!(dyadic_index(2), 1);
        assert_eq!(dyadic_index(4), 1);
        assert_eq!(dyadic_index(5), 2);
        assert_eq!(dyadic_index(16), 2);
        assert_eq!(dyadic_index(17), 3);
        let f = random_field(3, 9, false);
        let mut sum = TorusField::zeros(0);
        for j in 0..=4 {
            sum = &sum + &dyadic_block(&f, j);
        }
        assert!((&sum - &f).max_abs() < 1e-16);
    }

    #[test]
    fn besov_of_pure_mode() {
        let alpha = 0.4;
        for j in 1..6u32 {
            let f = cos(1 << j, 0);
            let got = holder_besov(&f, alpha, NormGrid::default());
            assert!((got - 2f64.powf(j as f64 * alpha)).abs() < 1e-12);
        }
        assert_eq!(
            holder_besov(&TorusField::zeros(1), alpha, NormGrid::default()),
            0.0
        );
    }
}
