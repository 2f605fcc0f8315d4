use super::grid::{fft_size, from_grid, min_grid, to_grid};
use super::TorusField;
use crate::error::{Error, Result};

/// What the truncation of a pointwise square root threw away.
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize)]
pub struct AliasReport {
    /// Collocation grid size.
    pub grid: usize,
    /// Minimum of the input over the grid.
    pub grid_min: f64,
    /// `Σ |ĝ(k)|` over the coefficients beyond `kout`, a sup-norm bound on
    /// `(I - P≤kout) √f`.
    pub discarded: f64,
    /// `(Σ |ĝ(k)|²)^{1/2}` over the top dyadic shell `N/4 <= |k|∞ <= (N-1)/2`
    /// of the oversampled transform, the aliasing estimate.
    pub top_shell: f64,
}

/// Band-`kout` truncation of `√f`, sampled on a grid `oversample` times finer
/// than the lossless grid for `max(band(f), kout)`.
pub fn sqrt_pointwise(
    f: &TorusField,
    oversample: usize,
    kout: usize,
) -> Result<(TorusField, AliasReport)> {
    let n = fft_size(oversample.max(1) * min_grid(f.band().max(kout)));
    let (full, grid_min) = sqrt_spectrum(f, n)?;
    Ok((full.resized(kout), alias_report(&full, n, grid_min, kout)))
}

/// Every coefficient the grid resolves (`|k|∞ <= (n-1)/2`) of `√f` sampled
/// on an `n × n` grid, along with the grid minimum of `f`.
pub fn sqrt_spectrum(f: &TorusField, n: usize) -> Result<(TorusField, f64)> {
    let mut samples = to_grid(f, n)?;
    let grid_min = samples.min();
    if grid_min <= 0.0 {
        return Err(Error::NotPositive { min: grid_min });
    }
    samples.map(f64::sqrt);
    Ok((from_grid(&samples, (n - 1) / 2), grid_min))
}

/// Tail and aliasing measures of a full square-root spectrum cut at `kout`.
pub fn alias_report(full: &TorusField, n: usize, grid_min: f64, kout: usize) -> AliasReport {
    let top_lo = (n / 4) as i64;
    let mut discarded = 0.0;
    let mut top = 0.0;
    for (k, c) in full.iter() {
        let s = k.sup_norm();
        if s as usize > kout {
            discarded += c.norm();
        }
        if s >= top_lo {
            top += c.norm_sqr();
        }
    }
    AliasReport {
        grid: n,
        grid_min,
        discarded,
        top_shell: top.sqrt(),
    }
}
