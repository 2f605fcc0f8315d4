use super::DerivedScales;
use crate::error::{Error, Result};
use crate::multiplier::{lowpass, riesz_odd, Axis, Direction};
use crate::spectral::{
    alias_report, fft_size, min_grid, sqrt_pointwise, sqrt_spectrum, AliasReport, TorusField,
};

/// Coefficients of `√g` below this fraction of its mean are treated as
/// round-off when choosing the amplitude band.
pub const TAIL_TOL: f64 = 1e-14;

/// `C0 + R_j° q / r_n`, the quantity under the square root.
pub fn amplitude_argument(q: &TorusField, r_n: f64, c0: f64, j: Axis) -> TorusField {
    let mut g = riesz_odd(q, j).scaled(1.0 / r_n);
    g.add_scaled(&TorusField::constant(c0), 1.0);
    g
}

/// `2 √(r_n / (5 λ_{n+1}))`.
pub fn prefactor(r_n: f64, lambda_next: u64) -> f64 {
    2.0 * (r_n / (5.0 * lambda_next as f64)).sqrt()
}

/// `a_j^perfect = 2 √(r_n / (5λ_{n+1})) √(C0 + R_j° q / r_n)`, cut at band `kout`.
pub fn perfect_amplitude(
    q: &TorusField,
    r_n: f64,
    lambda_next: u64,
    c0: f64,
    j: Axis,
    oversample: usize,
    kout: usize,
) -> Result<(TorusField, AliasReport)> {
    let g = amplitude_argument(q, r_n, c0, j);
    let (root, report) = sqrt_pointwise(&g, oversample, kout)?;
    Ok((root.scaled(prefactor(r_n, lambda_next)), report))
}

/// Perfect amplitude kept to its numerical support: the band is at least
/// `kmin` and grows until every dropped coefficient is below
/// `TAIL_TOL · |mean|`. The grid doubles (up to `cap`) until that band sits in
/// the lower half of the resolved spectrum.
#[allow(clippy::too_many_arguments)]
pub fn perfect_amplitude_resolved(
    q: &TorusField,
    r_n: f64,
    lambda_next: u64,
    c0: f64,
    j: Axis,
    oversample: usize,
    kmin: usize,
    cap: usize,
) -> Result<(TorusField, AliasReport)> {
    let g = amplitude_argument(q, r_n, c0, j);
    let mut n = fft_size(oversample.max(1) * min_grid(g.band().max(kmin)));
    loop {
        let (full, grid_min) = sqrt_spectrum(&g, n)?;
        let kmax = (n - 1) / 2;
        let kout = effective_band(&full, kmin.min(kmax));
        let next = fft_size(2 * n);
        if kout <= kmax / 2 || next > cap.max(n) {
            let report = alias_report(&full, n, grid_min, kout);
            let root = full.resized(kout);
            return Ok((root.scaled(prefactor(r_n, lambda_next)), report));
        }
        n = next;
    }
}

/// Smallest `K >= kmin` with every coefficient beyond `|k|∞ = K` below
/// `TAIL_TOL · |f̂(0)|`.
fn effective_band(full: &TorusField, kmin: usize) -> usize {
    let band = full.band();
    let mut shell = vec![0.0f64; band + 1];
    for (k, c) in full.iter() {
        let s = k.sup_norm() as usize;
        shell[s] = shell[s].max(c.norm());
    }
    let tol = TAIL_TOL * full.mean().abs();
    let mut kout = band;
    while kout > kmin && shell[kout] <= tol {
        kout -= 1;
    }
    kout
}

/// The amplitudes and perturbation of one step.
#[derive(Clone, Debug)]
pub struct Perturbation {
    /// `a_j^perfect` for `l1`, `l2`, resolved to their numerical support.
    pub perfect: [TorusField; 2],
    /// `a_j = P≤μ a_j^perfect`.
    pub amplitudes: [TorusField; 2],
    /// `f_{n+1} = Σ_j a_j cos(5λ_{n+1} l_j·x)`.
    pub f_next: TorusField,
    pub alias: [AliasReport; 2],
    /// Largest discarded tail `Σ_{|k|∞ > K} |ĝ(k)|` of the two square roots,
    /// relative to their means.
    pub alias_tail: f64,
}

/// Wave vector `5λ_{n+1} l_j`.
pub fn wave(scales: &DerivedScales, dir: Direction) -> crate::spectral::WaveVector {
    dir.lattice(scales.lambda5())
        .expect("5 lambda l is a lattice vector for both directions")
}

/// Builds `a_1, a_2` and `f_{n+1}` from the stress `q_n`.
pub fn build_f_next(
    q: &TorusField,
    scales: &DerivedScales,
    c0: f64,
    oversample: usize,
    cap: usize,
) -> Result<Perturbation> {
    let kmin = (4.0 * scales.mu_next).ceil() as usize;
    let mut perfect = Vec::with_capacity(2);
    let mut alias = Vec::with_capacity(2);
    let pre = prefactor(scales.r_n, scales.lambda_next);
    let mut alias_tail = 0.0f64;
    for j in Axis::BOTH {
        let (a, rep) = perfect_amplitude_resolved(
            q,
            scales.r_n,
            scales.lambda_next,
            c0,
            j,
            oversample,
            kmin,
            cap,
        )?;
        alias_tail = alias_tail.max(rep.discarded * pre / a.mean().abs());
        perfect.push(a);
        alias.push(rep);
    }
    let amplitudes: Vec<TorusField> = perfect.iter().map(|a| lowpass(a, scales.mu_next)).collect();
    let mut f_next = TorusField::zeros(scales.band_next());
    for (a, dir) in amplitudes.iter().zip(Direction::BOTH) {
        let w = wave(scales, dir);
        if a.band() as i64 >= scales.lambda5() {
            return Err(Error::BandExceedsLambda {
                band: a.band(),
                lambda: scales.lambda5(),
            });
        }
        f_next.add_modulated_cos(a, w, 1.0);
    }
    let [p1, p2]: [TorusField; 2] = perfect.try_into().expect("two directions");
    let [a1, a2]: [TorusField; 2] = amplitudes.try_into().expect("two directions");
    let [r1, r2]: [AliasReport; 2] = alias.try_into().expect("two directions");
    Ok(Perturbation {
        perfect: [p1, p2],
        amplitudes: [a1, a2],
        f_next,
        alias: [r1, r2],
        alias_tail,
    })
}
