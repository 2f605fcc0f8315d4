use serde::{Deserialize, Serialize};

use super::amplitude::{build_f_next, prefactor, wave, Perturbation};
use super::assembly::{assemble_main, flux};
use super::channels::{q_d, q_m1, q_m2, q_m3, q_t};
use super::scales::lambda;
use super::{DerivedScales, IterationParams, SeparationPolicy};
use crate::error::{Error, Result};
use crate::multiplier::{inv_div_unchecked, Direction};
use crate::norms::{holder_besov, linf, x_norm, NormGrid};
use crate::spectral::{fft_size, min_grid, TorusField};

/// `(n, f_{≤n}, q_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepState {
    pub n: usize,
    pub f_leq: TorusField,
    pub q: TorusField,
}

impl StepState {
    pub fn zero() -> Self {
        StepState {
            n: 0,
            f_leq: TorusField::zeros(0),
            q: TorusField::zeros(0),
        }
    }
}

/// X-norms of the stress channels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelNorms {
    #[serde(rename = "qM1")]
    pub qm1: f64,
    #[serde(rename = "qM2")]
    pub qm2: f64,
    #[serde(rename = "qM3")]
    pub qm3: f64,
    #[serde(rename = "qT")]
    pub qt: f64,
    #[serde(rename = "qD")]
    pub qd: f64,
    pub q_next: f64,
}

/// One ledger line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerRecord {
    pub n: usize,
    pub lambda_n: u64,
    pub lambda_next: u64,
    pub r_n: f64,
    pub r_next: f64,
    pub mu_next: f64,
    pub alpha: f64,
    pub xnorm: ChannelNorms,
    pub ratio_q_over_r: f64,
    pub master_residual: f64,
    pub decomp_residual: f64,
    pub holder_besov_f: f64,
    pub partial_sum_reg: f64,
    pub separation_ok: bool,
    pub alias_tail: f64,
}

/// Checks beyond the ledger schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepDiagnostics {
    pub n: usize,
    /// `‖q_n‖_X`.
    pub xnorm_q: f64,
    /// `q_M1 + q_M2 + q_M3` against `Δ⁻¹∇·(Λf_{n+1}∇⊥f_{n+1}) + q_n`.
    pub channel_sum_residual: f64,
    /// `Δ⁻¹∇·(main) + q_n - q_M1` for the truncated amplitudes.
    pub qm1_identity_residual: f64,
    /// `‖Δ⁻¹∇·(main(a^perfect)) + q_n‖ / ‖q_n‖∞`.
    pub matching_residual: f64,
    /// Out-of-band coefficients of `f_{≤n+1}` beyond `6λ_{n+1}`, relative.
    pub support_f: f64,
    /// Out-of-band coefficients of `q_{n+1}` beyond `12λ_{n+1}`, relative.
    pub support_q: f64,
    /// Largest `|mean|` of the five channels.
    pub channel_mean: f64,
    pub holder_besov_f_next: f64,
    /// `100 λ_{n+1}^α √(r_n / λ_{n+1})`.
    pub holder_bound_f_next: f64,
    /// `‖q_M1‖_X / (r_n (λ_n/μ)² log μ)`.
    pub qm1_shape: f64,
    pub amplitude_bands: [usize; 2],
    pub sqrt_grids: [usize; 2],
    pub sqrt_grid_min: [f64; 2],
    pub band_f: usize,
    pub band_q: usize,
}

/// One term `Σ_j c P≤μ √(C0 + R_j° q_n / r_n) cos(5λ_{n+1} l_j·x)` of the series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub n: usize,
    pub lambda_next: u64,
    pub mu_next: f64,
    pub r_n: f64,
    /// `2 √(r_n / (5λ_{n+1}))`.
    pub prefactor: f64,
    pub waves: [[i64; 2]; 2],
    pub amplitude_bands: [usize; 2],
}

/// Everything produced by one step.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub state: StepState,
    pub record: LedgerRecord,
    pub diagnostics: StepDiagnostics,
    pub series: SeriesTerm,
    pub perturbation: Perturbation,
}

/// `Σ_{m=1}^{n+1} λ_m^{α - 1/2 - β/(2b)}`.
pub fn partial_sum_reg(params: &IterationParams, upto: usize) -> Result<f64> {
    let e = params.alpha() - 0.5 - params.beta / (2.0 * params.b);
    let mut s = 0.0;
    for m in 1..=upto {
        s += (lambda(params.lambda0, params.b, m)? as f64).powf(e);
    }
    Ok(s)
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

fn relative_support(f: &TorusField, radius: f64) -> f64 {
    ratio(f.max_outside_radius(radius), f.max_abs())
}

/// Grid size the largest product of a step needs.
pub fn step_grid(scales: &DerivedScales, f_leq: &TorusField) -> usize {
    let band = scales.band_next().max(f_leq.band());
    fft_size(min_grid(2 * band))
}

/// Advances `(f_{≤n}, q_n)` to `(f_{≤n+1}, q_{n+1})` and measures every
/// channel.
pub fn step(state: &StepState, params: &IterationParams) -> Result<StepOutcome> {
    let scales = DerivedScales::at(params, state.n)?;
    let separation_ok = scales.separation_ok();
    if !separation_ok && params.separation == SeparationPolicy::Strict48 {
        return Err(Error::SeparationViolated {
            lambda_n: scales.lambda_n,
            lambda_next: scales.lambda_next,
        });
    }
    let need = step_grid(&scales, &state.f_leq);
    if need > params.grid_cap {
        return Err(Error::GridBudgetExceeded {
            need,
            cap: params.grid_cap,
        });
    }
    let grid = NormGrid::new(params.oversample, params.grid_cap);
    let q = &state.q;

    let pert = build_f_next(q, &scales, params.c0, params.oversample, params.grid_cap)?;
    let lam5 = scales.lambda5();
    let amps = &pert.amplitudes;
    let f_next = &pert.f_next;

    let inv_main = inv_div_unchecked(&assemble_main(amps, lam5));
    let qm1 = q_m1(&pert.perfect, scales.mu_next, scales.lambda_next);
    let qm2 = q_m2(amps, lam5)?;
    let qm3 = q_m3(amps, lam5)?;
    let qt = q_t(f_next, &state.f_leq)?;
    let qd = q_d(f_next, params.nu, params.gamma)?;

    let mut q_next = qm1.clone();
    for c in [&qm2, &qm3, &qt, &qd] {
        q_next.add_scaled(c, 1.0);
    }
    let f_new = &state.f_leq + f_next;

    // the mismatch channels against the direct self-interaction
    let direct_self = inv_div_unchecked(&flux(f_next)?);
    let mut mismatch = qm1.clone();
    mismatch.add_scaled(&qm2, 1.0);
    mismatch.add_scaled(&qm3, 1.0);
    let mut defect = mismatch.clone();
    defect.add_scaled(&direct_self, -1.0);
    defect.add_scaled(q, -1.0);
    let channel_sum_residual = ratio(
        defect.wiener_norm(),
        direct_self
            .wiener_norm()
            .max(q.wiener_norm())
            .max(mismatch.wiener_norm()),
    );
    drop(defect);
    drop(mismatch);

    let mut decomp = direct_self.clone();
    decomp.add_scaled(&inv_main, -1.0);
    decomp.add_scaled(&qm2, -1.0);
    decomp.add_scaled(&qm3, -1.0);
    let decomp_residual = ratio(decomp.wiener_norm(), direct_self.wiener_norm());
    drop(decomp);
    drop(direct_self);

    let mut ident = &inv_main + q;
    ident.add_scaled(&qm1, -1.0);
    let qm1_identity_residual = ratio(
        ident.wiener_norm(),
        q.wiener_norm().max(inv_main.wiener_norm()),
    );
    drop(ident);

    let mut matching = inv_div_unchecked(&assemble_main(&pert.perfect, lam5));
    matching.add_scaled(q, 1.0);
    let matching_residual = ratio(matching.wiener_norm(), linf(q, grid));
    drop(matching);

    // the full relation, from the products of f_{≤n+1} and f_{≤n}
    let full_now = inv_div_unchecked(&flux(&f_new)?);
    let full_prev = if state.f_leq.max_abs() == 0.0 {
        TorusField::zeros(0)
    } else {
        inv_div_unchecked(&flux(&state.f_leq)?)
    };
    let mut increment = full_now;
    increment.add_scaled(&full_prev, -1.0);
    drop(full_prev);
    let mut master = increment.clone();
    master.add_scaled(q, 1.0);
    master.add_scaled(&q_next, -1.0);
    master.add_scaled(&qd, 1.0);
    let master_residual = ratio(
        master.wiener_norm(),
        increment
            .wiener_norm()
            .max(q.wiener_norm())
            .max(q_next.wiener_norm()),
    );
    drop(master);
    drop(increment);

    let xnorm = ChannelNorms {
        qm1: x_norm(&qm1, grid),
        qm2: x_norm(&qm2, grid),
        qm3: x_norm(&qm3, grid),
        qt: x_norm(&qt, grid),
        qd: x_norm(&qd, grid),
        q_next: x_norm(&q_next, grid),
    };
    let channel_mean = [&qm1, &qm2, &qm3, &qt, &qd]
        .iter()
        .map(|c| c.mean().abs())
        .fold(0.0, f64::max);

    let alpha = scales.alpha;
    let holder_f = holder_besov(&f_new, alpha, grid);
    let holder_next = holder_besov(f_next, alpha, grid);
    let lam_next = scales.lambda_next as f64;
    let mu = scales.mu_next;
    let qm1_scale = scales.r_n * (scales.lambda_n as f64 / mu).powi(2) * mu.ln();

    let record = LedgerRecord {
        n: state.n,
        lambda_n: scales.lambda_n,
        lambda_next: scales.lambda_next,
        r_n: scales.r_n,
        r_next: scales.r_next,
        mu_next: mu,
        alpha,
        xnorm,
        ratio_q_over_r: xnorm.q_next / scales.r_next,
        master_residual,
        decomp_residual,
        holder_besov_f: holder_f,
        partial_sum_reg: partial_sum_reg(params, state.n + 1)?,
        separation_ok,
        alias_tail: pert.alias_tail,
    };
    let diagnostics = StepDiagnostics {
        n: state.n,
        xnorm_q: x_norm(q, grid),
        channel_sum_residual,
        qm1_identity_residual,
        matching_residual,
        support_f: relative_support(&f_new, 6.0 * lam_next),
        support_q: relative_support(&q_next, 12.0 * lam_next),
        channel_mean,
        holder_besov_f_next: holder_next,
        holder_bound_f_next: 100.0 * lam_next.powf(alpha) * (scales.r_n / lam_next).sqrt(),
        qm1_shape: ratio(xnorm.qm1, qm1_scale),
        amplitude_bands: [pert.perfect[0].band(), pert.perfect[1].band()],
        sqrt_grids: [pert.alias[0].grid, pert.alias[1].grid],
        sqrt_grid_min: [pert.alias[0].grid_min, pert.alias[1].grid_min],
        band_f: f_new.band(),
        band_q: q_next.band(),
    };
    let w = |d: Direction| {
        let k = wave(&scales, d);
        [k.k1, k.k2]
    };
    let series = SeriesTerm {
        n: state.n,
        lambda_next: scales.lambda_next,
        mu_next: mu,
        r_n: scales.r_n,
        prefactor: prefactor(scales.r_n, scales.lambda_next),
        waves: [w(Direction::L1), w(Direction::L2)],
        amplitude_bands: [amps[0].band(), amps[1].band()],
    };
    Ok(StepOutcome {
        state: StepState {
            n: state.n + 1,
            f_leq: f_new,
            q: q_next,
        },
        record,
        diagnostics,
        series,
        perturbation: pert,
    })
}
