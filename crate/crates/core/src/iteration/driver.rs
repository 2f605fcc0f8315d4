use super::assembly::flux;
use super::step::{step, LedgerRecord, SeriesTerm, StepDiagnostics, StepOutcome, StepState};
use super::{BaseKind, IterationParams};
use crate::error::Result;
use crate::multiplier::{inv_div_unchecked, lambda_s};
use crate::norms::{sobolev, x_norm, NormGrid};
use crate::spectral::{random_field, TorusField};

/// The starting pair. For the seeded base, `f_{≤0}` is a random field with
/// `|k| <= 6λ0` scaled so that `‖q_0‖_X = base_stress · r_0`, where
/// `q_0 = Δ⁻¹∇·(Λf∇⊥f) - ν Λ^{γ-1} f`.
pub fn base_state(params: &IterationParams) -> Result<StepState> {
    match params.base {
        BaseKind::Zero => Ok(StepState::zero()),
        BaseKind::Seeded => seeded_base(params),
    }
}

fn seeded_base(params: &IterationParams) -> Result<StepState> {
    let radius = 6 * params.lambda0 as usize;
    let f = random_field(params.seed, radius, true);
    let quad = inv_div_unchecked(&flux(&f)?);
    let lin = lambda_s(&f, params.gamma - 1.0)?.scaled(params.nu);
    let stress = |s: f64| {
        let mut q = quad.scaled(s * s);
        q.add_scaled(&lin, -s);
        q
    };
    let grid = NormGrid::new(params.oversample, params.grid_cap);
    let target = params.base_stress * (params.lambda0 as f64).powf(-params.beta);
    let mut hi = 1.0;
    while x_norm(&stress(hi), grid) < target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if x_norm(&stress(mid), grid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let s = 0.5 * (lo + hi);
    Ok(StepState {
        n: 0,
        f_leq: f.scaled(s),
        q: stress(s),
    })
}

/// Result of a whole run.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub state: StepState,
    /// `θ = Λ f_{≤N}`.
    pub theta: TorusField,
    pub ledger: Vec<LedgerRecord>,
    pub diagnostics: Vec<StepDiagnostics>,
    pub series: Vec<SeriesTerm>,
}

impl RunOutput {
    /// `‖θ‖_{Ḣ^{-1/2}}`, positive for a non-trivial construction.
    pub fn theta_norm(&self) -> f64 {
        sobolev(&self.theta, -0.5)
    }
}

/// Runs `params.steps` steps from the base state.
pub fn run(params: &IterationParams) -> Result<RunOutput> {
    params.validate()?;
    let start = base_state(params)?;
    run_from(params, start, params.steps, |_| Ok(()))
}

/// Runs until `state.n == until`, calling `observe` after every step.
pub fn run_from(
    params: &IterationParams,
    start: StepState,
    until: usize,
    mut observe: impl FnMut(&StepOutcome) -> Result<()>,
) -> Result<RunOutput> {
    let mut state = start;
    let mut ledger = Vec::new();
    let mut diagnostics = Vec::new();
    let mut series = Vec::new();
    while state.n < until {
        let out = step(&state, params)?;
        observe(&out)?;
        ledger.push(out.record.clone());
        diagnostics.push(out.diagnostics.clone());
        series.push(out.series.clone());
        state = out.state;
    }
    let theta = lambda_s(&state.f_leq, 1.0)?;
    Ok(RunOutput {
        state,
        theta,
        ledger,
        diagnostics,
        series,
    })
}
