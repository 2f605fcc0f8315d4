//! Sign conditions on the error exponents of the construction.

use serde::Serialize;

use crate::iteration::IterationParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Exponents {
    /// `(b-1)(β-1)`, exponent of `λ_n` (up to `log λ_n`).
    pub mismatch: f64,
    /// `1 - α - β/2 - b/2 + bβ`, exponent of `λ_n`.
    pub transport: f64,
    /// `γ - 3/2 + β - β/(2b)`, exponent of `λ_{n+1}`.
    pub dissipation: f64,
    /// `α - 1/2 - β/(2b)`.
    pub regularity: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub mismatch: bool,
    pub transport: bool,
    pub dissipation: bool,
    pub regularity: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.mismatch && self.transport && self.dissipation && self.regularity
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Constraints {
    /// `0 < β < min(1/3, 3 - 2γ)`.
    pub beta_range: bool,
    /// `0 < γ < 3/2`.
    pub gamma_range: bool,
    /// `b > 1`.
    pub b_range: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeasibilityReport {
    pub alpha: f64,
    pub exponents: Exponents,
    pub verdicts: Verdicts,
    pub constraints: Constraints,
    /// `1/2 <= α < 1/2 + min(1/6, 3/2 - γ)`.
    pub alpha_window: bool,
    pub pass: bool,
}

/// Exponent arithmetic for the given parameters. Never fails; bad input shows
/// up as failed verdicts.
pub fn feasibility(params: &IterationParams) -> FeasibilityReport {
    let IterationParams { b, beta, gamma, .. } = *params;
    let alpha = params.alpha();
    let exponents = Exponents {
        mismatch: (b - 1.0) * (beta - 1.0),
        transport: 1.0 - alpha - beta / 2.0 - b / 2.0 + b * beta,
        dissipation: gamma - 1.5 + beta - beta / (2.0 * b),
        regularity: alpha - 0.5 - beta / (2.0 * b),
    };
    let verdicts = Verdicts {
        mismatch: exponents.mismatch < 0.0,
        transport: exponents.transport < 0.0,
        dissipation: exponents.dissipation < 0.0,
        regularity: exponents.regularity < 0.0,
    };
    let constraints = Constraints {
        beta_range: beta > 0.0 && beta < (1.0f64 / 3.0).min(3.0 - 2.0 * gamma),
        gamma_range: gamma > 0.0 && gamma < 1.5,
        b_range: b > 1.0,
    };
    let alpha_window = alpha >= 0.5 && alpha < 0.5 + (1.0f64 / 6.0).min(1.5 - gamma);
    let pass = verdicts.all()
        && constraints.beta_range
        && constraints.gamma_range
        && constraints.b_range
        && alpha_window;
    FeasibilityReport {
        alpha,
        exponents,
        verdicts,
        constraints,
        alpha_window,
        pass,
    }
}

impl FeasibilityReport {
    /// Predicted slopes of `log(‖q_T‖_X / r_{n+1})` and
    /// `log(‖q_D‖_X / r_{n+1})` against `log λ_{n+1}`.
    pub fn channel_slopes(&self, b: f64) -> [f64; 2] {
        [self.exponents.transport / b, self.exponents.dissipation]
    }
}
