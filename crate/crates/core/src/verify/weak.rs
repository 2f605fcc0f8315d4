//! The weak formulation tested against single Fourier modes.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::multiplier::{lambda_s, riesz, rperp_grad_commutator, Axis};
use crate::spectral::{multiply_sum, TorusField, WaveVector};

const TORUS_AREA: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// `⟨f, g⟩ = ∫ f g dx = (2π)² Σ f̂(k) conj ĝ(k)` for real fields.
pub fn inner(f: &TorusField, g: &TorusField) -> f64 {
    let (small, large) = if f.count_nonzeros() <= g.count_nonzeros() {
        (f, g)
    } else {
        (g, f)
    };
    let s: Complex64 = small
        .nonzeros()
        .into_iter()
        .map(|(k, c)| c.conj() * large.coeff(k))
        .sum();
    TORUS_AREA * s.re
}

/// Test function shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TestKind {
    Cos,
    Sin,
}

impl TestKind {
    pub fn field(self, k: WaveVector) -> TorusField {
        match self {
            TestKind::Cos => TorusField::cos_mode(k, 1.0),
            TestKind::Sin => TorusField::sin_mode(k, 1.0),
        }
    }
}

/// The terms of the weak formulation for one test function `ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub mode: [i64; 2],
    pub kind: TestKind,
    /// `(1/2) ⟨Λ^{-1/2}θ, Λ^{1/2}[R⊥, ∇ψ]θ⟩`.
    pub nonlinear: f64,
    /// `ν ⟨Λ^{-1/2}θ, Λ^{γ+1/2}ψ⟩`.
    pub dissipation: f64,
    /// `-⟨q, Δψ⟩`.
    pub pressure: f64,
    pub total: f64,
}

impl ResidualReport {
    /// `nonlinear + dissipation`, which vanishes for an exact weak solution.
    pub fn defect(&self) -> f64 {
        self.nonlinear + self.dissipation
    }

    pub fn scale(&self) -> f64 {
        self.nonlinear
            .abs()
            .max(self.dissipation.abs())
            .max(self.pressure.abs())
    }
}

/// Non-zero wave vectors with `|k| <= radius`, one from each `±k` pair.
pub fn half_plane_modes(radius: f64) -> Vec<WaveVector> {
    let r = radius.floor() as i64;
    let mut out = Vec::new();
    for k1 in 0..=r {
        for k2 in -r..=r {
            let k = WaveVector::new(k1, k2);
            if (k1 == 0 && k2 <= 0) || k.norm_sq() as f64 > radius * radius {
                continue;
            }
            out.push(k);
        }
    }
    out
}

fn dissipation_term(theta: &TorusField, psi: &TorusField, nu: f64, gamma: f64) -> Result<f64> {
    if nu == 0.0 {
        return Ok(0.0);
    }
    let a = lambda_s(theta, -0.5)?;
    let b = lambda_s(psi, gamma + 0.5)?;
    Ok(nu * inner(&a, &b))
}

fn pressure_term(q: Option<&TorusField>, psi: &TorusField) -> f64 {
    match q {
        Some(q) => {
            let lap = lambda_s(psi, 2.0).expect("positive power").scaled(-1.0);
            -inner(q, &lap)
        }
        None => 0.0,
    }
}

/// Weak-formulation terms for `ψ = cos(k·x)` and `ψ = sin(k·x)` at every
/// requested mode.
///
/// The nonlinear term is evaluated in flux form,
/// `(1/2)⟨θ, [R⊥,∇ψ]θ⟩ = ⟨θ R2θ, ∂1ψ⟩ - ⟨θ R1θ, ∂2ψ⟩`, so the two products
/// `θ R_jθ` are formed once for all modes.
pub fn weak_residual(
    theta: &TorusField,
    q: Option<&TorusField>,
    nu: f64,
    gamma: f64,
    modes: &[WaveVector],
) -> Result<Vec<ResidualReport>> {
    let r1 = riesz(theta, Axis::X1);
    let r2 = riesz(theta, Axis::X2);
    let flux1 = multiply_sum(&[(theta, &r1, 1.0)]);
    let flux2 = multiply_sum(&[(theta, &r2, 1.0)]);
    drop((r1, r2));
    let mut out = Vec::with_capacity(2 * modes.len());
    for &k in modes {
        for kind in [TestKind::Cos, TestKind::Sin] {
            let psi = kind.field(k);
            let d1 = crate::multiplier::partial(&psi, Axis::X1);
            let d2 = crate::multiplier::partial(&psi, Axis::X2);
            let nonlinear = inner(&flux2, &d1) - inner(&flux1, &d2);
            out.push(report(k, kind, nonlinear, theta, q, &psi, nu, gamma)?);
        }
    }
    Ok(out)
}

/// Same terms with the nonlinear pairing taken literally from the
/// definition, `(1/2)⟨Λ^{-1/2}θ, Λ^{1/2}[R⊥,∇ψ]θ⟩`. Costs two commutators
/// per test function.
pub fn weak_residual_literal(
    theta: &TorusField,
    q: Option<&TorusField>,
    nu: f64,
    gamma: f64,
    modes: &[WaveVector],
) -> Result<Vec<ResidualReport>> {
    let left = lambda_s(theta, -0.5)?;
    let mut out = Vec::with_capacity(2 * modes.len());
    for &k in modes {
        for kind in [TestKind::Cos, TestKind::Sin] {
            let psi = kind.field(k);
            let comm = rperp_grad_commutator(&psi, theta);
            let right = lambda_s(&comm, 0.5)?;
            let nonlinear = 0.5 * inner(&left, &right);
            out.push(report(k, kind, nonlinear, theta, q, &psi, nu, gamma)?);
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn report(
    k: WaveVector,
    kind: TestKind,
    nonlinear: f64,
    theta: &TorusField,
    q: Option<&TorusField>,
    psi: &TorusField,
    nu: f64,
    gamma: f64,
) -> Result<ResidualReport> {
    let dissipation = dissipation_term(theta, psi, nu, gamma)?;
    let pressure = pressure_term(q, psi);
    Ok(ResidualReport {
        mode: [k.k1, k.k2],
        kind,
        nonlinear,
        dissipation,
        pressure,
        total: nonlinear + dissipation + pressure,
    })
}

/// `max |total| / max scale` over a set of reports.
pub fn relative_total(reports: &[ResidualReport]) -> f64 {
    let scale = reports.iter().map(|r| r.scale()).fold(0.0, f64::max);
    let worst = reports.iter().map(|r| r.total.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}
