use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// What to do when `48 λ_n > λ_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationPolicy {
    Strict48,
    Warn,
}

impl SeparationPolicy {
    pub fn name(self) -> &'static str {
        match self {
            SeparationPolicy::Strict48 => "strict48",
            SeparationPolicy::Warn => "warn",
        }
    }
}

/// Starting pair `(f_{≤0}, q_0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    /// `(0, 0)`.
    Zero,
    /// A random `f_{≤0}` with `|k| <= 6λ0` and the stress `q_0` that makes
    /// the pair solve the relaxed equation exactly.
    Seeded,
}

impl BaseKind {
    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Zero => "zero",
            BaseKind::Seeded => "seeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationParams {
    pub lambda0: u64,
    pub b: f64,
    pub beta: f64,
    pub nu: f64,
    pub gamma: f64,
    pub c0: f64,
    pub eps0: f64,
    pub steps: usize,
    pub oversample: usize,
    pub separation: SeparationPolicy,
    /// Largest FFT size per axis any step may use.
    pub grid_cap: usize,
    pub base: BaseKind,
    /// `‖q_0‖_X / r_0` for the seeded base.
    pub base_stress: f64,
    pub seed: u64,
}

impl IterationParams {
    /// Defaults for everything but the four required exponents.
    pub fn new(lambda0: u64, b: f64, beta: f64, gamma: f64) -> Self {
        IterationParams {
            lambda0,
            b,
            beta,
            nu: 0.0,
            gamma,
            c0: 2.0,
            eps0: 0.01,
            steps: 1,
            oversample: 4,
            separation: SeparationPolicy::Warn,
            grid_cap: 2048,
            base: BaseKind::Zero,
            base_stress: 0.5,
            seed: 0,
        }
    }

    /// `b` with `⌈λ0^b⌉ = lambda1` exactly.
    pub fn b_for(lambda0: u64, lambda1: u64) -> f64 {
        (lambda1 as f64).ln() / (lambda0 as f64).ln()
    }

    /// `α = 1/2 + β/(2b) - ε0`.
    pub fn alpha(&self) -> f64 {
        0.5 + self.beta / (2.0 * self.b) - self.eps0
    }

    /// Every violated constraint, in a fixed order.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.gamma > 0.0 && self.gamma < 1.5) {
            v.push(format!(
                "gamma = {} must satisfy 0 < gamma < 3/2",
                self.gamma
            ));
        }
        let beta_max = (1.0f64 / 3.0).min(3.0 - 2.0 * self.gamma);
        if !(self.beta > 0.0 && self.beta < beta_max) {
            v.push(format!(
                "beta = {} must satisfy 0 < beta < min(1/3, 3 - 2 gamma) = {beta_max}",
                self.beta
            ));
        }
        if !(self.b > 1.0) {
            v.push(format!("b = {} must exceed 1", self.b));
        }
        if !(self.c0 >= 2.0) {
            v.push(format!("c0 = {} must be at least 2", self.c0));
        }
        if self.lambda0 < 2 {
            v.push(format!(
                "lambda0 = {} must be an integer >= 2",
                self.lambda0
            ));
        }
        if !(self.alpha() > 0.5) {
            v.push(format!(
                "alpha = 1/2 + beta/(2b) - eps0 = {} must exceed 1/2",
                self.alpha()
            ));
        }
        if !(self.nu >= 0.0) {
            v.push(format!("nu = {} must be non-negative", self.nu));
        }
        if !(self.grid_cap >= 64 && self.grid_cap.is_power_of_two()) {
            v.push(format!(
                "grid_cap = {} must be a power of two >= 64",
                self.grid_cap
            ));
        }
        if self.oversample < 1 {
            v.push("oversample must be at least 1".to_string());
        }
        if !(self.base_stress > 0.0 && self.base_stress < self.c0) {
            v.push(format!(
                "base_stress = {} must lie in (0, c0)",
                self.base_stress
            ));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }

    /// `key = value` lines in a fixed order, floats in shortest round-trip form.
    pub fn canonical(&self) -> String {
        format!(
            "lambda0 = {}\nb = {:?}\nbeta = {:?}\nnu = {:?}\ngamma = {:?}\nc0 = {:?}\neps0 = {:?}\n\
             steps = {}\ngrid_cap = {}\noversample = {}\nseparation = {}\nseed = {}\nbase = {}\n\
             base_stress = {:?}\n",
            self.lambda0,
            self.b,
            self.beta,
            self.nu,
            self.gamma,
            self.c0,
            self.eps0,
            self.steps,
            self.grid_cap,
            self.oversample,
            self.separation.name(),
            self.seed,
            self.base.name(),
            self.base_stress,
        )
    }

    /// SHA-256 of everything that determines the construction (not `steps`).
    pub fn hash(&self) -> String {
        let mut p = self.clone();
        p.steps = 0;
        hex::encode(Sha256::digest(p.canonical().as_bytes()))
    }
}
