//! Named verification checks behind a common trait, producing uniform JSON
//! reports.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    check_algebraic, commutator_ratio, feasibility, flux_identity_defect, half_plane_modes,
    weak_residual, weak_residual_literal,
};
use crate::error::{Error, Result};
use crate::iteration::IterationParams;
use crate::multiplier::monitors::{riesz_log_ratio, t_ratios};
use crate::multiplier::{lambda_s, leibniz_terms, Direction};
use crate::norms::NormGrid;
use crate::spectral::{convolve_direct, multiply, random_field, random_field_with, TorusField};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub max_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A verification with a scalar defect that must stay below a tolerance.
pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn params(&self) -> Value;
    fn tolerance(&self) -> f64;
    fn defect(&self) -> Result<f64> {
        Ok(self.measure()?.0)
    }
    /// The defect together with observations worth echoing in the report.
    fn measure(&self) -> Result<(f64, Value)> {
        Ok((self.defect()?, Value::Null))
    }

    fn run(&self) -> Result<CheckReport> {
        let (max_defect, observed) = self.measure()?;
        let tolerance = self.tolerance();
        let mut params = self.params();
        if let (Value::Object(map), Value::Object(extra)) = (&mut params, observed) {
            map.extend(extra);
        }
        Ok(CheckReport {
            check: self.name().to_string(),
            params,
            max_defect,
            tolerance,
            pass: max_defect.is_finite() && max_defect < tolerance,
        })
    }
}

/// Bands and trial counts for the standard suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub kmax: usize,
    pub leibniz_cases: usize,
    pub multiply_band: usize,
    pub trials: usize,
    pub band_phi: usize,
    pub bands_theta: Vec<usize>,
    pub riesz_mus: Vec<usize>,
    pub t_pairs: Vec<(i64, usize)>,
    pub seed: u64,
    pub params: Option<IterationParams>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            kmax: 64,
            leibniz_cases: 20,
            multiply_band: 16,
            trials: 100,
            band_phi: 8,
            bands_theta: vec![16, 32, 64],
            riesz_mus: vec![16, 32, 64, 128],
            t_pairs: vec![(128, 16), (512, 32), (2048, 64)],
            seed: 0,
            params: None,
        }
    }
}

/// Largest factor between neighbouring entries.
fn drift(values: &[f64]) -> f64 {
    values
        .windows(2)
        .map(|w| (w[1] / w[0]).max(w[0] / w[1]))
        .fold(1.0, f64::max)
}

pub struct Algebraic {
    pub kmax: usize,
}

impl Check for Algebraic {
    fn name(&self) -> &'static str {
        "algebraic"
    }
    fn params(&self) -> Value {
        json!({ "kmax": self.kmax })
    }
    fn tolerance(&self) -> f64 {
        1e-10
    }
    fn defect(&self) -> Result<f64> {
        Ok(check_algebraic(self.kmax))
    }
}

pub struct Leibniz {
    pub cases: usize,
    pub seed: u64,
}

impl Leibniz {
    /// Relative residual of the splitting for one random case.
    pub fn case(rng: &mut ChaCha8Rng) -> Result<f64> {
        let lambda = 5 * rng.random_range(8i64..=128);
        let band = rng.random_range(1..=(lambda as usize / 8).min(40));
        let dir = if rng.random_range(0..2) == 0 {
            Direction::L1
        } else {
            Direction::L2
        };
        let a = random_field_with(rng, band, false);
        let w = dir.lattice(lambda).expect("multiple of five");
        let direct = lambda_s(&a.modulate_cos(w), 1.0)?;
        let split = leibniz_terms(&a, lambda, dir)?.reassemble(&a, lambda, dir);
        Ok((&split - &direct).max_abs() / direct.max_abs())
    }
}

impl Check for Leibniz {
    fn name(&self) -> &'static str {
        "leibniz"
    }
    fn params(&self) -> Value {
        json!({ "cases": self.cases, "seed": self.seed })
    }
    fn tolerance(&self) -> f64 {
        1e-11
    }
    fn defect(&self) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut worst = 0.0f64;
        for _ in 0..self.cases {
            worst = worst.max(Leibniz::case(&mut rng)?);
        }
        Ok(worst)
    }
}

pub struct FluxIdentity {
    pub band: usize,
    pub seed: u64,
}

impl Check for FluxIdentity {
    fn name(&self) -> &'static str {
        "flux_identity"
    }
    fn params(&self) -> Value {
        json!({ "band": self.band, "seed": self.seed })
    }
    fn tolerance(&self) -> f64 {
        1e-11
    }
    fn defect(&self) -> Result<f64> {
        let theta = random_field(self.seed, self.band, true);
        let phi = random_field(self.seed + 1, self.band / 2 + 1, false);
        Ok(flux_identity_defect(&theta, &phi))
    }
}

pub struct WeakForm {
    pub band: usize,
    pub seed: u64,
}

impl Check for WeakForm {
    fn name(&self) -> &'static str {
        "weak_form"
    }
    fn params(&self) -> Value {
        json!({ "band": self.band, "seed": self.seed, "modes": "|k| <= 3" })
    }
    fn tolerance(&self) -> f64 {
        1e-10
    }
    fn defect(&self) -> Result<f64> {
        let theta = random_field(self.seed, self.band, true);
        let modes = half_plane_modes(3.0);
        let a = weak_residual(&theta, None, 1.0, 1.0, &modes)?;
        let b = weak_residual_literal(&theta, None, 1.0, 1.0, &modes)?;
        let scale = a.iter().map(|r| r.nonlinear.abs()).fold(0.0, f64::max);
        Ok(a.iter()
            .zip(&b)
            .map(|(x, y)| (x.nonlinear - y.nonlinear).abs() / scale)
            .fold(0.0, f64::max))
    }
}

pub struct Multiply {
    pub band: usize,
    pub seed: u64,
}

impl Check for Multiply {
    fn name(&self) -> &'static str {
        "multiply"
    }
    fn params(&self) -> Value {
        json!({ "band": self.band, "seed": self.seed })
    }
    fn tolerance(&self) -> f64 {
        1e-12
    }
    fn defect(&self) -> Result<f64> {
        let f = random_field(self.seed, self.band, false);
        let g = random_field(self.seed + 1, self.band, false);
        Ok((&multiply(&f, &g) - &convolve_direct(&f, &g)).max_abs())
    }
}

pub struct CommutatorRatio {
    pub trials: usize,
    pub band_phi: usize,
    pub bands_theta: Vec<usize>,
    pub seed: u64,
}

impl CommutatorRatio {
    pub fn maxima(&self) -> Vec<f64> {
        self.bands_theta
            .iter()
            .map(|&b| commutator_ratio(self.trials, self.band_phi, b, self.seed).max)
            .collect()
    }
}

impl Check for CommutatorRatio {
    fn name(&self) -> &'static str {
        "commutator_ratio"
    }
    fn params(&self) -> Value {
        json!({
            "trials": self.trials,
            "bandPhi": self.band_phi,
            "bandsTheta": self.bands_theta,
            "seed": self.seed,
        })
    }
    fn tolerance(&self) -> f64 {
        2.0
    }
    fn measure(&self) -> Result<(f64, Value)> {
        let m = self.maxima();
        Ok((drift(&m), json!({ "maxima": m })))
    }
}

pub struct RieszLog {
    pub mus: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl RieszLog {
    pub fn maxima(&self) -> Vec<f64> {
        self.mus
            .iter()
            .map(|&mu| riesz_log_ratio(mu, self.trials, self.seed, NormGrid::default()).max)
            .collect()
    }
}

impl Check for RieszLog {
    fn name(&self) -> &'static str {
        "riesz_log"
    }
    fn params(&self) -> Value {
        json!({ "mus": self.mus, "trials": self.trials, "seed": self.seed })
    }
    fn tolerance(&self) -> f64 {
        2.0
    }
    fn measure(&self) -> Result<(f64, Value)> {
        let m = self.maxima();
        Ok((drift(&m), json!({ "maxima": m })))
    }
}

pub struct TBounds {
    pub pairs: Vec<(i64, usize)>,
    pub trials: usize,
    pub seed: u64,
}

impl TBounds {
    /// Max quotient per pair, for `T^(1)` and `T^(2)`.
    pub fn maxima(&self) -> Result<[Vec<f64>; 2]> {
        let mut out = [Vec::new(), Vec::new()];
        for &(lambda, mu) in &self.pairs {
            let [t1, t2] = t_ratios(lambda, mu, self.trials, self.seed, NormGrid::default())?;
            out[0].push(t1.max);
            out[1].push(t2.max);
        }
        Ok(out)
    }
}

impl Check for TBounds {
    fn name(&self) -> &'static str {
        "t_bounds"
    }
    fn params(&self) -> Value {
        json!({ "pairs": self.pairs, "trials": self.trials, "seed": self.seed })
    }
    fn tolerance(&self) -> f64 {
        2.0
    }
    fn measure(&self) -> Result<(f64, Value)> {
        let [a, b] = self.maxima()?;
        Ok((
            drift(&a).max(drift(&b)),
            json!({ "maximaT1": a, "maximaT2": b }),
        ))
    }
}

pub struct Feasibility {
    pub params: IterationParams,
}

impl Check for Feasibility {
    fn name(&self) -> &'static str {
        "feasibility"
    }
    fn params(&self) -> Value {
        serde_json::to_value(feasibility(&self.params)).expect("plain data")
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    /// Largest exponent; all must be negative.
    fn defect(&self) -> Result<f64> {
        let e = feasibility(&self.params).exponents;
        Ok(e.mismatch
            .max(e.transport)
            .max(e.dissipation)
            .max(e.regularity))
    }
}

/// Names accepted by [`lookup`], in suite order.
pub const CHECK_NAMES: [&str; 9] = [
    "algebraic",
    "leibniz",
    "flux_identity",
    "weak_form",
    "multiply",
    "commutator_ratio",
    "riesz_log",
    "t_bounds",
    "feasibility",
];

/// One check by name, configured from `cfg`.
pub fn lookup(name: &str, cfg: &SuiteConfig) -> Result<Box<dyn Check>> {
    let seed = cfg.seed;
    Ok(match name {
        "algebraic" => Box::new(Algebraic { kmax: cfg.kmax }),
        "leibniz" => Box::new(Leibniz {
            cases: cfg.leibniz_cases,
            seed,
        }),
        "flux_identity" => Box::new(FluxIdentity { band: 24, seed }),
        "weak_form" => Box::new(WeakForm { band: 12, seed }),
        "multiply" => Box::new(Multiply {
            band: cfg.multiply_band,
            seed,
        }),
        "commutator_ratio" => Box::new(CommutatorRatio {
            trials: cfg.trials,
            band_phi: cfg.band_phi,
            bands_theta: cfg.bands_theta.clone(),
            seed,
        }),
        "riesz_log" => Box::new(RieszLog {
            mus: cfg.riesz_mus.clone(),
            trials: cfg.trials,
            seed,
        }),
        "t_bounds" => Box::new(TBounds {
            pairs: cfg.t_pairs.clone(),
            trials: cfg.trials,
            seed,
        }),
        "feasibility" => match &cfg.params {
            Some(p) => Box::new(Feasibility { params: p.clone() }),
            None => {
                return Err(Error::InvalidArgument(
                    "feasibility check needs parameters".into(),
                ))
            }
        },
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown check {other:?}; known: {}",
                CHECK_NAMES.join(", ")
            )))
        }
    })
}

/// Every applicable check, in suite order.
pub fn suite(cfg: &SuiteConfig) -> Vec<Box<dyn Check>> {
    CHECK_NAMES
        .iter()
        .filter(|n| **n != "feasibility" || cfg.params.is_some())
        .map(|n| lookup(n, cfg).expect("registered name"))
        .collect()
}

/// Max out-of-band magnitude of a single field, wrapped as a report.
pub fn support_report(f: &TorusField, radius: f64, label: &str) -> CheckReport {
    let defect = super::check_support(f, radius);
    let tolerance = 1e-13 * f.max_abs();
    CheckReport {
        check: format!("support_{label}"),
        params: json!({ "radius": radius }),
        max_defect: defect,
        tolerance,
        pass: defect <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig {
            kmax: 16,
            leibniz_cases: 3,
            trials: 4,
            riesz_mus: vec![8, 16],
            t_pairs: vec![(128, 16), (512, 32)],
            params: Some(IterationParams::new(2, 6.585, 0.25, 1.0)),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn names_resolve() {
        let cfg = quick();
        for n in CHECK_NAMES {
            assert_eq!(lookup(n, &cfg).unwrap().name(), n);
        }
        assert!(lookup("nope", &cfg).is_err());
        assert_eq!(suite(&SuiteConfig::default()).len(), CHECK_NAMES.len() - 1);
    }

    #[test]
    fn exact_checks_pass() {
        let cfg = quick();
        for n in [
            "algebraic",
            "leibniz",
            "flux_identity",
            "weak_form",
            "multiply",
        ] {
            let r = lookup(n, &cfg).unwrap().run().unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn report_keys() {
        let r = Algebraic { kmax: 2 }.run().unwrap();
        let s = serde_json::to_string(&r).unwrap();
        for key in [
            "\"check\"",
            "\"params\"",
            "\"maxDefect\"",
            "\"tolerance\"",
            "\"pass\"",
        ] {
            assert!(s.contains(key), "{s}");
        }
    }

    #[test]
    fn support() {
        let f = TorusField::cos_mode(crate::spectral::WaveVector::new(3, 0), 1.0);
        assert!(!support_report(&f, 2.0, "f").pass);
        assert!(support_report(&f, 3.0, "f").pass);
    }

    #[test]
    fn drift_factor() {
        assert_eq!(drift(&[1.0, 1.5, 0.5]), 3.0);
        assert_eq!(drift(&[2.0]), 1.0);
    }
}
