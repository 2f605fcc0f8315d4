use serde::Serialize;

use super::IterationParams;
use crate::error::{Error, Result};

/// Relative distance to an integer below which a power is taken to be that
/// integer before the ceiling.
const SNAP: f64 = 1e-9;

/// `λ_n = ⌈λ0^{b^n}⌉`.
pub fn lambda(lambda0: u64, b: f64, n: usize) -> Result<u64> {
    let exponent = b.powi(n as i32) * (lambda0 as f64).ln();
    let value = exponent.exp();
    if !value.is_finite() || value > 2f64.powi(53) {
        return Err(Error::ScaleOverflow { n });
    }
    let nearest = value.round();
    if (value - nearest).abs() <= SNAP * value {
        return Ok(nearest as u64);
    }
    Ok(value.ceil() as u64)
}

/// The frequencies and sizes governing step `n -> n+1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivedScales {
    pub n: usize,
    pub lambda_n: u64,
    pub lambda_next: u64,
    /// `λ_n^{-β}`.
    pub r_n: f64,
    pub r_next: f64,
    /// `(λ_n λ_{n+1})^{1/2}`.
    pub mu_next: f64,
    pub alpha: f64,
}

impl DerivedScales {
    pub fn at(params: &IterationParams, n: usize) -> Result<Self> {
        let lambda_n = lambda(params.lambda0, params.b, n)?;
        let lambda_next = lambda(params.lambda0, params.b, n + 1)?;
        Ok(DerivedScales {
            n,
            lambda_n,
            lambda_next,
            r_n: (lambda_n as f64).powf(-params.beta),
            r_next: (lambda_next as f64).powf(-params.beta),
            mu_next: ((lambda_n as f64) * (lambda_next as f64)).sqrt(),
            alpha: params.alpha(),
        })
    }

    /// `5 λ_{n+1}`, the modulus of the new wave vectors.
    pub fn lambda5(&self) -> i64 {
        5 * self.lambda_next as i64
    }

    pub fn separation_ok(&self) -> bool {
        48 * self.lambda_n <= self.lambda_next
    }

    /// Band of the perturbation `f_{n+1}`: `5λ_{n+1} + ⌈μ_{n+1}⌉`.
    pub fn band_next(&self) -> usize {
        5 * self.lambda_next as usize + self.mu_next.ceil() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings() {
        assert_eq!(lambda(2, 6.585, 1).unwrap(), 97);
        assert_eq!(lambda(2, IterationParams::b_for(2, 96), 1).unwrap(), 96);
        assert_eq!(lambda(2, IterationParams::b_for(2, 192), 1).unwrap(), 192);
        assert_eq!(lambda(2, 2.0, 2).unwrap(), 16);
        assert_eq!(lambda(3, 1.5, 0).unwrap(), 3);
        assert!(matches!(
            lambda(2, 10.0, 3),
            Err(Error::ScaleOverflow { n: 3 })
        ));
    }

    #[test]
    fn ordering() {
        let p = IterationParams::new(2, IterationParams::b_for(2, 96), 0.25, 1.0);
        let s = DerivedScales::at(&p, 0).unwrap();
        assert!(s.lambda_n < s.lambda_next);
        assert!(s.r_next < s.r_n);
        assert!((s.lambda_n as f64) < s.mu_next && s.mu_next < s.lambda_next as f64);
        assert!(s.separation_ok());
        assert!((s.r_next - 96f64.powf(-0.25)).abs() < 1e-15);
        assert!((s.r_next - 0.31947).abs() < 1e-5);
    }
}
