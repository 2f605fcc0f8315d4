use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::WaveVector;

/// How a symbol behaves under `k -> -k`. Both kinds map real fields to real
/// fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    /// Real valued and even: `m(-k) = m(k) ∈ R`.
    RealEven,
    /// Purely imaginary and odd: `m(-k) = -m(k) ∈ iR`.
    ImagOdd,
}

/// Fourier multiplier `f̂(k) -> m(k) f̂(k)`.
pub trait Symbol: Send + Sync + fmt::Debug {
    fn eval(&self, k: WaveVector) -> Complex64;
    fn parity(&self) -> Parity;
    /// Short human-readable name, e.g. `lambda^0.5`.
    fn label(&self) -> String;
    /// Largest band the symbol accepts, if it is only defined on a ball.
    fn band_limit(&self) -> Option<usize> {
        None
    }
}

/// Coordinate axis `j ∈ {1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X1,
    X2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::X1, Axis::X2];

    pub fn of(k: WaveVector, axis: Axis) -> i64 {
        match axis {
            Axis::X1 => k.k1,
            Axis::X2 => k.k2,
        }
    }

    pub fn number(self) -> usize {
        match self {
            Axis::X1 => 1,
            Axis::X2 => 2,
        }
    }
}

impl TryFrom<usize> for Axis {
    type Error = Error;
    fn try_from(j: usize) -> Result<Axis> {
        match j {
            1 => Ok(Axis::X1),
            2 => Ok(Axis::X2),
            _ => Err(Error::InvalidArgument(format!(
                "axis must be 1 or 2, got {j}"
            ))),
        }
    }
}

/// One of the two oscillation directions `l1 = (3/5, 4/5)`, `l2 = (1, 0)`.
///
/// Stored as integer numerators over 5 so `|l| = 1` and `5λl ∈ Z²` hold
/// exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    L1,
    L2,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::L1, Direction::L2];

    /// Numerators of `l` over the common denominator 5.
    pub const fn fifths(self) -> (i64, i64) {
        match self {
            Direction::L1 => (3, 4),
            Direction::L2 => (5, 0),
        }
    }

    pub fn vec(self) -> [f64; 2] {
        let (a, b) = self.fifths();
        [a as f64 / 5.0, b as f64 / 5.0]
    }

    /// `l⊥ = (-l_2, l_1)`.
    pub fn perp(self) -> [f64; 2] {
        let [a, b] = self.vec();
        [-b, a]
    }

    /// `λ l` as a lattice point, if `λ l ∈ Z²`.
    pub fn lattice(self, lambda: i64) -> Option<WaveVector> {
        let (a, b) = self.fifths();
        if (lambda * a) % 5 != 0 || (lambda * b) % 5 != 0 {
            return None;
        }
        Some(WaveVector::new(lambda * a / 5, lambda * b / 5))
    }

    /// `l·k`.
    pub fn dot(self, k: WaveVector) -> f64 {
        let (a, b) = self.fifths();
        (a * k.k1 + b * k.k2) as f64 / 5.0
    }

    /// `l⊥·k`.
    pub fn perp_dot(self, k: WaveVector) -> f64 {
        let (a, b) = self.fifths();
        (a * k.k2 - b * k.k1) as f64 / 5.0
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::L1 => "l1",
            Direction::L2 => "l2",
        }
    }
}

/// Smooth radial cutoff: 1 on `[0, 1/2]`, 0 on `[1, ∞)`, and
/// `g(2(1-r)) / (g(2(1-r)) + g(2(r-1/2)))` between, with `g(t) = e^{-1/t}`.
pub fn psi(r: f64) -> f64 {
    if r <= 0.5 {
        return 1.0;
    }
    if r >= 1.0 {
        return 0.0;
    }
    let g = |t: f64| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 };
    let a = g(2.0 * (1.0 - r));
    let b = g(2.0 * (r - 0.5));
    a / (a + b)
}

/// The multipliers used by the construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MultiplierSymbol {
    /// `|k|^s`; zero at `k = 0` unless `s = 0`.
    LambdaS(f64),
    /// `i k_j / |k|`.
    Riesz(Axis),
    /// The zeroth-order even pair
    /// `R1° = 25(k2² - k1²) / (12|k|²)`,
    /// `R2° = 7(k2² - k1²) / (12|k|²) + 4 k1 k2 / |k|²`.
    RieszOdd(Axis),
    /// `(|λl + k| + |λl - k|)/2 - λ`.
    T1 { lambda: i64, dir: Direction },
    /// `i((|λl + k| - |λl - k|)/2 - l·k)`.
    T2 { lambda: i64, dir: Direction },
    /// `ψ(|k| / μ)`.
    LowPass(f64),
    /// `ψ(|k| / 4μ)`, the identity on `|k| <= 2μ`.
    FatLowPass(f64),
    /// Component `i` of `Δ⁻¹∇·`: `-i k_i / |k|²`.
    InvDivComponent(Axis),
    /// `∂_j`: `i k_j`.
    Partial(Axis),
}

/// `|λl ± k| - λ` in a cancellation-free form, computed from the exact
/// integer `|λl ± k|² - λ² = ±2λl·k + |k|²`.
fn shifted_gaps(lambda: i64, dir: Direction, k: WaveVector) -> (f64, f64) {
    let (a, b) = dir.fifths();
    // 2λ l·k, exact when 5 | λ·a and 5 | λ·b; otherwise still a correct float
    let two_wk = 2.0 * lambda as f64 * (a * k.k1 + b * k.k2) as f64 / 5.0;
    let kk = k.norm_sq() as f64;
    let lam = lambda as f64;
    let gap = |num: f64| {
        let s = (lam * lam + num).max(0.0).sqrt();
        num / (s + lam)
    };
    (gap(two_wk + kk), gap(-two_wk + kk))
}

impl Symbol for MultiplierSymbol {
    fn eval(&self, k: WaveVector) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let real = |v: f64| Complex64::new(v, 0.0);
        let imag = |v: f64| Complex64::new(0.0, v);
        match *self {
            MultiplierSymbol::LambdaS(s) => {
                if k.is_zero() {
                    if s == 0.0 {
                        real(1.0)
                    } else {
                        zero
                    }
                } else if s == 0.0 {
                    real(1.0)
                } else if s == 1.0 {
                    real(k.norm())
                } else if s == 2.0 {
                    real(k.norm_sq() as f64)
                } else {
                    real((k.norm_sq() as f64).powf(s / 2.0))
                }
            }
            MultiplierSymbol::Riesz(j) => {
                if k.is_zero() {
                    zero
                } else {
                    imag(Axis::of(k, j) as f64 / k.norm())
                }
            }
            MultiplierSymbol::RieszOdd(j) => {
                if k.is_zero() {
                    return zero;
                }
                let kk = k.norm_sq() as f64;
                let d = (k.k2 * k.k2 - k.k1 * k.k1) as f64;
                match j {
                    Axis::X1 => real(25.0 * d / (12.0 * kk)),
                    Axis::X2 => real(7.0 * d / (12.0 * kk) + 4.0 * (k.k1 * k.k2) as f64 / kk),
                }
            }
            MultiplierSymbol::T1 { lambda, dir } => {
                let (p, m) = shifted_gaps(lambda, dir, k);
                real(0.5 * (p + m))
            }
            MultiplierSymbol::T2 { lambda, dir } => {
                let (p, m) = shifted_gaps(lambda, dir, k);
                imag(0.5 * (p - m) - dir.dot(k))
            }
            MultiplierSymbol::LowPass(mu) => real(psi(k.norm() / mu)),
            MultiplierSymbol::FatLowPass(mu) => real(psi(k.norm() / (4.0 * mu))),
            MultiplierSymbol::InvDivComponent(j) => {
                if k.is_zero() {
                    zero
                } else {
                    imag(-(Axis::of(k, j) as f64) / k.norm_sq() as f64)
                }
            }
            MultiplierSymbol::Partial(j) => imag(Axis::of(k, j) as f64),
        }
    }

    fn parity(&self) -> Parity {
        match self {
            MultiplierSymbol::LambdaS(_)
            | MultiplierSymbol::RieszOdd(_)
            | MultiplierSymbol::T1 { .. }
            | MultiplierSymbol::LowPass(_)
            | MultiplierSymbol::FatLowPass(_) => Parity::RealEven,
            MultiplierSymbol::Riesz(_)
            | MultiplierSymbol::T2 { .. }
            | MultiplierSymbol::InvDivComponent(_)
            | MultiplierSymbol::Partial(_) => Parity::ImagOdd,
        }
    }

    fn label(&self) -> String {
        match self {
            MultiplierSymbol::LambdaS(s) => format!("lambda^{s}"),
            MultiplierSymbol::Riesz(j) => format!("riesz{}", j.number()),
            MultiplierSymbol::RieszOdd(j) => format!("riesz_odd{}", j.number()),
            MultiplierSymbol::T1 { lambda, dir } => format!("t1[{lambda},{}]", dir.name()),
            MultiplierSymbol::T2 { lambda, dir } => format!("t2[{lambda},{}]", dir.name()),
            MultiplierSymbol::LowPass(mu) => format!("lowpass[{mu}]"),
            MultiplierSymbol::FatLowPass(mu) => format!("fat_lowpass[{mu}]"),
            MultiplierSymbol::InvDivComponent(j) => format!("inv_div{}", j.number()),
            MultiplierSymbol::Partial(j) => format!("d{}", j.number()),
        }
    }

    fn band_limit(&self) -> Option<usize> {
        match self {
            MultiplierSymbol::T1 { lambda, .. } | MultiplierSymbol::T2 { lambda, .. } => {
                Some((*lambda).max(1) as usize - 1)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(a: i64, b: i64) -> WaveVector {
        WaveVector::new(a, b)
    }

    #[test]
    fn riesz_odd_values() {
        let r1 = MultiplierSymbol::RieszOdd(Axis::X1);
        let r2 = MultiplierSymbol::RieszOdd(Axis::X2);
        assert!((r1.eval(k(1, 0)).re + 25.0 / 12.0).abs() < 1e-15);
        assert_eq!(r1.eval(k(1, 1)).re, 0.0);
        assert!((r2.eval(k(1, 1)).re - 2.0).abs() < 1e-15);
        assert_eq!(r1.eval(WaveVector::ZERO), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn t_symbols() {
        let t1 = MultiplierSymbol::T1 {
            lambda: 10,
            dir: Direction::L2,
        };
        assert_eq!(t1.eval(WaveVector::ZERO).re, 0.0);
        let want = 101f64.sqrt() - 10.0;
        assert!((t1.eval(k(0, 1)).re - want).abs() < 1e-15);
        // collinear wave vectors: k = 3 l1 for l1 = (3/5, 4/5) needs k = (9/5, 12/5);
        // use l2 and k = (4, 0) instead
        let t2 = MultiplierSymbol::T2 {
            lambda: 10,
            dir: Direction::L2,
        };
        assert_eq!(t2.eval(k(4, 0)).im, 0.0);
        let t2 = MultiplierSymbol::T2 {
            lambda: 50,
            dir: Direction::L1,
        };
        assert!(t2.eval(k(6, 8)).im.abs() < 1e-15);
    }

    #[test]
    fn psi_profile() {
        assert_eq!(psi(0.0), 1.0);
        assert_eq!(psi(0.5), 1.0);
        assert_eq!(psi(1.0), 0.0);
        assert!((psi(0.75) - 0.5).abs() < 1e-15);
        let mut last = 1.0;
        for i in 0..=100 {
            let v = psi(0.5 + i as f64 / 200.0);
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn directions_are_exact() {
        for l in Direction::BOTH {
            let (a, b) = l.fifths();
            assert_eq!(a * a + b * b, 25);
            assert!(l.lattice(5 * 7).is_some());
        }
        assert_eq!(Direction::L1.lattice(5), Some(k(3, 4)));
        assert_eq!(Direction::L1.lattice(3), None);
        assert_eq!(Direction::L1.perp(), [-0.8, 0.6]);
    }
}
