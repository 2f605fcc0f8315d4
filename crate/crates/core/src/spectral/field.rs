use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::WaveVector;
use crate::error::{Error, Result};

/// Relative Hermitian-symmetry defect tolerated when reading fields from outside.
pub const HERMITIAN_LOAD_TOL: f64 = 1e-12;

/// Real band-limited scalar field on `T² = [-π, π]²`.
///
/// Stores the Fourier coefficients `f̂(k)` for `|k|∞ <= band` in a dense
/// `(2K+1) × (2K+1)` box, row-major in `k1 = -K..=K` then `k2 = -K..=K`.
/// The field is real: `f̂(-k) = conj f̂(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusField {
    band: usize,
    coeffs: Vec<Complex64>,
}

impl TorusField {
    pub fn zeros(band: usize) -> Self {
        let side = 2 * band + 1;
        TorusField {
            band,
            coeffs: vec![Complex64::new(0.0, 0.0); side * side],
        }
    }

    pub fn constant(value: f64) -> Self {
        let mut f = TorusField::zeros(0);
        f.coeffs[0] = Complex64::new(value, 0.0);
        f
    }

    /// Builds a field from a coefficient box without checking symmetry.
    pub(crate) fn from_raw(band: usize, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), (2 * band + 1) * (2 * band + 1));
        TorusField { band, coeffs }
    }

    /// Builds a field from a coefficient box, verifying length and Hermitian symmetry.
    pub fn from_coeffs(band: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        let side = 2 * band + 1;
        if coeffs.len() != side * side {
            return Err(Error::InvalidArgument(format!(
                "band {band} needs {} coefficients, got {}",
                side * side,
                coeffs.len()
            )));
        }
        let f = TorusField { band, coeffs };
        let defect = f.hermitian_defect();
        if defect > HERMITIAN_LOAD_TOL {
            return Err(Error::InvalidArgument(format!(
                "coefficients are not Hermitian (relative defect {defect:e})"
            )));
        }
        Ok(f)
    }

    /// Builds a real field from its values on the half of the spectrum listed.
    /// Each `(k, c)` contributes `c e^{ik·x} + conj(c) e^{-ik·x}`; a zero wave
    /// vector contributes the real part of `c` once.
    pub fn from_modes(modes: &[(WaveVector, Complex64)]) -> Self {
        let band = modes
            .iter()
            .map(|(k, _)| k.sup_norm() as usize)
            .max()
            .unwrap_or(0);
        let mut f = TorusField::zeros(band);
        for &(k, c) in modes {
            if k.is_zero() {
                let i = f.index_unchecked(k);
                f.coeffs[i] += Complex64::new(c.re, 0.0);
            } else {
                let i = f.index_unchecked(k);
                f.coeffs[i] += c;
                let j = f.index_unchecked(-k);
                f.coeffs[j] += c.conj();
            }
        }
        f
    }

    /// `amplitude · cos(k·x)`.
    pub fn cos_mode(k: WaveVector, amplitude: f64) -> Self {
        if k.is_zero() {
            return TorusField::constant(amplitude);
        }
        TorusField::from_modes(&[(k, Complex64::new(amplitude / 2.0, 0.0))])
    }

    /// `amplitude · sin(k·x)`.
    pub fn sin_mode(k: WaveVector, amplitude: f64) -> Self {
        if k.is_zero() {
            return TorusField::zeros(0);
        }
        TorusField::from_modes(&[(k, Complex64::new(0.0, -amplitude / 2.0))])
    }

    /// Field with `f̂(k) = coeff(k)` for `|k|∞ <= band`; the caller is
    /// responsible for returning Hermitian data.
    pub fn from_fn(band: usize, mut coeff: impl FnMut(WaveVector) -> Complex64) -> Self {
        let b = band as i64;
        let mut coeffs = Vec::with_capacity((2 * band + 1) * (2 * band + 1));
        for k1 in -b..=b {
            for k2 in -b..=b {
                coeffs.push(coeff(WaveVector::new(k1, k2)));
            }
        }
        TorusField { band, coeffs }
    }

    pub fn band(&self) -> usize {
        self.band
    }

    pub fn side(&self) -> usize {
        2 * self.band + 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, k: WaveVector) -> usize {
        let b = self.band as i64;
        ((k.k1 + b) as usize) * self.side() + (k.k2 + b) as usize
    }

    #[inline]
    pub fn index(&self, k: WaveVector) -> Option<usize> {
        if k.sup_norm() as usize > self.band {
            None
        } else {
            Some(self.index_unchecked(k))
        }
    }

    #[inline]
    pub fn wave_at(&self, index: usize) -> WaveVector {
        let side = self.side();
        let b = self.band as i64;
        WaveVector::new((index / side) as i64 - b, (index % side) as i64 - b)
    }

    /// `f̂(k)`, zero outside the band.
    #[inline]
    pub fn coeff(&self, k: WaveVector) -> Complex64 {
        match self.index(k) {
            Some(i) => self.coeffs[i],
            None => Complex64::new(0.0, 0.0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (WaveVector, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.wave_at(i), c))
    }

    /// Coefficients that are not exactly zero.
    pub fn nonzeros(&self) -> Vec<(WaveVector, Complex64)> {
        self.iter()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .collect()
    }

    pub fn count_nonzeros(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| c.re != 0.0 || c.im != 0.0)
            .count()
    }

    /// Spatial mean `f̂(0)`.
    pub fn mean(&self) -> f64 {
        self.coeff(WaveVector::ZERO).re
    }

    pub fn is_mean_zero(&self) -> bool {
        let c = self.coeff(WaveVector::ZERO);
        c.re == 0.0 && c.im == 0.0
    }

    /// `|f̂(0)|` relative to the largest coefficient (0 for the zero field).
    pub fn relative_mean(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 {
            0.0
        } else {
            self.coeff(WaveVector::ZERO).norm() / m
        }
    }

    pub fn without_mean(mut self) -> Self {
        let i = self.index_unchecked(WaveVector::ZERO);
        self.coeffs[i] = Complex64::new(0.0, 0.0);
        self
    }

    /// `max_k |f̂(k) - conj f̂(-k)|` relative to `max |f̂|`.
    pub fn hermitian_defect(&self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 {
            return 0.0;
        }
        let n = self.coeffs.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            // index of -k is the mirror position in the box
            let j = n - 1 - i;
            worst = worst.max((self.coeffs[i] - self.coeffs[j].conj()).norm());
        }
        worst / m
    }

    /// Absolute bound on the imaginary part a synthesis of these coefficients
    /// could carry: `Σ |f̂(k) - conj f̂(-k)| / 2`.
    pub fn imaginary_bound(&self) -> f64 {
        let n = self.coeffs.len();
        (0..n)
            .map(|i| (self.coeffs[i] - self.coeffs[n - 1 - i].conj()).norm())
            .sum::<f64>()
            / 2.0
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Wiener norm `Σ |f̂(k)|`, an upper bound for the sup norm.
    pub fn wiener_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ |f̂(k)|²`, equal to the mean of `f²` over the torus.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Copy padded with zeros or truncated to the box `|k|∞ <= band`.
    pub fn resized(&self, band: usize) -> TorusField {
        if band == self.band {
            return self.clone();
        }
        let mut out = TorusField::zeros(band);
        let b = band.min(self.band) as i64;
        for k1 in -b..=b {
            let src = self.index_unchecked(WaveVector::new(k1, -b));
            let dst = out.index_unchecked(WaveVector::new(k1, -b));
            let len = (2 * b + 1) as usize;
            out.coeffs[dst..dst + len].copy_from_slice(&self.coeffs[src..src + len]);
        }
        out
    }

    /// Smallest box holding every non-zero coefficient.
    pub fn support_band(&self) -> usize {
        self.iter()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, _)| k.sup_norm() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn trimmed(&self) -> TorusField {
        self.resized(self.support_band())
    }

    /// Zeroes every coefficient with `|k| > radius` (Euclidean).
    pub fn truncated_to_radius(&self, radius: f64) -> TorusField {
        let mut out = self.clone();
        let r2 = radius * radius;
        for i in 0..out.coeffs.len() {
            if out.wave_at(i).norm_sq() as f64 > r2 {
                out.coeffs[i] = Complex64::new(0.0, 0.0);
            }
        }
        out
    }

    /// `max |f̂(k)|` over `|k| > radius`.
    pub fn max_outside_radius(&self, radius: f64) -> f64 {
        let r2 = radius * radius;
        self.iter()
            .filter(|(k, _)| k.norm_sq() as f64 > r2)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Point evaluation by direct summation over non-zero coefficients.
    pub fn eval_at(&self, x: [f64; 2]) -> f64 {
        self.iter()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, c)| {
                let (s, co) = k.phase(x).sin_cos();
                c.re * co - c.im * s
            })
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> TorusField {
        TorusField {
            band: self.band,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `self += factor · other`, growing the band if needed.
    pub fn add_scaled(&mut self, other: &TorusField, factor: f64) {
        if other.band > self.band {
            *self = self.resized(other.band);
        }
        let b = other.band as i64;
        let len = other.side();
        for k1 in -b..=b {
            let src = other.index_unchecked(WaveVector::new(k1, -b));
            let dst = self.index_unchecked(WaveVector::new(k1, -b));
            for (d, s) in self.coeffs[dst..dst + len]
                .iter_mut()
                .zip(&other.coeffs[src..src + len])
            {
                *d += s * factor;
            }
        }
    }

    /// `self += other · e^{i w·x} · factor` for a complex `factor`, a frequency
    /// shift of every coefficient by `w`. Callers pair shifts so the total
    /// stays real.
    pub fn add_shifted(&mut self, other: &TorusField, shift: WaveVector, factor: Complex64) {
        let need = other.band + shift.sup_norm() as usize;
        if need > self.band {
            *self = self.resized(need);
        }
        let b = other.band as i64;
        let len = other.side();
        for k1 in -b..=b {
            let src = other.index_unchecked(WaveVector::new(k1, -b));
            let dst = self.index_unchecked(WaveVector::new(k1, -b) + shift);
            for (d, s) in self.coeffs[dst..dst + len]
                .iter_mut()
                .zip(&other.coeffs[src..src + len])
            {
                *d += s * factor;
            }
        }
    }

    /// `self · cos(w·x)`.
    pub fn modulate_cos(&self, w: WaveVector) -> TorusField {
        let mut out = TorusField::zeros(self.band + w.sup_norm() as usize);
        out.add_modulated_cos(self, w, 1.0);
        out
    }

    /// `self · sin(w·x)`.
    pub fn modulate_sin(&self, w: WaveVector) -> TorusField {
        let mut out = TorusField::zeros(self.band + w.sup_norm() as usize);
        out.add_modulated_sin(self, w, 1.0);
        out
    }

    /// `self += factor · other · cos(w·x)`.
    pub fn add_modulated_cos(&mut self, other: &TorusField, w: WaveVector, factor: f64) {
        let half = Complex64::new(factor / 2.0, 0.0);
        self.add_shifted(other, w, half);
        self.add_shifted(other, -w, half);
    }

    /// `self += factor · other · sin(w·x)`.
    pub fn add_modulated_sin(&mut self, other: &TorusField, w: WaveVector, factor: f64) {
        // sin θ = (e^{iθ} - e^{-iθ}) / 2i
        let c = Complex64::new(0.0, -factor / 2.0);
        self.add_shifted(other, w, c);
        self.add_shifted(other, -w, -c);
    }
}

impl Add for &TorusField {
    type Output = TorusField;
    fn add(self, rhs: &TorusField) -> TorusField {
        let mut out = if self.band >= rhs.band {
            self.clone()
        } else {
            self.resized(rhs.band)
        };
        out.add_scaled(rhs, 1.0);
        out
    }
}

impl Sub for &TorusField {
    type Output = TorusField;
    fn sub(self, rhs: &TorusField) -> TorusField {
        let mut out = if self.band >= rhs.band {
            self.clone()
        } else {
            self.resized(rhs.band)
        };
        out.add_scaled(rhs, -1.0);
        out
    }
}

impl Mul<f64> for &TorusField {
    type Output = TorusField;
    fn mul(self, rhs: f64) -> TorusField {
        self.scaled(rhs)
    }
}

impl Neg for &TorusField {
    type Output = TorusField;
    fn neg(self) -> TorusField {
        self.scaled(-1.0)
    }
}

/// Pair of scalar fields sharing a band.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    pub c1: TorusField,
    pub c2: TorusField,
}

impl VectorField {
    pub fn new(c1: TorusField, c2: TorusField) -> Self {
        let band = c1.band().max(c2.band());
        VectorField {
            c1: c1.resized(band),
            c2: c2.resized(band),
        }
    }

    pub fn zeros(band: usize) -> Self {
        VectorField {
            c1: TorusField::zeros(band),
            c2: TorusField::zeros(band),
        }
    }

    pub fn band(&self) -> usize {
        self.c1.band()
    }

    /// `self += factor · scalar · (v1, v2)` for a constant vector.
    pub fn add_along(&mut self, scalar: &TorusField, v: [f64; 2], factor: f64) {
        if v[0] != 0.0 {
            self.c1.add_scaled(scalar, factor * v[0]);
        }
        if v[1] != 0.0 {
            self.c2.add_scaled(scalar, factor * v[1]);
        }
        self.rebalance();
    }

    pub fn add_scaled(&mut self, other: &VectorField, factor: f64) {
        self.c1.add_scaled(&other.c1, factor);
        self.c2.add_scaled(&other.c2, factor);
        self.rebalance();
    }

    pub fn scaled(&self, factor: f64) -> VectorField {
        VectorField {
            c1: self.c1.scaled(factor),
            c2: self.c2.scaled(factor),
        }
    }

    fn rebalance(&mut self) {
        let band = self.c1.band().max(self.c2.band());
        if self.c1.band() != band {
            self.c1 = self.c1.resized(band);
        }
        if self.c2.band() != band {
            self.c2 = self.c2.resized(band);
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c1.max_abs().max(self.c2.max_abs())
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.c1.hermitian_defect().max(self.c2.hermitian_defect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cos_mode_coefficients() {
        let f = TorusField::cos_mode(WaveVector::new(1, 0), 1.0);
        assert_eq!(f.band(), 1);
        assert_eq!(f.coeff(WaveVector::new(1, 0)), Complex64::new(0.5, 0.0));
        assert_eq!(f.coeff(WaveVector::new(-1, 0)), Complex64::new(0.5, 0.0));
        assert_eq!(f.count_nonzeros(), 2);
        assert!(f.is_mean_zero());
        assert_eq!(f.hermitian_defect(), 0.0);
    }

    #[test]
    fn sin_mode_evaluates() {
        let k = WaveVector::new(2, -1);
        let f = TorusField::sin_mode(k, 3.0);
        let x = [0.3, -1.1];
        assert!((f.eval_at(x) - 3.0 * k.phase(x).sin()).abs() < 1e-14);
    }

    #[test]
    fn resize_round_trip() {
        let f = TorusField::from_modes(&[
            (WaveVector::new(2, 1), Complex64::new(0.3, -0.2)),
            (WaveVector::new(0, 1), Complex64::new(1.0, 0.5)),
        ]);
        let g = f.resized(7).resized(2);
        assert_eq!(f, g);
        assert_eq!(f.resized(7).support_band(), 2);
        assert_eq!(
            f.resized(1).coeff(WaveVector::new(2, 1)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn modulation_is_product_with_cosine() {
        let a = TorusField::cos_mode(WaveVector::new(0, 1), 2.0);
        let w = WaveVector::new(5, 0);
        let g = a.modulate_cos(w);
        for x in [[0.1f64, 0.2], [-2.0, 1.5], [3.0, -0.7]] {
            let want = 2.0 * x[1].cos() * (5.0 * x[0]).cos();
            assert!((g.eval_at(x) - want).abs() < 1e-14);
        }
        let h = a.modulate_sin(w);
        let x = [0.4, -0.9];
        assert!((h.eval_at(x) - 2.0 * x[1].cos() * (5.0 * x[0]).sin()).abs() < 1e-14);
        assert_eq!(h.hermitian_defect(), 0.0);
    }

    #[test]
    fn from_coeffs_rejects_non_hermitian() {
        let mut c = vec![Complex64::new(0.0, 0.0); 9];
        c[5] = Complex64::new(1.0, 0.0);
        assert!(TorusField::from_coeffs(1, c).is_err());
    }
}
