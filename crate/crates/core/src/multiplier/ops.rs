use num_complex::Complex64;
use rayon::prelude::*;

use super::symbol::{Axis, Direction, MultiplierSymbol, Symbol};
use crate::error::{Error, Result};
use crate::spectral::{multiply, TorusField, VectorField, WaveVector};

/// `m(D) f`, coefficient by coefficient.
pub fn apply(symbol: &dyn Symbol, f: &TorusField) -> TorusField {
    let band = f.band();
    let side = f.side() as i64;
    let b = band as i64;
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            if c.re == 0.0 && c.im == 0.0 {
                return c;
            }
            let i = i as i64;
            let k = WaveVector::new(i / side - b, i % side - b);
            c * symbol.eval(k)
        })
        .collect();
    TorusField::from_raw(band, coeffs)
}

/// `m(D) f` for a symbol only defined on a ball, rejecting wider inputs.
pub fn apply_checked(symbol: &dyn Symbol, f: &TorusField) -> Result<TorusField> {
    if let Some(limit) = symbol.band_limit() {
        let band = f.support_band();
        if band > limit {
            return Err(Error::BandExceedsLambda {
                band,
                lambda: limit as i64 + 1,
            });
        }
    }
    Ok(apply(symbol, f))
}

/// `Λ^s f` with `Λ = (-Δ)^{1/2}`.
pub fn lambda_s(f: &TorusField, s: f64) -> Result<TorusField> {
    if s < 0.0 && !f.is_mean_zero() {
        return Err(Error::NegativePowerOnMean { s, mean: f.mean() });
    }
    Ok(apply(&MultiplierSymbol::LambdaS(s), f))
}

/// `R_j f`, symbol `i k_j / |k|`.
pub fn riesz(f: &TorusField, j: Axis) -> TorusField {
    apply(&MultiplierSymbol::Riesz(j), f)
}

/// `R_j° f`.
pub fn riesz_odd(f: &TorusField, j: Axis) -> TorusField {
    apply(&MultiplierSymbol::RieszOdd(j), f)
}

/// `T^(1)_{λl} f` (`order = 1`) or `T^(2)_{λl} f` (`order = 2`).
pub fn t_op(f: &TorusField, order: u8, lambda: i64, dir: Direction) -> Result<TorusField> {
    let symbol = match order {
        1 => MultiplierSymbol::T1 { lambda, dir },
        2 => MultiplierSymbol::T2 { lambda, dir },
        _ => {
            return Err(Error::InvalidArgument(format!(
                "T operator order must be 1 or 2, got {order}"
            )))
        }
    };
    if lambda < 1 {
        return Err(Error::InvalidArgument(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    apply_checked(&symbol, f)
}

pub fn lowpass(f: &TorusField, mu: f64) -> TorusField {
    let out = apply(&MultiplierSymbol::LowPass(mu), f);
    // ψ(|k|/μ) vanishes for |k| >= μ
    out.resized(out.band().min(mu.ceil() as usize))
}

pub fn fat_lowpass(f: &TorusField, mu: f64) -> TorusField {
    let out = apply(&MultiplierSymbol::FatLowPass(mu), f);
    out.resized(out.band().min((4.0 * mu).ceil() as usize))
}

/// `(I - P≤μ) f`.
pub fn highpass(f: &TorusField, mu: f64) -> TorusField {
    f - &lowpass(f, mu)
}

/// `∂_j f`.
pub fn partial(f: &TorusField, j: Axis) -> TorusField {
    apply(&MultiplierSymbol::Partial(j), f)
}

/// `(v·∇) f` for a constant vector `v`.
pub fn directional(f: &TorusField, v: [f64; 2]) -> TorusField {
    let band = f.band();
    let side = f.side() as i64;
    let b = band as i64;
    let coeffs = f
        .coeffs()
        .par_iter()
        .enumerate()
        .map(|(i, &c)| {
            let i = i as i64;
            let (k1, k2) = ((i / side - b) as f64, (i % side - b) as f64);
            c * Complex64::new(0.0, v[0] * k1 + v[1] * k2)
        })
        .collect();
    TorusField::from_raw(band, coeffs)
}

pub fn grad(f: &TorusField) -> VectorField {
    VectorField::new(partial(f, Axis::X1), partial(f, Axis::X2))
}

/// `∇⊥f = (-∂2 f, ∂1 f)`.
pub fn perp_grad(f: &TorusField) -> VectorField {
    VectorField::new(-&partial(f, Axis::X2), partial(f, Axis::X1))
}

/// `∇·v`.
pub fn divergence(v: &VectorField) -> TorusField {
    &partial(&v.c1, Axis::X1) + &partial(&v.c2, Axis::X2)
}

/// `Δ f`.
pub fn laplacian(f: &TorusField) -> TorusField {
    apply(&MultiplierSymbol::LambdaS(2.0), f).scaled(-1.0)
}

/// `Δ⁻¹∇·v`, the scalar `p` with `Δp = ∇·v` and zero mean.
pub fn inv_div(v: &VectorField) -> Result<TorusField> {
    for c in [&v.c1, &v.c2] {
        if !c.is_mean_zero() {
            return Err(Error::NonZeroMean { mean: c.mean() });
        }
    }
    Ok(inv_div_unchecked(v))
}

/// `Δ⁻¹∇·v` ignoring the mean of `v`, which the operator annihilates anyway.
pub fn inv_div_unchecked(v: &VectorField) -> TorusField {
    let band = v.band();
    let side = (2 * band + 1) as i64;
    let b = band as i64;
    let (c1, c2) = (v.c1.coeffs(), v.c2.coeffs());
    let coeffs = (0..c1.len())
        .into_par_iter()
        .map(|i| {
            let ii = i as i64;
            let (k1, k2) = (ii / side - b, ii % side - b);
            let kk = k1 * k1 + k2 * k2;
            if kk == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let dot = c1[i] * k1 as f64 + c2[i] * k2 as f64;
            dot * Complex64::new(0.0, -1.0 / kk as f64)
        })
        .collect();
    TorusField::from_raw(band, coeffs)
}

/// `[R_j, φ]θ = R_j(φθ) - φ R_jθ`.
pub fn riesz_commutator(phi: &TorusField, theta: &TorusField, j: Axis) -> TorusField {
    let a = riesz(&multiply(phi, theta), j);
    let b = multiply(phi, &riesz(theta, j));
    &a - &b
}

/// `[R⊥, ∇ψ]θ = -[R_2, ∂1ψ]θ + [R_1, ∂2ψ]θ`.
pub fn rperp_grad_commutator(psi: &TorusField, theta: &TorusField) -> TorusField {
    let a = riesz_commutator(&partial(psi, Axis::X1), theta, Axis::X2);
    let b = riesz_commutator(&partial(psi, Axis::X2), theta, Axis::X1);
    &b - &a
}

/// The three pieces of `Λ(a cos(λl·x)) = λ a cos + (l·∇a) sin + (T^(1)a) cos + (T^(2)a) sin`.
#[derive(Clone, Debug)]
pub struct LeibnizTerms {
    pub dl: TorusField,
    pub t1a: TorusField,
    pub t2a: TorusField,
}

impl LeibnizTerms {
    /// `Λ(a cos(λl·x))` reassembled from the pieces.
    pub fn reassemble(&self, a: &TorusField, lambda: i64, dir: Direction) -> TorusField {
        let w = dir.lattice(lambda).expect("lambda l on the lattice");
        let mut out = TorusField::zeros(a.band() + w.sup_norm() as usize);
        out.add_modulated_cos(a, w, lambda as f64);
        out.add_modulated_cos(&self.t1a, w, 1.0);
        out.add_modulated_sin(&self.dl, w, 1.0);
        out.add_modulated_sin(&self.t2a, w, 1.0);
        out
    }
}

/// Splits `Λ(a cos(λl·x))` into its Leibniz pieces.
pub fn leibniz_terms(a: &TorusField, lambda: i64, dir: Direction) -> Result<LeibnizTerms> {
    if dir.lattice(lambda).is_none() {
        return Err(Error::InvalidArgument(format!(
            "{lambda}·{} is not a lattice vector",
            dir.name()
        )));
    }
    Ok(LeibnizTerms {
        dl: directional(a, dir.vec()),
        t1a: t_op(a, 1, lambda, dir)?,
        t2a: t_op(a, 2, lambda, dir)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_field;

    fn cos(k1: i64, k2: i64, a: f64) -> TorusField {
        TorusField::cos_mode(WaveVector::new(k1, k2), a)
    }

    fn rel(a: &TorusField, b: &TorusField) -> f64 {
        (a - b).max_abs() / b.max_abs().max(a.max_abs())
    }

    #[test]
    fn lambda_powers() {
        let f = cos(1, 0, 1.0);
        assert!((&lambda_s(&f, 1.0).unwrap() - &f).max_abs() < 1e-16);
        let g = cos(3, 4, 1.0);
        let h = lambda_s(&g, -1.0).unwrap();
        assert!((&h - &cos(3, 4, 0.2)).max_abs() < 1e-16);
        let r = random_field(3, 8, true);
        let twice = lambda_s(&lambda_s(&r, 0.5).unwrap(), 0.5).unwrap();
        assert!(rel(&twice, &lambda_s(&r, 1.0).unwrap()) < 1e-13);
        assert!(matches!(
            lambda_s(&TorusField::constant(1.0), -0.5),
            Err(Error::NegativePowerOnMean { .. })
        ));
    }

    #[test]
    fn riesz_of_cosine() {
        // oracle: R1 e^{±ix1} = ±i e^{±ix1}, so R1 cos x1 = -sin x1
        let f = cos(1, 0, 1.0);
        let r = riesz(&f, Axis::X1);
        let want = TorusField::sin_mode(WaveVector::new(1, 0), -1.0);
        assert!((&r - &want).max_abs() < 1e-16);
        assert_eq!(riesz(&f, Axis::X2).max_abs(), 0.0);
    }

    #[test]
    fn t_op_guard() {
        let a = cos(3, 0, 1.0);
        assert!(t_op(&a, 1, 4, Direction::L2).is_ok());
        assert!(matches!(
            t_op(&a, 1, 3, Direction::L2),
            Err(Error::BandExceedsLambda { band: 3, lambda: 3 })
        ));
    }

    #[test]
    fn lowpass_edges() {
        let f = random_field(1, 4, true);
        assert_eq!(lowpass(&f, 8.0), f);
        let g = cos(10, 0, 1.0);
        assert_eq!(lowpass(&g, 5.0).max_abs(), 0.0);
        let a = lowpass(&random_field(2, 12, true), 6.0);
        let sq = multiply(&a, &a);
        assert!((&fat_lowpass(&sq, 6.0) - &sq).max_abs() < 1e-13 * sq.max_abs());
    }

    #[test]
    fn inv_div_cases() {
        let f = cos(1, 0, 1.0);
        let p = inv_div(&grad(&f)).unwrap();
        assert!((&p - &f).max_abs() < 1e-16);
        let g = random_field(5, 5, true);
        assert!(inv_div(&perp_grad(&g)).unwrap().max_abs() < 1e-15);
        let v = VectorField::new(random_field(6, 6, true), random_field(7, 6, true));
        let p = inv_div(&v).unwrap();
        let lhs = laplacian(&p);
        let rhs = divergence(&v);
        assert!(rel(&lhs, &rhs) < 1e-12);
        let bad = VectorField::new(TorusField::constant(1.0), TorusField::zeros(0));
        assert!(matches!(inv_div(&bad), Err(Error::NonZeroMean { .. })));
    }

    #[test]
    fn commutator_of_constant_vanishes() {
        let th = random_field(9, 6, true);
        let c = riesz_commutator(&TorusField::constant(2.5), &th, Axis::X1);
        assert!(c.max_abs() < 1e-15);
    }

    #[test]
    fn leibniz_on_constant_amplitude() {
        let t = leibniz_terms(&TorusField::constant(1.3), 640, Direction::L1).unwrap();
        assert_eq!(t.dl.max_abs(), 0.0);
        assert_eq!(t.t1a.max_abs(), 0.0);
        assert_eq!(t.t2a.max_abs(), 0.0);
        let t = leibniz_terms(&cos(0, 1, 1.0), 10, Direction::L2).unwrap();
        assert_eq!(t.dl.max_abs(), 0.0);
    }

    #[test]
    fn leibniz_reconstruction() {
        let a = random_field(11, 16, false);
        for dir in Direction::BOTH {
            let t = leibniz_terms(&a, 640, dir).unwrap();
            let direct = lambda_s(&a.modulate_cos(dir.lattice(640).unwrap()), 1.0).unwrap();
            let got = t.reassemble(&a, 640, dir);
            assert!(rel(&got, &direct) < 1e-11);
        }
    }
}
