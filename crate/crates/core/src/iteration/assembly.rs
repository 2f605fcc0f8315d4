//! The three parts of `Λf∇⊥f` for `f = Σ_l a_l cos(λl·x)`, up to the
//! divergence-free term `λ f ∇⊥f`.

use crate::error::Result;
use crate::multiplier::{directional, lambda_s, leibniz_terms, partial, Axis, Direction};
use crate::spectral::{multiply, multiply_sum, TorusField, VectorField, WaveVector};

/// `Λf ∇⊥f = (-Λf ∂2 f, Λf ∂1 f)`.
pub fn flux(f: &TorusField) -> Result<VectorField> {
    let lf = lambda_s(f, 1.0)?;
    let d1 = partial(f, Axis::X1);
    let d2 = partial(f, Axis::X2);
    Ok(VectorField::new(
        multiply_sum(&[(&lf, &d2, -1.0)]),
        multiply_sum(&[(&lf, &d1, 1.0)]),
    ))
}

/// `Λf ∇⊥g + Λg ∇⊥f`.
pub fn cross_flux(f: &TorusField, g: &TorusField) -> Result<VectorField> {
    let lf = lambda_s(f, 1.0)?;
    let lg = lambda_s(g, 1.0)?;
    let (f1, f2) = (partial(f, Axis::X1), partial(f, Axis::X2));
    let (g1, g2) = (partial(g, Axis::X1), partial(g, Axis::X2));
    Ok(VectorField::new(
        multiply_sum(&[(&lf, &g2, -1.0), (&lg, &f2, -1.0)]),
        multiply_sum(&[(&lf, &g1, 1.0), (&lg, &f1, 1.0)]),
    ))
}

/// `-(λ/4) Σ_l (l·∇)(a_l²) l⊥`.
pub fn assemble_main(amps: &[TorusField; 2], lambda: i64) -> VectorField {
    let mut out = VectorField::zeros(0);
    for (a, dir) in amps.iter().zip(Direction::BOTH) {
        let sq = multiply(a, a);
        out.add_along(
            &directional(&sq, dir.vec()),
            dir.perp(),
            -(lambda as f64) / 4.0,
        );
    }
    out
}

/// Per-direction pieces `B_l = l·∇a_l + T^(2)a_l` and `D_l = T^(1)a_l`.
struct Pieces {
    a: TorusField,
    b: TorusField,
    d: TorusField,
    dir: Direction,
    w: WaveVector,
}

fn pieces(amps: &[TorusField; 2], lambda: i64) -> Result<Vec<Pieces>> {
    amps.iter()
        .zip(Direction::BOTH)
        .map(|(a, dir)| {
            let t = leibniz_terms(a, lambda, dir)?;
            Ok(Pieces {
                a: a.clone(),
                b: &t.dl + &t.t2a,
                d: t.t1a,
                dir,
                w: dir.lattice(lambda).expect("checked by leibniz_terms"),
            })
        })
        .collect()
}

/// `-(λ/2) Σ_l (T^(2)a_l) a_l l⊥ + (1/2) Σ_l (T^(1)a_l) ∇⊥a_l`.
pub fn assemble_nonosc(amps: &[TorusField; 2], lambda: i64) -> Result<VectorField> {
    let mut out = VectorField::zeros(0);
    for (a, dir) in amps.iter().zip(Direction::BOTH) {
        let t = leibniz_terms(a, lambda, dir)?;
        out.add_along(&multiply(&t.t2a, a), dir.perp(), -(lambda as f64) / 2.0);
        out.add_scaled(&times_perp_grad(&t.t1a, a), 0.5);
    }
    Ok(out)
}

/// `x ∇⊥a`.
fn times_perp_grad(x: &TorusField, a: &TorusField) -> VectorField {
    VectorField::new(
        multiply(x, &partial(a, Axis::X2)).scaled(-1.0),
        multiply(x, &partial(a, Axis::X1)),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trig {
    Cos,
    Sin,
}

/// `out += factor · x · trig(w·x)`.
fn add_wave(out: &mut TorusField, x: &TorusField, trig: Trig, w: WaveVector, factor: f64) {
    match trig {
        Trig::Cos => out.add_modulated_cos(x, w, factor),
        Trig::Sin => out.add_modulated_sin(x, w, factor),
    }
}

/// `out += factor · x · s(u·x) t(v·x)` through product-to-sum.
fn add_wave_pair(
    out: &mut TorusField,
    x: &TorusField,
    (s, u): (Trig, WaveVector),
    (t, v): (Trig, WaveVector),
    factor: f64,
) {
    let h = factor / 2.0;
    match (s, t) {
        (Trig::Cos, Trig::Cos) => {
            add_wave(out, x, Trig::Cos, u - v, h);
            add_wave(out, x, Trig::Cos, u + v, h);
        }
        (Trig::Sin, Trig::Sin) => {
            add_wave(out, x, Trig::Cos, u - v, h);
            add_wave(out, x, Trig::Cos, u + v, -h);
        }
        (Trig::Sin, Trig::Cos) => {
            add_wave(out, x, Trig::Sin, u + v, h);
            add_wave(out, x, Trig::Sin, u - v, h);
        }
        (Trig::Cos, Trig::Sin) => {
            add_wave(out, x, Trig::Sin, u + v, h);
            add_wave(out, x, Trig::Sin, u - v, -h);
        }
    }
}

/// A vector field assembled in place at a fixed band.
struct Accumulator {
    c1: TorusField,
    c2: TorusField,
}

impl Accumulator {
    fn new(band: usize) -> Self {
        Accumulator {
            c1: TorusField::zeros(band),
            c2: TorusField::zeros(band),
        }
    }

    /// `+= factor · x · v · trig`.
    fn along(&mut self, x: &TorusField, v: [f64; 2], waves: &[(Trig, WaveVector)], factor: f64) {
        for (c, vi) in [(&mut self.c1, v[0]), (&mut self.c2, v[1])] {
            if vi != 0.0 {
                add_waves(c, x, waves, factor * vi);
            }
        }
    }

    /// `+= factor · (x1, x2) · trig`.
    fn vector(&mut self, x: &VectorField, waves: &[(Trig, WaveVector)], factor: f64) {
        add_waves(&mut self.c1, &x.c1, waves, factor);
        add_waves(&mut self.c2, &x.c2, waves, factor);
    }

    fn finish(self) -> VectorField {
        VectorField::new(self.c1, self.c2)
    }
}

fn add_waves(out: &mut TorusField, x: &TorusField, waves: &[(Trig, WaveVector)], factor: f64) {
    match waves {
        [(t, w)] => add_wave(out, x, *t, *w, factor),
        [a, b] => add_wave_pair(out, x, *a, *b, factor),
        _ => unreachable!("one or two waves"),
    }
}

fn osc_band(p: &[Pieces]) -> usize {
    let wmax = p.iter().map(|q| q.w.sup_norm()).max().unwrap_or(0) as usize;
    let amax = p
        .iter()
        .map(|q| q.a.band().max(q.b.band()).max(q.d.band()))
        .max()
        .unwrap_or(0);
    2 * wmax + 2 * amax
}

/// One family `osc1`…`osc6` of the oscillatory error:
///
/// 1. `(1/2) Σ_l B_l (λ a_l l⊥ cos(2λl·x) + ∇⊥a_l sin(2λl·x))`
/// 2. `-(1/2) Σ_l D_l (λ a_l l⊥ sin(2λl·x) - ∇⊥a_l cos(2λl·x))`
/// 3. `-λ Σ_{l≠l'} B_l a_{l'} l'⊥ sin(λl·x) sin(λl'·x)`
/// 4. `Σ_{l≠l'} B_l ∇⊥a_{l'} sin(λl·x) cos(λl'·x)`
/// 5. `-λ Σ_{l≠l'} D_l a_{l'} l'⊥ cos(λl·x) sin(λl'·x)`
/// 6. `Σ_{l≠l'} D_l ∇⊥a_{l'} cos(λl·x) cos(λl'·x)`
///
/// with `B_l = l·∇a_l + T^(2)a_l` and `D_l = T^(1)a_l`.
pub fn assemble_osc_family(amps: &[TorusField; 2], lambda: i64, family: u8) -> Result<VectorField> {
    let p = pieces(amps, lambda)?;
    let mut acc = Accumulator::new(osc_band(&p));
    add_family(&mut acc, &p, lambda as f64, family);
    Ok(acc.finish())
}

/// The whole oscillatory error.
pub fn assemble_osc(amps: &[TorusField; 2], lambda: i64) -> Result<VectorField> {
    let p = pieces(amps, lambda)?;
    let mut acc = Accumulator::new(osc_band(&p));
    for family in 1..=6 {
        add_family(&mut acc, &p, lambda as f64, family);
    }
    Ok(acc.finish())
}

fn add_family(acc: &mut Accumulator, p: &[Pieces], lam: f64, family: u8) {
    use Trig::{Cos, Sin};
    match family {
        1 | 2 => {
            for q in p {
                let w2 = q.w + q.w;
                let (x, s) = if family == 1 {
                    (&q.b, 0.5)
                } else {
                    (&q.d, -0.5)
                };
                let (t_along, t_grad, grad_sign) = if family == 1 {
                    (Cos, Sin, 1.0)
                } else {
                    (Sin, Cos, -1.0)
                };
                acc.along(&multiply(x, &q.a), q.dir.perp(), &[(t_along, w2)], s * lam);
                acc.vector(&times_perp_grad(x, &q.a), &[(t_grad, w2)], s * grad_sign);
            }
        }
        3..=6 => {
            for (i, q) in p.iter().enumerate() {
                for (j, r) in p.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let x = if family == 3 || family == 4 {
                        &q.b
                    } else {
                        &q.d
                    };
                    let first = if family == 3 || family == 4 { Sin } else { Cos };
                    match family {
                        3 | 5 => acc.along(
                            &multiply(x, &r.a),
                            r.dir.perp(),
                            &[(first, q.w), (Sin, r.w)],
                            -lam,
                        ),
                        _ => {
                            acc.vector(&times_perp_grad(x, &r.a), &[(first, q.w), (Cos, r.w)], 1.0)
                        }
                    }
                }
            }
        }
        _ => panic!("oscillatory families are numbered 1 to 6, got {family}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier::inv_div_unchecked;
    use crate::spectral::random_field;

    #[test]
    fn constant_amplitudes_cancel() {
        let amps = [TorusField::constant(0.3), TorusField::constant(0.2)];
        assert_eq!(assemble_main(&amps, 50).max_abs(), 0.0);
        assert_eq!(assemble_nonosc(&amps, 50).unwrap().max_abs(), 0.0);
        assert_eq!(assemble_osc(&amps, 50).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn single_direction() {
        let a = crate::multiplier::lowpass(&random_field(1, 6, false), 6.0);
        let amps = [a, TorusField::zeros(0)];
        let m = assemble_main(&amps, 100);
        // parallel to l1⊥ = (-4/5, 3/5)
        assert!((&m.c1.scaled(3.0) + &m.c2.scaled(4.0)).max_abs() < 1e-14 * m.max_abs());
        for family in 3..=6 {
            assert_eq!(
                assemble_osc_family(&amps, 100, family).unwrap().max_abs(),
                0.0
            );
        }
    }

    #[test]
    fn families_sum_to_total() {
        let amps = [
            crate::multiplier::lowpass(&random_field(2, 5, false), 5.0),
            crate::multiplier::lowpass(&random_field(3, 5, false), 5.0),
        ];
        let total = assemble_osc(&amps, 60).unwrap();
        let mut sum = VectorField::zeros(0);
        for family in 1..=6 {
            sum.add_scaled(&assemble_osc_family(&amps, 60, family).unwrap(), 1.0);
        }
        let scale = total.max_abs();
        assert!((&sum.c1 - &total.c1).max_abs() < 1e-14 * scale);
        assert!((&sum.c2 - &total.c2).max_abs() < 1e-14 * scale);
    }

    #[test]
    fn decomposition_closes() {
        // oracle: Λf∇⊥f from direct products, against the assembled pieces
        let amps = [
            crate::multiplier::lowpass(&random_field(4, 8, false), 8.0).scaled(0.1),
            crate::multiplier::lowpass(&random_field(5, 8, false), 8.0).scaled(0.1),
        ];
        let lambda = 100;
        let mut f = TorusField::zeros(0);
        for (a, dir) in amps.iter().zip(Direction::BOTH) {
            f.add_modulated_cos(a, dir.lattice(lambda).unwrap(), 1.0);
        }
        let direct = inv_div_unchecked(&flux(&f).unwrap());
        let mut parts = assemble_main(&amps, lambda);
        parts.add_scaled(&assemble_nonosc(&amps, lambda).unwrap(), 1.0);
        parts.add_scaled(&assemble_osc(&amps, lambda).unwrap(), 1.0);
        let assembled = inv_div_unchecked(&parts);
        let rel = (&direct - &assembled).wiener_norm() / direct.wiener_norm();
        assert!(rel < 1e-10, "decomposition residual {rel:e}");
    }
}
