//! Smoothing of the Riesz commutator `[R_j, φ]θ` and the flux identity behind
//! the weak formulation.

use super::weak::inner;
use crate::multiplier::{riesz, riesz_commutator, Axis};
use crate::norms::{sobolev, RatioStats};
use crate::spectral::{multiply, random_field_with, TorusField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `‖[R_j,φ]θ‖_{Ḣ^{1/2}} / (‖φ‖_{Ḣ³} ‖θ‖_{Ḣ^{-1/2}})`, or `None` when the
/// numerator vanishes.
pub fn commutator_quotient(phi: &TorusField, theta: &TorusField, j: Axis) -> Option<f64> {
    let num = sobolev(&riesz_commutator(phi, theta, j), 0.5);
    if num == 0.0 {
        return None;
    }
    Some(num / (sobolev(phi, 3.0) * sobolev(theta, -0.5)))
}

/// Commutator quotient over random mean-zero pairs, both Riesz components.
pub fn commutator_ratio(
    trials: usize,
    band_phi: usize,
    band_theta: usize,
    seed: u64,
) -> RatioStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(2 * trials);
    let mut excluded = 0;
    for _ in 0..trials {
        let phi = random_field_with(&mut rng, band_phi, true);
        let theta = random_field_with(&mut rng, band_theta, true);
        for j in Axis::BOTH {
            match commutator_quotient(&phi, &theta, j) {
                Some(r) => values.push(r),
                None => excluded += 1,
            }
        }
    }
    RatioStats::from_samples(values, excluded)
}

/// `max_j |⟨θ R_jθ, φ⟩ + (1/2)⟨θ, [R_j, φ]θ⟩|`, relative to the size of the
/// first pairing.
pub fn flux_identity_defect(theta: &TorusField, phi: &TorusField) -> f64 {
    Axis::BOTH
        .into_iter()
        .map(|j| {
            let a = inner(&multiply(theta, &riesz(theta, j)), phi);
            let b = 0.5 * inner(theta, &riesz_commutator(phi, theta, j));
            (a + b).abs() / a.abs().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{convolve_direct, random_field, WaveVector};
    use num_complex::Complex64;

    fn riesz_by_hand(f: &TorusField, j: Axis) -> TorusField {
        TorusField::from_fn(f.band(), |k| {
            if k.norm_sq() == 0 {
                return Complex64::new(0.0, 0.0);
            }
            let kj = Axis::of(k, j) as f64;
            f.coeff(k) * Complex64::new(0.0, kj / (k.norm_sq() as f64).sqrt())
        })
    }

    fn sobolev_by_hand(f: &TorusField, s: f64) -> f64 {
        let sum: f64 = f
            .iter()
            .filter(|(k, _)| k.norm_sq() > 0)
            .map(|(k, c)| (k.norm_sq() as f64).powf(s) * c.norm_sqr())
            .sum();
        sum.sqrt()
    }

    fn quotient_oracle(phi: &TorusField, theta: &TorusField, j: Axis) -> f64 {
        let mut comm = riesz_by_hand(&convolve_direct(phi, theta), j);
        comm.add_scaled(&convolve_direct(phi, &riesz_by_hand(theta, j)), -1.0);
        sobolev_by_hand(&comm, 0.5) / (sobolev_by_hand(phi, 3.0) * sobolev_by_hand(theta, -0.5))
    }

    #[test]
    fn constant_symbol_is_excluded() {
        let theta = random_field(1, 6, true);
        assert_eq!(
            commutator_quotient(&TorusField::constant(2.0), &theta, Axis::X1),
            None
        );
    }

    #[test]
    fn collinear_single_modes_commute() {
        let phi = TorusField::cos_mode(WaveVector::new(1, 0), 1.0);
        let theta = TorusField::cos_mode(WaveVector::new(2, 0), 1.0);
        for j in Axis::BOTH {
            assert!(quotient_oracle(&phi, &theta, j) < 1e-15);
            assert!(commutator_quotient(&phi, &theta, j).unwrap_or(0.0) < 1e-15);
        }
    }

    #[test]
    fn single_modes_match_oracle() {
        let phi = TorusField::cos_mode(WaveVector::new(1, 0), 1.0);
        let theta = TorusField::cos_mode(WaveVector::new(0, 2), 1.0);
        for j in Axis::BOTH {
            let got = commutator_quotient(&phi, &theta, j).unwrap();
            let want = quotient_oracle(&phi, &theta, j);
            assert!((got - want).abs() < 1e-10 * want, "{got} {want}");
        }
    }

    #[test]
    fn random_pair_matches_oracle() {
        let phi = random_field(5, 4, true);
        let theta = random_field(6, 9, true);
        let got = commutator_quotient(&phi, &theta, Axis::X2).unwrap();
        let want = quotient_oracle(&phi, &theta, Axis::X2);
        assert!((got - want).abs() < 1e-10 * want);
    }

    #[test]
    fn flux_identity() {
        let theta = random_field(8, 12, true);
        let phi = random_field(9, 5, false);
        assert!(flux_identity_defect(&theta, &phi) < 1e-11);
    }
}
