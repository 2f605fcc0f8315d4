//! Empirical constants in the sup-norm bounds for `R_j` and `T^(1)`, `T^(2)`
//! on band-limited inputs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{riesz, t_op, Axis, Direction};
use crate::error::Result;
use crate::norms::{linf, NormGrid, RatioStats};
use crate::spectral::random_field_with;

/// `max_j ‖R_j a‖∞ / (‖a‖∞ log μ)` over random mean-zero `a` of band `μ`.
pub fn riesz_log_ratio(mu: usize, trials: usize, seed: u64, grid: NormGrid) -> RatioStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_mu = (mu as f64).ln();
    let values = (0..trials)
        .map(|_| {
            let a = random_field_with(&mut rng, mu, true);
            let sup = linf(&a, grid);
            Axis::BOTH
                .into_iter()
                .map(|j| linf(&riesz(&a, j), grid) / (sup * log_mu))
                .fold(0.0, f64::max)
        })
        .collect();
    RatioStats::from_samples(values, 0)
}

/// Quotients `‖T^(1)a‖∞ / (λ⁻¹μ²‖a‖∞)` and `‖T^(2)a‖∞ / (λ⁻²μ³‖a‖∞)`, maximised
/// over both directions, for random `a` of band `μ`.
pub fn t_ratios(
    lambda: i64,
    mu: usize,
    trials: usize,
    seed: u64,
    grid: NormGrid,
) -> Result<[RatioStats; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, m) = (lambda as f64, mu as f64);
    let scale = [m * m / l, m.powi(3) / (l * l)];
    let mut values = [Vec::with_capacity(trials), Vec::with_capacity(trials)];
    for _ in 0..trials {
        let a = random_field_with(&mut rng, mu, false);
        let sup = linf(&a, grid);
        for (slot, order) in [1u8, 2].into_iter().enumerate() {
            let mut worst = 0.0f64;
            for dir in [Direction::L1, Direction::L2] {
                let t = t_op(&a, order, lambda, dir)?;
                worst = worst.max(linf(&t, grid) / (scale[slot] * sup));
            }
            values[slot].push(worst);
        }
    }
    let [v1, v2] = values;
    Ok([
        RatioStats::from_samples(v1, 0),
        RatioStats::from_samples(v2, 0),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riesz_ratio_is_order_one() {
        let s = riesz_log_ratio(16, 10, 1, NormGrid::default());
        assert!(s.max > 0.05 && s.max < 2.0, "{s:?}");
        assert_eq!(s.samples, 10);
    }

    #[test]
    fn t_ratios_are_order_one() {
        let [t1, t2] = t_ratios(128, 16, 5, 2, NormGrid::default()).unwrap();
        assert!(t1.max > 1e-3 && t1.max < 2.0, "{t1:?}");
        assert!(t2.max > 1e-4 && t2.max < 2.0, "{t2:?}");
    }

    #[test]
    fn reproducible() {
        let a = riesz_log_ratio(8, 3, 9, NormGrid::default());
        let b = riesz_log_ratio(8, 3, 9, NormGrid::default());
        assert_eq!(a, b);
    }
}
