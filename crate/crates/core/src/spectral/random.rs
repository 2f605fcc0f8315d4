use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{TorusField, WaveVector};

/// Seeded random real field with independent complex Gaussian coefficients
/// (unit variance) over the Euclidean disk `|k| <= radius`, Hermitian by
/// construction.
pub fn random_field(seed: u64, radius: usize, mean_zero: bool) -> TorusField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_field_with(&mut rng, radius, mean_zero)
}

/// Same as [`random_field`], drawing from a caller-owned generator.
pub fn random_field_with(rng: &mut ChaCha8Rng, radius: usize, mean_zero: bool) -> TorusField {
    let b = radius as i64;
    let r2 = b * b;
    let mut f = TorusField::zeros(radius);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for k1 in 0..=b {
        for k2 in -b..=b {
            let k = WaveVector::new(k1, k2);
            // half plane: k1 > 0, or k1 = 0 and k2 >= 0
            if k.norm_sq() > r2 || (k1 == 0 && k2 < 0) {
                continue;
            }
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            if k.is_zero() {
                if !mean_zero {
                    let i = f.index_unchecked(k);
                    f.coeffs_mut()[i] = Complex64::new(re, 0.0);
                }
                continue;
            }
            let c = Complex64::new(re * s, im * s);
            let i = f.index_unchecked(k);
            f.coeffs_mut()[i] = c;
            let j = f.index_unchecked(-k);
            f.coeffs_mut()[j] = c.conj();
        }
    }
    f
}
