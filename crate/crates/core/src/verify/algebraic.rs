//! Exactness of the decomposition `Σ_j (l_j⊥·∇)(l_j·∇) R_j° = Δ`.

use crate::multiplier::{Axis, Direction, MultiplierSymbol, Symbol};
use crate::spectral::WaveVector;

/// `Σ_j (l_j·k)(l_j⊥·k) R̂_j°(k)` for the two fixed directions.
pub fn decomposition_symbol(k: WaveVector) -> f64 {
    [(Direction::L1, Axis::X1), (Direction::L2, Axis::X2)]
        .into_iter()
        .map(|(l, j)| l.dot(k) * l.perp_dot(k) * MultiplierSymbol::RieszOdd(j).eval(k).re)
        .sum()
}

/// Max over `0 < |k|∞ <= kmax` of `|Σ_j (l_j·k)(l_j⊥·k) R̂_j°(k) - |k|²|`.
pub fn check_algebraic(kmax: usize) -> f64 {
    let m = kmax as i64;
    let mut worst = 0.0f64;
    for k1 in -m..=m {
        for k2 in -m..=m {
            if k1 == 0 && k2 == 0 {
                continue;
            }
            let k = WaveVector::new(k1, k2);
            worst = worst.max((decomposition_symbol(k) - k.norm_sq() as f64).abs());
        }
    }
    worst
}
