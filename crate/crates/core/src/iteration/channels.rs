//! The five parts of the new stress `q_{n+1}`.

use crate::error::Result;
use crate::multiplier::{
    directional, fat_lowpass, highpass, inv_div_unchecked, lambda_s, Direction,
};
use crate::spectral::{multiply, TorusField, VectorField};

use super::assembly::{assemble_nonosc, assemble_osc, cross_flux};

/// `q_M1 = -(5/4) λ_{n+1} Σ_j Δ⁻¹∇·( l_j⊥ (l_j·∇) P̃≤μ( -2 a_j^p P>μ a_j^p + (P>μ a_j^p)² ) )`.
pub fn q_m1(perfect: &[TorusField; 2], mu: f64, lambda_next: u64) -> TorusField {
    let mut v = VectorField::zeros(0);
    for (ap, dir) in perfect.iter().zip(Direction::BOTH) {
        let high = highpass(ap, mu);
        if high.max_abs() == 0.0 {
            continue;
        }
        let mut inner = high.clone();
        inner.add_scaled(ap, -2.0);
        let g = fat_lowpass(&multiply(&high, &inner), mu);
        v.add_along(&directional(&g, dir.vec()), dir.perp(), 1.0);
    }
    inv_div_unchecked(&v).scaled(-1.25 * lambda_next as f64)
}

/// `Δ⁻¹∇·(non-oscillatory error)`.
pub fn q_m2(amps: &[TorusField; 2], lambda5: i64) -> Result<TorusField> {
    Ok(inv_div_unchecked(&assemble_nonosc(amps, lambda5)?))
}

/// `Δ⁻¹∇·(oscillatory error)`.
pub fn q_m3(amps: &[TorusField; 2], lambda5: i64) -> Result<TorusField> {
    Ok(inv_div_unchecked(&assemble_osc(amps, lambda5)?))
}

/// `Δ⁻¹∇·(Λf_{n+1} ∇⊥f_{≤n} + Λf_{≤n} ∇⊥f_{n+1})`.
pub fn q_t(f_next: &TorusField, f_leq: &TorusField) -> Result<TorusField> {
    if f_leq.max_abs() == 0.0 {
        return Ok(TorusField::zeros(f_next.band()));
    }
    Ok(inv_div_unchecked(&cross_flux(f_next, f_leq)?))
}

/// `-ν Λ^{γ-1} f_{n+1}`.
pub fn q_d(f_next: &TorusField, nu: f64, gamma: f64) -> Result<TorusField> {
    if nu == 0.0 {
        return Ok(TorusField::zeros(f_next.band()));
    }
    Ok(lambda_s(f_next, gamma - 1.0)?.scaled(-nu))
}
