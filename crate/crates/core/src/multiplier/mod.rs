//! Fourier multipliers and the operators built from them.

pub mod monitors;
mod ops;
pub mod registry;
mod symbol;

pub use ops::{
    apply, apply_checked, directional, divergence, fat_lowpass, grad, highpass, inv_div,
    inv_div_unchecked, lambda_s, laplacian, leibniz_terms, lowpass, partial, perp_grad, riesz,
    riesz_commutator, riesz_odd, rperp_grad_commutator, t_op, LeibnizTerms,
};
pub use symbol::{psi, Axis, Direction, MultiplierSymbol, Parity, Symbol};
