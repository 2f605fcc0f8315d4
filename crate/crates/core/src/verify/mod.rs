//! Standalone checks of the identities and estimates the construction relies on.

mod algebraic;
pub mod checks;
mod commutator;
mod feasibility;
mod weak;

pub use algebraic::{check_algebraic, decomposition_symbol};
pub use checks::{lookup, suite, Check, CheckReport, SuiteConfig, CHECK_NAMES};
pub use commutator::{commutator_quotient, commutator_ratio, flux_identity_defect};
pub use feasibility::{feasibility, Constraints, Exponents, FeasibilityReport, Verdicts};
pub use weak::{
    half_plane_modes, inner, relative_total, weak_residual, weak_residual_literal, ResidualReport,
    TestKind,
};

use crate::spectral::TorusField;

/// Largest `|f̂(k)|` with `|k| > radius`.
pub fn check_support(f: &TorusField, radius: f64) -> f64 {
    f.max_outside_radius(radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::WaveVector;

    #[test]
    fn support_examples() {
        assert_eq!(
            check_support(&TorusField::cos_mode(WaveVector::new(1, 0), 1.0), 2.0),
            0.0
        );
        assert_eq!(
            check_support(&TorusField::cos_mode(WaveVector::new(3, 0), 1.0), 2.0),
            0.5
        );
    }
}
