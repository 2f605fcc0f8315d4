//! The construction: perfect amplitudes, the perturbation `f_{n+1}`, the
//! stress channels and the induction driver.

pub mod amplitude;
pub mod assembly;
pub mod channels;
mod driver;
mod params;
mod scales;
mod step;

pub use amplitude::{build_f_next, perfect_amplitude, perfect_amplitude_resolved, Perturbation};
pub use assembly::{
    assemble_main, assemble_nonosc, assemble_osc, assemble_osc_family, cross_flux, flux,
};
pub use channels::{q_d, q_m1, q_m2, q_m3, q_t};
pub use driver::{base_state, run, run_from, RunOutput};
pub use params::{BaseKind, IterationParams, SeparationPolicy};
pub use scales::{lambda, DerivedScales};
pub use step::{
    partial_sum_reg, step, step_grid, ChannelNorms, LedgerRecord, SeriesTerm, StepDiagnostics,
    StepOutcome, StepState,
};
