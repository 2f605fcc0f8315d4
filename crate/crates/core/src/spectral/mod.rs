//! Band-limited fields on the torus and the transforms between coefficients
//! and grid samples.

mod field;
pub mod grid;
mod product;
mod random;
mod sqrt;
mod wave;

pub use field::{TorusField, VectorField, HERMITIAN_LOAD_TOL};
pub use grid::{fft_size, from_grid, min_grid, node, to_grid, GridSamples};
pub use product::{
    convolve_direct, multiply, multiply_on_grid, multiply_pairs, multiply_sum, product_grid,
};
pub use random::{random_field, random_field_with};
pub use sqrt::{alias_report, sqrt_pointwise, sqrt_spectrum, AliasReport};
pub use wave::WaveVector;
