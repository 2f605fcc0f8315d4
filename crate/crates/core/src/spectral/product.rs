use num_complex::Complex64;

use super::grid::{fft_size, from_grid, min_grid, to_grid};
use super::{TorusField, WaveVector};

/// Factors with at most this many non-zero coefficients are convolved directly.
const SPARSE_FACTOR_LIMIT: usize = 32;

/// Grid size used for the exact product of fields with the given bands.
pub fn product_grid(band_f: usize, band_g: usize) -> usize {
    fft_size(min_grid(band_f + band_g))
}

/// Exact product `f·g`, of band `band(f) + band(g)`.
///
/// A factor with only a handful of modes is convolved directly; otherwise
/// both factors are sampled on a grid large enough to hold the whole product
/// band, so no aliasing occurs.
pub fn multiply(f: &TorusField, g: &TorusField) -> TorusField {
    let nf = f.count_nonzeros();
    let ng = g.count_nonzeros();
    if nf.min(ng) <= SPARSE_FACTOR_LIMIT {
        return if nf <= ng {
            multiply_sparse(f, g)
        } else {
            multiply_sparse(g, f)
        };
    }
    multiply_on_grid(f, g)
}

/// Product through collocation on `product_grid(band(f), band(g))`.
pub fn multiply_on_grid(f: &TorusField, g: &TorusField) -> TorusField {
    let band = f.band() + g.band();
    let n = product_grid(f.band(), g.band());
    let mut a = to_grid(f, n).expect("product grid holds both factors");
    let b = to_grid(g, n).expect("product grid holds both factors");
    a.mul_assign(&b);
    drop(b);
    from_grid(&a, band)
}

/// `(f g)^(k) = Σ_l f̂(l) ĝ(k - l)` summed over the non-zero modes of `sparse`.
fn multiply_sparse(sparse: &TorusField, dense: &TorusField) -> TorusField {
    let mut out = TorusField::zeros(sparse.band() + dense.band());
    for (l, c) in sparse.nonzeros() {
        out.add_shifted(dense, l, c);
    }
    out
}

/// Product of several pairs that share one grid, e.g. the components of
/// `Λf ∇⊥f`. Each factor is transformed once.
pub fn multiply_pairs(factors: &[&TorusField], pairs: &[(usize, usize, f64)]) -> Vec<TorusField> {
    let band_of = |i: usize| factors[i].band();
    let band = pairs
        .iter()
        .map(|&(a, b, _)| band_of(a) + band_of(b))
        .max()
        .unwrap_or(0);
    let n = fft_size(min_grid(band));
    let grids: Vec<_> = factors
        .iter()
        .map(|f| to_grid(f, n).expect("shared grid holds every factor"))
        .collect();
    pairs
        .iter()
        .map(|&(a, b, scale)| {
            let mut prod = grids[a].clone();
            prod.mul_assign(&grids[b]);
            if scale != 1.0 {
                prod.map(|v| v * scale);
            }
            from_grid(&prod, band_of(a) + band_of(b))
        })
        .collect()
}

/// `Σ scale_i · f_i g_i` evaluated on one grid and transformed back once.
pub fn multiply_sum(terms: &[(&TorusField, &TorusField, f64)]) -> TorusField {
    let band = terms
        .iter()
        .map(|(f, g, _)| f.band() + g.band())
        .max()
        .unwrap_or(0);
    let n = fft_size(min_grid(band));
    let mut acc: Option<super::GridSamples> = None;
    for &(f, g, scale) in terms {
        let mut a = to_grid(f, n).expect("shared grid holds every factor");
        let b = to_grid(g, n).expect("shared grid holds every factor");
        a.mul_assign(&b);
        drop(b);
        match acc.as_mut() {
            None => {
                if scale != 1.0 {
                    a.map(|v| v * scale);
                }
                acc = Some(a);
            }
            Some(total) => {
                use rayon::prelude::*;
                total
                    .values_mut()
                    .par_iter_mut()
                    .zip(a.values().par_iter())
                    .for_each(|(t, v)| *t += scale * v);
            }
        }
    }
    match acc {
        Some(total) => from_grid(&total, band),
        None => TorusField::zeros(0),
    }
}

/// Brute-force convolution over the full boxes. Quartic cost; for checks.
pub fn convolve_direct(f: &TorusField, g: &TorusField) -> TorusField {
    let band = f.band() + g.band();
    let mut out = TorusField::zeros(band);
    let b = band as i64;
    for k1 in -b..=b {
        for k2 in -b..=b {
            let k = WaveVector::new(k1, k2);
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, fl) in f.iter() {
                acc += fl * g.coeff(k - l);
            }
            let i = out.index_unchecked(k);
            out.coeffs_mut()[i] = acc;
        }
    }
    out
}
