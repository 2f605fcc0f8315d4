//! CSV views of a field's spectrum.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::spectral::TorusField;

/// `k1,k2,|k|,re,im,modulus`, one row per non-zero coefficient in
/// row-major `(k1, k2)` order.
pub fn spectrum_csv(f: &TorusField) -> String {
    let mut s = String::from("k1,k2,|k|,re,im,modulus\n");
    for (k, c) in f.iter().filter(|(_, c)| c.re != 0.0 || c.im != 0.0) {
        writeln!(
            s,
            "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
            k.k1,
            k.k2,
            (k.norm_sq() as f64).sqrt(),
            c.re,
            c.im,
            c.norm()
        )
        .expect("writing to a String");
    }
    s
}

/// `shell,energy`: `Σ |f̂(k)|²` over `s - 1/2 <= |k| < s + 1/2`, for every
/// shell from 0 to the outermost occupied one.
pub fn shells_csv(f: &TorusField) -> String {
    let mut shells: BTreeMap<u64, f64> = BTreeMap::new();
    for (k, c) in f.iter() {
        let e = c.norm_sqr();
        if e > 0.0 {
            *shells
                .entry((k.norm_sq() as f64).sqrt().round() as u64)
                .or_default() += e;
        }
    }
    let last = shells.keys().next_back().copied().unwrap_or(0);
    let mut s = String::from("shell,energy\n");
    for shell in 0..=last {
        writeln!(
            s,
            "{shell},{:.16e}",
            shells.get(&shell).copied().unwrap_or(0.0)
        )
        .expect("writing to a String");
    }
    s
}
