//! SQF1: `"SQF1"`, u32 version, u32 band `K`, i64 mean-zero flag, then
//! `(re, im)` f64 pairs for `k1 = -K..K`, `k2 = -K..K` in row-major order.
//! All integers and floats little-endian.

use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::atomic_write;
use crate::error::{Error, Result};
use crate::spectral::{TorusField, WaveVector, HERMITIAN_LOAD_TOL};

pub const SQF_MAGIC: &[u8; 4] = b"SQF1";
pub const SQF_VERSION: u32 = 1;
const HEADER: usize = 4 + 4 + 4 + 8;

pub fn encode_field(f: &TorusField) -> Vec<u8> {
    let b = f.band() as i64;
    let side = f.side();
    let mut out = Vec::with_capacity(HEADER + 16 * side * side);
    out.extend_from_slice(SQF_MAGIC);
    out.extend_from_slice(&SQF_VERSION.to_le_bytes());
    out.extend_from_slice(&(f.band() as u32).to_le_bytes());
    out.extend_from_slice(&i64::from(f.is_mean_zero()).to_le_bytes());
    for k1 in -b..=b {
        for k2 in -b..=b {
            let c = f.coeff(WaveVector::new(k1, k2));
            out.extend_from_slice(&c.re.to_le_bytes());
            out.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    out
}

fn bad(path: &Path, message: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn le_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().expect("four bytes"))
}

fn le_f64(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("eight bytes"))
}

/// Parses SQF1 bytes; `origin` only labels errors.
pub fn decode_field(bytes: &[u8], origin: &Path) -> Result<TorusField> {
    if bytes.len() < HEADER {
        return Err(bad(
            origin,
            format!("{} bytes is shorter than the header", bytes.len()),
        ));
    }
    if &bytes[0..4] != SQF_MAGIC {
        return Err(bad(origin, "missing SQF1 magic"));
    }
    let version = le_u32(bytes, 4);
    if version != SQF_VERSION {
        return Err(bad(origin, format!("unsupported version {version}")));
    }
    let band = le_u32(bytes, 8) as usize;
    let flag = i64::from_le_bytes(bytes[12..20].try_into().expect("eight bytes"));
    if flag != 0 && flag != 1 {
        return Err(bad(origin, format!("mean-zero flag {flag} is not 0 or 1")));
    }
    let side = 2 * band + 1;
    let want = HEADER + 16 * side * side;
    if bytes.len() != want {
        return Err(bad(
            origin,
            format!("band {band} needs {want} bytes, found {}", bytes.len()),
        ));
    }
    let coeffs: Vec<Complex64> = (0..side * side)
        .map(|i| {
            let at = HEADER + 16 * i;
            Complex64::new(le_f64(bytes, at), le_f64(bytes, at + 8))
        })
        .collect();
    if coeffs
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(bad(origin, "non-finite coefficient"));
    }
    let f = TorusField::from_coeffs(band, coeffs).map_err(|_| {
        bad(
            origin,
            format!("coefficients are not Hermitian to {HERMITIAN_LOAD_TOL:e}"),
        )
    })?;
    if (flag == 1) != f.is_mean_zero() {
        return Err(bad(
            origin,
            "mean-zero flag disagrees with the k = 0 coefficient",
        ));
    }
    Ok(f)
}

pub fn write_field(path: &Path, f: &TorusField) -> Result<()> {
    atomic_write(path, &encode_field(f))
}

pub fn read_field(path: &Path) -> Result<TorusField> {
    let bytes = std::fs::read(path)?;
    decode_field(&bytes, &PathBuf::from(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random_field;

    fn origin() -> PathBuf {
        PathBuf::from("mem")
    }

    #[test]
    fn layout() {
        let f = TorusField::cos_mode(WaveVector::new(1, 0), 1.0);
        let b = encode_field(&f);
        assert_eq!(&b[0..4], b"SQF1");
        assert_eq!(b.len(), HEADER + 16 * 9);
        assert_eq!(le_u32(&b, 8), 1);
        assert_eq!(i64::from_le_bytes(b[12..20].try_into().unwrap()), 1);
        // (k1, k2) = (1, 0) is row 2, column 1
        assert_eq!(le_f64(&b, HEADER + 16 * (2 * 3 + 1)), 0.5);
        assert_eq!(le_f64(&b, HEADER + 16), 0.5);
    }

    #[test]
    fn round_trip_bits() {
        for (seed, mz) in [(1, true), (2, false)] {
            let f = random_field(seed, 7, mz);
            let g = decode_field(&encode_field(&f), &origin()).unwrap();
            assert_eq!(encode_field(&g), encode_field(&f));
            assert_eq!(g, f);
        }
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.sqf1");
        let f = random_field(4, 5, true);
        write_field(&p, &f).unwrap();
        assert_eq!(read_field(&p).unwrap(), f);
    }

    #[test]
    fn rejects_damage() {
        let f = random_field(3, 3, true);
        let good = encode_field(&f);
        let mut b = good.clone();
        b[0] = b'X';
        assert!(matches!(
            decode_field(&b, &origin()),
            Err(Error::Format { .. })
        ));
        assert!(decode_field(&good[..good.len() - 1], &origin()).is_err());
        let mut b = good.clone();
        // break symmetry of one coefficient
        b[HEADER + 15] ^= 0x40;
        assert!(decode_field(&b, &origin()).is_err());
        let mut b = good.clone();
        b[12] = 0;
        assert!(decode_field(&b, &origin()).is_err());
        let mut b = good;
        b[4] = 2;
        assert!(decode_field(&b, &origin()).is_err());
    }
}
