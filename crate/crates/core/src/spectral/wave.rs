use std::ops::{Add, Neg, Sub};

/// Lattice wave vector `k ∈ Z²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WaveVector {
    pub k1: i64,
    pub k2: i64,
}

impl WaveVector {
    pub const ZERO: WaveVector = WaveVector { k1: 0, k2: 0 };

    pub const fn new(k1: i64, k2: i64) -> Self {
        WaveVector { k1, k2 }
    }

    /// `|k|²` in exact integer arithmetic.
    pub const fn norm_sq(self) -> i64 {
        self.k1 * self.k1 + self.k2 * self.k2
    }

    pub fn norm(self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    /// `max(|k1|, |k2|)`, the quantity bounded by a field's band.
    pub fn sup_norm(self) -> i64 {
        self.k1.abs().max(self.k2.abs())
    }

    pub fn is_zero(self) -> bool {
        self.k1 == 0 && self.k2 == 0
    }

    /// `k·x` for a point of the torus.
    pub fn phase(self, x: [f64; 2]) -> f64 {
        self.k1 as f64 * x[0] + self.k2 as f64 * x[1]
    }
}

impl Add for WaveVector {
    type Output = WaveVector;
    fn add(self, rhs: WaveVector) -> WaveVector {
        WaveVector::new(self.k1 + rhs.k1, self.k2 + rhs.k2)
    }
}

impl Sub for WaveVector {
    type Output = WaveVector;
    fn sub(self, rhs: WaveVector) -> WaveVector {
        WaveVector::new(self.k1 - rhs.k1, self.k2 - rhs.k2)
    }
}

impl Neg for WaveVector {
    type Output = WaveVector;
    fn neg(self) -> WaveVector {
        WaveVector::new(-self.k1, -self.k2)
    }
}

impl From<(i64, i64)> for WaveVector {
    fn from((k1, k2): (i64, i64)) -> Self {
        WaveVector::new(k1, k2)
    }
}

impl std::fmt::Display for WaveVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_norms() {
        let k = WaveVector::new(3, 4);
        assert_eq!(k.norm_sq(), 25);
        assert_eq!(k.norm(), 5.0);
        assert_eq!((-k).sup_norm(), 4);
        assert_eq!(k - k, WaveVector::ZERO);
    }
}
