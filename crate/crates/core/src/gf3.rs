//! The prime field GF(3).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A residue modulo 3, always stored in `{0, 1, 2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf3(u8);

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    /// `2 ≡ -1 (mod 3)`.
    pub const TWO: Gf3 = Gf3(2);

    pub const fn new(v: u8) -> Self {
        Gf3(v % 3)
    }

    /// Reduces a signed integer, so `-1` maps to `2`.
    pub const fn from_i64(v: i64) -> Self {
        Gf3(v.rem_euclid(3) as u8)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse. Every nonzero element is its own inverse.
    pub fn inv(self) -> Option<Gf3> {
        if self.0 == 0 {
            None
        } else {
            Some(self)
        }
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + rhs.0) % 3)
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    fn sub(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 + 3 - rhs.0) % 3)
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_integer_arithmetic() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert_eq!((Gf3::new(a) + Gf3::new(b)).value(), (a + b) % 3);
                assert_eq!((Gf3::new(a) * Gf3::new(b)).value(), (a * b) % 3);
                assert_eq!(Gf3::new(a) - Gf3::new(b) + Gf3::new(b), Gf3::new(a));
            }
        }
        assert_eq!(Gf3::TWO + Gf3::TWO, Gf3::ONE);
        assert_eq!(Gf3::TWO * Gf3::TWO, Gf3::ONE);
    }

    #[test]
    fn negative_one_is_two() {
        assert_eq!(Gf3::from_i64(-1), Gf3::TWO);
        assert_eq!(-Gf3::ONE, Gf3::TWO);
        assert_eq!(Gf3::ZERO.inv(), None);
        assert_eq!(Gf3::TWO.inv(), Some(Gf3::TWO));
    }
}
