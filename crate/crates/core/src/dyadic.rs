//! Exact non-negative rationals whose denominator is a power of two.
//!
//! Every probability this crate produces (influences, Walsh-squared
//! weights, closed forms for monomials) has the shape `k / 2^e`, so a
//! numerator plus a binary exponent is enough to keep them exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

/// `num / 2^exp`, stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: u128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// Builds `num / 2^exp` and reduces it.
    pub fn new(num: u128, exp: u32) -> Self {
        assert!(exp < 128, "dyadic exponent {exp} out of range");
        let mut d = Dyadic { num, exp };
        d.reduce();
        d
    }

    fn reduce(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let shift = self.num.trailing_zeros().min(self.exp);
        self.num >>= shift;
        self.exp -= shift;
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    /// Denominator as a power of two.
    pub fn denominator(&self) -> u128 {
        1u128 << self.exp
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn to_f64(&self) -> f64 {
        // exact for every value this crate builds (num < 2^53 after reduction)
        self.num as f64 / (self.exp as f64).exp2()
    }

    /// Numerator rescaled onto the denominator `2^exp`. `None` when the
    /// value cannot be written over that denominator.
    pub fn numerator_over(&self, exp: u32) -> Option<u128> {
        if exp < self.exp {
            return None;
        }
        self.num.checked_shl(exp - self.exp).filter(|v| v >> (exp - self.exp) == self.num)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::ZERO
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        let exp = self.exp.max(rhs.exp);
        let a = self.num << (exp - self.exp);
        let b = rhs.num << (exp - rhs.exp);
        Dyadic::new(a + b, exp)
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, |acc, d| acc + d)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exp = self.exp.max(other.exp);
        (self.num << (exp - self.exp)).cmp(&(other.num << (exp - other.exp)))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.denominator())
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let d = Dyadic::new(8, 4);
        assert_eq!(d.numerator(), 1);
        assert_eq!(d.denominator(), 2);
        assert_eq!(d, Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert_eq!(Dyadic::new(16, 4), Dyadic::ONE);
    }

    #[test]
    fn addition_and_order() {
        let half = Dyadic::new(1, 1);
        let quarter = Dyadic::new(1, 2);
        assert_eq!(half + quarter, Dyadic::new(3, 2));
        assert_eq!(half + half, Dyadic::ONE);
        assert!(quarter < half);
        assert_eq!([half, quarter, quarter].into_iter().sum::<Dyadic>(), Dyadic::ONE);
    }

    #[test]
    fn renders_fraction() {
        assert_eq!(Dyadic::new(3, 3).to_string(), "3/8");
        assert_eq!(Dyadic::ONE.to_string(), "1/1");
        assert_eq!(Dyadic::new(3, 3).to_f64(), 0.375);
    }

    #[test]
    fn numerator_over_rescales() {
        assert_eq!(Dyadic::new(1, 1).numerator_over(4), Some(8));
        assert_eq!(Dyadic::new(1, 3).numerator_over(2), None);
    }
}
