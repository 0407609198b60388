use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact dyadic rational `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return DyadicRational { num, exp: 0 };
        }
        while exp > 0 && num.is_even() {
            num >>= 1;
            exp -= 1;
        }
        DyadicRational { num, exp }
    }

    pub fn zero() -> Self {
        DyadicRational::new(0, 0)
    }

    pub fn one() -> Self {
        DyadicRational::new(1, 0)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// The value `.b₁b₂⋯bₙ` of a finite binary word.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut num = BigInt::zero();
        for &b in bits {
            num <<= 1;
            if b {
                num += 1;
            }
        }
        DyadicRational::new(num, bits.len() as u32)
    }

    /// The terminating binary expansion of a value in `[0,1)`.
    pub fn bits(&self) -> Vec<bool> {
        debug_assert!(!self.num.is_negative() && *self < DyadicRational::one());
        (0..self.exp)
            .rev()
            .map(|i| self.num.bit(i as u64))
            .collect()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// Exact conversion back from a rational with a power-of-two denominator.
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        let d = r.denom();
        let bits = d.bits();
        if bits == 0 || *d != BigInt::one() << (bits - 1) {
            return None;
        }
        Some(DyadicRational::new(r.numer().clone(), (bits - 1) as u32))
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.num << (e - self.exp),
            &other.num << (e - other.exp),
            e,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.align(other);
        DyadicRational::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, e) = self.align(other);
        DyadicRational::new(a - b, e)
    }

    /// Multiplication by `2^k`.
    pub fn shift(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                DyadicRational::new(self.num.clone(), self.exp - k)
            } else {
                DyadicRational::new(&self.num << (k - self.exp), 0)
            }
        } else {
            DyadicRational::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn in_unit_interval(&self) -> bool {
        !self.num.is_negative() && *self <= DyadicRational::one()
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.align(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    /// Accepts `n`, `n/2^k` written out (`3/8`) or a binary fraction `.011`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse {
            line: 1,
            message: format!("`{s}` is not a dyadic rational"),
        };
        if let Some(bits) = s.strip_prefix('.') {
            let bits: Vec<bool> = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect::<Result<_, _>>()?;
            return Ok(DyadicRational::from_bits(&bits));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d <= BigInt::zero() {
            return Err(bad());
        }
        DyadicRational::from_rational(&BigRational::new(n, d)).ok_or_else(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> DyadicRational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(DyadicRational::new(4, 3), DyadicRational::new(1, 1));
        assert_eq!(DyadicRational::new(0, 5), DyadicRational::zero());
        assert_eq!(d("6/8").to_string(), "3/4");
        assert_eq!(d(".011"), d("3/8"));
    }

    #[test]
    fn rejects_non_dyadic() {
        assert!("1/3".parse::<DyadicRational>().is_err());
        assert!("x".parse::<DyadicRational>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d("1/4").add(&d("1/8")), d("3/8"));
        assert_eq!(d("1/4").sub(&d("1/2")), d("-1/4"));
        assert_eq!(d("3/8").shift(2), d("3/2"));
        assert_eq!(d("3").shift(-3), d("3/8"));
        assert!(d("1/4") < d("3/8"));
    }

    #[test]
    fn bit_expansion() {
        assert_eq!(d("3/8").bits(), vec![false, true, true]);
        assert!(d("0").bits().is_empty());
        assert_eq!(DyadicRational::from_bits(&d("5/16").bits()), d("5/16"));
    }
}
