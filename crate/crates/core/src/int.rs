//! Integer coefficients with an inline `i64` fast path.
//!
//! Groebner reductions are fraction-free, so almost every coefficient
//! operation in the engine is an integer multiply-add. Most of those
//! values fit a machine word; `Int` only allocates once they do not.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision integer. Invariant: `Big` never holds a value
/// that fits in an `i64`.
#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn into_big(self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(v),
            Int::Big(b) => b,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    #[inline]
    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(r) => Int::Small(r),
                None => Int::Big(BigInt::from(*a) * BigInt::from(*b)),
            },
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => {
                Int::from_big(b * BigInt::from(*a))
            }
            (Int::Big(a), Int::Big(b)) => Int::Big(a * b),
        }
    }

    /// `self * a - other * b`, the fraction-free elimination step.
    pub fn mul_sub_mul(&self, a: &Int, other: &Int, b: &Int) -> Int {
        if let (Int::Small(x), Int::Small(p), Int::Small(y), Int::Small(q)) = (self, a, other, b) {
            let r = (*x as i128) * (*p as i128) - (*y as i128) * (*q as i128);
            if let Ok(v) = i64::try_from(r) {
                return Int::Small(v);
            }
            return Int::from_big(BigInt::from(r));
        }
        self.mul(a).sub(&other.mul(b))
    }

    /// Exact division; the caller guarantees `other | self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(r) => Int::Small(r),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() / other.to_big()),
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
                while y != 0 {
                    let t = x % y;
                    x = y;
                    y = t;
                }
                match i64::try_from(x) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(x)),
                }
            }
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => {
                if *a == 0 {
                    return Int::from_big(b.abs());
                }
                let r = (b % BigInt::from(*a)).to_i64().unwrap_or(0);
                Int::Small(*a).gcd(&Int::Small(r))
            }
            (Int::Big(a), Int::Big(b)) => Int::from_big(a.gcd(b)),
        }
    }

    /// Bit length of the absolute value.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl core::ops::Add for Int {
    type Output = Int;
    fn add(self, rhs: Int) -> Int {
        Int::add(&self, &rhs)
    }
}

impl core::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        Int::mul(&self, &rhs)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i128) -> BigInt {
        BigInt::from(v)
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>(), d in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            prop_assert_eq!(x.add(&y).to_big(), big(a as i128) + big(b as i128));
            prop_assert_eq!(x.sub(&y).to_big(), big(a as i128) - big(b as i128));
            prop_assert_eq!(x.mul(&y).to_big(), big(a as i128) * big(b as i128));
            let r = x.mul_sub_mul(&y, &Int::from(c), &Int::from(d));
            prop_assert_eq!(r.to_big(), big(a as i128) * big(b as i128) - big(c as i128) * big(d as i128));
            let g = x.gcd(&y).to_big();
            prop_assert_eq!(g, big(a as i128).gcd(&big(b as i128)));
        }

        #[test]
        fn canonical_representation(a in any::<i64>(), b in any::<i64>()) {
            // (a*b)/b comes back to a Small value
            if b != 0 {
                let p = Int::from(a).mul(&Int::from(b));
                let q = p.div_exact(&Int::from(b));
                prop_assert!(matches!(q, Int::Small(_)));
                prop_assert_eq!(q, Int::from(a));
            }
        }
    }

    #[test]
    fn min_value_edge_cases() {
        let m = Int::from(i64::MIN);
        assert_eq!(m.neg().to_big(), -big(i64::MIN as i128));
        assert_eq!(m.abs().to_big(), big(i64::MIN as i128).abs());
        assert_eq!(m.div_exact(&Int::from(-1)).to_big(), -big(i64::MIN as i128));
        assert_eq!(m.gcd(&Int::from(0)).to_big(), big(i64::MIN as i128).abs());
    }
}
