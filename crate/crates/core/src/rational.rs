//! Exact rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::int::Int;

/// Canonical exact rational (reduced, positive denominator).
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub(crate) fn from_int(v: &Int) -> Rational {
    Rational::from_integer(v.to_big())
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Integer image of `r * scale`; `scale` must clear the denominator.
pub(crate) fn scaled_int(r: &Rational, scale: &BigInt) -> Int {
    let v = r.numer() * (scale / r.denom());
    Int::from(v)
}
