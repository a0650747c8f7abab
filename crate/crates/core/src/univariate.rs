//! Univariate polynomials over Q with exact rational root extraction.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense univariate polynomial, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

/// A root with its multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    pub value: Rational,
    pub mult: u32,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn one() -> Self {
        UnivariatePoly { coeffs: alloc::vec![Rational::one()] }
    }

    /// `s - a`.
    pub fn linear(a: &Rational) -> Self {
        UnivariatePoly::new(alloc::vec![-a.clone(), Rational::one()])
    }

    /// `prod (s - r)^m`.
    pub fn from_roots(roots: &[Root]) -> Self {
        let mut p = UnivariatePoly::one();
        for r in roots {
            for _ in 0..r.mult {
                p = p.mul(&UnivariatePoly::linear(&r.value));
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        UnivariatePoly { coeffs: self.coeffs.iter().map(|c| c / &lc).collect() }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UnivariatePoly { coeffs: Vec::new() };
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        if self.coeffs.len() < d.coeffs.len() {
            return (UnivariatePoly::new(Vec::new()), self.clone());
        }
        let mut q = alloc::vec![Rational::zero(); self.coeffs.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UnivariatePoly::new(q), UnivariatePoly::new(r))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Shift the variable: `p(s + a)`.
    pub fn shift(&self, a: &Rational) -> Self {
        let mut out = UnivariatePoly { coeffs: Vec::new() };
        let lin = UnivariatePoly::new(alloc::vec![a.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&lin);
            out = out.add(&UnivariatePoly::new(alloc::vec![c.clone()]));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UnivariatePoly::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All roots over Q with multiplicities, largest first. Fails with
    /// `NonRationalFactor` if the polynomial does not split over Q.
    pub fn roots(&self) -> Result<Vec<Root>> {
        if self.is_zero() {
            return Err(Error::Precondition("roots of the zero polynomial".into()));
        }
        let mut p = self.monic();
        let mut out: Vec<Root> = Vec::new();
        while p.degree() > 0 {
            let Some(r) = first_rational_root(&p) else {
                return Err(Error::NonRationalFactor);
            };
            let lin = UnivariatePoly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            out.push(Root { value: r, mult });
        }
        out.sort_by(|a, b| b.value.cmp(&a.value));
        Ok(out)
    }

    /// Human form in the variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.into(),
                _ => alloc::format!("{var}^{k}"),
            };
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{a}*{mono}");
            }
        }
        s
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("s"))
    }
}

/// `(s+5/6)*(s+1)^2` style rendering of a root list.
pub fn display_factored(roots: &[Root], var: &str) -> String {
    if roots.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for r in roots {
        let lin = if r.value.is_zero() {
            String::from(var)
        } else if r.value.is_negative() {
            alloc::format!("({var}+{})", -r.value.clone())
        } else {
            alloc::format!("({var}-{})", r.value)
        };
        if r.mult == 1 {
            parts.push(lin);
        } else {
            parts.push(alloc::format!("{lin}^{}", r.mult));
        }
    }
    parts.join("*")
}

/// Integer coefficients of a positive multiple (content removed).
fn integer_coeffs(p: &UnivariatePoly) -> Vec<BigInt> {
    let den = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn first_rational_root(p: &UnivariatePoly) -> Option<Rational> {
    if p.coeffs[0].is_zero() {
        return Some(Rational::zero());
    }
    let a = integer_coeffs(p);
    let lead = a.last().unwrap().abs();
    let constant = a[0].abs();
    // Cauchy bound: |root| <= 1 + max |a_i / a_n|
    let bound = {
        let l = Rational::from_integer(lead.clone());
        let m = a[..a.len() - 1].iter().map(|c| Rational::from_integer(c.abs()) / &l).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    };
    let dens = divisors(&lead);
    let nums = divisors(&constant);
    for q in &dens {
        for pn in &nums {
            let cand = Rational::new(pn.clone(), q.clone());
            if cand > bound {
                continue;
            }
            for r in [-cand.clone(), cand] {
                if r.denom() != q {
                    continue;
                }
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Positive divisors in ascending order. Trial division handles the
/// small primes; a leftover cofactor is treated as prime.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d: u64 = 2;
    while n > BigInt::one() && d < 1_000_000 {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            factors.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = alloc::vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut x = dv.clone();
            for _ in 0..=e {
                next.push(x.clone());
                x *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Convenience: small-integer view of a root when it is integral.
pub fn as_small_integer(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn root(n: i64, d: i64, m: u32) -> Root {
        Root { value: rat(n, d), mult: m }
    }

    #[test]
    fn cusp_roots() {
        let b = UnivariatePoly::from_roots(&[root(-5, 6, 1), root(-1, 1, 1), root(-7, 6, 1)]);
        let r = b.roots().unwrap();
        assert_eq!(r, alloc::vec![root(-5, 6, 1), root(-1, 1, 1), root(-7, 6, 1)]);
        assert_eq!(display_factored(&r, "s"), "(s+5/6)*(s+1)*(s+7/6)");
    }

    #[test]
    fn irreducible_quadratic_is_rejected() {
        let p = UnivariatePoly::new(alloc::vec![rat_int(1), rat_int(0), rat_int(1)]);
        assert_eq!(p.roots(), Err(Error::NonRationalFactor));
    }

    #[test]
    fn expanded_display() {
        let p = UnivariatePoly::from_roots(&[root(-1, 1, 2)]);
        assert_eq!(p.to_string(), "s^2 + 2*s + 1");
        let q = UnivariatePoly::from_roots(&[root(-1, 2, 1)]);
        assert_eq!(q.to_string(), "s + 1/2");
    }

    #[test]
    fn shift_moves_roots() {
        let p = UnivariatePoly::from_roots(&[root(-1, 1, 1), root(-2, 1, 1)]);
        let q = p.shift(&rat_int(1));
        assert_eq!(q.roots().unwrap(), alloc::vec![root(-2, 1, 1), root(-3, 1, 1)]);
    }

    proptest! {
        #[test]
        fn roots_round_trip(rs in proptest::collection::vec((-40i64..0, 1i64..13, 1u32..3), 1..6)) {
            let mut roots: Vec<Root> = Vec::new();
            for (n, d, m) in rs {
                let v = rat(n, d);
                if let Some(r) = roots.iter_mut().find(|r| r.value == v) {
                    r.mult += m;
                } else {
                    roots.push(Root { value: v, mult: m });
                }
            }
            roots.sort_by(|a, b| b.value.cmp(&a.value));
            let p = UnivariatePoly::from_roots(&roots);
            prop_assert_eq!(p.roots().unwrap(), roots);
        }
    }
}
