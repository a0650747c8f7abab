//! Algebra elements: finite sums of normally ordered monomials with exact
//! rational coefficients over a shared signature.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::int::Int;
use crate::monomial::{Monomial, MonomialOrder};
use crate::product::ProductTable;
use crate::rational::{self, Rational};
use crate::signature::{Role, Signature};

/// Shared handle to a signature together with its product table.
#[derive(Clone, Debug)]
pub struct Algebra {
    sig: Arc<Signature>,
    table: Arc<ProductTable>,
}

impl Algebra {
    pub fn new(sig: Signature) -> Self {
        let table = Arc::new(ProductTable::new(&sig));
        Algebra { sig: Arc::new(sig), table }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub(crate) fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn var(&self, name: &str) -> Option<Element> {
        self.sig.index_of(name).map(|i| Element::var(self, i))
    }

    pub fn len(&self) -> usize {
        self.sig.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sig.is_empty()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig
    }
}

impl Eq for Algebra {}

/// An element of the algebra in normal form. Terms are kept sorted by
/// descending exponent vector, which makes equality structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    alg: Algebra,
    terms: Vec<(Monomial, Rational)>,
}

impl Element {
    pub fn zero(alg: &Algebra) -> Self {
        Element { alg: alg.clone(), terms: Vec::new() }
    }

    pub fn constant(alg: &Algebra, c: Rational) -> Self {
        Self::from_terms(alg, [(Monomial::ONE, c)])
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::constant(alg, Rational::one())
    }

    pub fn var(alg: &Algebra, i: usize) -> Self {
        Self::from_terms(alg, [(Monomial::var(i), Rational::one())])
    }

    pub fn monomial(alg: &Algebra, m: Monomial, c: Rational) -> Self {
        Self::from_terms(alg, [(m, c)])
    }

    /// Collects terms; repeated monomials are summed and zeros dropped.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(alg: &Algebra, it: I) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in it {
            let e = map.entry(m).or_insert_with(Rational::zero);
            *e += c;
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Element { alg: alg.clone(), terms }
    }

    pub(crate) fn from_int_terms<I: IntoIterator<Item = (Monomial, Int)>>(alg: &Algebra, it: I) -> Self {
        Self::from_terms(alg, it.into_iter().map(|(m, c)| (m, rational::from_int(&c))))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn sig(&self) -> &Signature {
        self.alg.sig()
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term value if the element is a scalar.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::SignatureMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Self::from_terms(&self.alg, self.terms.iter().chain(other.terms.iter()).cloned()))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(Self::from_terms(
            &self.alg,
            self.terms.iter().cloned().chain(other.terms.iter().map(|(m, c)| (*m, -c.clone()))),
        ))
    }

    pub fn neg(&self) -> Element {
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Element {
        if r.is_zero() {
            return Element::zero(&self.alg);
        }
        Element { alg: self.alg.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect() }
    }

    /// Normally ordered product `self * other`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let table = self.alg.table();
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut buf = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                buf.clear();
                table.product(ma, mb, &Int::ONE, &mut buf);
                let c = ca * cb;
                for (m, k) in buf.drain(..) {
                    let e = acc.entry(m).or_insert_with(Rational::zero);
                    *e += &c * rational::from_int(&k);
                }
            }
        }
        Ok(Element {
            alg: self.alg.clone(),
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut r = Element::one(&self.alg);
        for _ in 0..k {
            r = r.mul(self).expect("same algebra");
        }
        r
    }

    /// Highest term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<Monomial> {
        self.leading(order).map(|t| t.0)
    }

    /// Divide by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Element {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Maximum total exponent over the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_in(vars)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Order in the momentum variables.
    pub fn order(&self) -> u32 {
        self.degree_in(&self.sig().momenta())
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Maximum of a weight functional over the support.
    pub fn max_weight(&self, w: &[i32]) -> Option<i64> {
        self.terms
            .iter()
            .map(|(m, _)| w.iter().enumerate().map(|(i, &x)| x as i64 * m.exp(i) as i64).sum())
            .max()
    }

    /// Terms of maximal weight.
    pub fn initial_form(&self, w: &[i32]) -> Element {
        let Some(top) = self.max_weight(w) else { return self.clone() };
        let weight = |m: &Monomial| -> i64 { w.iter().enumerate().map(|(i, &x)| x as i64 * m.exp(i) as i64).sum() };
        Element { alg: self.alg.clone(), terms: self.terms.iter().filter(|(m, _)| weight(m) == top).cloned().collect() }
    }

    /// Move into another algebra through a variable index map. Only valid
    /// when the map respects normal order (the image of a normal word is
    /// normal), which holds for restrictions and for adding/removing
    /// commuting variables.
    pub fn remap(&self, target: &Algebra, map: &[Option<usize>]) -> Result<Element> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut n = Monomial::ONE;
            for (i, &e) in m.exps().iter().enumerate().take(map.len()) {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => n.set_exp(j, n.exp(j) + e),
                    None => return Err(Error::Precondition(alloc::format!(
                        "variable {} has no image", self.sig().name(i)
                    ))),
                }
            }
            out.push((n.with_comp(m.comp()), c.clone()));
        }
        Ok(Element::from_terms(target, out))
    }

    /// Move into `target` matching variables by name. Only valid when the
    /// names used here keep their commutation rules in `target`.
    pub fn lift_by_name(&self, target: &Algebra) -> Result<Element> {
        let map: Vec<Option<usize>> = (0..self.sig().len()).map(|i| target.sig().index_of(self.sig().name(i))).collect();
        self.remap(target, &map)
    }

    /// Substitute a rational value for a variable that commutes with
    /// everything in the signature.
    pub fn substitute(&self, var: usize, value: &Rational) -> Element {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut n = *m;
            n.set_exp(var, 0);
            let mut v = c.clone();
            for _ in 0..e {
                v *= value;
            }
            out.push((n, v));
        }
        Element::from_terms(&self.alg, out)
    }

    /// Evaluate commuting variables at a point; unlisted variables stay.
    pub fn evaluate(&self, vars: &[usize], point: &[Rational]) -> Element {
        let mut r = self.clone();
        for (&v, p) in vars.iter().zip(point) {
            r = r.substitute(v, p);
        }
        r
    }

    /// Formal partial derivative with respect to a commuting variable.
    pub fn derivative(&self, var: usize) -> Element {
        let out = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            let mut n = *m;
            n.set_exp(var, e - 1);
            (n, c * rational::rat_int(e as i64))
        });
        Element::from_terms(&self.alg, out)
    }

    /// Multiply every coefficient so the result has coprime integer
    /// coefficients and positive leading coefficient under `order`.
    pub fn primitive(&self, order: &MonomialOrder) -> Element {
        if self.is_zero() {
            return self.clone();
        }
        let den = rational::common_denominator(self.terms.iter().map(|(_, c)| c));
        let ints: Vec<Int> = self.terms.iter().map(|(_, c)| rational::scaled_int(c, &den)).collect();
        let g = ints.iter().fold(Int::ZERO, |g, c| g.gcd(c));
        let lead_neg = self.leading(order).map_or(false, |(_, c)| c.is_negative());
        let g = if lead_neg { g.neg() } else { g };
        Element::from_int_terms(&self.alg, self.terms.iter().zip(ints).map(|((m, _), c)| (*m, c.div_exact(&g))))
    }

    /// Terms sorted by descending `order` (for display and iteration).
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| order.cmp(&b.0, &a.0));
        t
    }

    pub(crate) fn display_order(&self) -> MonomialOrder {
        MonomialOrder::degrevlex().skipping(self.sig().homogenizer())
    }
}

fn fmt_monomial(sig: &Signature, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for i in 0..sig.len() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", sig.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let order = self.display_order();
        for (k, (m, c)) in self.sorted_terms(&order).iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            fmt_monomial(self.sig(), m, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compare elements term-by-term under `order` (for deterministic sorting).
pub fn cmp_by_order(a: &Element, b: &Element, order: &MonomialOrder) -> Ordering {
    let ta = a.sorted_terms(order);
    let tb = b.sorted_terms(order);
    for (x, y) in ta.iter().zip(tb.iter()) {
        let c = order.cmp(&x.0, &y.0);
        if c != Ordering::Equal {
            return c;
        }
        let c = x.1.cmp(&y.1);
        if c != Ordering::Equal {
            return c;
        }
    }
    ta.len().cmp(&tb.len())
}

/// Polynomial positions (role `Position` or `Commutative`, excluding `h`).
pub fn commuting_letters(sig: &Signature) -> Vec<usize> {
    (0..sig.len()).filter(|&i| matches!(sig.role(i), Role::Commutative | Role::Position)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn weyl1() -> (Algebra, Element, Element) {
        let a = Algebra::new(Signature::weyl(&["x"]).unwrap());
        let x = a.var("x").unwrap();
        let d = a.var("dx").unwrap();
        (a, x, d)
    }

    #[test]
    fn d_times_x() {
        let (a, x, d) = weyl1();
        let p = d.mul(&x).unwrap();
        let expected = x.mul(&d).unwrap().add(&Element::one(&a)).unwrap();
        assert_eq!(p, expected);
        assert_eq!(alloc::format!("{p}"), "x*dx + 1");
    }

    #[test]
    fn d_squared_times_x() {
        let (_, x, d) = weyl1();
        let p = d.pow(2).mul(&x).unwrap();
        let expected = x.mul(&d.pow(2)).unwrap().add(&d.scale(&rat_int(2))).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn commuting_pair() {
        let a = Algebra::new(Signature::weyl(&["x", "y"]).unwrap());
        let x = a.var("x").unwrap();
        let y = a.var("y").unwrap();
        assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        assert_eq!(alloc::format!("{}", x.mul(&y).unwrap()), "x*y");
        let dy = a.var("dy").unwrap();
        assert_eq!(dy.mul(&x).unwrap(), x.mul(&dy).unwrap());
    }

    #[test]
    fn shift_relation() {
        let a = Algebra::new(Signature::weyl_s_dt(&["x"]).unwrap());
        let s = a.var("s").unwrap();
        let dt = a.var("dt").unwrap();
        // s*dt - dt*s = dt
        let comm = s.mul(&dt).unwrap().sub(&dt.mul(&s).unwrap()).unwrap();
        assert_eq!(comm, dt);
    }

    #[test]
    fn homogenized_relation() {
        let a = Algebra::new(Signature::weyl(&["x"]).unwrap().homogenized().unwrap());
        let x = a.var("x").unwrap();
        let d = a.var("dx").unwrap();
        let h = a.var("h").unwrap();
        let p = d.mul(&x).unwrap();
        assert_eq!(p, x.mul(&d).unwrap().add(&h.pow(2)).unwrap());
    }

    #[test]
    fn mismatch_is_an_error() {
        let (_, x, _) = weyl1();
        let b = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        assert_eq!(x.mul(&b.var("x").unwrap()), Err(Error::SignatureMismatch));
    }
}
