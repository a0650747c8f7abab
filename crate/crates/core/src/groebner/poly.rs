//! Engine-side polynomials: integer coefficients, terms sorted by the
//! active monomial order (descending), and a sugar degree.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;

use crate::element::{Algebra, Element};
use crate::int::Int;
use crate::monomial::{Monomial, MonomialOrder};
use crate::product::ProductTable;
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub m: Monomial,
    pub c: Int,
}

#[derive(Clone, Debug)]
pub(crate) struct Poly {
    pub terms: Vec<Term>,
    pub sugar: u32,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new(), sugar: 0 }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].m
    }

    #[inline]
    pub fn lc(&self) -> &Int {
        &self.terms[0].c
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for t in &self.terms {
            g = g.gcd(&t.c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.terms[0].c.is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.c = t.c.div_exact(&g);
            }
        }
    }
}

/// Algebra plus order: everything needed to multiply and compare.
#[derive(Clone)]
pub(crate) struct Ring<'a> {
    pub alg: &'a Algebra,
    pub ord: &'a MonomialOrder,
}

impl<'a> Ring<'a> {
    pub fn new(alg: &'a Algebra, ord: &'a MonomialOrder) -> Self {
        Ring { alg, ord }
    }

    #[inline]
    pub fn table(&self) -> &ProductTable {
        self.alg.table()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.ord.cmp(a, b)
    }

    /// Sort descending and merge equal monomials.
    pub fn normalize(&self, mut terms: Vec<Term>, sugar: u32) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.m, &a.m));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.m == t.m {
                    last.c = last.c.add(&t.c);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.c.is_zero());
        Poly { terms: out, sugar }
    }

    pub fn from_element(&self, e: &Element) -> Poly {
        let den = rational::common_denominator(e.terms().iter().map(|(_, c)| c));
        let terms = e.terms().iter().map(|(m, c)| Term { m: *m, c: rational::scaled_int(c, &den) }).collect();
        let sugar = e.terms().iter().map(|(m, _)| self.degree(m)).max().unwrap_or(0);
        let mut p = self.normalize(terms, sugar);
        p.make_primitive();
        p
    }

    /// Monic rational element.
    pub fn to_element(&self, p: &Poly) -> Element {
        if p.is_zero() {
            return Element::zero(self.alg);
        }
        let lc = rational::from_int(p.lc());
        Element::from_terms(self.alg, p.terms.iter().map(|t| (t.m, rational::from_int(&t.c) / &lc)))
    }

    /// Element with the same integer coefficients (no normalization).
    pub fn to_element_raw(&self, p: &Poly) -> Element {
        Element::from_int_terms(self.alg, p.terms.iter().map(|t| (t.m, t.c.clone())))
    }

    pub fn to_element_scaled(&self, p: &Poly, scale: &Rational) -> Element {
        if scale.is_zero() {
            return Element::zero(self.alg);
        }
        Element::from_terms(self.alg, p.terms.iter().map(|t| (t.m, rational::from_int(&t.c) * scale)))
    }

    /// Degree used for sugar bookkeeping (homogenizer counts too).
    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.degree()
    }

    /// `q * g` for a monomial `q` (coefficient 1), in normal order.
    pub fn mul_monomial(&self, q: &Monomial, g: &Poly) -> Poly {
        let sugar = g.sugar + self.degree(q);
        if q.is_one() {
            return Poly { terms: g.terms.clone(), sugar };
        }
        let table = self.table();
        if table.acts_trivially(q) {
            // plain exponent shift preserves the order
            let terms = g.terms.iter().map(|t| Term { m: q.mul(&t.m), c: t.c.clone() }).collect();
            return Poly { terms, sugar };
        }
        let qmask = ProductTable::support_mask(q) & table.right_mask();
        let mut buf: Vec<(Monomial, Int)> = Vec::new();
        let mut out: Vec<Term> = Vec::with_capacity(g.terms.len() * 2);
        let mut sorted = true;
        for t in &g.terms {
            let tmask = ProductTable::support_mask(&t.m) & table.left_mask();
            if !has_partner(table, qmask, tmask) {
                out.push(Term { m: q.mul(&t.m), c: t.c.clone() });
                continue;
            }
            buf.clear();
            table.product(q, &t.m, &t.c, &mut buf);
            sorted = false;
            out.extend(buf.drain(..).map(|(m, c)| Term { m, c }));
        }
        if sorted {
            Poly { terms: out, sugar }
        } else {
            self.normalize(out, sugar)
        }
    }

    /// `a * p - b * q`, both sorted; result sorted.
    pub fn combine(&self, a: &Int, p: &[Term], b: &Int, q: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(p.len() + q.len());
        let (mut i, mut j) = (0, 0);
        let nb = b.neg();
        while i < p.len() && j < q.len() {
            match self.cmp(&p[i].m, &q[j].m) {
                Ordering::Greater => {
                    out.push(Term { m: p[i].m, c: p[i].c.mul(a) });
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { m: q[j].m, c: q[j].c.mul(&nb) });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = p[i].c.mul_sub_mul(a, &q[j].c, b);
                    if !c.is_zero() {
                        out.push(Term { m: p[i].m, c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(p[i..].iter().map(|t| Term { m: t.m, c: t.c.mul(a) }));
        out.extend(q[j..].iter().map(|t| Term { m: t.m, c: t.c.mul(&nb) }));
        out
    }
}

/// Whether some right letter in `qmask` meets its left partner in `tmask`.
#[inline]
fn has_partner(table: &ProductTable, qmask: u32, tmask: u32) -> bool {
    qmask != 0 && tmask != 0 && table.pairs_meet(qmask, tmask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    #[test]
    fn monomial_multiplication_matches_element_product() {
        let alg = Algebra::new(Signature::weyl_s_dt(&["x", "y"]).unwrap());
        let ord = MonomialOrder::degrevlex();
        let ring = Ring::new(&alg, &ord);
        let x = alg.var("x").unwrap();
        let dx = alg.var("dx").unwrap();
        let s = alg.var("s").unwrap();
        let dt = alg.var("dt").unwrap();
        let g = x.pow(3).mul(&s.pow(2)).unwrap().add(&dx.mul(&x).unwrap()).unwrap().add(&s).unwrap();
        let q = dx.pow(2).mul(&dt.pow(2)).unwrap();
        let expected = q.mul(&g).unwrap();
        let got = ring.mul_monomial(&q.terms()[0].0, &ring.from_element(&g));
        assert_eq!(ring.to_element_raw(&got), expected);
    }
}
