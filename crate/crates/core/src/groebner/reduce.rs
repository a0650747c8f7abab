//! Fraction-free division by a list of polynomials.

use alloc::vec::Vec;

use crate::int::Int;
use crate::monomial::Monomial;
use crate::product::ProductTable;

use super::poly::{Poly, Ring};

/// Reducer set with leading-monomial support masks for quick rejection.
pub(crate) struct Reducers<'p> {
    polys: Vec<&'p Poly>,
    masks: Vec<u32>,
}

impl<'p> Reducers<'p> {
    pub fn new<I: IntoIterator<Item = &'p Poly>>(it: I) -> Self {
        let polys: Vec<&Poly> = it.into_iter().filter(|p| !p.is_zero()).collect();
        let masks = polys.iter().map(|p| ProductTable::support_mask(p.lm())).collect();
        Reducers { polys, masks }
    }

    /// Shortest reducer whose leading monomial divides `m`.
    pub fn find(&self, m: &Monomial) -> Option<&'p Poly> {
        let mm = ProductTable::support_mask(m);
        let mut best: Option<&Poly> = None;
        for (g, &gm) in self.polys.iter().zip(&self.masks) {
            if gm & !mm != 0 || !g.lm().divides(m) {
                continue;
            }
            if best.map_or(true, |b| g.len() < b.len()) {
                best = Some(g);
                if g.len() == 1 {
                    break;
                }
            }
        }
        best
    }
}

/// Running scale of a fraction-free reduction: the reduced polynomial `r`
/// satisfies `NF(p) = (num / den) * r`.
#[derive(Clone, Debug)]
pub(crate) struct Scale {
    pub num: Int,
    pub den: Int,
}

impl Scale {
    pub fn one() -> Self {
        Scale { num: Int::ONE, den: Int::ONE }
    }
}

/// Reduce `p` completely (every term) modulo the reducers. With `full`
/// false only the leading term is reduced. Content is cleared after every
/// step.
pub(crate) fn reduce(ring: &Ring<'_>, mut p: Poly, reducers: &Reducers<'_>, full: bool, scale: &mut Scale) -> Poly {
    let mut pos = 0usize;
    while pos < p.terms.len() {
        let Some(g) = reducers.find(&p.terms[pos].m) else {
            if !full {
                break;
            }
            pos += 1;
            continue;
        };
        let q = g.lm().quotient(&p.terms[pos].m);
        let qg = ring.mul_monomial(&q, g);
        let c = &p.terms[pos].c;
        let d = g.lc().gcd(c);
        let mut a = g.lc().div_exact(&d);
        let mut b = c.div_exact(&d);
        if a.is_negative() {
            a = a.neg();
            b = b.neg();
        }
        p.sugar = p.sugar.max(qg.sugar);
        p.terms = ring.combine(&a, &p.terms, &b, &qg.terms);
        if !a.is_one() {
            scale.den = scale.den.mul(&a);
        }
        let k = p.content();
        if !k.is_zero() && !k.is_one() {
            for t in &mut p.terms {
                t.c = t.c.div_exact(&k);
            }
            scale.num = scale.num.mul(&k);
        }
        if scale.den.bits() > 256 || scale.num.bits() > 256 {
            let g = scale.num.gcd(&scale.den);
            if !g.is_one() {
                scale.num = scale.num.div_exact(&g);
                scale.den = scale.den.div_exact(&g);
            }
        }
    }
    p
}

/// Normal form without scale tracking; the result is primitive.
pub(crate) fn normal_form(ring: &Ring<'_>, p: Poly, reducers: &Reducers<'_>) -> Poly {
    let mut scale = Scale::one();
    let mut r = reduce(ring, p, reducers, true, &mut scale);
    r.make_primitive();
    r
}
