//! Minimal polynomial of left multiplication by an element on a cyclic
//! vector modulo a left ideal, by linear dependence of normal forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::Rational;
use crate::univariate::UnivariatePoly;

use super::GroebnerBasis;

/// Iteration cap used when the caller has no better bound.
pub const DEFAULT_DEGREE_CAP: usize = 64;

struct Row {
    pivot: Monomial,
    vec: BTreeMap<Monomial, Rational>,
    comb: Vec<Rational>,
}

/// Monic `b` of least degree with `b(sigma) * start` in the ideal of `gb`.
/// Normal forms `NF_0 = NF(start)`, `NF_k = NF(sigma * NF_{k-1})` are
/// eliminated incrementally until one becomes dependent.
pub fn min_poly(sigma: &Element, start: &Element, gb: &GroebnerBasis, cap: usize) -> Result<UnivariatePoly> {
    if sigma.algebra() != gb.algebra() || start.algebra() != gb.algebra() {
        return Err(Error::SignatureMismatch);
    }
    let mut rows: Vec<Row> = Vec::new();
    let mut nf = gb.reduce(start)?;
    for k in 0..=cap {
        let mut vec: BTreeMap<Monomial, Rational> = nf.terms().iter().cloned().collect();
        let mut comb = alloc::vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for row in &rows {
            let Some(c) = vec.get(&row.pivot).cloned() else { continue };
            for (m, x) in &row.vec {
                let e = vec.entry(*m).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    vec.remove(m);
                }
            }
            for (i, x) in row.comb.iter().enumerate() {
                comb[i] -= &c * x;
            }
        }
        if vec.is_empty() {
            return Ok(UnivariatePoly::new(comb).monic());
        }
        let (pivot, lead) = vec.iter().next_back().map(|(m, c)| (*m, c.clone())).expect("nonzero");
        for x in vec.values_mut() {
            *x /= &lead;
        }
        for x in comb.iter_mut() {
            *x /= &lead;
        }
        // keep the echelon form reduced: clear the new pivot from older rows
        for row in rows.iter_mut() {
            let Some(c) = row.vec.get(&pivot).cloned() else { continue };
            for (m, x) in &vec {
                let e = row.vec.entry(*m).or_insert_with(Rational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    row.vec.remove(m);
                }
            }
            row.comb.resize(k + 1, Rational::zero());
            for (i, x) in comb.iter().enumerate() {
                row.comb[i] -= &c * x;
            }
        }
        rows.push(Row { pivot, vec, comb });
        if k < cap {
            nf = gb.reduce(&sigma.mul(&nf)?)?;
        }
    }
    Err(Error::DegreeCap(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::element::Algebra;
    use crate::groebner::groebner;
    use crate::monomial::MonomialOrder;
    use crate::rational::rat_int;
    use crate::signature::Signature;

    #[test]
    fn smooth_point() {
        let a = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let (x, d, s) = (a.var("x").unwrap(), a.var("dx").unwrap(), a.var("s").unwrap());
        let gens = [x.mul(&d).unwrap().sub(&s).unwrap(), x.clone()];
        let gb = groebner(&a, &gens, &MonomialOrder::degrevlex()).unwrap();
        let b = min_poly(&s, &Element::one(&a), &gb, 8).unwrap();
        assert_eq!(b.to_string(), "s + 1");
    }

    #[test]
    fn linear_constraint() {
        let a = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let s = a.var("s").unwrap();
        let g = s.sub(&Element::constant(&a, rat_int(2))).unwrap();
        let gb = groebner(&a, &[g], &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(min_poly(&s, &Element::one(&a), &gb, 8).unwrap().to_string(), "s - 2");
    }

    #[test]
    fn cap_is_reported() {
        let a = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let s = a.var("s").unwrap();
        let gb = groebner(&a, &[a.var("x").unwrap()], &MonomialOrder::degrevlex()).unwrap();
        assert_eq!(min_poly(&s, &Element::one(&a), &gb, 3).unwrap_err(), Error::DegreeCap(3));
    }
}
