//! Generalized Bernstein-Sato polynomials `b_{f,g}`, multiplier-ideal
//! membership and jumping numbers below 1.

use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::annihilator::{self, Annihilator};
use crate::bfunction::BFunction;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::groebner::{self, min_poly, DEFAULT_DEGREE_CAP};
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::rational::Rational;

/// `b_{f,g}` with the threshold it induces.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralizedB {
    pub g: Element,
    pub b: BFunction,
}

impl GeneralizedB {
    /// `min { -α : b_{f,g}(α) = 0 }`; `None` when `b_{f,g} = 1`.
    pub fn threshold(&self) -> Option<Rational> {
        self.b.roots.first().map(|r| -r.value.clone())
    }
}

/// Monic `b` of least degree with `b(s) g ∈ ann_{D[s]}(f^s) + D[s] g f`.
pub fn generalized_b(f: &Element, g: &Element) -> Result<GeneralizedB> {
    generalized_b_with(&annihilator::ann_fs(f)?, g)
}

pub fn generalized_b_with(ann: &Annihilator, g: &Element) -> Result<GeneralizedB> {
    if g.is_zero() {
        return Err(Error::Precondition("g must be nonzero".into()));
    }
    if g.algebra() != ann.f.algebra() {
        return Err(Error::SignatureMismatch);
    }
    let ds = ann.algebra();
    let gl = g.lift_by_name(ds)?;
    let gf = g.mul(&ann.f)?.lift_by_name(ds)?;
    let mut gens = ann.generators().to_vec();
    gens.push(gf);
    let gb = groebner::groebner(ds, &gens, &MonomialOrder::degrevlex())?;
    let s = ds.var("s").expect("s");
    let poly = min_poly(&s, &gl, &gb, DEFAULT_DEGREE_CAP)?;
    let b = BFunction::new(poly)?;
    if b.roots.iter().any(|r| !r.value.is_negative()) {
        return Err(Error::Precondition("generalized b-function has a non-negative root".into()));
    }
    Ok(GeneralizedB { g: g.clone(), b })
}

/// `g ∈ J(f^c)` iff `c < min { -α : b_{f,g}(α) = 0 }`.
pub fn multiplier_membership(f: &Element, g: &Element, c: &Rational) -> Result<bool> {
    membership_with(&generalized_b(f, g)?, c)
}

pub fn membership_with(gb: &GeneralizedB, c: &Rational) -> Result<bool> {
    if !c.is_positive() {
        return Err(Error::Precondition("exponent must be positive".into()));
    }
    Ok(gb.threshold().map_or(true, |t| c < &t))
}

/// Jumping numbers in `(0, 1]` found on monomials of degree at most
/// `degbound`, with the threshold of every monomial examined. Multiples
/// of a monomial whose threshold is at least 1 are not examined.
#[derive(Clone, Debug, PartialEq)]
pub struct JumpingNumbers {
    pub values: Vec<Rational>,
    pub degbound: u32,
    pub thresholds: Vec<(Monomial, Option<Rational>)>,
}

/// Candidates are the negated roots of `b_f` in `(0, 1]`; a candidate is
/// kept when some monomial's membership switches there. Complete only up
/// to `degbound`.
pub fn jumping_numbers(f: &Element, degbound: Option<u32>) -> Result<JumpingNumbers> {
    let ann = annihilator::ann_fs(f)?;
    let bf = crate::bfunction::bpoly_from_ann(&ann)?;
    jumping_numbers_with(&ann, &bf, degbound)
}

pub fn jumping_numbers_with(ann: &Annihilator, bf: &BFunction, degbound: Option<u32>) -> Result<JumpingNumbers> {
    let f = &ann.f;
    let degbound = degbound.unwrap_or_else(|| f.total_degree());
    let one = Rational::one();
    let candidates: Vec<Rational> = bf
        .roots
        .iter()
        .map(|r| -r.value.clone())
        .filter(|c| c.is_positive() && c <= &one)
        .collect();
    let alg = f.algebra();
    let n = f.sig().len();
    let mut thresholds = Vec::new();
    let mut saturated: Vec<Monomial> = Vec::new();
    for m in monomials_up_to(n, degbound) {
        // thresholds grow along divisibility; past 1 nothing new appears
        if saturated.iter().any(|d| d.divides(&m)) {
            continue;
        }
        let g = Element::monomial(alg, m, Rational::one());
        let t = generalized_b_with(ann, &g)?.threshold();
        if t.as_ref().map_or(true, |t| t >= &one) {
            saturated.push(m);
        }
        thresholds.push((m, t));
    }
    let mut values: Vec<Rational> = candidates
        .into_iter()
        .filter(|c| thresholds.iter().any(|(_, t)| t.as_ref() == Some(c)))
        .collect();
    values.sort();
    values.dedup();
    Ok(JumpingNumbers { values, degbound, thresholds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::polynomial_ring;
    use crate::bfunction::{bpoly, Method};
    use crate::rational::{rat, rat_int};

    fn poly(names: &[&str], build: impl Fn(&[Element]) -> Element) -> Element {
        let r = polynomial_ring(names).unwrap();
        let vars: Vec<Element> = names.iter().map(|n| r.var(n).unwrap()).collect();
        build(&vars)
    }

    fn cusp() -> Element {
        poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap())
    }

    #[test]
    fn trivial_g_gives_b_f() {
        let f = cusp();
        let one = Element::one(f.algebra());
        assert_eq!(generalized_b(&f, &one).unwrap().b, bpoly(&f, Method::MinPoly).unwrap());
    }

    #[test]
    fn square_with_x() {
        let f = poly(&["x"], |v| v[0].pow(2));
        let g = f.algebra().var("x").unwrap();
        assert_eq!(generalized_b(&f, &g).unwrap().b.factored(), "(s+1)*(s+3/2)");
    }

    #[test]
    fn cusp_membership() {
        let f = cusp();
        let one = Element::one(f.algebra());
        assert!(multiplier_membership(&f, &one, &rat(1, 2)).unwrap());
        assert!(!multiplier_membership(&f, &one, &rat(5, 6)).unwrap());
        let x = poly(&["x"], |v| v[0].clone());
        assert!(multiplier_membership(&x, &Element::one(x.algebra()), &rat(1, 2)).unwrap());
    }

    #[test]
    fn cusp_product_g_is_rational() {
        let f = cusp();
        let g = f.algebra().var("x").unwrap().mul(&f.algebra().var("y").unwrap()).unwrap();
        let b = generalized_b(&f, &g).unwrap();
        assert!(b.b.roots.iter().all(|r| r.value.is_negative()));
    }

    #[test]
    fn jumping_numbers_examples() {
        let j = jumping_numbers(&cusp(), None).unwrap();
        assert_eq!(j.values, [rat(5, 6), rat_int(1)]);
        let x = poly(&["x"], |v| v[0].clone());
        assert_eq!(jumping_numbers(&x, None).unwrap().values, [rat_int(1)]);
        let xy = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        assert_eq!(jumping_numbers(&xy, None).unwrap().values, [rat_int(1)]);
    }
}
