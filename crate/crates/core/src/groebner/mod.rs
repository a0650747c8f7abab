//! Left Groebner bases in the algebras of a [`Signature`](crate::Signature).
//!
//! Term orders run directly. Orders with negative weights run in the
//! homogenized algebra (every pair relation gains a power of `h`), where
//! the order compares dehomogenized monomials first; dehomogenizing the
//! result gives a standard basis for the weight order whose initial forms
//! generate the initial ideal.

mod buchberger;
mod dimension;
mod minpoly;
mod poly;
mod reduce;
mod syzygy;

use alloc::vec::Vec;

use num_traits::Zero;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::rational::{self, Rational};
use crate::signature::{PairRule, Signature};

pub use buchberger::GbOptions;
pub use dimension::{krull_dim, krull_dim_of_leading};
pub use minpoly::{min_poly, DEFAULT_DEGREE_CAP};
pub use syzygy::{all_minors, free_resolution, prune, projective_dimension, syzygies, ModuleVector, Resolution};

pub(crate) use buchberger::{buchberger, interreduce};
pub(crate) use poly::{Poly, Ring, Term};
pub(crate) use reduce::{normal_form, reduce as reduce_scaled, Reducers, Scale};

/// Integer weight per variable of a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<i32>);

impl WeightVector {
    /// Checks `u + v >= 0` on every Weyl pair and a nonnegative weight on
    /// the left letter of every shift pair.
    pub fn new(sig: &Signature, w: &[i32]) -> Result<Self> {
        if w.len() > sig.len() {
            return Err(Error::Precondition(alloc::format!("weight has {} entries for {} variables", w.len(), sig.len())));
        }
        let mut v = w.to_vec();
        v.resize(sig.len(), 0);
        for p in sig.pairs() {
            let bad = match p.rule {
                PairRule::Weyl => v[p.left] + v[p.right] < 0,
                PairRule::Shift => v[p.left] < 0,
            };
            if bad {
                return Err(Error::WeightConstraint(sig.name(p.left).into(), sig.name(p.right).into()));
            }
        }
        if let Some(h) = sig.homogenizer() {
            v[h] = 0;
        }
        Ok(WeightVector(v))
    }

    /// Weight vector from `(name, weight)` pairs, zero elsewhere.
    pub fn named(sig: &Signature, entries: &[(&str, i32)]) -> Result<Self> {
        let mut w = alloc::vec![0; sig.len()];
        for (n, x) in entries {
            let i = sig.index_of(n).ok_or_else(|| Error::Precondition(alloc::format!("unknown variable `{n}`")))?;
            w[i] = *x;
        }
        Self::new(sig, &w)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// The weight order refined by degrevlex.
    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::weighted(&self.0)
    }
}

/// A reduced Groebner basis: monic members sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    alg: Algebra,
    order: MonomialOrder,
    elements: Vec<Element>,
    polys: Vec<Poly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.order == other.order && self.elements == other.elements
    }
}

impl GroebnerBasis {
    pub(crate) fn from_polys(alg: &Algebra, order: &MonomialOrder, polys: Vec<Poly>) -> Self {
        let ring = Ring::new(alg, order);
        let elements = polys.iter().map(|p| ring.to_element(p)).collect();
        GroebnerBasis { alg: alg.clone(), order: order.clone(), elements, polys }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].as_constant().map_or(false, |c| !c.is_zero())
    }

    /// Leading monomials in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| *p.lm()).collect()
    }

    /// Exact normal form of `p`.
    pub fn reduce(&self, p: &Element) -> Result<Element> {
        if p.algebra() != &self.alg {
            return Err(Error::SignatureMismatch);
        }
        let ring = Ring::new(&self.alg, &self.order);
        let reducers = Reducers::new(self.polys.iter());
        Ok(exact_normal_form(&ring, p, &reducers))
    }

    pub fn contains(&self, p: &Element) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn contains_all(&self, ps: &[Element]) -> Result<bool> {
        for p in ps {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `e = factor * poly` with `poly` primitive over Z.
pub(crate) fn to_poly_with_factor(ring: &Ring<'_>, e: &Element) -> (Poly, Rational) {
    if e.is_zero() {
        return (Poly::zero(), Rational::zero());
    }
    let p = ring.from_element(e);
    // recover the factor from any one term
    let (m, c) = &e.terms()[0];
    let pc = p.terms.iter().find(|t| t.m == *m).map(|t| rational::from_int(&t.c)).expect("same support");
    (p, c / pc)
}

pub(crate) fn exact_normal_form(ring: &Ring<'_>, e: &Element, reducers: &Reducers<'_>) -> Element {
    let (p, factor) = to_poly_with_factor(ring, e);
    if p.is_zero() {
        return Element::zero(ring.alg);
    }
    let mut scale = Scale::one();
    let r = reduce_scaled(ring, p, reducers, true, &mut scale);
    let k = factor * rational::from_int(&scale.num) / rational::from_int(&scale.den);
    ring.to_element_scaled(&r, &k)
}

/// Normal form of `p` by an arbitrary list (not necessarily a Groebner
/// basis) under `order`. Leading terms are cancelled greedily; every term
/// of the result is irreducible.
pub fn reduce(p: &Element, basis: &[Element], order: &MonomialOrder) -> Result<Element> {
    let alg = p.algebra();
    if basis.iter().any(|b| b.algebra() != alg) {
        return Err(Error::SignatureMismatch);
    }
    let ring = Ring::new(alg, order);
    let polys: Vec<Poly> = basis.iter().map(|b| ring.from_element(b)).collect();
    let reducers = Reducers::new(polys.iter());
    Ok(exact_normal_form(&ring, p, &reducers))
}

fn check_term_order(alg: &Algebra, order: &MonomialOrder) -> Result<()> {
    if order.is_term_order(alg.len()) {
        Ok(())
    } else {
        Err(Error::NonTermOrder)
    }
}

/// Reduced Groebner basis of the left ideal generated by `gens`.
pub fn groebner(alg: &Algebra, gens: &[Element], order: &MonomialOrder) -> Result<GroebnerBasis> {
    groebner_with(alg, gens, order, GbOptions::default())
}

pub fn groebner_with(alg: &Algebra, gens: &[Element], order: &MonomialOrder, opts: GbOptions) -> Result<GroebnerBasis> {
    check_term_order(alg, order)?;
    if gens.iter().any(|g| g.algebra() != alg) {
        return Err(Error::SignatureMismatch);
    }
    let ring = Ring::new(alg, order);
    let input = gens.iter().map(|g| ring.from_element(g)).collect();
    let polys = buchberger(&ring, input, opts);
    Ok(GroebnerBasis::from_polys(alg, order, polys))
}

/// The homogenized algebra `D^h` of `alg` (adds `h` as the last variable).
pub fn homogenized_algebra(alg: &Algebra) -> Result<Algebra> {
    Ok(Algebra::new(alg.sig().homogenized()?))
}

/// Multiply each term by the power of `h` bringing it to the top total
/// degree. `target` must be the homogenized algebra of `e`'s algebra.
pub fn homogenize(e: &Element, target: &Algebra) -> Result<Element> {
    let h = target.sig().homogenizer().ok_or(Error::InvalidSignature("target has no homogenizer"))?;
    if e.sig().homogenizer().is_some() || target.sig().len() != e.sig().len() + 1 {
        return Err(Error::InvalidSignature("target is not the homogenized algebra"));
    }
    let top = e.total_degree();
    let terms = e.terms().iter().map(|(m, c)| {
        let mut n = *m;
        n.set_exp(h, (top - m.degree()) as u16);
        (n, c.clone())
    });
    Ok(Element::from_terms(target, terms))
}

/// Set `h = 1` and move back to `target` (the algebra without `h`).
pub fn dehomogenize(e: &Element, target: &Algebra) -> Result<Element> {
    let h = e.sig().homogenizer().ok_or(Error::InvalidSignature("element has no homogenizer"))?;
    let terms = e.terms().iter().map(|(m, c)| {
        let mut n = *m;
        n.set_exp(h, 0);
        (n, c.clone())
    });
    if target.len() != h {
        return Err(Error::InvalidSignature("target is not the dehomogenized algebra"));
    }
    Ok(Element::from_terms(target, terms))
}

fn dehomogenize_poly(p: &Poly, h: usize) -> Vec<Term> {
    p.terms
        .iter()
        .map(|t| {
            let mut m = t.m;
            m.set_exp(h, 0);
            Term { m, c: t.c.clone() }
        })
        .collect()
}

/// Groebner basis through `D^h` for any order whose weights respect the
/// pair constraints. The result lives in `alg`. For a term order it is
/// the reduced basis; otherwise it is a minimal standard basis whose
/// initial forms generate the initial ideal.
pub fn groebner_homogenized(alg: &Algebra, gens: &[Element], order: &MonomialOrder) -> Result<Vec<Element>> {
    groebner_homogenized_with(alg, gens, order, GbOptions::default())
}

pub fn groebner_homogenized_with(alg: &Algebra, gens: &[Element], order: &MonomialOrder, opts: GbOptions) -> Result<Vec<Element>> {
    let polys = homogenized_polys(alg, gens, order, opts)?;
    let ring = Ring::new(alg, order);
    Ok(polys.iter().map(|p| ring.to_element(p)).collect())
}

pub(crate) fn homogenized_polys(alg: &Algebra, gens: &[Element], order: &MonomialOrder, opts: GbOptions) -> Result<Vec<Poly>> {
    if gens.iter().any(|g| g.algebra() != alg) {
        return Err(Error::SignatureMismatch);
    }
    if alg.sig().homogenizer().is_some() {
        return Err(Error::InvalidSignature("algebra is already homogenized"));
    }
    for row in order.weights() {
        WeightVector::new(alg.sig(), &row[..alg.len()])?;
    }
    let alg_h = homogenized_algebra(alg)?;
    let h = alg.len();
    let ord_h = order.clone().skipping(Some(h));
    let ring_h = Ring::new(&alg_h, &ord_h);
    let mut input = Vec::with_capacity(gens.len());
    for g in gens {
        input.push(ring_h.from_element(&homogenize(g, &alg_h)?));
    }
    let gb_h = buchberger(&ring_h, input, opts);
    let ring = Ring::new(alg, order);
    let mut out: Vec<Poly> = gb_h
        .iter()
        .map(|p| {
            let mut q = ring.normalize(dehomogenize_poly(p, h), p.sugar);
            q.make_primitive();
            q
        })
        .filter(|p| !p.is_zero())
        .collect();
    if order.is_term_order(alg.len()) {
        out = interreduce(&ring, out);
    } else {
        out.sort_by(|a, b| ring.cmp(a.lm(), b.lm()).then_with(|| a.len().cmp(&b.len())));
        let mut minimal: Vec<Poly> = Vec::with_capacity(out.len());
        for p in out {
            if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
                minimal.push(p);
            }
        }
        out = minimal;
    }
    Ok(out)
}

/// Associated graded algebra of `alg` for the weight `w`.
pub fn graded_algebra(alg: &Algebra, w: &WeightVector) -> Algebra {
    let g = alg.sig().graded(w.as_slice());
    if &g == alg.sig() {
        alg.clone()
    } else {
        Algebra::new(g)
    }
}

/// Generators of `ini_w(I)` in the associated graded algebra: initial
/// forms (maximal weight) of a standard basis for the weight order.
pub fn initial_ideal(alg: &Algebra, gens: &[Element], w: &WeightVector) -> Result<(Algebra, Vec<Element>)> {
    let order = w.order();
    let basis = if order.is_term_order(alg.len()) {
        groebner(alg, gens, &order)?.elements
    } else {
        groebner_homogenized(alg, gens, &order)?
    };
    let gr = graded_algebra(alg, w);
    let ident: Vec<Option<usize>> = (0..alg.len()).map(Some).collect();
    let mut out = Vec::with_capacity(basis.len());
    for b in &basis {
        out.push(b.initial_form(w.as_slice()).remap(&gr, &ident)?);
    }
    Ok((gr, out))
}

/// `I ∩ A'` for the subalgebra `A'` on the variables not in `kill`.
pub fn eliminate(alg: &Algebra, gens: &[Element], kill: &[usize]) -> Result<(Algebra, Vec<Element>)> {
    eliminate_with(alg, gens, kill, false)
}

/// Elimination with an explicit choice of running the block order through
/// the homogenized algebra.
pub fn eliminate_with(alg: &Algebra, gens: &[Element], kill: &[usize], homogenize: bool) -> Result<(Algebra, Vec<Element>)> {
    let mut keep = alloc::vec![true; alg.len()];
    for &k in kill {
        keep[k] = false;
    }
    let (sub, map) = alg.sig().restrict(&keep)?;
    let sub = Algebra::new(sub);
    let order = MonomialOrder::elimination(kill);
    let basis = if homogenize {
        groebner_homogenized(alg, gens, &order)?
    } else {
        groebner(alg, gens, &order)?.elements
    };
    let mut out = Vec::new();
    for b in basis {
        if kill.iter().any(|&k| b.involves(k)) {
            continue;
        }
        out.push(b.remap(&sub, &map)?);
    }
    Ok((sub, out))
}

/// Left ideal given by generators, with an optional cached basis.
#[derive(Clone, Debug)]
pub struct LeftIdeal {
    alg: Algebra,
    gens: Vec<Element>,
    basis: Option<GroebnerBasis>,
}

impl LeftIdeal {
    pub fn new(alg: &Algebra, gens: Vec<Element>) -> Result<Self> {
        if gens.iter().any(|g| g.algebra() != alg) {
            return Err(Error::SignatureMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(LeftIdeal { alg: alg.clone(), gens, basis: None })
    }

    pub fn from_basis(gb: GroebnerBasis) -> Self {
        LeftIdeal { alg: gb.alg.clone(), gens: gb.elements.clone(), basis: Some(gb) }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis> {
        self.basis.as_ref()
    }

    /// Reduced basis for `order`, reusing the cache when it matches.
    pub fn groebner(&self, order: &MonomialOrder) -> Result<GroebnerBasis> {
        if let Some(b) = &self.basis {
            if &b.order == order {
                return Ok(b.clone());
            }
        }
        groebner(&self.alg, &self.gens, order)
    }

    /// Compute and cache the basis for `order`.
    pub fn with_basis(mut self, order: &MonomialOrder) -> Result<Self> {
        let b = self.groebner(order)?;
        self.basis = Some(b);
        Ok(self)
    }

    /// Ideal equality via reduced bases under degrevlex.
    pub fn same_ideal(&self, other: &LeftIdeal) -> Result<bool> {
        if self.alg != other.alg {
            return Err(Error::SignatureMismatch);
        }
        let o = MonomialOrder::degrevlex();
        Ok(self.groebner(&o)?.elements == other.groebner(&o)?.elements)
    }

    pub fn contains(&self, p: &Element) -> Result<bool> {
        self.groebner(&MonomialOrder::degrevlex())?.contains(p)
    }
}
