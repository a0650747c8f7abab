//! Bernstein-Sato polynomials: the global one by two independent routes,
//! the local one at a rational point, and root bookkeeping.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::annihilator::{self, Annihilator};
use crate::apply::{exact_quotient, polynomial_ring};
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::groebner::{self as minpoly, WeightVector};
use crate::groebner;
use crate::monomial::MonomialOrder;
use crate::rational::{rat_int, Rational};
use crate::signature::Role;
use crate::univariate::{Root, UnivariatePoly};

/// How the global b-function is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Minimal polynomial of `s` modulo `ann_{D[s]}(f^s) + D[s] f`.
    MinPoly,
    /// Minimal polynomial of `-dt t` modulo the `(-w, w)`-initial ideal of
    /// the Malgrange ideal; never touches the annihilator.
    Deformation,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::MinPoly => "minpoly",
            Method::Deformation => "deformation",
        }
    }
}

/// A b-function with its roots.
#[derive(Clone, Debug, PartialEq)]
pub struct BFunction {
    pub poly: UnivariatePoly,
    /// Largest first.
    pub roots: Vec<Root>,
}

impl BFunction {
    pub fn new(poly: UnivariatePoly) -> Result<Self> {
        let poly = poly.monic();
        let roots = poly.roots()?;
        Ok(BFunction { poly, roots })
    }

    /// `b(s) / (s + 1)`; `None` if `s + 1` does not divide.
    pub fn reduced(&self) -> Option<UnivariatePoly> {
        let (q, r) = self.poly.div_rem(&UnivariatePoly::linear(&-Rational::one()));
        r.is_zero().then_some(q)
    }

    /// Roots repeated by multiplicity, largest first.
    pub fn root_multiset(&self) -> Vec<Rational> {
        self.roots.iter().flat_map(|r| core::iter::repeat(r.value.clone()).take(r.mult as usize)).collect()
    }

    pub fn integral_roots(&self) -> Vec<Rational> {
        self.roots.iter().filter(|r| r.value.is_integer()).map(|r| r.value.clone()).collect()
    }

    /// Minus the largest root.
    pub fn lct(&self) -> Option<Rational> {
        self.roots.first().map(|r| -r.value.clone())
    }

    pub fn factored(&self) -> String {
        crate::univariate::display_factored(&self.roots, "s")
    }
}

/// Roots and log-canonical threshold of a b-function.
pub fn roots_and_lct(b: &UnivariatePoly) -> Result<(Vec<Root>, Rational)> {
    let bf = BFunction::new(b.clone())?;
    let lct = bf.lct().ok_or_else(|| Error::Precondition("constant b-function".into()))?;
    Ok((bf.roots, lct))
}

/// Global b-function with the structural checks of a report.
#[derive(Clone, Debug)]
pub struct BFunctionReport {
    pub f: Element,
    pub b: BFunction,
    pub methods: Vec<Method>,
    /// `Some` when both routes ran.
    pub agreement: Option<bool>,
}

impl BFunctionReport {
    pub fn lct(&self) -> Rational {
        self.b.lct().expect("b_f has the root -1")
    }

    pub fn reduced(&self) -> UnivariatePoly {
        self.b.reduced().expect("s + 1 divides b_f")
    }
}

fn check_structure(f: &Element, b: &BFunction) -> Result<()> {
    let n = -rat_int(f.sig().len() as i64);
    let Some(reduced) = b.reduced() else {
        return Err(Error::Precondition("s + 1 does not divide the computed b-function".into()));
    };
    // the reduced b-function has its roots in (-n, 0)
    if reduced.roots()?.iter().any(|r| !r.value.is_negative() || r.value <= n) {
        return Err(Error::Precondition("reduced b-function has a root outside (-n, 0)".into()));
    }
    Ok(())
}

/// `b_f` by one route.
pub fn bpoly(f: &Element, method: Method) -> Result<BFunction> {
    let poly = match method {
        Method::MinPoly => bpoly_min_poly(&annihilator::ann_fs(f)?)?,
        Method::Deformation => bpoly_deformation(f)?,
    };
    let b = BFunction::new(poly)?;
    check_structure(f, &b)?;
    Ok(b)
}

/// `b_f` from a known annihilator.
pub fn bpoly_from_ann(ann: &Annihilator) -> Result<BFunction> {
    let b = BFunction::new(bpoly_min_poly(ann)?)?;
    check_structure(&ann.f, &b)?;
    Ok(b)
}

/// Report for the requested routes; with both, `agreement` records
/// whether they returned the same polynomial.
pub fn bpoly_report(f: &Element, methods: &[Method]) -> Result<BFunctionReport> {
    if methods.is_empty() {
        return Err(Error::Precondition("no method requested".into()));
    }
    let mut results = Vec::new();
    for &m in methods {
        results.push(bpoly(f, m)?);
    }
    let agreement = (results.len() > 1).then(|| results.windows(2).all(|w| w[0] == w[1]));
    Ok(BFunctionReport { f: f.clone(), b: results.swap_remove(0), methods: methods.to_vec(), agreement })
}

fn bpoly_min_poly(ann: &Annihilator) -> Result<UnivariatePoly> {
    let ds = ann.algebra();
    let mut gens = ann.generators().to_vec();
    gens.push(ann.f.lift_by_name(ds)?);
    let gb = groebner::groebner(ds, &gens, &MonomialOrder::degrevlex())?;
    let s = ds.var("s").expect("s");
    minpoly::min_poly(&s, &Element::one(ds), &gb, minpoly::DEFAULT_DEGREE_CAP)
}

/// Weight `-1` on `t`, `+1` on `dt`.
fn deformation_weight(alg: &Algebra) -> Result<WeightVector> {
    WeightVector::named(alg.sig(), &[("t", -1), ("dt", 1)])
}

fn bpoly_deformation(f: &Element) -> Result<UnivariatePoly> {
    let (alg, gens) = annihilator::malgrange_ideal(f)?;
    let w = deformation_weight(&alg)?;
    let (gr, ini) = groebner::initial_ideal(&alg, &gens, &w)?;
    let gb = groebner::groebner(&gr, &ini, &MonomialOrder::degrevlex())?;
    let t = gr.var("t").expect("t");
    let dt = gr.var("dt").expect("dt");
    let sigma = dt.mul(&t)?.neg();
    minpoly::min_poly(&sigma, &Element::one(&gr), &gb, minpoly::DEFAULT_DEGREE_CAP)
}

/// The ideal `B = (ann_{D[s]}(f^s) + D[s] f) ∩ Q[x, s]` of functional
/// equations `b(x, s) f^s = P f^{s+1}`, in the commutative ring on the
/// positions of `f` and `s`.
pub fn functional_equation_ideal(ann: &Annihilator) -> Result<(Algebra, Vec<Element>)> {
    let ds = ann.algebra();
    let mut gens = ann.generators().to_vec();
    gens.push(ann.f.lift_by_name(ds)?);
    let kill: Vec<usize> = (0..ds.len()).filter(|&i| ds.sig().role(i) == Role::Momentum).collect();
    let (_, elim) = groebner::eliminate(ds, &gens, &kill)?;
    let mut names: Vec<&str> = ann.f.sig().names().iter().map(|s| s.as_str()).collect();
    names.push("s");
    let ring = polynomial_ring(&names)?;
    let lifted = elim.iter().map(|e| e.lift_by_name(&ring)).collect::<Result<Vec<_>>>()?;
    Ok((ring, lifted))
}

/// Local b-function at a rational point.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalB {
    pub b: BFunction,
    /// The value was checked to lie in `B` localized at the point, so it
    /// is the local b-function and not only a divisor of it.
    pub verified: bool,
}

/// `b_{f,p}`: start from the gcd of the specializations `b(p, s)` of a
/// basis of `B` (a divisor of `b_{f,p}`), then walk up through divisors of
/// `b_f` until one lies in `B` localized at `p`.
pub fn bpoly_local(f: &Element, p: &[Rational]) -> Result<LocalB> {
    let ann = annihilator::ann_fs(f)?;
    let global = bpoly_from_ann(&ann)?;
    bpoly_local_with(&ann, &global, p)
}

pub fn bpoly_local_with(ann: &Annihilator, global: &BFunction, p: &[Rational]) -> Result<LocalB> {
    let f = &ann.f;
    let n = f.sig().len();
    if p.len() != n {
        return Err(Error::Precondition(alloc::format!("point has {} coordinates, expected {n}", p.len())));
    }
    let xs: Vec<usize> = (0..n).collect();
    if !f.evaluate(&xs, p).is_zero() {
        return Ok(LocalB { b: BFunction::new(UnivariatePoly::one())?, verified: true });
    }
    let (ring, b_ideal) = functional_equation_ideal(ann)?;
    let si = n;
    let mut g = UnivariatePoly::new(Vec::new());
    for b in &b_ideal {
        let spec = b.evaluate(&xs, p);
        g = g.gcd(&as_univariate(&spec, si));
    }
    let g = g.monic();
    if !g.divides(&global.poly) {
        return Err(Error::Precondition("specialized gcd does not divide b_f".into()));
    }
    // candidates: multiples of g dividing b_f, by increasing degree
    let quotient = global.poly.div_rem(&g).0;
    let mut cands: Vec<UnivariatePoly> = sub_products(&BFunction::new(quotient)?.roots)
        .into_iter()
        .map(|c| c.mul(&g))
        .collect();
    cands.sort_by_key(|c| c.degree());
    for c in cands {
        if in_local_ideal(&ring, &b_ideal, &c, si, p)? {
            return Ok(LocalB { b: BFunction::new(c)?, verified: true });
        }
    }
    Err(Error::Precondition("b_f is not in the localized ideal of functional equations".into()))
}

fn as_univariate(e: &Element, var: usize) -> UnivariatePoly {
    let mut coeffs: Vec<Rational> = Vec::new();
    for (m, c) in e.terms() {
        let k = m.exp(var) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += c;
    }
    UnivariatePoly::new(coeffs)
}

/// Every monic divisor of `prod (s - r)^m`.
fn sub_products(roots: &[Root]) -> Vec<UnivariatePoly> {
    let mut out = alloc::vec![UnivariatePoly::one()];
    for r in roots {
        let lin = UnivariatePoly::linear(&r.value);
        let mut next = Vec::new();
        for base in &out {
            let mut acc = base.clone();
            next.push(acc.clone());
            for _ in 0..r.mult {
                acc = acc.mul(&lin);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}

/// Whether `u(x) c(s) ∈ B` for some `u` with `u(p) != 0`, via the colon
/// `(B : c) ∩ Q[x]` and its sum with the maximal ideal of `p`.
fn in_local_ideal(ring: &Algebra, b: &[Element], c: &UnivariatePoly, si: usize, p: &[Rational]) -> Result<bool> {
    let n = p.len();
    let mut names: Vec<&str> = ring.sig().names().iter().map(|s| s.as_str()).collect();
    names.push("z");
    let big = polynomial_ring(&names)?;
    let z = big.var("z").expect("z");
    let s = big.var("s").expect("s");
    let mut cpoly = Element::zero(&big);
    for (k, a) in c.coeffs().iter().enumerate() {
        cpoly = cpoly.add(&s.pow(k as u32).scale(a))?;
    }
    let mut gens = Vec::new();
    for g in b {
        gens.push(z.mul(&g.lift_by_name(&big)?)?);
    }
    gens.push(Element::one(&big).sub(&z)?.mul(&cpoly)?);
    let zi = big.sig().index_of("z").expect("z");
    let (_, meet) = groebner::eliminate(&big, &gens, &[zi])?;
    let order = MonomialOrder::degrevlex();
    let cring = cpoly.lift_by_name(ring)?;
    let mut colon = Vec::new();
    for m in &meet {
        let q = exact_quotient(&m.lift_by_name(ring)?, &cring, &order)
            .ok_or_else(|| Error::Precondition("intersection element not divisible".into()))?;
        colon.push(q);
    }
    let (xring, xpart) = groebner::eliminate(ring, &colon, &[si])?;
    let mut probe = xpart;
    for (i, v) in p.iter().enumerate().take(n) {
        let x = Element::var(&xring, i);
        probe.push(x.sub(&Element::constant(&xring, v.clone()))?);
    }
    Ok(groebner::groebner(&xring, &probe, &order)?.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::string::ToString;

    fn poly(names: &[&str], build: impl Fn(&[Element]) -> Element) -> Element {
        let r = polynomial_ring(names).unwrap();
        let vars: Vec<Element> = names.iter().map(|n| r.var(n).unwrap()).collect();
        build(&vars)
    }

    fn both(f: &Element) -> BFunction {
        let r = bpoly_report(f, &[Method::MinPoly, Method::Deformation]).unwrap();
        assert_eq!(r.agreement, Some(true));
        r.b
    }

    #[test]
    fn smooth() {
        let f = poly(&["x"], |v| v[0].clone());
        assert_eq!(both(&f).factored(), "(s+1)");
    }

    #[test]
    fn normal_crossing() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        assert_eq!(both(&f).factored(), "(s+1)^2");
    }

    #[test]
    fn cusp() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let b = both(&f);
        assert_eq!(b.factored(), "(s+5/6)*(s+1)*(s+7/6)");
        assert_eq!(b.lct(), Some(rat(5, 6)));
        assert_eq!(b.reduced().unwrap().to_string(), "s^2 + 2*s + 35/36");
    }

    #[test]
    fn monomial_powers() {
        let f = poly(&["x"], |v| v[0].pow(3));
        assert_eq!(both(&f).factored(), "(s+1/3)*(s+2/3)*(s+1)");
    }

    #[test]
    fn lct_of_products() {
        let b = UnivariatePoly::from_roots(&[Root { value: rat_int(-1), mult: 1 }, Root { value: rat_int(-2), mult: 1 }]);
        let (roots, lct) = roots_and_lct(&b).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(lct, rat_int(1));
    }

    #[test]
    fn local_cusp() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let at_origin = bpoly_local(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert!(at_origin.verified);
        assert_eq!(at_origin.b.factored(), "(s+5/6)*(s+1)*(s+7/6)");
        let smooth = bpoly_local(&f, &[rat_int(1), rat_int(-1)]).unwrap();
        assert_eq!(smooth.b.factored(), "(s+1)");
        let off = bpoly_local(&f, &[rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(off.b.factored(), "1");
    }

    #[test]
    fn local_normal_crossing() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let b = bpoly_local(&f, &[rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(b.b.factored(), "(s+1)");
        let b = bpoly_local(&f, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(b.b.factored(), "(s+1)^2");
    }
}
