//! Annihilators of `f^s` and of its specializations, and the generation
//! conditions built on them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Signed};

use crate::bfunction::{self, BFunction, Method};
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis, LeftIdeal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::rational::{rat_int, Rational};
use crate::signature::{Role, Signature};

/// Which elimination produced an annihilator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AnnMethod {
    /// `t - u f`, `dx_i + u f_i dt`, `u v - 1` in `D_{x,t}[u,v]`
    Oaku,
    /// `s + f dt`, `dx_i + f_i dt` in `D<s, dt>`
    BrianconMaisonobe,
}

impl AnnMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            AnnMethod::Oaku => "oaku",
            AnnMethod::BrianconMaisonobe => "bm",
        }
    }
}

/// `ann_{D[s]}(f^s)` with its reduced basis under [`ann_order`].
#[derive(Clone, Debug)]
pub struct Annihilator {
    pub f: Element,
    pub method: AnnMethod,
    pub basis: GroebnerBasis,
    /// Largest order in the momenta among basis members.
    pub max_order: u32,
}

impl Annihilator {
    pub fn algebra(&self) -> &Algebra {
        self.basis.algebra()
    }

    pub fn generators(&self) -> &[Element] {
        self.basis.elements()
    }

    pub fn ideal(&self) -> LeftIdeal {
        LeftIdeal::from_basis(self.basis.clone())
    }
}

/// Position names of the polynomial ring of `f`.
pub fn variable_names(f: &Element) -> Result<Vec<String>> {
    if !f.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    for reserved in ["s", "t", "u", "v", "h"] {
        if f.sig().index_of(reserved).is_some() {
            return Err(Error::Precondition(alloc::format!("variable name `{reserved}` is reserved")));
        }
    }
    for n in f.sig().names() {
        if n.starts_with('d') && f.sig().index_of(&n[1..]).is_some() {
            return Err(Error::Precondition(alloc::format!("variable name `{n}` clashes with a derivative")));
        }
    }
    Ok(f.sig().names().to_vec())
}

fn names_ref(names: &[String]) -> Vec<&str> {
    names.iter().map(|s| s.as_str()).collect()
}

fn check_nonconstant(f: &Element) -> Result<()> {
    if f.total_degree() == 0 {
        return Err(Error::ConstantInput);
    }
    Ok(())
}

/// The algebra `D[s]` on the positions of `f`.
pub fn ds_algebra(f: &Element) -> Result<Algebra> {
    let names = variable_names(f)?;
    Ok(Algebra::new(Signature::weyl_s(&names_ref(&names))?))
}

/// The Weyl algebra `D` on the positions of `f`.
pub fn d_algebra(f: &Element) -> Result<Algebra> {
    let names = variable_names(f)?;
    Ok(Algebra::new(Signature::weyl(&names_ref(&names))?))
}

/// Weight 1 on every momentum, then degrevlex: the order under which
/// annihilators are canonicalized and ∂-orders read off leading terms.
pub fn ann_order(sig: &Signature) -> MonomialOrder {
    let w: Vec<i32> = (0..sig.len()).map(|i| (sig.role(i) == Role::Momentum) as i32).collect();
    MonomialOrder::weighted(&w)
}

/// Image of a commutative polynomial in `alg` (names matched).
fn embed(f: &Element, alg: &Algebra) -> Result<Element> {
    f.lift_by_name(alg)
}

fn partial(f: &Element, name: &str) -> Element {
    let i = f.sig().index_of(name).expect("variable of f");
    f.derivative(i)
}

/// Malgrange's ideal `<t - f, dx_i + f_i dt>` in `D_{x,t}`.
pub fn malgrange_ideal(f: &Element) -> Result<(Algebra, Vec<Element>)> {
    check_nonconstant(f)?;
    let names = variable_names(f)?;
    let alg = Algebra::new(Signature::weyl_t(&names_ref(&names))?);
    let t = alg.var("t").unwrap();
    let dt = alg.var("dt").unwrap();
    let mut gens = alloc::vec![t.sub(&embed(f, &alg)?)?];
    for n in &names {
        let d = alg.var(&alloc::format!("d{n}")).unwrap();
        gens.push(d.add(&embed(&partial(f, n), &alg)?.mul(&dt)?)?);
    }
    Ok((alg, gens))
}

/// `t^i dt^i -> prod_{k<i} (-s - 1 - k)` on a weight-zero element of
/// `D_{x,t}`, landing in `D[s]`.
fn rewrite_weight_zero(e: &Element, ds: &Algebra) -> Result<Element> {
    let sig = e.sig();
    let t = sig.index_of("t").unwrap();
    let dt = sig.index_of("dt").unwrap();
    let s = Element::var(ds, ds.sig().index_of("s").unwrap());
    let mut out = Element::zero(ds);
    for (m, c) in e.terms() {
        let i = m.exp(t);
        if m.exp(dt) != i {
            return Err(Error::Precondition("element is not of weight zero".into()));
        }
        let mut n = Monomial::ONE;
        for v in 0..sig.len() {
            if v == t || v == dt || m.exp(v) == 0 {
                continue;
            }
            let j = ds.sig().index_of(sig.name(v)).ok_or_else(|| Error::Precondition("unexpected variable".into()))?;
            n.set_exp(j, m.exp(v));
        }
        let mut factor = Element::constant(ds, c.clone());
        for k in 0..i {
            let lin = s.neg().sub(&Element::constant(ds, rat_int(1 + k as i64)))?;
            factor = factor.mul(&lin)?;
        }
        // x, dx and s commute with s-polynomials up to normal order
        out = out.add(&Element::monomial(ds, n, Rational::one()).mul(&factor)?)?;
    }
    Ok(out)
}

fn finish(f: &Element, method: AnnMethod, ds: &Algebra, gens: Vec<Element>) -> Result<Annihilator> {
    let order = ann_order(ds.sig());
    let basis = groebner::groebner(ds, &gens, &order)?;
    let momenta = ds.sig().momenta();
    let max_order = basis.elements().iter().map(|g| g.degree_in(&momenta)).max().unwrap_or(0);
    Ok(Annihilator { f: f.clone(), method, basis, max_order })
}

/// `ann_{D[s]}(f^s)` by eliminating `u, v` from the two-parameter ideal,
/// computed in the homogenized algebra.
pub fn ann_fs_oaku(f: &Element) -> Result<Annihilator> {
    check_nonconstant(f)?;
    let names = variable_names(f)?;
    let alg = Algebra::new(Signature::weyl_tuv(&names_ref(&names))?);
    let v = |n: &str| alg.var(n).unwrap();
    let (t, dt, u, vv) = (v("t"), v("dt"), v("u"), v("v"));
    let mut gens = alloc::vec![t.sub(&u.mul(&embed(f, &alg)?)?)?];
    for n in &names {
        let d = v(&alloc::format!("d{n}"));
        gens.push(d.add(&u.mul(&embed(&partial(f, n), &alg)?)?.mul(&dt)?)?);
    }
    gens.push(u.mul(&vv)?.sub(&Element::one(&alg))?);
    let ui = alg.sig().index_of("u").unwrap();
    let vi = alg.sig().index_of("v").unwrap();
    let order = MonomialOrder::elimination(&[ui, vi]);
    let basis = groebner::groebner_homogenized(&alg, &gens, &order)?;
    let ti = alg.sig().index_of("t").unwrap();
    let dti = alg.sig().index_of("dt").unwrap();
    let ds = ds_algebra(f)?;
    let mut out = Vec::new();
    for b in basis {
        if b.involves(ui) || b.involves(vi) {
            continue;
        }
        // weight-d members enter the weight-zero part as t^d b or dt^-d b
        let (m, _) = &b.terms()[0];
        let d = m.exp(dti) as i32 - m.exp(ti) as i32;
        let shifted = match d.cmp(&0) {
            core::cmp::Ordering::Equal => b,
            core::cmp::Ordering::Greater => t.pow(d as u32).mul(&b)?,
            core::cmp::Ordering::Less => dt.pow((-d) as u32).mul(&b)?,
        };
        out.push(rewrite_weight_zero(&shifted, &ds)?);
    }
    finish(f, AnnMethod::Oaku, &ds, out)
}

/// `ann_{D[s]}(f^s)` by eliminating `dt` from `D<s, dt>`.
pub fn ann_fs_bm(f: &Element) -> Result<Annihilator> {
    ann_fs_bm_with(f, false)
}

/// Same, optionally running the elimination through the homogenized
/// algebra.
pub fn ann_fs_bm_with(f: &Element, homogenize: bool) -> Result<Annihilator> {
    check_nonconstant(f)?;
    let names = variable_names(f)?;
    let alg = Algebra::new(Signature::weyl_s_dt(&names_ref(&names))?);
    let s = alg.var("s").unwrap();
    let dt = alg.var("dt").unwrap();
    let mut gens = alloc::vec![s.add(&embed(f, &alg)?.mul(&dt)?)?];
    for n in &names {
        let d = alg.var(&alloc::format!("d{n}")).unwrap();
        gens.push(d.add(&embed(&partial(f, n), &alg)?.mul(&dt)?)?);
    }
    let dti = alg.sig().index_of("dt").unwrap();
    let (sub, elim) = groebner::eliminate_with(&alg, &gens, &[dti], homogenize)?;
    let ds = ds_algebra(f)?;
    let lifted = elim.iter().map(|e| e.lift_by_name(&ds)).collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(sub.sig().names(), ds.sig().names());
    finish(f, AnnMethod::BrianconMaisonobe, &ds, lifted)
}

/// Both routes; errors if their reduced bases differ.
pub fn ann_fs(f: &Element) -> Result<Annihilator> {
    ann_fs_bm(f)
}

/// `ann_D(f^γ)` for a negative integer γ as `(ann + D[s](s - γ)) ∩ D`.
/// Requires every integral root of `b_f` to be at least γ.
pub fn ann_power(f: &Element, gamma: i64) -> Result<LeftIdeal> {
    let b = bfunction::bpoly(f, Method::MinPoly)?;
    let ann = ann_fs(f)?;
    ann_power_with(&ann, &b, gamma)
}

pub fn ann_power_with(ann: &Annihilator, b: &BFunction, gamma: i64) -> Result<LeftIdeal> {
    if gamma >= 0 {
        return Err(Error::Precondition("exponent must be a negative integer".into()));
    }
    let g = rat_int(gamma);
    if let Some(r) = b.integral_roots().into_iter().find(|r| r < &g) {
        return Err(Error::IntegralRootBelow { root: r, gamma: g });
    }
    let ds = ann.algebra();
    let s = ds.var("s").unwrap();
    let mut gens = ann.generators().to_vec();
    gens.push(s.sub(&Element::constant(ds, g))?);
    let si = ds.sig().index_of("s").unwrap();
    let (sub, elim) = groebner::eliminate(ds, &gens, &[si])?;
    let d = d_algebra(&ann.f)?;
    let lifted = elim.iter().map(|e| e.lift_by_name(&d)).collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(sub.sig().names(), d.sig().names());
    LeftIdeal::new(&d, lifted)?.with_basis(&ann_order(d.sig()))
}

/// Whether `ann|_{s=γ}` is known to equal `ann_D(f^γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Exact,
    LowerBound,
}

impl Exactness {
    pub fn tag(&self) -> &'static str {
        match self {
            Exactness::Exact => "EXACT",
            Exactness::LowerBound => "LOWER-BOUND",
        }
    }
}

/// Substitute `s = γ` into the annihilator. Exact when no root of `b_f`
/// lies in `{γ-1, γ-2, ...}`.
pub fn ann_eval(f: &Element, gamma: &Rational) -> Result<(LeftIdeal, Exactness)> {
    let b = bfunction::bpoly(f, Method::MinPoly)?;
    let ann = ann_fs(f)?;
    ann_eval_with(&ann, &b, gamma)
}

pub fn ann_eval_with(ann: &Annihilator, b: &BFunction, gamma: &Rational) -> Result<(LeftIdeal, Exactness)> {
    let ds = ann.algebra();
    let si = ds.sig().index_of("s").unwrap();
    let d = d_algebra(&ann.f)?;
    let mut gens = Vec::new();
    for g in ann.generators() {
        let e = g.substitute(si, gamma).lift_by_name(&d)?;
        if !e.is_zero() {
            gens.push(e);
        }
    }
    let hits = b.roots.iter().any(|r| {
        let k = gamma - &r.value;
        k.is_integer() && k.is_positive()
    });
    let ideal = LeftIdeal::new(&d, gens)?.with_basis(&ann_order(d.sig()))?;
    Ok((ideal, if hits { Exactness::LowerBound } else { Exactness::Exact }))
}

/// Whether the members of order at most one in a basis (computed under
/// an order starting with the ∂-weight) generate the whole ideal.
pub fn generated_in_order_one(basis: &GroebnerBasis) -> Result<bool> {
    let momenta = basis.algebra().sig().momenta();
    let low: Vec<Element> = basis.elements().iter().filter(|g| g.degree_in(&momenta) <= 1).cloned().collect();
    if low.len() == basis.len() {
        return Ok(true);
    }
    let sub = groebner::groebner(basis.algebra(), &low, basis.order())?;
    sub.contains_all(basis.elements())
}

/// Which annihilator the order-one test of `is_as` runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum AsVariant {
    /// `ann_{D[s]}(f^s)`
    #[default]
    Parametric,
    /// `ann_D(f^s) = ann_{D[s]}(f^s) ∩ D`
    Weyl,
}

/// `ann_D(f^s)`: the `s`-free part of the parametric annihilator.
pub fn ann_d_fs(ann: &Annihilator) -> Result<LeftIdeal> {
    let ds = ann.algebra();
    let si = ds.sig().index_of("s").unwrap();
    let (_, elim) = groebner::eliminate(ds, ann.generators(), &[si])?;
    let d = d_algebra(&ann.f)?;
    let lifted = elim.iter().map(|e| e.lift_by_name(&d)).collect::<Result<Vec<_>>>()?;
    LeftIdeal::new(&d, lifted)?.with_basis(&ann_order(d.sig()))
}

/// Condition (A_s): the annihilator of `f^s` is generated by operators of
/// order one.
pub fn is_as(f: &Element, variant: AsVariant) -> Result<bool> {
    is_as_with(&ann_fs(f)?, variant)
}

pub fn is_as_with(ann: &Annihilator, variant: AsVariant) -> Result<bool> {
    match variant {
        AsVariant::Parametric => generated_in_order_one(&ann.basis),
        AsVariant::Weyl => generated_in_order_one(ann_d_fs(ann)?.cached_basis().expect("cached")),
    }
}

/// Condition (B_1): `-1` is the only integral root of `b_f`.
pub fn is_b1(f: &Element) -> Result<bool> {
    Ok(is_b1_with(&bfunction::bpoly(f, Method::MinPoly)?))
}

pub fn is_b1_with(b: &BFunction) -> bool {
    let ints = b.integral_roots();
    !ints.is_empty() && ints.iter().all(|r| r == &-Rational::one())
}

/// Condition (A_1): `ann_D(1/f)` is generated in order one. Only decided
/// when (B_1) holds.
pub fn is_a1(f: &Element) -> Result<bool> {
    let b = bfunction::bpoly(f, Method::MinPoly)?;
    let ann = ann_fs(f)?;
    is_a1_with(&ann, &b)
}

pub fn is_a1_with(ann: &Annihilator, b: &BFunction) -> Result<bool> {
    if !is_b1_with(b) {
        return Err(Error::Unsupported("(A_1) is only decided when (B_1) holds".to_string()));
    }
    let ideal = ann_power_with(ann, b, -1)?;
    generated_in_order_one(ideal.cached_basis().expect("cached"))
}

/// `R ∩ (ann_{D[s]}(f^s) + D[s](f, f_1, ..., f_n))` next to the Tjurina
/// ideal `(f, f_1, ..., f_n)`; returns both reduced bases (in `Q[x]`).
pub fn tjurina_comparison(ann: &Annihilator) -> Result<(Vec<Element>, Vec<Element>)> {
    let ds = ann.algebra();
    let f = &ann.f;
    let mut gens = ann.generators().to_vec();
    let mut tj = alloc::vec![f.clone()];
    for n in f.sig().names() {
        tj.push(partial(f, n));
    }
    for g in &tj {
        gens.push(embed(g, ds)?);
    }
    let kill: Vec<usize> = (0..ds.len()).filter(|&i| ds.sig().role(i) != Role::Position).collect();
    let (_, elim) = groebner::eliminate(ds, &gens, &kill)?;
    let ring = f.algebra();
    let lifted = elim.iter().map(|e| e.lift_by_name(ring)).collect::<Result<Vec<_>>>()?;
    let o = MonomialOrder::degrevlex();
    let a = groebner::groebner(ring, &lifted, &o)?.elements().to_vec();
    let t = groebner::groebner(ring, &tj, &o)?.elements().to_vec();
    Ok((a, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::{annihilates_fs, apply_malgrange, polynomial_ring};
    use num_traits::Zero;
    use alloc::string::ToString;

    fn poly(names: &[&str], build: impl Fn(&[Element]) -> Element) -> Element {
        let r = polynomial_ring(names).unwrap();
        let vars: Vec<Element> = names.iter().map(|n| r.var(n).unwrap()).collect();
        build(&vars)
    }

    fn strings(b: &GroebnerBasis) -> Vec<String> {
        b.elements().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn malgrange_generators() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let (_, gens) = malgrange_ideal(&f).unwrap();
        let s: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["-y^3 - x^2 + t", "2*x*dt + dx", "3*y^2*dt + dy"]);
        for g in &gens {
            assert!(apply_malgrange(g, &f).unwrap().is_zero());
        }
    }

    #[test]
    fn smooth_both_routes() {
        let f = poly(&["x"], |v| v[0].clone());
        let a = ann_fs_oaku(&f).unwrap();
        let b = ann_fs_bm(&f).unwrap();
        assert_eq!(strings(&a.basis), ["x*dx - s"]);
        assert_eq!(a.basis, b.basis);
    }

    #[test]
    fn square_of_a_line() {
        let f = poly(&["x"], |v| v[0].pow(2));
        let a = ann_fs_bm(&f).unwrap();
        assert_eq!(strings(&a.basis), ["x*dx - 2*s"]);
    }

    #[test]
    fn normal_crossing() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let a = ann_fs_oaku(&f).unwrap();
        let b = ann_fs_bm(&f).unwrap();
        assert_eq!(a.basis, b.basis);
        assert_eq!(strings(&a.basis), ["y*dy - s", "x*dx - s"]);
    }

    #[test]
    fn cusp_annihilator() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let a = ann_fs_oaku(&f).unwrap();
        let b = ann_fs_bm(&f).unwrap();
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.max_order, 1);
        for g in a.generators() {
            assert!(annihilates_fs(g, &f).unwrap(), "{g}");
        }
        // Euler field and the Hamiltonian field
        let ds = a.algebra();
        let e = Element::from_terms(ds, [
            (Monomial::from_exps(&[1, 0, 1, 0, 0]), Rational::new(1.into(), 2.into())),
            (Monomial::from_exps(&[0, 1, 0, 1, 0]), Rational::new(1.into(), 3.into())),
            (Monomial::from_exps(&[0, 0, 0, 0, 1]), rat_int(-1)),
        ]);
        assert!(a.basis.contains(&e).unwrap());
    }

    #[test]
    fn powers_and_evaluations() {
        let f = poly(&["x"], |v| v[0].clone());
        let ideal = ann_power(&f, -1).unwrap();
        let s: Vec<String> = ideal.gens().iter().map(|e| e.to_string()).collect();
        assert_eq!(s, ["x*dx + 1"]);
        let (half, ex) = ann_eval(&f, &Rational::new(1.into(), 2.into())).unwrap();
        assert_eq!(ex, Exactness::Exact);
        assert_eq!(half.gens()[0].to_string(), "x*dx - 1/2");
        let (zero, ex) = ann_eval(&f, &Rational::zero()).unwrap();
        assert_eq!(ex, Exactness::LowerBound);
        assert_eq!(zero.gens()[0].to_string(), "x*dx");
    }

    #[test]
    fn normal_crossing_power() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let ideal = ann_power(&f, -1).unwrap();
        let s: Vec<String> = ideal.gens().iter().map(|e| e.to_string()).collect();
        assert_eq!(s, ["y*dy + 1", "x*dx + 1"]);
    }

    #[test]
    fn cusp_conditions() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        assert!(is_b1(&f).unwrap());
        assert!(is_a1(&f).unwrap());
        assert!(is_as(&f, AsVariant::Parametric).unwrap());
        assert!(is_as(&f, AsVariant::Weyl).unwrap());
        let (_, ex) = ann_eval(&f, &Rational::new((-5).into(), 6.into())).unwrap();
        assert_eq!(ex, Exactness::Exact);
    }
}
