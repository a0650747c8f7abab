//! Logarithmic derivations along `f`, Euler fields, freeness and the
//! logarithmic ideal.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::annihilator;
use crate::apply::exact_quotient;
use crate::charvariety::SymbolIdeal;
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::groebner::{self, all_minors, krull_dim, projective_dimension, syzygies};
use crate::monomial::{monomials_up_to, Monomial, MonomialOrder};
use crate::rational::Rational;
use crate::signature::Signature;

/// `sum_i c_i d_i` as its coefficient tuple.
pub type Derivation = Vec<Element>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivationKind {
    /// `theta(f) ∈ (f)`
    Log,
    /// `theta(f) = 0`
    Log0,
}

/// `n` logarithmic derivations whose coefficient matrix has determinant
/// `unit * f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaitoCertificate {
    pub basis: Vec<Derivation>,
    pub unit: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSet {
    pub generators: Vec<Derivation>,
    pub kind: DerivationKind,
}

/// `sum_i c_i f_i = f`, found with coefficients of degree at most
/// `degbound`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerField {
    pub coeffs: Derivation,
    pub degbound: u32,
}

fn partials(f: &Element) -> Vec<Element> {
    (0..f.sig().len()).map(|i| f.derivative(i)).collect()
}

/// `theta(g)` for a derivation over the ring of `g`.
pub fn apply_derivation(theta: &[Element], g: &Element) -> Result<Element> {
    let mut out = Element::zero(g.algebra());
    for (i, c) in theta.iter().enumerate() {
        out = out.add(&c.mul(&g.derivative(i))?)?;
    }
    Ok(out)
}

/// Integer coefficients with content one, leading entry positive.
fn normalize(v: Vec<Element>) -> Vec<Element> {
    let order = MonomialOrder::degrevlex();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for e in &v {
        for (_, c) in e.terms() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
    }
    if num.is_zero() {
        return v;
    }
    let mut scale = Rational::new(den, num);
    let lead = v.iter().find(|e| !e.is_zero()).and_then(|e| e.leading(&order)).map(|(_, c)| c.clone());
    if lead.map_or(false, |c| c.is_negative()) {
        scale = -scale;
    }
    v.into_iter().map(|e| e.scale(&scale)).collect()
}

fn check_nonconstant(f: &Element) -> Result<()> {
    if !f.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    if f.total_degree() == 0 {
        return Err(Error::ConstantInput);
    }
    Ok(())
}

/// Generators of `Der(-log f)`: syzygies of `(f_1, ..., f_n, f)` with the
/// last entry dropped.
pub fn der_log(f: &Element) -> Result<DerivationSet> {
    check_nonconstant(f)?;
    let alg = f.algebra();
    let mut cols: Vec<Vec<Element>> = partials(f).into_iter().map(|p| alloc::vec![p]).collect();
    cols.push(alloc::vec![f.clone()]);
    let n = f.sig().len();
    let mut gens: Vec<Derivation> = Vec::new();
    for mut s in syzygies(alg, &cols)? {
        s.truncate(n);
        if s.iter().any(|e| !e.is_zero()) {
            gens.push(normalize(s));
        }
    }
    let gens = groebner::prune(alg, gens);
    Ok(DerivationSet { generators: gens, kind: DerivationKind::Log })
}

/// Generators of `Der_0(-log f)`: syzygies of the partials.
pub fn der_log0(f: &Element) -> Result<DerivationSet> {
    check_nonconstant(f)?;
    let cols: Vec<Vec<Element>> = partials(f).into_iter().map(|p| alloc::vec![p]).collect();
    let gens = syzygies(f.algebra(), &cols)?.into_iter().map(normalize).collect();
    Ok(DerivationSet { generators: gens, kind: DerivationKind::Log0 })
}

/// Least-norm solution of `A x = b` over Q, or `None` when inconsistent.
fn solve_least_norm(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<(Vec<Rational>, Rational)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    // reduced row echelon form
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r].0[c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank].0[c].recip();
        let (pr, pb) = {
            let (r, b) = &rows[rank];
            (r.iter().map(|x| x * &inv).collect::<Vec<_>>(), b * &inv)
        };
        rows[rank] = (pr.clone(), pb.clone());
        for r in 0..rows.len() {
            if r == rank || rows[r].0[c].is_zero() {
                continue;
            }
            let k = rows[r].0[c].clone();
            for (x, y) in rows[r].0.iter_mut().zip(&pr) {
                *x -= &k * y;
            }
            rows[r].1 -= &k * &pb;
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, b)| !b.is_zero()) {
        return None;
    }
    rows.truncate(rank);
    // x = R^T y with (R R^T) y = b'
    let mut gram: Vec<Vec<Rational>> = (0..rank)
        .map(|i| (0..rank).map(|j| rows[i].0.iter().zip(&rows[j].0).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let mut rhs: Vec<Rational> = rows.iter().map(|(_, b)| b.clone()).collect();
    for c in 0..rank {
        let p = (c..rank).find(|&r| !gram[r][c].is_zero())?;
        gram.swap(c, p);
        rhs.swap(c, p);
        let inv = gram[c][c].recip();
        for x in gram[c].iter_mut() {
            *x *= &inv;
        }
        rhs[c] *= &inv;
        for r in 0..rank {
            if r == c || gram[r][c].is_zero() {
                continue;
            }
            let k = gram[r][c].clone();
            let pivot = gram[c].clone();
            for (x, y) in gram[r].iter_mut().zip(&pivot) {
                *x -= &k * y;
            }
            let pc = rhs[c].clone();
            rhs[r] -= &k * &pc;
        }
    }
    let mut x = alloc::vec![Rational::zero(); cols];
    for (i, (row, _)) in rows.iter().enumerate() {
        for (xj, rj) in x.iter_mut().zip(row) {
            *xj += &rhs[i] * rj;
        }
    }
    Some(x)
}

/// A polynomial Euler field `sum c_i d_i` with `sum c_i f_i = f`. A
/// homogeneous `f` of degree `d` gets `(1/d) sum x_i d_i`; otherwise the
/// solution of least Euclidean norm in coefficient space is returned.
pub fn euler_field(f: &Element, degbound: u32) -> Result<Option<EulerField>> {
    check_nonconstant(f)?;
    let alg = f.algebra();
    let n = f.sig().len();
    let d = f.total_degree();
    if degbound >= 1 && f.terms().iter().all(|(m, _)| m.degree() == d) {
        let c = Rational::new(1.into(), (d as i64).into());
        let coeffs = (0..n).map(|i| Element::var(alg, i).scale(&c)).collect();
        return Ok(Some(EulerField { coeffs, degbound }));
    }
    let basis = monomials_up_to(n, degbound);
    let fx = partials(f);
    let mut eqs: Vec<Monomial> = Vec::new();
    let mut entries: Vec<(usize, Monomial, Rational)> = Vec::new();
    for (i, p) in fx.iter().enumerate() {
        for (k, m) in basis.iter().enumerate() {
            for (pm, c) in p.terms() {
                let t = pm.mul(m);
                entries.push((i * basis.len() + k, t, c.clone()));
                if !eqs.contains(&t) {
                    eqs.push(t);
                }
            }
        }
    }
    for (m, _) in f.terms() {
        if !eqs.contains(m) {
            eqs.push(*m);
        }
    }
    let unknowns = n * basis.len();
    let mut a = alloc::vec![alloc::vec![Rational::zero(); unknowns]; eqs.len()];
    for (j, t, c) in entries {
        let r = eqs.iter().position(|e| *e == t).expect("listed");
        a[r][j] += c;
    }
    let mut b = alloc::vec![Rational::zero(); eqs.len()];
    for (m, c) in f.terms() {
        let r = eqs.iter().position(|e| e == m).expect("listed");
        b[r] = c.clone();
    }
    let Some(x) = solve_least_norm(&a, &b) else { return Ok(None) };
    let coeffs = (0..n)
        .map(|i| Element::from_terms(alg, basis.iter().enumerate().map(|(k, m)| (*m, x[i * basis.len() + k].clone()))))
        .collect();
    Ok(Some(EulerField { coeffs, degbound }))
}

/// `f` has no repeated factor: the singular locus of `f = 0` has
/// codimension at least two, i.e. `dim R/(f, J_f) <= n - 2`.
pub fn is_reduced(f: &Element) -> Result<bool> {
    check_nonconstant(f)?;
    let mut gens = alloc::vec![f.clone()];
    gens.extend(partials(f));
    Ok(krull_dim(f.algebra(), &gens)? <= f.sig().len() as i64 - 2)
}

/// Determinant of a square matrix given by columns.
pub fn determinant(alg: &Algebra, cols: &[Vec<Element>]) -> Element {
    all_minors(alg, cols, cols.len()).into_iter().next().unwrap_or_else(|| Element::zero(alg))
}

/// Largest generating set searched for a Saito basis.
pub const SAITO_SEARCH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Freeness {
    pub free: bool,
    /// Projective dimension of the Tjurina algebra `R/(f, J_f)`.
    pub tjurina_pd: usize,
    pub certificate: Option<SaitoCertificate>,
}

/// Freeness via the projective dimension of the Tjurina algebra, with a
/// Saito basis when one is found among the generators of `Der(-log f)`.
pub fn is_free(f: &Element) -> Result<Freeness> {
    if !is_reduced(f)? {
        return Err(Error::NonReduced);
    }
    let alg = f.algebra();
    let mut gens = alloc::vec![f.clone()];
    gens.extend(partials(f));
    let pd = projective_dimension(alg, &gens)?;
    let free = pd <= 2;
    let certificate = if free { saito_certificate(f, &der_log(f)?)? } else { None };
    Ok(Freeness { free, tjurina_pd: pd, certificate })
}

/// First `n`-subset (in index order) of the generators with determinant a
/// nonzero constant times `f`.
pub fn saito_certificate(f: &Element, der: &DerivationSet) -> Result<Option<SaitoCertificate>> {
    let n = f.sig().len();
    let gens = &der.generators;
    if gens.len() < n || gens.len() > SAITO_SEARCH_CAP {
        return Ok(None);
    }
    let order = MonomialOrder::degrevlex();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let cols: Vec<Vec<Element>> = idx.iter().map(|&i| gens[i].clone()).collect();
        let det = determinant(f.algebra(), &cols);
        if let Some(q) = exact_quotient(&det, f, &order) {
            if let Some(u) = q.as_constant().filter(|u| !u.is_zero()) {
                return Ok(Some(SaitoCertificate { basis: cols, unit: u }));
            }
        }
        // next combination
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if idx[k] < gens.len() - n + k {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Commutative ring `Q[x, dx]` of symbols on the positions of `f`.
pub fn symbol_ring(f: &Element) -> Result<Algebra> {
    let names = annihilator::variable_names(f)?;
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let sig = Signature::weyl(&refs)?;
    let w: Vec<i32> = (0..sig.len()).map(|i| (i >= refs.len()) as i32).collect();
    Ok(Algebra::new(sig.graded(&w)))
}

/// `sum c_i y_i` in the symbol ring.
pub fn symbol(theta: &[Element], ring: &Algebra) -> Result<Element> {
    let n = theta.len();
    let mut out = Element::zero(ring);
    for (i, c) in theta.iter().enumerate() {
        let y = Element::var(ring, n + i);
        out = out.add(&c.lift_by_name(ring)?.mul(&y)?)?;
    }
    Ok(out)
}

/// Koszul freeness: a Saito basis whose symbols cut the symbol ring down
/// to dimension `n`. False for non-free `f`; `Unsupported` for a free `f`
/// without a certificate.
pub fn is_koszul_free(f: &Element) -> Result<bool> {
    let fr = is_free(f)?;
    if !fr.free {
        return Ok(false);
    }
    let Some(cert) = fr.certificate else {
        return Err(Error::Unsupported("no Saito basis found; Koszul freeness not decided".to_string()));
    };
    koszul_from_certificate(f, &cert)
}

pub fn koszul_from_certificate(f: &Element, cert: &SaitoCertificate) -> Result<bool> {
    let ring = symbol_ring(f)?;
    let syms = cert.basis.iter().map(|t| symbol(t, &ring)).collect::<Result<Vec<_>>>()?;
    Ok(krull_dim(&ring, &syms)? == f.sig().len() as i64)
}

/// The logarithmic ideal: symbols of `Der_0(-log f)`. Needs an Euler
/// field of degree at most `degbound`.
pub fn logarithmic_ideal(f: &Element, degbound: u32) -> Result<SymbolIdeal> {
    if euler_field(f, degbound)?.is_none() {
        return Err(Error::Precondition(alloc::format!("no Euler field of degree <= {degbound}")));
    }
    let ring = symbol_ring(f)?;
    let syms = der_log0(f)?.generators.iter().map(|t| symbol(t, &ring)).collect::<Result<Vec<_>>>()?;
    SymbolIdeal::from_generators(&ring, &syms, "Der_0(-log f)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::polynomial_ring;
    use crate::rational::rat;
    use alloc::string::String;

    fn poly(names: &[&str], build: impl Fn(&[Element]) -> Element) -> Element {
        let r = polynomial_ring(names).unwrap();
        let vars: Vec<Element> = names.iter().map(|n| r.var(n).unwrap()).collect();
        build(&vars)
    }

    fn show(d: &DerivationSet) -> Vec<Vec<String>> {
        d.generators.iter().map(|v| v.iter().map(|e| e.to_string()).collect()).collect()
    }

    #[test]
    fn normal_crossing_derivations() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let d = der_log(&f).unwrap();
        assert_eq!(d.generators.len(), 2);
        for t in &d.generators {
            let r = apply_derivation(t, &f).unwrap();
            assert!(exact_quotient(&r, &f, &MonomialOrder::degrevlex()).is_some());
        }
        let d0 = der_log0(&f).unwrap();
        assert_eq!(show(&d0), [["x", "-y"]]);
    }

    #[test]
    fn cusp_derivations() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let d0 = der_log0(&f).unwrap();
        assert_eq!(show(&d0), [["3*y^2", "-2*x"]]);
        let e = euler_field(&f, 3).unwrap().unwrap();
        let c: Vec<String> = e.coeffs.iter().map(|c| c.to_string()).collect();
        assert_eq!(c, ["1/2*x", "1/3*y"]);
    }

    #[test]
    fn euler_fields() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let e = euler_field(&f, 2).unwrap().unwrap();
        assert_eq!(e.coeffs[0].to_string(), "1/2*x");
        let g = poly(&["x", "y"], |v| v[0].pow(4).add(&v[1].pow(5)).unwrap().add(&v[0].mul(&v[1].pow(4)).unwrap()).unwrap());
        assert!(euler_field(&g, 1).unwrap().is_none());
    }

    #[test]
    fn least_norm_solution() {
        let a = alloc::vec![alloc::vec![rat(1, 1), rat(1, 1)]];
        let x = solve_least_norm(&a, &[rat(1, 1)]).unwrap();
        assert_eq!(x, [rat(1, 2), rat(1, 2)]);
        assert!(solve_least_norm(&[alloc::vec![rat(0, 1)]], &[rat(1, 1)]).is_none());
    }

    #[test]
    fn plane_curve_is_free() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap().mul(&v[0].add(&v[1]).unwrap()).unwrap());
        let fr = is_free(&f).unwrap();
        assert!(fr.free);
        let cert = fr.certificate.unwrap();
        let det = determinant(f.algebra(), &cert.basis);
        assert_eq!(det, f.scale(&cert.unit));
        assert!(is_koszul_free(&f).unwrap());
    }

    #[test]
    fn quadric_cone_is_not_free() {
        let f = poly(&["a", "b", "c", "e"], |v| v[0].mul(&v[1]).unwrap().add(&v[2].mul(&v[3]).unwrap()).unwrap());
        let fr = is_free(&f).unwrap();
        assert!(!fr.free);
        assert_eq!(fr.tjurina_pd, 4);
    }

    #[test]
    fn non_reduced_rejected() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).mul(&v[1]).unwrap());
        assert_eq!(is_free(&f).unwrap_err(), Error::NonReduced);
    }

    #[test]
    fn logarithmic_ideals() {
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let l = logarithmic_ideal(&f, 2).unwrap();
        assert_eq!(l.generators()[0].to_string(), "x*dx - y*dy");
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        let l = logarithmic_ideal(&f, 3).unwrap();
        assert_eq!(l.generators()[0].to_string(), "y^2*dx - 2/3*x*dy");
    }
}
