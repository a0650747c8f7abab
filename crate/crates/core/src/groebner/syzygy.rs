//! Syzygies, free resolutions and projective dimension over a commutative
//! polynomial ring.
//!
//! Module elements are encoded as polynomials whose monomials carry a
//! component index. Syzygies come from one module Groebner basis of the
//! graph `(g_j, e_j)` under an order where the `g` block dominates.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::rational::Rational;

use super::poly::{Poly, Ring};
use super::reduce::Reducers;
use super::{buchberger, GbOptions};

/// A column vector over a commutative algebra.
pub type ModuleVector = Vec<Element>;

fn encode(alg: &Algebra, v: &[Element], offset: usize) -> Element {
    let terms = v
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.terms().iter().map(move |(m, c)| (m.with_comp(offset + i), c.clone())));
    Element::from_terms(alg, terms.collect::<Vec<_>>())
}

fn decode(alg: &Algebra, e: &Element, offset: usize, len: usize) -> ModuleVector {
    let mut parts: Vec<Vec<(Monomial, Rational)>> = alloc::vec![Vec::new(); len];
    for (m, c) in e.terms() {
        parts[m.comp() - offset].push((m.with_comp(0), c.clone()));
    }
    parts.into_iter().map(|t| Element::from_terms(alg, t)).collect()
}

fn check(alg: &Algebra, cols: &[ModuleVector]) -> Result<usize> {
    if !alg.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    let r = cols.first().map_or(0, |c| c.len());
    for c in cols {
        if c.len() != r {
            return Err(Error::Precondition("columns of different length".into()));
        }
        if c.iter().any(|e| e.algebra() != alg) {
            return Err(Error::SignatureMismatch);
        }
    }
    Ok(r)
}

/// Generators of the syzygy module of the columns: all `a` with
/// `sum_j a_j cols[j] = 0`. Redundant generators are pruned.
pub fn syzygies(alg: &Algebra, cols: &[ModuleVector]) -> Result<Vec<ModuleVector>> {
    let r = check(alg, cols)?;
    let m = cols.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let order = MonomialOrder::degrevlex().with_split(r);
    let ring = Ring::new(alg, &order);
    let input: Vec<Poly> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut unit = alloc::vec![Element::zero(alg); m];
            unit[j] = Element::one(alg);
            let e = encode(alg, c, 0).add(&encode(alg, &unit, r)).expect("same algebra");
            ring.from_element(&e)
        })
        .collect();
    let gb = buchberger(&ring, input, GbOptions::default());
    let syz: Vec<ModuleVector> = gb
        .iter()
        .filter(|p| p.lm().comp() >= r)
        .map(|p| decode(alg, &ring.to_element_raw(p), r, m))
        .collect();
    Ok(prune(alg, syz))
}

/// Drop generators lying in the submodule spanned by the others.
pub fn prune(alg: &Algebra, mut gens: Vec<ModuleVector>) -> Vec<ModuleVector> {
    gens.retain(|g| g.iter().any(|e| !e.is_zero()));
    let Some(len) = gens.first().map(|g| g.len()) else { return gens };
    let order = MonomialOrder::degrevlex();
    let ring = Ring::new(alg, &order);
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        if gens.len() == 1 {
            break;
        }
        let others: Vec<Poly> = gens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| ring.from_element(&encode(alg, g, 0)))
            .collect();
        let gb = buchberger(&ring, others, GbOptions::default());
        let reducers = Reducers::new(gb.iter());
        let target = ring.from_element(&encode(alg, &gens[i], 0));
        if super::normal_form(&ring, target, &reducers).is_zero() {
            gens.remove(i);
        }
    }
    debug_assert!(gens.iter().all(|g| g.len() == len));
    gens
}

/// A free resolution `... -> F_2 -> F_1 -> F_0`; `maps[k]` lists the
/// columns of `F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub maps: Vec<Vec<ModuleVector>>,
}

impl Resolution {
    /// Rank of `F_k`.
    pub fn rank(&self, k: usize) -> usize {
        if k == 0 {
            self.maps.first().and_then(|c| c.first()).map_or(0, |c| c.len())
        } else {
            self.maps.get(k - 1).map_or(0, |c| c.len())
        }
    }
}

fn is_unit(e: &Element) -> bool {
    e.as_constant().map_or(false, |c| !c.is_zero())
}

/// Split off a trivial summand wherever a map has a unit entry.
fn prune_units(alg: &Algebra, maps: &mut Vec<Vec<ModuleVector>>) {
    'outer: loop {
        for k in 0..maps.len() {
            let cols = &maps[k];
            let mut hit = None;
            'find: for (j, col) in cols.iter().enumerate() {
                for (i, e) in col.iter().enumerate() {
                    if is_unit(e) {
                        hit = Some((i, j));
                        break 'find;
                    }
                }
            }
            let Some((i, j)) = hit else { continue };
            let pivot_col = maps[k][j].clone();
            let u = pivot_col[i].as_constant().expect("unit");
            // column operations clear row i, then drop row i and column j
            let mut new_cols = Vec::new();
            for (b, col) in maps[k].iter().enumerate() {
                if b == j {
                    continue;
                }
                let factor = col[i].scale(&(Rational::from_integer(1.into()) / &u));
                let mut c = Vec::with_capacity(col.len() - 1);
                for (a, e) in col.iter().enumerate() {
                    if a == i {
                        continue;
                    }
                    let adj = pivot_col[a].mul(&factor).expect("same algebra");
                    c.push(e.sub(&adj).expect("same algebra"));
                }
                new_cols.push(c);
            }
            maps[k] = new_cols;
            if k > 0 {
                maps[k - 1].remove(i);
            }
            if k + 1 < maps.len() {
                for col in maps[k + 1].iter_mut() {
                    col.remove(j);
                }
            }
            if maps[k].is_empty() || maps[k].iter().all(|c| c.is_empty()) {
                maps.truncate(k + if maps[k].is_empty() { 0 } else { 1 });
            }
            let _ = alg;
            continue 'outer;
        }
        break;
    }
    while maps.last().map_or(false, |m| m.is_empty() || m.iter().all(|c| c.iter().all(|e| e.is_zero()))) {
        maps.pop();
    }
}

/// Resolve the module spanned by `gens` (columns in `F_0`) up to `len`
/// maps, pruning unit entries.
pub fn free_resolution(alg: &Algebra, gens: &[ModuleVector], len: usize) -> Result<Resolution> {
    check(alg, gens)?;
    let first = prune(alg, gens.to_vec());
    let mut maps = Vec::new();
    if first.is_empty() {
        return Ok(Resolution { maps });
    }
    maps.push(first);
    while maps.len() < len {
        let syz = syzygies(alg, maps.last().unwrap())?;
        if syz.is_empty() {
            break;
        }
        maps.push(syz);
    }
    prune_units(alg, &mut maps);
    Ok(Resolution { maps })
}

/// Projective dimension of `R/I` for the ideal generated by `gens`.
///
/// With `rho_k = rank(F_{k+1} -> F_k)` read off from exactness, the
/// `p`-th syzygy module is projective iff the `rho`-minors of the next
/// map generate the unit ideal.
pub fn projective_dimension(alg: &Algebra, gens: &[Element]) -> Result<usize> {
    if !alg.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    let n = alg.len();
    let cols: Vec<ModuleVector> = gens.iter().filter(|g| !g.is_zero()).map(|g| alloc::vec![g.clone()]).collect();
    if cols.is_empty() {
        return Ok(0);
    }
    let gb = super::groebner(alg, gens, &MonomialOrder::degrevlex())?;
    if gb.is_unit() {
        return Ok(0);
    }
    let res = free_resolution(alg, &cols, n + 1)?;
    // rank of the image of maps[k]
    let mut rho = Vec::with_capacity(res.maps.len());
    let mut prev = 0usize;
    for k in 0..res.maps.len() {
        let r = res.rank(k) - prev;
        rho.push(r);
        prev = r;
    }
    for p in 0..n {
        match res.maps.get(p) {
            None => return Ok(p),
            Some(cols) => {
                if minors_generate_unit(alg, cols, rho[p])? {
                    return Ok(p);
                }
            }
        }
    }
    Ok(n)
}

/// Whether the `k`-minors of the matrix with the given columns generate
/// the unit ideal.
pub fn minors_generate_unit(alg: &Algebra, cols: &[ModuleVector], k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    if k > rows || k > cols.len() {
        return Ok(false);
    }
    // every entry vanishing at the origin forces every minor to vanish there
    let origin_zero = cols.iter().all(|c| c.iter().all(|e| e.terms().iter().all(|(m, _)| !m.is_one())));
    if origin_zero {
        return Ok(false);
    }
    let minors = all_minors(alg, cols, k);
    if minors.iter().any(is_unit) {
        return Ok(true);
    }
    Ok(super::groebner(alg, &minors, &MonomialOrder::degrevlex())?.is_unit())
}

/// All `k x k` minors (row subsets by columns subsets), via a subset
/// expansion along rows that shares sub-determinants between column sets.
pub fn all_minors(alg: &Algebra, cols: &[ModuleVector], k: usize) -> Vec<Element> {
    let nrows = cols.first().map_or(0, |c| c.len());
    let ncols = cols.len();
    let mut out = Vec::new();
    for rows in subsets(nrows, k) {
        // dets[mask] for masks with popcount = processed rows
        let mut layer: Vec<(u32, Element)> = alloc::vec![(0u32, Element::one(alg))];
        for (depth, &r) in rows.iter().enumerate() {
            let mut next: alloc::collections::BTreeMap<u32, Element> = alloc::collections::BTreeMap::new();
            for (mask, det) in &layer {
                if det.is_zero() {
                    continue;
                }
                for c in 0..ncols {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let entry = &cols[c][r];
                    if entry.is_zero() {
                        continue;
                    }
                    // sign: parity of chosen columns after c
                    let after = (mask >> (c + 1)).count_ones();
                    let mut term = det.mul(entry).expect("same algebra");
                    if after % 2 == 1 {
                        term = term.neg();
                    }
                    let nm = mask | (1 << c);
                    let e = next.entry(nm).or_insert_with(|| Element::zero(alg));
                    *e = e.add(&term).expect("same algebra");
                }
            }
            let _ = depth;
            layer = next.into_iter().collect();
        }
        out.extend(layer.into_iter().map(|(_, d)| d).filter(|d| !d.is_zero()));
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    fn ring(names: &[&str]) -> Algebra {
        Algebra::new(Signature::commutative(names).unwrap())
    }

    #[test]
    fn koszul_syzygy() {
        let a = ring(&["x", "y"]);
        let (x, y) = (a.var("x").unwrap(), a.var("y").unwrap());
        let syz = syzygies(&a, &[alloc::vec![x.clone()], alloc::vec![y.clone()]]).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        let check = s[0].mul(&x).unwrap().add(&s[1].mul(&y).unwrap()).unwrap();
        assert!(check.is_zero());
        assert_eq!(s[0].total_degree(), 1);
    }

    #[test]
    fn pd_of_point() {
        let a = ring(&["x", "y"]);
        let (x, y) = (a.var("x").unwrap(), a.var("y").unwrap());
        assert_eq!(projective_dimension(&a, &[x, y]).unwrap(), 2);
    }

    #[test]
    fn pd_of_hypersurface_and_unit() {
        let a = ring(&["x", "y"]);
        let x = a.var("x").unwrap();
        assert_eq!(projective_dimension(&a, &[x.clone()]).unwrap(), 1);
        assert_eq!(projective_dimension(&a, &[Element::one(&a)]).unwrap(), 0);
    }

    #[test]
    fn pd_of_four_variable_point() {
        let a = ring(&["a", "b", "c", "d"]);
        let gens: Vec<Element> = ["a", "b", "c", "d"].iter().map(|n| a.var(n).unwrap()).collect();
        assert_eq!(projective_dimension(&a, &gens).unwrap(), 4);
    }

    #[test]
    fn minors_of_identity() {
        let a = ring(&["x"]);
        let one = Element::one(&a);
        let z = Element::zero(&a);
        let cols = alloc::vec![alloc::vec![one.clone(), z.clone()], alloc::vec![z, one]];
        let m = all_minors(&a, &cols, 2);
        assert_eq!(m, alloc::vec![Element::one(&a)]);
    }
}
