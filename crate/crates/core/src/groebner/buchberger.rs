//! Buchberger's algorithm for left ideals (and left submodules of free
//! modules) in solvable algebras.
//!
//! Pair selection is by sugar, then by the lcm under the active order,
//! then by generator indices. Only the chain criteria of Gebauer and
//! Moeller are applied: the coprime-leading-monomial criterion fails as
//! soon as two letters do not commute.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::monomial::Monomial;

use super::poly::{Poly, Ring};
use super::reduce::{normal_form, Reducers};

/// Knobs for the pair loop; the defaults are what every caller uses.
#[derive(Clone, Copy, Debug)]
pub struct GbOptions {
    /// Apply the chain criteria to drop redundant pairs.
    pub criteria: bool,
    /// Perturb the tie-break between pairs of equal sugar (testing only).
    pub pair_seed: Option<u64>,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { criteria: true, pair_seed: None }
    }
}

#[derive(Clone, Debug)]
enum Source {
    Input(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Task {
    src: Source,
    lcm: Monomial,
    sugar: u32,
    key: u64,
}

fn mix(seed: u64, a: usize, b: usize) -> u64 {
    // splitmix64 finalizer on the pair indices
    let mut z = seed ^ ((a as u64) << 32 | b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct State<'r, 'a> {
    ring: &'r Ring<'a>,
    opts: GbOptions,
    basis: Vec<Poly>,
    active: Vec<bool>,
    tasks: Vec<Task>,
}

impl<'r, 'a> State<'r, 'a> {
    fn key(&self, a: usize, b: usize) -> u64 {
        match self.opts.pair_seed {
            Some(seed) => mix(seed, a, b),
            None => 0,
        }
    }

    fn task_cmp(&self, x: &Task, y: &Task) -> Ordering {
        x.sugar
            .cmp(&y.sugar)
            .then_with(|| x.key.cmp(&y.key))
            .then_with(|| self.ring.cmp(&x.lcm, &y.lcm))
            .then_with(|| match (&x.src, &y.src) {
                (Source::Input(a), Source::Input(b)) => a.cmp(b),
                (Source::Input(_), Source::Pair(..)) => Ordering::Less,
                (Source::Pair(..), Source::Input(_)) => Ordering::Greater,
                (Source::Pair(a, b), Source::Pair(c, d)) => (b, a).cmp(&(d, c)),
            })
    }

    fn pop(&mut self) -> Option<Task> {
        if self.tasks.is_empty() {
            return None;
        }
        let mut best = 0;
        for i in 1..self.tasks.len() {
            if self.task_cmp(&self.tasks[i], &self.tasks[best]) == Ordering::Less {
                best = i;
            }
        }
        Some(self.tasks.swap_remove(best))
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Poly {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let qf = self.ring.mul_monomial(&f.lm().quotient(lcm), f);
        let qg = self.ring.mul_monomial(&g.lm().quotient(lcm), g);
        let d = f.lc().gcd(g.lc());
        let a = g.lc().div_exact(&d);
        let b = f.lc().div_exact(&d);
        let terms = self.ring.combine(&a, &qf.terms, &b, &qg.terms);
        Poly { terms, sugar: qf.sugar.max(qg.sugar) }
    }

    fn add(&mut self, p: Poly) {
        let k = self.basis.len();
        let hk = *p.lm();
        self.basis.push(p);
        self.active.push(true);
        let sugar_k = self.basis[k].sugar;
        let mut fresh: Vec<Task> = Vec::new();
        for i in 0..k {
            if !self.active[i] || self.basis[i].lm().comp() != hk.comp() {
                continue;
            }
            let li = *self.basis[i].lm();
            let lcm = li.lcm(&hk);
            let sugar = (self.basis[i].sugar + lcm.degree() - li.degree()).max(sugar_k + lcm.degree() - hk.degree());
            fresh.push(Task { src: Source::Pair(i, k), lcm, sugar, key: self.key(i, k) });
        }
        if !self.opts.criteria {
            self.tasks.extend(fresh);
            return;
        }
        // B_k: old pairs whose lcm is a proper multiple through hk
        let basis = &self.basis;
        self.tasks.retain(|t| match t.src {
            Source::Input(_) => true,
            Source::Pair(i, j) => {
                if !hk.divides(&t.lcm) {
                    return true;
                }
                let lik = basis[i].lm().lcm(&hk);
                let ljk = basis[j].lm().lcm(&hk);
                lik == t.lcm || ljk == t.lcm
            }
        });
        // M: drop (i,k) when another new lcm properly divides it
        let keep: Vec<bool> = (0..fresh.len())
            .map(|a| {
                !fresh.iter().enumerate().any(|(b, other)| b != a && other.lcm.divides(&fresh[a].lcm) && other.lcm != fresh[a].lcm)
            })
            .collect();
        let mut kept: Vec<Task> = fresh.into_iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t).collect();
        // F: one pair per distinct lcm
        let mut out: Vec<Task> = Vec::with_capacity(kept.len());
        kept.sort_by(|x, y| self.ring.cmp(&x.lcm, &y.lcm));
        for t in kept {
            if out.last().map_or(false, |l: &Task| l.lcm == t.lcm) {
                continue;
            }
            out.push(t);
        }
        self.tasks.extend(out);
        for i in 0..k {
            if self.active[i] && hk.divides(self.basis[i].lm()) {
                self.active[i] = false;
            }
        }
    }
}

/// Groebner basis of the left module generated by `input` (components
/// are carried by the monomials). Returns a reduced basis: primitive
/// integer members with positive leading coefficient, sorted by leading
/// monomial ascending.
pub(crate) fn buchberger(ring: &Ring<'_>, input: Vec<Poly>, opts: GbOptions) -> Vec<Poly> {
    let input: Vec<Poly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    let module = input.iter().any(|p| p.terms.iter().any(|t| t.m.comp() != 0));
    let mut st = State { ring, opts, basis: Vec::new(), active: Vec::new(), tasks: Vec::new() };
    for (idx, p) in input.iter().enumerate() {
        st.tasks.push(Task { src: Source::Input(idx), lcm: *p.lm(), sugar: p.sugar, key: st.key(idx, usize::MAX) });
    }
    while let Some(task) = st.pop() {
        let p = match task.src {
            Source::Input(idx) => input[idx].clone(),
            Source::Pair(i, j) => st.spoly(i, j, &task.lcm),
        };
        if p.is_zero() {
            continue;
        }
        let reducers = Reducers::new(st.basis.iter().zip(&st.active).filter(|(_, a)| **a).map(|(p, _)| p));
        let r = normal_form(ring, p, &reducers);
        if r.is_zero() {
            continue;
        }
        if !module && r.lm().is_one() {
            let mut one = r;
            one.terms.truncate(1);
            one.make_primitive();
            return alloc::vec![one];
        }
        st.add(r);
    }
    let State { basis, active, .. } = st;
    interreduce(ring, basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect())
}

/// Make a Groebner basis minimal and reduced, then sort it.
pub(crate) fn interreduce(ring: &Ring<'_>, mut g: Vec<Poly>) -> Vec<Poly> {
    g.retain(|p| !p.is_zero());
    // minimal: drop members whose lm is divisible by another's
    g.sort_by(|a, b| ring.cmp(a.lm(), b.lm()).then_with(|| a.len().cmp(&b.len())));
    let mut minimal: Vec<Poly> = Vec::with_capacity(g.len());
    for p in g {
        if minimal.iter().any(|q| q.lm().divides(p.lm())) {
            continue;
        }
        minimal.push(p);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let reducers = Reducers::new(minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p));
        out.push(normal_form(ring, minimal[i].clone(), &reducers));
    }
    out.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Algebra;
    use crate::monomial::MonomialOrder;
    use crate::signature::Signature;

    #[test]
    fn unit_ideal_in_first_weyl_algebra() {
        let alg = Algebra::new(Signature::weyl(&["x"]).unwrap());
        let ord = MonomialOrder::degrevlex();
        let ring = Ring::new(&alg, &ord);
        let x = ring.from_element(&alg.var("x").unwrap());
        let d = ring.from_element(&alg.var("dx").unwrap());
        let gb = buchberger(&ring, alloc::vec![d, x], GbOptions::default());
        assert_eq!(gb.len(), 1);
        assert!(gb[0].lm().is_one());
    }
}
