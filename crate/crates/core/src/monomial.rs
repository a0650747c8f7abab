//! Exponent vectors and monomial orders.
//!
//! A monomial is a dense exponent vector over the signature's variables,
//! read as the normally ordered word `v_0^e_0 v_1^e_1 ...` with the
//! pairing rules of the signature deciding which letters may swap freely.
//! Module elements reuse the same type with a nonzero `comp` index.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// Upper bound on the number of variables of a signature.
pub const MAX_VARS: usize = 15;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    comp: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], comp: 0 };

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Monomial::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn set_exp(&mut self, i: usize, e: u16) {
        self.exps[i] = e;
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn comp(&self) -> usize {
        self.comp as usize
    }

    pub fn with_comp(mut self, c: usize) -> Self {
        self.comp = c as u16;
        self
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Sum of exponents over the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i] as u32).sum()
    }

    /// Exponent-wise sum; keeps the component of `self`.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] += other.exps[i];
        }
        r.comp = self.comp.max(other.comp);
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.comp == other.comp && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` as a ring monomial (component 0). Requires divisibility.
    #[inline]
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::ONE;
        for i in 0..MAX_VARS {
            r.exps[i] = other.exps[i] - self.exps[i];
        }
        r
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] = r.exps[i].max(other.exps[i]);
        }
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support_within(&self, vars: &[bool]) -> bool {
        self.exps.iter().enumerate().all(|(i, &e)| e == 0 || vars.get(i).copied().unwrap_or(false))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    Degrevlex,
    Lex,
}

/// A monomial order: a sequence of integer weight vectors compared in
/// turn, then a tie-break term order. The homogenizing variable (when
/// `skip` is set) is ignored by every comparison except the very last,
/// so orders on D^h compare dehomogenized monomials.
///
/// For module elements, components below `split` form the dominant block
/// (compared first); inside a block the term order decides and the
/// component index breaks ties, smaller index being larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weights: Vec<[i32; MAX_VARS]>,
    tie: TieBreak,
    skip: Option<usize>,
    split: u16,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { weights: Vec::new(), tie: TieBreak::Degrevlex, skip: None, split: 0 }
    }

    pub fn lex() -> Self {
        MonomialOrder { weights: Vec::new(), tie: TieBreak::Lex, skip: None, split: 0 }
    }

    /// Weight vector refined by degrevlex.
    pub fn weighted(w: &[i32]) -> Self {
        Self::degrevlex().then_weight(w)
    }

    /// Block order eliminating the listed variables (weight 1 on them,
    /// then degrevlex).
    pub fn elimination(kill: &[usize]) -> Self {
        let mut w = [0i32; MAX_VARS];
        for &k in kill {
            w[k] = 1;
        }
        Self::weighted(&w)
    }

    /// Append a weight vector; earlier vectors take precedence.
    pub fn then_weight(mut self, w: &[i32]) -> Self {
        let mut row = [0i32; MAX_VARS];
        row[..w.len()].copy_from_slice(w);
        self.weights.push(row);
        self
    }

    pub fn with_tie(mut self, tie: TieBreak) -> Self {
        self.tie = tie;
        self
    }

    pub fn skipping(mut self, h: Option<usize>) -> Self {
        self.skip = h;
        if let Some(h) = h {
            for w in &mut self.weights {
                w[h] = 0;
            }
        }
        self
    }

    pub fn with_split(mut self, split: usize) -> Self {
        self.split = split as u16;
        self
    }

    pub fn skip(&self) -> Option<usize> {
        self.skip
    }

    pub fn weights(&self) -> &[[i32; MAX_VARS]] {
        &self.weights
    }

    pub fn tie(&self) -> TieBreak {
        self.tie
    }

    /// True when the order is a well-order with 1 as minimum on the given
    /// variables: for every variable the first nonzero weight is positive.
    pub fn is_term_order(&self, nvars: usize) -> bool {
        (0..nvars).filter(|&i| Some(i) != self.skip).all(|i| {
            self.weights
                .iter()
                .map(|w| w[i])
                .find(|&x| x != 0)
                .map_or(true, |x| x > 0)
        })
    }

    #[inline]
    pub fn weight_of(&self, row: usize, m: &Monomial) -> i64 {
        let w = &self.weights[row];
        let mut s = 0i64;
        for i in 0..MAX_VARS {
            s += w[i] as i64 * m.exps[i] as i64;
        }
        s
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ba = (a.comp >= self.split) as u8;
        let bb = (b.comp >= self.split) as u8;
        if ba != bb {
            // block 0 (components below split) dominates
            return bb.cmp(&ba);
        }
        for row in 0..self.weights.len() {
            let c = self.weight_of(row, a).cmp(&self.weight_of(row, b));
            if c != Ordering::Equal {
                return c;
            }
        }
        let c = self.tie_cmp(a, b);
        if c != Ordering::Equal {
            return c;
        }
        if a.comp != b.comp {
            return b.comp.cmp(&a.comp);
        }
        match self.skip {
            Some(h) => a.exps[h].cmp(&b.exps[h]),
            None => Ordering::Equal,
        }
    }

    fn tie_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.tie {
            TieBreak::Lex => {
                for i in 0..MAX_VARS {
                    if Some(i) == self.skip {
                        continue;
                    }
                    let c = a.exps[i].cmp(&b.exps[i]);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
            TieBreak::Degrevlex => {
                let h = self.skip.map_or(0, |h| a.exps[h] as u32);
                let hb = self.skip.map_or(0, |h| b.exps[h] as u32);
                let c = (a.degree() - h).cmp(&(b.degree() - hb));
                if c != Ordering::Equal {
                    return c;
                }
                for i in (0..MAX_VARS).rev() {
                    if Some(i) == self.skip {
                        continue;
                    }
                    let c = a.exps[i].cmp(&b.exps[i]);
                    if c != Ordering::Equal {
                        return c.reverse();
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Every monomial in `n` letters of degree at most `d`, by degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = alloc::vec![Monomial::ONE];
    let mut layer = alloc::vec![Monomial::ONE];
    for _ in 0..d {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &layer {
            for i in 0..n {
                let x = m.mul(&Monomial::var(i));
                if !next.contains(&x) {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().copied());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::degrevlex();
        let x = Monomial::from_exps(&[1, 0, 0]);
        let y = Monomial::from_exps(&[0, 1, 0]);
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let y2 = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(o.cmp(&x, &y), Ordering::Greater);
        assert_eq!(o.cmp(&y2, &xz), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::ONE, &x), Ordering::Less);
    }

    #[test]
    fn weighted_term_order_detection() {
        assert!(MonomialOrder::weighted(&[0, 1]).is_term_order(2));
        assert!(!MonomialOrder::weighted(&[-1, 1]).is_term_order(2));
        assert!(MonomialOrder::weighted(&[0, 1]).then_weight(&[1, 0]).is_term_order(2));
        assert!(!MonomialOrder::weighted(&[0, 1]).then_weight(&[-1, 0]).is_term_order(2));
        // homogenizer is exempt
        assert!(MonomialOrder::weighted(&[1, 1, -1]).skipping(Some(2)).is_term_order(3));
    }

    #[test]
    fn homogenizer_is_ignored_before_final_tiebreak() {
        // x*d vs h^2 : same dehomogenized degree? no, x*d has degree 2 and 1 has 0
        let o = MonomialOrder::degrevlex().skipping(Some(2));
        let xd = Monomial::from_exps(&[1, 1, 0]);
        let hh = Monomial::from_exps(&[0, 0, 2]);
        assert_eq!(o.cmp(&xd, &hh), Ordering::Greater);
    }

    #[test]
    fn module_blocks() {
        let o = MonomialOrder::degrevlex().with_split(1);
        let a = Monomial::from_exps(&[0, 0]).with_comp(0);
        let b = Monomial::from_exps(&[5, 5]).with_comp(1);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        let c = Monomial::from_exps(&[1, 0]).with_comp(2);
        assert_eq!(o.cmp(&b, &c), Ordering::Greater);
    }
}
