//! Products of normally ordered monomials.
//!
//! Pairs never share a variable, so `a * b` factors into independent
//! per-pair reorderings. For a Weyl pair with `R^B` (from `a`) meeting
//! `L^A` (from `b`):
//!
//! `R^B L^A = sum_k C(B,k) A!/(A-k)! L^(A-k) R^(B-k) h^(2k)`
//!
//! and for a shift pair `R^B L^A = (L - B h)^A R^B`.

use alloc::vec::Vec;

use crate::int::Int;
use crate::monomial::Monomial;
use crate::signature::{PairRule, Signature};

/// One choice inside a pair's expansion: exponent changes and coefficient.
struct Step {
    d_left: u16,
    d_right: u16,
    d_h: u16,
    coeff: Int,
}

/// Precomputed per-signature data for fast products.
#[derive(Clone, Debug)]
pub(crate) struct ProductTable {
    /// `(left, right, rule)` for each pair
    pairs: Vec<(usize, usize, PairRule)>,
    /// bit i set when variable i is the right letter of some pair
    right_mask: u32,
    /// bit i set when variable i is the left letter of some pair
    left_mask: u32,
    h: Option<usize>,
}

impl ProductTable {
    pub fn new(sig: &Signature) -> Self {
        let mut right_mask = 0u32;
        let mut left_mask = 0u32;
        let pairs: Vec<_> = sig
            .pairs()
            .iter()
            .map(|p| {
                right_mask |= 1 << p.right;
                left_mask |= 1 << p.left;
                (p.left, p.right, p.rule)
            })
            .collect();
        ProductTable { pairs, right_mask, left_mask, h: sig.homogenizer() }
    }

    #[inline]
    pub fn support_mask(m: &Monomial) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Whether `a * b` is the plain exponent sum for every `b` (no right
    /// letters in `a`).
    #[inline]
    pub fn acts_trivially(&self, a: &Monomial) -> bool {
        Self::support_mask(a) & self.right_mask == 0
    }

    pub fn left_mask(&self) -> u32 {
        self.left_mask
    }

    pub fn right_mask(&self) -> u32 {
        self.right_mask
    }

    /// Whether a right letter in `rmask` has its left partner in `lmask`.
    #[inline]
    pub fn pairs_meet(&self, rmask: u32, lmask: u32) -> bool {
        self.pairs.iter().any(|&(l, r, _)| rmask & (1 << r) != 0 && lmask & (1 << l) != 0)
    }

    /// Append the normally ordered expansion of `a * b`, scaled by `scale`.
    pub fn product(&self, a: &Monomial, b: &Monomial, scale: &Int, out: &mut Vec<(Monomial, Int)>) {
        let base = a.mul(b);
        let mut expansions: Vec<Vec<Step>> = Vec::new();
        let mut pair_ix: Vec<(usize, usize)> = Vec::new();
        for &(l, r, rule) in &self.pairs {
            let big_b = a.exp(r) as u64;
            let big_a = b.exp(l) as u64;
            if big_a == 0 || big_b == 0 {
                continue;
            }
            let mut steps = Vec::new();
            match rule {
                PairRule::Weyl => {
                    let mut c = Int::ONE;
                    for k in 0..=big_a.min(big_b) {
                        if k > 0 {
                            let num = Int::from(((big_b - k + 1) * (big_a - k + 1)) as i64);
                            c = c.mul(&num).div_exact(&Int::from(k as i64));
                        }
                        steps.push(Step { d_left: k as u16, d_right: k as u16, d_h: 2 * k as u16, coeff: c.clone() });
                    }
                }
                PairRule::Shift => {
                    // (L - B h)^A = sum_k C(A,k) L^k (-B h)^(A-k)
                    let neg_b = Int::from(-(big_b as i64));
                    let mut binom = Int::ONE;
                    for k in 0..=big_a {
                        if k > 0 {
                            binom = binom.mul(&Int::from((big_a - k + 1) as i64)).div_exact(&Int::from(k as i64));
                        }
                        let mut c = binom.clone();
                        for _ in 0..(big_a - k) {
                            c = c.mul(&neg_b);
                        }
                        let drop = (big_a - k) as u16;
                        steps.push(Step { d_left: drop, d_right: 0, d_h: drop, coeff: c });
                    }
                }
            }
            expansions.push(steps);
            pair_ix.push((l, r));
        }
        if expansions.is_empty() {
            out.push((base, scale.clone()));
            return;
        }
        // cartesian product over active pairs
        let mut idx = alloc::vec![0usize; expansions.len()];
        loop {
            let mut m = base;
            let mut c = scale.clone();
            for (p, &k) in idx.iter().enumerate() {
                let step = &expansions[p][k];
                let (l, r) = pair_ix[p];
                m.set_exp(l, m.exp(l) - step.d_left);
                m.set_exp(r, m.exp(r) - step.d_right);
                if let Some(h) = self.h {
                    m.set_exp(h, m.exp(h) + step.d_h);
                }
                if !step.coeff.is_one() {
                    c = c.mul(&step.coeff);
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
            let mut p = 0;
            loop {
                if p == idx.len() {
                    return;
                }
                idx[p] += 1;
                if idx[p] < expansions[p].len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
}
