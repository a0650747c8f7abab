//! Krull dimension of commutative quotients from leading monomials.

use alloc::vec::Vec;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};

use super::groebner;

/// `dim k[vars]/I`, or -1 for the unit ideal.
pub fn krull_dim(alg: &Algebra, gens: &[Element]) -> Result<i64> {
    if !alg.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    let gb = groebner(alg, gens, &MonomialOrder::degrevlex())?;
    if gb.is_unit() {
        return Ok(-1);
    }
    Ok(krull_dim_of_leading(alg.len(), &gb.leading_monomials()))
}

/// Size of a largest variable set `S` such that no leading monomial is
/// supported inside `S` (an independent set modulo the initial ideal).
pub fn krull_dim_of_leading(nvars: usize, lms: &[Monomial]) -> i64 {
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u32> = lms
        .iter()
        .map(|m| (0..nvars).filter(|&i| m.exp(i) > 0).fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0i64;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as i64;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;

    #[test]
    fn hyperplane_and_cross() {
        let a = Algebra::new(Signature::commutative(&["x", "y"]).unwrap());
        let (x, y) = (a.var("x").unwrap(), a.var("y").unwrap());
        assert_eq!(krull_dim(&a, &[x.clone()]).unwrap(), 1);
        assert_eq!(krull_dim(&a, &[x.mul(&y).unwrap()]).unwrap(), 1);
        assert_eq!(krull_dim(&a, &[]).unwrap(), 2);
        assert_eq!(krull_dim(&a, &[Element::one(&a)]).unwrap(), -1);
    }

    #[test]
    fn rejects_weyl() {
        let a = Algebra::new(Signature::weyl(&["x"]).unwrap());
        assert_eq!(krull_dim(&a, &[]).unwrap_err(), Error::NonCommutative);
    }
}
