//! Symbols for the order filtration, characteristic ideals, holonomicity
//! and condition (L_s).

use alloc::string::String;
use alloc::vec::Vec;

use crate::annihilator::{self, Annihilator};
use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::groebner::{self, krull_dim, LeftIdeal, WeightVector};
use crate::monomial::MonomialOrder;
use crate::signature::Role;

/// Commutative ideal of symbols. Momentum letters keep their names and
/// stand for the cotangent coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolIdeal {
    ring: Algebra,
    /// Reduced basis under degrevlex.
    generators: Vec<Element>,
    pub source: String,
}

impl SymbolIdeal {
    /// Ideal of a commutative ring given by generators.
    pub fn from_generators(ring: &Algebra, gens: &[Element], source: &str) -> Result<Self> {
        if !ring.sig().is_commutative() {
            return Err(Error::NonCommutative);
        }
        let basis = groebner::groebner(ring, gens, &MonomialOrder::degrevlex())?;
        Ok(SymbolIdeal { ring: ring.clone(), generators: basis.elements().to_vec(), source: source.into() })
    }

    pub fn ring(&self) -> &Algebra {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn symbol_vars(&self) -> Vec<usize> {
        self.ring.sig().momenta()
    }

    /// Krull dimension of the quotient ring, counting every letter.
    pub fn dim(&self) -> Result<i64> {
        krull_dim(&self.ring, &self.generators)
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.as_constant().is_some())
    }

    /// Every generator is homogeneous in the symbol letters.
    pub fn is_symbol_homogeneous(&self) -> bool {
        let xi = self.symbol_vars();
        self.generators.iter().all(|g| {
            let mut degs = g.terms().iter().map(|(m, _)| m.degree_in(&xi));
            let first = degs.next();
            degs.all(|d| Some(d) == first)
        })
    }

    /// Whether the members of symbol degree at most one generate.
    pub fn generated_in_degree_one(&self) -> Result<bool> {
        let xi = self.symbol_vars();
        let low: Vec<Element> = self.generators.iter().filter(|g| g.degree_in(&xi) <= 1).cloned().collect();
        if low.len() == self.generators.len() {
            return Ok(true);
        }
        let o = MonomialOrder::degrevlex();
        groebner::groebner(&self.ring, &low, &o)?.contains_all(&self.generators)
    }

    /// Poisson brackets of generator pairs lie in the ideal. Closure of
    /// the generators only; the radical is not examined.
    pub fn brackets_closed(&self) -> Result<bool> {
        let sig = self.ring.sig();
        let pairs: Vec<(usize, usize)> = self
            .symbol_vars()
            .into_iter()
            .filter_map(|xi| {
                let name = sig.name(xi);
                name.strip_prefix('d').and_then(|x| sig.index_of(x)).map(|x| (x, xi))
            })
            .collect();
        let gb = groebner::groebner(&self.ring, &self.generators, &MonomialOrder::degrevlex())?;
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let mut br = Element::zero(&self.ring);
                for &(x, xi) in &pairs {
                    let t1 = a.derivative(xi).mul(&b.derivative(x))?;
                    let t2 = a.derivative(x).mul(&b.derivative(xi))?;
                    br = br.add(&t1.sub(&t2)?)?;
                }
                if !gb.contains(&br)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Number of generators equals the height, so the quotient is a
    /// complete intersection.
    pub fn is_complete_intersection(&self) -> Result<bool> {
        let h = self.ring.len() as i64 - self.dim()?;
        Ok(self.generators.len() as i64 == h)
    }
}

/// Weight 1 on momenta, 0 elsewhere (parameters included).
fn order_weight(alg: &Algebra) -> Result<WeightVector> {
    let sig = alg.sig();
    let w: Vec<i32> = (0..sig.len()).map(|i| (sig.role(i) == Role::Momentum) as i32).collect();
    WeightVector::new(sig, &w)
}

/// Symbols of `I` for the order filtration.
pub fn symbol_ideal(ideal: &LeftIdeal) -> Result<SymbolIdeal> {
    symbol_ideal_of(ideal.algebra(), ideal.gens(), "ideal")
}

fn symbol_ideal_of(alg: &Algebra, gens: &[Element], source: &str) -> Result<SymbolIdeal> {
    let w = order_weight(alg)?;
    let (gr, ini) = groebner::initial_ideal(alg, gens, &w)?;
    SymbolIdeal::from_generators(&gr, &ini, source)
}

/// The characteristic variety of `D / I` has dimension `n` (or is empty).
pub fn is_holonomic(ideal: &LeftIdeal) -> Result<bool> {
    let sig = ideal.algebra().sig();
    if !sig.is_pure_weyl() {
        return Err(Error::NotWeyl);
    }
    let n = sig.positions().len() as i64;
    let sym = symbol_ideal(ideal)?;
    if sym.is_unit() {
        return Ok(true);
    }
    Ok(sym.dim()? == n)
}

/// Dimension of the symbol variety of `ann_{D[s]}(f^s)`, with `s` a
/// coordinate.
pub fn charvar_dim_fs(f: &Element) -> Result<i64> {
    charvar_dim_fs_with(&annihilator::ann_fs(f)?)
}

pub fn charvar_dim_fs_with(ann: &Annihilator) -> Result<i64> {
    symbol_ideal_of(ann.algebra(), ann.generators(), "ann_{D[s]}(f^s)")?.dim()
}

/// Symbol ideal of `ann_D(f^s)`.
pub fn characteristic_ideal_fs(ann: &Annihilator) -> Result<SymbolIdeal> {
    let d = annihilator::ann_d_fs(ann)?;
    symbol_ideal_of(d.algebra(), d.gens(), "ann_D(f^s)")
}

/// Condition (L_s): the symbols of `ann_D(f^s)` are generated by symbols
/// of derivations.
pub fn is_ls(f: &Element) -> Result<bool> {
    is_ls_with(&annihilator::ann_fs(f)?)
}

pub fn is_ls_with(ann: &Annihilator) -> Result<bool> {
    characteristic_ideal_fs(ann)?.generated_in_degree_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apply::polynomial_ring;
    use crate::signature::Signature;
    use alloc::string::ToString;

    fn poly(names: &[&str], build: impl Fn(&[Element]) -> Element) -> Element {
        let r = polynomial_ring(names).unwrap();
        let vars: Vec<Element> = names.iter().map(|n| r.var(n).unwrap()).collect();
        build(&vars)
    }

    #[test]
    fn principal_symbols() {
        let ds = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let p = ds.var("x").unwrap().mul(&ds.var("dx").unwrap()).unwrap().sub(&ds.var("s").unwrap()).unwrap();
        let sym = symbol_ideal(&LeftIdeal::new(&ds, alloc::vec![p]).unwrap()).unwrap();
        assert_eq!(sym.generators()[0].to_string(), "x*dx");
        let d = Algebra::new(Signature::weyl(&["x"]).unwrap());
        let sym = symbol_ideal(&LeftIdeal::new(&d, alloc::vec![d.var("dx").unwrap()]).unwrap()).unwrap();
        assert_eq!(sym.generators()[0].to_string(), "dx");
    }

    #[test]
    fn holonomic_examples() {
        let d = Algebra::new(Signature::weyl(&["x"]).unwrap());
        let p = d.var("x").unwrap().mul(&d.var("dx").unwrap()).unwrap().add(&Element::one(&d)).unwrap();
        assert!(is_holonomic(&LeftIdeal::new(&d, alloc::vec![p]).unwrap()).unwrap());
        assert!(!is_holonomic(&LeftIdeal::new(&d, Vec::new()).unwrap()).unwrap());
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        let inv = annihilator::ann_power(&f, -1).unwrap();
        assert!(is_holonomic(&inv).unwrap());
    }

    #[test]
    fn fs_dimensions() {
        let f = poly(&["x"], |v| v[0].clone());
        assert_eq!(charvar_dim_fs(&f).unwrap(), 2);
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        assert_eq!(charvar_dim_fs(&f).unwrap(), 3);
        let ann = annihilator::ann_fs(&f).unwrap();
        let sym = characteristic_ideal_fs(&ann).unwrap();
        assert!(sym.is_symbol_homogeneous());
        assert!(sym.brackets_closed().unwrap());
        assert_eq!(sym.dim().unwrap(), 3);
    }

    #[test]
    fn ls_for_plane_examples() {
        let f = poly(&["x", "y"], |v| v[0].pow(2).add(&v[1].pow(3)).unwrap());
        assert!(is_ls(&f).unwrap());
        let f = poly(&["x", "y"], |v| v[0].mul(&v[1]).unwrap());
        assert!(is_ls(&f).unwrap());
    }
}
