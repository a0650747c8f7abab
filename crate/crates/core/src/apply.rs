//! Action of differential operators on polynomials and on `f^s`.
//!
//! Values of the form `g(x, s) * f^(s - k)` are tracked as a numerator in
//! `Q[x, s]` plus the pole order `k`; `dx_i` acts by the chain rule and
//! `s` by multiplication. In `D_{x,t}` the letter `t` shifts `s` up by one
//! (and multiplies by `f`), while `dt` maps `g(s) f^s` to
//! `-s g(s - 1) f^(s - 1)`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::element::{Algebra, Element};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rational::{rat_int, Rational};
use crate::signature::{Role, Signature};

/// `numerator * f^(s - pole)` with `numerator` in `Q[x, s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsValue {
    pub numerator: Element,
    pub pole: u32,
}

impl FsValue {
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// The commutative ring on the given variable names.
pub fn polynomial_ring(names: &[&str]) -> Result<Algebra> {
    Ok(Algebra::new(Signature::commutative(names)?))
}

/// Momentum index -> position index (by Weyl pair) in `sig`.
fn derivative_target(sig: &Signature, d: usize) -> Option<usize> {
    sig.pair_of(d).filter(|p| p.right == d).map(|p| p.left)
}

/// `P • g` for an operator in a pure Weyl algebra and a polynomial whose
/// variables are among the operator's positions.
pub fn apply(p: &Element, g: &Element) -> Result<Element> {
    let sig = p.sig();
    if !sig.is_pure_weyl() {
        return Err(Error::NotWeyl);
    }
    if !g.sig().is_commutative() {
        return Err(Error::NonCommutative);
    }
    let ring = g.algebra();
    let to_ring = ring_index(sig, g.sig())?;
    let mut out = Element::zero(ring);
    for (m, c) in p.terms() {
        let mut v = g.clone();
        for d in (0..sig.len()).filter(|&i| sig.role(i) == Role::Momentum) {
            let x = derivative_target(sig, d).ok_or(Error::NotWeyl)?;
            for _ in 0..m.exp(d) {
                v = match to_ring[x] {
                    Some(j) => v.derivative(j),
                    None => Element::zero(ring),
                };
            }
        }
        let mut mono = Monomial::ONE;
        for x in (0..sig.len()).filter(|&i| sig.role(i) == Role::Position) {
            if m.exp(x) > 0 {
                match to_ring[x] {
                    Some(j) => mono.set_exp(j, m.exp(x)),
                    None => return Err(Error::Precondition(alloc::format!("`{}` missing from the polynomial ring", sig.name(x)))),
                }
            }
        }
        let factor = Element::monomial(ring, mono, c.clone());
        out = out.add(&factor.mul(&v)?)?;
    }
    Ok(out)
}

/// Operator-variable index -> ring index, for ring variables present in
/// the operator signature.
fn ring_index(sig: &Signature, ring: &Signature) -> Result<Vec<Option<usize>>> {
    let mut map = alloc::vec![None; sig.len()];
    for j in 0..ring.len() {
        let i = sig
            .index_of(ring.name(j))
            .ok_or_else(|| Error::Precondition(alloc::format!("ring variable `{}` unknown to the operator", ring.name(j))))?;
        map[i] = Some(j);
    }
    Ok(map)
}

/// Evaluation context: `Q[x, s]` and the images of `f` and its partials.
struct FsContext {
    ring: Algebra,
    s: usize,
    f: Element,
    partials: Vec<Element>,
    /// operator index -> ring index for positions
    pos: Vec<Option<usize>>,
}

impl FsContext {
    fn new(sig: &Signature, f: &Element) -> Result<Self> {
        if !f.sig().is_commutative() {
            return Err(Error::NonCommutative);
        }
        let mut names: Vec<&str> = f.sig().names().iter().map(|s| s.as_str()).collect();
        if names.contains(&"s") {
            return Err(Error::Precondition("polynomial ring already uses `s`".into()));
        }
        names.push("s");
        let ring = polynomial_ring(&names)?;
        let s = names.len() - 1;
        let ident: Vec<Option<usize>> = (0..f.sig().len()).map(Some).collect();
        let f_r = f.remap(&ring, &ident)?;
        let partials = (0..f.sig().len()).map(|j| f_r.derivative(j)).collect();
        let pos = ring_index(sig, f.sig())?;
        Ok(FsContext { ring, s, f: f_r, partials, pos })
    }

    fn var(&self, j: usize) -> Element {
        Element::var(&self.ring, j)
    }

    /// `∂_j (g f^(s-k))`, `j` a ring index.
    fn d(&self, v: &FsValue, j: usize) -> FsValue {
        let k = rat_int(v.pole as i64);
        let s_minus_k = self.var(self.s).sub(&Element::constant(&self.ring, k)).unwrap();
        let a = self.f.mul(&v.numerator.derivative(j)).unwrap();
        let b = s_minus_k.mul(&self.partials[j]).unwrap().mul(&v.numerator).unwrap();
        FsValue { numerator: a.add(&b).unwrap(), pole: v.pole + 1 }
    }

    /// `g(s) -> g(s + c)`.
    fn shift_s(&self, g: &Element, c: i64) -> Element {
        let sub = self.var(self.s).add(&Element::constant(&self.ring, rat_int(c))).unwrap();
        let mut out = Element::zero(&self.ring);
        for (m, coef) in g.terms() {
            let e = m.exp(self.s);
            let mut n = *m;
            n.set_exp(self.s, 0);
            let term = Element::monomial(&self.ring, n, coef.clone()).mul(&sub.pow(e as u32)).unwrap();
            out = out.add(&term).unwrap();
        }
        out
    }

    /// `t • (g(s) f^(s-k)) = g(s+1) f^(s+1-k)`.
    fn t(&self, v: &FsValue) -> FsValue {
        let g = self.shift_s(&v.numerator, 1);
        if v.pole > 0 {
            FsValue { numerator: g, pole: v.pole - 1 }
        } else {
            FsValue { numerator: g.mul(&self.f).unwrap(), pole: 0 }
        }
    }

    /// `dt • (g(s) f^(s-k)) = -s g(s-1) f^(s-1-k)`.
    fn dt(&self, v: &FsValue) -> FsValue {
        let g = self.shift_s(&v.numerator, -1);
        let ms = self.var(self.s).neg();
        FsValue { numerator: ms.mul(&g).unwrap(), pole: v.pole + 1 }
    }

    fn add(&self, a: FsValue, b: FsValue) -> FsValue {
        let pole = a.pole.max(b.pole);
        let lift = |v: FsValue| v.numerator.mul(&self.f.pow(pole - v.pole)).unwrap();
        FsValue { numerator: lift(a).add(&lift(b)).unwrap(), pole }
    }

    /// Strip common factors of `f` from the numerator.
    fn simplify(&self, mut v: FsValue) -> FsValue {
        use crate::monomial::MonomialOrder;
        let order = MonomialOrder::degrevlex();
        while v.pole > 0 && !v.numerator.is_zero() {
            // division by f succeeds iff remainder is zero
            let Some(q) = exact_quotient(&v.numerator, &self.f, &order) else { break };
            v = FsValue { numerator: q, pole: v.pole - 1 };
        }
        v
    }
}

/// `a / b` when `b` divides `a` in a commutative ring.
pub(crate) fn exact_quotient(a: &Element, b: &Element, order: &crate::monomial::MonomialOrder) -> Option<Element> {
    if b.is_zero() {
        return None;
    }
    let alg = a.algebra();
    let (lm, lc) = b.leading(order).cloned()?;
    let mut rem = a.clone();
    let mut q = Element::zero(alg);
    while let Some((m, c)) = rem.leading(order).cloned() {
        if !lm.divides(&m) {
            return None;
        }
        let t = Element::monomial(alg, lm.quotient(&m), c / &lc);
        q = q.add(&t).ok()?;
        rem = rem.sub(&t.mul(b).ok()?).ok()?;
    }
    Some(q)
}

fn check_fs_signature(sig: &Signature, allow_t: bool) -> Result<()> {
    for i in 0..sig.len() {
        let ok = match sig.role(i) {
            Role::Position | Role::Momentum => true,
            Role::Commutative => sig.name(i) == "s",
            Role::Homogenizer => false,
        };
        if !ok {
            return Err(Error::Precondition(alloc::format!("unexpected variable `{}`", sig.name(i))));
        }
        if !allow_t && (sig.name(i) == "t" || sig.name(i) == "dt") {
            return Err(Error::Precondition("use apply_malgrange for operators in t".into()));
        }
    }
    Ok(())
}

/// `P • f^(s + shift)` for `P` in `D[s]` (or `D`), simplified so the
/// numerator is not divisible by `f` when the pole is positive.
pub fn apply_fs(p: &Element, f: &Element, shift: i64) -> Result<FsValue> {
    apply_general(p, f, shift, false)
}

/// `P • f^s` for `P` in `D_{x,t}` with the `t`, `dt` action above.
pub fn apply_malgrange(p: &Element, f: &Element) -> Result<FsValue> {
    apply_general(p, f, 0, true)
}

fn apply_general(p: &Element, f: &Element, shift: i64, allow_t: bool) -> Result<FsValue> {
    let sig = p.sig();
    check_fs_signature(sig, allow_t)?;
    let ctx = FsContext::new(sig, f)?;
    let start = if shift >= 0 {
        FsValue { numerator: ctx.f.pow(shift as u32), pole: 0 }
    } else {
        FsValue { numerator: Element::one(&ctx.ring), pole: (-shift) as u32 }
    };
    let s_op = sig.index_of("s").filter(|&i| sig.role(i) == Role::Commutative);
    let t_op = sig.index_of("t");
    let dt_op = sig.index_of("dt");
    let mut total = FsValue { numerator: Element::zero(&ctx.ring), pole: 0 };
    for (m, c) in p.terms() {
        // rightmost letters act first: dt, s, dx.., then t, x..
        let mut v = start.clone();
        if let Some(dt) = dt_op {
            for _ in 0..m.exp(dt) {
                v = ctx.dt(&v);
            }
        }
        if let Some(s) = s_op {
            let sv = ctx.var(ctx.s).pow(m.exp(s) as u32);
            v.numerator = sv.mul(&v.numerator)?;
        }
        for d in (0..sig.len()).filter(|&i| sig.role(i) == Role::Momentum && Some(i) != dt_op) {
            let x = derivative_target(sig, d).ok_or(Error::NotWeyl)?;
            for _ in 0..m.exp(d) {
                match ctx.pos[x] {
                    Some(j) => v = ctx.d(&v, j),
                    None => v.numerator = Element::zero(&ctx.ring),
                }
            }
        }
        if let Some(t) = t_op {
            for _ in 0..m.exp(t) {
                v = ctx.t(&v);
            }
        }
        let mut mono = Monomial::ONE;
        for x in (0..sig.len()).filter(|&i| sig.role(i) == Role::Position && Some(i) != t_op) {
            if m.exp(x) > 0 {
                let j = ctx.pos[x].ok_or_else(|| Error::Precondition(alloc::format!("`{}` missing from f's ring", sig.name(x))))?;
                mono.set_exp(j, m.exp(x));
            }
        }
        v.numerator = Element::monomial(&ctx.ring, mono, c.clone()).mul(&v.numerator)?;
        total = ctx.add(total, v);
    }
    Ok(ctx.simplify(total))
}

/// Whether `P` kills `f^s`.
pub fn annihilates_fs(p: &Element, f: &Element) -> Result<bool> {
    Ok(apply_fs(p, f, 0)?.is_zero())
}

/// `b(s) * f^s` as an `FsValue` in the same ring `apply_fs` uses, for
/// checking functional equations `P • f^(s+1) = b(s) f^s`.
pub fn fs_multiple(f: &Element, b: &[Rational]) -> Result<FsValue> {
    let mut names: Vec<&str> = f.sig().names().iter().map(|s| s.as_str()).collect();
    names.push("s");
    let ring = polynomial_ring(&names)?;
    let s = names.len() - 1;
    let mut num = Element::zero(&ring);
    for (k, c) in b.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut m = Monomial::ONE;
        m.set_exp(s, k as u16);
        num = num.add(&Element::monomial(&ring, m, c.clone()))?;
    }
    Ok(FsValue { numerator: num, pole: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::rational::rat_int;

    fn weyl(names: &[&str]) -> Algebra {
        Algebra::new(Signature::weyl(names).unwrap())
    }

    #[test]
    fn derivative_and_euler() {
        let d = weyl(&["x"]);
        let r = polynomial_ring(&["x"]).unwrap();
        let x3 = r.var("x").unwrap().pow(3);
        let dx = d.var("dx").unwrap();
        assert_eq!(apply(&dx, &x3).unwrap(), r.var("x").unwrap().pow(2).scale(&rat_int(3)));
        let euler = d.var("x").unwrap().mul(&dx).unwrap().sub(&Element::constant(&d, rat_int(3))).unwrap();
        assert!(apply(&euler, &x3).unwrap().is_zero());
    }

    #[test]
    fn second_derivative() {
        let d = weyl(&["x", "y"]);
        let r = polynomial_ring(&["x", "y"]).unwrap();
        let g = r.var("x").unwrap().pow(2).mul(&r.var("y").unwrap()).unwrap();
        let dx2 = d.var("dx").unwrap().pow(2);
        assert_eq!(apply(&dx2, &g).unwrap(), r.var("y").unwrap().scale(&rat_int(2)));
    }

    #[test]
    fn non_weyl_rejected() {
        let a = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let r = polynomial_ring(&["x"]).unwrap();
        assert_eq!(apply(&a.var("s").unwrap(), &r.var("x").unwrap()), Err(Error::NotWeyl));
    }

    #[test]
    fn euler_kills_power() {
        let a = Algebra::new(Signature::weyl_s(&["x", "y"]).unwrap());
        let r = polynomial_ring(&["x", "y"]).unwrap();
        let x = r.var("x").unwrap();
        let p = a.var("x").unwrap().mul(&a.var("dx").unwrap()).unwrap().sub(&a.var("s").unwrap()).unwrap();
        assert!(annihilates_fs(&p, &x).unwrap());
        assert!(annihilates_fs(&a.var("dy").unwrap(), &x).unwrap());
    }

    #[test]
    fn chain_rule_operator_for_cusp() {
        let a = Algebra::new(Signature::weyl_s(&["x", "y"]).unwrap());
        let r = polynomial_ring(&["x", "y"]).unwrap();
        let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
        let f = x.pow(2).add(&y.pow(3)).unwrap();
        // f*dx - s*f_x
        let fa = Element::from_terms(&a, [
            (Monomial::from_exps(&[2, 0, 1, 0, 0]), rat_int(1)),
            (Monomial::from_exps(&[0, 3, 1, 0, 0]), rat_int(1)),
            (Monomial::from_exps(&[1, 0, 0, 0, 1]), rat_int(-2)),
        ]);
        assert!(annihilates_fs(&fa, &f).unwrap());
    }

    #[test]
    fn malgrange_generators_kill() {
        let a = Algebra::new(Signature::weyl_t(&["x"]).unwrap());
        let r = polynomial_ring(&["x"]).unwrap();
        let f = r.var("x").unwrap().pow(2);
        // t - x^2 and dx + 2x dt
        let t = a.var("t").unwrap();
        let x = a.var("x").unwrap();
        let g1 = t.sub(&x.pow(2)).unwrap();
        let g2 = a.var("dx").unwrap().add(&x.mul(&a.var("dt").unwrap()).unwrap().scale(&rat_int(2))).unwrap();
        assert!(apply_malgrange(&g1, &f).unwrap().is_zero());
        assert!(apply_malgrange(&g2, &f).unwrap().is_zero());
        // -dt t acts as s
        let s_op = a.var("dt").unwrap().mul(&t).unwrap().neg();
        let v = apply_malgrange(&s_op, &f).unwrap();
        assert_eq!(v.pole, 0);
        assert_eq!(v.numerator.to_string(), "s");
    }

    #[test]
    fn functional_equation_for_x() {
        let a = Algebra::new(Signature::weyl_s(&["x"]).unwrap());
        let r = polynomial_ring(&["x"]).unwrap();
        let f = r.var("x").unwrap();
        // dx • x^(s+1) = (s+1) x^s
        let v = apply_fs(&a.var("dx").unwrap(), &f, 1).unwrap();
        assert_eq!(v, fs_multiple(&f, &[rat_int(1), rat_int(1)]).unwrap());
    }
}
