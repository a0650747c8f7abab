//! Algebra signatures: variables, their roles and commutation rules.
//!
//! Every non-commuting relation pairs a "left" letter with a "right"
//! letter, and a variable belongs to at most one pair. Normal order puts
//! the left letter of each pair before its right letter:
//!
//! * `Weyl`:  `R L = L R + h^2` (`h = 1` without a homogenizer), e.g. `dx x = x dx + 1`;
//! * `Shift`: `R L = L R - h R`, the relation `dt s = (s - 1) dt` of `D<s, dt>`.
//!
//! All other pairs commute.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::MAX_VARS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `x_i` or `t`
    Position,
    /// `dx_i` or `dt`
    Momentum,
    /// commuting extras (`s`, `u`, `v`, symbols `xi`)
    Commutative,
    Homogenizer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRule {
    Weyl,
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pair {
    pub left: usize,
    pub right: usize,
    pub rule: PairRule,
}

/// Rule between two variables as seen from the commutation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Commute,
    /// `right * left = left * right + h^2`
    Weyl,
    /// `right * left = left * right - h * right`
    Shift,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    names: Vec<String>,
    roles: Vec<Role>,
    pairs: Vec<Pair>,
    homogenizer: Option<usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature { names: Vec::new(), roles: Vec::new(), pairs: Vec::new(), homogenizer: None }
    }

    /// Add a variable, returning its index.
    pub fn push(&mut self, name: &str, role: Role) -> Result<usize> {
        if self.names.len() >= MAX_VARS {
            return Err(Error::TooManyVariables(MAX_VARS));
        }
        if self.names.iter().any(|n| n == name) {
            return Err(Error::DuplicateVariable(name.to_string()));
        }
        if role == Role::Homogenizer {
            if self.homogenizer.is_some() {
                return Err(Error::DuplicateVariable(name.to_string()));
            }
            self.homogenizer = Some(self.names.len());
        }
        self.names.push(name.to_string());
        self.roles.push(role);
        Ok(self.names.len() - 1)
    }

    pub fn pair(&mut self, left: usize, right: usize, rule: PairRule) -> Result<()> {
        let used = |i: usize| self.pairs.iter().any(|p| p.left == i || p.right == i);
        if left == right || used(left) || used(right) || left >= self.len() || right >= self.len() {
            return Err(Error::InvalidSignature("a variable may belong to at most one pair"));
        }
        self.pairs.push(Pair { left, right, rule });
        Ok(())
    }

    /// Commutative polynomial ring on the given names.
    pub fn commutative(names: &[&str]) -> Result<Self> {
        let mut s = Signature::new();
        for n in names {
            s.push(n, Role::Commutative)?;
        }
        Ok(s)
    }

    /// Weyl algebra `Q<x, dx>`; extra commuting parameters come last.
    /// Momentum names are `d` + position name.
    pub fn weyl_with(positions: &[&str], extras_before: &[&str], params: &[&str]) -> Result<Self> {
        let mut s = Signature::new();
        let mut xs = Vec::new();
        for n in positions.iter().chain(extras_before.iter()) {
            xs.push(s.push(n, Role::Position)?);
        }
        for (k, n) in positions.iter().chain(extras_before.iter()).enumerate() {
            let d = s.push(&alloc::format!("d{n}"), Role::Momentum)?;
            s.pair(xs[k], d, PairRule::Weyl)?;
        }
        for p in params {
            s.push(p, Role::Commutative)?;
        }
        Ok(s)
    }

    /// `D = Q<x, dx>`.
    pub fn weyl(positions: &[&str]) -> Result<Self> {
        Self::weyl_with(positions, &[], &[])
    }

    /// `D[s]`.
    pub fn weyl_s(positions: &[&str]) -> Result<Self> {
        Self::weyl_with(positions, &[], &["s"])
    }

    /// `D_{x,t}`: positions followed by `t`, then `dx.., dt`.
    pub fn weyl_t(positions: &[&str]) -> Result<Self> {
        Self::weyl_with(positions, &["t"], &[])
    }

    /// `D_{x,t}[u, v]` used by the two-parameter elimination.
    pub fn weyl_tuv(positions: &[&str]) -> Result<Self> {
        Self::weyl_with(positions, &["t"], &["u", "v"])
    }

    /// `D<s, dt>`: `x.., dx.., s, dt` with `[s, dt] = dt`.
    pub fn weyl_s_dt(positions: &[&str]) -> Result<Self> {
        let mut s = Self::weyl_with(positions, &[], &["s"])?;
        let si = s.len() - 1;
        let dt = s.push("dt", Role::Momentum)?;
        s.pair(si, dt, PairRule::Shift)?;
        Ok(s)
    }

    /// Same algebra with an extra central homogenizer `h`; relations become
    /// `dx x = x dx + h^2` and `dt s = s dt - h dt`.
    pub fn homogenized(&self) -> Result<Self> {
        if self.homogenizer.is_some() {
            return Ok(self.clone());
        }
        let mut s = self.clone();
        s.push("h", Role::Homogenizer)?;
        Ok(s)
    }

    /// Associated graded signature for a weight vector: pairs whose
    /// relation drops in weight become commutative. Roles are kept so
    /// symbols of momenta stay recognizable.
    pub fn graded(&self, w: &[i32]) -> Signature {
        let wt = |i: usize| w.get(i).copied().unwrap_or(0);
        let mut s = self.clone();
        s.pairs.retain(|p| match p.rule {
            PairRule::Weyl => wt(p.left) + wt(p.right) == 0,
            PairRule::Shift => wt(p.left) == 0,
        });
        s
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> Role {
        self.roles[i]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn homogenizer(&self) -> Option<usize> {
        self.homogenizer
    }

    pub fn is_commutative(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Only positions and their Weyl momenta (no parameters, no `h`).
    pub fn is_pure_weyl(&self) -> bool {
        self.homogenizer.is_none()
            && self.roles.iter().all(|r| matches!(r, Role::Position | Role::Momentum))
            && self.pairs.iter().all(|p| p.rule == PairRule::Weyl)
            && self.pairs.len() * 2 == self.len()
    }

    /// Pair containing variable `i`, if any.
    pub fn pair_of(&self, i: usize) -> Option<&Pair> {
        self.pairs.iter().find(|p| p.left == i || p.right == i)
    }

    /// Momentum partner of a position variable in a Weyl pair.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.pair_of(i).map(|p| if p.left == i { p.right } else { p.left })
    }

    /// Commutation table entry for the ordered pair `(i, j)`:
    /// how `var_j * var_i` rewrites when `j` is the right letter of `i`'s pair.
    pub fn rule(&self, i: usize, j: usize) -> Rule {
        for p in &self.pairs {
            if (p.left == i && p.right == j) || (p.left == j && p.right == i) {
                return match p.rule {
                    PairRule::Weyl => Rule::Weyl,
                    PairRule::Shift => Rule::Shift,
                };
            }
        }
        Rule::Commute
    }

    /// Indices of position variables paired with a Weyl momentum.
    pub fn positions(&self) -> Vec<usize> {
        self.pairs.iter().filter(|p| p.rule == PairRule::Weyl).map(|p| p.left).collect()
    }

    pub fn momenta(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.roles[i] == Role::Momentum).collect()
    }

    /// Whether the variables in `keep` span a subalgebra: every relation
    /// between kept letters only produces kept letters.
    pub fn is_subalgebra(&self, keep: &[bool]) -> bool {
        self.pairs.iter().all(|p| {
            let both = keep[p.left] && keep[p.right];
            !both || self.homogenizer.map_or(true, |h| keep[h])
        })
    }

    /// Signature on the kept variables, plus the old-to-new index map.
    pub fn restrict(&self, keep: &[bool]) -> Result<(Signature, Vec<Option<usize>>)> {
        if !self.is_subalgebra(keep) {
            return Err(Error::NotSubalgebra);
        }
        let mut s = Signature::new();
        let mut map = alloc::vec![None; self.len()];
        for i in 0..self.len() {
            if keep[i] {
                // a letter whose partner is dropped commutes with everything kept
                let role = if self.partner(i).map_or(false, |j| !keep[j]) {
                    Role::Commutative
                } else {
                    self.roles[i]
                };
                map[i] = Some(s.push(&self.names[i], role)?);
            }
        }
        for p in &self.pairs {
            if let (Some(l), Some(r)) = (map[p.left], map[p.right]) {
                s.pair(l, r, p.rule)?;
            }
        }
        Ok((s, map))
    }
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_layouts() {
        let d = Signature::weyl_s(&["x", "y"]).unwrap();
        assert_eq!(d.names(), &["x", "y", "dx", "dy", "s"]);
        assert_eq!(d.rule(0, 2), Rule::Weyl);
        assert_eq!(d.rule(0, 3), Rule::Commute);
        assert_eq!(d.rule(4, 2), Rule::Commute);

        let bm = Signature::weyl_s_dt(&["x"]).unwrap();
        assert_eq!(bm.names(), &["x", "dx", "s", "dt"]);
        assert_eq!(bm.rule(2, 3), Rule::Shift);

        let t = Signature::weyl_t(&["x"]).unwrap();
        assert_eq!(t.names(), &["x", "t", "dx", "dt"]);
        assert_eq!(t.rule(1, 3), Rule::Weyl);
    }

    #[test]
    fn every_unordered_pair_has_exactly_one_rule() {
        let s = Signature::weyl_tuv(&["x", "y"]).unwrap().homogenized().unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                assert_eq!(s.rule(i, j), s.rule(j, i));
            }
        }
        let noncommuting = (0..s.len())
            .flat_map(|i| (0..s.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| i < j && s.rule(i, j) != Rule::Commute)
            .count();
        assert_eq!(noncommuting, 3);
    }

    #[test]
    fn rejects_overlapping_pairs_and_duplicates() {
        let mut s = Signature::commutative(&["a", "b", "c"]).unwrap();
        s.pair(0, 1, PairRule::Weyl).unwrap();
        assert!(s.pair(1, 2, PairRule::Weyl).is_err());
        assert!(s.push("a", Role::Commutative).is_err());
    }

    #[test]
    fn restriction_and_subalgebra_check() {
        let s = Signature::weyl_s(&["x"]).unwrap();
        let (r, map) = s.restrict(&[true, true, false]).unwrap();
        assert_eq!(r.names(), &["x", "dx"]);
        assert_eq!(map, alloc::vec![Some(0), Some(1), None]);
        let h = Signature::weyl(&["x"]).unwrap().homogenized().unwrap();
        assert!(h.restrict(&[true, true, false]).is_err());
    }
}
