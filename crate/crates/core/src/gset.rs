//! Explicit finite H-sets for subgroups H of a finite group.
//!
//! These are deliberately naive: points are integers and the action is a
//! full table. They serve as the point-level reference for the orbital
//! tables and as the engine for indexed products.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{elements, GroupModel, Mask};
use crate::orbital::{OrbitalPresentation, SliceIx};
use crate::vset::VSet;

/// Refuse to build sets with more points than this.
pub const MAX_POINTS: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct ConcreteGSet {
    model: Arc<GroupModel>,
    subgroup: Mask,
    /// `pos[g]` is the row of `act` for `g ∈ H`, `usize::MAX` otherwise.
    pos: Vec<usize>,
    act: Vec<Vec<usize>>,
    points: usize,
}

impl ConcreteGSet {
    pub fn new(
        model: Arc<GroupModel>,
        subgroup: Mask,
        points: usize,
        action: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        if model.index_of(subgroup).is_none() {
            return Err(Error::NotASubgroup(format!("{subgroup:#x}")));
        }
        if points > MAX_POINTS {
            return Err(Error::TooLarge(format!("{points} points")));
        }
        let g = &model.group;
        let mut pos = vec![usize::MAX; g.order()];
        let mut act = Vec::new();
        for (i, h) in elements(subgroup).enumerate() {
            pos[h] = i;
            let row: Vec<usize> = (0..points).map(|x| action(h, x)).collect();
            if row.iter().any(|&y| y >= points) {
                return Err(Error::InvalidAction("image out of range".into()));
            }
            act.push(row);
        }
        let set = ConcreteGSet { model, subgroup, pos, act, points };
        set.check_action()?;
        Ok(set)
    }

    fn check_action(&self) -> Result<()> {
        let g = &self.model.group;
        for x in 0..self.points {
            if self.act(g.identity(), x) != x {
                return Err(Error::InvalidAction("identity does not act trivially".into()));
            }
        }
        for a in elements(self.subgroup) {
            for b in elements(self.subgroup) {
                let ab = g.mul(a, b);
                for x in 0..self.points {
                    if self.act(ab, x) != self.act(a, self.act(b, x)) {
                        return Err(Error::InvalidAction("action is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn model(&self) -> &Arc<GroupModel> {
        &self.model
    }

    pub fn subgroup(&self) -> Mask {
        self.subgroup
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[self.pos[g]][x]
    }

    /// Left cosets `H/K`.
    pub fn coset_space(model: Arc<GroupModel>, h: Mask, k: Mask) -> Result<Self> {
        if k & !h != 0 {
            return Err(Error::NotASubgroup("K is not contained in H".into()));
        }
        let cosets = left_cosets(&model, h, k);
        let g = model.group.clone();
        let find = |m: Mask| cosets.iter().position(|&c| c == m).unwrap();
        let reps: Vec<usize> = cosets.iter().map(|&c| c.trailing_zeros() as usize).collect();
        Self::new(model.clone(), h, cosets.len(), |a, x| {
            find(elements(k).fold(0, |acc, kk| acc | 1 << g.mul(g.mul(a, reps[x]), kk)))
        })
    }

    pub fn empty(model: Arc<GroupModel>, h: Mask) -> Result<Self> {
        Self::new(model, h, 0, |_, x| x)
    }

    pub fn point(model: Arc<GroupModel>, h: Mask) -> Result<Self> {
        Self::new(model, h, 1, |_, x| x)
    }

    /// Realise a set over an orbit as an explicit set over the class
    /// representative subgroup.
    pub fn from_vset(p: &OrbitalPresentation, s: &VSet) -> Result<Self> {
        let model = group_of(p)?;
        let v = s.over();
        let h = model.subgroups[model.class_reps[v]];
        let mut out = Self::empty(model.clone(), h)?;
        for a in s.support() {
            let k = model.subgroups[model.slice_reps[v][a]];
            let orbit = Self::coset_space(model.clone(), h, k)?;
            for _ in 0..s.count(a) {
                out = out.disjoint_union(&orbit)?;
            }
        }
        Ok(out)
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let n = self.points;
        Self::new(self.model.clone(), self.subgroup, n + other.points, |g, x| {
            if x < n {
                self.act(g, x)
            } else {
                n + other.act(g, x - n)
            }
        })
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let m = other.points;
        if self.points.saturating_mul(m) > MAX_POINTS {
            return Err(Error::TooLarge(format!("{} x {} points", self.points, m)));
        }
        Self::new(self.model.clone(), self.subgroup, self.points * m, |g, x| {
            self.act(g, x / m) * m + other.act(g, x % m)
        })
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.model, &other.model) || self.subgroup != other.subgroup {
            return Err(Error::GroupMismatch("sets are over different groups".into()));
        }
        Ok(())
    }

    pub fn restrict(&self, k: Mask) -> Result<Self> {
        if k & !self.subgroup != 0 {
            return Err(Error::NotASubgroup("restriction to a non-subgroup".into()));
        }
        Self::new(self.model.clone(), k, self.points, |g, x| self.act(g, x))
    }

    /// The same points viewed as an `x^-1 H x`-set: `g · p = (x g x^-1) · p`.
    pub fn conjugate_by(&self, x: usize) -> Result<Self> {
        let g = &self.model.group;
        let xi = g.inv(x);
        let target = g.conjugate(xi, self.subgroup);
        Self::new(self.model.clone(), target, self.points, |a, p| {
            self.act(g.mul(g.mul(x, a), xi), p)
        })
    }

    /// `H ×_K X` for this `K`-set `X`.
    pub fn induce(&self, h: Mask) -> Result<Self> {
        let k = self.subgroup;
        if k & !h != 0 {
            return Err(Error::NotASubgroup("induction to a non-supergroup".into()));
        }
        let g = &self.model.group;
        let cosets = left_cosets(&self.model, h, k);
        let reps: Vec<usize> = cosets.iter().map(|&c| c.trailing_zeros() as usize).collect();
        let coset_of = |a: usize| cosets.iter().position(|&c| c >> a & 1 == 1).unwrap();
        let n = self.points;
        Self::new(self.model.clone(), h, cosets.len() * n, |a, pt| {
            let (i, x) = (pt / n, pt % n);
            let hl = g.mul(a, reps[i]);
            let j = coset_of(hl);
            let kk = g.mul(g.inv(reps[j]), hl);
            j * n + self.act(kk, x)
        })
    }

    /// `Map_K(H, X)` for this `K`-set `X`.
    pub fn coinduce(&self, h: Mask) -> Result<Self> {
        let k = self.subgroup;
        if k & !h != 0 {
            return Err(Error::NotASubgroup("coinduction to a non-supergroup".into()));
        }
        let g = &self.model.group;
        // right cosets K r
        let mut right: Vec<Mask> = Vec::new();
        for r in elements(h) {
            let c = elements(k).fold(0, |acc, kk| acc | 1 << g.mul(kk, r));
            if !right.contains(&c) {
                right.push(c);
            }
        }
        let reps: Vec<usize> = right.iter().map(|&c| c.trailing_zeros() as usize).collect();
        let m = reps.len();
        let n = self.points;
        let total = (n as u128).pow(m as u32);
        if total > MAX_POINTS as u128 {
            return Err(Error::TooLarge(format!("{n}^{m} points")));
        }
        let total = total as usize;
        let digit = |phi: usize, i: usize| phi / n.pow(i as u32) % n;
        Self::new(self.model.clone(), h, total, |a, phi| {
            let mut out = 0;
            for i in 0..m {
                let rh = g.mul(reps[i], a);
                let j = right.iter().position(|&c| c >> rh & 1 == 1).unwrap();
                let kk = g.mul(rh, g.inv(reps[j]));
                out += self.act(kk, digit(phi, j)) * n.pow(i as u32);
            }
            out
        })
    }

    pub fn stabilizer(&self, x: usize) -> Mask {
        elements(self.subgroup).filter(|&g| self.act(g, x) == x).fold(0, |acc, g| acc | 1 << g)
    }

    /// One representative per orbit.
    pub fn orbit_reps(&self) -> Vec<usize> {
        let mut seen = vec![false; self.points];
        let mut reps = Vec::new();
        for x in 0..self.points {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for g in elements(self.subgroup) {
                seen[self.act(g, x)] = true;
            }
        }
        reps
    }

    /// Orbit decomposition as a set over the orbit whose class contains `H`.
    pub fn orbit_decompose(&self, p: &OrbitalPresentation) -> Result<VSet> {
        let model = &self.model;
        let k = model
            .index_of(self.subgroup)
            .ok_or_else(|| Error::NotASubgroup(format!("{:#x}", self.subgroup)))?;
        let class = model.class_of[k];
        if model.class_reps[class] != k {
            return self.conjugate_by(model.conjugator[k])?.orbit_decompose(p);
        }
        let mut out = VSet::empty(p, class);
        for x in self.orbit_reps() {
            let stab = model.index_of(self.stabilizer(x)).unwrap();
            out.add(model.slice_of[class][stab].unwrap(), 1);
        }
        Ok(out)
    }
}

fn left_cosets(model: &GroupModel, h: Mask, k: Mask) -> Vec<Mask> {
    let g = &model.group;
    let mut cosets: Vec<Mask> = Vec::new();
    for a in elements(h) {
        let c = elements(k).fold(0, |acc, kk| acc | 1 << g.mul(a, kk));
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    cosets
}

pub fn group_of(p: &OrbitalPresentation) -> Result<Arc<GroupModel>> {
    p.group()
        .cloned()
        .ok_or_else(|| Error::UnsupportedBackend("no finite group model for this presentation".into()))
}

/// The class representative subgroup of `slice` over `v`, together with the
/// conjugator `x` such that it equals `x K0 x^-1` for the representative `K0`
/// of its own class.
fn slice_subgroup(model: &GroupModel, v: usize, a: SliceIx) -> (Mask, usize) {
    let k = model.slice_reps[v][a];
    (model.subgroups[k], model.conjugator[k])
}

/// Point-level restriction of `x` (a set over `v`) along the slice orbit `a`.
pub fn restrict_along(p: &OrbitalPresentation, a: SliceIx, x: &VSet) -> Result<VSet> {
    let model = group_of(p)?;
    let (k, conj) = slice_subgroup(&model, x.over(), a);
    ConcreteGSet::from_vset(p, x)?.restrict(k)?.conjugate_by(conj)?.orbit_decompose(p)
}

fn constituent(p: &OrbitalPresentation, model: &GroupModel, v: usize, u: SliceIx, t: &VSet) -> Result<ConcreteGSet> {
    let (_, conj) = slice_subgroup(model, v, u);
    if t.over() != p.source(v, u) {
        return Err(Error::MismatchedIndex("constituent over the wrong orbit".into()));
    }
    ConcreteGSet::from_vset(p, t)?.conjugate_by(model.group.inv(conj))
}

/// Point-level `∐^S T`.
pub fn indexed_coproduct(p: &OrbitalPresentation, s: &VSet, t: &[VSet]) -> Result<ConcreteGSet> {
    let model = group_of(p)?;
    let v = s.over();
    let h = model.subgroups[model.class_reps[v]];
    let copies = s.expanded();
    if copies.len() != t.len() {
        return Err(Error::MismatchedIndex("one constituent per orbit".into()));
    }
    let mut out = ConcreteGSet::empty(model.clone(), h)?;
    for (&u, tu) in copies.iter().zip(t) {
        out = out.disjoint_union(&constituent(p, &model, v, u, tu)?.induce(h)?)?;
    }
    Ok(out)
}

/// Point-level `∏^S T = ∏_U CoInd_U^V T_U`.
pub fn indexed_product(p: &OrbitalPresentation, s: &VSet, t: &[VSet]) -> Result<ConcreteGSet> {
    let model = group_of(p)?;
    let v = s.over();
    let h = model.subgroups[model.class_reps[v]];
    let copies = s.expanded();
    if copies.len() != t.len() {
        return Err(Error::MismatchedIndex("one constituent per orbit".into()));
    }
    let mut out = ConcreteGSet::point(model.clone(), h)?;
    for (&u, tu) in copies.iter().zip(t) {
        out = out.product(&constituent(p, &model, v, u, tu)?.coinduce(h)?)?;
    }
    Ok(out)
}
