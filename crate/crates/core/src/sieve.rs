//! Sieve coordinates for unital weak indexing systems over `C_{p^n}`.
//!
//! Subgroups are indexed by exponent, so the orbit `C_{p^i}` is `i` and its
//! slice orbit `[C_{p^i}/C_{p^j}]` is `j`. A pair `(j, i)` stands for the
//! transfer `C_{p^j} ⊊ C_{p^i}`; isomorphisms are left implicit.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{Family, OrbitSet};
use crate::orbital::{BackendSpec, OrbitalPresentation};
use crate::sparse::sparse_universe;
use crate::transfer::{enumerate_transfer_systems, f_r, TransferSystem};
use crate::vset::VSet;
use crate::windex::{Membership, SparseCollection, WeakIndexingSystem};
use crate::family::enumerate_families;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sieve {
    pub base: TransferSystem,
    /// `Codomain(R) − ℱ`.
    pub scope: OrbitSet,
    pub pairs: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FiberShape {
    Empty,
    Point,
    Sieves(usize),
}

fn require_chain(p: &OrbitalPresentation) -> Result<()> {
    match p.backend() {
        BackendSpec::Chain { .. } => Ok(()),
        _ => Err(Error::UnsupportedBackend("sieves are defined over cyclic p-groups".into())),
    }
}

pub fn scope_of(r: &TransferSystem, f: Family) -> OrbitSet {
    r.codomain().minus(f)
}

/// First failed sieve condition.
pub fn sieve_violation(r: &TransferSystem, scope: OrbitSet, pairs: &BTreeSet<(usize, usize)>) -> Option<String> {
    for &(k, h) in pairs {
        if k >= h || !r.contains(h, k) {
            return Some(format!("({k}, {h}) is not a transfer of R"));
        }
        if !scope.contains(h) {
            return Some(format!("codomain {h} is out of scope"));
        }
        for l in k + 1..h {
            if scope.contains(l) && !pairs.contains(&(k, l)) {
                return Some(format!("restriction ({k}, {l}) of ({k}, {h}) is missing"));
            }
        }
        for j in 0..k {
            if r.contains(k, j) && !pairs.contains(&(j, h)) {
                return Some(format!("precomposite ({j}, {h}) of ({k}, {h}) is missing"));
            }
        }
    }
    None
}

impl Sieve {
    pub fn new(r: &TransferSystem, scope: OrbitSet, pairs: BTreeSet<(usize, usize)>) -> Result<Self> {
        require_chain(r.presentation())?;
        if let Some(w) = sieve_violation(r, scope, &pairs) {
            return Err(Error::InvalidSieve(w));
        }
        Ok(Sieve { base: r.clone(), scope, pairs })
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    pub fn describe(&self) -> String {
        let p = self.base.presentation();
        let items: Vec<String> =
            self.pairs.iter().map(|&(k, h)| format!("{}<{}", p.orbit_id(k), p.orbit_id(h))).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// All `R`-sieves on `scope`, sorted.
pub fn enumerate_sieves(r: &TransferSystem, scope: OrbitSet) -> Result<Vec<Sieve>> {
    require_chain(r.presentation())?;
    let cands: Vec<(usize, usize)> =
        r.nontrivial().into_iter().filter(|&(h, _)| scope.contains(h)).map(|(h, k)| (k, h)).collect();
    if cands.len() > 20 {
        return Err(Error::TooLarge(format!("{} candidate sieve pairs", cands.len())));
    }
    let mut out = Vec::new();
    for bits in 0u32..1 << cands.len() {
        let pairs: BTreeSet<_> =
            cands.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &c)| c).collect();
        if sieve_violation(r, scope, &pairs).is_none() {
            out.push(Sieve { base: r.clone(), scope, pairs });
        }
    }
    out.sort_by(|a, b| (a.pairs.len(), &a.pairs).cmp(&(b.pairs.len(), &b.pairs)));
    Ok(out)
}

/// `Sv(W)`: transfers `K ⊊ H` with `H ∈ Codomain(fR W) − ∇(W)` and
/// `⋆_H ⊔ [H/K] ∈ W`.
pub fn sv(w: &WeakIndexingSystem) -> Result<Sieve> {
    let p = w.presentation();
    require_chain(p)?;
    let r = f_r(w)?;
    let scope = scope_of(&r, w.families().nabla);
    let mut pairs = BTreeSet::new();
    for (h, k) in r.nontrivial() {
        if !scope.contains(h) {
            continue;
        }
        let mut s = VSet::orbit(p, h, k);
        s.add(p.terminal(h), 1);
        if w.member(&s) == Membership::Yes {
            pairs.insert((k, h));
        }
    }
    Sieve::new(&r, scope, pairs)
}

/// `F_𝔖`: all sets with admissible orbits over `ℱ`; elsewhere `∅`, `⋆`,
/// free sums of transfers, and `⋆` plus transfers of the sieve.
pub fn fiber_from_sieve(r: &TransferSystem, f: Family, sieve: &Sieve) -> Result<WeakIndexingSystem> {
    let p = r.presentation();
    require_chain(p)?;
    if !r.domain().is_subset(f) {
        return Err(Error::NotAdmissible(format!("Domain({}) is not contained in the family", r.describe())));
    }
    if sieve.scope != scope_of(r, f) || sieve.base != *r {
        return Err(Error::InvalidSieve("sieve belongs to another fiber".into()));
    }
    let mut coll = SparseCollection::empty(p);
    for h in 0..p.orbit_count() {
        let t = p.terminal(h);
        for s in sparse_universe(p, h) {
            let admissible = s.support().all(|a| r.contains(h, a));
            let keep = if f.contains(h) {
                admissible
            } else if s.is_fold() {
                s.terminal_count() <= 1
            } else if s.terminal_count() == 0 {
                admissible
            } else {
                s.support().filter(|&a| a != t).all(|k| sieve.pairs.contains(&(k, h)))
            };
            if keep {
                coll.insert(s);
            }
        }
    }
    Ok(WeakIndexingSystem::from_sparse_unchecked(p, coll))
}

/// The fiber of `(fR, ∇)` over `(R, ℱ)` by its closed form.
pub fn fiber_shape(r: &TransferSystem, f: Family) -> Result<FiberShape> {
    if !r.domain().is_subset(f) {
        return Ok(FiberShape::Empty);
    }
    if r.codomain().is_subset(f) {
        return Ok(FiberShape::Point);
    }
    Ok(FiberShape::Sieves(enumerate_sieves(r, scope_of(r, f))?.len()))
}

pub fn fiber(r: &TransferSystem, f: Family) -> Result<Vec<WeakIndexingSystem>> {
    if !r.domain().is_subset(f) {
        return Ok(Vec::new());
    }
    enumerate_sieves(r, scope_of(r, f))?.iter().map(|s| fiber_from_sieve(r, f, s)).collect()
}

/// Transport of a sieve over `(R, ℱ)` to `(R', ℱ')`: precompose with `R'`,
/// then restrict to the new scope.
pub fn transport_sieve(sieve: &Sieve, r2: &TransferSystem, f2: Family) -> Result<Sieve> {
    if !sieve.base.leq(r2) {
        return Err(Error::TargetNotAbove);
    }
    let scope = scope_of(r2, f2);
    let mut pairs = BTreeSet::new();
    for &(k, h) in &sieve.pairs {
        for j in 0..=k {
            if (j == k || r2.contains(k, j)) && scope.contains(h) {
                pairs.insert((j, h));
            }
        }
    }
    Sieve::new(r2, scope, pairs)
}

/// A unital system with its sieve coordinates.
#[derive(Clone, Debug)]
pub struct FiberEntry {
    pub r: TransferSystem,
    pub family: Family,
    pub sieve: Sieve,
    pub system: WeakIndexingSystem,
}

/// Every unital system, assembled fiber by fiber.
pub fn enumerate_unital_fiberwise(p: &Arc<OrbitalPresentation>) -> Result<Vec<FiberEntry>> {
    require_chain(p)?;
    let mut out = Vec::new();
    for r in enumerate_transfer_systems(p)? {
        for f in enumerate_families(p)? {
            if !r.domain().is_subset(f) {
                continue;
            }
            for s in enumerate_sieves(&r, scope_of(&r, f))? {
                let system = fiber_from_sieve(&r, f, &s)?;
                out.push(FiberEntry { r: r.clone(), family: f, sieve: s, system });
            }
        }
    }
    Ok(out)
}

/// Order between fiber entries from the fibration alone: `W ≤ W'` iff
/// `(R, ℱ) ≤ (R', ℱ')` and the transported sieve lies in the sieve of `W'`.
pub fn fiberwise_leq(a: &FiberEntry, b: &FiberEntry) -> Result<bool> {
    if !a.r.leq(&b.r) || !a.family.is_subset(b.family) {
        return Ok(false);
    }
    Ok(transport_sieve(&a.sieve, &b.r, b.family)?.leq(&b.sieve))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prose_sieve_counts() {
        let p = OrbitalPresentation::chain(2, 2).unwrap();
        let e = Family::from_orbits(&p, [0]).unwrap();
        let ecp = Family::from_orbits(&p, [0, 1]).unwrap();
        let r_top = TransferSystem::generated(&p, &[(2, 1)]);
        let r_free = TransferSystem::generated(&p, &[(2, 0)]);
        let full = TransferSystem::complete(&p);
        assert_eq!(enumerate_sieves(&r_top, scope_of(&r_top, ecp)).unwrap().len(), 2);
        assert_eq!(enumerate_sieves(&r_free, scope_of(&r_free, e)).unwrap().len(), 3);
        assert_eq!(enumerate_sieves(&full, scope_of(&full, ecp)).unwrap().len(), 3);
        assert!(matches!(fiber_from_sieve(&r_top, e, &enumerate_sieves(&r_top, scope_of(&r_top, ecp)).unwrap()[0]), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn fiberwise_count_cp2() {
        let p = OrbitalPresentation::chain(3, 2).unwrap();
        assert_eq!(enumerate_unital_fiberwise(&p).unwrap().len(), 21);
    }
}
