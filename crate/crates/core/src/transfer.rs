//! Transfer systems: wide subcategories of the orbit category closed under
//! composition and base change, stored per orbit as masks over slice orbits.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::orbital::{OrbitIx, OrbitalPresentation, SliceIx};
use crate::sparse::sparse_universe;
use crate::vset::VSet;
use crate::windex::{Membership, SparseCollection, WeakIndexingSystem};

/// Cap on the number of non-identity slice orbits brute-forced over.
pub const MAX_TRANSFER_BITS: usize = 24;

#[derive(Clone, Debug)]
pub struct TransferSystem {
    p: Arc<OrbitalPresentation>,
    /// `masks[v]` bit `a`: the slice orbit `a → v` is a transfer.
    masks: Vec<u64>,
}

impl PartialEq for TransferSystem {
    fn eq(&self, other: &Self) -> bool {
        self.masks == other.masks && (Arc::ptr_eq(&self.p, &other.p) || *self.p == *other.p)
    }
}

impl Eq for TransferSystem {}

impl std::hash::Hash for TransferSystem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.masks.hash(state);
    }
}

fn identities(p: &OrbitalPresentation) -> Vec<u64> {
    (0..p.orbit_count()).map(|v| 1 << p.terminal(v)).collect()
}

/// First violation of composition or base-change closure.
fn violation(p: &OrbitalPresentation, masks: &[u64]) -> Option<String> {
    let has = |v: OrbitIx, a: SliceIx| masks[v] >> a & 1 == 1;
    for v in 0..p.orbit_count() {
        if !has(v, p.terminal(v)) {
            return Some(format!("identity of {} missing", p.orbit_id(v)));
        }
        for a in (0..p.slices(v).len()).filter(|&a| has(v, a)) {
            let u = p.source(v, a);
            for x in (0..p.slices(u).len()).filter(|&x| has(u, x)) {
                let c = p.relabel(v, a, x);
                if !has(v, c) {
                    return Some(format!(
                        "composite {} -> {} -> {} missing",
                        p.slice(u, x).id,
                        p.orbit_id(u),
                        p.orbit_id(v)
                    ));
                }
            }
            for b in 0..p.slices(v).len() {
                let w = p.source(v, b);
                for &(_, y) in p.pullback(v, a, b) {
                    if !has(w, y) {
                        return Some(format!(
                            "base change of {} -> {} along {} gives {} -> {}",
                            p.slice(v, a).id,
                            p.orbit_id(v),
                            p.slice(v, b).id,
                            p.slice(w, y).id,
                            p.orbit_id(w)
                        ));
                    }
                }
            }
        }
    }
    None
}

impl TransferSystem {
    pub fn new(p: &Arc<OrbitalPresentation>, masks: Vec<u64>) -> Result<Self> {
        if masks.len() != p.orbit_count() {
            return Err(Error::InvalidTransferSystem("one mask per orbit expected".into()));
        }
        if let Some(w) = violation(p, &masks) {
            return Err(Error::InvalidTransferSystem(w));
        }
        Ok(TransferSystem { p: p.clone(), masks })
    }

    pub fn trivial(p: &Arc<OrbitalPresentation>) -> Self {
        TransferSystem { p: p.clone(), masks: identities(p) }
    }

    pub fn complete(p: &Arc<OrbitalPresentation>) -> Self {
        let masks = (0..p.orbit_count()).map(|v| (1u64 << p.slices(v).len()) - 1).collect();
        TransferSystem { p: p.clone(), masks }
    }

    /// The smallest transfer system containing the given `(orbit, slice)` pairs.
    pub fn generated(p: &Arc<OrbitalPresentation>, pairs: &[(OrbitIx, SliceIx)]) -> Self {
        let mut masks = identities(p);
        for &(v, a) in pairs {
            masks[v] |= 1 << a;
        }
        loop {
            let before = masks.clone();
            for v in 0..p.orbit_count() {
                for a in 0..p.slices(v).len() {
                    if masks[v] >> a & 1 == 0 {
                        continue;
                    }
                    let u = p.source(v, a);
                    for x in 0..p.slices(u).len() {
                        if masks[u] >> x & 1 == 1 {
                            masks[v] |= 1 << p.relabel(v, a, x);
                        }
                    }
                    for b in 0..p.slices(v).len() {
                        let w = p.source(v, b);
                        for &(_, y) in p.pullback(v, a, b) {
                            masks[w] |= 1 << y;
                        }
                    }
                }
            }
            if masks == before {
                return TransferSystem { p: p.clone(), masks };
            }
        }
    }

    pub fn presentation(&self) -> &Arc<OrbitalPresentation> {
        &self.p
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn contains(&self, v: OrbitIx, a: SliceIx) -> bool {
        self.masks[v] >> a & 1 == 1
    }

    /// Non-identity transfers as `(codomain orbit, slice orbit)`.
    pub fn nontrivial(&self) -> Vec<(OrbitIx, SliceIx)> {
        (0..self.p.orbit_count())
            .flat_map(|v| {
                (0..self.p.slices(v).len())
                    .filter(move |&a| a != self.p.terminal(v) && self.contains(v, a))
                    .map(move |a| (v, a))
            })
            .collect()
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.masks.iter().zip(&other.masks).all(|(a, b)| a & !b == 0)
    }

    pub fn meet(&self, other: &Self) -> Self {
        let masks = self.masks.iter().zip(&other.masks).map(|(a, b)| a & b).collect();
        TransferSystem { p: self.p.clone(), masks }
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut pairs = self.nontrivial();
        pairs.extend(other.nontrivial());
        Self::generated(&self.p, &pairs)
    }

    /// Family generated by domains of non-identity transfers.
    pub fn domain(&self) -> Family {
        Family::generated_by(&self.p, self.nontrivial().into_iter().map(|(v, a)| self.p.source(v, a)))
    }

    /// Family generated by codomains of non-identity transfers.
    pub fn codomain(&self) -> Family {
        Family::generated_by(&self.p, self.nontrivial().into_iter().map(|(v, _)| v))
    }

    /// `(slice id, orbit id)` pairs, identities included.
    pub fn id_pairs(&self) -> Vec<(String, String)> {
        let p = &*self.p;
        (0..p.orbit_count())
            .flat_map(|v| {
                (0..p.slices(v).len())
                    .filter(move |&a| self.contains(v, a))
                    .map(move |a| (p.slice(v, a).id.clone(), p.orbit_id(v).to_string()))
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        let pairs: Vec<String> = self
            .nontrivial()
            .into_iter()
            .map(|(v, a)| format!("{}->{}", self.p.slice(v, a).id, self.p.orbit_id(v)))
            .collect();
        format!("{{{}}}", pairs.join(", "))
    }
}

/// Every transfer system, sorted by masks.
pub fn enumerate_transfer_systems(p: &Arc<OrbitalPresentation>) -> Result<Vec<TransferSystem>> {
    let free: Vec<(OrbitIx, SliceIx)> = (0..p.orbit_count())
        .flat_map(|v| (0..p.slices(v).len()).filter(move |&a| a != p.terminal(v)).map(move |a| (v, a)))
        .collect();
    if free.len() > MAX_TRANSFER_BITS {
        return Err(Error::TooLarge(format!("{} candidate transfers", free.len())));
    }
    let base = identities(p);
    let mut out: Vec<Vec<u64>> = (0u64..1 << free.len())
        .into_par_iter()
        .filter_map(|bits| {
            let mut masks = base.clone();
            for (i, &(v, a)) in free.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    masks[v] |= 1 << a;
                }
            }
            violation(p, &masks).is_none().then_some(masks)
        })
        .collect();
    out.sort();
    Ok(out.into_iter().map(|masks| TransferSystem { p: p.clone(), masks }).collect())
}

/// `fR(W)`: the orbits `U → V` that `W` contains as `V`-sets.
pub fn f_r(w: &WeakIndexingSystem) -> Result<TransferSystem> {
    if !w.classify().unital {
        return Err(Error::NotUnital);
    }
    let p = w.presentation();
    let mut masks = Vec::with_capacity(p.orbit_count());
    for v in 0..p.orbit_count() {
        let mut m = 0u64;
        for a in 0..p.slices(v).len() {
            match w.member(&VSet::orbit(p, v, a)) {
                Membership::Yes => m |= 1 << a,
                Membership::No => {}
                Membership::Indeterminate => {
                    return Err(Error::BoundTooSmall {
                        bound: w.bound().unwrap_or(0) as u32,
                        what: p.slice(v, a).id.clone(),
                    })
                }
            }
        }
        masks.push(m);
    }
    TransferSystem::new(p, masks)
}

/// `F_R`: the indexing system of `V`-sets all of whose orbits are transfers.
pub fn transfer_to_indexing(r: &TransferSystem) -> WeakIndexingSystem {
    let p = &r.p;
    let sets = (0..p.orbit_count())
        .flat_map(|v| sparse_universe(p, v).into_iter().filter(move |s| s.support().all(|a| r.contains(v, a))));
    WeakIndexingSystem::from_sparse_unchecked(p, SparseCollection::from_sets(p, sets))
}

/// `overline F_R = F^0 ∨ Cl({transfers of R})`, the smallest unital system
/// with `fR ≥ R`.
pub fn overline_f(r: &TransferSystem) -> WeakIndexingSystem {
    let p = &r.p;
    let mut seeds = Vec::new();
    for v in 0..p.orbit_count() {
        seeds.push(VSet::empty(p, v));
        seeds.push(VSet::terminal(p, v));
    }
    seeds.extend(r.nontrivial().into_iter().map(|(v, a)| VSet::orbit(p, v, a)));
    WeakIndexingSystem::closure(p, &seeds, crate::windex::default_bound())
        .expect("unital seeds close exactly")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_counts() {
        for (n, want) in [(1, 2), (2, 5), (3, 14)] {
            let p = OrbitalPresentation::chain(2, n).unwrap();
            assert_eq!(enumerate_transfer_systems(&p).unwrap().len(), want);
        }
    }

    #[test]
    fn domain_and_codomain() {
        let p = OrbitalPresentation::chain(3, 2).unwrap();
        // C_p -> C_{p^2}
        let r = TransferSystem::generated(&p, &[(2, 1)]);
        assert_eq!(r.domain(), Family::from_orbits(&p, [0, 1]).unwrap());
        assert_eq!(r.codomain(), Family::all(&p));
        let t = TransferSystem::trivial(&p);
        assert!(t.domain().is_empty() && t.codomain().is_empty());
    }

    #[test]
    fn base_change_of_top_transfer() {
        let p = OrbitalPresentation::chain(2, 2).unwrap();
        // e -> C_4 forces e -> C_2
        let r = TransferSystem::generated(&p, &[(2, 0)]);
        assert!(r.contains(1, 0));
        assert!(!r.contains(2, 1));
    }
}
