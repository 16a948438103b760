//! The multiplicative hull `m(W)`: the `V`-sets `S` such that `W` is closed
//! under `S`-indexed products.

use crate::error::{Error, Result};
use crate::gset::{group_of, indexed_product};
use crate::orbital::OrbitIx;
use crate::closure::sets_within;
use crate::sparse::sparse_universe;
use crate::vset::VSet;
use crate::windex::{Membership, SparseCollection, WeakIndexingSystem};

/// Default cap on the points of each product factor.
pub const DEFAULT_PRODUCT_BOUND: u64 = 3;

/// First family of constituents from `W` whose `S`-indexed product leaves
/// `W`, among constituents with at most `bound` points.
pub fn product_escape(w: &WeakIndexingSystem, s: &VSet, bound: u64) -> Result<Option<Vec<VSet>>> {
    let p = w.presentation();
    let v = s.over();
    let members = |u: OrbitIx| -> Vec<VSet> {
        sets_within(p, u, bound).into_iter().filter(|t| w.member(t).is_yes()).collect()
    };
    let lists: Vec<Vec<VSet>> = s.expanded().into_iter().map(|a| members(p.source(v, a))).collect();
    let mut idx = vec![0usize; lists.len()];
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(None);
    }
    loop {
        let ts: Vec<VSet> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
        let prod = indexed_product(p, s, &ts)?.orbit_decompose(p)?;
        match w.member(&prod) {
            Membership::Yes => {}
            Membership::No => return Ok(Some(ts)),
            Membership::Indeterminate => {
                return Err(Error::BoundTooSmall {
                    bound: w.bound().unwrap_or(0) as u32,
                    what: format!("product {}", prod.describe(p)),
                })
            }
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(None);
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `m(W)` for a one-colour `W` over a group, deciding each sparse candidate
/// against constituents of at most `bound` points.
pub fn multiplicative_hull(w: &WeakIndexingSystem, bound: u64) -> Result<WeakIndexingSystem> {
    let p = w.presentation();
    group_of(p)?;
    if !w.classify().one_color {
        return Err(Error::NotClosed { witness: "multiplicative hull needs a one-colour system".into() });
    }
    let mut coll = SparseCollection::empty(p);
    for v in 0..p.orbit_count() {
        for s in sparse_universe(p, v) {
            if product_escape(w, &s, bound)?.is_none() {
                coll.insert(s);
            }
        }
    }
    WeakIndexingSystem::from_sparse(p, coll)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{complete, zero};
    use crate::OrbitalPresentation;

    #[test]
    fn hull_of_zero_is_complete() {
        let p = OrbitalPresentation::chain(2, 1).unwrap();
        let m = multiplicative_hull(&zero(&p), DEFAULT_PRODUCT_BOUND).unwrap();
        assert!(m.equals(&complete(&p)).unwrap());
        assert!(m.classify().indexing);
    }
}
