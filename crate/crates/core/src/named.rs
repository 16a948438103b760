//! The standard weak indexing systems.

use std::sync::Arc;

use crate::error::Result;
use crate::family::Family;
use crate::orbital::{OrbitIx, OrbitalPresentation};
use crate::sparse::sparse_universe;
use crate::vset::VSet;
use crate::windex::{Rule, SparseCollection, WeakIndexingSystem};

fn levelwise(
    p: &Arc<OrbitalPresentation>,
    family: Family,
    keep: impl Fn(OrbitIx, &VSet) -> bool,
) -> WeakIndexingSystem {
    let sets = (0..p.orbit_count())
        .filter(|&v| family.contains(v))
        .flat_map(|v| sparse_universe(p, v).into_iter().filter(|s| keep(v, s)).collect::<Vec<_>>());
    WeakIndexingSystem::from_sparse_unchecked(p, SparseCollection::from_sets(p, sets))
}

pub fn empty(p: &Arc<OrbitalPresentation>) -> WeakIndexingSystem {
    levelwise(p, Family::empty(), |_, _| false)
}

/// `F^triv_ℱ`: only `⋆_V`, for `V ∈ ℱ`.
pub fn triv_on(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    levelwise(p, f, |_, s| s.is_terminal())
}

/// `F^0_ℱ`: `∅_V` and `⋆_V`.
pub fn zero_on(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    levelwise(p, f, |_, s| s.is_fold() && s.terminal_count() <= 1)
}

/// `F^∞_ℱ`: all `n·⋆_V`.
pub fn infinity_on(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    levelwise(p, f, |_, s| s.is_fold())
}

/// `F_ℱ`: every `V`-set for `V ∈ ℱ`.
pub fn complete_on(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    levelwise(p, f, |_, _| true)
}

pub fn triv(p: &Arc<OrbitalPresentation>) -> WeakIndexingSystem {
    triv_on(p, Family::all(p))
}

pub fn zero(p: &Arc<OrbitalPresentation>) -> WeakIndexingSystem {
    zero_on(p, Family::all(p))
}

pub fn infinity(p: &Arc<OrbitalPresentation>) -> WeakIndexingSystem {
    infinity_on(p, Family::all(p))
}

pub fn complete(p: &Arc<OrbitalPresentation>) -> WeakIndexingSystem {
    complete_on(p, Family::all(p))
}

/// `F^0 ∪ E_ℱ F^∞_ℱ`: unital, with fold maps exactly over `ℱ`.
pub fn folds_on(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    levelwise(p, Family::all(p), |v, s| s.is_fold() && (s.terminal_count() <= 1 || f.contains(v)))
}

/// `F_{ℱ⊥-nu}`: over `V ∈ ℱ` everything; elsewhere every set with an orbit
/// outside `ℱ`, together with `⋆_V`.
pub fn terminal_nonunital(p: &Arc<OrbitalPresentation>, f: Family) -> WeakIndexingSystem {
    WeakIndexingSystem::from_rule(p, Rule::TerminalNonunital(f))
}

/// `E_ℱ Bor_ℱ W`: the levels of `W` over `ℱ`, empty elsewhere.
pub fn extend(w: &WeakIndexingSystem, f: Family) -> Result<WeakIndexingSystem> {
    w.extend_from(f)
}

/// `Bor_ℱ W = W ∩ F_ℱ`, viewed as a system on the whole presentation.
pub fn bor(w: &WeakIndexingSystem, f: Family) -> Result<WeakIndexingSystem> {
    w.meet(&complete_on(w.presentation(), f))
}

/// Levelwise union, when it is again a weak indexing system.
pub fn union(a: &WeakIndexingSystem, b: &WeakIndexingSystem) -> Result<WeakIndexingSystem> {
    let (sa, _) = a.sparse_extract()?;
    let (sb, _) = b.sparse_extract()?;
    let sets = sa.sets().chain(sb.sets()).cloned();
    WeakIndexingSystem::from_sparse(a.presentation(), SparseCollection::from_sets(a.presentation(), sets))
}
