//! Sparse `V`-sets and the decomposition of arbitrary `V`-sets into a sparse
//! index set with smaller constituents.

use crate::orbital::{indexed_coproduct, OrbitIx, OrbitalPresentation, SliceIx};
use crate::vset::VSet;

/// `ε·⋆_V ⊔ W_1 ⊔ … ⊔ W_n` with no maps between distinct `W_i`, or `2·⋆_V`.
pub fn is_sparse(p: &OrbitalPresentation, s: &VSet) -> bool {
    let v = s.over();
    let t = p.terminal(v);
    if s.is_fold() {
        return s.terminal_count() <= 2;
    }
    if s.terminal_count() > 1 {
        return false;
    }
    let rest: Vec<SliceIx> = s.support().filter(|&a| a != t).collect();
    rest.iter().all(|&a| s.count(a) == 1)
        && rest.iter().all(|&a| rest.iter().all(|&b| a == b || !p.slice_hom(v, a, b)))
}

/// Non-terminal antichains of the slice over `v`, the empty one included.
fn antichains(p: &OrbitalPresentation, v: OrbitIx) -> Vec<Vec<SliceIx>> {
    let t = p.terminal(v);
    let mut out = Vec::new();
    fn go(p: &OrbitalPresentation, v: OrbitIx, t: SliceIx, from: SliceIx, cur: &mut Vec<SliceIx>, out: &mut Vec<Vec<SliceIx>>) {
        out.push(cur.clone());
        for a in from..t {
            if cur.iter().all(|&b| !p.slice_hom(v, a, b) && !p.slice_hom(v, b, a)) {
                cur.push(a);
                go(p, v, t, a + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(p, v, t, 0, &mut Vec::new(), &mut out);
    out
}

/// Every sparse set over `v`, in `VSet` order.
pub fn sparse_universe(p: &OrbitalPresentation, v: OrbitIx) -> Vec<VSet> {
    let mut out = vec![VSet::n_terminal(p, v, 2)];
    for chain in antichains(p, v) {
        for eps in 0..2 {
            let mut s = VSet::from_slices(p, v, &chain);
            s.add(p.terminal(v), eps);
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Largest orbit count of a sparse set anywhere in the presentation.
pub fn max_sparse_orbits(p: &OrbitalPresentation) -> u32 {
    (0..p.orbit_count())
        .map(|v| antichains(p, v).iter().map(|c| c.len() as u32 + 1).max().unwrap_or(1))
        .max()
        .unwrap_or(1)
        .max(2)
}

/// `S ≅ ∐^{base} pieces` with `base` a sparse summand of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseDecomposition {
    pub base: VSet,
    /// One constituent per orbit copy of `base`, in [`VSet::expanded`] order.
    pub pieces: Vec<VSet>,
}

impl SparseDecomposition {
    pub fn recombine(&self, p: &OrbitalPresentation) -> VSet {
        indexed_coproduct(p, &self.base, &self.pieces).expect("decomposition is well formed")
    }
}

/// Decompose `s` along the maps between its non-terminal orbits.
///
/// Non-terminal orbits that map to another orbit of `s` are folded into it,
/// always removing the lowest-indexed such orbit first and routing it to the
/// lowest-indexed target. What remains is an antichain.
pub fn sparse_decompose(p: &OrbitalPresentation, s: &VSet) -> SparseDecomposition {
    let v = s.over();
    let t = p.terminal(v);
    if s.is_fold() {
        let n = s.terminal_count();
        return match n {
            0 => SparseDecomposition { base: s.clone(), pieces: vec![] },
            1 => SparseDecomposition { base: s.clone(), pieces: vec![s.clone()] },
            _ => SparseDecomposition {
                base: VSet::n_terminal(p, v, 2),
                pieces: vec![VSet::terminal(p, v), VSet::n_terminal(p, v, n - 1)],
            },
        };
    }
    let mut alive: Vec<SliceIx> = s.support().filter(|&a| a != t).collect();
    // target[a]: where the orbit a of s is routed
    let mut target: Vec<SliceIx> = (0..p.slices(v).len()).collect();
    loop {
        let step = alive.iter().find_map(|&a| {
            alive.iter().find(|&&w| w != a && p.slice_hom(v, a, w)).map(|&w| (a, w))
        });
        let Some((gone, w)) = step else { break };
        alive.retain(|&a| a != gone);
        for x in target.iter_mut() {
            if *x == gone {
                *x = w;
            }
        }
    }
    let mut base = VSet::from_slices(p, v, &alive);
    if s.terminal_count() > 0 {
        base.add(t, 1);
    }
    let pieces = base
        .expanded()
        .into_iter()
        .map(|w| {
            if w == t {
                return VSet::n_terminal(p, v, s.terminal_count());
            }
            let mut piece = VSet::empty(p, p.source(v, w));
            for a in s.support().filter(|&a| a != t && target[a] == w) {
                let x = p.factor(v, a, w).expect("routed along an existing map");
                piece.add(x, s.count(a));
            }
            piece
        })
        .collect();
    SparseDecomposition { base, pieces }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_universe() {
        let p = OrbitalPresentation::chain(2, 2).unwrap();
        // ∅, ⋆, 2⋆, [e], [C_2], ⋆+[e], ⋆+[C_2]
        assert_eq!(sparse_universe(&p, 2).len(), 7);
        assert_eq!(sparse_universe(&p, 0).len(), 3);
        assert_eq!(max_sparse_orbits(&p), 2);
    }

    #[test]
    fn decomposition_recombines() {
        let p = OrbitalPresentation::chain(3, 2).unwrap();
        let s = VSet::from_counts(2, vec![2, 1, 0]);
        let d = sparse_decompose(&p, &s);
        assert_eq!(d.base, VSet::orbit(&p, 2, 1));
        assert_eq!(d.pieces, vec![VSet::from_counts(1, vec![2, 1])]);
        assert_eq!(d.recombine(&p), s);
        let fold = VSet::n_terminal(&p, 1, 3);
        let d = sparse_decompose(&p, &fold);
        assert_eq!(d.base, VSet::n_terminal(&p, 1, 2));
        assert_eq!(d.recombine(&p), fold);
    }

    #[test]
    fn sparseness() {
        let p = OrbitalPresentation::chain(2, 2).unwrap();
        assert!(is_sparse(&p, &VSet::n_terminal(&p, 2, 2)));
        assert!(!is_sparse(&p, &VSet::n_terminal(&p, 2, 3)));
        assert!(is_sparse(&p, &VSet::from_counts(2, vec![1, 0, 1])));
        assert!(!is_sparse(&p, &VSet::from_counts(2, vec![1, 1, 0])));
        assert!(!is_sparse(&p, &VSet::from_counts(2, vec![2, 0, 0])));
    }
}
