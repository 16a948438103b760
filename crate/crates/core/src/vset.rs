//! Finite coproducts of slice orbits over a fixed orbit.

use crate::orbital::{OrbitIx, OrbitalPresentation, SliceIx};

/// A `V`-set: a multiset of slice orbits of `V`, stored densely by slice index.
///
/// The terminal slice orbit is always the last index, so `⋆_V` is
/// `[0, .., 0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VSet {
    over: OrbitIx,
    counts: Vec<u32>,
}

impl VSet {
    pub fn empty(p: &OrbitalPresentation, v: OrbitIx) -> Self {
        VSet { over: v, counts: vec![0; p.slices(v).len()] }
    }

    pub fn terminal(p: &OrbitalPresentation, v: OrbitIx) -> Self {
        Self::n_terminal(p, v, 1)
    }

    pub fn n_terminal(p: &OrbitalPresentation, v: OrbitIx, n: u32) -> Self {
        let mut s = Self::empty(p, v);
        *s.counts.last_mut().unwrap() = n;
        s
    }

    pub fn orbit(p: &OrbitalPresentation, v: OrbitIx, a: SliceIx) -> Self {
        let mut s = Self::empty(p, v);
        s.counts[a] = 1;
        s
    }

    pub fn from_counts(over: OrbitIx, counts: Vec<u32>) -> Self {
        VSet { over, counts }
    }

    pub fn from_slices(p: &OrbitalPresentation, v: OrbitIx, slices: &[SliceIx]) -> Self {
        let mut s = Self::empty(p, v);
        for &a in slices {
            s.counts[a] += 1;
        }
        s
    }

    pub fn over(&self) -> OrbitIx {
        self.over
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, a: SliceIx) -> u32 {
        self.counts[a]
    }

    pub fn orbit_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn is_terminal(&self) -> bool {
        let (last, rest) = self.counts.split_last().unwrap();
        *last == 1 && rest.iter().all(|&c| c == 0)
    }

    /// `n·⋆_V` for some `n`, including `∅`.
    pub fn is_fold(&self) -> bool {
        self.counts[..self.counts.len() - 1].iter().all(|&c| c == 0)
    }

    pub fn terminal_count(&self) -> u32 {
        *self.counts.last().unwrap()
    }

    pub fn points(&self, p: &OrbitalPresentation) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(a, &c)| c as u64 * p.slice(self.over, a).points)
            .sum()
    }

    pub fn add(&mut self, a: SliceIx, n: u32) {
        self.counts[a] += n;
    }

    pub fn add_set(&mut self, other: &VSet) {
        debug_assert_eq!(self.over, other.over);
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
    }

    pub fn scaled(&self, n: u32) -> VSet {
        VSet { over: self.over, counts: self.counts.iter().map(|c| c * n).collect() }
    }

    /// Each orbit repeated according to its multiplicity, in slice order.
    pub fn expanded(&self) -> Vec<SliceIx> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(a, &c)| std::iter::repeat_n(a, c as usize))
            .collect()
    }

    /// Distinct slice orbits that occur.
    pub fn support(&self) -> impl Iterator<Item = SliceIx> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(a, _)| a)
    }

    pub fn is_summand_of(&self, other: &VSet) -> bool {
        self.over == other.over && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// All summands with at most `max_orbits` orbits, `∅` included.
    pub fn summands(&self, max_orbits: u32) -> Vec<VSet> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.counts.len()];
        fn go(
            i: usize,
            left: u32,
            src: &[u32],
            cur: &mut Vec<u32>,
            over: OrbitIx,
            out: &mut Vec<VSet>,
        ) {
            if i == src.len() {
                out.push(VSet { over, counts: cur.clone() });
                return;
            }
            for c in 0..=src[i].min(left) {
                cur[i] = c;
                go(i + 1, left - c, src, cur, over, out);
            }
            cur[i] = 0;
        }
        go(0, max_orbits, &self.counts, &mut cur, self.over, &mut out);
        out
    }

    pub fn describe(&self, p: &OrbitalPresentation) -> String {
        if self.is_empty() {
            return format!("∅ over {}", p.orbit_id(self.over));
        }
        let terms: Vec<String> = self
            .support()
            .map(|a| {
                let id = &p.slice(self.over, a).id;
                let name = if a == p.terminal(self.over) { "*".to_string() } else { format!("[{id}]") };
                match self.counts[a] {
                    1 => name,
                    c => format!("{c}{name}"),
                }
            })
            .collect();
        format!("{} over {}", terms.join("+"), p.orbit_id(self.over))
    }
}
