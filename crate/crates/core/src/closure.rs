//! Closure of collections of `V`-sets under restriction and self-indexed
//! coproducts.
//!
//! Two engines live here. [`close_small`] works with sets of at most `k`
//! orbits and is exact for almost essentially unital closures: there every
//! summand of a non-terminal member is a member, so a derivation of a small
//! set never has to pass through a large one. [`saturate_bounded`] bounds
//! the number of underlying points instead and makes no such assumption.

use std::collections::HashSet;

use crate::family::Family;
use crate::orbital::{induce, restrict, twist, OrbitIx, OrbitalPresentation};
use crate::vset::VSet;

pub type Levels = Vec<HashSet<VSet>>;

fn all_restrictions(p: &OrbitalPresentation, x: &VSet) -> Vec<VSet> {
    let v = x.over();
    let mut out = Vec::new();
    for a in 0..p.slices(v).len() {
        let z = restrict(p, a, x);
        for perm in p.twists(z.over()) {
            out.push(twist(perm, &z));
        }
        out.push(z);
    }
    out
}

/// Orbits whose level is nonempty in the closure of `seeds`.
fn colours(p: &OrbitalPresentation, seeds: &[VSet]) -> Family {
    Family::generated_by(p, seeds.iter().map(|s| s.over()))
}

/// `ε` of a collection: orbits below one carrying a non-terminal set.
pub fn epsilon_of(p: &OrbitalPresentation, seeds: impl IntoIterator<Item = VSet>) -> Family {
    Family::generated_by(p, seeds.into_iter().filter(|s| !s.is_terminal()).map(|s| s.over()))
}

/// Whether the closure of `seeds` is guaranteed almost essentially unital:
/// every orbit below a non-terminal seed is below an orbit carrying `∅`.
pub fn ae_shaped(p: &OrbitalPresentation, seeds: &[VSet]) -> bool {
    let eps = epsilon_of(p, seeds.iter().cloned());
    let ups = Family::generated_by(p, seeds.iter().filter(|s| s.is_empty()).map(|s| s.over()));
    eps.is_subset(ups)
}

/// All members with at most `k` orbits of the closure of `seeds`.
///
/// Requires [`ae_shaped`] seeds; seeds may have any number of orbits.
pub fn close_small(p: &OrbitalPresentation, seeds: &[VSet], k: u32) -> Levels {
    let n = p.orbit_count();
    let mut levels: Levels = vec![HashSet::new(); n];
    let mut fresh: Vec<VSet> = Vec::new();
    for v in colours(p, seeds).iter() {
        insert(&mut levels, &mut fresh, VSet::terminal(p, v));
    }
    for s in seeds {
        absorb(p, k, &mut levels, &mut fresh, s);
    }
    while !fresh.is_empty() {
        let batch = std::mem::take(&mut fresh);
        for x in &batch {
            absorb(p, k, &mut levels, &mut fresh, x);
        }
        // a fresh set may serve as index or as constituent, so rerun every level
        let mut made = Vec::new();
        for level in &levels {
            for a in level {
                if a.is_terminal() || a.is_empty() || a.orbit_count() > k {
                    continue;
                }
                coproducts_small(p, a, &levels, k, &mut made);
            }
        }
        for s in made {
            insert(&mut levels, &mut fresh, s);
        }
    }
    levels
}

fn insert(levels: &mut Levels, fresh: &mut Vec<VSet>, s: VSet) {
    if levels[s.over()].insert(s.clone()) {
        fresh.push(s);
    }
}

/// Restrictions of `x`, cut down to their small summands when non-terminal.
fn absorb(p: &OrbitalPresentation, k: u32, levels: &mut Levels, fresh: &mut Vec<VSet>, x: &VSet) {
    for z in all_restrictions(p, x) {
        if z.is_terminal() {
            insert(levels, fresh, z);
        } else {
            for y in z.summands(k) {
                insert(levels, fresh, y);
            }
        }
    }
}

fn coproducts_small(p: &OrbitalPresentation, a: &VSet, levels: &Levels, k: u32, out: &mut Vec<VSet>) {
    let v = a.over();
    let copies = a.expanded();
    let m = copies.len() as u32;
    let mut partial: Vec<(VSet, u32)> = vec![(VSet::empty(p, v), 0)];
    for (i, &u) in copies.iter().enumerate() {
        let reserve = m - i as u32 - 1;
        let src = p.source(v, u);
        let mut next = HashSet::new();
        for (acc, used) in &partial {
            for t in &levels[src] {
                let c = t.orbit_count();
                if c == 0 || used + c + reserve > k {
                    continue;
                }
                let mut s = acc.clone();
                s.add_set(&induce(p, v, u, t));
                next.insert((s, used + c));
            }
        }
        partial = next.into_iter().collect();
    }
    out.extend(partial.into_iter().map(|(s, _)| s));
}

/// Every set over `v` with at most `bound` points.
pub fn sets_within(p: &OrbitalPresentation, v: OrbitIx, bound: u64) -> Vec<VSet> {
    let k = p.slices(v).len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn go(p: &OrbitalPresentation, v: OrbitIx, i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<VSet>) {
        if i == cur.len() {
            out.push(VSet::from_counts(v, cur.clone()));
            return;
        }
        let w = p.slice(v, i).points;
        let mut c = 0;
        while c as u64 * w <= left {
            cur[i] = c;
            go(p, v, i + 1, left - c as u64 * w, cur, out);
            c += 1;
        }
        cur[i] = 0;
    }
    go(p, v, 0, bound, &mut cur, &mut out);
    out.sort();
    out
}

/// All members with at most `bound` points of the closure of `seeds`, using
/// only intermediate sets within the same bound.
pub fn saturate_bounded(p: &OrbitalPresentation, seeds: &[VSet], bound: u64) -> Levels {
    let n = p.orbit_count();
    let mut levels: Levels = vec![HashSet::new(); n];
    for v in colours(p, seeds).iter() {
        levels[v].insert(VSet::terminal(p, v));
    }
    for s in seeds {
        if s.points(p) <= bound {
            levels[s.over()].insert(s.clone());
        }
    }
    loop {
        let mut made = Vec::new();
        for v in 0..n {
            for x in &levels[v] {
                made.extend(all_restrictions(p, x));
                if !x.is_terminal() && !x.is_empty() {
                    coproducts_bounded(p, x, &levels, bound, &mut made);
                }
            }
        }
        let mut changed = false;
        for s in made {
            changed |= levels[s.over()].insert(s);
        }
        if !changed {
            return levels;
        }
    }
}

fn coproducts_bounded(p: &OrbitalPresentation, a: &VSet, levels: &Levels, bound: u64, out: &mut Vec<VSet>) {
    let v = a.over();
    let mut partial: HashSet<VSet> = HashSet::from([VSet::empty(p, v)]);
    for u in a.expanded() {
        let src = p.source(v, u);
        let mut next = HashSet::new();
        for acc in &partial {
            let used = acc.points(p);
            for t in &levels[src] {
                let s = induce(p, v, u, t);
                if used + s.points(p) <= bound {
                    let mut s2 = acc.clone();
                    s2.add_set(&s);
                    next.insert(s2);
                }
            }
        }
        partial = next;
    }
    out.extend(partial);
}
