//! Brute-force enumeration of almost essentially unital weak indexing systems
//! through their sparse collections.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::close_small;
use crate::error::{Error, Result};
use crate::orbital::{OrbitIx, OrbitalPresentation};
use crate::sparse::{is_sparse, max_sparse_orbits, sparse_universe};
use crate::vset::VSet;
use crate::windex::{SparseCollection, WeakIndexingSystem};

/// Largest per-orbit sparse universe the enumerator accepts.
pub const MAX_UNIVERSE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemClass {
    AeUnital,
    /// Almost unital, i.e. one-colour and almost essentially unital.
    AlmostUnital,
    Unital,
    Indexing,
}

impl FromStr for SystemClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ae_unital" | "aE_unital" | "ae" => Ok(SystemClass::AeUnital),
            "a_unital" | "almost_unital" | "one_color_ae" => Ok(SystemClass::AlmostUnital),
            "unital" => Ok(SystemClass::Unital),
            "indexing" => Ok(SystemClass::Indexing),
            _ => Err(Error::Parse(format!("unknown class {s}"))),
        }
    }
}

/// Orbits sorted so that every orbit comes after those mapping to it.
pub fn topological_order(p: &OrbitalPresentation) -> Vec<OrbitIx> {
    let mut order: Vec<OrbitIx> = (0..p.orbit_count()).collect();
    order.sort_by_key(|&v| (p.below(v).count(), v));
    order
}

/// Admissible levels over `v` before any closure check.
fn level_candidates(p: &OrbitalPresentation, v: OrbitIx, class: SystemClass) -> Result<Vec<BTreeSet<VSet>>> {
    let universe = sparse_universe(p, v);
    if universe.len() > MAX_UNIVERSE {
        return Err(Error::TooLarge(format!("{} sparse sets over {}", universe.len(), p.orbit_id(v))));
    }
    let star = VSet::terminal(p, v);
    let none = VSet::empty(p, v);
    let mut out = Vec::new();
    for mask in 0u32..1 << universe.len() {
        let level: BTreeSet<VSet> =
            universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| s.clone()).collect();
        if level.is_empty() {
            if class == SystemClass::AeUnital {
                out.push(level);
            }
            continue;
        }
        if !level.contains(&star) {
            continue;
        }
        if level.iter().any(|s| !s.is_terminal()) && !level.contains(&none) {
            continue;
        }
        if matches!(class, SystemClass::Unital | SystemClass::Indexing) && !level.contains(&none) {
            continue;
        }
        if class == SystemClass::Indexing && !level.contains(&VSet::n_terminal(p, v, 2)) {
            continue;
        }
        out.push(level);
    }
    Ok(out)
}

/// All systems of the class, sorted by sparse collection.
pub fn enumerate_wis(p: &Arc<OrbitalPresentation>, class: SystemClass) -> Result<Vec<WeakIndexingSystem>> {
    let order = topological_order(p);
    let cands: Vec<Vec<BTreeSet<VSet>>> =
        order.iter().map(|&v| level_candidates(p, v, class)).collect::<Result<_>>()?;
    let k = max_sparse_orbits(p);
    let mut found = extend(p, &order, &cands, k, 0, SparseCollection::empty(p));
    found.sort();
    Ok(found.into_iter().map(|c| WeakIndexingSystem::from_sparse_unchecked(p, c)).collect())
}

fn extend(
    p: &OrbitalPresentation,
    order: &[OrbitIx],
    cands: &[Vec<BTreeSet<VSet>>],
    k: u32,
    depth: usize,
    prefix: SparseCollection,
) -> Vec<SparseCollection> {
    if depth == order.len() {
        return vec![prefix];
    }
    cands[depth]
        .par_iter()
        .flat_map_iter(|level| {
            let mut next = prefix.clone();
            for s in level {
                next.insert(s.clone());
            }
            let seeds: Vec<VSet> = next.sets().cloned().collect();
            let closed = close_small(p, &seeds, k);
            let consistent = closed.iter().enumerate().all(|(u, l)| {
                l.iter().filter(|s| is_sparse(p, s)).count() == next.level(u).len()
            });
            if consistent {
                extend(p, order, cands, k, depth + 1, next)
            } else {
                Vec::new()
            }
        })
        .collect()
}

/// A finite poset given by its order relation.
#[derive(Clone, Debug, Serialize)]
pub struct Poset {
    pub leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn from_fn(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        Poset { leq: (0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Covering pairs `(i, j)`, `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|m| m != i && m != j && self.leq[i][m] && self.leq[m][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.leq[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
            && (0..n).all(|i| (0..n).all(|j| (0..n).all(|m| !(self.leq[i][j] && self.leq[j][m]) || self.leq[i][m])))
    }

    /// Search for an order isomorphism onto `other`.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |q: &Poset, i: usize| {
            let up = (0..q.len()).filter(|&j| q.leq[i][j]).count();
            let down = (0..q.len()).filter(|&j| q.leq[j][i]).count();
            (up, down)
        };
        let a: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let b: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            s: &Poset,
            o: &Poset,
            a: &[(usize, usize)],
            b: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if i == map.len() {
                return true;
            }
            for j in 0..map.len() {
                if used[j] || a[i] != b[j] {
                    continue;
                }
                if (0..i).all(|m| s.leq[m][i] == o.leq[map[m]][j] && s.leq[i][m] == o.leq[j][map[m]]) {
                    map[i] = j;
                    used[j] = true;
                    if go(i + 1, s, o, a, b, map, used) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        go(0, self, other, &a, &b, &mut map, &mut used).then_some(map)
    }
}

/// The order of a list of systems.
pub fn poset_of(systems: &[WeakIndexingSystem]) -> Result<Poset> {
    let n = systems.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j || systems[i].leq(&systems[j])?;
        }
    }
    Ok(Poset { leq })
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseNode {
    pub id: usize,
    pub label: String,
    pub annotations: serde_json::Map<String, serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseDiagram {
    pub nodes: Vec<HasseNode>,
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn new(poset: &Poset, labels: Vec<String>) -> Self {
        let nodes = labels
            .into_iter()
            .enumerate()
            .map(|(id, label)| HasseNode { id, label, annotations: Default::default() })
            .collect();
        HasseDiagram { nodes, edges: poset.covers() }
    }

    /// Edge list by label, sorted.
    pub fn labelled_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|&(i, j)| (self.nodes[i].label.clone(), self.nodes[j].label.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for n in &self.nodes {
            s.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, n.label.replace('"', "\\\"")));
        }
        for &(i, j) in &self.edges {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}
