//! Finite presentations of atomic orbital categories.
//!
//! An orbit `V` carries its list of slice orbits (objects `U → V` of the
//! slice category up to isomorphism), a pullback table and an induction
//! relabelling. Everything else — restriction, indexed coproducts, hom
//! existence — is derived from these tables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{order_of, FiniteGroup, GroupModel, MAX_GROUP_ORDER};
use crate::vset::VSet;

pub type OrbitIx = usize;
pub type SliceIx = usize;
/// Indexed `[v][a][b]`, each entry a list of `(x, y)` slice pairs.
pub type PullbackTable = Vec<Vec<Vec<Vec<(SliceIx, SliceIx)>>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceOrbit {
    pub id: String,
    /// Orbit of the domain `U` of `U → V`.
    pub source: OrbitIx,
    /// Underlying point count of `U` viewed over `V`.
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BackendSpec {
    /// The cyclic group of order `p^n`.
    Chain { p: u64, n: u32 },
    Group { cayley: Vec<Vec<usize>> },
    Semilattice { elements: Vec<String>, meet: Vec<Vec<usize>> },
    /// One-object groupoid `BG` of a group of the given order.
    Bg { order: usize },
    Point,
}

#[derive(Clone, Debug)]
pub struct OrbitalPresentation {
    backend: BackendSpec,
    orbits: Vec<String>,
    slices: Vec<Vec<SliceOrbit>>,
    /// `pullback[v][a][b]`: orbits of `a ×_V b`, each as `(x, y)` with `x` a
    /// slice orbit of `source(a)` and `y` one of `source(b)`.
    pullback: PullbackTable,
    /// `relabel[v][u][x]`: the composite `X → U → V` as a slice orbit of `V`.
    relabel: Vec<Vec<Vec<SliceIx>>>,
    /// Permutations of the slice orbits of an orbit induced by its automorphisms.
    twists: Vec<Vec<Vec<SliceIx>>>,
    hom: Vec<Vec<bool>>,
    factor: Vec<Vec<Vec<Option<SliceIx>>>>,
    group: Option<Arc<GroupModel>>,
}

impl PartialEq for OrbitalPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.backend == other.backend
            && self.orbits == other.orbits
            && self.slices == other.slices
            && self.pullback == other.pullback
            && self.relabel == other.relabel
    }
}

impl Eq for OrbitalPresentation {}

impl OrbitalPresentation {
    #[allow(clippy::type_complexity)]
    pub fn from_tables(
        backend: BackendSpec,
        orbits: Vec<String>,
        slices: Vec<Vec<SliceOrbit>>,
        pullback: PullbackTable,
        relabel: Vec<Vec<Vec<SliceIx>>>,
        twists: Vec<Vec<Vec<SliceIx>>>,
        group: Option<Arc<GroupModel>>,
    ) -> Result<Self> {
        let n = orbits.len();
        if slices.len() != n || pullback.len() != n || relabel.len() != n || twists.len() != n {
            return Err(Error::MismatchedIndex("per-orbit tables have different lengths".into()));
        }
        for v in 0..n {
            let k = slices[v].len();
            if k == 0 {
                return Err(Error::MismatchedIndex(format!("orbit {} has no slice orbits", orbits[v])));
            }
            if slices[v].iter().any(|s| s.source >= n) {
                return Err(Error::MismatchedIndex(format!("bad source over {}", orbits[v])));
            }
            if pullback[v].len() != k || pullback[v].iter().any(|row| row.len() != k) {
                return Err(Error::MismatchedIndex(format!("pullback table over {}", orbits[v])));
            }
            if relabel[v].len() != k {
                return Err(Error::MismatchedIndex(format!("relabel table over {}", orbits[v])));
            }
            for (u, row) in relabel[v].iter().enumerate() {
                let su = slices[v][u].source;
                if row.len() != slices[su].len() || row.iter().any(|&x| x >= k) {
                    return Err(Error::MismatchedIndex(format!("relabel row over {}", orbits[v])));
                }
            }
            for a in 0..k {
                for b in 0..k {
                    let (sa, sb) = (slices[v][a].source, slices[v][b].source);
                    for &(x, y) in &pullback[v][a][b] {
                        if x >= slices[sa].len() || y >= slices[sb].len() {
                            return Err(Error::MismatchedIndex(format!(
                                "pullback entry out of range over {}",
                                orbits[v]
                            )));
                        }
                    }
                }
            }
            if twists[v].iter().any(|t| t.len() != k || t.iter().any(|&x| x >= k)) {
                return Err(Error::MismatchedIndex(format!("twist over {}", orbits[v])));
            }
        }
        let mut hom = vec![vec![false; n]; n];
        for v in 0..n {
            for s in &slices[v] {
                hom[s.source][v] = true;
            }
        }
        let factor = (0..n)
            .map(|v| {
                let k = slices[v].len();
                (0..k)
                    .map(|a| {
                        (0..k)
                            .map(|b| relabel[v][b].iter().position(|&c| c == a))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(OrbitalPresentation { backend, orbits, slices, pullback, relabel, twists, hom, factor, group })
    }

    pub fn build(spec: &BackendSpec) -> Result<Arc<Self>> {
        let p = match spec {
            BackendSpec::Chain { p, n } => chain(*p, *n)?,
            BackendSpec::Group { cayley } => {
                let model = GroupModel::new(FiniteGroup::from_cayley(cayley.clone())?);
                from_group(Arc::new(model), spec.clone())?
            }
            BackendSpec::Semilattice { elements, meet } => semilattice(elements, meet)?,
            BackendSpec::Bg { order } => {
                if *order == 0 {
                    return Err(Error::InvalidSpec("BG of the empty group".into()));
                }
                single(spec.clone(), "BG")?
            }
            BackendSpec::Point => single(spec.clone(), "*")?,
        };
        Ok(Arc::new(p))
    }

    pub fn chain(p: u64, n: u32) -> Result<Arc<Self>> {
        Self::build(&BackendSpec::Chain { p, n })
    }

    pub fn backend(&self) -> &BackendSpec {
        &self.backend
    }

    pub fn group(&self) -> Option<&Arc<GroupModel>> {
        self.group.as_ref()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_ids(&self) -> &[String] {
        &self.orbits
    }

    pub fn orbit_id(&self, v: OrbitIx) -> &str {
        &self.orbits[v]
    }

    pub fn orbit_index(&self, id: &str) -> Result<OrbitIx> {
        self.orbits
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| Error::Parse(format!("unknown orbit {id:?}")))
    }

    pub fn slices(&self, v: OrbitIx) -> &[SliceOrbit] {
        &self.slices[v]
    }

    pub fn slice(&self, v: OrbitIx, a: SliceIx) -> &SliceOrbit {
        &self.slices[v][a]
    }

    pub fn slice_index(&self, v: OrbitIx, id: &str) -> Result<SliceIx> {
        self.slices[v].iter().position(|s| s.id == id).ok_or_else(|| {
            Error::Parse(format!("unknown slice orbit {id:?} over {}", self.orbits[v]))
        })
    }

    pub fn terminal(&self, v: OrbitIx) -> SliceIx {
        self.slices[v].len() - 1
    }

    pub fn source(&self, v: OrbitIx, a: SliceIx) -> OrbitIx {
        self.slices[v][a].source
    }

    pub fn hom_exists(&self, u: OrbitIx, v: OrbitIx) -> bool {
        self.hom[u][v]
    }

    pub fn pullback(&self, v: OrbitIx, a: SliceIx, b: SliceIx) -> &[(SliceIx, SliceIx)] {
        &self.pullback[v][a][b]
    }

    pub fn relabel(&self, v: OrbitIx, u: SliceIx, x: SliceIx) -> SliceIx {
        self.relabel[v][u][x]
    }

    /// Whether there is a map `a → b` in the slice over `v`.
    pub fn slice_hom(&self, v: OrbitIx, a: SliceIx, b: SliceIx) -> bool {
        self.factor[v][a][b].is_some()
    }

    /// A slice orbit `x` of `source(b)` with `b ∘ x = a`, if any.
    pub fn factor(&self, v: OrbitIx, a: SliceIx, b: SliceIx) -> Option<SliceIx> {
        self.factor[v][a][b]
    }

    pub fn twists(&self, v: OrbitIx) -> &[Vec<SliceIx>] {
        &self.twists[v]
    }

    /// `Res` of the single orbit `b` along the map `a`, as a set over `source(a)`.
    pub fn restriction_table(&self, v: OrbitIx, a: SliceIx, b: SliceIx) -> VSet {
        let mut out = VSet::empty(self, self.source(v, a));
        for &(x, _) in &self.pullback[v][a][b] {
            out.add(x, 1);
        }
        out
    }

    /// Orbits `U` with a map `U → V`, including `V`.
    pub fn below(&self, v: OrbitIx) -> impl Iterator<Item = OrbitIx> + '_ {
        (0..self.orbit_count()).filter(move |&u| self.hom[u][v])
    }

    /// The presentation of the slice category over `v`.
    pub fn slice_presentation(&self, v: OrbitIx) -> Result<Self> {
        let objs = &self.slices[v];
        let orbits = objs.iter().map(|s| s.id.clone()).collect();
        let mut slices = Vec::new();
        let mut pullback = Vec::new();
        let mut relabel = Vec::new();
        let mut twists = Vec::new();
        for (b, s) in objs.iter().enumerate() {
            let src = s.source;
            slices.push(
                self.slices[src]
                    .iter()
                    .enumerate()
                    .map(|(x, t)| SliceOrbit {
                        id: t.id.clone(),
                        source: self.relabel[v][b][x],
                        points: t.points,
                    })
                    .collect(),
            );
            pullback.push(self.pullback[src].clone());
            relabel.push(self.relabel[src].clone());
            twists.push(self.twists[src].clone());
        }
        Self::from_tables(self.backend.clone(), orbits, slices, pullback, relabel, twists, None)
    }
}

/// Restriction of `s` along the slice orbit `a` of `s.over()`.
pub fn restrict(p: &OrbitalPresentation, a: SliceIx, s: &VSet) -> VSet {
    let v = s.over();
    let mut out = VSet::empty(p, p.source(v, a));
    for b in s.support() {
        let n = s.count(b);
        for &(x, _) in p.pullback(v, a, b) {
            out.add(x, n);
        }
    }
    out
}

/// Apply an automorphism twist of the orbit `s.over()`.
pub fn twist(perm: &[SliceIx], s: &VSet) -> VSet {
    let mut counts = vec![0; s.counts().len()];
    for (a, &c) in s.counts().iter().enumerate() {
        counts[perm[a]] += c;
    }
    VSet::from_counts(s.over(), counts)
}

/// `Ind` along the slice orbit `u` of `v` of a set over `source(u)`.
pub fn induce(p: &OrbitalPresentation, v: OrbitIx, u: SliceIx, x: &VSet) -> VSet {
    let mut out = VSet::empty(p, v);
    for c in x.support() {
        out.add(p.relabel(v, u, c), x.count(c));
    }
    out
}

/// `∐^S T`: one set `T_U` over `source(U)` per orbit copy of `S`, aligned
/// with [`VSet::expanded`].
pub fn indexed_coproduct(p: &OrbitalPresentation, s: &VSet, t: &[VSet]) -> Result<VSet> {
    let copies = s.expanded();
    if copies.len() != t.len() {
        return Err(Error::MismatchedIndex(format!(
            "{} orbits but {} constituents",
            copies.len(),
            t.len()
        )));
    }
    let v = s.over();
    let mut out = VSet::empty(p, v);
    for (&u, tu) in copies.iter().zip(t) {
        if tu.over() != p.source(v, u) {
            return Err(Error::MismatchedIndex(format!(
                "constituent over {} sits on orbit {}",
                p.orbit_id(tu.over()),
                p.slice(v, u).id
            )));
        }
        out.add_set(&induce(p, v, u, tu));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub checks: Vec<Check>,
}

impl PresentationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, witness: Option<String>) -> Check {
    Check { name: name.into(), passed: witness.is_none(), witness }
}

pub fn validate_presentation(p: &OrbitalPresentation) -> PresentationReport {
    let n = p.orbit_count();
    let slices = |v| 0..p.slices(v).len();
    let mut checks = Vec::new();

    let order = (|| {
        for v in 0..n {
            if p.source(v, p.terminal(v)) != v {
                return Some(format!("last slice over {} is not terminal", p.orbit_id(v)));
            }
            for a in slices(v) {
                if a != p.terminal(v) && p.source(v, a) >= v {
                    return Some(format!("slice {} over {} breaks orbit order", p.slice(v, a).id, p.orbit_id(v)));
                }
                for b in slices(v) {
                    if a > b && p.slice_hom(v, a, b) {
                        return Some(format!("map {} -> {} over {} breaks slice order", a, b, p.orbit_id(v)));
                    }
                }
            }
            for t in p.twists(v) {
                let mut seen = vec![false; t.len()];
                for &x in t {
                    seen[x] = true;
                }
                if seen.contains(&false) || t[p.terminal(v)] != p.terminal(v) {
                    return Some(format!("twist over {} is not a permutation fixing *", p.orbit_id(v)));
                }
            }
        }
        None
    })();
    checks.push(check("ordering", order));

    let ident = (|| {
        for v in 0..n {
            let t = p.terminal(v);
            for b in slices(v) {
                let tb = p.terminal(p.source(v, b));
                if p.pullback(v, t, b) != [(b, tb)] || p.pullback(v, b, t) != [(tb, b)] {
                    return Some(format!("restriction along identity of {} over {}", p.slice(v, b).id, p.orbit_id(v)));
                }
            }
        }
        None
    })();
    checks.push(check("identity", ident));

    let points = (|| {
        for v in 0..n {
            for a in slices(v) {
                for b in slices(v) {
                    let (sa, sb) = (p.source(v, a), p.source(v, b));
                    let pb = p.pullback(v, a, b);
                    let px: u64 = pb.iter().map(|&(x, _)| p.slice(sa, x).points).sum();
                    let py: u64 = pb.iter().map(|&(_, y)| p.slice(sb, y).points).sum();
                    if px != p.slice(v, b).points || py != p.slice(v, a).points {
                        return Some(format!(
                            "point count of {} x {} over {}",
                            p.slice(v, a).id,
                            p.slice(v, b).id,
                            p.orbit_id(v)
                        ));
                    }
                }
            }
        }
        None
    })();
    checks.push(check("point_count", points));

    let symmetry = (|| {
        for v in 0..n {
            for a in slices(v) {
                for b in slices(v) {
                    let mut l: Vec<_> = p.pullback(v, a, b).to_vec();
                    let mut r: Vec<_> = p.pullback(v, b, a).iter().map(|&(x, y)| (y, x)).collect();
                    l.sort();
                    r.sort();
                    let composite = p
                        .pullback(v, a, b)
                        .iter()
                        .all(|&(x, y)| p.relabel(v, a, x) == p.relabel(v, b, y));
                    if l != r || !composite {
                        return Some(format!("pullback {} x {} over {}", a, b, p.orbit_id(v)));
                    }
                }
            }
        }
        None
    })();
    checks.push(check("pullback_symmetry", symmetry));

    let relabel = (|| {
        for v in 0..n {
            let t = p.terminal(v);
            for x in slices(v) {
                if p.relabel(v, t, x) != x {
                    return Some(format!("induction along identity over {}", p.orbit_id(v)));
                }
            }
            for u in slices(v) {
                let su = p.source(v, u);
                if p.relabel(v, u, p.terminal(su)) != u {
                    return Some(format!("induction of * along {} over {}", p.slice(v, u).id, p.orbit_id(v)));
                }
                for y in slices(su) {
                    let vy = p.relabel(v, u, y);
                    if p.source(v, vy) != p.source(su, y) {
                        return Some(format!("induction changes source over {}", p.orbit_id(v)));
                    }
                    for z in slices(p.source(su, y)) {
                        if p.relabel(v, vy, z) != p.relabel(v, u, p.relabel(su, y, z)) {
                            return Some(format!("induction is not associative over {}", p.orbit_id(v)));
                        }
                    }
                }
            }
        }
        None
    })();
    checks.push(check("induction", relabel));

    let fixed = (|| {
        for v in 0..n {
            for a in slices(v) {
                let ta = p.terminal(p.source(v, a));
                if !p.pullback(v, a, a).iter().any(|&(x, _)| x == ta) {
                    return Some(format!("Res Ind * along {} over {} misses *", p.slice(v, a).id, p.orbit_id(v)));
                }
            }
        }
        None
    })();
    checks.push(check("fixed_point", fixed));

    let atomic = (|| {
        for v in 0..n {
            let t = p.terminal(v);
            for u in slices(v) {
                for x in slices(p.source(v, u)) {
                    if p.relabel(v, u, x) == t && u != t {
                        return Some(format!("Ind along {} over {} is terminal", p.slice(v, u).id, p.orbit_id(v)));
                    }
                }
            }
        }
        None
    })();
    checks.push(check("atomicity", atomic));

    let pasting = (|| {
        for v in 0..n {
            for a in slices(v) {
                let sa = p.source(v, a);
                for c in slices(sa) {
                    let ac = p.relabel(v, a, c);
                    let l = p.source(sa, c);
                    let lhs: Vec<VSet> = slices(v)
                        .map(|b| restrict(p, c, &restrict(p, a, &VSet::orbit(p, v, b))))
                        .collect();
                    let rhs: Vec<VSet> = slices(v).map(|b| p.restriction_table(v, ac, b)).collect();
                    let identity: Vec<SliceIx> = slices(l).collect();
                    let ok = std::iter::once(&identity)
                        .chain(p.twists(l))
                        .any(|perm| lhs.iter().zip(&rhs).all(|(x, y)| *x == twist(perm, y)));
                    if !ok {
                        return Some(format!(
                            "restricting along {} then {} over {}",
                            p.slice(v, a).id,
                            p.slice(sa, c).id,
                            p.orbit_id(v)
                        ));
                    }
                }
            }
        }
        None
    })();
    checks.push(check("pasting", pasting));

    PresentationReport { checks }
}

fn chain_label(p: u64, i: u32) -> String {
    if i == 0 {
        "e".into()
    } else {
        format!("C_{}", p.pow(i))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn chain(p: u64, n: u32) -> Result<OrbitalPresentation> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    if n > 12 || p.checked_pow(n).is_none_or(|o| o > 1 << 40) {
        return Err(Error::TooLarge(format!("C_{{{p}^{n}}}")));
    }
    let m = n as usize;
    let orbits = (0..=n).map(|i| chain_label(p, i)).collect();
    let slices = (0..=m)
        .map(|i| {
            (0..=i)
                .map(|j| SliceOrbit {
                    id: chain_label(p, j as u32),
                    source: j,
                    points: p.pow((i - j) as u32),
                })
                .collect()
        })
        .collect();
    let pullback = (0..=m)
        .map(|i| {
            (0..=i)
                .map(|a| {
                    (0..=i)
                        .map(|b| {
                            let k = a.min(b);
                            let copies = p.pow((i - a.max(b)) as u32) as usize;
                            vec![(k, k); copies]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let relabel = (0..=m).map(|i| (0..=i).map(|u| (0..=u).collect()).collect()).collect();
    let twists = vec![Vec::new(); m + 1];
    let group = match p.checked_pow(n) {
        Some(o) if o as usize <= MAX_GROUP_ORDER => {
            Some(Arc::new(GroupModel::new(FiniteGroup::cyclic(o as usize)?)))
        }
        _ => None,
    };
    OrbitalPresentation::from_tables(
        BackendSpec::Chain { p, n },
        orbits,
        slices,
        pullback,
        relabel,
        twists,
        group,
    )
}

/// Presentation of the orbit category of a finite group.
pub fn from_group(model: Arc<GroupModel>, backend: BackendSpec) -> Result<OrbitalPresentation> {
    let g = &model.group;
    let m = &*model;
    let nc = m.class_reps.len();
    let orbits = m.class_reps.iter().map(|&k| m.label(k)).collect();
    let mut slices = Vec::with_capacity(nc);
    let mut pullback = Vec::with_capacity(nc);
    let mut relabel = Vec::with_capacity(nc);
    let mut twists = Vec::with_capacity(nc);
    // subgroup of `K0 = rep(class)` conjugated by x: x J x^-1
    let slice_in = |c: usize, mask| m.slice_of[c][m.index_of(mask).unwrap()].unwrap();
    for c in 0..nc {
        let h = m.subgroups[m.class_reps[c]];
        let reps = &m.slice_reps[c];
        slices.push(
            reps.iter()
                .map(|&k| SliceOrbit {
                    id: m.label(k),
                    source: m.class_of[k],
                    points: (order_of(h) / order_of(m.subgroups[k])) as u64,
                })
                .collect::<Vec<_>>(),
        );
        relabel.push(
            reps.iter()
                .map(|&k| {
                    let src = m.class_of[k];
                    let x = m.conjugator[k];
                    m.slice_reps[src]
                        .iter()
                        .map(|&j| slice_in(c, g.conjugate(x, m.subgroups[j])))
                        .collect()
                })
                .collect(),
        );
        pullback.push(
            reps.iter()
                .map(|&ka| {
                    let a = m.subgroups[ka];
                    let (sa, xa) = (m.class_of[ka], m.conjugator[ka]);
                    reps.iter()
                        .map(|&kb| {
                            let b = m.subgroups[kb];
                            let (sb, xb) = (m.class_of[kb], m.conjugator[kb]);
                            m.double_cosets(h, a, b)
                                .into_iter()
                                .map(|t| {
                                    let ti = g.inv(t);
                                    let on_a = a & g.conjugate(t, b);
                                    let on_b = b & g.conjugate(ti, a);
                                    let x = slice_in(sa, g.conjugate(g.inv(xa), on_a));
                                    let y = slice_in(sb, g.conjugate(g.inv(xb), on_b));
                                    (x, y)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        );
        let mut perms: Vec<Vec<SliceIx>> = Vec::new();
        for nz in m.normalizer(h) {
            let perm: Vec<SliceIx> =
                reps.iter().map(|&j| slice_in(c, g.conjugate(nz, m.subgroups[j]))).collect();
            if perm.iter().enumerate().any(|(i, &x)| i != x) && !perms.contains(&perm) {
                perms.push(perm);
            }
        }
        twists.push(perms);
    }
    OrbitalPresentation::from_tables(backend, orbits, slices, pullback, relabel, twists, Some(model))
}

fn semilattice(names: &[String], meet: &[Vec<usize>]) -> Result<OrbitalPresentation> {
    let n = names.len();
    if n == 0 || meet.len() != n || meet.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidSpec("meet table is not square over the elements".into()));
    }
    for a in 0..n {
        if meet[a][a] != a {
            return Err(Error::InvalidSpec(format!("meet is not idempotent at {}", names[a])));
        }
        for b in 0..n {
            if meet[a][b] != meet[b][a] {
                return Err(Error::InvalidSpec("meet is not commutative".into()));
            }
            for c in 0..n {
                if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                    return Err(Error::InvalidSpec("meet is not associative".into()));
                }
            }
        }
    }
    let leq = |a: usize, b: usize| meet[a][b] == a;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| ((0..n).filter(|&b| leq(b, a)).count(), a));
    let pos: Vec<usize> = {
        let mut pos = vec![0; n];
        for (i, &a) in order.iter().enumerate() {
            pos[a] = i;
        }
        pos
    };
    // below[v]: elements u <= v, in orbit order; v itself comes last
    let below: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| order.iter().copied().filter(|&u| leq(u, v)).collect())
        .collect();
    let idx_in = |v: usize, u: usize| below[pos[v]].iter().position(|&w| w == u).unwrap();
    let orbits = order.iter().map(|&a| names[a].clone()).collect();
    let slices = order
        .iter()
        .enumerate()
        .map(|(i, _)| {
            below[i]
                .iter()
                .map(|&u| SliceOrbit { id: names[u].clone(), source: pos[u], points: 1 })
                .collect()
        })
        .collect();
    let pullback = order
        .iter()
        .enumerate()
        .map(|(i, _)| {
            below[i]
                .iter()
                .map(|&a| {
                    below[i]
                        .iter()
                        .map(|&b| {
                            let m = meet[a][b];
                            vec![(idx_in(a, m), idx_in(b, m))]
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let relabel = order
        .iter()
        .enumerate()
        .map(|(i, &v)| below[i].iter().map(|&u| below[pos[u]].iter().map(|&x| idx_in(v, x)).collect()).collect())
        .collect();
    OrbitalPresentation::from_tables(
        BackendSpec::Semilattice { elements: names.to_vec(), meet: meet.to_vec() },
        orbits,
        slices,
        pullback,
        relabel,
        vec![Vec::new(); n],
        None,
    )
}

fn single(backend: BackendSpec, id: &str) -> Result<OrbitalPresentation> {
    OrbitalPresentation::from_tables(
        backend,
        vec![id.into()],
        vec![vec![SliceOrbit { id: id.into(), source: 0, points: 1 }]],
        vec![vec![vec![vec![(0, 0)]]]],
        vec![vec![vec![0]]],
        vec![Vec::new()],
        None,
    )
}
