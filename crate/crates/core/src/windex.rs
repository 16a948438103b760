//! Weak indexing systems: restriction-stable collections of `V`-sets, one
//! level per orbit, closed under self-indexed coproducts and containing `⋆_V`
//! on every nonempty level.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::closure::{ae_shaped, close_small, epsilon_of, saturate_bounded, sets_within, Levels};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::orbital::{indexed_coproduct, restrict, OrbitIx, OrbitalPresentation, SliceIx};
use crate::sparse::{is_sparse, max_sparse_orbits, sparse_decompose, sparse_universe};
use crate::vset::VSet;

/// Point bound used when a caller does not choose one; `WINDEX_BOUND`
/// overrides it.
pub fn default_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("WINDEX_BOUND").ok().and_then(|s| s.parse().ok()).unwrap_or(8)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Yes,
    No,
    /// The set is larger than the bound the system was saturated to.
    Indeterminate,
}

impl Membership {
    pub fn is_yes(self) -> bool {
        self == Membership::Yes
    }

    fn from_bool(b: bool) -> Self {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }
}

/// A collection of sparse sets, one level per orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseCollection {
    levels: Vec<BTreeSet<VSet>>,
}

impl SparseCollection {
    pub fn empty(p: &OrbitalPresentation) -> Self {
        SparseCollection { levels: vec![BTreeSet::new(); p.orbit_count()] }
    }

    pub fn from_sets(p: &OrbitalPresentation, sets: impl IntoIterator<Item = VSet>) -> Self {
        let mut c = Self::empty(p);
        for s in sets {
            c.levels[s.over()].insert(s);
        }
        c
    }

    pub fn level(&self, v: OrbitIx) -> &BTreeSet<VSet> {
        &self.levels[v]
    }

    pub fn levels(&self) -> &[BTreeSet<VSet>] {
        &self.levels
    }

    pub fn contains(&self, s: &VSet) -> bool {
        self.levels[s.over()].contains(s)
    }

    pub fn insert(&mut self, s: VSet) {
        self.levels[s.over()].insert(s);
    }

    pub fn sets(&self) -> impl Iterator<Item = &VSet> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a.is_subset(b))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        SparseCollection {
            levels: self.levels.iter().zip(&other.levels).map(|(a, b)| a & b).collect(),
        }
    }

    /// Keep only the levels over `family`.
    pub fn restricted_to(&self, family: Family) -> Self {
        SparseCollection {
            levels: self
                .levels
                .iter()
                .enumerate()
                .map(|(v, l)| if family.contains(v) { l.clone() } else { BTreeSet::new() })
                .collect(),
        }
    }
}

fn sparse_part(p: &OrbitalPresentation, levels: &Levels) -> SparseCollection {
    SparseCollection::from_sets(p, levels.iter().flatten().filter(|s| is_sparse(p, s)).cloned())
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub generators: Vec<VSet>,
    pub bound: u64,
    levels: Arc<Levels>,
}

/// Systems known by a membership rule rather than by their sparse sets.
#[derive(Clone, Debug)]
pub enum Rule {
    /// The terminal system with colours `ℱ` that is unital exactly on `ℱ`:
    /// everything over `ℱ`, and elsewhere everything except sets all of whose
    /// orbits lie over `ℱ`.
    TerminalNonunital(Family),
    /// Coinduction of `inner` along the slice orbit `f` of the terminal
    /// orbit `top`.
    Coinduced { inner: Box<WeakIndexingSystem>, top: OrbitIx, f: SliceIx },
}

#[derive(Clone, Debug)]
pub enum Form {
    /// Almost essentially unital: determined exactly by its sparse sets.
    Sparse(SparseCollection),
    Generated(Generated),
    Rule(Rule),
}

#[derive(Clone, Debug)]
pub struct WeakIndexingSystem {
    p: Arc<OrbitalPresentation>,
    form: Form,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Families {
    #[serde(skip)]
    pub c: Family,
    #[serde(skip)]
    pub upsilon: Family,
    #[serde(skip)]
    pub nabla: Family,
    #[serde(skip)]
    pub epsilon: Family,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub one_color: bool,
    pub ae_unital: bool,
    pub almost_unital: bool,
    pub unital: bool,
    pub indexing: bool,
}

fn same(a: &Arc<OrbitalPresentation>, b: &Arc<OrbitalPresentation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl WeakIndexingSystem {
    pub fn presentation(&self) -> &Arc<OrbitalPresentation> {
        &self.p
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn sparse(&self) -> Option<&SparseCollection> {
        match &self.form {
            Form::Sparse(c) => Some(c),
            _ => None,
        }
    }

    /// Accept a sparse collection if it is exactly the sparse part of an
    /// almost essentially unital system.
    pub fn from_sparse(p: &Arc<OrbitalPresentation>, coll: SparseCollection) -> Result<Self> {
        if let Some(s) = coll.sets().find(|s| !is_sparse(p, s)) {
            return Err(Error::NotClosed { witness: format!("{} is not sparse", s.describe(p)) });
        }
        let seeds: Vec<VSet> = coll.sets().cloned().collect();
        if !ae_shaped(p, &seeds) {
            return Err(Error::NotAeUnital("a non-terminal set sits over an orbit without ∅".into()));
        }
        let closed = sparse_part(p, &close_small(p, &seeds, max_sparse_orbits(p)));
        if let Some(extra) = closed.sets().find(|s| !coll.contains(s)) {
            return Err(Error::NotClosed { witness: format!("{} is generated", extra.describe(p)) });
        }
        Ok(Self::from_sparse_unchecked(p, coll))
    }

    /// Wrap a collection already known to be closed.
    pub(crate) fn from_sparse_unchecked(p: &Arc<OrbitalPresentation>, coll: SparseCollection) -> Self {
        WeakIndexingSystem { p: p.clone(), form: Form::Sparse(coll) }
    }

    /// `Cl_∞` of the seeds; exact when the seeds have almost essentially
    /// unital shape, bounded by `bound` points otherwise.
    pub fn closure(p: &Arc<OrbitalPresentation>, seeds: &[VSet], bound: u64) -> Result<Self> {
        if ae_shaped(p, seeds) {
            let levels = close_small(p, seeds, max_sparse_orbits(p));
            return Ok(Self::from_sparse_unchecked(p, sparse_part(p, &levels)));
        }
        Self::generated(p, seeds.to_vec(), bound)
    }

    pub fn generated(p: &Arc<OrbitalPresentation>, generators: Vec<VSet>, bound: u64) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.points(p) > bound) {
            return Err(Error::BoundTooSmall { bound: bound as u32, what: g.describe(p) });
        }
        let levels = Arc::new(saturate_bounded(p, &generators, bound));
        Ok(WeakIndexingSystem { p: p.clone(), form: Form::Generated(Generated { generators, bound, levels }) })
    }

    pub fn from_rule(p: &Arc<OrbitalPresentation>, rule: Rule) -> Self {
        WeakIndexingSystem { p: p.clone(), form: Form::Rule(rule) }
    }

    pub fn member(&self, s: &VSet) -> Membership {
        let p = &*self.p;
        match &self.form {
            Form::Sparse(c) => Membership::from_bool(member_sparse(p, c, s)),
            Form::Generated(g) => {
                if s.points(p) > g.bound {
                    Membership::Indeterminate
                } else {
                    Membership::from_bool(g.levels[s.over()].contains(s))
                }
            }
            Form::Rule(Rule::TerminalNonunital(fam)) => {
                let v = s.over();
                Membership::from_bool(fam.contains(v) || !s.support().all(|a| fam.contains(p.source(v, a))))
            }
            Form::Rule(Rule::Coinduced { inner, top, f }) => {
                let v = s.over();
                let Some(u) = (0..p.slices(*top).len()).find(|&u| p.source(*top, u) == v) else {
                    return Membership::No;
                };
                let mut out = Membership::Yes;
                for &(x, y) in p.pullback(*top, u, *f) {
                    let z = restrict(p, x, s);
                    match inner.member(&VSet::from_counts(y, z.counts().to_vec())) {
                        Membership::Yes => {}
                        Membership::No => return Membership::No,
                        Membership::Indeterminate => out = Membership::Indeterminate,
                    }
                }
                out
            }
        }
    }

    /// Bound up to which membership is decided; `None` when exact.
    pub fn bound(&self) -> Option<u64> {
        match &self.form {
            Form::Generated(g) => Some(g.bound),
            Form::Rule(Rule::Coinduced { inner, .. }) => inner.bound(),
            _ => None,
        }
    }

    fn working_bound(&self, other: Option<&Self>) -> u64 {
        let mut b = self.bound().unwrap_or(default_bound());
        if let Some(o) = other {
            b = b.max(o.bound().unwrap_or(default_bound()));
        }
        b
    }

    /// Members with at most `bound` points, level by level.
    pub fn members_within(&self, bound: u64) -> Vec<Vec<VSet>> {
        (0..self.p.orbit_count())
            .map(|v| sets_within(&self.p, v, bound).into_iter().filter(|s| self.member(s).is_yes()).collect())
            .collect()
    }

    fn has_non_terminal(&self, v: OrbitIx) -> bool {
        let p = &*self.p;
        match &self.form {
            Form::Sparse(c) => c.level(v).iter().any(|s| !s.is_terminal()),
            Form::Generated(g) => g.levels[v].iter().any(|s| !s.is_terminal()),
            Form::Rule(_) => {
                let reach = sparse_universe(p, v).iter().map(|s| s.points(p)).max().unwrap_or(2);
                sets_within(p, v, reach.max(default_bound()))
                    .iter()
                    .any(|s| !s.is_terminal() && self.member(s).is_yes())
            }
        }
    }

    pub fn families(&self) -> Families {
        let p = &*self.p;
        let n = p.orbit_count();
        let with = |s: &dyn Fn(OrbitIx) -> VSet| {
            Family::generated_by(p, (0..n).filter(|&v| self.member(&s(v)).is_yes()))
        };
        Families {
            c: with(&|v| VSet::terminal(p, v)),
            upsilon: with(&|v| VSet::empty(p, v)),
            nabla: with(&|v| VSet::n_terminal(p, v, 2)),
            epsilon: Family::generated_by(p, (0..n).filter(|&v| self.has_non_terminal(v))),
        }
    }

    pub fn classify(&self) -> Classification {
        let f = self.families();
        let all = Family::all(&self.p);
        let one_color = f.c == all;
        let ae_unital = f.epsilon == f.upsilon;
        Classification {
            one_color,
            ae_unital,
            almost_unital: ae_unital && one_color,
            unital: f.upsilon == all,
            indexing: f.upsilon.intersection(f.nabla) == all,
        }
    }

    /// Sparse members; `lossy` when the system is not almost essentially
    /// unital and so is not determined by them.
    pub fn sparse_extract(&self) -> Result<(SparseCollection, bool)> {
        if let Form::Sparse(c) = &self.form {
            return Ok((c.clone(), false));
        }
        let p = &*self.p;
        let mut coll = SparseCollection::empty(p);
        for v in 0..p.orbit_count() {
            for s in sparse_universe(p, v) {
                match self.member(&s) {
                    Membership::Yes => coll.insert(s),
                    Membership::No => {}
                    Membership::Indeterminate => {
                        return Err(Error::BoundTooSmall {
                            bound: self.bound().unwrap_or(0) as u32,
                            what: s.describe(p),
                        })
                    }
                }
            }
        }
        Ok((coll, !self.classify().ae_unital))
    }

    /// The almost essentially unital form of this system, if it is one.
    pub fn to_sparse(&self) -> Result<Self> {
        let (coll, lossy) = self.sparse_extract()?;
        if lossy {
            return Err(Error::NotAeUnital("system is not determined by its sparse sets".into()));
        }
        Ok(Self::from_sparse_unchecked(&self.p, coll))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same(&self.p, &other.p) {
            Ok(())
        } else {
            Err(Error::MixedPresentation)
        }
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if let (Form::Sparse(a), Form::Sparse(b)) = (&self.form, &other.form) {
            let seeds: Vec<VSet> = a.sets().chain(b.sets()).cloned().collect();
            let levels = close_small(&self.p, &seeds, max_sparse_orbits(&self.p));
            return Ok(Self::from_sparse_unchecked(&self.p, sparse_part(&self.p, &levels)));
        }
        let bound = self.working_bound(Some(other));
        let mut gens: Vec<VSet> = self.members_within(bound).into_iter().flatten().collect();
        gens.extend(other.members_within(bound).into_iter().flatten());
        gens.sort();
        gens.dedup();
        Self::closure(&self.p, &gens, bound)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if let (Form::Sparse(a), Form::Sparse(b)) = (&self.form, &other.form) {
            return Ok(Self::from_sparse_unchecked(&self.p, a.intersection(b)));
        }
        let bound = self.working_bound(Some(other));
        let gens: Vec<VSet> = self
            .members_within(bound)
            .into_iter()
            .flatten()
            .filter(|s| other.member(s).is_yes())
            .collect();
        Self::closure(&self.p, &gens, bound)
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        if let (Form::Sparse(a), Form::Sparse(b)) = (&self.form, &other.form) {
            return Ok(a.is_subset(b));
        }
        let bound = self.working_bound(Some(other));
        for s in self.members_within(bound).iter().flatten() {
            match other.member(s) {
                Membership::Yes => {}
                Membership::No => return Ok(false),
                Membership::Indeterminate => {
                    return Err(Error::BoundTooSmall { bound: bound as u32, what: s.describe(&self.p) })
                }
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    /// Keep the levels over `family` and empty the rest (`E_ℱ` of the
    /// underlying `ℱ`-system).
    pub fn extend_from(&self, family: Family) -> Result<Self> {
        match &self.form {
            Form::Sparse(c) => Ok(Self::from_sparse_unchecked(&self.p, c.restricted_to(family))),
            _ => {
                let bound = self.working_bound(None);
                let gens: Vec<VSet> = self
                    .members_within(bound)
                    .into_iter()
                    .flatten()
                    .filter(|s| family.contains(s.over()))
                    .collect();
                Self::closure(&self.p, &gens, bound)
            }
        }
    }

    pub fn describe(&self) -> String {
        let p = &*self.p;
        match &self.form {
            Form::Sparse(c) => (0..p.orbit_count())
                .map(|v| {
                    let sets: Vec<String> = c
                        .level(v)
                        .iter()
                        .map(|s| s.describe(p).split(" over ").next().unwrap().to_string())
                        .collect();
                    format!("{}: {{{}}}", p.orbit_id(v), sets.join(", "))
                })
                .collect::<Vec<_>>()
                .join("; "),
            Form::Generated(g) => format!(
                "generated by {} sets within {} points",
                g.generators.len(),
                g.bound
            ),
            Form::Rule(Rule::TerminalNonunital(f)) => format!("terminal non-unital on {:?}", f.ids(p)),
            Form::Rule(Rule::Coinduced { .. }) => "coinduced".into(),
        }
    }
}

/// Membership in the closure of a valid sparse collection, by recursive
/// sparse decomposition.
pub fn member_sparse(p: &OrbitalPresentation, c: &SparseCollection, s: &VSet) -> bool {
    let v = s.over();
    if s.is_fold() {
        return match s.terminal_count() {
            0 => c.contains(&VSet::empty(p, v)),
            1 => c.contains(s),
            _ => c.contains(&VSet::n_terminal(p, v, 2)),
        };
    }
    let d = sparse_decompose(p, s);
    c.contains(&d.base) && d.pieces.iter().all(|t| member_sparse(p, c, t))
}

#[derive(Clone, Debug, Serialize)]
pub struct WicReport {
    pub checks: Vec<crate::orbital::Check>,
}

impl WicReport {
    pub fn get(&self, name: &str) -> Option<&crate::orbital::Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn axioms_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.name.starts_with("IS") || c.name.starts_with("IC-a") || c.name == "IC-b").all(|c| c.passed)
    }
}

/// Check the axioms and the colour, unitality, summand and fold conditions
/// on all members with at most `bound` points.
pub fn validate_wic(w: &WeakIndexingSystem, bound: u64) -> WicReport {
    use crate::orbital::Check;
    let p = &*w.p;
    let members = w.members_within(bound);
    let is_in = |s: &VSet| w.member(s).is_yes();
    let mk = |name: &str, witness: Option<String>| Check { name: name.into(), passed: witness.is_none(), witness };
    let mut checks = Vec::new();

    let is_a = (0..p.orbit_count())
        .find(|&v| !members[v].is_empty() && !is_in(&VSet::terminal(p, v)))
        .map(|v| format!("level {} is nonempty without *", p.orbit_id(v)));
    checks.push(mk("IS-a", is_a));

    let res = members.iter().flatten().find_map(|s| {
        (0..p.slices(s.over()).len()).find_map(|a| {
            let r = restrict(p, a, s);
            (!is_in(&r)).then(|| format!("{} restricts to {}", s.describe(p), r.describe(p)))
        })
    });
    checks.push(mk("IC-a restriction", res));

    let comp = (|| {
        for a in members.iter().flatten() {
            let v = a.over();
            let mut partial: Vec<(VSet, Vec<VSet>)> = vec![(VSet::empty(p, v), vec![])];
            for u in a.expanded() {
                let mut next = Vec::new();
                for (acc, ts) in &partial {
                    for t in &members[p.source(v, u)] {
                        let mut s = acc.clone();
                        s.add_set(&crate::orbital::induce(p, v, u, t));
                        if s.points(p) <= bound {
                            let mut ts = ts.clone();
                            ts.push(t.clone());
                            next.push((s, ts));
                        }
                    }
                }
                partial = next;
                if partial.len() > 20_000 {
                    partial.truncate(20_000);
                }
            }
            for (s, ts) in partial {
                debug_assert_eq!(indexed_coproduct(p, a, &ts).ok().as_ref(), Some(&s));
                if !is_in(&s) {
                    return Some(format!("coproduct indexed by {} gives {}", a.describe(p), s.describe(p)));
                }
            }
        }
        None
    })();
    checks.push(mk("IC-a composition", comp));
    checks.push(mk("IC-b", None));

    let fam = w.families();
    let one = (0..p.orbit_count())
        .find(|&v| !fam.c.contains(v))
        .map(|v| format!("* over {} is missing", p.orbit_id(v)));
    checks.push(mk("IC-i", one));

    // IC-ii: nonempty summands of non-terminal members; IC-iii: all summands
    let summand_gap = |ae: bool| {
        members.iter().flatten().find_map(|s| {
            if ae && s.is_terminal() {
                return None;
            }
            s.summands(u32::MAX)
                .into_iter()
                .find(|t| !(ae && t.is_empty()) && !is_in(t))
                .map(|t| format!("{} is a summand of {}", t.describe(p), s.describe(p)))
        })
    };
    checks.push(mk("IC-ii", summand_gap(true)));
    checks.push(mk("IC-iii", summand_gap(false)));

    let fold = (0..p.orbit_count()).find_map(|v| {
        (0..=bound as u32)
            .map(|n| VSet::n_terminal(p, v, n))
            .find(|s| !is_in(s))
            .map(|s| format!("{} is missing", s.describe(p)))
    });
    checks.push(mk("IC-iv", fold));
    WicReport { checks }
}

/// `Res` along the slice orbit `f` of the terminal orbit `top`: the system
/// on the slice presentation over `source(top, f)`.
pub fn restrict_wis(w: &WeakIndexingSystem, top: OrbitIx, f: SliceIx) -> Result<WeakIndexingSystem> {
    let p = &w.p;
    let fv = p.source(top, f);
    let q = Arc::new(p.slice_presentation(fv)?);
    let relocate = |s: &VSet, y: OrbitIx| VSet::from_counts(y, s.counts().to_vec());
    match &w.form {
        Form::Sparse(c) => {
            let coll = SparseCollection::from_sets(
                &q,
                (0..q.orbit_count()).flat_map(|y| c.level(p.source(fv, y)).iter().map(move |s| relocate(s, y))),
            );
            Ok(WeakIndexingSystem::from_sparse_unchecked(&q, coll))
        }
        _ => {
            let bound = w.working_bound(None);
            let members = w.members_within(bound);
            let gens: Vec<VSet> = (0..q.orbit_count())
                .flat_map(|y| members[p.source(fv, y)].iter().map(move |s| relocate(s, y)))
                .collect();
            WeakIndexingSystem::closure(&q, &gens, bound)
        }
    }
}

/// Coinduction along `f: V → W`, `W = top` terminal: the largest system whose
/// restriction along `f` lies below `inner`.
pub fn coinduce_wis(
    p: &Arc<OrbitalPresentation>,
    top: OrbitIx,
    f: SliceIx,
    inner: &WeakIndexingSystem,
) -> Result<WeakIndexingSystem> {
    if (0..p.orbit_count()).any(|v| !p.hom_exists(v, top)) {
        return Err(Error::UnsupportedBackend("coinduction needs a terminal orbit".into()));
    }
    let q = p.slice_presentation(p.source(top, f))?;
    if *inner.p != q {
        return Err(Error::MixedPresentation);
    }
    Ok(WeakIndexingSystem::from_rule(p, Rule::Coinduced { inner: Box::new(inner.clone()), top, f }))
}

/// Restriction-closed, self-indexed-coproduct-closed check of an arbitrary
/// membership predicate against the `ε` of a seed set; used by tests.
pub fn epsilon(p: &OrbitalPresentation, sets: impl IntoIterator<Item = VSet>) -> Family {
    epsilon_of(p, sets)
}
