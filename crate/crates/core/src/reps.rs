//! Arity supports `F^V` of orthogonal representations of abelian groups,
//! described by their fixed-point dimensions.
//!
//! A `H`-set embeds in `V` iff each of its orbit types does: the points of
//! `V` with isotropy exactly `K` form the complement of finitely many proper
//! subspaces of `V^K` once `dim V^K` exceeds `dim V^{K'}` for every
//! `K ⊊ K' ⊆ H`, so they hold any number of `[H/K]`; otherwise there are none.
//! The one exception is `K = H` with `V^H = 0`, which holds a single point.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbital::{BackendSpec, OrbitIx, OrbitalPresentation};
use crate::sparse::sparse_universe;
use crate::vset::VSet;
use crate::windex::{SparseCollection, WeakIndexingSystem};

#[derive(Clone, Debug)]
pub struct RepDescriptor {
    p: Arc<OrbitalPresentation>,
    /// `dim V^K`, indexed by the orbit `G/K`.
    fixed_dims: Vec<u32>,
}

impl PartialEq for RepDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.fixed_dims == other.fixed_dims && *self.p == *other.p
    }
}

fn check_abelian(p: &OrbitalPresentation) -> Result<()> {
    match p.backend() {
        BackendSpec::Chain { .. } => Ok(()),
        BackendSpec::Group { .. } if p.group().is_some_and(|g| g.group.is_abelian()) => Ok(()),
        _ => Err(Error::UnsupportedBackend("representations need an abelian group".into())),
    }
}

impl RepDescriptor {
    pub fn new(p: &Arc<OrbitalPresentation>, fixed_dims: Vec<u32>) -> Result<Self> {
        check_abelian(p)?;
        if fixed_dims.len() != p.orbit_count() {
            return Err(Error::InvalidSpec("one fixed-point dimension per subgroup expected".into()));
        }
        for u in 0..p.orbit_count() {
            for v in p.below(u).collect::<Vec<_>>() {
                // V^{K_u} ⊆ V^{K_v} when K_v ⊆ K_u
                if fixed_dims[v] < fixed_dims[u] {
                    return Err(Error::InvalidSpec(format!(
                        "dim V^{} < dim V^{}",
                        p.orbit_id(v),
                        p.orbit_id(u)
                    )));
                }
            }
        }
        Ok(RepDescriptor { p: p.clone(), fixed_dims })
    }

    pub fn from_map(p: &Arc<OrbitalPresentation>, dims: &BTreeMap<String, u32>) -> Result<Self> {
        let mut v = vec![0; p.orbit_count()];
        for (k, &d) in dims {
            v[p.orbit_index(k)?] = d;
        }
        if dims.len() != p.orbit_count() {
            return Err(Error::Parse("fixed_dims must list every subgroup".into()));
        }
        Self::new(p, v)
    }

    pub fn presentation(&self) -> &Arc<OrbitalPresentation> {
        &self.p
    }

    pub fn fixed_dims(&self) -> &[u32] {
        &self.fixed_dims
    }

    pub fn dims_map(&self) -> BTreeMap<String, u32> {
        (0..self.p.orbit_count()).map(|v| (self.p.orbit_id(v).to_string(), self.fixed_dims[v])).collect()
    }

    pub fn dim(&self) -> u32 {
        self.fixed_dims[0]
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if *self.p != *other.p {
            return Err(Error::GroupMismatch("summands live over different groups".into()));
        }
        let dims = self.fixed_dims.iter().zip(&other.fixed_dims).map(|(a, b)| a + b).collect();
        Ok(RepDescriptor { p: self.p.clone(), fixed_dims: dims })
    }

    /// Whether the orbit type of slice `a` over `v` occurs in `V` restricted
    /// to `v`, and how often it may be repeated.
    fn capacity(&self, v: OrbitIx, a: usize) -> u32 {
        let p = &*self.p;
        let k = p.source(v, a);
        if a == p.terminal(v) {
            return if self.fixed_dims[v] == 0 { 1 } else { u32::MAX };
        }
        let open = (0..p.orbit_count())
            .filter(|&w| w != k && p.hom_exists(k, w) && p.hom_exists(w, v))
            .all(|w| self.fixed_dims[k] > self.fixed_dims[w]);
        if open {
            u32::MAX
        } else {
            0
        }
    }

    pub fn embeds(&self, s: &VSet) -> bool {
        let v = s.over();
        s.support().all(|a| s.count(a) <= self.capacity(v, a))
    }

    /// `F^V` as a sparse collection.
    pub fn arity_support(&self) -> Result<WeakIndexingSystem> {
        let p = &self.p;
        let sets = (0..p.orbit_count()).flat_map(|v| sparse_universe(p, v).into_iter().filter(|s| self.embeds(s)));
        WeakIndexingSystem::from_sparse(p, SparseCollection::from_sets(p, sets))
    }
}

fn chain_params(p: &OrbitalPresentation) -> Result<(u64, u32)> {
    match p.backend() {
        BackendSpec::Chain { p, n } => Ok((*p, *n)),
        _ => Err(Error::UnsupportedBackend("named representations are defined for cyclic p-groups".into())),
    }
}

pub fn zero_rep(p: &Arc<OrbitalPresentation>) -> Result<RepDescriptor> {
    RepDescriptor::new(p, vec![0; p.orbit_count()])
}

pub fn trivial_rep(p: &Arc<OrbitalPresentation>, dim: u32) -> Result<RepDescriptor> {
    RepDescriptor::new(p, vec![dim; p.orbit_count()])
}

/// The irreducible representation of `C_{p^n}` with kernel `C_{p^k}`: a
/// rotation of order `p^{n-k}`, one-dimensional when that order is 2.
pub fn rotation(p: &Arc<OrbitalPresentation>, k: u32) -> Result<RepDescriptor> {
    let (prime, n) = chain_params(p)?;
    if k >= n {
        return Err(Error::InvalidSpec(format!("kernel C_{{p^{k}}} is the whole group")));
    }
    let d = if prime.pow(n - k) == 2 { 1 } else { 2 };
    RepDescriptor::new(p, (0..=n).map(|i| if i <= k { d } else { 0 }).collect())
}

/// `σ`: the sign representation of `C_2`.
pub fn sigma(p: &Arc<OrbitalPresentation>) -> Result<RepDescriptor> {
    match chain_params(p)? {
        (2, 1) => rotation(p, 0),
        _ => Err(Error::UnsupportedBackend("σ is defined over C_2".into())),
    }
}

/// `λ`: a faithful rotation.
pub fn lambda(p: &Arc<OrbitalPresentation>) -> Result<RepDescriptor> {
    rotation(p, 0)
}

/// `λ_{C_p}` over `C_{p^2}`: rotation of order `p`.
pub fn lambda_cp(p: &Arc<OrbitalPresentation>) -> Result<RepDescriptor> {
    rotation(p, 1)
}

/// `λ_{C_{p^2}}` over `C_{p^2}`: rotation of order `p^2`.
pub fn lambda_cp2(p: &Arc<OrbitalPresentation>) -> Result<RepDescriptor> {
    match chain_params(p)? {
        (_, 2) => rotation(p, 0),
        _ => Err(Error::UnsupportedBackend("λ_{C_{p^2}} is defined over C_{p^2}".into())),
    }
}

pub fn named_rep(p: &Arc<OrbitalPresentation>, name: &str) -> Result<RepDescriptor> {
    match name {
        "zero" | "0" => zero_rep(p),
        "trivial" | "1" => trivial_rep(p, 1),
        "sigma" => sigma(p),
        "lambda" => lambda(p),
        "lambda_Cp" => lambda_cp(p),
        "lambda_Cp2" => lambda_cp2(p),
        _ => Err(Error::Parse(format!("unknown representation {name}"))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub group: String,
    pub fixed_dims: BTreeMap<String, u32>,
}
