//! Python bindings: presentations, weak indexing systems, transfer systems,
//! enumeration, fibration maps and representation supports.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use windex_core::catalog::{catalog, label};
use windex_core::enumerate::{enumerate_wis, poset_of, SystemClass};
use windex_core::fibration::{transport as transport_family, transport_combined, FamilyMap};
use windex_core::hull::{multiplicative_hull, DEFAULT_PRODUCT_BOUND};
use windex_core::json::{parse_group, wis_from_json, wis_to_json};
use windex_core::named;
use windex_core::reps::named_rep;
use windex_core::sieve::fiber as sieve_fiber;
use windex_core::transfer::{enumerate_transfer_systems, f_r, overline_f, transfer_to_indexing, TransferSystem};
use windex_core::windex::{default_bound, validate_wic};
use windex_core::{BackendSpec, Family, Membership, OrbitalPresentation, VSet, WeakIndexingSystem};

fn err(e: windex_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, name = "Presentation", module = "windex")]
struct PyPresentation(Arc<OrbitalPresentation>);

#[pymethods]
impl PyPresentation {
    /// The cyclic group of order `p**n`.
    #[staticmethod]
    fn chain(p: u64, n: u32) -> PyResult<Self> {
        OrbitalPresentation::chain(p, n).map(PyPresentation).map_err(err)
    }

    /// A cyclic p-group by name, e.g. `"C_4"`.
    #[staticmethod]
    fn group(name: &str) -> PyResult<Self> {
        let spec = parse_group(name).map_err(err)?;
        OrbitalPresentation::build(&spec).map(PyPresentation).map_err(err)
    }

    /// A finite group from its Cayley table.
    #[staticmethod]
    fn from_cayley(table: Vec<Vec<usize>>) -> PyResult<Self> {
        OrbitalPresentation::build(&BackendSpec::Group { cayley: table }).map(PyPresentation).map_err(err)
    }

    #[staticmethod]
    fn point() -> PyResult<Self> {
        OrbitalPresentation::build(&BackendSpec::Point).map(PyPresentation).map_err(err)
    }

    #[staticmethod]
    fn bg(order: usize) -> PyResult<Self> {
        OrbitalPresentation::build(&BackendSpec::Bg { order }).map(PyPresentation).map_err(err)
    }

    #[getter]
    fn orbits(&self) -> Vec<String> {
        self.0.orbit_ids().to_vec()
    }

    /// Slice orbit ids over an orbit; the last one is the identity.
    fn slices(&self, orbit: &str) -> PyResult<Vec<String>> {
        let v = self.0.orbit_index(orbit).map_err(err)?;
        Ok(self.0.slices(v).iter().map(|s| s.id.clone()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Presentation({})", serde_json::to_string(self.0.backend()).unwrap_or_default())
    }
}

fn vset(p: &OrbitalPresentation, over: &str, orbits: BTreeMap<String, u32>) -> PyResult<VSet> {
    let v = p.orbit_index(over).map_err(err)?;
    let mut s = VSet::empty(p, v);
    for (id, n) in orbits {
        s.add(p.slice_index(v, &id).map_err(err)?, n);
    }
    Ok(s)
}

fn family(p: &OrbitalPresentation, ids: Vec<String>) -> PyResult<Family> {
    let ix = ids.iter().map(|i| p.orbit_index(i)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    Family::from_orbits(p, ix).map_err(err)
}

#[pyclass(frozen, name = "System", module = "windex")]
struct PySystem(WeakIndexingSystem);

#[pymethods]
impl PySystem {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        wis_from_json(&v).map(PySystem).map_err(err)
    }

    fn to_json(&self) -> String {
        wis_to_json(&self.0).to_string()
    }

    #[getter]
    fn presentation(&self) -> PyPresentation {
        PyPresentation(self.0.presentation().clone())
    }

    fn join(&self, other: PyRef<'_, PySystem>) -> PyResult<PySystem> {
        self.0.join(&other.0).map(PySystem).map_err(err)
    }

    fn meet(&self, other: PyRef<'_, PySystem>) -> PyResult<PySystem> {
        self.0.meet(&other.0).map(PySystem).map_err(err)
    }

    fn leq(&self, other: PyRef<'_, PySystem>) -> PyResult<bool> {
        self.0.leq(&other.0).map_err(err)
    }

    fn __eq__(&self, other: PyRef<'_, PySystem>) -> PyResult<bool> {
        self.0.equals(&other.0).map_err(err)
    }

    fn __le__(&self, other: PyRef<'_, PySystem>) -> PyResult<bool> {
        self.leq(other)
    }

    /// Membership of the set with the given slice-orbit multiplicities over
    /// `over`: `True`, `False`, or `None` when undecided within the bound.
    fn contains(&self, over: &str, orbits: BTreeMap<String, u32>) -> PyResult<Option<bool>> {
        let s = vset(self.0.presentation(), over, orbits)?;
        Ok(match self.0.member(&s) {
            Membership::Yes => Some(true),
            Membership::No => Some(false),
            Membership::Indeterminate => None,
        })
    }

    fn classify(&self) -> BTreeMap<&'static str, bool> {
        let c = self.0.classify();
        BTreeMap::from([
            ("one_color", c.one_color),
            ("ae_unital", c.ae_unital),
            ("almost_unital", c.almost_unital),
            ("unital", c.unital),
            ("indexing", c.indexing),
        ])
    }

    /// The families `c`, `upsilon`, `nabla` and `epsilon` as orbit ids.
    fn families(&self) -> BTreeMap<&'static str, Vec<String>> {
        let p = self.0.presentation();
        let f = self.0.families();
        BTreeMap::from([
            ("c", f.c.ids(p)),
            ("upsilon", f.upsilon.ids(p)),
            ("nabla", f.nabla.ids(p)),
            ("epsilon", f.epsilon.ids(p)),
        ])
    }

    /// Names and outcomes of the axiom and class checks.
    #[pyo3(signature = (bound=None))]
    fn validate(&self, bound: Option<u64>) -> BTreeMap<String, bool> {
        validate_wic(&self.0, bound.unwrap_or_else(default_bound)).checks.into_iter().map(|c| (c.name, c.passed)).collect()
    }

    /// Whether the axioms (not the class conditions) hold within the bound.
    #[pyo3(signature = (bound=None))]
    fn is_valid(&self, bound: Option<u64>) -> bool {
        validate_wic(&self.0, bound.unwrap_or_else(default_bound)).axioms_pass()
    }

    fn f_r(&self) -> PyResult<PyTransfer> {
        f_r(&self.0).map(PyTransfer).map_err(err)
    }

    fn __repr__(&self) -> String {
        self.0.describe()
    }
}

#[pyclass(frozen, name = "TransferSystem", module = "windex")]
struct PyTransfer(TransferSystem);

#[pymethods]
impl PyTransfer {
    /// Nontrivial transfers as `(source, target)` orbit ids.
    fn pairs(&self) -> Vec<(String, String)> {
        let p = self.0.presentation();
        self.0.nontrivial().into_iter().map(|(v, a)| (p.orbit_id(p.source(v, a)).to_string(), p.orbit_id(v).to_string())).collect()
    }

    fn leq(&self, other: PyRef<'_, PyTransfer>) -> bool {
        self.0.leq(&other.0)
    }

    fn __eq__(&self, other: PyRef<'_, PyTransfer>) -> bool {
        self.0 == other.0
    }

    fn domain(&self) -> Vec<String> {
        self.0.domain().ids(self.0.presentation())
    }

    fn codomain(&self) -> Vec<String> {
        self.0.codomain().ids(self.0.presentation())
    }

    /// The largest unital system with these transfers.
    fn indexing_system(&self) -> PySystem {
        PySystem(transfer_to_indexing(&self.0))
    }

    /// The smallest unital system with these transfers.
    fn overline(&self) -> PySystem {
        PySystem(overline_f(&self.0))
    }

    fn __repr__(&self) -> String {
        self.0.describe()
    }
}

/// Every system of a class (`ae_unital`, `almost_unital`, `unital`,
/// `indexing`), in a fixed order.
#[pyfunction]
#[pyo3(signature = (presentation, class_="ae_unital"))]
fn enumerate(presentation: PyRef<'_, PyPresentation>, class_: &str) -> PyResult<Vec<PySystem>> {
    let class: SystemClass = class_.parse().map_err(err)?;
    Ok(enumerate_wis(&presentation.0, class).map_err(err)?.into_iter().map(PySystem).collect())
}

/// Labels and covering pairs `(lower, upper)` of a list of systems.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn hasse(systems: Vec<PyRef<'_, PySystem>>) -> PyResult<(Vec<String>, Vec<(usize, usize)>)> {
    let ws: Vec<WeakIndexingSystem> = systems.iter().map(|s| s.0.clone()).collect();
    let Some(first) = ws.first() else { return Ok((vec![], vec![])) };
    let labels = label(&ws, &catalog(first.presentation()).map_err(err)?);
    Ok((labels, poset_of(&ws).map_err(err)?.covers()))
}

/// `empty`, `triv`, `zero`, `infinity` or `complete`.
#[pyfunction]
fn named_system(presentation: PyRef<'_, PyPresentation>, name: &str) -> PyResult<PySystem> {
    let p = &presentation.0;
    Ok(PySystem(match name {
        "empty" => named::empty(p),
        "triv" => named::triv(p),
        "zero" => named::zero(p),
        "infinity" => named::infinity(p),
        "complete" => named::complete(p),
        _ => return Err(PyValueError::new_err(format!("unknown system {name}"))),
    }))
}

#[pyfunction]
fn transfer_systems(presentation: PyRef<'_, PyPresentation>) -> PyResult<Vec<PyTransfer>> {
    Ok(enumerate_transfer_systems(&presentation.0).map_err(err)?.into_iter().map(PyTransfer).collect())
}

/// Transfer system generated by `(source, target)` pairs of orbit ids.
#[pyfunction]
fn transfer_system(presentation: PyRef<'_, PyPresentation>, pairs: Vec<(String, String)>) -> PyResult<PyTransfer> {
    let p = &presentation.0;
    let mut gens = Vec::new();
    for (s, t) in pairs {
        let (s, t) = (p.orbit_index(&s).map_err(err)?, p.orbit_index(&t).map_err(err)?);
        let a = (0..p.slices(t).len())
            .find(|&a| p.source(t, a) == s && a != p.terminal(t))
            .ok_or_else(|| PyValueError::new_err("no such transfer"))?;
        gens.push((t, a));
    }
    Ok(PyTransfer(TransferSystem::generated(p, &gens)))
}

/// Unital systems over `C_{p^n}` whose transfers are `r` and whose folds are
/// `family`.
#[pyfunction]
fn fiber(r: PyRef<'_, PyTransfer>, family_ids: Vec<String>) -> PyResult<Vec<PySystem>> {
    let f = family(r.0.presentation(), family_ids)?;
    Ok(sieve_fiber(&r.0, f).map_err(err)?.into_iter().map(PySystem).collect())
}

/// Cocartesian transport along `color`, `unit` or `fold` to a family, or
/// along `(fR, nabla)` when `r` is given.
#[pyfunction]
#[pyo3(signature = (map, system, family_ids, r=None))]
fn transport(map: &str, system: PyRef<'_, PySystem>, family_ids: Vec<String>, r: Option<PyRef<'_, PyTransfer>>) -> PyResult<PySystem> {
    let f = family(system.0.presentation(), family_ids)?;
    let out = match r {
        Some(r) => transport_combined(&system.0, &r.0, f),
        None => {
            let m: FamilyMap = map.parse().map_err(err)?;
            transport_family(m, &system.0, f)
        }
    };
    out.map(PySystem).map_err(err)
}

/// Arity support of a named representation (`zero`, `trivial`, `sigma`,
/// `lambda`, `lambda_Cp`, `lambda_Cp2`) of a cyclic p-group.
#[pyfunction]
fn rep_support(name: &str, group: &str) -> PyResult<(BTreeMap<String, u32>, PySystem)> {
    let p = OrbitalPresentation::build(&parse_group(group).map_err(err)?).map_err(err)?;
    let v = named_rep(&p, name).map_err(err)?;
    Ok((v.dims_map(), PySystem(v.arity_support().map_err(err)?)))
}

#[pyfunction]
#[pyo3(signature = (system, product_bound=DEFAULT_PRODUCT_BOUND))]
fn hull(system: PyRef<'_, PySystem>, product_bound: u64) -> PyResult<PySystem> {
    multiplicative_hull(&system.0, product_bound).map(PySystem).map_err(err)
}

#[pymodule]
fn windex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PySystem>()?;
    m.add_class::<PyTransfer>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(hasse, m)?)?;
    m.add_function(wrap_pyfunction!(named_system, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_systems, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_system, m)?)?;
    m.add_function(wrap_pyfunction!(fiber, m)?)?;
    m.add_function(wrap_pyfunction!(transport, m)?)?;
    m.add_function(wrap_pyfunction!(rep_support, m)?)?;
    m.add_function(wrap_pyfunction!(hull, m)?)?;
    Ok(())
}
