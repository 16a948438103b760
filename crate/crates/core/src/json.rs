//! JSON forms of presentations, sets, systems, transfer systems, families,
//! sieves and representations. Orbits and slice orbits are named by id.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::orbital::{BackendSpec, OrbitalPresentation};
use crate::reps::RepDescriptor;
use crate::sieve::Sieve;
use crate::transfer::TransferSystem;
use crate::vset::VSet;
use crate::windex::{default_bound, Form, Rule, SparseCollection, WeakIndexingSystem};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// `C_{p^n}` from a name such as `C_4`, `c9` or `C_{p^2}` with `p` given.
pub fn parse_group(name: &str) -> Result<BackendSpec> {
    let digits: String = name.chars().filter(|c| c.is_ascii_digit()).collect();
    let lower = name.to_ascii_lowercase();
    if lower == "e" || lower == "point" || lower == "*" || lower == "c_1" || lower == "c1" {
        return Ok(BackendSpec::Point);
    }
    if !lower.starts_with('c') || digits.is_empty() {
        return Err(bad(format!("unknown group {name}")));
    }
    let order: u64 = digits.parse().map_err(|_| bad(format!("bad order in {name}")))?;
    let p = (2..=order).find(|&d| order.is_multiple_of(d)).ok_or_else(|| bad("trivial order"))?;
    let mut n = 0;
    let mut m = order;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    if m != 1 {
        return Err(bad(format!("{name} is not a cyclic p-group")));
    }
    Ok(BackendSpec::Chain { p, n })
}

pub fn presentation_from_value(v: &Value) -> Result<Arc<OrbitalPresentation>> {
    let spec: BackendSpec = serde_json::from_value(v.clone()).map_err(|e| bad(e.to_string()))?;
    OrbitalPresentation::build(&spec)
}

pub fn vset_to_json(p: &OrbitalPresentation, s: &VSet) -> Value {
    json!({ "over": p.orbit_id(s.over()), "orbits": orbit_list(p, s) })
}

fn orbit_list(p: &OrbitalPresentation, s: &VSet) -> Value {
    Value::Array(s.support().map(|a| json!([p.slice(s.over(), a).id, s.count(a)])).collect())
}

fn parse_orbit_list(p: &OrbitalPresentation, over: usize, v: &Value) -> Result<VSet> {
    let mut s = VSet::empty(p, over);
    for item in v.as_array().ok_or_else(|| bad("orbit list expected"))? {
        let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("[id, count] expected"))?;
        let id = pair[0].as_str().ok_or_else(|| bad("slice id must be a string"))?;
        let n = pair[1].as_u64().ok_or_else(|| bad("count must be a number"))?;
        s.add(p.slice_index(over, id)?, n as u32);
    }
    Ok(s)
}

pub fn vset_from_json(p: &OrbitalPresentation, v: &Value) -> Result<VSet> {
    let over = v.get("over").and_then(Value::as_str).ok_or_else(|| bad("\"over\" missing"))?;
    let over = p.orbit_index(over)?;
    parse_orbit_list(p, over, v.get("orbits").ok_or_else(|| bad("\"orbits\" missing"))?)
}

fn backend_value(p: &OrbitalPresentation) -> Value {
    serde_json::to_value(p.backend()).expect("backend serializes")
}

pub fn wis_to_json(w: &WeakIndexingSystem) -> Value {
    let p = &**w.presentation();
    match w.form() {
        Form::Sparse(c) => {
            let mut data = Map::new();
            for v in 0..p.orbit_count() {
                let sets: Vec<Value> = c.level(v).iter().map(|s| orbit_list(p, s)).collect();
                data.insert(p.orbit_id(v).to_string(), Value::Array(sets));
            }
            json!({ "backend": backend_value(p), "class": "sparse", "data": data })
        }
        Form::Generated(g) => json!({
            "backend": backend_value(p),
            "class": "generated",
            "generators": g.generators.iter().map(|s| vset_to_json(p, s)).collect::<Vec<_>>(),
            "bound": g.bound,
        }),
        Form::Rule(Rule::TerminalNonunital(f)) => json!({
            "backend": backend_value(p),
            "class": "terminal_nonunital",
            "family": f.ids(p),
        }),
        Form::Rule(_) => {
            let bound = w.bound().unwrap_or(default_bound());
            let gens: Vec<Value> = w.members_within(bound).iter().flatten().map(|s| vset_to_json(p, s)).collect();
            json!({ "backend": backend_value(p), "class": "generated", "generators": gens, "bound": bound })
        }
    }
}

pub fn wis_from_json(v: &Value) -> Result<WeakIndexingSystem> {
    let p = presentation_from_value(v.get("backend").ok_or_else(|| bad("\"backend\" missing"))?)?;
    wis_from_json_over(&p, v)
}

pub fn wis_from_json_over(p: &Arc<OrbitalPresentation>, v: &Value) -> Result<WeakIndexingSystem> {
    match v.get("class").and_then(Value::as_str) {
        Some("sparse") => {
            let data = v.get("data").and_then(Value::as_object).ok_or_else(|| bad("\"data\" object missing"))?;
            let mut coll = SparseCollection::empty(p);
            for (id, sets) in data {
                let over = p.orbit_index(id)?;
                for s in sets.as_array().ok_or_else(|| bad("list of sets expected"))? {
                    coll.insert(parse_orbit_list(p, over, s)?);
                }
            }
            WeakIndexingSystem::from_sparse(p, coll)
        }
        Some("generated") => {
            let gens = v
                .get("generators")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("\"generators\" missing"))?
                .iter()
                .map(|g| vset_from_json(p, g))
                .collect::<Result<Vec<_>>>()?;
            let bound = v.get("bound").and_then(Value::as_u64).unwrap_or(default_bound());
            WeakIndexingSystem::closure(p, &gens, bound)
        }
        Some("terminal_nonunital") => {
            let f = family_from_json_over(p, v)?;
            Ok(crate::named::terminal_nonunital(p, f))
        }
        _ => Err(bad("\"class\" must be sparse, generated or terminal_nonunital")),
    }
}

pub fn family_to_json(p: &OrbitalPresentation, f: Family) -> Value {
    json!({ "backend": backend_value(p), "members": f.ids(p) })
}

fn family_from_json_over(p: &OrbitalPresentation, v: &Value) -> Result<Family> {
    let list = v
        .get("members")
        .or_else(|| v.get("family"))
        .and_then(Value::as_array)
        .ok_or_else(|| bad("\"members\" list missing"))?;
    let ids = list
        .iter()
        .map(|m| m.as_str().ok_or_else(|| bad("orbit ids must be strings")).and_then(|s| p.orbit_index(s)))
        .collect::<Result<Vec<_>>>()?;
    Family::from_orbits(p, ids)
}

pub fn family_from_json(p: &OrbitalPresentation, v: &Value) -> Result<Family> {
    family_from_json_over(p, v)
}

pub fn transfer_to_json(r: &TransferSystem) -> Value {
    let p = &**r.presentation();
    let pairs: Vec<Value> = r
        .nontrivial()
        .into_iter()
        .map(|(v, a)| json!([p.slice(v, a).id, p.orbit_id(v)]))
        .collect();
    json!({ "backend": backend_value(p), "pairs": pairs })
}

/// Pairs may omit identities; anything not closed is rejected.
pub fn transfer_from_json(p: &Arc<OrbitalPresentation>, v: &Value) -> Result<TransferSystem> {
    let list = v.get("pairs").and_then(Value::as_array).ok_or_else(|| bad("\"pairs\" missing"))?;
    let mut masks: Vec<u64> = (0..p.orbit_count()).map(|v| 1 << p.terminal(v)).collect();
    for item in list {
        let pair = item.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("[slice, orbit] expected"))?;
        let (Some(s), Some(o)) = (pair[0].as_str(), pair[1].as_str()) else {
            return Err(bad("ids must be strings"));
        };
        let over = p.orbit_index(o)?;
        masks[over] |= 1 << p.slice_index(over, s)?;
    }
    TransferSystem::new(p, masks)
}

pub fn sieve_to_json(s: &Sieve) -> Value {
    let p = &**s.base.presentation();
    json!({
        "R": transfer_to_json(&s.base),
        "scope": s.scope.iter().map(|v| p.orbit_id(v).to_string()).collect::<Vec<_>>(),
        "pairs": s.pairs.iter().map(|&(k, h)| json!([p.orbit_id(k), p.orbit_id(h)])).collect::<Vec<_>>(),
    })
}

pub fn rep_to_json(r: &RepDescriptor) -> Value {
    let p = &**r.presentation();
    let group = match p.backend() {
        BackendSpec::Chain { p, n } => format!("C_{}", p.pow(*n)),
        other => serde_json::to_string(other).unwrap_or_default(),
    };
    json!({ "group": group, "fixed_dims": r.dims_map() })
}

pub fn rep_from_json(v: &Value) -> Result<RepDescriptor> {
    let group = v.get("group").and_then(Value::as_str).ok_or_else(|| bad("\"group\" missing"))?;
    let p = OrbitalPresentation::build(&parse_group(group)?)?;
    let dims: BTreeMap<String, u32> = serde_json::from_value(
        v.get("fixed_dims").cloned().ok_or_else(|| bad("\"fixed_dims\" missing"))?,
    )
    .map_err(|e| bad(e.to_string()))?;
    RepDescriptor::from_map(&p, &dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::zero;

    #[test]
    fn roundtrips() {
        let p = OrbitalPresentation::chain(2, 2).unwrap();
        let w = crate::transfer::overline_f(&TransferSystem::complete(&p));
        let back = wis_from_json(&wis_to_json(&w)).unwrap();
        assert!(back.equals(&w).unwrap());
        let s = VSet::from_counts(2, vec![2, 0, 1]);
        assert_eq!(vset_from_json(&p, &vset_to_json(&p, &s)).unwrap(), s);
        let r = TransferSystem::generated(&p, &[(2, 0)]);
        assert_eq!(transfer_from_json(&p, &transfer_to_json(&r)).unwrap(), r);
        assert!(wis_from_json(&wis_to_json(&zero(&p))).is_ok());
        assert_eq!(parse_group("C_9").unwrap(), BackendSpec::Chain { p: 3, n: 2 });
        let rep = crate::reps::lambda(&p).unwrap();
        assert_eq!(rep_from_json(&rep_to_json(&rep)).unwrap(), rep);
    }
}
