//! The poset maps `c`, `υ`, `∇`, `ε` and `fR` out of weak indexing systems,
//! their adjoints, and cocartesian transport.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::named::{complete_on, folds_on, terminal_nonunital, triv_on, zero_on};
use crate::transfer::{f_r, overline_f, transfer_to_indexing, TransferSystem};
use crate::windex::WeakIndexingSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyMap {
    Color,
    Unit,
    Fold,
    Essence,
}

impl std::str::FromStr for FamilyMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "color" | "c" => Ok(FamilyMap::Color),
            "unit" | "upsilon" => Ok(FamilyMap::Unit),
            "fold" | "nabla" => Ok(FamilyMap::Fold),
            "essence" | "epsilon" => Ok(FamilyMap::Essence),
            _ => Err(Error::Parse(format!("unknown map {s}"))),
        }
    }
}

pub fn apply(map: FamilyMap, w: &WeakIndexingSystem) -> Family {
    let f = w.families();
    match map {
        FamilyMap::Color => f.c,
        FamilyMap::Unit => f.upsilon,
        FamilyMap::Fold => f.nabla,
        FamilyMap::Essence => f.epsilon,
    }
}

/// Fully faithful left adjoint: `F^triv_ℱ`, `E_ℱ F^0_ℱ`, or (on unital
/// systems) `F^0 ∪ E_ℱ F^∞_ℱ`.
pub fn left_adjoint(map: FamilyMap, w_like: &WeakIndexingSystem, f: Family) -> Option<WeakIndexingSystem> {
    let p = w_like.presentation();
    match map {
        FamilyMap::Color => Some(triv_on(p, f)),
        FamilyMap::Unit => Some(zero_on(p, f)),
        FamilyMap::Fold => Some(folds_on(p, f)),
        FamilyMap::Essence => None,
    }
}

/// Right adjoints with a closed form; `∇` has one only extensionally, see
/// [`fold_right_adjoint`], and `υ` has none ([`unit_join_witness`]).
pub fn right_adjoint(map: FamilyMap, w_like: &WeakIndexingSystem, f: Family) -> Option<WeakIndexingSystem> {
    match map {
        FamilyMap::Color => Some(complete_on(w_like.presentation(), f)),
        _ => None,
    }
}

/// `⋁ {Y ∈ poset : ∇(Y) ⊆ ℱ}` over an enumerated poset of unital systems.
pub fn fold_right_adjoint(poset: &[WeakIndexingSystem], f: Family) -> Result<Option<WeakIndexingSystem>> {
    let mut acc: Option<WeakIndexingSystem> = None;
    for y in poset.iter().filter(|y| y.families().nabla.is_subset(f)) {
        acc = Some(match acc {
            None => y.clone(),
            Some(a) => a.join(y)?,
        });
    }
    Ok(acc)
}

/// `F_{∅⊥-nu} ∨ E_ℱ F^0`, which is complete for `ℱ` the free orbits
/// although `υ(F_{∅⊥-nu}) = ∅`: `υ` does not preserve joins.
pub fn unit_join_witness(w_like: &WeakIndexingSystem, f: Family) -> Result<WeakIndexingSystem> {
    let p = w_like.presentation();
    terminal_nonunital(p, Family::empty()).join(&zero_on(p, f))
}

/// `t(W) = L(ℱ') ∨ W`, defined when `map(W) ⊆ ℱ'`.
pub fn transport(map: FamilyMap, w: &WeakIndexingSystem, target: Family) -> Result<WeakIndexingSystem> {
    if !apply(map, w).is_subset(target) {
        return Err(Error::TargetNotAbove);
    }
    if map == FamilyMap::Fold && !w.classify().unital {
        return Err(Error::NotUnital);
    }
    let left = left_adjoint(map, w, target)
        .ok_or_else(|| Error::UnsupportedBackend("ε has no left adjoint here".into()))?;
    left.join(w)
}

/// Left adjoint of `fR` on unital systems.
pub fn transfer_left_adjoint(r: &TransferSystem) -> WeakIndexingSystem {
    overline_f(r)
}

/// Right adjoint of `fR` on unital systems.
pub fn transfer_right_adjoint(r: &TransferSystem) -> WeakIndexingSystem {
    transfer_to_indexing(r)
}

pub fn transport_transfer(w: &WeakIndexingSystem, target: &TransferSystem) -> Result<WeakIndexingSystem> {
    if !f_r(w)?.leq(target) {
        return Err(Error::TargetNotAbove);
    }
    w.join(&overline_f(target))
}

/// Transport along `(fR, ∇)`: `W ∨ overline F_{R'} ∨ (F^0 ∪ E_{ℱ'} F^∞)`.
pub fn transport_combined(w: &WeakIndexingSystem, r: &TransferSystem, f: Family) -> Result<WeakIndexingSystem> {
    if !f_r(w)?.leq(r) || !w.families().nabla.is_subset(f) {
        return Err(Error::TargetNotAbove);
    }
    if !r.domain().is_subset(f) {
        return Err(Error::NotAdmissible(format!("domain of {} is not in the family", r.describe())));
    }
    w.join(&overline_f(r))?.join(&folds_on(w.presentation(), f))
}

/// `Domain(R)` as the fold family of `overline F_R`.
pub fn domain_via_folds(r: &TransferSystem) -> Family {
    overline_f(r).families().nabla
}

/// Check `L(x) ≤ W ⇔ x ≤ G(W)` over all pairs; returns the first failure.
pub fn galois_failure<X>(
    xs: &[X],
    ws: &[WeakIndexingSystem],
    x_le: impl Fn(&X, &X) -> bool,
    left: impl Fn(&X) -> Result<WeakIndexingSystem>,
    map: impl Fn(&WeakIndexingSystem) -> Result<X>,
) -> Result<Option<(usize, usize)>> {
    let images: Vec<X> = ws.iter().map(&map).collect::<Result<_>>()?;
    for (i, x) in xs.iter().enumerate() {
        let l = left(x)?;
        for (j, w) in ws.iter().enumerate() {
            if l.leq(w)? != x_le(x, &images[j]) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Check `map(W) ≤ x ⇔ W ≤ R(x)` over all pairs.
pub fn right_galois_failure<X>(
    xs: &[X],
    ws: &[WeakIndexingSystem],
    x_le: impl Fn(&X, &X) -> bool,
    right: impl Fn(&X) -> Result<WeakIndexingSystem>,
    map: impl Fn(&WeakIndexingSystem) -> Result<X>,
) -> Result<Option<(usize, usize)>> {
    let images: Vec<X> = ws.iter().map(&map).collect::<Result<_>>()?;
    for (i, x) in xs.iter().enumerate() {
        let r = right(x)?;
        for (j, w) in ws.iter().enumerate() {
            if w.leq(&r)? != x_le(&images[j], x) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Check that `t` is the cocartesian lift of `W` to `target`: for every
/// `W'` with `target ≤ map(W')`, `W ≤ W'` iff `t ≤ W'`, and `map(t) = target`.
pub fn cocartesian_failure<X: PartialEq>(
    w: &WeakIndexingSystem,
    t: &WeakIndexingSystem,
    target: &X,
    ws: &[WeakIndexingSystem],
    x_le: impl Fn(&X, &X) -> bool,
    map: impl Fn(&WeakIndexingSystem) -> Result<X>,
) -> Result<Option<String>> {
    if map(t)? != *target {
        return Ok(Some("transport lands in the wrong fiber".into()));
    }
    if !w.leq(t)? {
        return Ok(Some("transport is not above the input".into()));
    }
    for (j, w2) in ws.iter().enumerate() {
        if !x_le(target, &map(w2)?) {
            continue;
        }
        if w.leq(w2)? != t.leq(w2)? {
            return Ok(Some(format!("universal property fails at poset element {j}")));
        }
    }
    Ok(None)
}
