//! Names for systems that come up in enumerations, used as Hasse labels.

use std::sync::Arc;

use crate::error::Result;
use crate::family::Family;
use crate::named::{complete, empty, extend, folds_on, infinity, infinity_on, triv, triv_on, union, zero, zero_on};
use crate::orbital::{BackendSpec, OrbitalPresentation};
use crate::reps::{lambda, lambda_cp, lambda_cp2};
use crate::transfer::{enumerate_transfer_systems, overline_f, transfer_to_indexing, TransferSystem};
use crate::windex::WeakIndexingSystem;

pub type Catalog = Vec<(String, WeakIndexingSystem)>;

fn cp(p: &Arc<OrbitalPresentation>) -> Result<Catalog> {
    let e = Family::from_orbits(p, [0])?;
    let full = TransferSystem::complete(p);
    Ok(vec![
        ("∅".into(), empty(p)),
        ("E_e F^triv".into(), triv_on(p, e)),
        ("E_e F^0".into(), zero_on(p, e)),
        ("E_e F^∞".into(), infinity_on(p, e)),
        ("F^triv".into(), triv(p)),
        ("F^triv ∪ E_e F^0".into(), union(&triv(p), &zero_on(p, e))?),
        ("F^triv ∨ E_e F^∞".into(), triv(p).join(&infinity_on(p, e))?),
        ("F^0".into(), zero(p)),
        ("F^0 ∪ E_e F^∞".into(), folds_on(p, e)),
        ("F^∞".into(), infinity(p)),
        ("F̄_{C_p}".into(), overline_f(&full)),
        ("F^λ".into(), lambda(p)?.arity_support()?),
        ("F_{C_p}".into(), complete(p)),
    ])
}

fn cp2(p: &Arc<OrbitalPresentation>) -> Result<Catalog> {
    let e = Family::from_orbits(p, [0])?;
    let ecp = Family::from_orbits(p, [0, 1])?;
    let r_cp_e = TransferSystem::generated(p, &[(1, 0)]);
    let r_top = TransferSystem::generated(p, &[(2, 1)]);
    let r_free = TransferSystem::generated(p, &[(2, 0)]);
    let full = TransferSystem::complete(p);
    let f_lam2 = lambda_cp2(p)?.arity_support()?;
    let f_lam1 = lambda_cp(p)?.arity_support()?;
    let inf_cp = folds_on(p, ecp);
    let e_lam = extend(&f_lam2, ecp)?;
    Ok(vec![
        ("F_{R^triv}".into(), transfer_to_indexing(&TransferSystem::trivial(p))),
        ("F_{R_{C_p/e}}".into(), transfer_to_indexing(&r_cp_e)),
        ("F_{R_{C_p²/C_p}}".into(), transfer_to_indexing(&r_top)),
        ("F_{R_{C_p²/e}}".into(), transfer_to_indexing(&r_free)),
        ("F_{C_p²}".into(), transfer_to_indexing(&full)),
        ("F^{λ_{C_p}}".into(), f_lam1.clone()),
        ("F^{λ_{C_p²} ⊕ λ_{C_p}}".into(), lambda_cp2(p)?.sum(&lambda_cp(p)?)?.arity_support()?),
        ("F^∞_{C_p} ∨ F^{λ_{C_p²}}".into(), inf_cp.join(&f_lam2)?),
        ("F̄_{C_p²} ∨ F^{λ_{C_p²}}".into(), overline_f(&full).join(&f_lam2)?),
        ("F^∞_{C_p}".into(), inf_cp.clone()),
        ("F^∞_{C_p} ∨ F̄_{R_{C_p/e}}".into(), inf_cp.join(&overline_f(&r_cp_e))?),
        ("F̄_{R_{C_p²/C_p}}".into(), overline_f(&r_top)),
        ("F^∞_{C_p} ∨ F̄_{R_{C_p²/e}}".into(), inf_cp.join(&overline_f(&r_free))?),
        ("F̄_{C_p²}".into(), overline_f(&full)),
        ("F^{λ_{C_p²}}".into(), f_lam2.clone()),
        ("F^0 ∨ E_{C_p} F^λ".into(), zero(p).join(&e_lam)?),
        ("F̄_{R_{C_p²/e}} ∨ E_{C_p} F^λ".into(), overline_f(&r_free).join(&e_lam)?),
        ("F^∞_e".into(), folds_on(p, e)),
        ("F̄_{R_{C_p/e}}".into(), overline_f(&r_cp_e)),
        ("F̄_{R_{C_p²/e}}".into(), overline_f(&r_free)),
        ("F^0".into(), zero(p)),
    ])
}

/// Named systems over `p`: the reference diagram labels for `C_p` and `C_{p^2}`, then
/// generic ones.
pub fn catalog(p: &Arc<OrbitalPresentation>) -> Result<Catalog> {
    let mut out = match p.backend() {
        BackendSpec::Chain { n: 1, .. } => cp(p)?,
        BackendSpec::Chain { n: 2, .. } => cp2(p)?,
        _ => Vec::new(),
    };
    out.extend([
        ("∅".to_string(), empty(p)),
        ("F^triv".into(), triv(p)),
        ("F^0".into(), zero(p)),
        ("F^∞".into(), infinity(p)),
        ("F".into(), complete(p)),
    ]);
    if let Ok(rs) = enumerate_transfer_systems(p) {
        for r in rs {
            out.push((format!("F_{}", r.describe()), transfer_to_indexing(&r)));
            out.push((format!("F̄_{}", r.describe()), overline_f(&r)));
        }
    }
    Ok(out)
}

/// Label each system by the first catalog entry equal to it, or by a short
/// content hash.
pub fn label(systems: &[WeakIndexingSystem], cat: &Catalog) -> Vec<String> {
    systems
        .iter()
        .map(|w| {
            cat.iter()
                .find(|(_, c)| c.equals(w).unwrap_or(false))
                .map(|(n, _)| n.clone())
                .unwrap_or_else(|| format!("#{:08x}", content_hash(w)))
        })
        .collect()
}

fn content_hash(w: &WeakIndexingSystem) -> u32 {
    // FNV-1a over the canonical description, stable across runs
    w.describe().bytes().fold(0x811c9dc5u32, |h, b| (h ^ b as u32).wrapping_mul(0x01000193))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_labels_are_distinct() {
        for n in [1, 2] {
            let p = OrbitalPresentation::chain(2, n).unwrap();
            let cat = catalog(&p).unwrap();
            let k = if n == 1 { 13 } else { 21 };
            for i in 0..k {
                for j in 0..i {
                    assert!(!cat[i].1.equals(&cat[j].1).unwrap(), "{} = {}", cat[i].0, cat[j].0);
                }
            }
        }
    }
}
