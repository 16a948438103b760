//! Families: sets of orbits closed under maps into them.

use crate::error::{Error, Result};
use crate::orbital::{OrbitIx, OrbitalPresentation};

/// A downward-closed set of orbits, as a bitmask over orbit indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Family(u64);

impl Family {
    pub fn empty() -> Self {
        Family(0)
    }

    pub fn all(p: &OrbitalPresentation) -> Self {
        Family(mask_of(p.orbit_count()))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Downward closure of the given orbits.
    pub fn generated_by(p: &OrbitalPresentation, orbits: impl IntoIterator<Item = OrbitIx>) -> Self {
        let mut bits = 0u64;
        for v in orbits {
            for u in p.below(v) {
                bits |= 1 << u;
            }
        }
        Family(bits)
    }

    pub fn from_orbits(p: &OrbitalPresentation, orbits: impl IntoIterator<Item = OrbitIx>) -> Result<Self> {
        let orbits: Vec<OrbitIx> = orbits.into_iter().collect();
        if let Some(&v) = orbits.iter().find(|&&v| v >= p.orbit_count()) {
            return Err(Error::InvalidFamily(format!("orbit index {v} out of range")));
        }
        let f = Family(orbits.iter().fold(0, |acc, &v| acc | 1 << v));
        if Self::generated_by(p, orbits) != f {
            return Err(Error::InvalidFamily("not closed under maps into its members".into()));
        }
        Ok(f)
    }

    pub fn contains(self, v: OrbitIx) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: Family) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Family) -> Family {
        Family(self.0 | other.0)
    }

    pub fn intersection(self, other: Family) -> Family {
        Family(self.0 & other.0)
    }

    /// Orbits in `self` but not in `other`; usually not a family.
    pub fn minus(self, other: Family) -> OrbitSet {
        OrbitSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = OrbitIx> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn ids(self, p: &OrbitalPresentation) -> Vec<String> {
        self.iter().map(|v| p.orbit_id(v).to_string()).collect()
    }
}

/// An arbitrary set of orbits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct OrbitSet(pub u64);

impl OrbitSet {
    pub fn contains(self, v: OrbitIx) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = OrbitIx> {
        (0..64).filter(move |i| self.0 >> i & 1 == 1)
    }

    pub fn is_subset(self, other: OrbitSet) -> bool {
        self.0 & !other.0 == 0
    }
}

impl From<Family> for OrbitSet {
    fn from(f: Family) -> Self {
        OrbitSet(f.0)
    }
}

fn mask_of(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

/// Every family, sorted by bitmask.
pub fn enumerate_families(p: &OrbitalPresentation) -> Result<Vec<Family>> {
    let n = p.orbit_count();
    if n > 20 {
        return Err(Error::TooLarge(format!("{n} orbits")));
    }
    Ok((0..1u64 << n)
        .filter(|&m| Family::generated_by(p, (0..n).filter(|i| m >> i & 1 == 1)).0 == m)
        .map(Family)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_families_form_a_chain() {
        for n in 1..5 {
            let p = OrbitalPresentation::chain(2, n).unwrap();
            assert_eq!(enumerate_families(&p).unwrap().len(), n as usize + 2);
        }
    }

    #[test]
    fn rejects_non_families() {
        let p = OrbitalPresentation::chain(3, 2).unwrap();
        assert!(Family::from_orbits(&p, [1]).is_err());
        assert!(Family::from_orbits(&p, [0, 1]).is_ok());
    }
}
