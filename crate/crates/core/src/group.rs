//! Finite groups given by Cayley tables, with subgroups stored as bitmasks.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest group order accepted by [`FiniteGroup::from_cayley`].
pub const MAX_GROUP_ORDER: usize = 60;

pub type Mask = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty Cayley table".into()));
        }
        if n > MAX_GROUP_ORDER {
            return Err(Error::TooLarge(format!("group of order {n} exceeds {MAX_GROUP_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidSpec("Cayley table is not square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidSpec("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidSpec(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidSpec(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_cayley((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Direct product of cyclic groups of the given orders.
    pub fn abelian(orders: &[usize]) -> Result<Self> {
        let n: usize = orders.iter().product();
        if n > MAX_GROUP_ORDER {
            return Err(Error::TooLarge(format!("group of order {n} exceeds {MAX_GROUP_ORDER}")));
        }
        let digits = |mut x: usize| {
            orders
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |ds: &[usize]| ds.iter().zip(orders).rev().fold(0, |acc, (&d, &m)| acc * m + d);
        let table = (0..n)
            .map(|a| {
                let da = digits(a);
                (0..n)
                    .map(|b| {
                        let db = digits(b);
                        let sum: Vec<usize> =
                            da.iter().zip(&db).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                        encode(&sum)
                    })
                    .collect()
            })
            .collect();
        Self::from_cayley(table)
    }

    /// Dihedral group of order `2m`; element `r^i s^j` is stored as `i + m*j`.
    pub fn dihedral(m: usize) -> Result<Self> {
        let n = 2 * m;
        let table = (0..n)
            .map(|a| {
                let (i, j) = (a % m, a / m);
                (0..n)
                    .map(|b| {
                        let (k, l) = (b % m, b / m);
                        let r = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                        r + m * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_cayley(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn full_mask(&self) -> Mask {
        if self.order() == 64 {
            !0
        } else {
            (1u64 << self.order()) - 1
        }
    }

    /// Smallest subgroup containing `mask`.
    pub fn generate(&self, mask: Mask) -> Mask {
        let mut cur = mask | (1 << self.identity);
        loop {
            let mut next = cur;
            for a in elements(cur) {
                for b in elements(cur) {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `g K g^-1`.
    pub fn conjugate(&self, g: usize, mask: Mask) -> Mask {
        let gi = self.inv(g);
        elements(mask).fold(0, |acc, k| acc | 1 << self.mul(self.mul(g, k), gi))
    }

    /// Every subgroup, sorted by order and then by mask.
    ///
    /// Cyclic subgroups are joined pairwise until nothing new appears; every
    /// subgroup of a finite group is reached this way.
    pub fn subgroups(&self) -> Vec<Mask> {
        let mut found: Vec<Mask> = Vec::new();
        for g in 0..self.order() {
            let c = self.generate(1 << g);
            if !found.contains(&c) {
                found.push(c);
            }
        }
        let mut frontier = found.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &a in &frontier {
                for i in 0..found.len() {
                    let j = self.generate(a | found[i]);
                    if !found.contains(&j) && !next.contains(&j) {
                        next.push(j);
                    }
                }
            }
            found.extend(next.iter().copied());
            frontier = next;
        }
        found.sort_by_key(|&m| (m.count_ones(), m));
        found
    }
}

pub fn elements(mask: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub fn order_of(mask: Mask) -> usize {
    mask.count_ones() as usize
}

/// Subgroup data of a finite group arranged the way the orbital presentation
/// needs it: conjugacy classes, class representatives, and fixed conjugators.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub group: FiniteGroup,
    pub subgroups: Vec<Mask>,
    index: HashMap<Mask, usize>,
    /// Representative subgroup of each conjugacy class; classes are sorted by
    /// the representative's position in `subgroups`.
    pub class_reps: Vec<usize>,
    pub class_of: Vec<usize>,
    /// `conjugator[k] = x` with `subgroups[k] = x K0 x^-1`, `K0` the class rep.
    pub conjugator: Vec<usize>,
    /// For each class rep `H`, representatives of the `H`-conjugacy classes of
    /// subgroups of `H`.
    pub slice_reps: Vec<Vec<usize>>,
    /// `slice_of[c][k]`: index into `slice_reps[c]` of the class of `subgroups[k]`.
    pub slice_of: Vec<Vec<Option<usize>>>,
}

impl GroupModel {
    pub fn new(group: FiniteGroup) -> Self {
        let subgroups = group.subgroups();
        let index: HashMap<Mask, usize> = subgroups.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let n = group.order();
        let s = subgroups.len();
        let mut class_of = vec![usize::MAX; s];
        let mut conjugator = vec![0; s];
        let mut class_reps = Vec::new();
        for k in 0..s {
            if class_of[k] != usize::MAX {
                continue;
            }
            let c = class_reps.len();
            class_reps.push(k);
            for g in 0..n {
                let j = index[&group.conjugate(g, subgroups[k])];
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    conjugator[j] = g;
                }
            }
        }
        let mut slice_reps = Vec::new();
        let mut slice_of = Vec::new();
        for &h in &class_reps {
            let hm = subgroups[h];
            let mut reps = Vec::new();
            let mut of = vec![None; s];
            for k in 0..s {
                if subgroups[k] & !hm != 0 || of[k].is_some() {
                    continue;
                }
                let slot = reps.len();
                reps.push(k);
                for x in elements(hm) {
                    of[index[&group.conjugate(x, subgroups[k])]] = Some(slot);
                }
            }
            slice_reps.push(reps);
            slice_of.push(of);
        }
        GroupModel { group, subgroups, index, class_reps, class_of, conjugator, slice_reps, slice_of }
    }

    pub fn index_of(&self, mask: Mask) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn label(&self, k: usize) -> String {
        let m = self.subgroups[k];
        if m.count_ones() == 1 {
            "e".into()
        } else if m == self.group.full_mask() {
            "G".into()
        } else {
            format!("H{k}")
        }
    }

    /// Double coset representatives `A h B` in `H`.
    pub fn double_cosets(&self, h: Mask, a: Mask, b: Mask) -> Vec<usize> {
        let g = &self.group;
        let mut seen: Mask = 0;
        let mut reps = Vec::new();
        for x in elements(h) {
            if seen >> x & 1 == 1 {
                continue;
            }
            reps.push(x);
            for p in elements(a) {
                for q in elements(b) {
                    seen |= 1 << g.mul(g.mul(p, x), q);
                }
            }
        }
        reps
    }

    /// Normalizer of a subgroup in the whole group.
    pub fn normalizer(&self, k: Mask) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.group.conjugate(g, k) == k).collect()
    }
}
