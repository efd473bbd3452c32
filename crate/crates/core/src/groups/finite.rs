use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_SUBGROUP_CAP: usize = 64;

/// A finite group given by a multiplication table on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid_input("empty multiplication table"));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid_input(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::invalid_input(format!("entry {x} out of range in row {i}")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::invalid_input("no two-sided identity"))?;
        let mut inverses = vec![0; n];
        for (g, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::invalid_input(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::invalid_input(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    /// Closure of the given permutations (images of `0..d`) under composition.
    /// Element 0 is the identity; `(στ)(i) = σ(τ(i))`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self> {
        let d = gens.first().map_or(0, |g| g.len());
        for g in gens {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != d || seen != (0..d).collect::<Vec<_>>() {
                return Err(Error::invalid_input("generators must be permutations of equal degree"));
            }
        }
        let id: Vec<usize> = (0..d).collect();
        let mut elems = vec![id.clone()];
        let mut index: std::collections::HashMap<Vec<usize>, usize> = [(id, 0)].into();
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let p: Vec<usize> = (0..d).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    elems.push(p);
                }
            }
            i += 1;
        }
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[&(0..d).map(|k| a[b[k]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_parameter("cyclic group of order 0"));
        }
        FiniteGroup::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn symmetric(d: usize) -> Result<Self> {
        if d <= 1 {
            return FiniteGroup::cyclic(1);
        }
        let mut cycle: Vec<usize> = (1..d).collect();
        cycle.push(0);
        let mut swap: Vec<usize> = (0..d).collect();
        swap.swap(0, 1);
        FiniteGroup::from_permutations(&[swap, cycle])
    }

    /// Dihedral group of order `2m`.
    pub fn dihedral(m: usize) -> Result<Self> {
        let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        let refl: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
        FiniteGroup::from_permutations(&[rot, refl])
    }

    /// Quaternion group `Q_8`.
    pub fn quaternion() -> Result<Self> {
        // elements ±1, ±i, ±j, ±k encoded as 0..8: (sign, unit) = (e / 4, e % 4)
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            // units 0=1, 1=i, 2=j, 3=k; returns (negate, unit)
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (neg, u) = unit_mul(a % 4, b % 4);
                        let sign = (a / 4) ^ (b / 4) ^ usize::from(neg);
                        sign * 4 + u
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> Result<Self> {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|a| {
                (0..n * m)
                    .map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian_set(&self, elems: &[usize]) -> bool {
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = [self.identity].into();
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n)
                .map(|g| self.mul(self.mul(g, a), self.inv(g)))
                .collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// `Δ_k(G)`: elements whose conjugacy class has at most `k` elements.
    pub fn delta_k(&self, k: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .conjugacy_classes()
            .into_iter()
            .filter(|c| c.len() <= k)
            .flatten()
            .collect();
        out.sort_unstable();
        out
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let comms: BTreeSet<usize> = (0..n)
            .flat_map(|a| {
                (0..n).map(move |b| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            })
            .collect();
        self.closure(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn conjugacy_profile(&self) -> ConjugacyProfile {
        let classes = self.conjugacy_classes();
        let n = self.order();
        let class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        let delta_sizes: Vec<usize> = (1..=n).map(|k| self.delta_k(k).len()).collect();
        let commutator = self.commutator_subgroup();
        let k = commutator.len();
        let forward = self.delta_k(k).len() == n;
        // converse: G = Δ_m(G) for m = max class size; bound (m^4)^(m^4)
        let m = *class_sizes.iter().max().unwrap();
        let m4 = (m as u32).pow(4);
        let bound = BigUint::from(m4).pow(m4);
        let c = BigUint::from(k);
        ConjugacyProfile {
            order: n,
            class_sizes,
            classes,
            delta_sizes,
            commutator,
            neumann_wiegold: NeumannWiegold {
                commutator_order: k,
                forward_holds: forward,
                max_class_size: m,
                converse_bound: bound.to_string(),
                converse_strict_holds: c < bound,
                converse_nonstrict_holds: c <= bound,
            },
        }
    }

    /// All subgroups, each a sorted element list, ordered by (order, elements).
    pub fn subgroups(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        if n > cap {
            return Err(Error::Inconclusive(format!(
                "group order {n} exceeds the subgroup enumeration cap {cap}"
            )));
        }
        let trivial = vec![self.identity];
        let mut seen: HashSet<Vec<usize>> = [trivial.clone()].into();
        let mut queue = vec![trivial];
        let mut i = 0;
        while i < queue.len() {
            let h = queue[i].clone();
            let mut present = vec![false; n];
            h.iter().for_each(|&x| present[x] = true);
            for g in 0..n {
                if present[g] {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if seen.insert(k.clone()) {
                    queue.push(k);
                }
            }
            i += 1;
        }
        queue.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(queue)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NeumannWiegold {
    pub commutator_order: usize,
    /// `|[G,G]| = k` implies `G = Δ_k(G)`.
    pub forward_holds: bool,
    pub max_class_size: usize,
    pub converse_bound: String,
    /// `|[G,G]| < (m^4)^(m^4)`; fails for abelian groups where both sides are 1.
    pub converse_strict_holds: bool,
    pub converse_nonstrict_holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyProfile {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// `|Δ_k(G)|` for `k = 1..=|G|`.
    pub delta_sizes: Vec<usize>,
    pub commutator: Vec<usize>,
    pub neumann_wiegold: NeumannWiegold,
}

/// Largest abelian subgroup satisfying `pred`; ties broken by the smallest element list.
pub fn find_abelian_finite_index(
    g: &FiniteGroup,
    pred: Option<&dyn Fn(&[usize]) -> bool>,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let subs = g.subgroups(cap)?;
    let mut best: Option<Vec<usize>> = None;
    for h in subs {
        if !g.is_abelian_set(&h) || !pred.is_none_or(|p| p(&h)) {
            continue;
        }
        if best.as_ref().is_none_or(|b| h.len() > b.len()) {
            best = Some(h);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_classes_and_delta() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let mut sizes = g.conjugacy_profile().class_sizes;
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.delta_k(2).len(), 3);
        let a = find_abelian_finite_index(&g, None, 64).unwrap().unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(g.commutator_subgroup().len(), 3);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::symmetric(3).unwrap().subgroups(64).unwrap().len(), 6);
        assert_eq!(FiniteGroup::quaternion().unwrap().subgroups(64).unwrap().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().subgroups(64).unwrap().len(), 10);
        assert!(FiniteGroup::cyclic(65).unwrap().subgroups(64).is_err());
    }

    #[test]
    fn rejects_non_group() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn quaternion_is_nonabelian_with_center_two() {
        let q = FiniteGroup::quaternion().unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.delta_k(1).len(), 2);
        let a = find_abelian_finite_index(&q, None, 64).unwrap().unwrap();
        assert_eq!(a.len(), 4);
    }
}
