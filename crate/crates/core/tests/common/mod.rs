//! Brute-force reference computations over an explicit Cayley table, written without the
//! library's element tables, lattice builder or set-cover solver.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use nilcover::{PermGroup, Permutation};

pub struct Cayley {
    pub elements: Vec<Permutation>,
    pub mul: Vec<Vec<usize>>,
}

impl Cayley {
    /// Elements in breadth-first order from the identity; index 0 is the identity.
    pub fn new(g: &PermGroup) -> Self {
        let id = Permutation::identity(g.degree());
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for s in g.generators() {
                let y = elements[i].compose(s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
            i += 1;
        }
        let mul = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        Self { elements, mul }
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.n()).find(|&b| self.mul[a][b] == 0).unwrap()
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let y = self.mul[out[i]][g];
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Every subgroup, by repeatedly joining known subgroups with single elements.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut queue: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], vec![])];
        found.insert(vec![0]);
        while let Some((h, gens)) = queue.pop() {
            let member: HashSet<usize> = h.iter().copied().collect();
            for x in 0..self.n() {
                if member.contains(&x) {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let k = self.span(&g2);
                if found.insert(k.clone()) {
                    queue.push((k, g2));
                }
            }
        }
        let mut out: Vec<_> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Nilpotency through the upper central series.
    pub fn is_nilpotent(&self, h: &[usize]) -> bool {
        let mut z: HashSet<usize> = HashSet::from([0]);
        loop {
            let next: HashSet<usize> = h
                .iter()
                .copied()
                .filter(|&a| {
                    h.iter().all(|&b| {
                        let comm = self.mul[self.mul[self.inv(a)][self.inv(b)]][self.mul[a][b]];
                        z.contains(&comm)
                    })
                })
                .collect();
            if next.len() == h.len() {
                return true;
            }
            if next.len() == z.len() {
                return false;
            }
            z = next;
        }
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Members of `family` not properly contained in another member.
fn maximal_among(family: &[Vec<usize>]) -> Vec<Vec<usize>> {
    family
        .iter()
        .filter(|a| !family.iter().any(|b| b.len() > a.len() && is_subset(a, b)))
        .cloned()
        .collect()
}

/// Smallest number of sets from `family` whose union is `0..n`, trying every subset of each
/// size in turn. Needs `n ≤ 128`.
pub fn exhaustive_cover(n: usize, family: &[Vec<usize>]) -> Option<usize> {
    assert!(n <= 128);
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let masks: Vec<u128> = family
        .iter()
        .map(|s| s.iter().fold(0u128, |m, &x| m | 1u128 << x))
        .collect();
    fn search(masks: &[u128], full: u128, start: usize, left: usize, acc: u128) -> bool {
        if left == 0 {
            return acc == full;
        }
        (start..masks.len()).any(|i| search(masks, full, i + 1, left - 1, acc | masks[i]))
    }
    (1..=masks.len()).find(|&k| search(&masks, full, 0, k, 0))
}

pub struct OracleValues {
    pub sigma: Option<usize>,
    pub min_nilpotent: Option<usize>,
}

/// `σ` from the maximal subgroups and, when `with_nilpotent`, the smallest nilpotent
/// covering from the maximal nilpotent subgroups. `None` for cyclic groups.
pub fn oracle(g: &PermGroup, with_nilpotent: bool) -> OracleValues {
    let c = Cayley::new(g);
    let n = c.n();
    let subs = c.all_subgroups();
    let proper: Vec<Vec<usize>> = subs.iter().filter(|s| s.len() < n).cloned().collect();
    let sigma = exhaustive_cover(n, &maximal_among(&proper));
    let min_nilpotent = with_nilpotent
        .then(|| {
            let nil: Vec<Vec<usize>> = proper.iter().filter(|s| c.is_nilpotent(s)).cloned().collect();
            exhaustive_cover(n, &maximal_among(&nil))
        })
        .flatten();
    OracleValues { sigma, min_nilpotent }
}
