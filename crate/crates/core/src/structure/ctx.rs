//! Subgroups of a listed group as bitsets over element-table indices.

use std::cmp::Ordering;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime_power_of, p_part, prime_divisors};
use crate::perm::{ElementTable, PermGroup, Permutation, SubgroupHandle};

pub(crate) type ElemSet = FixedBitSet;

#[derive(Clone)]
pub(crate) struct Ctx {
    pub group: Arc<PermGroup>,
    pub t: Arc<ElementTable>,
    /// Indices of the parent's generators.
    pub gens: Vec<usize>,
}

impl Ctx {
    pub fn new(group: &Arc<PermGroup>, bound: u128, what: &'static str) -> Result<Self> {
        let order = group.try_order()?;
        if order > bound {
            return Err(Error::BoundExceeded { what, order, bound });
        }
        let t = group.table()?.clone();
        let gens = group
            .generators()
            .iter()
            .map(|g| t.index_of(g).expect("generator is an element"))
            .filter(|&i| i != 0)
            .collect();
        Ok(Self {
            group: group.clone(),
            t,
            gens,
        })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn index(&self, g: &Permutation) -> Result<usize> {
        self.t
            .index_of(g)
            .ok_or_else(|| Error::NotInGroup(g.to_string()))
    }

    pub fn indices(&self, gs: &[Permutation]) -> Result<Vec<usize>> {
        gs.iter().map(|g| self.index(g)).collect()
    }

    pub fn empty(&self) -> ElemSet {
        FixedBitSet::with_capacity(self.n())
    }

    pub fn whole(&self) -> ElemSet {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut trivial = self.empty();
        trivial.insert(0);
        self.extend(&trivial, gens)
    }

    /// `⟨base, extra⟩` where `base` is a subgroup: breadth-first search over right cosets
    /// of `base`, multiplying coset representatives by the generators.
    pub fn extend(&self, base: &ElemSet, extra: &[usize]) -> ElemSet {
        self.extend_bounded(base, &self.greedy_gens(base), extra, usize::MAX, |_| true)
            .expect("unbounded")
    }

    /// As [`Ctx::extend`] with the base generators supplied, aborting with `None` once the
    /// closure exceeds `max_len` elements or admits an element rejected by `accept`.
    pub fn extend_bounded(
        &self,
        base: &ElemSet,
        base_gens: &[usize],
        extra: &[usize],
        max_len: usize,
        accept: impl Fn(usize) -> bool,
    ) -> Option<ElemSet> {
        let t = &self.t;
        let hs: Vec<usize> = base.ones().collect();
        let mut gens: Vec<usize> = base_gens.to_vec();
        gens.extend(extra.iter().copied().filter(|&x| !base.contains(x)));
        let mut set = base.clone();
        let mut len = hs.len();
        let mut reps = vec![0usize];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &g in &gens {
                let y = t.mul(r, g);
                if set.contains(y) {
                    continue;
                }
                len += hs.len();
                if len > max_len {
                    return None;
                }
                for &h in &hs {
                    let z = t.mul(h, y);
                    if !accept(z) {
                        return None;
                    }
                    set.insert(z);
                }
                reps.push(y);
            }
        }
        Some(set)
    }

    /// Generators chosen greedily in index order: each element not in the span of the
    /// previous ones is kept.
    pub fn greedy_gens(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.empty();
        span.insert(0);
        for x in set.ones() {
            if span.contains(x) {
                continue;
            }
            span = self
                .extend_bounded(&span, &gens, &[x], usize::MAX, |_| true)
                .expect("unbounded");
            gens.push(x);
            if span.count_ones(..) == set.count_ones(..) {
                break;
            }
        }
        gens
    }

    pub fn conjugate_set(&self, s: &ElemSet, g: usize) -> ElemSet {
        let mut out = self.empty();
        let gi = self.t.inv(g);
        for x in s.ones() {
            out.insert(self.t.mul(self.t.mul(gi, x), g));
        }
        out
    }

    /// The conjugacy class of the subgroup `s`, in discovery order starting with `s`.
    pub fn conjugates(&self, s: &ElemSet) -> Vec<ElemSet> {
        let mut seen = std::collections::HashSet::new();
        seen.insert(s.clone());
        let mut out = vec![s.clone()];
        let mut i = 0;
        while i < out.len() {
            for &g in &self.gens {
                let c = self.conjugate_set(&out[i], g);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    /// `{x : gensᵡ ⊆ s}`, the normalizer of the subgroup `s = ⟨gens⟩`.
    pub fn normalizer_set(&self, s: &ElemSet, gens: &[usize]) -> ElemSet {
        let mut out = self.empty();
        for x in 0..self.n() {
            if gens.iter().all(|&h| s.contains(self.t.conj(h, x))) {
                out.insert(x);
            }
        }
        out
    }

    pub fn centralizer_set(&self, a: usize) -> ElemSet {
        let mut out = self.empty();
        for x in 0..self.n() {
            if self.t.commute(a, x) {
                out.insert(x);
            }
        }
        out
    }

    pub fn handle(&self, s: &ElemSet) -> SubgroupHandle {
        if s.count_ones(..) == self.n() {
            return SubgroupHandle::whole(&self.group);
        }
        let gens = self.greedy_gens(s).into_iter().map(|i| self.t.perm(i)).collect();
        SubgroupHandle::from_trusted(&self.group, gens)
    }

    pub fn is_p_element(&self, x: usize, p: u128) -> bool {
        is_prime_power_of(self.t.order_of(x) as u128, p)
    }

    /// A subgroup is nilpotent iff for each prime its `p`-elements number exactly its
    /// `p`-part, i.e. its Sylow subgroups are normal.
    pub fn is_nilpotent_set(&self, s: &ElemSet) -> bool {
        let order = s.count_ones(..) as u128;
        prime_divisors(order).into_iter().all(|p| {
            let count = s.ones().filter(|&x| self.is_p_element(x, p)).count() as u128;
            count == p_part(order, p)
        })
    }
}

/// Lexicographic order of the sorted element lists of two equal-size sets.
pub(crate) fn cmp_sets(a: &ElemSet, b: &ElemSet) -> Ordering {
    let first = a.symmetric_difference(b).next();
    match first {
        None => Ordering::Equal,
        Some(x) if a.contains(x) => Ordering::Less,
        Some(_) => Ordering::Greater,
    }
}
