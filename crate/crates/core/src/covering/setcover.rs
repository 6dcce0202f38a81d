//! Exact minimum set cover by branch and bound.
//!
//! Reductions run to a fixpoint before branching: identical and dominated sets are
//! dropped, elements whose candidate sets include another element's are dropped, and
//! sets that are the only cover of some element are taken. The residual instance is split
//! into connected components solved independently.

use fixedbitset::FixedBitSet;

/// An optimal cover of `0..universe` by `sets`, as indices into `sets` in increasing
/// order, or `None` when some element lies in no set.
pub fn min_set_cover(universe: usize, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut inst = Instance::new(universe, sets);
    let mut chosen = Vec::new();
    inst.reduce(&mut chosen)?;
    for comp in inst.components() {
        chosen.extend(inst.solve_component(&comp)?);
    }
    chosen.sort_unstable();
    chosen.dedup();
    Some(chosen)
}

struct Instance<'a> {
    sets: &'a [FixedBitSet],
    /// Live elements and live sets.
    elements: FixedBitSet,
    alive: FixedBitSet,
}

impl<'a> Instance<'a> {
    fn new(universe: usize, sets: &'a [FixedBitSet]) -> Self {
        let mut elements = FixedBitSet::with_capacity(universe);
        elements.insert_range(..);
        let mut alive = FixedBitSet::with_capacity(sets.len());
        alive.insert_range(..);
        Self {
            sets,
            elements,
            alive,
        }
    }

    fn live_part(&self, s: usize) -> FixedBitSet {
        let mut x = self.sets[s].clone();
        x.intersect_with(&self.elements);
        x
    }

    fn candidates(&self, e: usize) -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(self.sets.len());
        for s in self.alive.ones() {
            if self.sets[s].contains(e) {
                c.insert(s);
            }
        }
        c
    }

    /// Applies reductions until none fires. `None` if an element becomes uncoverable.
    fn reduce(&mut self, chosen: &mut Vec<usize>) -> Option<()> {
        loop {
            let mut changed = false;
            // Dominated and empty sets.
            let live: Vec<(usize, FixedBitSet)> =
                self.alive.ones().map(|s| (s, self.live_part(s))).collect();
            for (i, (s, a)) in live.iter().enumerate() {
                let n_a = a.count_ones(..);
                let dominated = n_a == 0
                    || live.iter().enumerate().any(|(j, (t, b))| {
                        i != j && self.alive.contains(*t) && a.is_subset(b) && {
                            let n_b = b.count_ones(..);
                            n_b > n_a || t < s
                        }
                    });
                if dominated {
                    self.alive.set(*s, false);
                    changed = true;
                }
            }
            // Forced sets and dominated elements.
            let cands: Vec<(usize, FixedBitSet)> =
                self.elements.ones().map(|e| (e, self.candidates(e))).collect();
            for (e, c) in &cands {
                match c.count_ones(..) {
                    0 => return None,
                    1 if self.elements.contains(*e) => {
                        let s = c.ones().next().expect("one candidate");
                        chosen.push(s);
                        self.elements.difference_with(&self.sets[s]);
                        self.alive.set(s, false);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if changed {
                continue;
            }
            for (i, (e, ce)) in cands.iter().enumerate() {
                let n_e = ce.count_ones(..);
                let redundant = cands.iter().enumerate().any(|(j, (f, cf))| {
                    i != j && self.elements.contains(*f) && cf.is_subset(ce) && {
                        let n_f = cf.count_ones(..);
                        n_f < n_e || f < e
                    }
                });
                if redundant {
                    self.elements.set(*e, false);
                    changed = true;
                }
            }
            if !changed {
                return Some(());
            }
        }
    }

    /// Live elements grouped by sharing a live set, each group in increasing order.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.elements.len());
        let mut out = Vec::new();
        for start in self.elements.ones() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let e = comp[i];
                i += 1;
                for s in self.alive.ones() {
                    if !self.sets[s].contains(e) {
                        continue;
                    }
                    for f in self.sets[s].ones() {
                        if self.elements.contains(f) && !seen.contains(f) {
                            seen.insert(f);
                            comp.push(f);
                        }
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn solve_component(&self, comp: &[usize]) -> Option<Vec<usize>> {
        // Re-index: local elements 0..m and the live sets meeting them.
        let set_ids: Vec<usize> = self
            .alive
            .ones()
            .filter(|&s| comp.iter().any(|&e| self.sets[s].contains(e)))
            .collect();
        let m = comp.len();
        let local: Vec<FixedBitSet> = set_ids
            .iter()
            .map(|&s| {
                let mut b = FixedBitSet::with_capacity(m);
                for (i, &e) in comp.iter().enumerate() {
                    if self.sets[s].contains(e) {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        let solver = Search::new(m, local);
        let picked = solver.run()?;
        Some(picked.into_iter().map(|i| set_ids[i]).collect())
    }
}

struct Search {
    m: usize,
    sets: Vec<FixedBitSet>,
    /// Element → sets containing it.
    cand: Vec<FixedBitSet>,
    best: Option<Vec<usize>>,
}

impl Search {
    fn new(m: usize, sets: Vec<FixedBitSet>) -> Self {
        let mut cand = vec![FixedBitSet::with_capacity(sets.len()); m];
        for (s, b) in sets.iter().enumerate() {
            for e in b.ones() {
                cand[e].insert(s);
            }
        }
        Self {
            m,
            sets,
            cand,
            best: None,
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let mut uncovered = FixedBitSet::with_capacity(self.m);
        uncovered.insert_range(..);
        self.best = self.greedy();
        let mut allowed = FixedBitSet::with_capacity(self.sets.len());
        allowed.insert_range(..);
        let mut chosen = Vec::new();
        self.branch(&uncovered, &mut allowed, &mut chosen);
        self.best
    }

    fn greedy(&self) -> Option<Vec<usize>> {
        let mut uncovered = FixedBitSet::with_capacity(self.m);
        uncovered.insert_range(..);
        let mut out = Vec::new();
        while uncovered.count_ones(..) > 0 {
            let (s, gain) = (0..self.sets.len())
                .map(|s| (s, self.sets[s].intersection_count(&uncovered)))
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
            if gain == 0 {
                return None;
            }
            out.push(s);
            uncovered.difference_with(&self.sets[s]);
        }
        Some(out)
    }

    fn lower_bound(&self, uncovered: &FixedBitSet, allowed: &FixedBitSet) -> usize {
        let left = uncovered.count_ones(..);
        if left == 0 {
            return 0;
        }
        let widest = allowed
            .ones()
            .map(|s| self.sets[s].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        if widest == 0 {
            return usize::MAX;
        }
        let by_size = left.div_ceil(widest);
        // Elements with pairwise disjoint candidate lists need distinct sets.
        let mut order: Vec<(usize, usize)> = uncovered
            .ones()
            .map(|e| (self.cand[e].intersection_count(allowed), e))
            .collect();
        order.sort_unstable();
        let mut used = FixedBitSet::with_capacity(self.sets.len());
        let mut packing = 0;
        for (_, e) in order {
            let mut c = self.cand[e].clone();
            c.intersect_with(allowed);
            if c.is_disjoint(&used) {
                used.union_with(&c);
                packing += 1;
            }
        }
        by_size.max(packing)
    }

    fn branch(&mut self, uncovered: &FixedBitSet, allowed: &mut FixedBitSet, chosen: &mut Vec<usize>) {
        if uncovered.count_ones(..) == 0 {
            if self.best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                self.best = Some(chosen.clone());
            }
            return;
        }
        let budget = self.best.as_ref().map_or(usize::MAX, |b| b.len());
        let lb = self.lower_bound(uncovered, allowed);
        if lb == usize::MAX || chosen.len().saturating_add(lb) >= budget {
            return;
        }
        // Fail first: the uncovered element with the fewest remaining candidates.
        let e = uncovered
            .ones()
            .min_by_key(|&e| (self.cand[e].intersection_count(allowed), e))
            .expect("nonempty");
        let mut options: Vec<usize> = self.cand[e].intersection(allowed).collect();
        options.sort_by_key(|&s| (std::cmp::Reverse(self.sets[s].intersection_count(uncovered)), s));
        let saved = allowed.clone();
        for s in options {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.sets[s]);
            allowed.set(s, false);
            chosen.push(s);
            self.branch(&rest, allowed, chosen);
            chosen.pop();
        }
        *allowed = saved;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sets(universe: usize, lists: &[&[usize]]) -> Vec<FixedBitSet> {
        lists
            .iter()
            .map(|l| {
                let mut b = FixedBitSet::with_capacity(universe);
                l.iter().for_each(|&x| b.insert(x));
                b
            })
            .collect()
    }

    fn brute(universe: usize, sets: &[FixedBitSet]) -> Option<usize> {
        (0u32..1 << sets.len())
            .filter(|mask| {
                let mut u = FixedBitSet::with_capacity(universe);
                for (i, s) in sets.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        u.union_with(s);
                    }
                }
                u.count_ones(..) == universe
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn small_instances() {
        let s = sets(4, &[&[0, 1], &[2, 3], &[0, 1, 2]]);
        assert_eq!(min_set_cover(4, &s), Some(vec![1, 2]));
        let s = sets(3, &[&[0], &[1]]);
        assert_eq!(min_set_cover(3, &s), None);
        assert_eq!(min_set_cover(0, &[]), Some(vec![]));
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            universe in 1usize..12,
            raw in proptest::collection::vec(proptest::collection::vec(0usize..12, 0..6), 1..12)
        ) {
            let lists: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|l| l.into_iter().filter(|&x| x < universe).collect())
                .collect();
            let refs: Vec<&[usize]> = lists.iter().map(|l| l.as_slice()).collect();
            let s = sets(universe, &refs);
            let got = min_set_cover(universe, &s);
            prop_assert_eq!(got.as_ref().map(|c| c.len()), brute(universe, &s));
            if let Some(c) = got {
                let mut u = FixedBitSet::with_capacity(universe);
                c.iter().for_each(|&i| u.union_with(&s[i]));
                prop_assert_eq!(u.count_ones(..), universe);
            }
        }
    }
}
