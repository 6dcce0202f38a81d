//! Deterministic Schreier–Sims.
//!
//! Base points are chosen as the smallest point moved by the element that forces a new
//! level, and orbits are explored breadth-first in generator order, so the resulting chain
//! depends only on the input generator list.

use std::fmt::Write as _;

use super::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub(crate) base: usize,
    pub(crate) gens: Vec<Permutation>,
    /// Orbit of `base` in discovery order.
    pub(crate) orbit: Vec<usize>,
    /// `reps[p]` maps `base` to `p`; `None` outside the orbit.
    pub(crate) reps: Vec<Option<Permutation>>,
    pub(crate) inv_reps: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree],
            inv_reps: vec![None; degree],
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        self.reps.iter_mut().for_each(|r| *r = None);
        self.inv_reps.iter_mut().for_each(|r| *r = None);
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.reps[self.base] = Some(id.clone());
        self.inv_reps[self.base] = Some(id);
        self.orbit.push(self.base);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.image(p);
                if self.reps[q].is_none() {
                    let rep = self.reps[p].as_ref().unwrap().compose(s);
                    self.inv_reps[q] = Some(rep.inverse());
                    self.reps[q] = Some(rep);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Stabilizer chain: base points with transversals for each point stabilizer.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> Self {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in &gens {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base).collect();
            chain.levels[i].gens = gens
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.image(b) == b))
                .cloned()
                .collect();
            chain.levels[i].rebuild_orbit(degree);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit_len = chain.levels[lvl].orbit.len();
            for oi in 0..orbit_len {
                let p = chain.levels[lvl].orbit[oi];
                for si in 0..chain.levels[lvl].gens.len() {
                    let level = &chain.levels[lvl];
                    let s = &level.gens[si];
                    let q = s.image(p);
                    let schreier = level.reps[p]
                        .as_ref()
                        .unwrap()
                        .compose(s)
                        .compose(level.inv_reps[q].as_ref().unwrap());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (residue, depth) = chain.strip_from(schreier, lvl + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if depth == chain.levels.len() {
                        let b = residue.first_moved().expect("non-identity");
                        chain.levels.push(Level::new(b, degree));
                    }
                    for l in lvl + 1..=depth {
                        chain.levels[l].gens.push(residue.clone());
                        chain.levels[l].rebuild_orbit(degree);
                    }
                    i = depth as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    /// Sifts `g` through levels `from..`, returning the residue and the level at which
    /// sifting stopped (`levels.len()` if it passed every level).
    pub(crate) fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.image(level.base);
            match &level.inv_reps[p] {
                Some(inv) => g = g.compose(inv),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (residue, depth) = self.strip_from(g.clone(), 0);
        depth == self.levels.len() && residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generator_count(&self) -> usize {
        self.levels.first().map_or(0, |l| l.gens.len())
    }

    pub fn order(&self) -> Result<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| {
            acc.checked_mul(l.orbit.len() as u128)
                .ok_or(Error::OrderOverflow)
        })
    }

    /// Deterministic text rendering of the chain (base, orbit sizes, strong generators).
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "degree {}", self.degree);
        for (i, l) in self.levels.iter().enumerate() {
            let _ = writeln!(
                out,
                "level {i}: base {} orbit {} gens {}",
                l.base,
                l.orbit.len(),
                l.gens.len()
            );
            for g in &l.gens {
                let _ = writeln!(out, "  {g}");
            }
        }
        out
    }
}
