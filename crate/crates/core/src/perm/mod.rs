//! Permutations, permutation groups and subgroup handles.

mod chain;
mod group;
mod permutation;
mod table;

pub use chain::StabChain;
pub use group::{generated_subgroup, PermGroup, SubgroupHandle, DEGREE_CAP, ELEMENT_LIMIT};
pub use permutation::Permutation;
pub use table::ElementTable;

use std::sync::Arc;

use crate::error::Result;

/// Parses cycle notation such as `(0,1,2)(3,4)` on `degree` points.
pub fn perm_from_cycles(text: &str, degree: usize) -> Result<Permutation> {
    Permutation::from_cycles(text, degree)
}

pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Arc<PermGroup>> {
    PermGroup::new(degree, gens).map(Arc::new)
}

pub fn element_order(g: &Permutation) -> u64 {
    g.order()
}

pub fn conjugate_subgroup(h: &SubgroupHandle, g: &Permutation) -> Result<SubgroupHandle> {
    h.conjugate(g)
}
