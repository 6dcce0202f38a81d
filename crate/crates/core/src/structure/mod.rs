//! Structural queries: centralizers, normalizers, Sylow subgroups, nilpotency and
//! solvability, conjugacy classes of subgroups and maximality.

mod ctx;
mod lattice;
mod queries;

pub(crate) use ctx::{cmp_sets, Ctx, ElemSet};
pub use lattice::{
    maximal_nilpotent_subgroups, maximal_subgroups, nilpotent_subgroups_up_to_conjugacy,
    subgroups_up_to_conjugacy, Analyzer, LatticeKey, LatticeKind, LatticeStore, SubgroupClass,
    SubgroupClassList, LATTICE_BOUND,
};
pub use queries::{
    centralizer, derived_subgroup, group_is_nilpotent, is_maximal, is_nilpotent, is_solvable,
    normalizer, order_primes, regular_unipotent_elements, sylow, sylow_count, sylows_containing, unisylow_elements,
    unisylow_elements_capped, FILTER_LIMIT,
};
pub(crate) use queries::subgroup_set;
