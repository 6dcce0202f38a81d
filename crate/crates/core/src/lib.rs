//! Covering numbers, nilpotent coverings and structural checks for small permutation
//! groups, together with the closed-form data of the rank-one Lie-type families.

pub mod covering;
pub mod error;
pub mod groups;
pub mod lie;
pub mod numtheory;
pub mod perm;
pub mod structure;
pub mod verifier;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation, SubgroupHandle};
