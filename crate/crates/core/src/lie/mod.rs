//! The Lie-type families: explicit permutation models of small members and their
//! automorphism extensions, and the closed-form data attached to each family.

mod construct;
mod field;
mod spec;
mod sporadic;
mod zsigmondy;

pub use construct::{build_instance, construct, extend, AlmostSimple, ExtensionKind};
pub use field::FiniteField;
pub use spec::{parse_spec, LieFamily, LieFamilySpec};
pub use sporadic::{sporadic_witness_order, SPORADIC_WITNESS_ORDERS};
pub use zsigmondy::{primitive_part, zsigmondy};
