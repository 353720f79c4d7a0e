//! Finite groups by multiplication table, permutation groups, quotients with
//! transversals, and extensions given by a section 2-cocycle.

mod extension;
mod finite;
mod perm;
mod quotient;

pub use extension::{build_extension, extension_action_kernel, kernel_of_action, ExtElement, GroupExtension};
pub use finite::FiniteGroup;
pub use perm::{PermGroup, Permutation};
pub use quotient::{
    conjugation_module, section_cocycle, section_function, AbelianIdentification, Quotient, Transversal,
};
pub(crate) use quotient::section_cocycle_in;
