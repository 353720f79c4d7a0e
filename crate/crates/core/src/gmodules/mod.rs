//! Modules and G-groups over finite groups, permutation lattices,
//! equivariant surjections and module extensions with a chosen section.

mod extension;
mod ggroup;
mod lattice;
mod module;

pub use extension::{extension_from_surjection, ModuleExtension};
pub use ggroup::GGroup;
pub use lattice::{enumerate_surjections, invariant_homs, ModuleSurjection, PermutationLattice};
pub use module::{DirectSumModule, GModule, QuotientModule, Submodule};
