//! Computations with bijective 1-cocycles on finite and finitely generated groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`alat`]: integer matrices, Smith normal form, finitely generated abelian
//!   groups and linear systems over them.
//! * [`groups`]: multiplication-table groups, permutation groups, quotients,
//!   transversals and extensions presented by a section 2-cocycle.
//! * [`gmodules`]: G-modules, G-groups, permutation lattices, equivariant
//!   surjections and module extensions with a chosen section.
//! * [`cohomology`]: 1- and 2-cocycles, class decisions, transgression, the
//!   coboundary map and Yoneda splicing.
//! * [`lifting`]: deciding, building and enumerating lifts of cocycle pairs.
//! * [`constructions`]: I-data on finite groups and the closure constructions.
//! * [`structure`]: groups of I-type above a given datum and their
//!   set-theoretic Yang-Baxter solutions.
//!
//! The Smith normal form engine is generic over the integer scalar (see
//! [`alat::IntScalar`]); the aliases below fix the scalars used everywhere else.

pub mod alat;
pub mod cohomology;
pub mod constructions;
mod error;
pub mod gmodules;
pub mod groups;
pub mod lifting;
pub mod structure;

pub use error::{Error, Result};

/// Arbitrary precision integer backing every class-equality decision.
pub type Int = num_bigint::BigInt;
/// Machine integer used for element coordinates and action matrices.
pub type Coord = i64;
/// Exact integer matrix.
pub type IntMatrix = alat::Matrix<Int>;
/// Matrix with machine-integer entries (actions, homomorphisms).
pub type CoordMatrix = alat::Matrix<Coord>;
/// Smith decomposition over arbitrary precision integers.
pub type Smith = alat::SmithDecomposition<Int>;

pub use alat::{AbElement, FGAbelianGroup};
pub use cohomology::{CohClass2, OneCocycle, TwoCocycle};
pub use constructions::IDatum;
pub use gmodules::{GGroup, GModule, ModuleExtension, ModuleSurjection, PermutationLattice};
pub use groups::{FiniteGroup, GroupExtension, Permutation, Quotient, Transversal};
pub use lifting::LiftProblem;
pub use structure::{ITypeGroup, SolutionMap};
