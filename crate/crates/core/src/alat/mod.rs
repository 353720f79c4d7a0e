//! Abelian lattice algebra: integer matrices, Smith form, finitely generated
//! abelian groups, homomorphisms and linear systems.

mod abelian;
mod hom;
mod lattice;
mod matrix;
mod scalar;
mod smith;
mod solve;

pub use abelian::{AbElement, FGAbelianGroup};
pub use hom::{enumerate_homs, AbHom, HomIter};
pub(crate) use hom::{apply_matrix, reduce_columns};
pub use lattice::{
    direct_sum, hermite_basis, isomorphism_type, kernel, kernel_lattice_basis, kernel_with_moduli, quotient_group,
    subgroup_generated, Presentation, Subgroup,
};
pub use matrix::Matrix;
pub use scalar::IntScalar;
pub use smith::{checked_smith_normal_form, smith_normal_form, SmithDecomposition};
pub use solve::{solve_affine, AffineSolution, AffineSolver};
