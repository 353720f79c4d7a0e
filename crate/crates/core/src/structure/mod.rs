//! Groups of I-type above a finite I-datum, their associated datum, and
//! the set-theoretic Yang-Baxter solutions they carry.

mod itype;
mod solution;

pub use itype::{associated_idatum, invert_pi, lattice_ball, theorem_b_enumerate, ITypeGroup, TheoremB, TheoremBEntry};
pub use solution::{derive_solution, verify_solution, SolutionMap, SolutionReport};
