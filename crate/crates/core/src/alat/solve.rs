//! Linear systems `A x = b` whose equations live in a finitely generated
//! abelian group: free coordinates are read over `Z`, torsion coordinates
//! modulo their invariant factor.

use num_traits::{ToPrimitive, Zero};

use super::smith::{checked_smith_normal_form, smith_normal_form, SmithDecomposition};
use super::{AbElement, FGAbelianGroup, Matrix};
use crate::error::input_err;
use crate::{Coord, Error, Int, Result};

/// One solution of a solvable system plus generators of the homogeneous
/// solution group (as integer vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Coord>,
    pub homogeneous: Vec<Vec<Coord>>,
}

/// Smith-factored system matrix, reusable for many right-hand sides.
#[derive(Clone, Debug)]
pub struct AffineSolver {
    unknowns: usize,
    moduli: Vec<Coord>,
    u: Matrix<Int>,
    v: Matrix<Int>,
    diag: Vec<Int>,
    homogeneous: Vec<Vec<Coord>>,
}

/// Solves `a * x = b` in `target`. `a` has one row per coordinate of `target`.
///
/// Returns `None` when the system has no integer solution. The particular
/// solution is the Smith back-substitution with every free parameter zero.
pub fn solve_affine(a: &Matrix<Coord>, b: &AbElement, target: &FGAbelianGroup) -> Result<Option<AffineSolution>> {
    if b.coords().len() != target.ncoords() {
        return Err(input_err!("right-hand side has {} coordinates, target has {}", b.coords().len(), target.ncoords()));
    }
    let solver = AffineSolver::for_group(a, target)?;
    Ok(solver
        .solve(b.coords())?
        .map(|particular| AffineSolution { particular, homogeneous: solver.homogeneous.clone() }))
}

impl AffineSolver {
    pub fn for_group(a: &Matrix<Coord>, target: &FGAbelianGroup) -> Result<Self> {
        Self::new(a, target.moduli())
    }

    /// `moduli[i]` is the modulus of equation `i`, `0` for an equation over `Z`.
    pub fn new(a: &Matrix<Coord>, moduli: Vec<Coord>) -> Result<Self> {
        if a.rows() != moduli.len() {
            return Err(input_err!("system has {} equations but {} moduli", a.rows(), moduli.len()));
        }
        if moduli.iter().any(|&d| d < 0) {
            return Err(input_err!("negative modulus"));
        }
        let unknowns = a.cols();
        let torsion_rows: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] != 0).collect();
        let cols = unknowns + torsion_rows.len();
        let m = Matrix::<i128>::from_fn(a.rows(), cols, |i, j| {
            if j < unknowns {
                *a.get(i, j) as i128
            } else if torsion_rows[j - unknowns] == i {
                moduli[i] as i128
            } else {
                0
            }
        });
        let smith: SmithDecomposition<Int> = match checked_smith_normal_form(&m) {
            Some(s) => SmithDecomposition {
                u: s.u.map(|&x| Int::from(x)),
                d: s.d.map(|&x| Int::from(x)),
                v: s.v.map(|&x| Int::from(x)),
            },
            None => smith_normal_form(&m.map(|&x| Int::from(x))),
        };
        let diag: Vec<Int> = smith.diagonal();
        let rank = diag.iter().take_while(|x| !x.is_zero()).count();
        let mut homogeneous = Vec::new();
        for j in rank..cols {
            let mut col: Vec<Coord> = Vec::with_capacity(unknowns);
            for i in 0..unknowns {
                col.push(to_coord(smith.v.get(i, j))?);
            }
            if col.iter().all(|&c| c == 0) {
                continue;
            }
            if col.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                col.iter_mut().for_each(|c| *c = -*c);
            }
            homogeneous.push(col);
        }
        Ok(AffineSolver { unknowns, moduli, u: smith.u, v: smith.v, diag, homogeneous })
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.moduli.len()
    }

    pub fn homogeneous(&self) -> &[Vec<Coord>] {
        &self.homogeneous
    }

    pub fn solve(&self, b: &[Coord]) -> Result<Option<Vec<Coord>>> {
        if b.len() != self.moduli.len() {
            return Err(input_err!("right-hand side has {} entries, system has {} equations", b.len(), self.moduli.len()));
        }
        let b: Vec<Int> = b.iter().map(|&x| Int::from(x)).collect();
        let c = self.u.checked_mul_vec(&b).expect("shape checked");
        let mut w = vec![Int::zero(); self.v.cols()];
        for (i, ci) in c.iter().enumerate() {
            match self.diag.get(i) {
                Some(d) if !d.is_zero() => {
                    if !(ci % d).is_zero() {
                        return Ok(None);
                    }
                    w[i] = ci / d;
                }
                _ => {
                    if !ci.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        let z = self.v.checked_mul_vec(&w).expect("shape checked");
        z[..self.unknowns].iter().map(to_coord).collect::<Result<Vec<_>>>().map(Some)
    }
}

fn to_coord(x: &Int) -> Result<Coord> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("solution entry {x} exceeds i64")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<Coord>>) -> Matrix<Coord> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn unit_over_integers() {
        let z = FGAbelianGroup::free(1);
        let sol = solve_affine(&m(vec![vec![1]]), &z.zero(), &z).unwrap().unwrap();
        assert_eq!(sol.particular, vec![0]);
        assert!(sol.homogeneous.is_empty());
    }

    #[test]
    fn two_x_is_one_mod_four_has_no_solution() {
        let z4 = FGAbelianGroup::cyclic(4);
        let b = z4.element(vec![1]).unwrap();
        assert_eq!(solve_affine(&m(vec![vec![2]]), &b, &z4).unwrap(), None);
    }

    #[test]
    fn two_x_is_two_mod_four() {
        let z4 = FGAbelianGroup::cyclic(4);
        let b = z4.element(vec![2]).unwrap();
        let sol = solve_affine(&m(vec![vec![2]]), &b, &z4).unwrap().unwrap();
        assert_eq!(sol.particular, vec![1]);
        assert_eq!(sol.homogeneous, vec![vec![2]]);
    }

    #[test]
    fn dimension_mismatch_is_input_error() {
        let z4 = FGAbelianGroup::cyclic(4);
        let b = FGAbelianGroup::free(2).zero();
        assert!(matches!(solve_affine(&m(vec![vec![2]]), &b, &z4), Err(Error::Input(_))));
        assert!(matches!(solve_affine(&m(vec![vec![2], vec![1]]), &z4.zero(), &z4), Err(Error::Input(_))));
    }

    #[test]
    fn no_unknowns() {
        let z2 = FGAbelianGroup::cyclic(2);
        let a = Matrix::<Coord>::from_fn(1, 0, |_, _| 0);
        assert!(solve_affine(&a, &z2.zero(), &z2).unwrap().is_some());
        assert!(solve_affine(&a, &z2.basis(0), &z2).unwrap().is_none());
    }
}
