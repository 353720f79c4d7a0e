use std::fmt;

use super::ITypeGroup;
use crate::error::{input_err, invariant_err};
use crate::Result;

/// `r(x_i, x_j) = (x_left[i][j], x_right[i][j])` on `X = {x_0, .., x_{n-1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionMap {
    n: usize,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolutionReport {
    pub bijective: bool,
    pub involutive: bool,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub braid: bool,
}

impl SolutionReport {
    pub fn all(&self) -> bool {
        self.bijective && self.involutive && self.left_nondegenerate && self.right_nondegenerate && self.braid
    }
}

impl SolutionMap {
    pub fn new(left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<Self> {
        let n = left.len();
        let ok = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n));
        if !ok(&left) || !ok(&right) {
            return Err(input_err!("solution tables must be {n}x{n} with entries below {n}"));
        }
        Ok(SolutionMap { n, left, right })
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(n: usize) -> Self {
        SolutionMap { n, left: (0..n).map(|_| (0..n).collect()).collect(), right: (0..n).map(|i| vec![i; n]).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn left(&self) -> &[Vec<usize>] {
        &self.left
    }

    pub fn right(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn apply(&self, i: usize, j: usize) -> (usize, usize) {
        (self.left[i][j], self.right[i][j])
    }
}

impl fmt::Display for SolutionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                let (a, b) = self.apply(i, j);
                writeln!(f, "r({i},{j})=({a},{b})")?;
            }
        }
        Ok(())
    }
}

fn is_permutation(n: usize, mut f: impl FnMut(usize) -> usize) -> bool {
    let mut seen = vec![false; n];
    (0..n).all(|x| !std::mem::replace(&mut seen[f(x)], true))
}

/// Exhaustive check of bijectivity, involutivity, non-degeneracy and the
/// braid relation `r12 r23 r12 = r23 r12 r23` on `X^3`.
pub fn verify_solution(r: &SolutionMap) -> SolutionReport {
    let n = r.n;
    let bijective = is_permutation(n * n, |p| {
        let (a, b) = r.apply(p / n, p % n);
        a * n + b
    });
    let involutive = (0..n).all(|i| (0..n).all(|j| {
        let (a, b) = r.apply(i, j);
        r.apply(a, b) == (i, j)
    }));
    let left_nondegenerate = (0..n).all(|i| is_permutation(n, |j| r.left[i][j]));
    let right_nondegenerate = (0..n).all(|j| is_permutation(n, |i| r.right[i][j]));
    let r12 = |[a, b, c]: [usize; 3]| {
        let (x, y) = r.apply(a, b);
        [x, y, c]
    };
    let r23 = |[a, b, c]: [usize; 3]| {
        let (y, z) = r.apply(b, c);
        [a, y, z]
    };
    let mut braid = true;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = [a, b, c];
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    braid = false;
                    break 'outer;
                }
            }
        }
    }
    SolutionReport { bijective, involutive, left_nondegenerate, right_nondegenerate, braid }
}

/// `r(x_i, x_j) = (x_k, x_l)` with `k = Φ_i(j)` and `l = Φ_k^-1(i)`, where
/// `Φ_i` is the permutation part of `x_i = π^-1(e_i)`.
pub fn derive_solution(g: &ITypeGroup) -> Result<SolutionMap> {
    let n = g.rank();
    let phi = (0..n).map(|i| g.phi(i).cloned()).collect::<Result<Vec<_>>>()?;
    let mut left = vec![vec![0; n]; n];
    let mut right = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let k = phi[i].apply(j);
            left[i][j] = k;
            right[i][j] = phi[k].inverse().apply(i);
        }
    }
    let r = SolutionMap::new(left, right)?;
    let report = verify_solution(&r);
    if !report.all() {
        return Err(invariant_err!("derived solution fails verification: {report:?}"));
    }
    Ok(r)
}
