//! Smith normal form with unimodular transforms.
//!
//! Pivoting is deterministic: the entry of smallest absolute value in the
//! remaining submatrix, ties broken row-major. Every arithmetic step is
//! checked, so running the same elimination over a machine scalar either
//! produces exactly the `BigInt` result or reports overflow.

use std::cmp::Ordering;

use super::{IntScalar, Matrix};
use crate::Int;

/// `u * a * v == d` with `d` diagonal, non-negative and `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: IntScalar> SmithDecomposition<T> {
    /// Diagonal entries `d[0], d[1], ...` up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<T> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smith decomposition together with the inverses of both transforms.
#[derive(Clone, Debug)]
pub(crate) struct SmithWithInverses<T> {
    pub smith: SmithDecomposition<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

/// Smith normal form over arbitrary precision integers. Total on integer
/// matrices, including empty ones.
pub fn smith_normal_form(a: &Matrix<Int>) -> SmithDecomposition<Int> {
    try_smith(a, false).expect("BigInt arithmetic cannot overflow").smith
}

/// Runs the elimination over any scalar; `None` on overflow.
pub fn checked_smith_normal_form<T: IntScalar>(a: &Matrix<T>) -> Option<SmithDecomposition<T>> {
    try_smith(a, false).map(|s| s.smith)
}

pub(crate) fn smith_with_inverses<T: IntScalar>(a: &Matrix<T>) -> Option<SmithWithInverses<T>> {
    try_smith(a, true)
}

struct Elim<T> {
    d: Matrix<T>,
    u: Matrix<T>,
    v: Matrix<T>,
    inverses: Option<(Matrix<T>, Matrix<T>)>,
}

impl<T: IntScalar> Elim<T> {
    // row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        add_row(&mut self.d, dst, src, c)?;
        add_row(&mut self.u, dst, src, c)?;
        if let Some((u_inv, _)) = &mut self.inverses {
            // u_inv * E^{-1}: column src -= c * column dst
            add_col(u_inv, src, dst, &c.checked_neg_()?)?;
        }
        Some(())
    }

    // col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &T) -> Option<()> {
        add_col(&mut self.d, dst, src, c)?;
        add_col(&mut self.v, dst, src, c)?;
        if let Some((_, v_inv)) = &mut self.inverses {
            add_row(v_inv, src, dst, &c.checked_neg_()?)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        if let Some((u_inv, _)) = &mut self.inverses {
            u_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        if let Some((_, v_inv)) = &mut self.inverses {
            v_inv.swap_rows(a, b);
        }
    }

    fn negate_row(&mut self, i: usize) -> Option<()> {
        negate_row(&mut self.d, i)?;
        negate_row(&mut self.u, i)?;
        if let Some((u_inv, _)) = &mut self.inverses {
            for r in 0..u_inv.rows() {
                let x = u_inv.get(r, i).checked_neg_()?;
                u_inv.set(r, i, x);
            }
        }
        Some(())
    }
}

fn add_row<T: IntScalar>(m: &mut Matrix<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    if c.is_zero() {
        return Some(());
    }
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if s.is_zero() {
            continue;
        }
        let v = m.get(dst, j).checked_add(&s.checked_mul(c)?)?;
        m.set(dst, j, v);
    }
    Some(())
}

fn add_col<T: IntScalar>(m: &mut Matrix<T>, dst: usize, src: usize, c: &T) -> Option<()> {
    if c.is_zero() {
        return Some(());
    }
    for i in 0..m.rows() {
        let s = m.get(i, src);
        if s.is_zero() {
            continue;
        }
        let v = m.get(i, dst).checked_add(&s.checked_mul(c)?)?;
        m.set(i, dst, v);
    }
    Some(())
}

fn negate_row<T: IntScalar>(m: &mut Matrix<T>, i: usize) -> Option<()> {
    for j in 0..m.cols() {
        let x = m.get(i, j).checked_neg_()?;
        m.set(i, j, x);
    }
    Some(())
}

fn find_pivot<T: IntScalar>(d: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if x.abs_cmp(d.get(bi, bj)) == Ordering::Less {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn try_smith<T: IntScalar>(a: &Matrix<T>, with_inverses: bool) -> Option<SmithWithInverses<T>> {
    let (m, n) = (a.rows(), a.cols());
    let mut e = Elim {
        d: a.clone(),
        u: Matrix::identity(m),
        v: Matrix::identity(n),
        inverses: with_inverses.then(|| (Matrix::identity(m), Matrix::identity(n))),
    };
    for k in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = find_pivot(&e.d, k) else {
                return Some(finish(e));
            };
            e.swap_rows(k, pi);
            e.swap_cols(k, pj);
            let p = e.d.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..m {
                let x = e.d.get(i, k).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                e.add_row(i, k, &q.checked_neg_()?)?;
                if !e.d.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..n {
                let x = e.d.get(k, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                e.add_col(j, k, &q.checked_neg_()?)?;
                if !e.d.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row k and re-reduce
            let offending = (k + 1..m).find(|&i| (k + 1..n).any(|j| !e.d.get(i, j).mod_floor(&p).is_zero()));
            match offending {
                Some(i) => e.add_row(k, i, &T::one())?,
                None => break,
            }
        }
        if e.d.get(k, k).is_negative() {
            e.negate_row(k)?;
        }
    }
    Some(finish(e))
}

fn finish<T: IntScalar>(e: Elim<T>) -> SmithWithInverses<T> {
    let (u_inv, v_inv) = e.inverses.unwrap_or_else(|| (Matrix::zeros(0, 0), Matrix::zeros(0, 0)));
    SmithWithInverses { smith: SmithDecomposition { u: e.u, d: e.d, v: e.v }, u_inv, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    fn big(rows: Vec<Vec<i64>>) -> Matrix<Int> {
        Matrix::from_rows(rows).unwrap().to_int()
    }

    fn check(a: &Matrix<Int>, s: &SmithDecomposition<Int>) {
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "{diag:?}");
            }
        }
        assert!(diag.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn identity_case() {
        let a = big(vec![vec![1, 0], vec![0, 1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
        assert_eq!(s.d, Matrix::identity(2));
    }

    #[test]
    fn zero_case() {
        let a = big(vec![vec![0, 0], vec![0, 0]]);
        let s = smith_normal_form(&a);
        assert!(s.d.is_zero());
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(2));
    }

    #[test]
    fn two_four_six_eight() {
        // gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4)
        let a = big(vec![vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn empty_and_rectangular() {
        let a = Matrix::<Int>::zeros(0, 3);
        let s = smith_normal_form(&a);
        assert_eq!(s.v, Matrix::identity(3));
        let a = big(vec![vec![4, 6, 10]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![Int::from(2)]);
    }

    #[test]
    fn needs_divisibility_fix() {
        let a = big(vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn inverses_are_inverse() {
        let a = big(vec![vec![3, 5, 7], vec![2, 8, -4], vec![0, 6, 9]]);
        let s = smith_with_inverses(&a).unwrap();
        assert_eq!(s.smith.u.mul(&s.u_inv), Matrix::identity(3));
        assert_eq!(s.smith.v.mul(&s.v_inv), Matrix::identity(3));
        check(&a, &s.smith);
    }

    #[test]
    fn machine_scalar_matches_bigint() {
        let rows = vec![vec![3, 5, 7, 1], vec![2, 8, -4, 0], vec![0, 6, 9, 12]];
        let small = checked_smith_normal_form(&Matrix::<i64>::from_rows(rows.clone()).unwrap()).unwrap();
        let large = smith_normal_form(&big(rows));
        assert_eq!(small.d.to_int(), large.d);
        assert_eq!(small.u.to_int(), large.u);
        assert_eq!(small.v.to_int(), large.v);
    }

    #[test]
    fn overflow_is_reported() {
        let a = Matrix::<i64>::from_rows(vec![vec![i64::MAX, 3], vec![7, i64::MAX - 1]]).unwrap();
        // elimination multiplies large entries; either it fits or we get None, never garbage
        if let Some(s) = checked_smith_normal_form(&a) {
            let big_s = smith_normal_form(&a.to_int());
            assert_eq!(s.d.to_int(), big_s.d);
        }
    }
}
