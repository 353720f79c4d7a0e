use std::collections::VecDeque;
use std::fmt;

use crate::alat::FGAbelianGroup;
use crate::error::input_err;
use crate::Result;

/// A finite group given by its multiplication table. Element `0` is the
/// identity; `mul(a, b)` is row `a`, column `b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a full table: identity at id 0, Latin square rows and
    /// columns, associativity. Violations are reported with the offending
    /// elements.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(input_err!("group table is empty"));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(input_err!("table row {a} has {} entries, expected {n}", row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(input_err!("table row {a} names element {x} outside 0..{n}"));
            }
        }
        for a in 0..n {
            if rows[0][a] != a || rows[a][0] != a {
                return Err(input_err!("element 0 is not the identity (check row and column of {a})"));
            }
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut seen[rows[a][b]], true) {
                    return Err(input_err!("row {a} repeats element {}", rows[a][b]));
                }
            }
            let mut seen = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut seen[rows[b][a]], true) {
                    return Err(input_err!("column {a} repeats element {}", rows[b][a]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(input_err!("associativity fails for ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(n, rows.into_iter().flatten().collect()))
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order).find(|&b| table[a * order + b] == 0).expect("latin square has an inverse");
        }
        FiniteGroup { order, table, inverses }
    }

    /// Tabulates a multiplication given on ids `0..order`; the law is trusted.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b));
            }
        }
        Self::from_flat_unchecked(order, table)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`; id `i + n*j` is `r^i s^j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "dihedral group of order 0");
        Self::from_fn(2 * n, |a, b| {
            let (i, s) = (a % n, a / n);
            let (k, t) = (b % n, b / n);
            let i2 = if s == 0 { (i + k) % n } else { (i + n - k) % n };
            i2 + n * ((s + t) % 2)
        })
    }

    /// Quaternion group: id `e + 4*j` is `i^e j^j` with `i^4 = 1`, `j^2 = i^2`,
    /// `j i j^-1 = i^-1`.
    pub fn quaternion() -> Self {
        Self::from_fn(8, |a, b| {
            let (e, s) = (a % 4, a / 4);
            let (f, t) = (b % 4, b / 4);
            let f2 = if s == 0 { f } else { (4 - f) % 4 };
            let mut e2 = (e + f2) % 4;
            if s == 1 && t == 1 {
                e2 = (e2 + 2) % 4;
            }
            e2 + 4 * ((s + t) % 2)
        })
    }

    /// Direct product; id `a * |h| + b` is `(a, b)`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order;
        Self::from_fn(g.order * m, |x, y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
    }

    /// A finite abelian group as a table; ids follow `FGAbelianGroup::element_at`.
    pub fn from_abelian(a: &FGAbelianGroup) -> Result<Self> {
        let n = a.finite_order()?;
        let elems = a.elements()?;
        Ok(Self::from_fn(n, |x, y| a.index_of(&a.add(&elems[x], &elems[y]))))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g n g^-1`.
    pub fn conj(&self, g: usize, n: usize) -> usize {
        self.mul(self.mul(g, n), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Sorted element ids of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan ids upwards, keep the ones not yet reached.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in 1..self.order {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            mark[x] = true;
        }
        mark[0] && set.iter().all(|&a| set.iter().all(|&b| mark[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut mark = vec![false; self.order];
        set.iter().for_each(|&x| mark[x] = true);
        self.is_subgroup(set) && (0..self.order).all(|g| set.iter().all(|&n| mark[self.conj(g, n)]))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// The subgroup on `set` (sorted, containing 0) with ids by position.
    pub fn restrict(&self, set: &[usize]) -> Result<FiniteGroup> {
        if !self.is_subgroup(set) || set.windows(2).any(|w| w[0] >= w[1]) || set.first() != Some(&0) {
            return Err(input_err!("not a sorted subgroup"));
        }
        let pos = |x: usize| set.binary_search(&x).expect("closed");
        Ok(Self::from_fn(set.len(), |a, b| pos(self.mul(set[a], set[b]))))
    }

    /// Whether `f` (indexed by ids of `self`) is a homomorphism into `other`.
    pub fn is_hom_to(&self, other: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order
            && f[0] == 0
            && (0..self.order).all(|a| (0..self.order).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b])))
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.order)
    }
}
