use std::fmt;

use crate::error::input_err;
use crate::{Coord, Result};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_i >= 2` and `d_i | d_{i+1}`.
///
/// Coordinates are ordered free part first, then torsion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<Coord>,
}

/// Element in canonical coordinates: torsion entries lie in `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbElement(Vec<Coord>);

impl AbElement {
    /// Wraps raw coordinates without reducing them; use
    /// [`FGAbelianGroup::element`] for checked construction.
    pub fn from_raw(coords: Vec<Coord>) -> Self {
        AbElement(coords)
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Coord> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sup norm of the coordinate vector.
    pub fn sup_norm(&self) -> Coord {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for AbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FGAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<Coord>) -> Result<Self> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(input_err!("invariant factor {d} must be at least 2"));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(input_err!("invariant factor {} does not divide {}", w[0], w[1]));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    /// Coordinates with arbitrary moduli (no divisibility chain); only for
    /// internal products such as `M^k`.
    pub(crate) fn with_moduli_unchecked(free_rank: usize, torsion: Vec<Coord>) -> Self {
        FGAbelianGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        FGAbelianGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: vec![] }
    }

    /// `Z/n`; `n = 0` gives `Z` and `n = 1` the trivial group.
    pub fn cyclic(n: Coord) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FGAbelianGroup { free_rank: 0, torsion: vec![n.abs()] },
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Coord] {
        &self.torsion
    }

    pub fn ncoords(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| self.torsion.iter().map(|&d| d as u128).product())
    }

    /// Least common multiple of the element orders, for finite groups.
    pub fn exponent(&self) -> Option<Coord> {
        self.is_finite().then(|| self.torsion.last().copied().unwrap_or(1))
    }

    /// Per-coordinate modulus; `0` marks a free coordinate.
    pub fn moduli(&self) -> Vec<Coord> {
        let mut m = vec![0; self.free_rank];
        m.extend_from_slice(&self.torsion);
        m
    }

    pub fn modulus(&self, i: usize) -> Coord {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    pub fn reduce(&self, mut coords: Vec<Coord>) -> AbElement {
        debug_assert_eq!(coords.len(), self.ncoords());
        for (i, c) in coords.iter_mut().enumerate().skip(self.free_rank) {
            *c = c.rem_euclid(self.torsion[i - self.free_rank]);
        }
        AbElement(coords)
    }

    pub fn element(&self, coords: Vec<Coord>) -> Result<AbElement> {
        if coords.len() != self.ncoords() {
            return Err(input_err!("element has {} coordinates, group needs {}", coords.len(), self.ncoords()));
        }
        Ok(self.reduce(coords))
    }

    /// True iff `x` has the right length and canonical coordinates.
    pub fn contains(&self, x: &AbElement) -> bool {
        x.0.len() == self.ncoords()
            && x.0.iter().enumerate().skip(self.free_rank).all(|(i, &c)| c >= 0 && c < self.torsion[i - self.free_rank])
    }

    pub fn zero(&self) -> AbElement {
        AbElement(vec![0; self.ncoords()])
    }

    pub fn basis(&self, i: usize) -> AbElement {
        let mut v = vec![0; self.ncoords()];
        v[i] = 1;
        self.reduce(v)
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, k: Coord, a: &AbElement) -> AbElement {
        self.reduce(a.0.iter().map(|x| k * x).collect())
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a AbElement>) -> AbElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Order of `x`, `None` when it has infinite order.
    pub fn element_order(&self, x: &AbElement) -> Option<Coord> {
        if x.0[..self.free_rank].iter().any(|&c| c != 0) {
            return None;
        }
        let mut ord = 1;
        for (i, &c) in x.0.iter().enumerate().skip(self.free_rank) {
            let d = self.torsion[i - self.free_rank];
            ord = num_integer::lcm(ord, d / num_integer::gcd(c, d));
        }
        Some(ord)
    }

    /// All elements of a finite group in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<AbElement>> {
        let n = self.finite_order()?;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    pub fn finite_order(&self) -> Result<usize> {
        if !self.is_finite() {
            return Err(crate::Error::Unsupported("element enumeration of an infinite group".into()));
        }
        let order = self.order().unwrap_or(1);
        usize::try_from(order).ok().filter(|&n| n <= 1 << 24).ok_or_else(|| {
            crate::Error::Unsupported(format!("group of order {order} is too large to enumerate"))
        })
    }

    /// Inverse of [`Self::index_of`] for finite groups.
    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut coords = vec![0; self.torsion.len()];
        for (i, &d) in self.torsion.iter().enumerate().rev() {
            coords[i] = (idx % d as usize) as Coord;
            idx /= d as usize;
        }
        AbElement(coords)
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, x: &AbElement) -> usize {
        debug_assert!(self.is_finite());
        x.0.iter().zip(&self.torsion).fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
