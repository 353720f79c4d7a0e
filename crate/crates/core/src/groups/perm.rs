use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use super::FiniteGroup;
use crate::alat::Matrix;
use crate::error::input_err;
use crate::{Coord, Result};

const MAX_PERM_GROUP_ORDER: usize = 50_000;

/// A permutation of `{0, ..., n-1}`. Composition is right-to-left:
/// `a.compose(b)` maps `i` to `a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(input_err!("{images:?} is not a permutation"));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(input_err!("expected '(' in cycle notation {text:?}"));
            };
            let close = body.find(')').ok_or_else(|| input_err!("unclosed cycle in {text:?}"))?;
            let mut pts = Vec::new();
            for tok in body[..close].split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                let p: usize = tok.parse().map_err(|_| input_err!("bad point {tok:?} in {text:?}"))?;
                if p == 0 || p > degree {
                    return Err(input_err!("point {p} outside 1..={degree}"));
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(input_err!("point {p} repeated in {text:?}"));
                }
                pts.push(p - 1);
            }
            for k in 0..pts.len() {
                images[pts[k]] = pts[(k + 1) % pts.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Matrix sending `e_j` to `e_{self(j)}`.
    pub fn matrix(&self) -> Matrix<Coord> {
        let n = self.degree();
        Matrix::from_fn(n, n, |i, j| Coord::from(self.images[j] == i))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if done[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !done[x] {
                done[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group with its elements listed in lexicographic order of
/// image vectors (so the identity has id 0) and the induced table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    group: FiniteGroup,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(input_err!("generator {g} has degree {} instead of {degree}", g.degree()));
        }
        let mut seen = BTreeSet::from([Permutation::identity(degree)]);
        let mut queue = VecDeque::from([Permutation::identity(degree)]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_PERM_GROUP_ORDER {
                        return Err(input_err!("permutation group exceeds {MAX_PERM_GROUP_ORDER} elements"));
                    }
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Permutation> = seen.into_iter().collect();
        let group = FiniteGroup::from_fn(elements.len(), |a, b| {
            elements.binary_search(&elements[a].compose(&elements[b])).expect("closed under composition")
        });
        Ok(PermGroup { degree, generators, elements, group })
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(Permutation { images: t });
            gens.push(Permutation { images: (0..n).map(|i| (i + 1) % n).collect() });
        }
        Self::new(n, gens).expect("symmetric group")
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n)
            .map(|k| {
                let mut t: Vec<usize> = (0..n).collect();
                t[0] = 1;
                t[1] = k;
                t[k] = 0;
                Permutation { images: t }
            })
            .collect();
        Self::new(n, gens).expect("alternating group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_round_trip() {
        let p = Permutation::parse_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap().to_string(), "()");
        assert!(Permutation::parse_cycles("(1 1)", 2).is_err());
        assert!(Permutation::parse_cycles("(1 3)", 2).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // a(b(2)) = a(3) = 3
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::alternating(4).order(), 12);
        let s3 = PermGroup::symmetric(3);
        assert!(s3.element(0).is_identity());
        let m = s3.element(3).matrix().mul(&s3.element(4).matrix());
        assert_eq!(m, s3.element(s3.group().mul(3, 4)).matrix());
    }
}
