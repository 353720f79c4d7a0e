use super::{AbElement, FGAbelianGroup, Matrix};
use crate::error::input_err;
use crate::{Coord, Error, Result};

/// Homomorphism between finitely generated abelian groups, stored as the
/// images of the canonical generators of `src` (the columns of `matrix`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbHom {
    src: FGAbelianGroup,
    dst: FGAbelianGroup,
    matrix: Matrix<Coord>,
}

impl AbHom {
    pub fn new(src: FGAbelianGroup, dst: FGAbelianGroup, matrix: Matrix<Coord>) -> Result<Self> {
        if matrix.rows() != dst.ncoords() || matrix.cols() != src.ncoords() {
            return Err(input_err!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.ncoords(),
                src.ncoords()
            ));
        }
        let matrix = reduce_columns(&dst, &matrix);
        for j in src.free_rank()..src.ncoords() {
            let d = src.modulus(j);
            let img = dst.reduce(matrix.column(j));
            if !dst.scale(d, &img).is_zero() {
                return Err(input_err!("generator {j} has order {d} but its image {img} is not killed by {d}"));
            }
        }
        Ok(AbHom { src, dst, matrix })
    }

    pub fn from_images(src: FGAbelianGroup, dst: FGAbelianGroup, images: &[AbElement]) -> Result<Self> {
        let cols: Vec<Vec<Coord>> = images.iter().map(|x| x.coords().to_vec()).collect();
        let matrix = Matrix::from_columns(dst.ncoords(), &cols)?;
        if images.len() != src.ncoords() {
            return Err(input_err!("need {} generator images, got {}", src.ncoords(), images.len()));
        }
        Self::new(src, dst, matrix)
    }

    pub fn src(&self) -> &FGAbelianGroup {
        &self.src
    }

    pub fn dst(&self) -> &FGAbelianGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix<Coord> {
        &self.matrix
    }

    pub fn images(&self) -> Vec<AbElement> {
        (0..self.src.ncoords()).map(|j| self.dst.reduce(self.matrix.column(j))).collect()
    }

    pub fn apply(&self, x: &AbElement) -> AbElement {
        apply_matrix(&self.dst, &self.matrix, x)
    }

    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.dst != self.src {
            return Err(input_err!("cannot compose: {} != {}", first.dst, self.src));
        }
        AbHom::new(first.src.clone(), self.dst.clone(), self.matrix.mul(&first.matrix))
    }

    /// Bijectivity of a homomorphism between finite groups.
    pub fn is_bijective(&self) -> Result<bool> {
        if self.src.order() != self.dst.order() {
            return Ok(false);
        }
        let mut seen = std::collections::HashSet::new();
        for x in self.src.elements()? {
            if !seen.insert(self.apply(&x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn apply_matrix(dst: &FGAbelianGroup, m: &Matrix<Coord>, x: &AbElement) -> AbElement {
    dst.reduce(m.checked_mul_vec(x.coords()).expect("matrix shape matches element"))
}

/// Reduces the torsion rows of a map into `dst` so entries stay small.
pub(crate) fn reduce_columns(dst: &FGAbelianGroup, m: &Matrix<Coord>) -> Matrix<Coord> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let d = dst.modulus(i);
        if d == 0 {
            *m.get(i, j)
        } else {
            m.get(i, j).rem_euclid(d)
        }
    })
}

/// Lazily enumerates `Hom(src, dst)` for finite `dst`.
///
/// Each homomorphism is emitted once, in lexicographic order of the
/// concatenated generator images.
pub fn enumerate_homs(src: &FGAbelianGroup, dst: &FGAbelianGroup) -> Result<HomIter> {
    if !dst.is_finite() {
        return Err(Error::Unsupported(format!("homomorphisms into the infinite group {dst}")));
    }
    let all = dst.elements()?;
    let candidates: Vec<Vec<AbElement>> = (0..src.ncoords())
        .map(|j| {
            let d = src.modulus(j);
            all.iter().filter(|y| d == 0 || dst.scale(d, y).is_zero()).cloned().collect()
        })
        .collect();
    Ok(HomIter { src: src.clone(), dst: dst.clone(), counters: vec![0; candidates.len()], candidates, done: false })
}

pub struct HomIter {
    src: FGAbelianGroup,
    dst: FGAbelianGroup,
    candidates: Vec<Vec<AbElement>>,
    counters: Vec<usize>,
    done: bool,
}

impl Iterator for HomIter {
    type Item = AbHom;

    fn next(&mut self) -> Option<AbHom> {
        if self.done {
            return None;
        }
        let images: Vec<Vec<Coord>> =
            self.counters.iter().zip(&self.candidates).map(|(&c, cand)| cand[c].coords().to_vec()).collect();
        let matrix = Matrix::from_columns(self.dst.ncoords(), &images).expect("images have dst length");
        // odometer, last generator fastest
        self.done = true;
        for k in (0..self.counters.len()).rev() {
            self.counters[k] += 1;
            if self.counters[k] < self.candidates[k].len() {
                self.done = false;
                break;
            }
            self.counters[k] = 0;
        }
        Some(AbHom { src: self.src.clone(), dst: self.dst.clone(), matrix })
    }
}
