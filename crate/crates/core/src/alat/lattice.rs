//! Presentations, subgroups and kernels of finitely generated abelian groups.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::smith::{smith_with_inverses, SmithWithInverses};
use super::{AbElement, AbHom, AffineSolver, FGAbelianGroup, IntScalar, Matrix};
use crate::error::{input_err, invariant_err};
use crate::{Coord, Error, Int, Result};

/// The group `Z^m / L` for a relation lattice `L`, with coordinate maps.
///
/// `proj` sends a vector of `Z^m` to canonical coordinates of `group`;
/// `sect` sends canonical coordinates back to a representative in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub group: FGAbelianGroup,
    pub proj: Matrix<Coord>,
    pub sect: Matrix<Coord>,
}

impl Presentation {
    /// `Z^m` modulo the span of `relations` (each of length `m`).
    pub fn of_quotient(m: usize, relations: &[Vec<Coord>]) -> Result<Self> {
        let rel = Matrix::from_columns(m, relations)?;
        let s = smith_inverses_any(&rel)?;
        let diag: Vec<Int> = s.smith.diagonal();
        let mut free_idx = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..m {
            match diag.get(i) {
                None => free_idx.push(i),
                Some(d) if d.is_zero() => free_idx.push(i),
                Some(d) if d.is_one() => {}
                Some(d) => {
                    let d = d.to_i64().ok_or_else(|| Error::Overflow(format!("invariant factor {d}")))?;
                    torsion.push((i, d));
                }
            }
        }
        let group = FGAbelianGroup::new(free_idx.len(), torsion.iter().map(|&(_, d)| d).collect())?;
        let order: Vec<usize> = free_idx.iter().copied().chain(torsion.iter().map(|&(i, _)| i)).collect();
        let mut proj = s.smith.u.select_rows(&order);
        for (r, &(_, d)) in torsion.iter().enumerate() {
            let row = free_idx.len() + r;
            for j in 0..m {
                let x = proj.get(row, j).mod_floor(&Int::from(d));
                proj.set(row, j, x);
            }
        }
        let sect = s.u_inv.select_cols(&order);
        Ok(Presentation { group, proj: proj.to_coord()?, sect: sect.to_coord()? })
    }

    pub fn project(&self, x: &[Coord]) -> AbElement {
        self.group.reduce(self.proj.checked_mul_vec(x).expect("vector length matches presentation"))
    }

    pub fn lift(&self, c: &AbElement) -> Vec<Coord> {
        self.sect.checked_mul_vec(c.coords()).expect("element length matches presentation")
    }
}

fn smith_inverses_any(a: &Matrix<Coord>) -> Result<SmithWithInverses<Int>> {
    if let Some(s) = smith_with_inverses(&a.map(|&x| x as i128)) {
        let conv = |m: &Matrix<i128>| m.map(|&x| Int::from(x));
        return Ok(SmithWithInverses {
            smith: super::SmithDecomposition { u: conv(&s.smith.u), d: conv(&s.smith.d), v: conv(&s.smith.v) },
            u_inv: conv(&s.u_inv),
            v_inv: conv(&s.v_inv),
        });
    }
    smith_with_inverses(&a.to_int()).ok_or_else(|| invariant_err!("BigInt elimination overflowed"))
}

/// Row-style Hermite normal form: a canonical basis of the lattice spanned
/// by `rows`. Pivots are positive, entries above a pivot lie in `[0, pivot)`.
pub fn hermite_basis(rows: &[Vec<Coord>], dim: usize) -> Result<Vec<Vec<Coord>>> {
    if rows.iter().any(|r| r.len() != dim) {
        return Err(input_err!("lattice generator of wrong length"));
    }
    let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if let Some(h) = hnf_rows(small, dim) {
        return h
            .into_iter()
            .map(|r| r.into_iter().map(|x| Coord::try_from(x).map_err(|_| Error::Overflow("HNF entry".into()))).collect())
            .collect();
    }
    let big: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
    let h = hnf_rows(big, dim).ok_or_else(|| invariant_err!("BigInt HNF overflowed"))?;
    h.into_iter()
        .map(|r| r.into_iter().map(|x| x.to_i64().ok_or_else(|| Error::Overflow(format!("HNF entry {x}")))).collect())
        .collect()
}

fn hnf_rows<T: IntScalar>(mut rows: Vec<Vec<T>>, dim: usize) -> Option<Vec<Vec<T>>> {
    fn axpy<T: IntScalar>(rows: &mut [Vec<T>], dst: usize, src: usize, q: &T) -> Option<()> {
        for j in 0..rows[dst].len() {
            let s = rows[src][j].checked_mul(q)?;
            rows[dst][j] = rows[dst][j].checked_sub(&s)?;
        }
        Some(())
    }
    let mut r = 0;
    for col in 0..dim {
        if r >= rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs_cmp(&rows[b][col]).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                axpy(&mut rows, i, r, &q)?;
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = x.checked_neg_()?;
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            axpy(&mut rows, i, r, &q)?;
        }
        r += 1;
    }
    rows.truncate(r);
    Some(rows)
}

/// A subgroup presented as an abstract group with an inclusion map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub parent: FGAbelianGroup,
    pub group: FGAbelianGroup,
    /// `parent.ncoords() x group.ncoords()`.
    pub incl: Matrix<Coord>,
}

impl Subgroup {
    pub fn include(&self, c: &AbElement) -> AbElement {
        self.parent.reduce(self.incl.checked_mul_vec(c.coords()).expect("subgroup element length"))
    }

    /// Coordinates of a parent element inside the subgroup, if it lies there.
    pub fn coords_of(&self, x: &AbElement) -> Result<Option<AbElement>> {
        let solver = AffineSolver::for_group(&self.incl, &self.parent)?;
        Ok(solver.solve(x.coords())?.map(|c| self.group.reduce(c)))
    }

    pub fn generators(&self) -> Vec<AbElement> {
        (0..self.group.ncoords()).map(|j| self.include(&self.group.basis(j))).collect()
    }
}

fn relation_vectors(g: &FGAbelianGroup) -> Vec<Vec<Coord>> {
    (g.free_rank()..g.ncoords())
        .map(|j| {
            let mut v = vec![0; g.ncoords()];
            v[j] = g.modulus(j);
            v
        })
        .collect()
}

/// Subgroup of `parent` whose preimage in `Z^m` is spanned by `lattice_gens`
/// together with the relations of `parent`.
fn subgroup_from_lattice(parent: &FGAbelianGroup, lattice_gens: &[Vec<Coord>]) -> Result<Subgroup> {
    let m = parent.ncoords();
    let rels = relation_vectors(parent);
    let mut all: Vec<Vec<Coord>> = lattice_gens.to_vec();
    all.extend(rels.iter().cloned());
    let basis = hermite_basis(&all, m)?;
    let l = basis.len();
    // columns of w are the basis vectors
    let w = Matrix::from_columns(m, &basis)?;
    let solver = AffineSolver::new(&w, vec![0; m])?;
    let mut q = Vec::with_capacity(rels.len());
    for r in &rels {
        q.push(solver.solve(r)?.ok_or_else(|| invariant_err!("relation outside its own lattice"))?);
    }
    let pres = Presentation::of_quotient(l, &q)?;
    let incl = w.checked_mul(&pres.sect).ok_or_else(|| Error::Overflow("subgroup inclusion".into()))?;
    let incl = super::hom::reduce_columns(parent, &incl);
    Ok(Subgroup { parent: parent.clone(), group: pres.group, incl })
}

pub fn subgroup_generated(parent: &FGAbelianGroup, gens: &[AbElement]) -> Result<Subgroup> {
    if let Some(g) = gens.iter().find(|g| !parent.contains(g)) {
        return Err(input_err!("{g} is not an element of {parent}"));
    }
    let vecs: Vec<Vec<Coord>> = gens.iter().map(|g| g.coords().to_vec()).collect();
    subgroup_from_lattice(parent, &vecs)
}

/// Elements `x` of `parent` with `matrix * x` zero modulo `row_moduli`.
pub fn kernel_with_moduli(parent: &FGAbelianGroup, matrix: &Matrix<Coord>, row_moduli: Vec<Coord>) -> Result<Subgroup> {
    if matrix.cols() != parent.ncoords() {
        return Err(input_err!("kernel matrix has {} columns, parent has {} coordinates", matrix.cols(), parent.ncoords()));
    }
    let solver = AffineSolver::new(matrix, row_moduli)?;
    subgroup_from_lattice(parent, solver.homogeneous())
}

pub fn kernel(hom: &AbHom) -> Result<Subgroup> {
    kernel_with_moduli(hom.src(), hom.matrix(), hom.dst().moduli())
}

/// Canonical basis (Hermite rows) of the kernel lattice of a map out of `Z^n`.
pub fn kernel_lattice_basis(matrix: &Matrix<Coord>, row_moduli: Vec<Coord>) -> Result<Vec<Vec<Coord>>> {
    let solver = AffineSolver::new(matrix, row_moduli)?;
    hermite_basis(solver.homogeneous(), matrix.cols())
}

/// `parent / <gens>` with the projection from parent coordinates.
pub fn quotient_group(parent: &FGAbelianGroup, gens: &[AbElement]) -> Result<Presentation> {
    let mut rels = relation_vectors(parent);
    rels.extend(gens.iter().map(|g| g.coords().to_vec()));
    Presentation::of_quotient(parent.ncoords(), &rels)
}

/// Invariant-factor form of `Z/o_1 ⊕ ... ⊕ Z/o_k` (`o_i = 0` meaning `Z`).
pub fn isomorphism_type(orders: &[Coord]) -> Result<FGAbelianGroup> {
    let k = orders.len();
    let rels: Vec<Vec<Coord>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = orders[i];
            v
        })
        .collect();
    Ok(Presentation::of_quotient(k, &rels)?.group)
}

/// Direct sum of the given groups: a presentation on the concatenated
/// coordinates of the summands.
pub fn direct_sum(parts: &[&FGAbelianGroup]) -> Result<Presentation> {
    let m: usize = parts.iter().map(|p| p.ncoords()).sum();
    let mut rels = Vec::new();
    let mut offset = 0;
    for p in parts {
        for r in relation_vectors(p) {
            let mut v = vec![0; m];
            v[offset..offset + p.ncoords()].copy_from_slice(&r);
            rels.push(v);
        }
        offset += p.ncoords();
    }
    Presentation::of_quotient(m, &rels)
}
