use std::collections::VecDeque;
use std::sync::Arc;

use crate::alat::{
    self, apply_matrix, direct_sum, quotient_group, reduce_columns, AbElement, AbHom, FGAbelianGroup, Matrix,
    Presentation, Subgroup,
};
use crate::error::{input_err, invariant_err};
use crate::groups::FiniteGroup;
use crate::{Coord, Error, Result};

/// A finitely generated abelian group with a left action of a finite group,
/// one matrix per group element acting on canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GModule {
    base: FGAbelianGroup,
    group: Arc<FiniteGroup>,
    action: Vec<Matrix<Coord>>,
}

impl GModule {
    pub fn new(base: FGAbelianGroup, group: Arc<FiniteGroup>, action: Vec<Matrix<Coord>>) -> Result<Self> {
        let k = base.ncoords();
        if action.len() != group.order() {
            return Err(input_err!("{} action matrices for a group of order {}", action.len(), group.order()));
        }
        let mut reduced = Vec::with_capacity(action.len());
        for (g, m) in action.iter().enumerate() {
            if m.rows() != k || m.cols() != k {
                return Err(input_err!("action matrix of element {g} is {}x{}, expected {k}x{k}", m.rows(), m.cols()));
            }
            // torsion generators must map to elements of the same order dividing d
            for j in base.free_rank()..k {
                let d = base.modulus(j);
                let col: Vec<Coord> = m.column(j).iter().map(|x| x * d).collect();
                if !base.reduce(col).is_zero() {
                    return Err(input_err!("action of element {g} is not well defined on generator {j}"));
                }
            }
            reduced.push(reduce_columns(&base, m));
        }
        if reduced[0] != reduce_columns(&base, &Matrix::identity(k)) {
            return Err(input_err!("identity does not act trivially"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let prod = reduced[a].checked_mul(&reduced[b]).ok_or_else(|| Error::Overflow("action product".into()))?;
                if reduce_columns(&base, &prod) != reduced[group.mul(a, b)] {
                    return Err(input_err!("action is not a homomorphism at ({a}, {b})"));
                }
            }
        }
        Ok(GModule { base, group, action: reduced })
    }

    pub fn trivial(base: FGAbelianGroup, group: Arc<FiniteGroup>) -> Self {
        let id = reduce_columns(&base, &Matrix::identity(base.ncoords()));
        let action = vec![id; group.order()];
        GModule { base, group, action }
    }

    /// Extends an action given on generators to the whole group.
    pub fn from_generator_action(
        base: FGAbelianGroup,
        group: Arc<FiniteGroup>,
        gens: &[(usize, Matrix<Coord>)],
    ) -> Result<Self> {
        let k = base.ncoords();
        let mut action: Vec<Option<Matrix<Coord>>> = vec![None; group.order()];
        action[0] = Some(Matrix::identity(k));
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (g, m) in gens {
                if *g >= group.order() || m.rows() != k || m.cols() != k {
                    return Err(input_err!("bad generator action for element {g}"));
                }
                let y = group.mul(x, *g);
                if action[y].is_none() {
                    let mx = action[x].as_ref().expect("visited");
                    let p = mx.checked_mul(m).ok_or_else(|| Error::Overflow("action product".into()))?;
                    action[y] = Some(reduce_columns(&base, &p));
                    queue.push_back(y);
                }
            }
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| input_err!("generators do not reach element {g}")))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, group, action)
    }

    pub fn base(&self) -> &FGAbelianGroup {
        &self.base
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn action(&self, g: usize) -> &Matrix<Coord> {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix<Coord>] {
        &self.action
    }

    pub fn act(&self, g: usize, x: &AbElement) -> AbElement {
        apply_matrix(&self.base, &self.action[g], x)
    }

    pub fn acts_trivially(&self, g: usize) -> bool {
        (0..self.base.ncoords()).all(|j| self.act(g, &self.base.basis(j)) == self.base.basis(j))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.group.order()).all(|g| self.acts_trivially(g))
    }

    pub fn is_fixed(&self, x: &AbElement) -> bool {
        self.group.generators().into_iter().all(|g| &self.act(g, x) == x)
    }

    /// The same module viewed over `group` through `proj: group -> self.group`.
    pub fn inflate(&self, group: Arc<FiniteGroup>, proj: &[usize]) -> Result<GModule> {
        if proj.len() != group.order() || !group.is_hom_to(&self.group, proj) {
            return Err(input_err!("inflation map is not a homomorphism onto the acting group"));
        }
        let action = proj.iter().map(|&q| self.action[q].clone()).collect();
        Ok(GModule { base: self.base.clone(), group, action })
    }

    /// Whether `f: self -> dst` commutes with the action of every generator.
    pub fn is_equivariant(&self, f: &AbHom, dst: &GModule) -> bool {
        f.src() == &self.base
            && f.dst() == &dst.base
            && self.group == dst.group
            && self.group.generators().into_iter().all(|g| {
                (0..self.base.ncoords()).all(|j| {
                    let e = self.base.basis(j);
                    f.apply(&self.act(g, &e)) == dst.act(g, &f.apply(&e))
                })
            })
    }

    /// Sub-module generated by `gens` (as a subgroup; must be stable).
    pub fn submodule(&self, gens: &[AbElement]) -> Result<Submodule> {
        let sub = alat::subgroup_generated(&self.base, gens)?;
        self.submodule_from(sub)
    }

    fn submodule_from(&self, sub: Subgroup) -> Result<Submodule> {
        let k = sub.group.ncoords();
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut cols = Vec::with_capacity(k);
            for j in 0..k {
                let y = self.act(g, &sub.include(&sub.group.basis(j)));
                let c = sub.coords_of(&y)?.ok_or_else(|| input_err!("subgroup is not stable under element {g}"))?;
                cols.push(c.into_coords());
            }
            action.push(Matrix::from_columns(k, &cols)?);
        }
        let module = GModule::new(sub.group.clone(), self.group.clone(), action)?;
        Ok(Submodule { module, sub })
    }

    /// Fixed points of the action, with trivial action.
    pub fn invariants_submodule(&self) -> Result<Submodule> {
        let k = self.base.ncoords();
        let gens = self.group.generators();
        let mut rows: Vec<Vec<Coord>> = Vec::with_capacity(gens.len() * k);
        let mut moduli = Vec::with_capacity(gens.len() * k);
        for &g in &gens {
            let m = &self.action[g];
            for i in 0..k {
                rows.push((0..k).map(|j| m.get(i, j) - Coord::from(i == j)).collect());
                moduli.push(self.base.modulus(i));
            }
        }
        let stacked = if rows.is_empty() { Matrix::zeros(0, k) } else { Matrix::from_rows(rows)? };
        let sub = alat::kernel_with_moduli(&self.base, &stacked, moduli)?;
        let s = self.submodule_from(sub)?;
        if !s.module.is_trivial() {
            return Err(invariant_err!("invariant submodule carries a nontrivial action"));
        }
        Ok(s)
    }

    /// `self / <gens>`; the span must be stable.
    pub fn quotient_module(&self, gens: &[AbElement]) -> Result<QuotientModule> {
        let pres = quotient_group(&self.base, gens)?;
        let k = pres.group.ncoords();
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let mut cols = Vec::with_capacity(k);
            for j in 0..k {
                let x = self.base.reduce(pres.lift(&pres.group.basis(j)));
                cols.push(pres.project(self.act(g, &x).coords()).into_coords());
            }
            action.push(Matrix::from_columns(k, &cols)?);
        }
        for x in gens {
            for g in self.group.generators() {
                if !pres.project(self.act(g, x).coords()).is_zero() {
                    return Err(input_err!("quotient by a non-stable subgroup"));
                }
            }
        }
        let module = GModule::new(pres.group.clone(), self.group.clone(), action)?;
        Ok(QuotientModule { module, pres })
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<DirectSumModule> {
        if self.group != other.group {
            return Err(input_err!("direct sum of modules over different groups"));
        }
        let pres = direct_sum(&[&self.base, &other.base])?;
        let (ka, kb) = (self.base.ncoords(), other.base.ncoords());
        let mut action = Vec::with_capacity(self.group.order());
        for g in 0..self.group.order() {
            let (ma, mb) = (&self.action[g], &other.action[g]);
            let block = Matrix::from_fn(ka + kb, ka + kb, |i, j| match (i < ka, j < ka) {
                (true, true) => *ma.get(i, j),
                (false, false) => *mb.get(i - ka, j - ka),
                _ => 0,
            });
            let m = pres
                .proj
                .checked_mul(&block)
                .and_then(|p| p.checked_mul(&pres.sect))
                .ok_or_else(|| Error::Overflow("direct sum action".into()))?;
            action.push(m);
        }
        let module = GModule::new(pres.group.clone(), self.group.clone(), action)?;
        Ok(DirectSumModule { module, pres, left: self.base.clone(), right: other.base.clone() })
    }

    /// Element tables for a finite module: the group of elements (ids in
    /// `FGAbelianGroup::element_at` order) and one automorphism table per
    /// group element.
    pub fn action_tables(&self) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
        let elems = self.base.elements()?;
        let tables = (0..self.group.order())
            .map(|g| elems.iter().map(|x| self.base.index_of(&self.act(g, x))).collect())
            .collect();
        Ok((FiniteGroup::from_abelian(&self.base)?, tables))
    }
}

#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: GModule,
    pub sub: Subgroup,
}

impl Submodule {
    pub fn include(&self, x: &AbElement) -> AbElement {
        self.sub.include(x)
    }

    pub fn inclusion_hom(&self) -> Result<AbHom> {
        AbHom::new(self.sub.group.clone(), self.sub.parent.clone(), self.sub.incl.clone())
    }
}

#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: GModule,
    pub pres: Presentation,
}

impl QuotientModule {
    pub fn project(&self, x: &AbElement) -> AbElement {
        self.pres.project(x.coords())
    }
}

#[derive(Clone, Debug)]
pub struct DirectSumModule {
    pub module: GModule,
    pub pres: Presentation,
    left: FGAbelianGroup,
    right: FGAbelianGroup,
}

impl DirectSumModule {
    pub fn pair(&self, a: &AbElement, b: &AbElement) -> AbElement {
        let mut v = a.coords().to_vec();
        v.extend_from_slice(b.coords());
        self.pres.project(&v)
    }

    pub fn split(&self, x: &AbElement) -> (AbElement, AbElement) {
        let v = self.pres.lift(x);
        let ka = self.left.ncoords();
        (self.left.reduce(v[..ka].to_vec()), self.right.reduce(v[ka..].to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_group() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn swap() -> Matrix<Coord> {
        Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn invariants_of_swap_lattice() {
        let m = GModule::new(FGAbelianGroup::free(2), swap_group(), vec![Matrix::identity(2), swap()]).unwrap();
        let inv = m.invariants_submodule().unwrap();
        assert_eq!(inv.module.base(), &FGAbelianGroup::free(1));
        assert_eq!(inv.include(&FGAbelianGroup::free(1).basis(0)).coords(), &[1, 1]);
    }

    #[test]
    fn invariants_of_swap_mod_two() {
        let a = FGAbelianGroup::new(0, vec![2, 2]).unwrap();
        let m = GModule::new(a.clone(), swap_group(), vec![Matrix::identity(2), swap()]).unwrap();
        let inv = m.invariants_submodule().unwrap();
        assert_eq!(inv.module.base().order(), Some(2));
        let gen = inv.include(&inv.module.base().basis(0));
        assert_eq!(gen.coords(), &[1, 1]);
        let t = GModule::trivial(a.clone(), swap_group());
        assert_eq!(t.invariants_submodule().unwrap().module.base(), &a);
    }

    #[test]
    fn rejects_bad_actions() {
        let z4 = FGAbelianGroup::cyclic(4);
        // x -> 2x is not invertible: not a homomorphism into Aut
        let m = Matrix::from_rows(vec![vec![2]]).unwrap();
        assert!(GModule::new(z4, swap_group(), vec![Matrix::identity(1), m]).is_err());
        // Z/2 -> Z/4 generator to 1 is not well defined
        let a = FGAbelianGroup::new(0, vec![2, 4]).unwrap();
        let bad = Matrix::from_rows(vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert!(GModule::new(a, swap_group(), vec![Matrix::identity(2), bad]).is_err());
    }

    #[test]
    fn generator_action_and_sum() {
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let neg = Matrix::from_rows(vec![vec![-1]]).unwrap();
        let m = GModule::from_generator_action(FGAbelianGroup::cyclic(3), c4.clone(), &[(1, neg)]).unwrap();
        assert!(m.acts_trivially(2));
        let t = GModule::trivial(FGAbelianGroup::cyclic(2), c4);
        let s = m.direct_sum(&t).unwrap();
        assert_eq!(s.module.base(), &FGAbelianGroup::cyclic(6));
        let x = s.pair(&FGAbelianGroup::cyclic(3).basis(0), &FGAbelianGroup::cyclic(2).basis(0));
        let (a, b) = s.split(&s.module.act(1, &x));
        assert_eq!(a.coords(), &[2]);
        assert_eq!(b.coords(), &[1]);
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = FGAbelianGroup::cyclic(4);
        let c2 = swap_group();
        let neg = Matrix::from_rows(vec![vec![3]]).unwrap();
        let m = GModule::new(z4.clone(), c2, vec![Matrix::identity(1), neg]).unwrap();
        let q = m.quotient_module(&[z4.element(vec![2]).unwrap()]).unwrap();
        assert_eq!(q.module.base(), &FGAbelianGroup::cyclic(2));
        assert!(q.module.is_trivial());
        let s = m.submodule(&[z4.element(vec![2]).unwrap()]).unwrap();
        assert_eq!(s.module.base(), &FGAbelianGroup::cyclic(2));
    }
}
