use std::sync::Arc;

use rand::Rng;

use super::{GModule, ModuleSurjection};
use crate::alat::{self, AbElement, AbHom, AffineSolver, Matrix};
use crate::error::{input_err, invariant_err};
use crate::{Coord, Error, Result};

const MAX_SECTION_BOX: u128 = 1 << 24;

/// A short exact sequence `0 -> K -> M -> A -> 0` of modules over one group,
/// with a normalized set-theoretic section `A -> M`.
#[derive(Clone, Debug)]
pub struct ModuleExtension {
    kernel: Arc<GModule>,
    middle: Arc<GModule>,
    quotient: Arc<GModule>,
    incl: AbHom,
    proj: AbHom,
    section: Vec<AbElement>,
    solver: AffineSolver,
}

impl ModuleExtension {
    /// Validates exactness and equivariance and installs the canonical section.
    pub fn new(
        kernel: Arc<GModule>,
        middle: Arc<GModule>,
        quotient: Arc<GModule>,
        incl: Matrix<Coord>,
        proj: Matrix<Coord>,
    ) -> Result<Self> {
        if kernel.group() != middle.group() || middle.group() != quotient.group() {
            return Err(input_err!("extension modules are over different groups"));
        }
        if !quotient.base().is_finite() {
            return Err(Error::Unsupported("module extensions need a finite quotient".into()));
        }
        let incl = AbHom::new(kernel.base().clone(), middle.base().clone(), incl)?;
        let proj = AbHom::new(middle.base().clone(), quotient.base().clone(), proj)?;
        if !kernel.is_equivariant(&incl, &middle) || !middle.is_equivariant(&proj, &quotient) {
            return Err(input_err!("extension maps are not equivariant"));
        }
        if proj.compose(&incl)?.images().iter().any(|x| !x.is_zero()) {
            return Err(input_err!("projection does not vanish on the kernel"));
        }
        if alat::kernel(&incl)?.group.ncoords() != 0 {
            return Err(input_err!("inclusion is not injective"));
        }
        let solver = AffineSolver::for_group(incl.matrix(), middle.base())?;
        for x in alat::kernel(&proj)?.generators() {
            if solver.solve(x.coords())?.is_none() {
                return Err(input_err!("sequence is not exact at the middle term"));
            }
        }
        let span = alat::subgroup_generated(quotient.base(), &proj.images())?;
        if span.group.order() != quotient.base().order() {
            return Err(input_err!("projection is not surjective"));
        }
        let mut ext = ModuleExtension { kernel, middle, quotient, incl, proj, section: Vec::new(), solver };
        ext.section = ext.canonical_section()?;
        Ok(ext)
    }

    /// Lexicographically smallest preimage of each element, searching
    /// torsion coordinates in `[0, d)` and free ones in `[0, exp A)`.
    fn canonical_section(&self) -> Result<Vec<AbElement>> {
        let a = self.quotient.base();
        let m = self.middle.base();
        let order = a.finite_order()?;
        let e = a.exponent().unwrap_or(1).max(1);
        let bounds: Vec<Coord> = (0..m.ncoords()).map(|i| if m.modulus(i) == 0 { e } else { m.modulus(i) }).collect();
        let size: u128 = bounds.iter().map(|&b| b as u128).product();
        if size > MAX_SECTION_BOX {
            return Err(Error::Unsupported(format!("section search box of {size} points")));
        }
        let mut section: Vec<Option<AbElement>> = vec![None; order];
        let mut found = 0;
        let mut v = vec![0 as Coord; m.ncoords()];
        'odometer: loop {
            let x = AbElement::from_raw(v.clone());
            let idx = a.index_of(&self.proj.apply(&x));
            if section[idx].is_none() {
                section[idx] = Some(x);
                found += 1;
                if found == order {
                    break;
                }
            }
            let mut i = v.len();
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < bounds[i] {
                    break;
                }
                v[i] = 0;
            }
        }
        section.into_iter().map(|s| s.ok_or_else(|| invariant_err!("section box misses a coset"))).collect()
    }

    /// The same sequence with another normalized section (indexed like
    /// `quotient.base().elements()`).
    pub fn with_section(&self, section: Vec<AbElement>) -> Result<Self> {
        let a = self.quotient.base();
        if section.len() != a.finite_order()? {
            return Err(input_err!("section has {} values for {} elements", section.len(), a.finite_order()?));
        }
        if !section[0].is_zero() {
            return Err(input_err!("section is not normalized"));
        }
        for (i, s) in section.iter().enumerate() {
            if !self.middle.base().contains(s) || self.proj.apply(s) != a.element_at(i) {
                return Err(input_err!("section value {s} does not lie over element {i}"));
            }
        }
        let mut ext = self.clone();
        ext.section = section;
        Ok(ext)
    }

    /// Shifts every non-identity section value by a random kernel element
    /// with free coordinates in `[-radius, radius]`.
    pub fn random_section(&self, rng: &mut impl Rng, radius: Coord) -> Self {
        let k = self.kernel.base();
        let mut section = self.section.clone();
        for s in section.iter_mut().skip(1) {
            let c = (0..k.ncoords())
                .map(|i| match k.modulus(i) {
                    0 => rng.gen_range(-radius..=radius),
                    d => rng.gen_range(0..d),
                })
                .collect();
            let shift = self.incl.apply(&k.reduce(c));
            *s = self.middle.base().add(s, &shift);
        }
        self.with_section(section).expect("shifted section stays valid")
    }

    pub fn kernel(&self) -> &Arc<GModule> {
        &self.kernel
    }

    pub fn middle(&self) -> &Arc<GModule> {
        &self.middle
    }

    pub fn quotient(&self) -> &Arc<GModule> {
        &self.quotient
    }

    pub fn incl(&self) -> &AbHom {
        &self.incl
    }

    pub fn proj(&self) -> &AbHom {
        &self.proj
    }

    pub fn include(&self, k: &AbElement) -> AbElement {
        self.incl.apply(k)
    }

    pub fn project(&self, x: &AbElement) -> AbElement {
        self.proj.apply(x)
    }

    pub fn section(&self, a: &AbElement) -> &AbElement {
        &self.section[self.quotient.base().index_of(a)]
    }

    pub fn section_table(&self) -> &[AbElement] {
        &self.section
    }

    /// Kernel coordinates of an element of `M` lying in the image of `K`.
    pub fn pull_back(&self, x: &AbElement) -> Result<AbElement> {
        let sol = self.solver.solve(x.coords())?.ok_or_else(|| invariant_err!("{x} is not in the kernel image"))?;
        Ok(self.kernel.base().reduce(sol))
    }

    /// `ω(a, b) = s(a) + s(b) - s(a + b)` in kernel coordinates.
    pub fn omega(&self, a: &AbElement, b: &AbElement) -> Result<AbElement> {
        let m = self.middle.base();
        let q = self.quotient.base();
        let x = m.sub(&m.add(self.section(a), self.section(b)), self.section(&q.add(a, b)));
        self.pull_back(&x)
    }

    /// The split sequence `0 -> K -> K ⊕ A -> A -> 0`.
    pub fn split(kernel: Arc<GModule>, quotient: Arc<GModule>) -> Result<Self> {
        let sum = kernel.direct_sum(&quotient)?;
        let (kb, qb) = (kernel.base().clone(), quotient.base().clone());
        let incl_cols: Vec<Vec<Coord>> =
            (0..kb.ncoords()).map(|j| sum.pair(&kb.basis(j), &qb.zero()).into_coords()).collect();
        let mcoords = sum.module.base().ncoords();
        let incl = Matrix::from_columns(mcoords, &incl_cols)?;
        let proj_cols: Vec<Vec<Coord>> =
            (0..mcoords).map(|j| sum.split(&sum.module.base().basis(j)).1.into_coords()).collect();
        let proj = Matrix::from_columns(qb.ncoords(), &proj_cols)?;
        let ext = ModuleExtension::new(kernel, Arc::new(sum.module.clone()), quotient.clone(), incl, proj)?;
        let section = qb.elements()?.iter().map(|a| sum.pair(&kb.zero(), a)).collect();
        ext.with_section(section)
    }
}

/// `0 -> ker θ -> Z^n -> A -> 0`, with `ker θ` in Hermite-basis coordinates.
pub fn extension_from_surjection(theta: &ModuleSurjection) -> Result<ModuleExtension> {
    let lattice = theta.lattice();
    let n = lattice.rank();
    let basis = theta.kernel_basis()?;
    if basis.len() != n {
        return Err(invariant_err!("kernel of a surjection onto a finite module has rank {} < {n}", basis.len()));
    }
    let bmat = Matrix::from_columns(n, &basis)?;
    let solver = AffineSolver::new(&bmat, vec![0; n])?;
    let mut action = Vec::with_capacity(lattice.group().order());
    for g in 0..lattice.group().order() {
        let mut cols = Vec::with_capacity(n);
        for b in &basis {
            let img = lattice.module().act(g, &AbElement::from_raw(b.clone()));
            cols.push(solver.solve(img.coords())?.ok_or_else(|| invariant_err!("kernel is not stable"))?);
        }
        action.push(Matrix::from_columns(n, &cols)?);
    }
    let kernel = Arc::new(GModule::new(alat::FGAbelianGroup::free(n), lattice.group().clone(), action)?);
    ModuleExtension::new(
        kernel,
        lattice.module().clone(),
        theta.target().clone(),
        bmat,
        theta.hom().matrix().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alat::FGAbelianGroup;
    use crate::gmodules::{enumerate_surjections, PermutationLattice};
    use crate::groups::{FiniteGroup, PermGroup};
    use rand::SeedableRng;

    fn z4_over_z2(group: Arc<FiniteGroup>) -> ModuleExtension {
        let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), group.clone()));
        let m = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(4), group.clone()));
        let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), group));
        let incl = Matrix::from_rows(vec![vec![2]]).unwrap();
        let proj = Matrix::from_rows(vec![vec![1]]).unwrap();
        ModuleExtension::new(k, m, q, incl, proj).unwrap()
    }

    #[test]
    fn z4_extension_omega() {
        let e = z4_over_z2(Arc::new(FiniteGroup::cyclic(2)));
        let one = FGAbelianGroup::cyclic(2).basis(0);
        assert_eq!(e.section(&one).coords(), &[1]);
        assert_eq!(e.omega(&one, &one).unwrap(), one);
        assert!(e.omega(&one, &FGAbelianGroup::cyclic(2).zero()).unwrap().is_zero());
    }

    #[test]
    fn z_onto_z2() {
        let g = PermGroup::new(1, vec![]).unwrap();
        let m = Arc::new(PermutationLattice::from_perm_group(&g));
        let a = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), m.group().clone()));
        let theta = &enumerate_surjections(&m, &a).unwrap()[0];
        let e = extension_from_surjection(theta).unwrap();
        let one = a.base().basis(0);
        assert_eq!(e.section(&one).coords(), &[1]);
        // 1 + 1 - 0 = 2, which is the kernel generator
        assert_eq!(e.include(&e.omega(&one, &one).unwrap()).coords(), &[2]);
        assert_eq!(e.omega(&one, &one).unwrap().coords(), &[1]);
    }

    #[test]
    fn swap_kernel_and_index() {
        let m = Arc::new(PermutationLattice::from_perm_group(&PermGroup::symmetric(2)));
        let a = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), m.group().clone()));
        let theta = &enumerate_surjections(&m, &a).unwrap()[0];
        let e = extension_from_surjection(theta).unwrap();
        let det = e.incl().matrix().to_int().determinant().unwrap();
        assert_eq!(det.magnitude().to_string(), "2");
        // swap fixes (1,1) and sends (0,2) to (2,0) = 2(1,1) - (0,2)
        assert_eq!(e.kernel().action(1), &Matrix::from_rows(vec![vec![1, 2], vec![0, -1]]).unwrap());
    }

    #[test]
    fn split_and_random_sections() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2.clone()));
        let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(3), c2.clone()));
        let s = ModuleExtension::split(k, q.clone()).unwrap();
        for a in q.base().elements().unwrap() {
            for b in q.base().elements().unwrap() {
                assert!(s.omega(&a, &b).unwrap().is_zero());
            }
        }
        let e = z4_over_z2(c2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let r = e.random_section(&mut rng, 3);
            assert!(r.section_table()[0].is_zero());
        }
    }

    #[test]
    fn rejects_non_exact() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2.clone()));
        let m = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(4), c2.clone()));
        let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(4), c2));
        let r = ModuleExtension::new(k, m, q, Matrix::from_rows(vec![vec![2]]).unwrap(), Matrix::identity(1));
        assert!(r.is_err());
    }
}
