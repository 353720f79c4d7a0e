use std::sync::Arc;

use super::GModule;
use crate::alat::{self, enumerate_homs, AbElement, AbHom, FGAbelianGroup};
use crate::error::{input_err, invariant_err};
use crate::groups::{FiniteGroup, PermGroup, Permutation};
use crate::{Coord, Result};

/// `Z^n` with a finite group acting through permutations of the basis.
#[derive(Clone, Debug)]
pub struct PermutationLattice {
    perms: Vec<Permutation>,
    module: Arc<GModule>,
}

impl PermutationLattice {
    /// `perms[g]` is the permutation of element `g`; must be a homomorphism.
    pub fn from_embedding(group: Arc<FiniteGroup>, perms: Vec<Permutation>) -> Result<Self> {
        if perms.len() != group.order() {
            return Err(input_err!("{} permutations for a group of order {}", perms.len(), group.order()));
        }
        let n = perms.first().map(|p| p.degree()).unwrap_or(0);
        if perms.iter().any(|p| p.degree() != n) {
            return Err(input_err!("permutations of different degrees"));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if perms[group.mul(a, b)] != perms[a].compose(&perms[b]) {
                    return Err(input_err!("permutation action is not a homomorphism at ({a}, {b})"));
                }
            }
        }
        let action = perms.iter().map(|p| p.matrix()).collect();
        let module = Arc::new(GModule::new(FGAbelianGroup::free(n), group, action)?);
        Ok(PermutationLattice { perms, module })
    }

    pub fn from_perm_group(g: &PermGroup) -> Self {
        Self::from_embedding(Arc::new(g.group().clone()), g.elements().to_vec()).expect("permutation group acts")
    }

    pub fn rank(&self) -> usize {
        self.module.base().free_rank()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn perm(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn is_faithful(&self) -> bool {
        (1..self.perms.len()).all(|g| !self.perms[g].is_identity())
    }

    /// Orbits of the basis, each listed in increasing order.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = self.perms.iter().map(|p| p.apply(i)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            orbit.iter().for_each(|&j| seen[j] = true);
            out.push(orbit);
        }
        out
    }
}

/// An equivariant surjection `θ: Z^n -> A` from a permutation lattice.
#[derive(Clone, Debug)]
pub struct ModuleSurjection {
    lattice: Arc<PermutationLattice>,
    target: Arc<GModule>,
    map: AbHom,
}

impl ModuleSurjection {
    pub fn new(lattice: Arc<PermutationLattice>, target: Arc<GModule>, images: &[AbElement]) -> Result<Self> {
        if lattice.group() != target.group() {
            return Err(input_err!("lattice and target are modules over different groups"));
        }
        let map = AbHom::from_images(lattice.module().base().clone(), target.base().clone(), images)?;
        if !lattice.module().is_equivariant(&map, &target) {
            return Err(input_err!("map is not equivariant"));
        }
        let span = alat::subgroup_generated(target.base(), &map.images())?;
        if span.group.order() != target.base().order() {
            return Err(input_err!("map is not surjective"));
        }
        Ok(ModuleSurjection { lattice, target, map })
    }

    pub fn lattice(&self) -> &Arc<PermutationLattice> {
        &self.lattice
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn hom(&self) -> &AbHom {
        &self.map
    }

    pub fn images(&self) -> Vec<AbElement> {
        self.map.images()
    }

    pub fn apply(&self, v: &AbElement) -> AbElement {
        self.map.apply(v)
    }

    /// Hermite basis of `ker θ` (rows).
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Coord>>> {
        alat::kernel_lattice_basis(self.map.matrix(), self.target.base().moduli())
    }
}

/// Every equivariant surjection `M -> A`, in lexicographic order of the
/// basis images.
pub fn enumerate_surjections(m: &Arc<PermutationLattice>, a: &Arc<GModule>) -> Result<Vec<ModuleSurjection>> {
    if m.group() != a.group() {
        return Err(input_err!("lattice and target are modules over different groups"));
    }
    if !a.base().is_finite() {
        return Err(crate::Error::Unsupported("surjections onto an infinite module".into()));
    }
    let g = m.group();
    let orbits = m.orbits();
    let elems = a.base().elements()?;
    // candidate images of each orbit representative: elements fixed by its stabilizer
    let mut candidates: Vec<Vec<AbElement>> = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let r = orbit[0];
        let stab: Vec<usize> = (0..g.order()).filter(|&h| m.perm(h).apply(r) == r).collect();
        candidates.push(elems.iter().filter(|x| stab.iter().all(|&h| &a.act(h, x) == *x)).cloned().collect());
    }
    // an element carrying representative r to each basis vector
    let n = m.rank();
    let mut carrier: Vec<Option<(usize, usize)>> = vec![None; n];
    for (o, orbit) in orbits.iter().enumerate() {
        for h in 0..g.order() {
            let j = m.perm(h).apply(orbit[0]);
            carrier[j].get_or_insert((o, h));
        }
    }
    let carrier: Vec<(usize, usize)> = carrier.into_iter().map(|c| c.expect("orbits cover the basis")).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; orbits.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    'odometer: loop {
        let images: Vec<AbElement> = (0..n)
            .map(|j| {
                let (o, h) = carrier[j];
                a.act(h, &candidates[o][idx[o]])
            })
            .collect();
        match ModuleSurjection::new(m.clone(), a.clone(), &images) {
            Ok(s) => out.push(s),
            Err(crate::Error::Input(msg)) if msg.contains("surjective") => {}
            Err(e) => return Err(invariant_err!("candidate surjection rejected: {e}")),
        }
        let mut i = orbits.len();
        loop {
            if i == 0 {
                break 'odometer;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < candidates[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    Ok(out)
}

/// Equivariant homomorphisms between two finite-target modules over the same group.
pub fn invariant_homs(src: &GModule, dst: &GModule) -> Result<Vec<AbHom>> {
    if src.group() != dst.group() {
        return Err(input_err!("modules over different groups"));
    }
    Ok(enumerate_homs(src.base(), dst.base())?.filter(|f| src.is_equivariant(f, dst)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{conjugation_module, AbelianIdentification, Quotient};

    fn swap_lattice() -> Arc<PermutationLattice> {
        Arc::new(PermutationLattice::from_perm_group(&PermGroup::symmetric(2)))
    }

    #[test]
    fn swap_onto_z2() {
        let m = swap_lattice();
        let a = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), m.group().clone()));
        let s = enumerate_surjections(&m, &a).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].images(), vec![a.base().basis(0), a.base().basis(0)]);
        assert_eq!(s[0].kernel_basis().unwrap(), vec![vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn swap_onto_z3() {
        let m = swap_lattice();
        let a = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(3), m.group().clone()));
        let s = enumerate_surjections(&m, &a).unwrap();
        let firsts: Vec<Coord> = s.iter().map(|x| x.images()[0].coords()[0]).collect();
        assert_eq!(firsts, vec![1, 2]);
        assert!(s.iter().all(|x| x.images()[0] == x.images()[1]));
    }

    #[test]
    fn rank_one_trivial_group() {
        let g = PermGroup::new(1, vec![]).unwrap();
        let m = Arc::new(PermutationLattice::from_perm_group(&g));
        let a = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), m.group().clone()));
        assert_eq!(enumerate_surjections(&m, &a).unwrap().len(), 1);
    }

    #[test]
    fn invariant_homs_examples() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let z2 = FGAbelianGroup::cyclic(2);
        let t = GModule::trivial(z2.clone(), c2);
        assert_eq!(invariant_homs(&t, &t).unwrap().len(), 2);
        // Z/3 inside S3 by conjugation, target Z/3 with trivial action
        let s3 = PermGroup::symmetric(3);
        let g = s3.group();
        let a3: Vec<usize> = (0..6).filter(|&x| g.element_order(x) != 2).collect();
        let q = Quotient::new(g, &a3).unwrap();
        let ident = AbelianIdentification::identify(g, &a3).unwrap();
        let conj = conjugation_module(g, &q, &ident).unwrap();
        let triv = GModule::trivial(FGAbelianGroup::cyclic(3), q.group.clone());
        let homs = invariant_homs(&conj, &triv).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].images().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn faithfulness() {
        let m = swap_lattice();
        assert!(m.is_faithful());
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let id = Permutation::identity(2);
        let l = PermutationLattice::from_embedding(c2, vec![id.clone(), id]).unwrap();
        assert!(!l.is_faithful());
    }
}
