use std::sync::Arc;

use crate::alat::AbElement;
use crate::cohomology::{yoneda_splice, CohClass2, OneCocycle, TwoCocycle};
use crate::constructions::IDatum;
use crate::error::{input_err, invariant_err};
use crate::gmodules::{enumerate_surjections, extension_from_surjection, ModuleExtension, ModuleSurjection, PermutationLattice};
use crate::groups::{ExtElement, GroupExtension, Permutation};
use crate::lifting::{corollary_lift, ModuleLift};
use crate::{Coord, Result};

/// A group of I-type `G` in the pair model `(v, g)`, `v ∈ ker θ` in Hermite
/// coordinates, together with its bijective 1-cocycle `π: G -> Z^n`.
#[derive(Clone, Debug)]
pub struct ITypeGroup {
    lattice: Arc<PermutationLattice>,
    theta: ModuleSurjection,
    datum: IDatum,
    lift: ModuleLift,
}

#[derive(Clone, Debug)]
pub struct TheoremBEntry {
    pub theta: ModuleSurjection,
    pub gamma: ModuleExtension,
    pub spliced: CohClass2,
    pub group: ITypeGroup,
    /// Index of the first entry with the same kernel lattice and a
    /// cohomologous spliced class.
    pub class_of: usize,
}

#[derive(Clone, Debug)]
pub struct TheoremB {
    pub entries: Vec<TheoremBEntry>,
    /// Number of surjections found.
    pub surjections: usize,
    /// Number of distinct `(ker θ, [β])` pairs.
    pub classes: usize,
}

/// One group of I-type for every equivariant surjection `θ: Z^n -> A`:
/// `γ_θ` is `0 -> ker θ -> Z^n -> A -> 0`, `β` represents the splice of
/// `[π0]` with `γ_θ`, and the lift supplies `π`. With `collapse`, entries
/// whose spliced classes agree over the same kernel are dropped after the
/// first.
pub fn theorem_b_enumerate(d: &IDatum, lattice: &Arc<PermutationLattice>, collapse: bool) -> Result<TheoremB> {
    if !lattice.is_faithful() {
        return Err(input_err!("the embedding into the symmetric group must be faithful"));
    }
    if lattice.group() != d.group() {
        return Err(input_err!("lattice and datum are over different groups"));
    }
    let surj = enumerate_surjections(lattice, d.module())?;
    let surjections = surj.len();
    let mut entries: Vec<TheoremBEntry> = Vec::with_capacity(surjections);
    for theta in surj {
        let gamma = extension_from_surjection(&theta)?;
        let spliced = yoneda_splice(d.pi0(), &gamma)?;
        let lift = corollary_lift(spliced.representative(), &gamma, d.pi0())?
            .ok_or_else(|| invariant_err!("splice representative does not lift"))?;
        let group = ITypeGroup { lattice: lattice.clone(), theta: theta.clone(), datum: d.clone(), lift };
        let basis = theta.kernel_basis()?;
        let mut class_of = entries.len();
        for (i, e) in entries.iter().enumerate() {
            if e.class_of == i && e.theta.kernel_basis()? == basis && e.spliced.equals(&spliced)? {
                class_of = i;
                break;
            }
        }
        entries.push(TheoremBEntry { theta, gamma, spliced, group, class_of });
    }
    let classes = entries.iter().enumerate().filter(|(i, e)| e.class_of == *i).count();
    if collapse {
        let mut i = 0;
        entries.retain(|e| {
            i += 1;
            e.class_of == i - 1
        });
    }
    Ok(TheoremB { entries, surjections, classes })
}

impl ITypeGroup {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Arc<PermutationLattice> {
        &self.lattice
    }

    pub fn theta(&self) -> &ModuleSurjection {
        &self.theta
    }

    pub fn datum(&self) -> &IDatum {
        &self.datum
    }

    pub fn lift(&self) -> &ModuleLift {
        &self.lift
    }

    pub fn extension(&self) -> &GroupExtension {
        self.lift.extension()
    }

    pub fn beta(&self) -> &TwoCocycle {
        self.lift.extension().beta()
    }

    pub fn mul(&self, x: &ExtElement, y: &ExtElement) -> ExtElement {
        self.extension().mul(x, y)
    }

    pub fn pi(&self, x: &ExtElement) -> AbElement {
        self.lift.eval(x)
    }

    /// `x_i = π^-1(e_i)`.
    pub fn generator(&self, i: usize) -> Result<ExtElement> {
        invert_pi(self, &self.lift.middle().base().basis(i))
    }

    /// `Φ(e_i)`: the permutation part of `x_i`.
    pub fn phi(&self, i: usize) -> Result<&Permutation> {
        Ok(self.lattice.perm(self.generator(i)?.g))
    }
}

/// `π^-1(m)`: `g = π0^-1(θ(m))`, `v = m - λ(g) - s(π0(g))` pulled back to `ker θ`.
pub fn invert_pi(g: &ITypeGroup, m: &AbElement) -> Result<ExtElement> {
    let x = g.lift.invert(m)?;
    if &g.pi(&x) != m {
        return Err(invariant_err!("π(π^-1({m})) differs from {m}"));
    }
    Ok(x)
}

/// `(G0, Z^n / π(K), g -> π(g) + π(K))` with `K` the lattice fiber.
pub fn associated_idatum(g: &ITypeGroup) -> Result<IDatum> {
    let e = g.lift.module_extension();
    let k = e.kernel().base();
    let gens: Vec<AbElement> = (0..k.ncoords()).map(|j| g.pi(&ExtElement { c: k.basis(j), g: 0 })).collect();
    let q = e.middle().quotient_module(&gens)?;
    let module = Arc::new(q.module.clone());
    let values = (0..g.datum.group().order())
        .map(|x| q.project(&g.pi(&ExtElement { c: k.zero(), g: x })))
        .collect();
    IDatum::new(OneCocycle::new(module, values)?)
}

/// Elements on the sup-norm ball of radius `r` in `Z^n`.
pub fn lattice_ball(n: usize, r: Coord) -> Vec<AbElement> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<Coord>| (-r..=r).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out.into_iter().map(AbElement::from_raw).collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::alat::FGAbelianGroup;
    use crate::gmodules::GModule;
    use crate::groups::FiniteGroup;

    pub(crate) fn swap_instance() -> (IDatum, Arc<PermutationLattice>) {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = FGAbelianGroup::cyclic(2);
        let m = Arc::new(GModule::trivial(a.clone(), c2.clone()));
        let d = IDatum::new(OneCocycle::new(m, vec![a.zero(), a.basis(0)]).unwrap()).unwrap();
        let perms = vec![Permutation::identity(2), Permutation::new(vec![1, 0]).unwrap()];
        (d, Arc::new(PermutationLattice::from_embedding(c2, perms).unwrap()))
    }

    #[test]
    fn swap_has_one_nonsplit_group() {
        let (d, lat) = swap_instance();
        let tb = theorem_b_enumerate(&d, &lat, false).unwrap();
        assert_eq!(tb.surjections, 1);
        assert_eq!(tb.classes, 1);
        let e = &tb.entries[0];
        let imgs: Vec<Vec<Coord>> = e.theta.images().iter().map(|x| x.coords().to_vec()).collect();
        assert_eq!(imgs, vec![vec![1], vec![1]]);
        assert!(!e.spliced.is_trivial().unwrap());
        let g = &e.group;
        let (x1, x2) = (g.generator(0).unwrap(), g.generator(1).unwrap());
        assert_eq!(g.mul(&x1, &x1), g.mul(&x2, &x2));
        assert!(associated_idatum(g).unwrap().is_isomorphic(&d).unwrap());
    }

    #[test]
    fn invert_pi_round_trips_on_a_ball() {
        let (d, lat) = swap_instance();
        let tb = theorem_b_enumerate(&d, &lat, false).unwrap();
        let g = &tb.entries[0].group;
        let zero = invert_pi(g, &AbElement::from_raw(vec![0, 0])).unwrap();
        assert_eq!(zero, g.extension().identity());
        for m in lattice_ball(2, 5) {
            let x = invert_pi(g, &m).unwrap();
            assert_eq!(g.pi(&x), m);
        }
        for x in g.extension().ball(3).unwrap() {
            assert_eq!(invert_pi(g, &g.pi(&x)).unwrap(), x);
        }
    }

    #[test]
    fn trivial_group_rank_one_is_z() {
        let t = Arc::new(FiniteGroup::trivial());
        let m = Arc::new(GModule::trivial(FGAbelianGroup::trivial(), t.clone()));
        let d = IDatum::new(OneCocycle::zero(m)).unwrap();
        let lat = Arc::new(PermutationLattice::from_embedding(t, vec![Permutation::identity(1)]).unwrap());
        let tb = theorem_b_enumerate(&d, &lat, true).unwrap();
        assert_eq!(tb.entries.len(), 1);
        let g = &tb.entries[0].group;
        assert!(g.beta().values().iter().all(|v| v.is_zero()));
        assert_eq!(g.extension().kernel_group().free_rank(), 1);
        let a = associated_idatum(g).unwrap();
        assert_eq!(a.order(), 1);
    }
}
