use std::fmt;
use std::sync::Arc;

use crate::alat::AbElement;
use crate::cohomology::{is_bijective, is_cocycle1, OneCocycle};
use crate::error::input_err;
use crate::gmodules::GModule;
use crate::groups::FiniteGroup;
use crate::Result;

/// A finite group `G0` with a bijective 1-cocycle `π0: G0 -> A` into a
/// module of the same size. `inverse[i]` is the group element sent to the
/// `i`-th element of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IDatum {
    pi0: OneCocycle,
    inverse: Vec<usize>,
}

/// True iff `|A| = |G0|`, `π0` is a 1-cocycle and `π0` is bijective.
pub fn is_iyb_datum(group: &FiniteGroup, module: &GModule, values: &[AbElement]) -> Result<bool> {
    if module.group().as_ref() != group {
        return Err(input_err!("module is over a different group"));
    }
    if !module.base().is_finite() {
        return Err(input_err!("module of an I-datum must be finite"));
    }
    if module.base().finite_order()? != group.order() || values.len() != group.order() {
        return Ok(false);
    }
    if values.iter().any(|v| !module.base().contains(v)) {
        return Err(input_err!("value outside the module"));
    }
    Ok(is_cocycle1(module, values)? && is_bijective(module, values)?)
}

impl IDatum {
    pub fn new(pi0: OneCocycle) -> Result<Self> {
        if !is_iyb_datum(pi0.group(), pi0.module(), pi0.values())? {
            return Err(input_err!("not an I-datum: π0 is not a bijective 1-cocycle onto a module of the same size"));
        }
        let a = pi0.module().base();
        let mut inverse = vec![0; pi0.group().order()];
        for (g, v) in pi0.values().iter().enumerate() {
            inverse[a.index_of(v)] = g;
        }
        Ok(IDatum { pi0, inverse })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.pi0.group()
    }

    pub fn module(&self) -> &Arc<GModule> {
        self.pi0.module()
    }

    pub fn pi0(&self) -> &OneCocycle {
        &self.pi0
    }

    pub fn order(&self) -> usize {
        self.inverse.len()
    }

    /// The group element with `π0(g) = a`.
    pub fn preimage(&self, a: &AbElement) -> usize {
        self.inverse[self.module().base().index_of(a)]
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// Same group and a module isomorphism `φ` with `φ ∘ π0 = π0'`.
    /// Since both cocycles are bijective `φ` is forced, so this only checks
    /// that the forced map is additive and equivariant.
    pub fn is_isomorphic(&self, other: &IDatum) -> Result<bool> {
        if self.group() != other.group() {
            return Ok(false);
        }
        let (a, b) = (self.module(), other.module());
        if a.base().finite_order()? != b.base().finite_order()? {
            return Ok(false);
        }
        let phi = |x: &AbElement| other.pi0.value(self.preimage(x)).clone();
        let elems = a.base().elements()?;
        for x in &elems {
            for y in &elems {
                if phi(&a.base().add(x, y)) != b.base().add(&phi(x), &phi(y)) {
                    return Ok(false);
                }
            }
            for g in self.group().generators() {
                if phi(&a.act(g, x)) != b.act(g, &phi(x)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for IDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I-datum of order {} into {}", self.order(), self.module().base())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alat::FGAbelianGroup;

    fn c2_id() -> (Arc<GModule>, Vec<AbElement>) {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = FGAbelianGroup::cyclic(2);
        let m = Arc::new(GModule::trivial(a.clone(), g));
        (m, vec![a.zero(), a.basis(0)])
    }

    #[test]
    fn identity_on_c2_is_a_datum() {
        let (m, v) = c2_id();
        assert!(is_iyb_datum(m.group(), &m, &v).unwrap());
        let d = IDatum::new(OneCocycle::new(m.clone(), v).unwrap()).unwrap();
        assert_eq!(d.preimage(&m.base().basis(0)), 1);
        assert!(d.is_isomorphic(&d).unwrap());
    }

    #[test]
    fn zero_map_is_not_a_datum() {
        let (m, _) = c2_id();
        let z = vec![m.base().zero(); 2];
        assert!(!is_iyb_datum(m.group(), &m, &z).unwrap());
        assert!(IDatum::new(OneCocycle::zero(m)).is_err());
    }

    #[test]
    fn abelian_identity_data() {
        for a in [FGAbelianGroup::new(0, vec![2, 4]).unwrap(), FGAbelianGroup::cyclic(6)] {
            let g = Arc::new(FiniteGroup::from_abelian(&a).unwrap());
            let m = GModule::trivial(a.clone(), g.clone());
            let v: Vec<AbElement> = (0..g.order()).map(|i| a.element_at(i)).collect();
            assert!(is_iyb_datum(&g, &m, &v).unwrap());
        }
    }
}
