use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::FiniteGroup;
use crate::alat::{AbElement, FGAbelianGroup, Matrix, Presentation};
use crate::cohomology::TwoCocycle;
use crate::error::{input_err, invariant_err};
use crate::gmodules::GModule;
use crate::{Coord, Result};

/// `G/N` for a normal subgroup `N`. Cosets are numbered by their smallest
/// element id, so coset 0 is `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    normal: Vec<usize>,
    class_of: Vec<usize>,
    canonical: Transversal,
}

impl Quotient {
    pub fn new(g: &FiniteGroup, normal: &[usize]) -> Result<Self> {
        let mut normal = normal.to_vec();
        normal.sort_unstable();
        normal.dedup();
        if !g.is_normal(&normal) {
            return Err(input_err!("{normal:?} is not a normal subgroup"));
        }
        let mut class_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &n in &normal {
                class_of[g.mul(x, n)] = c;
            }
        }
        let group = FiniteGroup::from_fn(reps.len(), |a, b| class_of[g.mul(reps[a], reps[b])]);
        Ok(Quotient { group: Arc::new(group), normal, class_of, canonical: Transversal { reps } })
    }

    pub fn normal(&self) -> &[usize] {
        &self.normal
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.class_of
    }

    /// Smallest element of each coset.
    pub fn canonical_transversal(&self) -> &Transversal {
        &self.canonical
    }

    pub fn coset(&self, q: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == q).collect()
    }
}

/// One representative per coset, indexed by quotient ids, with the identity
/// coset represented by the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    reps: Vec<usize>,
}

impl Transversal {
    pub fn new(quotient: &Quotient, reps: Vec<usize>) -> Result<Self> {
        if reps.len() != quotient.group.order() {
            return Err(input_err!("transversal has {} entries for {} cosets", reps.len(), quotient.group.order()));
        }
        if reps[0] != 0 {
            return Err(input_err!("transversal is not normalized: identity coset represented by {}", reps[0]));
        }
        for (q, &r) in reps.iter().enumerate() {
            if r >= quotient.class_of.len() || quotient.class_of[r] != q {
                return Err(input_err!("{r} does not lie in coset {q}"));
            }
        }
        Ok(Transversal { reps })
    }

    /// Uniformly random normalized transversal.
    pub fn random(quotient: &Quotient, rng: &mut impl Rng) -> Self {
        let mut reps = vec![0];
        for q in 1..quotient.group.order() {
            let coset = quotient.coset(q);
            reps.push(coset[rng.gen_range(0..coset.len())]);
        }
        Transversal { reps }
    }

    pub fn rep(&self, q: usize) -> usize {
        self.reps[q]
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }
}

/// An isomorphism between an abelian subgroup of a finite group (by element
/// ids) and a group in invariant-factor form.
#[derive(Clone, Debug)]
pub struct AbelianIdentification {
    pub group: FGAbelianGroup,
    coords: HashMap<usize, AbElement>,
    ids: HashMap<AbElement, usize>,
}

impl AbelianIdentification {
    /// Finds a canonical-form presentation of the abelian subgroup `set`.
    pub fn identify(g: &FiniteGroup, set: &[usize]) -> Result<Self> {
        if !g.is_subgroup(set) {
            return Err(input_err!("{set:?} is not a subgroup"));
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        if sorted.iter().any(|&a| sorted.iter().any(|&b| g.mul(a, b) != g.mul(b, a))) {
            return Err(input_err!("subgroup {sorted:?} is not abelian"));
        }
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &a in &sorted {
            if span.len() == sorted.len() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = g.subgroup_generated(&gens);
            }
        }
        let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
        let k = gens.len();
        let mut rels: Vec<Vec<Coord>> = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = orders[i] as Coord;
                v
            })
            .collect();
        let mut first: HashMap<usize, Vec<Coord>> = HashMap::new();
        let mut v = vec![0 as Coord; k];
        'odometer: loop {
            let mut x = 0;
            for i in 0..k {
                x = g.mul(x, g.pow(gens[i], v[i]));
            }
            match first.get(&x) {
                Some(w) => rels.push(v.iter().zip(w).map(|(a, b)| a - b).collect()),
                None => {
                    first.insert(x, v.clone());
                }
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                v[i] += 1;
                if (v[i] as usize) < orders[i] {
                    break;
                }
                v[i] = 0;
            }
        }
        let pres = Presentation::of_quotient(k, &rels)?;
        if pres.group.order() != Some(sorted.len() as u128) {
            return Err(invariant_err!("abelian identification produced {} for {} elements", pres.group, sorted.len()));
        }
        let pairs = first.into_iter().map(|(x, w)| (x, pres.project(&w))).collect::<Vec<_>>();
        Self::from_pairs(pres.group, pairs)
    }

    pub(crate) fn from_pairs(group: FGAbelianGroup, pairs: Vec<(usize, AbElement)>) -> Result<Self> {
        let coords: HashMap<usize, AbElement> = pairs.iter().cloned().collect();
        let ids: HashMap<AbElement, usize> = pairs.into_iter().map(|(x, c)| (c, x)).collect();
        if coords.len() != ids.len() {
            return Err(invariant_err!("identification is not injective"));
        }
        Ok(AbelianIdentification { group, coords, ids })
    }

    pub fn coords_of(&self, x: usize) -> Option<&AbElement> {
        self.coords.get(&x)
    }

    pub fn id_of(&self, c: &AbElement) -> Option<usize> {
        self.ids.get(c).copied()
    }

    pub fn elements(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.coords.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

/// `β(q1, q2) = r(q1) r(q2) r(q1 q2)^-1` as element ids of `G`.
pub fn section_function(g: &FiniteGroup, quotient: &Quotient, t: &Transversal) -> Vec<usize> {
    let q = &quotient.group;
    let n = q.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(g.mul(g.mul(t.rep(a), t.rep(b)), g.inv(t.rep(q.mul(a, b)))));
        }
    }
    out
}

/// The quotient acting on an abelian normal subgroup by conjugation.
pub fn conjugation_module(g: &FiniteGroup, quotient: &Quotient, ident: &AbelianIdentification) -> Result<GModule> {
    let base = &ident.group;
    let t = quotient.canonical_transversal();
    let mut action = Vec::with_capacity(quotient.group.order());
    for q in 0..quotient.group.order() {
        let mut cols = Vec::with_capacity(base.ncoords());
        for j in 0..base.ncoords() {
            let x = ident.id_of(&base.basis(j)).ok_or_else(|| invariant_err!("basis element missing"))?;
            let y = g.conj(t.rep(q), x);
            cols.push(ident.coords_of(y).ok_or_else(|| input_err!("subgroup is not normal"))?.coords().to_vec());
        }
        action.push(Matrix::from_columns(base.ncoords(), &cols)?);
    }
    GModule::new(base.clone(), quotient.group.clone(), action)
}

/// Section 2-cocycle of `G -> G/N` for abelian normal `N`, valued in the
/// conjugation module.
pub fn section_cocycle(
    g: &FiniteGroup,
    quotient: &Quotient,
    t: &Transversal,
    ident: &AbelianIdentification,
) -> Result<TwoCocycle> {
    let module = Arc::new(conjugation_module(g, quotient, ident)?);
    section_cocycle_in(g, quotient, t, ident, module)
}

pub(crate) fn section_cocycle_in(
    g: &FiniteGroup,
    quotient: &Quotient,
    t: &Transversal,
    ident: &AbelianIdentification,
    module: Arc<GModule>,
) -> Result<TwoCocycle> {
    Transversal::new(quotient, t.reps.clone())?;
    let raw = section_function(g, quotient, t);
    let values = raw
        .into_iter()
        .map(|x| ident.coords_of(x).cloned().ok_or_else(|| input_err!("section function leaves N at element {x}")))
        .collect::<Result<Vec<_>>>()?;
    TwoCocycle::new(module, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_mod_c2() {
        let g = FiniteGroup::cyclic(4);
        let q = Quotient::new(&g, &[0, 2]).unwrap();
        assert_eq!(q.canonical_transversal().reps(), &[0, 1]);
        let ident = AbelianIdentification::identify(&g, &[0, 2]).unwrap();
        assert_eq!(ident.group, FGAbelianGroup::cyclic(2));
        let beta = section_cocycle(&g, &q, q.canonical_transversal(), &ident).unwrap();
        let one = FGAbelianGroup::cyclic(2).basis(0);
        assert_eq!(beta.value(1, 1), &one);
        assert!(beta.value(0, 1).is_zero() && beta.value(1, 0).is_zero() && beta.value(0, 0).is_zero());
    }

    #[test]
    fn klein_is_split() {
        let g = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        // first factor is {(0,0),(1,0)} = ids {0, 2}
        let q = Quotient::new(&g, &[0, 2]).unwrap();
        let t = Transversal::new(&q, vec![0, 1]).unwrap();
        let ident = AbelianIdentification::identify(&g, &[0, 2]).unwrap();
        let beta = section_cocycle(&g, &q, &t, &ident).unwrap();
        assert!(beta.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn trivial_kernel() {
        let g = FiniteGroup::cyclic(2);
        let q = Quotient::new(&g, &[0]).unwrap();
        let ident = AbelianIdentification::identify(&g, &[0]).unwrap();
        let beta = section_cocycle(&g, &q, q.canonical_transversal(), &ident).unwrap();
        assert!(beta.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = FiniteGroup::dihedral(3);
        assert!(Quotient::new(&d, &[0, 3]).is_err());
        let g = FiniteGroup::cyclic(4);
        let q = Quotient::new(&g, &[0, 2]).unwrap();
        assert!(Transversal::new(&q, vec![2, 1]).is_err());
        assert!(Transversal::new(&q, vec![0, 2]).is_err());
    }

    #[test]
    fn identification_of_klein_inside_c2c4() {
        let g = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4));
        let set = g.subgroup_generated(&[4, 2]);
        let ident = AbelianIdentification::identify(&g, &set).unwrap();
        assert_eq!(ident.group, FGAbelianGroup::new(0, vec![2, 2]).unwrap());
        for &a in &set {
            for &b in &set {
                let s = ident.group.add(ident.coords_of(a).unwrap(), ident.coords_of(b).unwrap());
                assert_eq!(ident.id_of(&s), Some(g.mul(a, b)));
            }
        }
    }
}
