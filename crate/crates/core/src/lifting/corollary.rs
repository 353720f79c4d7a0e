use std::sync::Arc;

use rand::Rng;

use crate::alat::AbElement;
use crate::cohomology::{cohomologous2, omega_pi0, OneCocycle, TwoCocycle};
use crate::error::{input_err, invariant_err};
use crate::gmodules::{GModule, ModuleExtension};
use crate::groups::{ExtElement, GroupExtension};
use crate::{Coord, Result};

/// The lift with `π1 = id` of a 1-cocycle `π0: G0 -> A` through a module
/// extension `0 -> G1 -> M -> A -> 0`, on the group extension of `G0` by
/// `G1` with cocycle `β`: `π(v, g) = v + λ(g) + s(π0(g))` in `M`.
#[derive(Clone, Debug)]
pub struct ModuleLift {
    ext: GroupExtension,
    module_ext: ModuleExtension,
    pi0: OneCocycle,
    lambda: Vec<AbElement>,
}

/// Exact bijectivity argument for the lift: each fiber `G1 × {g}` is sent
/// by a translation onto the `θ`-fiber of `π0(g)`, so `π` is bijective
/// exactly when `π0` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectivityCertificate {
    pub pi0_bijective: bool,
    pub fibers_are_translations: bool,
}

impl BijectivityCertificate {
    pub fn holds(&self) -> bool {
        self.pi0_bijective && self.fibers_are_translations
    }
}

/// Result of the bounded injectivity probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallProbe {
    pub radius: Coord,
    pub checked: usize,
    pub collision: Option<(ExtElement, ExtElement)>,
}

pub const DEFAULT_BALL_RADIUS: Coord = 3;

/// Decides `[β] = Δ([π0])` and returns the lift with `π1 = id` when it holds.
pub fn corollary_lift(beta: &TwoCocycle, e: &ModuleExtension, pi0: &OneCocycle) -> Result<Option<ModuleLift>> {
    if beta.module() != e.kernel() {
        return Err(input_err!("β must be valued in the kernel of the module extension with the same action"));
    }
    if pi0.module() != e.quotient() {
        return Err(input_err!("π0 must be valued in the quotient of the module extension"));
    }
    let ext = GroupExtension::new(beta.clone())?;
    let c = omega_pi0(pi0, e)?;
    let Some(lambda) = cohomologous2(&c, beta)? else {
        return Ok(None);
    };
    let lift = ModuleLift { ext, module_ext: e.clone(), pi0: pi0.clone(), lambda };
    Ok(Some(lift))
}

impl ModuleLift {
    pub fn extension(&self) -> &GroupExtension {
        &self.ext
    }

    pub fn module_extension(&self) -> &ModuleExtension {
        &self.module_ext
    }

    pub fn pi0(&self) -> &OneCocycle {
        &self.pi0
    }

    pub fn lambda(&self) -> &[AbElement] {
        &self.lambda
    }

    pub fn middle(&self) -> &Arc<GModule> {
        self.module_ext.middle()
    }

    pub fn eval(&self, x: &ExtElement) -> AbElement {
        let e = &self.module_ext;
        let m = e.middle().base();
        let k = e.kernel().base();
        m.add(&e.include(&k.add(&x.c, &self.lambda[x.g])), e.section(self.pi0.value(x.g)))
    }

    /// `π(xy) = π(x) + x.π(y)` on all pairs when the group is small and
    /// finite, otherwise on generator pairs and `samples` random pairs.
    pub fn check_cocycle(&self, rng: &mut impl Rng, samples: usize) -> Result<Option<(ExtElement, ExtElement)>> {
        let m = self.middle();
        let ok = |x: &ExtElement, y: &ExtElement| {
            self.eval(&self.ext.mul(x, y)) == m.base().add(&self.eval(x), &m.act(x.g, &self.eval(y)))
        };
        if let Some(n) = self.ext.order().filter(|&n| n <= 4096) {
            let elems: Vec<ExtElement> = (0..n as usize).map(|i| self.ext.element_at(i)).collect();
            for x in &elems {
                for y in &elems {
                    if !ok(x, y) {
                        return Ok(Some((x.clone(), y.clone())));
                    }
                }
            }
            return Ok(None);
        }
        let k = self.ext.kernel_group();
        let mut gens: Vec<ExtElement> = (0..k.ncoords()).map(|i| ExtElement { c: k.basis(i), g: 0 }).collect();
        gens.extend(self.ext.quotient().generators().into_iter().map(|g| ExtElement { c: k.zero(), g }));
        gens.push(self.ext.identity());
        for x in &gens {
            for y in &gens {
                if !ok(x, y) {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        for _ in 0..samples {
            let (x, y) = (self.ext.random_element(rng, 5), self.ext.random_element(rng, 5));
            if !ok(&x, &y) {
                return Ok(Some((x, y)));
            }
        }
        Ok(None)
    }

    /// Value table indexed by extension element ids (finite case).
    pub fn to_table(&self) -> Result<Vec<AbElement>> {
        let n = self.ext.order().ok_or_else(|| crate::Error::Unsupported("table of an infinite lift".into()))?;
        Ok((0..n as usize).map(|i| self.eval(&self.ext.element_at(i))).collect())
    }

    /// Exact bijectivity of a finite lift by its value table.
    pub fn is_bijective_finite(&self) -> Result<bool> {
        let table = self.to_table()?;
        let m = self.middle().base();
        let n = m.finite_order()?;
        if table.len() != n {
            return Ok(false);
        }
        let mut seen = vec![false; n];
        Ok(table.iter().all(|v| !std::mem::replace(&mut seen[m.index_of(v)], true)))
    }

    pub fn certificate(&self) -> Result<BijectivityCertificate> {
        let pi0_bijective = self.pi0.is_bijective()?;
        // translation by λ(g) + s(π0 g) composed with the injective inclusion;
        // exactness makes the image of G1 the whole θ-fiber over 0
        let e = &self.module_ext;
        let fibers_are_translations = crate::alat::kernel(e.incl())?.group.ncoords() == 0
            && (0..self.ext.quotient().order()).all(|g| &e.project(&self.eval(&ExtElement {
                c: self.ext.kernel_group().zero(),
                g,
            })) == self.pi0.value(g));
        Ok(BijectivityCertificate { pi0_bijective, fibers_are_translations })
    }

    /// Heuristic: injectivity on the ball of radius `r` in kernel coordinates.
    pub fn ball_probe(&self, r: Coord) -> Result<BallProbe> {
        let ball = self.ext.ball(r)?;
        let mut seen = std::collections::HashMap::with_capacity(ball.len());
        for x in &ball {
            if let Some(prev) = seen.insert(self.eval(x), x.clone()) {
                return Ok(BallProbe { radius: r, checked: ball.len(), collision: Some((prev, x.clone())) });
            }
        }
        Ok(BallProbe { radius: r, checked: ball.len(), collision: None })
    }

    /// Preimage `(v, g)` of `m ∈ M`; requires the certificate.
    pub fn invert(&self, m: &AbElement) -> Result<ExtElement> {
        let e = &self.module_ext;
        let a = e.project(m);
        let g = (0..self.ext.quotient().order())
            .find(|&g| self.pi0.value(g) == &a)
            .ok_or_else(|| input_err!("π0 misses {a}, so the lift is not bijective"))?;
        let mb = e.middle().base();
        let rest = mb.sub(&mb.sub(m, &e.include(&self.lambda[g])), e.section(&a));
        let v = e.pull_back(&rest)?;
        let x = ExtElement { c: v, g };
        if &self.eval(&x) != m {
            return Err(invariant_err!("inverse of {m} does not map back"));
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alat::{FGAbelianGroup, Matrix};
    use crate::groups::FiniteGroup;
    use rand::SeedableRng;

    fn z4_ext() -> ModuleExtension {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2.clone()));
        let m = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(4), c2.clone()));
        let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2));
        ModuleExtension::new(k, m, q, Matrix::from_rows(vec![vec![2]]).unwrap(), Matrix::identity(1)).unwrap()
    }

    #[test]
    fn c4_lift_is_identity() {
        let e = z4_ext();
        let k = e.kernel().clone();
        let z = k.base().zero();
        let beta = TwoCocycle::new(k.clone(), vec![z.clone(), z.clone(), z, k.base().basis(0)]).unwrap();
        let q = e.quotient().clone();
        let id = OneCocycle::new(q.clone(), vec![q.base().zero(), q.base().basis(0)]).unwrap();
        let lift = corollary_lift(&beta, &e, &id).unwrap().expect("classes agree");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert!(lift.check_cocycle(&mut rng, 10).unwrap().is_none());
        assert!(lift.is_bijective_finite().unwrap());
        assert!(lift.certificate().unwrap().holds());
        // pair (c, g) with id 2g + c is the element g.1 + 2c of C4
        let ext = lift.extension();
        let x = ExtElement { c: FGAbelianGroup::cyclic(2).zero(), g: 1 };
        assert_eq!(ext.pow(&x, 2), ExtElement { c: FGAbelianGroup::cyclic(2).basis(0), g: 0 });
        assert_eq!(lift.eval(&x).coords(), &[1]);
        for v in 0..4 {
            let m = FGAbelianGroup::cyclic(4).reduce(vec![v]);
            assert_eq!(lift.eval(&lift.invert(&m).unwrap()), m);
        }
    }

    #[test]
    fn split_beta_with_z4_does_not_lift() {
        let e = z4_ext();
        let beta = TwoCocycle::zero(e.kernel().clone());
        let q = e.quotient().clone();
        let id = OneCocycle::new(q.clone(), vec![q.base().zero(), q.base().basis(0)]).unwrap();
        assert!(corollary_lift(&beta, &e, &id).unwrap().is_none());
    }

    #[test]
    fn zero_pi0_gives_non_bijective_lift() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2.clone()));
        let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2));
        let e = ModuleExtension::split(k.clone(), q.clone()).unwrap();
        let lift = corollary_lift(&TwoCocycle::zero(k), &e, &OneCocycle::zero(q)).unwrap().unwrap();
        assert!(!lift.is_bijective_finite().unwrap());
        assert!(!lift.certificate().unwrap().holds());
    }
}
