use std::sync::Arc;

use super::{CohClass2, OneCocycle, TwoCocycle};
use crate::alat::{AbElement, AbHom, AffineSolver, FGAbelianGroup, Matrix};
use crate::error::{input_err, invariant_err};
use crate::gmodules::{GGroup, GModule, ModuleExtension};
use crate::{Coord, Result};

/// Class of `(g1, g2) -> -π1(β(g1, g2))` in `H^2(G0, Γ1)`.
pub fn transgression(pi1: &AbHom, g1: &GModule, gamma1: &Arc<GModule>, beta: &TwoCocycle) -> Result<CohClass2> {
    if beta.module().as_ref() != g1 {
        return Err(input_err!("β is not valued in the source of π1"));
    }
    if !g1.is_equivariant(pi1, gamma1) {
        return Err(input_err!("π1 is not an invariant homomorphism"));
    }
    let a = gamma1.base();
    let values = beta.values().iter().map(|v| a.neg(&pi1.apply(v))).collect();
    CohClass2::new(TwoCocycle::new(gamma1.clone(), values)?)
}

/// `π1 ∘ β` as a 2-cocycle valued in `Γ1`.
pub fn compose_beta(pi1: &AbHom, gamma1: &Arc<GModule>, beta: &TwoCocycle) -> Result<TwoCocycle> {
    TwoCocycle::new(gamma1.clone(), beta.values().iter().map(|v| pi1.apply(v)).collect())
}

/// `(ω∘π0)(g1, g2) = s(π0 g1) + g1.s(π0 g2) - s(π0(g1 g2))`, pulled back to the kernel.
pub fn omega_pi0(pi0: &OneCocycle, e: &ModuleExtension) -> Result<TwoCocycle> {
    if pi0.module() != e.quotient() {
        return Err(input_err!("π0 is not valued in the quotient of the extension"));
    }
    let g = pi0.group();
    let m = e.middle();
    let b = m.base();
    let n = g.order();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = b.sub(
                &b.add(e.section(pi0.value(x)), &m.act(x, e.section(pi0.value(y)))),
                e.section(pi0.value(g.mul(x, y))),
            );
            values.push(e.pull_back(&v).map_err(|_| invariant_err!("ω∘π0 leaves the kernel at ({x}, {y})"))?);
        }
    }
    TwoCocycle::new(e.kernel().clone(), values)
}

/// `Δ([π0])` for a module extension.
pub fn pointed_coboundary(pi0: &OneCocycle, e: &ModuleExtension) -> Result<CohClass2> {
    CohClass2::new(omega_pi0(pi0, e)?)
}

/// `Δ([π0])` for a central extension of G-groups: the class of
/// `s(π0 g1) g1(s(π0 g2)) s(π0(g1 g2))^-1` in the central module.
pub fn pointed_coboundary_table(pi0: &[usize], gamma: &GGroup) -> Result<CohClass2> {
    if !super::is_cocycle1_quotient(gamma, pi0)? {
        return Err(input_err!("π0 is not a 1-cocycle into the quotient"));
    }
    let g = gamma.acting();
    let h = gamma.base();
    let n = g.order();
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = h.mul(
                h.mul(gamma.section(pi0[x]), gamma.act(x, gamma.section(pi0[y]))),
                h.inv(gamma.section(pi0[g.mul(x, y)])),
            );
            let c = gamma.central_coords(v).ok_or_else(|| invariant_err!("ω∘π0 leaves Γ1 at ({x}, {y})"))?;
            values.push(c.clone());
        }
    }
    CohClass2::new(TwoCocycle::new(gamma.central_module().clone(), values)?)
}

/// The module `Z ⊕ Γ0` with `g.(k, γ) = (k, g.γ + k π0(g))` representing `[π0]`
/// as an extension of `Z` by `Γ0`; the action is a module action exactly
/// when `π0` is a 1-cocycle.
pub fn cocycle_module(pi0: &OneCocycle) -> Result<GModule> {
    let q = pi0.module();
    let qb = q.base();
    let base = FGAbelianGroup::new(qb.free_rank() + 1, qb.torsion().to_vec())?;
    let k = qb.ncoords();
    let action = (0..q.group().order())
        .map(|g| {
            let mg = q.action(g);
            let p = pi0.value(g).coords();
            Matrix::from_fn(k + 1, k + 1, |i, j| match (i, j) {
                (0, 0) => 1,
                (0, _) => 0,
                (_, 0) => p[i - 1],
                _ => *mg.get(i - 1, j - 1),
            })
        })
        .collect();
    GModule::new(base, q.group().clone(), action)
}

/// Splice of `[π0] ∈ Ext^1(Z, Γ0)` with `K -> M -> Γ0` computed on the
/// standard resolution: lift `1 ∈ Z`, take its coboundary in `Z ⊕ Γ0`, lift
/// each value through `M -> Γ0` by the linear solver, and pull the
/// coboundary of that lift back to `K`.
pub fn yoneda_splice(pi0: &OneCocycle, e: &ModuleExtension) -> Result<CohClass2> {
    yoneda_splice_shifted(pi0, e, None)
}

/// As `yoneda_splice`, adding `shifts[g]` (kernel elements) to the lift of
/// each `g != 1`.
pub fn yoneda_splice_shifted(pi0: &OneCocycle, e: &ModuleExtension, shifts: Option<&[AbElement]>) -> Result<CohClass2> {
    if pi0.module() != e.quotient() {
        return Err(input_err!("π0 is not valued in the quotient of the extension"));
    }
    let epi = cocycle_module(pi0).map_err(|err| input_err!("π0 does not define an extension of Z: {err}"))?;
    let g = pi0.group();
    let n = g.order();
    let eb = epi.base();
    let f0 = eb.basis(0);
    let m = e.middle();
    let mb = m.base();
    let lifter = AffineSolver::for_group(e.proj().matrix(), e.quotient().base())?;
    let mut f1 = Vec::with_capacity(n);
    for x in 0..n {
        let d = eb.sub(&epi.act(x, &f0), &f0);
        if d.coords()[0] != 0 {
            return Err(invariant_err!("coboundary of the lift of 1 leaves Γ0"));
        }
        let gamma: Vec<Coord> = d.coords()[1..].to_vec();
        let pre = lifter.solve(&gamma)?.ok_or_else(|| invariant_err!("projection is not surjective"))?;
        let mut v = mb.reduce(pre);
        if let (Some(s), true) = (shifts, x != 0) {
            v = mb.add(&v, &e.include(&s[x]));
        }
        f1.push(v);
    }
    let mut values = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let v = mb.add(&mb.sub(&m.act(x, &f1[y]), &f1[g.mul(x, y)]), &f1[x]);
            values.push(e.pull_back(&v)?);
        }
    }
    CohClass2::new(TwoCocycle::new(e.kernel().clone(), values)?)
}

/// `ι ∘ π'' ∘ q` for `q: G -> G0`, valued in the module `target` over `G`.
pub fn inflate_and_embed(
    pi2: &OneCocycle,
    proj: &[usize],
    iota: &AbHom,
    target: &Arc<GModule>,
) -> Result<OneCocycle> {
    if iota.src() != pi2.module().base() || iota.dst() != target.base() {
        return Err(input_err!("embedding does not match the coefficient modules"));
    }
    if proj.len() != target.group().order() {
        return Err(input_err!("projection has the wrong length"));
    }
    let values = proj.iter().map(|&q| iota.apply(pi2.value(q))).collect();
    OneCocycle::new(target.clone(), values)
}

/// Table form: values are element ids of the G-group, the embedding is
/// the central identification.
pub fn inflate_and_embed_table(pi2: &OneCocycle, proj: &[usize], gamma: &GGroup) -> Vec<usize> {
    proj.iter().map(|&q| gamma.central_id(pi2.value(q))).collect()
}
