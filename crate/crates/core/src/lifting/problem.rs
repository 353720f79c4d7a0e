use std::sync::Arc;

use crate::alat::{AbElement, AbHom};
use crate::cohomology::{
    coboundary1, cohomologous2, compose_beta, enumerate_cocycles1, is_cocycle1_quotient, is_cocycle1_table,
    pointed_coboundary_table, TwoCocycle,
};
use crate::error::{input_err, invariant_err};
use crate::gmodules::{GGroup, GModule};
use crate::groups::{conjugation_module, section_cocycle_in, AbelianIdentification, FiniteGroup, Quotient, Transversal};
use crate::Result;

/// Data of a lifting question on finite groups: `G` with an abelian normal
/// subgroup `G1` and quotient `G0`; a G-group `Γ` (acted on through `G0`)
/// with central `Γ1`; an invariant `π1: G1 -> Γ1`; a 1-cocycle `π0: G0 -> Γ0`.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    g: Arc<FiniteGroup>,
    quotient: Quotient,
    transversal: Transversal,
    g1: Arc<GModule>,
    g1_ident: AbelianIdentification,
    beta: TwoCocycle,
    gamma: Arc<GGroup>,
    gamma_g: GGroup,
    pi1: AbHom,
    pi0: Vec<usize>,
}

impl LiftProblem {
    pub fn new(
        g: Arc<FiniteGroup>,
        normal: &[usize],
        transversal: Option<Transversal>,
        gamma: Arc<GGroup>,
        pi1: AbHom,
        pi0: Vec<usize>,
    ) -> Result<Self> {
        let quotient = Quotient::new(&g, normal)?;
        if gamma.acting().as_ref() != quotient.group.as_ref() {
            return Err(input_err!("Γ is not acted on by the quotient G/G1"));
        }
        let transversal = match transversal {
            Some(t) => Transversal::new(&quotient, t.reps().to_vec())?,
            None => quotient.canonical_transversal().clone(),
        };
        let g1_ident = AbelianIdentification::identify(&g, quotient.normal())?;
        let g1 = Arc::new(conjugation_module(&g, &quotient, &g1_ident)?);
        // the module equality below compares acting groups, so use Γ's copy
        let g1 = Arc::new(GModule::new(g1.base().clone(), gamma.acting().clone(), g1.actions().to_vec())?);
        let beta = section_cocycle_in(&g, &quotient, &transversal, &g1_ident, g1.clone())?;
        if !g1.is_equivariant(&pi1, gamma.central_module()) {
            return Err(input_err!("π1 is not an invariant homomorphism G1 -> Γ1"));
        }
        if !is_cocycle1_quotient(&gamma, &pi0)? {
            return Err(input_err!("π0 is not a 1-cocycle G0 -> Γ0"));
        }
        let gamma_g = gamma.inflate(g.clone(), quotient.projection())?;
        Ok(LiftProblem { g, quotient, transversal, g1, g1_ident, beta, gamma, gamma_g, pi1, pi0 })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.g
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn beta(&self) -> &TwoCocycle {
        &self.beta
    }

    pub fn g1_module(&self) -> &Arc<GModule> {
        &self.g1
    }

    pub fn g1_identification(&self) -> &AbelianIdentification {
        &self.g1_ident
    }

    pub fn gamma(&self) -> &Arc<GGroup> {
        &self.gamma
    }

    /// `Γ` with the action pulled back to `G`.
    pub fn gamma_over_g(&self) -> &GGroup {
        &self.gamma_g
    }

    pub fn pi1(&self) -> &AbHom {
        &self.pi1
    }

    pub fn pi0(&self) -> &[usize] {
        &self.pi0
    }

    /// `Δ([π0])` representative and `π1 ∘ β`, both in `Γ1`.
    fn sides(&self) -> Result<(TwoCocycle, TwoCocycle)> {
        let c = pointed_coboundary_table(&self.pi0, &self.gamma)?.representative().clone();
        let c2 = compose_beta(&self.pi1, self.gamma.central_module(), &self.beta)?;
        Ok((c, c2))
    }

    /// Whether a table on `G` lifts the pair: a 1-cocycle restricting to
    /// `π1` on `G1` and inducing `π0` on `G0`.
    pub fn lifts_pair(&self, pi: &[usize]) -> Result<bool> {
        if !is_cocycle1_table(&self.gamma_g, pi)? {
            return Ok(false);
        }
        let gq = self.gamma.quotient();
        for &n in self.quotient.normal() {
            let want = self.gamma.central_id(&self.pi1.apply(self.g1_ident.coords_of(n).expect("G1 element")));
            if pi[n] != want {
                return Ok(false);
            }
        }
        Ok((0..self.g.order()).all(|x| gq.class_of(pi[x]) == self.pi0[self.quotient.class_of(x)]))
    }
}

/// A 1-cochain `λ: G0 -> Γ1` with `δλ = π1∘β - ω∘π0`, when the pair lifts.
pub fn can_lift(p: &LiftProblem) -> Result<Option<Vec<AbElement>>> {
    let (c, c2) = p.sides()?;
    cohomologous2(&c, &c2)
}

/// `π(n r(g)) = π1(n) λ(g) s(π0(g))` for `n ∈ G1` and `r` the transversal.
pub fn assemble_lift(p: &LiftProblem, lambda: &[AbElement]) -> Result<Vec<usize>> {
    let (c, c2) = p.sides()?;
    let m = p.gamma.central_module();
    if lambda.len() != p.quotient.group.order() || lambda.iter().any(|l| !m.base().contains(l)) {
        return Err(input_err!("λ has the wrong shape"));
    }
    if coboundary1(m, lambda)? != c2.sub(&c)? {
        return Err(input_err!("λ does not solve the lifting equation"));
    }
    let g = &p.g;
    let h = p.gamma.base();
    let table: Vec<usize> = (0..g.order())
        .map(|x| {
            let q = p.quotient.class_of(x);
            let n = g.mul(x, g.inv(p.transversal.rep(q)));
            let a = p.gamma.central_id(&p.pi1.apply(p.g1_ident.coords_of(n).expect("x r(q)^-1 lies in G1")));
            let l = p.gamma.central_id(&lambda[q]);
            h.mul(h.mul(a, l), p.gamma.section(p.pi0[q]))
        })
        .collect();
    if !p.lifts_pair(&table)? {
        return Err(invariant_err!("assembled map does not lift the pair"));
    }
    Ok(table)
}

/// `λ(g) = π(r(g)) s(π0(g))^-1`, the cochain recovered from a lift.
pub fn lambda_from_lift(p: &LiftProblem, pi: &[usize]) -> Result<Vec<AbElement>> {
    let h = p.gamma.base();
    (0..p.quotient.group.order())
        .map(|q| {
            let v = h.mul(pi[p.transversal.rep(q)], h.inv(p.gamma.section(p.pi0[q])));
            p.gamma.central_coords(v).cloned().ok_or_else(|| input_err!("table does not induce π0"))
        })
        .collect()
}

/// Every lift, as `π · (ι ∘ π'' ∘ q)` for `π''` in `Z^1(G0, Γ1)`.
pub fn all_lifts(p: &LiftProblem, pi: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !p.lifts_pair(pi)? {
        return Err(input_err!("the given table does not lift the pair"));
    }
    let h = p.gamma.base();
    let mut out = Vec::new();
    for z in enumerate_cocycles1(p.gamma.central_module())? {
        let t: Vec<usize> = (0..p.g.order())
            .map(|x| h.mul(pi[x], p.gamma.central_id(z.value(p.quotient.class_of(x)))))
            .collect();
        if !p.lifts_pair(&t)? {
            return Err(invariant_err!("twisted lift fails to lift the pair"));
        }
        out.push(t);
    }
    Ok(out)
}
