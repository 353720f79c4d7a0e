use std::sync::Arc;

use super::GModule;
use crate::alat::{AbElement, Matrix};
use crate::error::{input_err, invariant_err};
use crate::groups::{AbelianIdentification, FiniteGroup, Quotient};
use crate::Result;

/// A finite group `Γ` with an action of a finite group by automorphisms and
/// a designated central, action-stable subgroup `Γ1`.
#[derive(Clone, Debug)]
pub struct GGroup {
    base: Arc<FiniteGroup>,
    acting: Arc<FiniteGroup>,
    action: Vec<Vec<usize>>,
    central: Vec<usize>,
    quotient: Quotient,
    quotient_action: Vec<Vec<usize>>,
    ident: AbelianIdentification,
    central_module: Arc<GModule>,
}

impl GGroup {
    pub fn new(
        base: Arc<FiniteGroup>,
        acting: Arc<FiniteGroup>,
        action: Vec<Vec<usize>>,
        central: &[usize],
    ) -> Result<Self> {
        let n = base.order();
        if action.len() != acting.order() {
            return Err(input_err!("{} automorphism tables for a group of order {}", action.len(), acting.order()));
        }
        for (g, t) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if t.len() != n || t.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(input_err!("action of {g} is not a permutation of the group"));
            }
            if !base.is_hom_to(&base, t) {
                return Err(input_err!("action of {g} is not an automorphism"));
            }
        }
        if action[0].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(input_err!("identity does not act trivially"));
        }
        for a in 0..acting.order() {
            for b in 0..acting.order() {
                let ab = acting.mul(a, b);
                if (0..n).any(|x| action[ab][x] != action[a][action[b][x]]) {
                    return Err(input_err!("action is not a homomorphism at ({a}, {b})"));
                }
            }
        }
        let mut central = central.to_vec();
        central.sort_unstable();
        central.dedup();
        let center = base.center();
        if !base.is_subgroup(&central) || central.iter().any(|z| center.binary_search(z).is_err()) {
            return Err(input_err!("designated subgroup is not central"));
        }
        if central.iter().any(|&z| action.iter().any(|t| central.binary_search(&t[z]).is_err())) {
            return Err(input_err!("designated subgroup is not stable under the action"));
        }
        let quotient = Quotient::new(&base, &central)?;
        let tr = quotient.canonical_transversal();
        let quotient_action = action
            .iter()
            .map(|t| (0..quotient.group.order()).map(|q| quotient.class_of(t[tr.rep(q)])).collect())
            .collect();
        let ident = AbelianIdentification::identify(&base, &central)?;
        let a = ident.group.clone();
        let mut mats = Vec::with_capacity(acting.order());
        for t in &action {
            let mut cols = Vec::with_capacity(a.ncoords());
            for j in 0..a.ncoords() {
                let x = ident.id_of(&a.basis(j)).ok_or_else(|| invariant_err!("basis element missing"))?;
                cols.push(ident.coords_of(t[x]).expect("stable").coords().to_vec());
            }
            mats.push(Matrix::from_columns(a.ncoords(), &cols)?);
        }
        let central_module = Arc::new(GModule::new(a, acting.clone(), mats)?);
        Ok(GGroup { base, acting, action, central, quotient, quotient_action, ident, central_module })
    }

    /// A finite module as a G-group; `central` lists generators of the
    /// designated subgroup.
    pub fn from_module(m: &GModule, central: &[AbElement]) -> Result<Self> {
        let (g, tables) = m.action_tables()?;
        let base = m.base();
        let gens: Vec<usize> = central.iter().map(|x| base.index_of(x)).collect();
        if central.iter().any(|x| !base.contains(x)) {
            return Err(input_err!("central generator outside the module"));
        }
        let sub = g.subgroup_generated(&gens);
        Self::new(Arc::new(g), m.group().clone(), tables, &sub)
    }

    /// The same group with the action pulled back along `proj: group -> acting`.
    pub fn inflate(&self, group: Arc<FiniteGroup>, proj: &[usize]) -> Result<GGroup> {
        if !group.is_hom_to(&self.acting, proj) {
            return Err(input_err!("inflation map is not a homomorphism"));
        }
        let action = proj.iter().map(|&q| self.action[q].clone()).collect();
        GGroup::new(self.base.clone(), group, action, &self.central)
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    pub fn acting(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action_tables(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn central(&self) -> &[usize] {
        &self.central
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// Action induced on `Γ0 = Γ/Γ1`.
    #[inline]
    pub fn act_quotient(&self, g: usize, q: usize) -> usize {
        self.quotient_action[g][q]
    }

    pub fn quotient_action_tables(&self) -> &[Vec<usize>] {
        &self.quotient_action
    }

    /// Canonical section `Γ0 -> Γ` (smallest id per coset).
    pub fn section(&self, q: usize) -> usize {
        self.quotient.canonical_transversal().rep(q)
    }

    pub fn identification(&self) -> &AbelianIdentification {
        &self.ident
    }

    /// `Γ1` as a module over the acting group.
    pub fn central_module(&self) -> &Arc<GModule> {
        &self.central_module
    }

    pub fn central_coords(&self, x: usize) -> Option<&AbElement> {
        self.ident.coords_of(x)
    }

    pub fn central_id(&self, c: &AbElement) -> usize {
        self.ident.id_of(c).expect("element of the central subgroup")
    }
}
