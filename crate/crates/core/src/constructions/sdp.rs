use std::sync::Arc;

use num_integer::Integer;

use super::IDatum;
use crate::alat::{FGAbelianGroup, Matrix};
use crate::cohomology::{OneCocycle, TwoCocycle};
use crate::error::input_err;
use crate::gmodules::GModule;
use crate::groups::{FiniteGroup, GroupExtension};
use crate::{Coord, Result};

/// I-datum on `G1 ⋊ G0` from a datum on `G0` and a finite `G0`-module `G1`:
/// module `G1 ⊕ A`, cocycle `(n, g) -> (n, π0(g))`. Elements of the
/// semidirect product have id `g * |G1| + i` for the `i`-th element `n`.
pub fn sdp_iyb(d: &IDatum, g1: &Arc<GModule>) -> Result<IDatum> {
    if g1.group() != d.group() {
        return Err(input_err!("G1 must be a module over the group of the datum"));
    }
    if !g1.base().is_finite() {
        return Err(input_err!("G1 must be finite"));
    }
    let ext = GroupExtension::new(TwoCocycle::zero(g1.clone()))?;
    let group = Arc::new(ext.to_finite_group()?);
    let sum = g1.direct_sum(d.module())?;
    let k = g1.base().finite_order()?;
    let proj: Vec<usize> = (0..group.order()).map(|x| x / k).collect();
    let module = Arc::new(sum.module.inflate(group.clone(), &proj)?);
    let values = (0..group.order())
        .map(|x| {
            let e = ext.element_at(x);
            sum.pair(&e.c, d.pi0().value(e.g))
        })
        .collect();
    IDatum::new(OneCocycle::new(module, values)?)
}

/// How a tower stage's group is acted on by the group built so far.
#[derive(Clone, Debug)]
pub enum StageAction {
    Trivial,
    /// One matrix per element id of the group built so far.
    Matrices(Vec<Matrix<Coord>>),
    /// Matrices on generators (element ids), extended multiplicatively.
    Generators(Vec<(usize, Matrix<Coord>)>),
}

#[derive(Clone, Debug)]
pub struct TowerStage {
    pub group: FGAbelianGroup,
    pub action: StageAction,
}

#[derive(Clone, Debug)]
pub struct TowerResult {
    pub datum: IDatum,
    pub warnings: Vec<String>,
}

/// Folds `sdp_iyb` over the stages, starting from the trivial group.
/// Stage orders that are not pairwise coprime only produce a warning.
pub fn a_type_tower(stages: &[TowerStage]) -> Result<TowerResult> {
    let trivial = Arc::new(FiniteGroup::trivial());
    let zero = Arc::new(GModule::trivial(FGAbelianGroup::trivial(), trivial));
    let mut datum = IDatum::new(OneCocycle::zero(zero))?;
    let mut warnings = Vec::new();
    let mut orders: Vec<usize> = Vec::new();
    for (i, stage) in stages.iter().enumerate() {
        let n = stage.group.finite_order().map_err(|_| input_err!("stage {i} is not finite"))?;
        for (j, &m) in orders.iter().enumerate() {
            if n.gcd(&m) != 1 {
                warnings.push(format!("stages {j} and {i} have orders {m} and {n}, which are not coprime"));
            }
        }
        orders.push(n);
        let group = datum.group().clone();
        let module = match &stage.action {
            StageAction::Trivial => GModule::trivial(stage.group.clone(), group),
            StageAction::Matrices(m) => GModule::new(stage.group.clone(), group, m.clone())?,
            StageAction::Generators(g) => GModule::from_generator_action(stage.group.clone(), group, g)?,
        };
        datum = sdp_iyb(&datum, &Arc::new(module))?;
    }
    Ok(TowerResult { datum, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::AbElement;

    fn c2_datum() -> IDatum {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = FGAbelianGroup::cyclic(2);
        let m = Arc::new(GModule::trivial(a.clone(), g));
        IDatum::new(OneCocycle::new(m, vec![a.zero(), a.basis(0)]).unwrap()).unwrap()
    }

    fn inversion() -> Vec<Matrix<Coord>> {
        vec![Matrix::identity(1), Matrix::from_rows(vec![vec![-1]]).unwrap()]
    }

    #[test]
    fn s3_from_c2_and_inversion() {
        let d = c2_datum();
        let g1 = Arc::new(GModule::new(FGAbelianGroup::cyclic(3), d.group().clone(), inversion()).unwrap());
        let s3 = sdp_iyb(&d, &g1).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.group().is_abelian());
        // first component of the cocycle on the G1 fiber is the identity
        let a = s3.module().base();
        let z3 = FGAbelianGroup::cyclic(3);
        let sum = g1.direct_sum(d.module()).unwrap();
        for i in 0..3 {
            let n = z3.element_at(i);
            assert_eq!(s3.pi0().value(i), &sum.pair(&n, &d.module().base().zero()));
            assert!(a.contains(s3.pi0().value(i)));
        }
        let t = a_type_tower(&[
            TowerStage { group: FGAbelianGroup::cyclic(2), action: StageAction::Trivial },
            TowerStage { group: FGAbelianGroup::cyclic(3), action: StageAction::Matrices(inversion()) },
        ])
        .unwrap();
        assert!(t.warnings.is_empty());
        assert_eq!(t.datum.group().table_rows(), s3.group().table_rows());
        assert_eq!(t.datum.pi0().values(), s3.pi0().values());
    }

    #[test]
    fn trivial_stage_keeps_datum() {
        let d = c2_datum();
        let one = Arc::new(GModule::trivial(FGAbelianGroup::trivial(), d.group().clone()));
        let e = sdp_iyb(&d, &one).unwrap();
        assert_eq!(e.order(), 2);
        let v: Vec<&AbElement> = e.pi0().values().iter().collect();
        assert!(!v[1].is_zero());
    }

    #[test]
    fn order_twelve_tower() {
        let inv4: Vec<Matrix<Coord>> =
            (0..4).map(|g| Matrix::from_rows(vec![vec![if g % 2 == 0 { 1 } else { -1 }]]).unwrap()).collect();
        let t = a_type_tower(&[
            TowerStage { group: FGAbelianGroup::cyclic(4), action: StageAction::Trivial },
            TowerStage { group: FGAbelianGroup::cyclic(3), action: StageAction::Matrices(inv4) },
        ])
        .unwrap();
        assert_eq!(t.datum.order(), 12);
        assert!(!t.datum.group().is_abelian());
    }

    #[test]
    fn non_coprime_stages_warn() {
        let t = a_type_tower(&[
            TowerStage { group: FGAbelianGroup::cyclic(2), action: StageAction::Trivial },
            TowerStage { group: FGAbelianGroup::cyclic(2), action: StageAction::Trivial },
        ])
        .unwrap();
        assert_eq!(t.warnings.len(), 1);
        assert_eq!(t.datum.order(), 4);
    }
}
