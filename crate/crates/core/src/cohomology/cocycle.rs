use std::sync::Arc;

use crate::alat::AbElement;
use crate::error::input_err;
use crate::gmodules::{GGroup, GModule};
use crate::groups::FiniteGroup;
use crate::Result;

/// A module-valued 1-cochain on a finite group, stored as a value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCocycle {
    module: Arc<GModule>,
    values: Vec<AbElement>,
}

impl OneCocycle {
    /// Checks the table shape and the cocycle identity.
    pub fn new(module: Arc<GModule>, values: Vec<AbElement>) -> Result<Self> {
        if !is_cocycle1(&module, &values)? {
            return Err(input_err!("values do not satisfy the 1-cocycle identity"));
        }
        Ok(OneCocycle { module, values })
    }

    pub(crate) fn new_unchecked(module: Arc<GModule>, values: Vec<AbElement>) -> Self {
        OneCocycle { module, values }
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        let values = vec![module.base().zero(); module.group().order()];
        OneCocycle { module, values }
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn value(&self, g: usize) -> &AbElement {
        &self.values[g]
    }

    pub fn values(&self) -> &[AbElement] {
        &self.values
    }

    pub fn is_bijective(&self) -> Result<bool> {
        is_bijective(&self.module, &self.values)
    }

    pub fn add(&self, other: &OneCocycle) -> OneCocycle {
        let a = self.module.base();
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a.add(x, y)).collect();
        OneCocycle { module: self.module.clone(), values }
    }
}

fn check_table<T>(what: &str, values: &[T], expected: usize) -> Result<()> {
    if values.len() != expected {
        return Err(input_err!("{what} table has {} entries, expected {expected}", values.len()));
    }
    Ok(())
}

/// `π(gh) = π(g) + g.π(h)` for all pairs.
pub fn is_cocycle1(module: &GModule, values: &[AbElement]) -> Result<bool> {
    let g = module.group();
    check_table("1-cocycle", values, g.order())?;
    if values.iter().any(|v| !module.base().contains(v)) {
        return Err(input_err!("1-cocycle value outside the module"));
    }
    let a = module.base();
    Ok((0..g.order())
        .all(|x| (0..g.order()).all(|y| values[g.mul(x, y)] == a.add(&values[x], &module.act(x, &values[y])))))
}

/// Bijectivity of a finite value table onto the module.
pub fn is_bijective(module: &GModule, values: &[AbElement]) -> Result<bool> {
    let n = module
        .base()
        .finite_order()
        .map_err(|_| crate::Error::Unsupported("bijectivity of a cocycle into an infinite module".into()))?;
    if n != values.len() {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for v in values {
        if std::mem::replace(&mut seen[module.base().index_of(v)], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `g -> -c + π(g) + g.c`.
pub fn twist_by_coboundary(pi: &OneCocycle, c: &AbElement) -> Result<OneCocycle> {
    let m = &pi.module;
    if !m.base().contains(c) {
        return Err(input_err!("twisting element {c} is not in the module"));
    }
    let a = m.base();
    let values = (0..pi.values.len()).map(|g| a.add(&a.sub(&pi.values[g], c), &m.act(g, c))).collect();
    Ok(OneCocycle { module: m.clone(), values })
}

/// `π(gh) = π(g) g(π(h))` for a value table into a G-group whose acting
/// group is the source.
pub fn is_cocycle1_table(target: &GGroup, values: &[usize]) -> Result<bool> {
    let g = target.acting();
    let h = target.base();
    check_table("1-cocycle", values, g.order())?;
    if values.iter().any(|&v| v >= h.order()) {
        return Err(input_err!("1-cocycle value outside the target group"));
    }
    Ok((0..g.order())
        .all(|x| (0..g.order()).all(|y| values[g.mul(x, y)] == h.mul(values[x], target.act(x, values[y])))))
}

/// The same identity for a cocycle into the quotient `Γ/Γ1`.
pub fn is_cocycle1_quotient(target: &GGroup, values: &[usize]) -> Result<bool> {
    let g = target.acting();
    let q = &target.quotient().group;
    check_table("1-cocycle", values, g.order())?;
    if values.iter().any(|&v| v >= q.order()) {
        return Err(input_err!("1-cocycle value outside the quotient"));
    }
    Ok((0..g.order())
        .all(|x| (0..g.order()).all(|y| values[g.mul(x, y)] == q.mul(values[x], target.act_quotient(x, values[y])))))
}

pub fn is_bijective_table(order: usize, values: &[usize]) -> bool {
    let mut seen = vec![false; order];
    values.len() == order && values.iter().all(|&v| v < order && !std::mem::replace(&mut seen[v], true))
}

/// `g -> c^-1 π(g) g(c)`.
pub fn twist_by_coboundary_table(target: &GGroup, values: &[usize], c: usize) -> Vec<usize> {
    let h = target.base();
    (0..values.len()).map(|g| h.mul(h.mul(h.inv(c), values[g]), target.act(g, c))).collect()
}

/// A module-valued 2-cochain on a finite group; `value(a, b)` at index `a*n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    module: Arc<GModule>,
    values: Vec<AbElement>,
}

impl TwoCocycle {
    /// Stores a table; the cocycle identity is checked by `is_cocycle`.
    pub fn new(module: Arc<GModule>, values: Vec<AbElement>) -> Result<Self> {
        let n = module.group().order();
        check_table("2-cocycle", &values, n * n)?;
        if let Some(v) = values.iter().find(|v| !module.base().contains(v)) {
            return Err(input_err!("2-cocycle value {v} outside the module"));
        }
        Ok(TwoCocycle { module, values })
    }

    /// Normalizes a cocycle by subtracting the coboundary of the constant
    /// `μ = c(1, 1)`; returns the normalized cocycle and `μ`.
    pub fn normalized_from(module: Arc<GModule>, values: Vec<AbElement>) -> Result<(Self, AbElement)> {
        let c = Self::new(module, values)?;
        if let Some((a, b, d)) = c.cocycle_violation() {
            return Err(input_err!("2-cocycle identity fails at ({a}, {b}, {d})"));
        }
        let mu = c.values[0].clone();
        let n = c.group().order();
        let a = c.module.base().clone();
        let values = (0..n * n).map(|i| a.sub(&c.values[i], &c.module.act(i / n, &mu))).collect();
        Ok((TwoCocycle { module: c.module, values }, mu))
    }

    pub fn from_fn(module: Arc<GModule>, mut f: impl FnMut(usize, usize) -> AbElement) -> Result<Self> {
        let n = module.group().order();
        let values = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(module, values)
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        let n = module.group().order();
        let values = vec![module.base().zero(); n * n];
        TwoCocycle { module, values }
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    #[inline]
    pub fn value(&self, a: usize, b: usize) -> &AbElement {
        &self.values[a * self.group().order() + b]
    }

    pub fn values(&self) -> &[AbElement] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.group().order();
        (0..n).all(|g| self.value(0, g).is_zero() && self.value(g, 0).is_zero())
    }

    /// First triple where `g1.c(g2,g3) - c(g1g2,g3) + c(g1,g2g3) - c(g1,g2)` is nonzero.
    pub fn cocycle_violation(&self) -> Option<(usize, usize, usize)> {
        let g = self.group();
        let a = self.module.base();
        let n = g.order();
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                for z in 0..n {
                    let lhs = a.add(&self.module.act(x, self.value(y, z)), self.value(x, g.mul(y, z)));
                    let rhs = a.add(self.value(xy, z), self.value(x, y));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_violation().is_none()
    }

    pub fn sub(&self, other: &TwoCocycle) -> Result<TwoCocycle> {
        if self.module != other.module {
            return Err(input_err!("2-cocycles with different coefficients"));
        }
        let a = self.module.base();
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a.sub(x, y)).collect();
        Ok(TwoCocycle { module: self.module.clone(), values })
    }

    pub fn neg(&self) -> TwoCocycle {
        let a = self.module.base();
        TwoCocycle { module: self.module.clone(), values: self.values.iter().map(|x| a.neg(x)).collect() }
    }
}

pub fn is_cocycle2(c: &TwoCocycle) -> bool {
    c.is_cocycle()
}

/// `δλ(g1, g2) = λ(g1) + g1.λ(g2) - λ(g1 g2)`.
pub fn coboundary1(module: &Arc<GModule>, lambda: &[AbElement]) -> Result<TwoCocycle> {
    let g = module.group();
    check_table("1-cochain", lambda, g.order())?;
    let a = module.base();
    TwoCocycle::from_fn(module.clone(), |x, y| {
        a.sub(&a.add(&lambda[x], &module.act(x, &lambda[y])), &lambda[g.mul(x, y)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alat::{FGAbelianGroup, Matrix};

    fn trivial(n: usize, a: FGAbelianGroup) -> Arc<GModule> {
        Arc::new(GModule::trivial(a, Arc::new(FiniteGroup::cyclic(n))))
    }

    #[test]
    fn cocycle_checks() {
        let m = trivial(2, FGAbelianGroup::cyclic(2));
        let id = vec![m.base().zero(), m.base().basis(0)];
        assert!(is_cocycle1(&m, &id).unwrap());
        assert!(is_bijective(&m, &id).unwrap());
        assert!(!is_bijective(&m, &[m.base().zero(), m.base().zero()]).unwrap());
        let m4 = trivial(2, FGAbelianGroup::cyclic(4));
        assert!(!is_cocycle1(&m4, &[m4.base().zero(), m4.base().basis(0)]).unwrap());
        assert!(is_cocycle1(&m4, &[m4.base().zero()]).is_err());
    }

    #[test]
    fn doubling_on_z3_is_bijective() {
        let m = trivial(3, FGAbelianGroup::cyclic(3));
        let a = m.base();
        let pi = OneCocycle::new(m.clone(), (0..3).map(|x| a.reduce(vec![2 * x])).collect()).unwrap();
        assert!(pi.is_bijective().unwrap());
    }

    #[test]
    fn twist_examples() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let z4 = FGAbelianGroup::cyclic(4);
        let neg = Matrix::from_rows(vec![vec![3]]).unwrap();
        let m = Arc::new(GModule::new(z4.clone(), c2, vec![Matrix::identity(1), neg]).unwrap());
        let zero = OneCocycle::zero(m.clone());
        let t = twist_by_coboundary(&zero, &z4.basis(0)).unwrap();
        assert_eq!(t.value(1).coords(), &[2]);
        assert!(is_cocycle1(&m, t.values()).unwrap());
        let triv = trivial(2, z4.clone());
        let pi = OneCocycle::new(triv.clone(), vec![z4.zero(), z4.reduce(vec![2])]).unwrap();
        assert_eq!(twist_by_coboundary(&pi, &z4.basis(0)).unwrap(), pi);
    }

    #[test]
    fn normalization_shift() {
        let m = trivial(2, FGAbelianGroup::cyclic(2));
        let one = m.base().basis(0);
        // the constant cocycle 1 is the coboundary of the constant cochain 1
        let (c, mu) = TwoCocycle::normalized_from(m.clone(), vec![one.clone(); 4]).unwrap();
        assert_eq!(mu, one);
        assert!(c.is_normalized() && c.is_cocycle());
        assert!(c.values().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = FGAbelianGroup::free(2);
        let swap = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let m = Arc::new(GModule::new(a.clone(), c2, vec![Matrix::identity(2), swap]).unwrap());
        let d = coboundary1(&m, &[a.zero(), a.reduce(vec![3, -1])]).unwrap();
        assert!(is_cocycle2(&d));
        assert_eq!(d.value(1, 1).coords(), &[2, 2]);
    }
}
