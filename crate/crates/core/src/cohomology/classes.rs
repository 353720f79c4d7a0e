use std::sync::Arc;

use super::{OneCocycle, TwoCocycle};
use crate::alat::{self, AbElement, AffineSolver, Matrix};
use crate::error::input_err;
use crate::gmodules::{GGroup, GModule};
use crate::groups::FiniteGroup;
use crate::{Coord, Error, Result};

/// The coboundary `C^1 -> C^2` of a module as a factored linear system,
/// reusable across many class decisions.
#[derive(Clone, Debug)]
pub struct CoboundarySolver {
    module: Arc<GModule>,
    solver: AffineSolver,
}

impl CoboundarySolver {
    pub fn new(module: Arc<GModule>) -> Result<Self> {
        let g = module.group();
        let n = g.order();
        let k = module.base().ncoords();
        let rows = n * n * k;
        let mut a = Matrix::<Coord>::zeros(rows, n * k);
        for x in 0..n {
            let mx = module.action(x);
            for y in 0..n {
                let xy = g.mul(x, y);
                for i in 0..k {
                    let r = (x * n + y) * k + i;
                    *a.get_mut(r, x * k + i) += 1;
                    *a.get_mut(r, xy * k + i) -= 1;
                    for j in 0..k {
                        *a.get_mut(r, y * k + j) += *mx.get(i, j);
                    }
                }
            }
        }
        let moduli: Vec<Coord> = (0..rows).map(|r| module.base().modulus(r % k)).collect();
        let solver = AffineSolver::new(&a, moduli)?;
        Ok(CoboundarySolver { module, solver })
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    /// A 1-cochain `λ` with `δλ = c`, if `c` is a coboundary.
    pub fn solve(&self, c: &TwoCocycle) -> Result<Option<Vec<AbElement>>> {
        if c.module() != &self.module {
            return Err(input_err!("2-cocycle has different coefficients"));
        }
        let b: Vec<Coord> = c.values().iter().flat_map(|v| v.coords().iter().copied()).collect();
        let k = self.module.base().ncoords();
        let n = self.module.group().order();
        Ok(self.solver.solve(&b)?.map(|x| (0..n).map(|g| self.module.base().reduce(x[g * k..(g + 1) * k].to_vec())).collect()))
    }

    pub fn cohomologous(&self, c: &TwoCocycle, c2: &TwoCocycle) -> Result<Option<Vec<AbElement>>> {
        self.solve(&c2.sub(c)?)
    }
}

/// `λ` with `δλ = c' - c`, or `None` when the classes differ.
pub fn cohomologous2(c: &TwoCocycle, c2: &TwoCocycle) -> Result<Option<Vec<AbElement>>> {
    if c.module() != c2.module() {
        return Err(input_err!("2-cocycles have different coefficient modules"));
    }
    CoboundarySolver::new(c.module().clone())?.cohomologous(c, c2)
}

/// A class in `H^2` given by a representative.
#[derive(Clone, Debug)]
pub struct CohClass2 {
    rep: TwoCocycle,
}

impl CohClass2 {
    pub fn new(rep: TwoCocycle) -> Result<Self> {
        if let Some((a, b, c)) = rep.cocycle_violation() {
            return Err(input_err!("class representative fails the 2-cocycle identity at ({a}, {b}, {c})"));
        }
        Ok(CohClass2 { rep })
    }

    pub fn representative(&self) -> &TwoCocycle {
        &self.rep
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(cohomologous2(&TwoCocycle::zero(self.rep.module().clone()), &self.rep)?.is_some())
    }

    pub fn equals(&self, other: &CohClass2) -> Result<bool> {
        Ok(cohomologous2(&self.rep, &other.rep)?.is_some())
    }
}

/// `c` with `π'(g) - π(g) = g.c - c`, if the 1-cocycles are cohomologous.
pub fn cohomologous1(pi: &OneCocycle, pi2: &OneCocycle) -> Result<Option<AbElement>> {
    if pi.module() != pi2.module() {
        return Err(input_err!("1-cocycles have different coefficient modules"));
    }
    let m = pi.module();
    let a = m.base();
    let n = m.group().order();
    let k = a.ncoords();
    let mut rows = Vec::with_capacity(n * k);
    let mut rhs = Vec::with_capacity(n * k);
    let mut moduli = Vec::with_capacity(n * k);
    for g in 0..n {
        let d = a.sub(pi2.value(g), pi.value(g));
        for i in 0..k {
            rows.push((0..k).map(|j| m.action(g).get(i, j) - Coord::from(i == j)).collect::<Vec<_>>());
            rhs.push(d.coords()[i]);
            moduli.push(a.modulus(i));
        }
    }
    let mat = if rows.is_empty() { Matrix::zeros(0, k) } else { Matrix::from_rows(rows)? };
    Ok(AffineSolver::new(&mat, moduli)?.solve(&rhs)?.map(|x| a.reduce(x)))
}

/// Twist relation for cocycles into a G-group: some `c` with
/// `π'(g) = c^-1 π(g) g(c)`.
pub fn cohomologous1_table(target: &GGroup, pi: &[usize], pi2: &[usize]) -> Option<usize> {
    (0..target.base().order()).find(|&c| super::twist_by_coboundary_table(target, pi, c) == pi2)
}

/// All 1-cocycles into a G-group (by value tables), found by choosing
/// images of the greedy generators and closing along Cayley edges.
/// With `bijective_only`, branches that repeat a value are cut early.
pub fn enumerate_cocycles1_table(
    source: &FiniteGroup,
    target: &FiniteGroup,
    action: &[Vec<usize>],
    bijective_only: bool,
) -> Vec<Vec<usize>> {
    let gens = source.generators();
    if gens.is_empty() {
        return vec![vec![0; source.order()]];
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    dfs(source, target, action, &gens, &mut chosen, bijective_only, &mut out);
    out
}

fn closure(
    source: &FiniteGroup,
    target: &FiniteGroup,
    action: &[Vec<usize>],
    gens: &[usize],
    images: &[usize],
    bijective_only: bool,
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut val = vec![UNSET; source.order()];
    let mut used = vec![false; target.order()];
    val[0] = 0;
    used[0] = true;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &pg) in gens.iter().zip(images) {
            let z = source.mul(x, g);
            let v = target.mul(val[x], action[x][pg]);
            if val[z] == UNSET {
                if bijective_only && std::mem::replace(&mut used[v], true) {
                    return None;
                }
                val[z] = v;
                queue.push_back(z);
            } else if val[z] != v {
                return None;
            }
        }
    }
    Some(val)
}

fn dfs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    action: &[Vec<usize>],
    gens: &[usize],
    chosen: &mut Vec<usize>,
    bijective_only: bool,
    out: &mut Vec<Vec<usize>>,
) {
    let i = chosen.len();
    for y in 0..target.order() {
        chosen.push(y);
        if let Some(val) = closure(source, target, action, &gens[..=i], chosen, bijective_only) {
            if i + 1 == gens.len() {
                out.push(val);
            } else {
                dfs(source, target, action, gens, chosen, bijective_only, out);
            }
        }
        chosen.pop();
    }
}

/// `Z^1(G, M)` for a finite module.
pub fn enumerate_cocycles1(module: &Arc<GModule>) -> Result<Vec<OneCocycle>> {
    let (t, tables) = module.action_tables()?;
    let elems = module.base().elements()?;
    Ok(enumerate_cocycles1_table(module.group(), &t, &tables, false)
        .into_iter()
        .map(|v| OneCocycle::new_unchecked(module.clone(), v.into_iter().map(|i| elems[i].clone()).collect()))
        .collect())
}

/// `B^1(G, M)`, one entry per distinct coboundary.
pub fn enumerate_coboundaries1(module: &Arc<GModule>) -> Result<Vec<OneCocycle>> {
    let a = module.base();
    let mut out: Vec<OneCocycle> = Vec::new();
    for c in a.elements()? {
        let values: Vec<AbElement> = (0..module.group().order()).map(|g| a.sub(&module.act(g, &c), &c)).collect();
        if !out.iter().any(|p| p.values() == values.as_slice()) {
            out.push(OneCocycle::new_unchecked(module.clone(), values));
        }
    }
    Ok(out)
}

/// Normalized 2-cocycles `Z^2(G, M)` for a finite module, limited to `limit` entries.
pub fn enumerate_cocycles2(module: &Arc<GModule>, limit: usize) -> Result<Vec<TwoCocycle>> {
    let g = module.group();
    let a = module.base();
    let n = g.order();
    let k = a.ncoords();
    let unknowns = n * n * k;
    if !a.is_finite() {
        return Err(Error::Unsupported("2-cocycle enumeration needs finite coefficients".into()));
    }
    // the unknowns live in M^(n*n)
    let parent =
        alat::FGAbelianGroup::with_moduli_unchecked(0, std::iter::repeat(a.torsion().to_vec()).take(n * n).flatten().collect());
    let mut rows: Vec<Vec<Coord>> = Vec::new();
    let mut moduli = Vec::new();
    let idx = |x: usize, y: usize, i: usize| (x * n + y) * k + i;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for i in 0..k {
                    let mut row = vec![0; unknowns];
                    for j in 0..k {
                        row[idx(y, z, j)] += module.action(x).get(i, j);
                    }
                    row[idx(g.mul(x, y), z, i)] -= 1;
                    row[idx(x, g.mul(y, z), i)] += 1;
                    row[idx(x, y, i)] -= 1;
                    rows.push(row);
                    moduli.push(a.modulus(i));
                }
            }
        }
    }
    for x in 0..n {
        for i in 0..k {
            for slot in [idx(0, x, i), idx(x, 0, i)] {
                let mut row = vec![0; unknowns];
                row[slot] = 1;
                rows.push(row);
                moduli.push(a.modulus(i));
            }
        }
    }
    let mat = if rows.is_empty() { Matrix::zeros(0, unknowns) } else { Matrix::from_rows(rows)? };
    let sub = alat::kernel_with_moduli(&parent, &mat, moduli)?;
    let size = sub.group.order().unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::Refused { reason: format!("Z^2 has {size} elements"), estimate: size });
    }
    sub.group
        .elements()?
        .iter()
        .map(|e| {
            let v = sub.include(e);
            let values = (0..n * n).map(|p| a.reduce(v.coords()[p * k..(p + 1) * k].to_vec())).collect();
            TwoCocycle::new(module.clone(), values)
        })
        .collect()
}
