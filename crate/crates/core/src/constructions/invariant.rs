use std::sync::Arc;

use super::IDatum;
use crate::alat::{AbElement, AffineSolver, Matrix};
use crate::cohomology::{cohomologous2, enumerate_cocycles2, yoneda_splice, CohClass2, OneCocycle, TwoCocycle};
use crate::error::{input_err, invariant_err};
use crate::gmodules::{GModule, ModuleExtension};
use crate::groups::{section_cocycle, AbelianIdentification, ExtElement, FiniteGroup, Quotient, Transversal};
use crate::lifting::corollary_lift;
use crate::{Coord, Error, Result};

const MAX_EQUATIONS: usize = 200_000;

/// Whether `[β]` comes from `H^2(G0, G1^{G0})`: every normalized cocycle
/// into the invariants is pushed forward and compared with `β`.
pub fn is_invariant_class(beta: &TwoCocycle, limit: usize) -> Result<bool> {
    let m = beta.module();
    let inv = m.invariants_submodule()?;
    let sub = Arc::new(inv.module.clone());
    for c in enumerate_cocycles2(&sub, limit)? {
        let pushed = TwoCocycle::new(m.clone(), c.values().iter().map(|v| inv.include(v)).collect())?;
        if cohomologous2(&pushed, beta)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A `G0`-module extension `0 -> G1 -> M -> G0 -> 0` (with `G0` abelian
/// acting trivially on itself) whose splice with the identity has class `[β]`.
///
/// Such an `M` is `G1 × G0` with addition twisted by a symmetric factor
/// set `ω` and action `g(k, a) = (gk + t(g, a), a)`; the splice of the
/// identity is then `ω + t` on `G0 × G0`. Module axioms and the class
/// condition `ω + t + δλ = β` are one linear system in `(ω, t, λ)`.
pub fn invariant_preimage(g0: &Arc<FiniteGroup>, g1: &Arc<GModule>, beta: &TwoCocycle) -> Result<Option<ModuleExtension>> {
    if !g0.is_abelian() {
        return Err(input_err!("G0 must be abelian"));
    }
    if g1.group() != g0 || beta.module() != g1 {
        return Err(input_err!("β must be valued in G1 over G0"));
    }
    let kb = g1.base();
    if !kb.is_finite() {
        return Err(Error::Unsupported("invariant preimage over infinite coefficients".into()));
    }
    let n = g0.order();
    let k = kb.ncoords();
    let gens = g0.generators();
    let equations = k * (n * n * (n + 3) + 2 * gens.len() * n * n);
    if equations > MAX_EQUATIONS {
        return Err(Error::Refused {
            reason: format!("extension search needs about {equations} equations"),
            estimate: equations as u128,
        });
    }
    let w = |a: usize, b: usize, i: usize| (a * n + b) * k + i;
    let t = |g: usize, a: usize, i: usize| n * n * k + (g * n + a) * k + i;
    let l = |g: usize, i: usize| 2 * n * n * k + g * k + i;
    let unknowns = 2 * n * n * k + n * k;
    let act = |g: usize, i: usize, j: usize| *g1.action(g).get(i, j);

    let mut rows: Vec<Vec<Coord>> = Vec::new();
    let mut rhs = Vec::new();
    let mut moduli = Vec::new();
    let mut push = |row: Vec<Coord>, b: Coord, i: usize| {
        rows.push(row);
        rhs.push(b);
        moduli.push(kb.modulus(i));
    };
    for i in 0..k {
        for a in 0..n {
            for (x, y) in [(0, a), (a, 0)] {
                let mut r = vec![0; unknowns];
                r[w(x, y, i)] = 1;
                push(r, 0, i);
            }
            let mut r = vec![0; unknowns];
            r[t(0, a, i)] = 1;
            push(r, 0, i);
            for b in a + 1..n {
                let mut r = vec![0; unknowns];
                r[w(a, b, i)] += 1;
                r[w(b, a, i)] -= 1;
                push(r, 0, i);
            }
            for b in 0..n {
                for c in 0..n {
                    let mut r = vec![0; unknowns];
                    r[w(b, c, i)] += 1;
                    r[w(g0.mul(a, b), c, i)] -= 1;
                    r[w(a, g0.mul(b, c), i)] += 1;
                    r[w(a, b, i)] -= 1;
                    push(r, 0, i);
                }
                let mut r = vec![0; unknowns];
                r[w(a, b, i)] += 1;
                r[t(a, b, i)] += 1;
                r[l(a, i)] -= 1;
                for j in 0..k {
                    r[l(b, j)] -= act(a, i, j);
                }
                r[l(g0.mul(a, b), i)] += 1;
                push(r, beta.value(a, b).coords()[i], i);
            }
        }
        for &g in &gens {
            for a in 0..n {
                for b in 0..n {
                    // g acts additively
                    let mut r = vec![0; unknowns];
                    r[t(g, a, i)] += 1;
                    r[t(g, b, i)] += 1;
                    r[t(g, g0.mul(a, b), i)] -= 1;
                    for j in 0..k {
                        r[w(a, b, j)] -= act(g, i, j);
                    }
                    r[w(a, b, i)] += 1;
                    push(r, 0, i);
                    // t(g h, a) = g t(h, a) + t(g, a), with h = b
                    let mut r = vec![0; unknowns];
                    r[t(g0.mul(g, b), a, i)] += 1;
                    for j in 0..k {
                        r[t(b, a, j)] -= act(g, i, j);
                    }
                    r[t(g, a, i)] -= 1;
                    push(r, 0, i);
                }
            }
        }
    }
    let solver = AffineSolver::new(&Matrix::from_rows(rows)?, moduli)?;
    let Some(x) = solver.solve(&rhs)? else {
        return Ok(None);
    };
    let elem = |off: usize| kb.reduce(x[off..off + k].to_vec());
    let omega: Vec<AbElement> = (0..n * n).map(|p| elem(p * k)).collect();
    let twist: Vec<AbElement> = (0..n * n).map(|p| elem(n * n * k + p * k)).collect();
    let ext = assemble(g0, g1, &omega, &twist)?;

    let ident = AbelianIdentification::identify(g0, &(0..n).collect::<Vec<_>>())?;
    let pi0 = OneCocycle::new(ext.quotient().clone(), identity_values(&ident, n)?)?;
    let target = CohClass2::new(beta.clone())?;
    if !yoneda_splice(&pi0, &ext)?.equals(&target)? {
        return Err(invariant_err!("extension solved from the linear system splices to a different class"));
    }
    Ok(Some(ext))
}

fn identity_values(ident: &AbelianIdentification, n: usize) -> Result<Vec<AbElement>> {
    (0..n)
        .map(|g| ident.coords_of(g).cloned().ok_or_else(|| invariant_err!("element {g} missing from identification")))
        .collect()
}

/// Tabulates `M = G1 × G0` (element id `a * |G1| + index(k)`) and builds
/// the module extension.
fn assemble(g0: &Arc<FiniteGroup>, g1: &Arc<GModule>, omega: &[AbElement], twist: &[AbElement]) -> Result<ModuleExtension> {
    let n = g0.order();
    let kb = g1.base();
    let size = kb.finite_order()?;
    let elems = kb.elements()?;
    let split = |x: usize| (&elems[x % size], x / size);
    let id = |c: &AbElement, a: usize| a * size + kb.index_of(c);
    let table = FiniteGroup::from_fn(size * n, |x, y| {
        let ((c, a), (d, b)) = (split(x), split(y));
        id(&kb.add(&kb.add(c, d), &omega[a * n + b]), g0.mul(a, b))
    });
    let all: Vec<usize> = (0..size * n).collect();
    let mident = AbelianIdentification::identify(&table, &all)?;
    let mb = mident.group.clone();
    let coords = |x: usize| -> Result<Vec<Coord>> {
        Ok(mident.coords_of(x).ok_or_else(|| invariant_err!("element {x} missing"))?.coords().to_vec())
    };
    let id_of = |v: &AbElement| mident.id_of(v).ok_or_else(|| invariant_err!("coordinates {v} missing"));
    let mut action = Vec::with_capacity(n);
    for g in 0..n {
        let mut cols = Vec::with_capacity(mb.ncoords());
        for j in 0..mb.ncoords() {
            let (c, a) = split(id_of(&mb.basis(j))?);
            cols.push(coords(id(&kb.add(&g1.act(g, c), &twist[g * n + a]), a))?);
        }
        action.push(Matrix::from_columns(mb.ncoords(), &cols)?);
    }
    let middle = Arc::new(GModule::new(mb.clone(), g0.clone(), action)?);
    let incl_cols = (0..kb.ncoords()).map(|j| coords(id(&kb.basis(j), 0))).collect::<Result<Vec<_>>>()?;
    let incl = Matrix::from_columns(mb.ncoords(), &incl_cols)?;
    let aident = AbelianIdentification::identify(g0, &(0..n).collect::<Vec<_>>())?;
    let ab = aident.group.clone();
    let proj_cols = (0..mb.ncoords())
        .map(|j| {
            let (_, a) = split(id_of(&mb.basis(j))?);
            Ok(aident.coords_of(a).ok_or_else(|| invariant_err!("quotient element missing"))?.coords().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    let proj = Matrix::from_columns(ab.ncoords(), &proj_cols)?;
    let quotient = Arc::new(GModule::trivial(ab, g0.clone()));
    ModuleExtension::new(g1.clone(), middle, quotient, incl, proj)
}

fn is_cyclic(g: &FiniteGroup) -> bool {
    (0..g.order()).any(|x| g.element_order(x) == g.order())
}

/// I-datum on `G` from an abelian normal `G1` with abelian quotient whose
/// extension class is invariant: `invariant_preimage` followed by the
/// module lift, transported from the pair model back to `G`.
///
/// Invariance is automatic when `G1` is central or `G/G1` is cyclic; in
/// other cases it is decided by `is_invariant_class` first.
pub fn metabelian_datum(g: &Arc<FiniteGroup>, normal: &[usize], transversal: Option<&Transversal>) -> Result<Option<IDatum>> {
    let q = Quotient::new(g, normal)?;
    let g0 = q.group.clone();
    if !g0.is_abelian() {
        return Err(input_err!("quotient by the normal subgroup is not abelian"));
    }
    let ident = AbelianIdentification::identify(g, normal)?;
    let t = transversal.unwrap_or_else(|| q.canonical_transversal()).clone();
    let beta = section_cocycle(g, &q, &t, &ident)?;
    let module = beta.module().clone();
    if !module.is_trivial() && !is_cyclic(&g0) && !is_invariant_class(&beta, 1 << 16)? {
        return Err(input_err!("the extension class is not invariant"));
    }
    let Some(ext) = invariant_preimage(&g0, &module, &beta)? else {
        return Ok(None);
    };
    let aident = AbelianIdentification::identify(&g0, &(0..g0.order()).collect::<Vec<_>>())?;
    let pi0 = OneCocycle::new(ext.quotient().clone(), identity_values(&aident, g0.order())?)?;
    let lift = corollary_lift(&beta, &ext, &pi0)?
        .ok_or_else(|| invariant_err!("spliced class found but the module lift does not exist"))?;
    let mut values = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let qx = q.class_of(x);
        let c = g.mul(x, g.inv(t.rep(qx)));
        let c = ident.coords_of(c).ok_or_else(|| invariant_err!("{c} is not in the normal subgroup"))?.clone();
        values.push(lift.eval(&ExtElement { c, g: qx }));
    }
    let inflated = Arc::new(ext.middle().inflate(g.clone(), q.projection())?);
    IDatum::new(OneCocycle::new(inflated, values)?).map(Some)
}
