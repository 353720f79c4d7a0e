use std::sync::Arc;

use rayon::prelude::*;

use super::IDatum;
use crate::alat::{enumerate_homs, AbElement, AbHom, FGAbelianGroup, Matrix};
use crate::cohomology::{enumerate_cocycles1_table, OneCocycle};
use crate::gmodules::GModule;
use crate::groups::FiniteGroup;
use crate::{Coord, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_order: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_order: 12, threads: None }
    }
}

/// One abelian group of order `n` per isomorphism type, in invariant-factor
/// form, ordered by the partitions of each prime exponent (finest last).
pub fn abelian_groups_of_order(n: usize) -> Vec<FGAbelianGroup> {
    assert!(n > 0);
    let mut primes = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            primes.push((p as Coord, e));
        }
        p += 1;
    }
    let mut choices: Vec<Vec<Coord>> = vec![Vec::new()];
    for &(p, e) in &primes {
        let mut next = Vec::new();
        for inv in &choices {
            for part in partitions(e) {
                // merge the p-parts into the invariant factors, largest last
                let len = inv.len().max(part.len());
                let mut out = vec![1; len];
                for (i, x) in inv.iter().rev().enumerate() {
                    out[len - 1 - i] *= x;
                }
                for (i, &k) in part.iter().enumerate() {
                    out[len - 1 - i] *= p.pow(k);
                }
                next.push(out);
            }
        }
        choices = next;
    }
    choices
        .into_iter()
        .map(|t| FGAbelianGroup::new(0, t).expect("invariant factors form a chain"))
        .collect()
}

/// Partitions of `e` as non-increasing part lists, coarsest first.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// `Aut(A)` by brute force over `End(A)`, the identity first.
pub fn automorphisms(a: &FGAbelianGroup) -> Result<Vec<AbHom>> {
    let mut out = Vec::new();
    for h in enumerate_homs(a, a)? {
        if h.is_bijective()? {
            out.push(h);
        }
    }
    let id = out
        .iter()
        .position(|h| h.matrix() == &Matrix::identity(a.ncoords()))
        .expect("identity is an automorphism");
    out.swap(0, id);
    Ok(out)
}

/// Rough count of the candidates visited: for each `A`, actions by images of
/// the generators in `End(A)` times cocycles by images in `A`.
fn cost_estimate(n: usize, gens: usize) -> u128 {
    abelian_groups_of_order(n)
        .iter()
        .map(|a| {
            let size = n as u128;
            let ends = size.saturating_pow(a.ncoords() as u32);
            ends.saturating_pow(gens as u32).saturating_mul(size.saturating_pow(gens as u32))
        })
        .fold(0u128, u128::saturating_add)
}

/// Every I-datum `(G0, A, π0)`: one `A` per isomorphism type, every action
/// `G0 -> Aut(A)`, every bijective 1-cocycle. Output order is canonical
/// (group type, then action, then cocycle table) for any thread count.
pub fn search_iyb(g0: &Arc<FiniteGroup>, limits: SearchLimits) -> Result<Vec<IDatum>> {
    let n = g0.order();
    if n > limits.max_order {
        return Err(Error::Refused {
            reason: format!("search over a group of order {n} exceeds the bound {}", limits.max_order),
            estimate: cost_estimate(n, g0.generators().len()),
        });
    }
    let run = || search_all(g0);
    match limits.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn search_all(g0: &Arc<FiniteGroup>) -> Result<Vec<IDatum>> {
    let n = g0.order();
    let mut tasks: Vec<Arc<GModule>> = Vec::new();
    for a in abelian_groups_of_order(n) {
        let auts = automorphisms(&a)?;
        let perms: Vec<Vec<usize>> = auts
            .iter()
            .map(|h| {
                let elems = a.elements()?;
                Ok(elems.iter().map(|x| a.index_of(&h.apply(x))).collect())
            })
            .collect::<Result<_>>()?;
        let index: std::collections::HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let aut_group = FiniteGroup::from_fn(auts.len(), |x, y| {
            let comp: Vec<usize> = perms[y].iter().map(|&v| perms[x][v]).collect();
            index[comp.as_slice()]
        });
        let fixed: Vec<Vec<usize>> = vec![(0..auts.len()).collect(); n];
        for phi in enumerate_cocycles1_table(g0, &aut_group, &fixed, false) {
            let action = phi.iter().map(|&i| auts[i].matrix().clone()).collect();
            tasks.push(Arc::new(GModule::new(a.clone(), g0.clone(), action)?));
        }
    }
    let found: Vec<Result<Vec<IDatum>>> = tasks
        .par_iter()
        .map(|m| {
            let (t, tables) = m.action_tables()?;
            let elems: Vec<AbElement> = m.base().elements()?;
            enumerate_cocycles1_table(g0, &t, &tables, true)
                .into_iter()
                .map(|v| IDatum::new(OneCocycle::new(m.clone(), v.into_iter().map(|i| elems[i].clone()).collect())?))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for f in found {
        out.extend(f?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_group_counts() {
        let counts: Vec<usize> = (1..=16).map(|n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        let t: Vec<Vec<Coord>> = abelian_groups_of_order(12).iter().map(|a| a.torsion().to_vec()).collect();
        assert_eq!(t, vec![vec![12], vec![2, 6]]);
    }

    #[test]
    fn automorphism_group_orders() {
        let orders: Vec<usize> = [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![2, 2, 2], vec![12]]
            .into_iter()
            .map(|t| automorphisms(&FGAbelianGroup::new(0, t).unwrap()).unwrap().len())
            .collect();
        assert_eq!(orders, vec![1, 2, 2, 6, 8, 168, 4]);
    }

    #[test]
    fn small_search_counts() {
        let count = |g: FiniteGroup| search_iyb(&Arc::new(g), SearchLimits::default()).unwrap().len();
        assert_eq!(count(FiniteGroup::trivial()), 1);
        assert_eq!(count(FiniteGroup::cyclic(2)), 1);
        assert_eq!(count(FiniteGroup::cyclic(3)), 2);
    }

    #[test]
    fn refuses_large_groups() {
        let g = Arc::new(FiniteGroup::cyclic(13));
        match search_iyb(&g, SearchLimits::default()) {
            Err(Error::Refused { estimate, .. }) => assert!(estimate > 0),
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
