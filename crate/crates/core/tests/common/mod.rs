//! Brute-force oracles and instance corpora shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use iyb_core::alat::{enumerate_homs, AbHom, Matrix};
use iyb_core::cohomology::{enumerate_cocycles1_table, OneCocycle};
use iyb_core::constructions::{search_iyb, IDatum, SearchLimits};
use iyb_core::gmodules::{enumerate_surjections, extension_from_surjection, ModuleSurjection};
use iyb_core::groups::{AbelianIdentification, PermGroup};
use iyb_core::{
    AbElement, Coord, FGAbelianGroup, FiniteGroup, GGroup, GModule, LiftProblem, ModuleExtension, Permutation,
    PermutationLattice, Quotient,
};

pub struct LiftCase {
    pub label: String,
    pub problem: LiftProblem,
    pub gamma_abelian: bool,
    pub gamma_order: usize,
    pub pi1_bijective: bool,
}

fn c2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

/// Groups with a central subgroup, `|G| <= 8`.
pub fn central_extensions() -> Vec<(&'static str, FiniteGroup, Vec<usize>)> {
    let d4 = FiniteGroup::dihedral(4);
    let q8 = FiniteGroup::quaternion();
    let (zd, zq) = (d4.center(), q8.center());
    vec![
        ("C2", c2(), vec![0, 1]),
        ("C4", FiniteGroup::cyclic(4), vec![0, 2]),
        ("C2xC2", FiniteGroup::product(&c2(), &c2()), vec![0, 2]),
        ("C8", FiniteGroup::cyclic(8), vec![0, 4]),
        ("C4xC2", FiniteGroup::product(&FiniteGroup::cyclic(4), &c2()), vec![0, 4]),
        ("C2xC4", FiniteGroup::product(&c2(), &FiniteGroup::cyclic(4)), vec![0, 2]),
        ("C2^3", FiniteGroup::product(&FiniteGroup::product(&c2(), &c2()), &c2()), vec![0, 4]),
        ("D4", d4, zd),
        ("Q8", q8, zq),
        ("C6", FiniteGroup::cyclic(6), vec![0, 3]),
    ]
}

/// `(name, Γ, Γ1, an automorphism of order <= 2 preserving Γ1)`.
pub fn gamma_groups() -> Vec<(&'static str, FiniteGroup, Vec<usize>, Vec<usize>)> {
    let d4 = FiniteGroup::dihedral(4);
    let q8 = FiniteGroup::quaternion();
    let conj = |g: &FiniteGroup, s: usize| (0..g.order()).map(|x| g.conj(s, x)).collect::<Vec<_>>();
    let (zd, zq) = (d4.center(), q8.center());
    let (ad, aq) = (conj(&d4, 4), conj(&q8, 1));
    vec![
        ("Z2", c2(), vec![0, 1], vec![0, 1]),
        ("Z4", FiniteGroup::cyclic(4), vec![0, 2], vec![0, 3, 2, 1]),
        ("Z2xZ2", FiniteGroup::product(&c2(), &c2()), vec![0, 2], vec![0, 3, 2, 1]),
        (
            "Z2xZ4",
            FiniteGroup::product(&c2(), &FiniteGroup::cyclic(4)),
            vec![0, 2],
            (0..8).map(|x| (x / 4) * 4 + (4 - x % 4) % 4).collect(),
        ),
        ("D4", d4, zd, ad),
        ("Q8", q8, zq, aq),
    ]
}

/// Homomorphisms `G -> C2` as 0/1 tables, by brute force.
pub fn homs_to_c2(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    (0..1usize << n)
        .map(|mask| (0..n).map(|x| (mask >> x) & 1).collect::<Vec<_>>())
        .filter(|t| t[0] == 0 && (0..n).all(|a| (0..n).all(|b| t[g.mul(a, b)] == (t[a] + t[b]) % 2)))
        .collect()
}

/// Every lifting problem built from the corpora: each central extension,
/// each Γ with the trivial action or one action through a map to `C2`,
/// every invariant `π1` and every `π0`.
pub fn lift_suite() -> Vec<LiftCase> {
    let mut out = Vec::new();
    for (gname, g, normal) in central_extensions() {
        let g = Arc::new(g);
        let q = Quotient::new(&g, &normal).unwrap();
        let g0 = q.group.clone();
        let chis = homs_to_c2(&g0);
        let ident = AbelianIdentification::identify(&g, q.normal()).unwrap();
        for (hname, h, central, alpha) in gamma_groups() {
            let h = Arc::new(h);
            let id: Vec<usize> = (0..h.order()).collect();
            let mut actions = vec![("triv".to_string(), vec![id.clone(); g0.order()])];
            if alpha != id {
                if let Some(chi) = chis.iter().find(|t| t.iter().any(|&v| v == 1)) {
                    actions.push(("alpha".into(), chi.iter().map(|&v| if v == 1 { alpha.clone() } else { id.clone() }).collect()));
                }
            }
            for (aname, action) in actions {
                let gamma = Arc::new(GGroup::new(h.clone(), g0.clone(), action, &central).unwrap());
                let g1 = GModule::trivial(ident.group.clone(), g0.clone());
                let pi1s: Vec<AbHom> = enumerate_homs(g1.base(), gamma.central_module().base())
                    .unwrap()
                    .filter(|f| g1.is_equivariant(f, gamma.central_module()))
                    .collect();
                let gq = &gamma.quotient().group;
                let pi0s = enumerate_cocycles1_table(&g0, gq, gamma.quotient_action_tables(), false);
                for (i, pi1) in pi1s.iter().enumerate() {
                    for (j, pi0) in pi0s.iter().enumerate() {
                        let problem = LiftProblem::new(g.clone(), &normal, None, gamma.clone(), pi1.clone(), pi0.clone())
                            .unwrap_or_else(|e| panic!("{gname}/{hname}/{aname}: {e}"));
                        out.push(LiftCase {
                            label: format!("{gname} -> {hname} ({aname}) pi1#{i} pi0#{j}"),
                            gamma_abelian: h.is_abelian(),
                            gamma_order: h.order(),
                            pi1_bijective: pi1.is_bijective().unwrap(),
                            problem,
                        });
                    }
                }
            }
        }
    }
    out
}

/// All tables `π: G -> Γ` that are 1-cocycles restricting to `π1` on `G1`
/// and inducing `π0`, by backtracking over element ids with the cocycle
/// identity checked on every fully assigned triple.
pub fn oracle_lifts(p: &LiftProblem) -> Vec<Vec<usize>> {
    let g = p.group().clone();
    let gamma = p.gamma_over_g();
    let h = gamma.base().clone();
    let n = g.order();
    let gq = p.gamma().quotient();
    let mut fixed = vec![None; n];
    for &x in p.quotient().normal() {
        let v = p.pi1().apply(p.g1_identification().coords_of(x).unwrap());
        fixed[x] = Some(p.gamma().central_id(&v));
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| match fixed[x] {
            Some(v) => vec![v],
            None => {
                let want = p.pi0()[p.quotient().class_of(x)];
                (0..h.order()).filter(|&y| gq.class_of(y) == want).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut val = vec![usize::MAX; n];
    fn go(
        x: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gamma: &GGroup,
        cand: &[Vec<usize>],
        val: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.order();
        if x == n {
            out.push(val.clone());
            return;
        }
        for &y in &cand[x] {
            val[x] = y;
            let ok = (0..=x).all(|a| {
                (0..=x).all(|b| {
                    let ab = g.mul(a, b);
                    if ab > x || (a != x && b != x && ab != x) {
                        return true;
                    }
                    val[ab] == h.mul(val[a], gamma.act(a, val[b]))
                })
            });
            if ok {
                go(x + 1, g, h, gamma, cand, val, out);
            }
        }
        val[x] = usize::MAX;
    }
    go(0, &g, &h, gamma, &candidates, &mut val, &mut out);
    out
}

/// `|Z^1(G0, M)|` by testing every function.
pub fn oracle_z1_count(m: &GModule) -> usize {
    let g = m.group();
    let elems = m.base().elements().unwrap();
    let n = g.order();
    let k = elems.len();
    let mut count = 0;
    let total = k.pow(n as u32);
    for code in 0..total {
        let f: Vec<&AbElement> = (0..n).map(|i| &elems[(code / k.pow(i as u32)) % k]).collect();
        let ok = (0..n).all(|a| (0..n).all(|b| *f[g.mul(a, b)] == m.base().add(f[a], &m.act(a, f[b]))));
        count += ok as usize;
    }
    count
}

/// Automorphisms of `A` as matrices, by testing every integer matrix with
/// entries in `[0, exp A)`.
fn oracle_automorphisms(a: &FGAbelianGroup) -> Vec<Matrix<Coord>> {
    let k = a.ncoords();
    let e = a.exponent().unwrap();
    let elems = a.elements().unwrap();
    let mut out = Vec::new();
    let total = (e as usize).pow((k * k) as u32);
    for code in 0..total {
        let m = Matrix::from_fn(k, k, |i, j| ((code / (e as usize).pow((i * k + j) as u32)) % e as usize) as Coord);
        let img = |x: &AbElement| {
            a.reduce((0..k).map(|i| (0..k).map(|j| m.get(i, j) * x.coords()[j]).sum()).collect())
        };
        // well defined on every relation and bijective on elements
        let ok_rel = (0..k).all(|j| img(&a.reduce({
            let mut v = vec![0; k];
            v[j] = a.modulus(j);
            v
        })).is_zero());
        if !ok_rel {
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        if elems.iter().all(|x| seen.insert(img(x))) && !out.iter().any(|o: &Matrix<Coord>| {
            elems.iter().all(|x| {
                a.reduce((0..k).map(|i| (0..k).map(|j| o.get(i, j) * x.coords()[j]).sum()).collect()) == img(x)
            })
        }) {
            out.push(m);
        }
    }
    out
}

/// Abelian groups of order `n <= 8` listed by hand.
fn oracle_abelian_groups(n: usize) -> Vec<FGAbelianGroup> {
    let t: Vec<Vec<Coord>> = match n {
        1 => vec![vec![]],
        2 | 3 | 5 | 6 | 7 => vec![vec![n as Coord]],
        4 => vec![vec![4], vec![2, 2]],
        8 => vec![vec![8], vec![2, 4], vec![2, 2, 2]],
        _ => panic!("oracle covers orders up to 8"),
    };
    t.into_iter().map(|t| FGAbelianGroup::new(0, t).unwrap()).collect()
}

/// Number of I-data on `G0`: every abelian `A`, every action by testing all
/// functions `G0 -> Aut(A)`, every function `G0 -> A` that is a bijective
/// 1-cocycle.
pub fn oracle_iyb_count(g0: &FiniteGroup) -> usize {
    let n = g0.order();
    let mut count = 0;
    for a in oracle_abelian_groups(n) {
        let auts = oracle_automorphisms(&a);
        let elems = a.elements().unwrap();
        let apply = |m: &Matrix<Coord>, x: &AbElement| {
            let k = a.ncoords();
            a.reduce((0..k).map(|i| (0..k).map(|j| m.get(i, j) * x.coords()[j]).sum()).collect())
        };
        let r = auts.len();
        for code in 0..r.pow(n as u32) {
            let phi: Vec<&Matrix<Coord>> = (0..n).map(|i| &auts[(code / r.pow(i as u32)) % r]).collect();
            let hom = (0..n).all(|x| {
                (0..n).all(|y| elems.iter().all(|v| apply(phi[g0.mul(x, y)], v) == apply(phi[x], &apply(phi[y], v))))
            });
            if !hom {
                continue;
            }
            for fcode in 0..n.pow(n as u32) {
                let f: Vec<usize> = (0..n).map(|i| (fcode / n.pow(i as u32)) % n).collect();
                let mut seen = vec![false; n];
                if !f.iter().all(|&v| !std::mem::replace(&mut seen[v], true)) {
                    continue;
                }
                let ok = (0..n).all(|x| {
                    (0..n).all(|y| elems[f[g0.mul(x, y)]] == a.add(&elems[f[x]], &apply(phi[x], &elems[f[y]])))
                });
                count += ok as usize;
            }
        }
    }
    count
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

/// Faithful permutation representations of small groups, `n <= 4`.
pub fn embeddings() -> Vec<(String, Arc<PermutationLattice>)> {
    let mut out = Vec::new();
    let mut add = |name: &str, degree: usize, gens: Vec<Permutation>| {
        let pg = PermGroup::new(degree, gens).unwrap();
        out.push((name.to_string(), Arc::new(PermutationLattice::from_perm_group(&pg))));
    };
    for n in 1..=4 {
        add(&format!("1<S{n}"), n, vec![]);
    }
    add("C2<S2", 2, vec![perm(&[1, 0])]);
    add("C2<S3", 3, vec![perm(&[1, 0, 2])]);
    add("C2=<(12)(34)>", 4, vec![perm(&[1, 0, 3, 2])]);
    add("C2=<(12)>", 4, vec![perm(&[1, 0, 2, 3])]);
    add("C3<S3", 3, vec![perm(&[1, 2, 0])]);
    add("C3<S4", 4, vec![perm(&[1, 2, 0, 3])]);
    add("C4<S4", 4, vec![perm(&[1, 2, 3, 0])]);
    add("V4 regular", 4, vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]);
    add("V4=<(12),(34)>", 4, vec![perm(&[1, 0, 2, 3]), perm(&[0, 1, 3, 2])]);
    add("S3", 3, vec![perm(&[1, 0, 2]), perm(&[1, 2, 0])]);
    add("S3<S4", 4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 0, 3])]);
    out
}

/// Every datum found by `search_iyb` on the group of each embedding.
pub fn itype_corpus() -> Vec<(String, IDatum, Arc<PermutationLattice>)> {
    let mut out = Vec::new();
    for (name, lat) in embeddings() {
        for (i, d) in search_iyb(lat.group(), SearchLimits::default()).unwrap().into_iter().enumerate() {
            out.push((format!("{name} datum#{i}"), d, lat.clone()));
        }
    }
    out
}

/// Module extensions with a 1-cocycle into their quotient.
pub fn module_instances() -> Vec<(String, OneCocycle, ModuleExtension)> {
    let mut out = Vec::new();
    let c2g = Arc::new(c2());
    // 0 -> Z/2 -> Z/4 -> Z/2 -> 0 and the split one, over C2 acting trivially
    let k = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2g.clone()));
    let q = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(2), c2g.clone()));
    let m4 = Arc::new(GModule::trivial(FGAbelianGroup::cyclic(4), c2g.clone()));
    let z4 = ModuleExtension::new(k.clone(), m4, q.clone(), Matrix::from_rows(vec![vec![2]]).unwrap(), Matrix::identity(1))
        .unwrap();
    let split = ModuleExtension::split(k, q.clone()).unwrap();
    let id = OneCocycle::new(q.clone(), vec![q.base().zero(), q.base().basis(0)]).unwrap();
    out.push(("Z/4 over C2, id".into(), id.clone(), z4.clone()));
    out.push(("Z/4 over C2, zero".into(), OneCocycle::zero(q.clone()), z4));
    out.push(("split over C2, id".into(), id, split));
    // lattice extensions from every surjection in the corpus
    for (name, d, lat) in itype_corpus() {
        let surj: Vec<ModuleSurjection> = enumerate_surjections(&lat, d.module()).unwrap();
        for (i, theta) in surj.iter().enumerate().take(2) {
            out.push((format!("{name} theta#{i}"), d.pi0().clone(), extension_from_surjection(theta).unwrap()));
        }
    }
    out
}
