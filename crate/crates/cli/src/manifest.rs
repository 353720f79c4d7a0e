//! The line-oriented manifest format.
//!
//! ```text
//! format=1
//! # comment
//! [group c2]
//! table=0 1/1 0
//! ```
//!
//! Blocks are resolved in file order and may only refer to earlier blocks.
//! Lines starting with `RESULT ` are ignored so reports can be fed back in.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use iyb_core::alat::{AbHom, Matrix};
use iyb_core::constructions::{StageAction, TowerStage};
use iyb_core::gmodules::extension_from_surjection;
use iyb_core::groups::PermGroup;
use iyb_core::{
    AbElement, Coord, FGAbelianGroup, FiniteGroup, GGroup, GModule, IDatum, LiftProblem, ModuleExtension, OneCocycle,
    Permutation, PermutationLattice, SolutionMap, Transversal, TwoCocycle,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

type Parsed<T> = std::result::Result<T, String>;

#[derive(Debug, Clone)]
struct Section {
    kind: String,
    name: String,
    line: usize,
    entries: Vec<(String, String, usize)>,
}

#[derive(Clone, Debug)]
pub struct GroupBlock {
    pub group: Arc<FiniteGroup>,
    /// Present for groups given by permutations.
    pub perms: Option<PermGroup>,
}

#[derive(Clone, Debug)]
pub enum Object {
    Group(GroupBlock),
    Module(Arc<GModule>),
    GGroup(Arc<GGroup>),
    /// Values of a 1- or 2-cochain; the cocycle condition is checked on use.
    Cochain { module: Arc<GModule>, degree: u8, values: Vec<AbElement> },
    Extension(ModuleExtension),
    /// Bijectivity is checked on use.
    Datum(OneCocycle),
    Lattice(Arc<PermutationLattice>),
    Lift(Box<LiftProblem>),
    Splice { pi0: OneCocycle, ext: ModuleExtension },
    Sdp { datum: IDatum, module: Arc<GModule> },
    Tower(Vec<TowerStage>),
    Metabelian { group: Arc<FiniteGroup>, normal: Vec<usize>, transversal: Option<Transversal> },
    TheoremB { datum: IDatum, lattice: Arc<PermutationLattice> },
    Solution(SolutionMap),
}

impl Object {
    pub fn as_cocycle1(&self) -> Parsed<OneCocycle> {
        match self {
            Object::Cochain { module, degree: 1, values } => {
                OneCocycle::new(module.clone(), values.clone()).map_err(|e| e.to_string())
            }
            Object::Datum(c) => Ok(c.clone()),
            o => Err(format!("expected a 1-cocycle, found a {}", o.kind())),
        }
    }

    pub fn as_cocycle2(&self) -> Parsed<TwoCocycle> {
        match self {
            Object::Cochain { module, degree: 2, values } => {
                TwoCocycle::new(module.clone(), values.clone()).map_err(|e| e.to_string())
            }
            o => Err(format!("expected a 2-cocycle, found a {}", o.kind())),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::Module(_) => "module",
            Object::GGroup(_) => "ggroup",
            Object::Cochain { .. } => "cocycle",
            Object::Extension(_) => "extension",
            Object::Datum(_) => "datum",
            Object::Lattice(_) => "lattice",
            Object::Lift(_) => "lift",
            Object::Splice { .. } => "splice",
            Object::Sdp { .. } => "sdp",
            Object::Tower(_) => "tower",
            Object::Metabelian { .. } => "metabelian",
            Object::TheoremB { .. } => "theoremb",
            Object::Solution(_) => "solution",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub blocks: Vec<(String, Object)>,
    index: HashMap<String, usize>,
}

impl Manifest {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.index.get(name).map(|&i| &self.blocks[i].1)
    }

    /// The named block, or the last block whose kind is in `kinds`.
    pub fn target(&self, name: Option<&str>, kinds: &[&str]) -> Parsed<(&str, &Object)> {
        let found = match name {
            Some(n) => self.index.get(n).map(|&i| &self.blocks[i]),
            None => self.blocks.iter().rev().find(|(_, o)| kinds.contains(&o.kind())),
        };
        let (n, o) = found.ok_or_else(|| match name {
            Some(n) => format!("no block named {n}"),
            None => format!("no block of kind {}", kinds.join("/")),
        })?;
        if !kinds.contains(&o.kind()) {
            return Err(format!("block {n} is a {}, expected {}", o.kind(), kinds.join("/")));
        }
        Ok((n.as_str(), o))
    }
}

pub fn parse_manifest(text: &str) -> std::result::Result<Manifest, Vec<Diagnostic>> {
    let sections = split_sections(text)?;
    let mut m = Manifest::default();
    let mut errors = Vec::new();
    for s in sections {
        if m.index.contains_key(&s.name) {
            errors.push(Diagnostic { line: s.line, message: format!("duplicate block name {}", s.name) });
            continue;
        }
        match resolve(&m, &s) {
            Ok(obj) => {
                m.index.insert(s.name.clone(), m.blocks.len());
                m.blocks.push((s.name, obj));
            }
            Err((line, message)) => errors.push(Diagnostic { line, message }),
        }
    }
    if errors.is_empty() {
        Ok(m)
    } else {
        Err(errors)
    }
}

fn split_sections(text: &str) -> std::result::Result<Vec<Section>, Vec<Diagnostic>> {
    let mut sections: Vec<Section> = Vec::new();
    let mut errors = Vec::new();
    let mut format_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') || l.starts_with("RESULT ") || l == "RESULT" {
            continue;
        }
        if let Some(head) = l.strip_prefix('[') {
            let Some(head) = head.strip_suffix(']') else {
                errors.push(Diagnostic { line, message: "unterminated section header".into() });
                continue;
            };
            let parts: Vec<&str> = head.split_whitespace().collect();
            if parts.len() != 2 {
                errors.push(Diagnostic { line, message: "section header must be [kind name]".into() });
                continue;
            }
            sections.push(Section { kind: parts[0].into(), name: parts[1].into(), line, entries: Vec::new() });
            continue;
        }
        let Some((k, v)) = l.split_once('=') else {
            errors.push(Diagnostic { line, message: format!("expected key=value, found {l:?}") });
            continue;
        };
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        match sections.last_mut() {
            Some(s) => s.entries.push((k, v, line)),
            None if k == "format" => {
                if v != "1" {
                    errors.push(Diagnostic { line, message: format!("unsupported format {v}") });
                }
                format_seen = true;
            }
            None => errors.push(Diagnostic { line, message: format!("key {k} outside any section") }),
        }
    }
    if !format_seen && errors.is_empty() {
        errors.push(Diagnostic { line: 1, message: "missing format=1 line".into() });
    }
    if errors.is_empty() {
        Ok(sections)
    } else {
        Err(errors)
    }
}

struct Ctx<'a> {
    m: &'a Manifest,
    s: &'a Section,
}

type Located<T> = std::result::Result<T, (usize, String)>;

impl Ctx<'_> {
    fn opt(&self, key: &str) -> Option<(&str, usize)> {
        self.s.entries.iter().find(|(k, _, _)| k == key).map(|(_, v, l)| (v.as_str(), *l))
    }

    fn req(&self, key: &str) -> Located<(&str, usize)> {
        self.opt(key).ok_or_else(|| (self.s.line, format!("[{} {}] needs {key}=", self.s.kind, self.s.name)))
    }

    fn prefixed(&self, prefix: &str) -> Vec<(&str, &str, usize)> {
        self.s
            .entries
            .iter()
            .filter_map(|(k, v, l)| k.strip_prefix(prefix).map(|rest| (rest.trim(), v.as_str(), *l)))
            .collect()
    }

    fn reference(&self, key: &str) -> Located<(&Object, usize)> {
        let (name, line) = self.req(key)?;
        let obj = self.m.get(name).ok_or_else(|| (line, format!("unresolved reference {name}")))?;
        Ok((obj, line))
    }

    fn group(&self, key: &str) -> Located<GroupBlock> {
        match self.reference(key)? {
            (Object::Group(g), _) => Ok(g.clone()),
            (o, l) => Err((l, format!("{key} must name a group, found a {}", o.kind()))),
        }
    }

    fn module(&self, key: &str) -> Located<Arc<GModule>> {
        match self.reference(key)? {
            (Object::Module(g), _) => Ok(g.clone()),
            (o, l) => Err((l, format!("{key} must name a module, found a {}", o.kind()))),
        }
    }

    fn datum(&self, key: &str) -> Located<IDatum> {
        let l = self.req(key)?.1;
        IDatum::new(self.cocycle1(key)?).map_err(|e| (l, e.to_string()))
    }

    fn cocycle1(&self, key: &str) -> Located<OneCocycle> {
        match self.reference(key)? {
            (o, l) => o.as_cocycle1().map_err(|e| (l, e)),
        }
    }
}

fn resolve(m: &Manifest, s: &Section) -> Located<Object> {
    let c = Ctx { m, s };
    let at = |l: usize| move |e: String| (l, e);
    let core = |l: usize| move |e: iyb_core::Error| (l, e.to_string());
    let head = s.line;
    match s.kind.as_str() {
        "group" => parse_group(&c).map(Object::Group),
        "module" => parse_module(&c).map(|x| Object::Module(Arc::new(x))),
        "ggroup" => {
            let base = c.group("group")?.group;
            let acting = c.group("acting")?.group;
            let mut gens = Vec::new();
            for (r, v, l) in c.prefixed("action") {
                let g = element_ref(r, None).map_err(at(l))?;
                let t = parse_ids(v).map_err(at(l))?;
                if g >= acting.order() || t.len() != base.order() || t.iter().any(|&x| x >= base.order()) {
                    return Err((l, format!("bad automorphism table for element {g}")));
                }
                gens.push((g, t));
            }
            let action = close_tables(&acting, base.order(), &gens).map_err(at(head))?;
            let (cv, cl) = c.req("central")?;
            let central = parse_ids(cv).map_err(at(cl))?;
            GGroup::new(base, acting, action, &central).map(|g| Object::GGroup(Arc::new(g))).map_err(core(head))
        }
        "cocycle" => {
            let module = c.module("module")?;
            let (dv, dl) = c.opt("degree").unwrap_or(("1", head));
            let (vv, vl) = c.req("values")?;
            let values = parse_elements(module.base(), vv).map_err(at(vl))?;
            let degree: u8 = match dv {
                "1" => 1,
                "2" => 2,
                _ => return Err((dl, format!("degree must be 1 or 2, found {dv}"))),
            };
            let n = module.group().order();
            let want = if degree == 1 { n } else { n * n };
            if values.len() != want {
                return Err((vl, format!("a {degree}-cochain over a group of order {n} needs {want} values")));
            }
            Ok(Object::Cochain { module, degree, values })
        }
        "extension" => {
            if c.opt("surjection").is_some() {
                let lattice = parse_lattice_ref(&c, "lattice")?;
                let target = c.module("target")?;
                let (iv, il) = c.req("surjection")?;
                let images = parse_elements(target.base(), iv).map_err(at(il))?;
                let theta = iyb_core::ModuleSurjection::new(lattice, target, &images).map_err(core(il))?;
                return extension_from_surjection(&theta).map(Object::Extension).map_err(core(il));
            }
            let kernel = c.module("kernel")?;
            let middle = c.module("middle")?;
            let quotient = c.module("quotient")?;
            let (iv, il) = c.req("incl")?;
            let (pv, pl) = c.req("proj")?;
            let incl = parse_matrix(iv, middle.base().ncoords(), kernel.base().ncoords()).map_err(at(il))?;
            let proj = parse_matrix(pv, quotient.base().ncoords(), middle.base().ncoords()).map_err(at(pl))?;
            let ext = ModuleExtension::new(kernel, middle, quotient, incl, proj).map_err(core(head))?;
            match c.opt("section") {
                Some((sv, sl)) => {
                    let sec = parse_elements(ext.middle().base(), sv).map_err(at(sl))?;
                    ext.with_section(sec).map(Object::Extension).map_err(core(sl))
                }
                None => Ok(Object::Extension(ext)),
            }
        }
        "datum" => c.cocycle1("cocycle").map(Object::Datum),
        "lattice" => {
            let g = c.group("group")?;
            let perms = match c.opt("perms") {
                Some((pv, pl)) => {
                    let (dv, dl) = c.req("degree")?;
                    let degree = parse_usize(dv).map_err(at(dl))?;
                    parse_perms(pv, degree).map_err(at(pl))?
                }
                None => g.perms.as_ref().map(|p| p.elements().to_vec()).ok_or((
                    head,
                    "lattice over a table group needs perms= (one permutation per element)".to_string(),
                ))?,
            };
            PermutationLattice::from_embedding(g.group, perms).map(|l| Object::Lattice(Arc::new(l))).map_err(core(head))
        }
        "lift" => parse_lift(&c).map(|p| Object::Lift(Box::new(p))),
        "splice" => {
            let pi0 = c.cocycle1("cocycle")?;
            match c.reference("extension")? {
                (Object::Extension(e), _) => Ok(Object::Splice { pi0, ext: e.clone() }),
                (o, l) => Err((l, format!("extension must name an extension, found a {}", o.kind()))),
            }
        }
        "sdp" => Ok(Object::Sdp { datum: c.datum("datum")?, module: c.module("module")? }),
        "tower" => {
            let stages = c
                .s
                .entries
                .iter()
                .filter(|(k, _, _)| k == "stage")
                .map(|(_, v, l)| parse_stage(v).map_err(at(*l)))
                .collect::<Located<Vec<_>>>()?;
            Ok(Object::Tower(stages))
        }
        "metabelian" => {
            let g = c.group("group")?.group;
            let (nv, nl) = c.req("normal")?;
            let normal = parse_ids(nv).map_err(at(nl))?;
            let transversal = parse_transversal(&c, &g, &normal)?;
            Ok(Object::Metabelian { group: g, normal, transversal })
        }
        "theoremb" => Ok(Object::TheoremB { datum: c.datum("datum")?, lattice: parse_lattice_ref(&c, "lattice")? }),
        "solution" => {
            let (lv, ll) = c.req("left")?;
            let (rv, rl) = c.req("right")?;
            let left = parse_table(lv).map_err(at(ll))?;
            let right = parse_table(rv).map_err(at(rl))?;
            SolutionMap::new(left, right).map(Object::Solution).map_err(core(head))
        }
        other => Err((head, format!("unknown block kind {other}"))),
    }
}

/// Extends automorphism tables given on generators along the Cayley graph;
/// elements not listed act trivially when nothing is listed at all.
fn close_tables(acting: &FiniteGroup, n: usize, gens: &[(usize, Vec<usize>)]) -> Parsed<Vec<Vec<usize>>> {
    let mut action: Vec<Option<Vec<usize>>> = vec![None; acting.order()];
    action[0] = Some((0..n).collect());
    if gens.is_empty() {
        return Ok(vec![(0..n).collect(); acting.order()]);
    }
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (g, t) in gens {
            let y = acting.mul(x, *g);
            if action[y].is_none() {
                let tx = action[x].as_ref().expect("visited");
                action[y] = Some((0..n).map(|v| tx[t[v]]).collect());
                queue.push_back(y);
            }
        }
    }
    action.into_iter().enumerate().map(|(g, t)| t.ok_or(format!("listed generators do not reach element {g}"))).collect()
}

fn parse_lattice_ref(c: &Ctx<'_>, key: &str) -> Located<Arc<PermutationLattice>> {
    match c.reference(key)? {
        (Object::Lattice(l), _) => Ok(l.clone()),
        (o, l) => Err((l, format!("{key} must name a lattice, found a {}", o.kind()))),
    }
}

fn parse_transversal(c: &Ctx<'_>, g: &FiniteGroup, normal: &[usize]) -> Located<Option<Transversal>> {
    let Some((tv, tl)) = c.opt("transversal") else {
        return Ok(None);
    };
    let q = iyb_core::Quotient::new(g, normal).map_err(|e| (tl, e.to_string()))?;
    let reps = parse_ids(tv).map_err(|e| (tl, e))?;
    Transversal::new(&q, reps).map(Some).map_err(|e| (tl, e.to_string()))
}

fn parse_group(c: &Ctx<'_>) -> Located<GroupBlock> {
    let head = c.s.line;
    let core = |l: usize| move |e: iyb_core::Error| (l, e.to_string());
    let plain = |g: FiniteGroup| GroupBlock { group: Arc::new(g), perms: None };
    let block = if let Some((tv, tl)) = c.opt("table") {
        let rows = parse_table(tv).map_err(|e| (tl, e))?;
        plain(FiniteGroup::from_table(rows).map_err(core(tl))?)
    } else if let Some((pv, pl)) = c.opt("perms") {
        let (dv, dl) = c.req("degree")?;
        let degree = parse_usize(dv).map_err(|e| (dl, e))?;
        let gens = parse_perms(pv, degree).map_err(|e| (pl, e))?;
        let pg = PermGroup::new(degree, gens).map_err(core(pl))?;
        GroupBlock { group: Arc::new(pg.group().clone()), perms: Some(pg) }
    } else if let Some((nv, nl)) = c.opt("named") {
        let parts: Vec<&str> = nv.split_whitespace().collect();
        let arg = |i: usize| -> Located<usize> {
            parts.get(i).ok_or((nl, format!("{nv} needs a size"))).and_then(|s| parse_usize(s).map_err(|e| (nl, e)))
        };
        match parts.first().copied() {
            Some("trivial") => plain(FiniteGroup::trivial()),
            Some("cyclic") => plain(FiniteGroup::cyclic(arg(1)?)),
            Some("dihedral") => plain(FiniteGroup::dihedral(arg(1)?)),
            Some("quaternion") => plain(FiniteGroup::quaternion()),
            Some("symmetric") => {
                let pg = PermGroup::symmetric(arg(1)?);
                GroupBlock { group: Arc::new(pg.group().clone()), perms: Some(pg) }
            }
            Some("alternating") => {
                let pg = PermGroup::alternating(arg(1)?);
                GroupBlock { group: Arc::new(pg.group().clone()), perms: Some(pg) }
            }
            _ => return Err((nl, format!("unknown named group {nv:?}"))),
        }
    } else if let Some((av, al)) = c.opt("abelian") {
        let t = parse_coords(av).map_err(|e| (al, e))?;
        let a = FGAbelianGroup::new(0, t).map_err(core(al))?;
        plain(FiniteGroup::from_abelian(&a).map_err(core(al))?)
    } else {
        return Err((head, "group needs one of table=, perms=, named=, abelian=".into()));
    };
    if let Some((ov, ol)) = c.opt("order") {
        let n = parse_usize(ov).map_err(|e| (ol, e))?;
        if n != block.group.order() {
            return Err((ol, format!("declared order {n} but the group has order {}", block.group.order())));
        }
    }
    Ok(block)
}

fn parse_module(c: &Ctx<'_>) -> Located<GModule> {
    let head = c.s.line;
    let g = c.group("group")?;
    let (fv, fl) = c.opt("free_rank").unwrap_or(("0", head));
    let free = parse_usize(fv).map_err(|e| (fl, e))?;
    let (tv, tl) = c.opt("torsion").unwrap_or(("", head));
    let torsion = parse_coords(tv).map_err(|e| (tl, e))?;
    let base = FGAbelianGroup::new(free, torsion).map_err(|e| (tl, e.to_string()))?;
    let k = base.ncoords();
    let mut gens = Vec::new();
    for (r, v, l) in c.prefixed("action") {
        let id = element_ref(r, g.perms.as_ref()).map_err(|e| (l, e))?;
        gens.push((id, parse_matrix(v, k, k).map_err(|e| (l, e))?));
    }
    if gens.is_empty() {
        return Ok(GModule::trivial(base, g.group));
    }
    GModule::from_generator_action(base, g.group, &gens).map_err(|e| (head, e.to_string()))
}

fn parse_lift(c: &Ctx<'_>) -> Located<LiftProblem> {
    let head = c.s.line;
    let g = c.group("group")?.group;
    let (nv, nl) = c.req("normal")?;
    let mut normal = parse_ids(nv).map_err(|e| (nl, e))?;
    normal.sort_unstable();
    normal.dedup();
    let gamma = match c.reference("gamma")? {
        (Object::GGroup(x), _) => x.clone(),
        (o, l) => return Err((l, format!("gamma must name a ggroup, found a {}", o.kind()))),
    };
    let transversal = parse_transversal(c, &g, &normal)?;
    let (pv, pl) = c.req("pi1")?;
    let pi1_ids = parse_ids(pv).map_err(|e| (pl, e))?;
    if pi1_ids.len() != normal.len() {
        return Err((pl, format!("pi1 lists {} images for {} elements", pi1_ids.len(), normal.len())));
    }
    let ident = iyb_core::groups::AbelianIdentification::identify(&g, &normal).map_err(|e| (nl, e.to_string()))?;
    let mut images = Vec::new();
    for j in 0..ident.group.ncoords() {
        let x = ident.id_of(&ident.group.basis(j)).ok_or((nl, "normal subgroup basis missing".to_string()))?;
        let pos = normal.binary_search(&x).map_err(|_| (nl, "identification outside the subgroup".to_string()))?;
        let y = pi1_ids[pos];
        let coords = gamma.central_coords(y).ok_or((pl, format!("{y} is not in the central subgroup of gamma")))?;
        images.push(coords.clone());
    }
    let pi1 = AbHom::from_images(ident.group.clone(), gamma.central_module().base().clone(), &images)
        .map_err(|e| (pl, e.to_string()))?;
    let (qv, ql) = c.req("pi0")?;
    let pi0 = parse_ids(qv).map_err(|e| (ql, e))?;
    let p = LiftProblem::new(g, &normal, transversal, gamma, pi1, pi0).map_err(|e| (head, e.to_string()))?;
    // π1 must agree with the listed table, not only on the basis
    for (pos, &x) in normal.iter().enumerate() {
        let want = p.gamma().central_id(&p.pi1().apply(p.g1_identification().coords_of(x).expect("in G1")));
        if want != pi1_ids[pos] {
            return Err((pl, format!("pi1 is not a homomorphism (element {x})")));
        }
    }
    Ok(p)
}

fn parse_stage(v: &str) -> Parsed<TowerStage> {
    let (t, a) = v.split_once('|').ok_or("stage must be <torsion> | <action>")?;
    let group = FGAbelianGroup::new(0, parse_coords(t)?).map_err(|e| e.to_string())?;
    let a = a.trim();
    let k = group.ncoords();
    let action = if a == "trivial" {
        StageAction::Trivial
    } else {
        let mut gens = Vec::new();
        for part in a.split(';') {
            let (r, m) = part.split_once('=').ok_or("stage action must be eK=matrix; ...")?;
            gens.push((element_ref(r.trim(), None)?, parse_matrix(m.trim(), k, k)?));
        }
        StageAction::Generators(gens)
    };
    Ok(TowerStage { group, action })
}

/// `eK` is the element with id `K`; `gK` the `K`-th permutation generator.
fn element_ref(r: &str, perms: Option<&PermGroup>) -> Parsed<usize> {
    if let Some(k) = r.strip_prefix('e') {
        return parse_usize(k);
    }
    if let Some(k) = r.strip_prefix('g') {
        let k = parse_usize(k)?;
        let pg = perms.ok_or("generator references gK need a permutation group")?;
        let p = pg.generators().get(k).ok_or(format!("no generator g{k}"))?;
        return pg.index_of(p).ok_or_else(|| "generator missing from its group".to_string());
    }
    Err(format!("bad element reference {r:?}, expected eK or gK"))
}

fn parse_usize(s: &str) -> Parsed<usize> {
    s.trim().parse().map_err(|_| format!("expected a non-negative integer, found {s:?}"))
}

fn parse_coords(s: &str) -> Parsed<Vec<Coord>> {
    s.split_whitespace().map(|x| x.parse().map_err(|_| format!("expected an integer, found {x:?}"))).collect()
}

fn parse_ids(s: &str) -> Parsed<Vec<usize>> {
    s.split_whitespace().map(parse_usize).collect()
}

fn parse_table(s: &str) -> Parsed<Vec<Vec<usize>>> {
    s.split('/').map(parse_ids).collect()
}

fn parse_elements(a: &FGAbelianGroup, s: &str) -> Parsed<Vec<AbElement>> {
    s.split('/')
        .map(|row| {
            let v = parse_coords(row)?;
            a.element(v.clone()).map_err(|_| format!("{v:?} is not an element of {a}"))
        })
        .collect()
}

fn parse_perms(s: &str, degree: usize) -> Parsed<Vec<Permutation>> {
    s.split(',').map(|p| Permutation::parse_cycles(p.trim(), degree).map_err(|e| e.to_string())).collect()
}

/// `[[a,b],[c,d]]`; `[]` for the empty matrix.
fn parse_matrix(s: &str, rows: usize, cols: usize) -> Parsed<Matrix<Coord>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or(format!("bad matrix {s:?}"))?;
    let mut out = Vec::new();
    if !inner.is_empty() {
        let inner = inner.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or(format!("bad matrix {s:?}"))?;
        for row in inner.split("],[") {
            let r: Parsed<Vec<Coord>> = row
                .split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| format!("bad matrix entry {x:?}")))
                .collect();
            out.push(r?);
        }
    }
    if out.len() != rows || out.iter().any(|r| r.len() != cols) {
        return Err(format!("matrix {s} must be {rows}x{cols}"));
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    Matrix::from_rows(out).map_err(|e| e.to_string())
}
