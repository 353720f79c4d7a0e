//! Writers for blocks that `parse_manifest` reads back.

use std::fmt::Write;

use iyb_core::alat::Matrix;
use iyb_core::{AbElement, Coord, FiniteGroup, GModule, IDatum, SolutionMap, TwoCocycle};

pub fn ids(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn table(rows: &[Vec<usize>]) -> String {
    rows.iter().map(|r| ids(r)).collect::<Vec<_>>().join("/")
}

pub fn element(x: &AbElement) -> String {
    x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn elements<'a>(xs: impl IntoIterator<Item = &'a AbElement>) -> String {
    xs.into_iter().map(element).collect::<Vec<_>>().join("/")
}

pub fn matrix(m: &Matrix<Coord>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn group(out: &mut String, name: &str, g: &FiniteGroup) {
    let _ = writeln!(out, "[group {name}]\norder={}\ntable={}", g.order(), table(&g.table_rows()));
}

pub fn module(out: &mut String, name: &str, group: &str, m: &GModule) {
    let b = m.base();
    let torsion: Vec<String> = b.torsion().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "[module {name}]\ngroup={group}\nfree_rank={}\ntorsion={}", b.free_rank(), torsion.join(" "));
    if !m.is_trivial() {
        for g in 1..m.group().order() {
            let _ = writeln!(out, "action e{g}={}", matrix(m.action(g)));
        }
    }
}

pub fn cocycle1(out: &mut String, name: &str, module: &str, values: &[AbElement]) {
    let _ = writeln!(out, "[cocycle {name}]\nmodule={module}\ndegree=1\nvalues={}", elements(values));
}

pub fn cocycle2(out: &mut String, name: &str, module: &str, c: &TwoCocycle) {
    let _ = writeln!(out, "[cocycle {name}]\nmodule={module}\ndegree=2\nvalues={}", elements(c.values()));
}

/// Module, cocycle and datum blocks named `<name>_module`, `<name>_pi` and
/// `<name>` over an already emitted group block.
pub fn datum_over(out: &mut String, name: &str, group_name: &str, d: &IDatum) {
    let m = format!("{name}_module");
    let pi = format!("{name}_pi");
    module(out, &m, group_name, d.module());
    cocycle1(out, &pi, &m, d.pi0().values());
    let _ = writeln!(out, "[datum {name}]\ncocycle={pi}");
}

/// Datum together with its own group block `<name>_group`.
pub fn datum(out: &mut String, name: &str, d: &IDatum) {
    let g = format!("{name}_group");
    group(out, &g, d.group());
    datum_over(out, name, &g, d);
}

pub fn solution(out: &mut String, name: &str, r: &SolutionMap) {
    let _ = writeln!(out, "[solution {name}]\nleft={}\nright={}", table(r.left()), table(r.right()));
}
