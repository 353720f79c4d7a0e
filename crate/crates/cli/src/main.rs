//! `iyb`: command-line front end over manifest files.

mod emit;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use iyb_core::cohomology::{is_cocycle1, pointed_coboundary, yoneda_splice};
use iyb_core::constructions::{a_type_tower, is_iyb_datum, metabelian_datum, sdp_iyb, search_iyb, SearchLimits};
use iyb_core::lifting::{all_lifts, assemble_lift, can_lift, DEFAULT_BALL_RADIUS};
use iyb_core::structure::{associated_idatum, derive_solution, theorem_b_enumerate, verify_solution, TheoremB};
use iyb_core::{Coord, Error, IDatum};
use manifest::{parse_manifest, Manifest, Object};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    CheckCocycle,
    IsIyb,
    SearchIyb,
    Lift,
    AllLifts,
    Splice,
    Sdp,
    Tower,
    Metabelian,
    TheoremB,
    DeriveSolution,
    VerifySolution,
    AssociatedDatum,
}

#[derive(Parser, Debug)]
#[command(name = "iyb", version, about = "Bijective 1-cocycles, lifts and groups of I-type")]
struct Cli {
    command: Command,
    manifest: PathBuf,
    /// Block to run on; defaults to the last block of a suitable kind.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    threads: Option<usize>,
    /// Sup-norm radius of the lattice injectivity probe.
    #[arg(long, default_value_t = DEFAULT_BALL_RADIUS)]
    ball: Coord,
    /// Keep one Theorem B entry per spliced class.
    #[arg(long)]
    collapse_classes: bool,
}

/// Report lines and whether the answer is affirmative.
struct Report {
    results: Vec<String>,
    blocks: String,
    ok: bool,
}

impl Report {
    fn new() -> Self {
        Report { results: Vec::new(), blocks: String::new(), ok: true }
    }

    fn result(&mut self, key: impl std::fmt::Display, value: impl std::fmt::Display) {
        self.results.push(format!("RESULT {key}={value}"));
    }
}

enum Failure {
    Input(Vec<String>),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(vec![e.to_string()]),
        }
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Input(vec![e])
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.manifest) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.manifest.display());
            return ExitCode::from(2);
        }
    };
    let manifest = match parse_manifest(&text) {
        Ok(m) => m,
        Err(diags) => {
            for d in diags {
                eprintln!("error: {d}");
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli, &manifest) {
        Ok(r) => {
            println!("format=1");
            for l in &r.results {
                println!("{l}");
            }
            print!("{}", r.blocks);
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Failure::Input(msgs)) => {
            for m in msgs {
                eprintln!("error: {m}");
            }
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli, m: &Manifest) -> Result<Report, Failure> {
    let target = cli.target.as_deref();
    let mut r = Report::new();
    match cli.command {
        Command::CheckCocycle => {
            let (_, o) = m.target(target, &["cocycle"])?;
            let Object::Cochain { module, degree, values } = o else { unreachable!() };
            let ok = if *degree == 1 { is_cocycle1(module, values)? } else { o.as_cocycle2().is_ok() };
            r.result("degree", degree);
            r.result("cocycle", ok);
            r.ok = ok;
        }
        Command::IsIyb => {
            let (_, o) = m.target(target, &["datum", "cocycle"])?;
            let ok = match o {
                Object::Datum(c) => is_iyb_datum(c.group(), c.module(), c.values())?,
                Object::Cochain { module, degree: 1, values } => is_iyb_datum(module.group(), module, values)?,
                _ => return Err("is-iyb needs a datum or a 1-cochain".to_string().into()),
            };
            r.result("iyb", ok);
            r.ok = ok;
        }
        Command::SearchIyb => {
            let (name, o) = m.target(target, &["group"])?;
            let Object::Group(g) = o else { unreachable!() };
            let limits = SearchLimits { threads: cli.threads, ..SearchLimits::default() };
            match search_iyb(&g.group, limits) {
                Ok(found) => {
                    r.result("count", found.len());
                    emit::group(&mut r.blocks, name, &g.group);
                    for (i, d) in found.iter().enumerate() {
                        emit::datum_over(&mut r.blocks, &format!("d{}", i + 1), name, d);
                    }
                    r.ok = !found.is_empty();
                }
                Err(Error::Refused { reason, estimate }) => {
                    r.result("refused", reason);
                    r.result("estimate", estimate);
                    print_report(&r);
                    return Err(Failure::Input(vec!["search refused".into()]));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Lift | Command::AllLifts => {
            let (_, o) = m.target(target, &["lift"])?;
            let Object::Lift(p) = o else { unreachable!() };
            match can_lift(p)? {
                None => {
                    r.result("lift", "none");
                    r.ok = false;
                }
                Some(lambda) => {
                    let pi = assemble_lift(p, &lambda)?;
                    r.result("lift", "some");
                    r.result("table", emit::ids(&pi));
                    if cli.command == Command::AllLifts {
                        let all = all_lifts(p, &pi)?;
                        r.result("count", all.len());
                        for (i, t) in all.iter().enumerate() {
                            r.result(format!("lift{}", i + 1), emit::ids(t));
                        }
                    }
                }
            }
        }
        Command::Splice => {
            let (name, o) = m.target(target, &["splice"])?;
            let Object::Splice { pi0, ext } = o else { unreachable!() };
            let spliced = yoneda_splice(pi0, ext)?;
            let pointed = pointed_coboundary(pi0, ext)?;
            r.result("trivial", spliced.is_trivial()?);
            r.result("agrees_with_pointed", spliced.equals(&pointed)?);
            let g = format!("{name}_group");
            let k = format!("{name}_kernel");
            emit::group(&mut r.blocks, &g, pi0.group());
            emit::module(&mut r.blocks, &k, &g, ext.kernel());
            emit::cocycle2(&mut r.blocks, &format!("{name}_beta"), &k, spliced.representative());
        }
        Command::Sdp => {
            let (name, o) = m.target(target, &["sdp"])?;
            let Object::Sdp { datum, module } = o else { unreachable!() };
            let d = sdp_iyb(datum, module)?;
            datum_result(&mut r, name, &d);
        }
        Command::Tower => {
            let (name, o) = m.target(target, &["tower"])?;
            let Object::Tower(stages) = o else { unreachable!() };
            let t = a_type_tower(stages)?;
            for w in &t.warnings {
                r.result("warning", w);
            }
            datum_result(&mut r, name, &t.datum);
        }
        Command::Metabelian => {
            let (name, o) = m.target(target, &["metabelian"])?;
            let Object::Metabelian { group, normal, transversal } = o else { unreachable!() };
            match metabelian_datum(group, normal, transversal.as_ref())? {
                Some(d) => datum_result(&mut r, name, &d),
                None => {
                    r.result("datum", "none");
                    r.ok = false;
                }
            }
        }
        Command::TheoremB | Command::DeriveSolution | Command::AssociatedDatum => {
            let (name, o) = m.target(target, &["theoremb"])?;
            let Object::TheoremB { datum, lattice } = o else { unreachable!() };
            let tb = theorem_b_enumerate(datum, lattice, cli.collapse_classes)?;
            theorem_b(cli, &mut r, name, datum, &tb)?;
        }
        Command::VerifySolution => {
            let (_, o) = m.target(target, &["solution"])?;
            let Object::Solution(s) = o else { unreachable!() };
            let rep = verify_solution(s);
            r.result("bijective", rep.bijective);
            r.result("involutive", rep.involutive);
            r.result("left_nondegenerate", rep.left_nondegenerate);
            r.result("right_nondegenerate", rep.right_nondegenerate);
            r.result("braid", rep.braid);
            r.result("solution", rep.all());
            r.ok = rep.all();
        }
    }
    Ok(r)
}

fn print_report(r: &Report) {
    println!("format=1");
    for l in &r.results {
        println!("{l}");
    }
}

fn datum_result(r: &mut Report, name: &str, d: &IDatum) {
    r.result("order", d.order());
    r.result("iyb", true);
    emit::datum(&mut r.blocks, name, d);
}

fn theorem_b(cli: &Cli, r: &mut Report, name: &str, datum: &IDatum, tb: &TheoremB) -> Result<(), Failure> {
    r.result("surjections", tb.surjections);
    r.result("classes", tb.classes);
    r.result("entries", tb.entries.len());
    for (i, e) in tb.entries.iter().enumerate() {
        let i = i + 1;
        let g = &e.group;
        match cli.command {
            Command::TheoremB => {
                r.result(format!("theta{i}"), emit::elements(&e.theta.images()));
                r.result(format!("spliced_trivial{i}"), e.spliced.is_trivial()?);
                r.result(format!("certificate{i}"), g.lift().certificate()?.holds());
                let probe = g.lift().ball_probe(cli.ball)?;
                r.result(format!("ball{i}"), format!("radius:{} checked:{} injective:{}", probe.radius, probe.checked, probe.collision.is_none()));
                let mut b = String::new();
                let lat = format!("{name}_kernel{i}");
                let grp = format!("{name}_group{i}");
                emit::group(&mut b, &grp, datum.group());
                emit::module(&mut b, &lat, &grp, e.gamma.kernel());
                emit::cocycle2(&mut b, &format!("{name}_beta{i}"), &lat, g.beta());
                r.blocks.push_str(&b);
            }
            Command::DeriveSolution => {
                let s = derive_solution(g)?;
                r.result(format!("verified{i}"), verify_solution(&s).all());
                emit::solution(&mut r.blocks, &format!("{name}_r{i}"), &s);
            }
            Command::AssociatedDatum => {
                let d = associated_idatum(g)?;
                let iso = d.is_isomorphic(datum)?;
                r.result(format!("isomorphic{i}"), iso);
                if !iso {
                    return Err(Failure::Internal(format!("associated datum of entry {i} differs from the input")));
                }
                emit::datum(&mut r.blocks, &format!("{name}_a{i}"), &d);
            }
            _ => unreachable!(),
        }
    }
    r.ok = !tb.entries.is_empty();
    Ok(())
}
