use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn iyb(args: &[&str], file: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_iyb"))
        .arg(args[0])
        .arg(file)
        .args(&args[1..])
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn has(r: &Run, line: &str) -> bool {
    r.stdout.lines().any(|l| l == line)
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("iyb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn is_iyb_positive_and_negative() {
    let r = iyb(&["is-iyb"], &fixture("c2_datum.iyb"));
    assert_eq!(r.code, 0);
    assert!(has(&r, "RESULT iyb=true"));
    let r = iyb(&["is-iyb", "--target", "zero"], &fixture("c2_datum.iyb"));
    assert_eq!(r.code, 1);
    assert!(has(&r, "RESULT iyb=false"));
}

#[test]
fn search_c3_round_trips() {
    let r = iyb(&["search-iyb"], &fixture("c3.iyb"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has(&r, "RESULT count=2"));
    let again = iyb(&["search-iyb", "--threads", "3"], &fixture("c3.iyb"));
    assert_eq!(r.stdout, again.stdout);
    let p = tmp("c3_out.iyb", &r.stdout);
    for d in ["d1", "d2"] {
        let v = iyb(&["is-iyb", "--target", d], &p);
        assert_eq!(v.code, 0, "{}", v.stderr);
    }
}

#[test]
fn lift_negative_and_all_lifts() {
    let r = iyb(&["lift"], &fixture("klein_lift.iyb"));
    assert_eq!(r.code, 1);
    assert!(has(&r, "RESULT lift=none"));
    let r = iyb(&["all-lifts"], &fixture("c4_lift.iyb"));
    assert_eq!(r.code, 0);
    assert!(has(&r, "RESULT count=2"));
}

#[test]
fn theorem_b_swap() {
    let r = iyb(&["theorem-b"], &fixture("swap.iyb"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(has(&r, "RESULT surjections=1"));
    assert!(has(&r, "RESULT spliced_trivial1=false"));
    assert!(has(&r, "RESULT certificate1=true"));
    let p = tmp("tb_out.iyb", &r.stdout);
    let c = iyb(&["check-cocycle", "--target", "t_beta1"], &p);
    assert!(has(&c, "RESULT cocycle=true"), "{}", c.stderr);

    let s = iyb(&["derive-solution"], &fixture("swap.iyb"));
    assert!(has(&s, "RESULT verified1=true"));
    let p = tmp("sol_out.iyb", &s.stdout);
    let v = iyb(&["verify-solution", "--target", "t_r1"], &p);
    assert_eq!(v.code, 0);
    assert!(s.stdout.contains("left=1 0/1 0\nright=1 1/0 0"));

    let a = iyb(&["associated-datum"], &fixture("swap.iyb"));
    assert!(has(&a, "RESULT isomorphic1=true"));
}

#[test]
fn verify_solution_flags() {
    let r = iyb(&["verify-solution", "--target", "r"], &fixture("swap.iyb"));
    assert_eq!(r.code, 0);
    let r = iyb(&["verify-solution", "--target", "ident"], &fixture("swap.iyb"));
    assert_eq!(r.code, 1);
    assert!(has(&r, "RESULT braid=true"));
    assert!(has(&r, "RESULT left_nondegenerate=false"));
}

#[test]
fn constructions_round_trip() {
    for (cmd, target, order) in [("sdp", "s3", 6), ("tower", "t", 6), ("metabelian", "mq", 8)] {
        let r = iyb(&[cmd, "--target", target], &fixture("constructions.iyb"));
        assert_eq!(r.code, 0, "{cmd}: {}", r.stderr);
        assert!(has(&r, &format!("RESULT order={order}")));
        let p = tmp(&format!("{cmd}_out.iyb"), &r.stdout);
        assert_eq!(iyb(&["is-iyb", "--target", target], &p).code, 0);
    }
}

#[test]
fn input_errors_exit_two() {
    let r = iyb(&["is-iyb"], &fixture("bad_assoc.iyb"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 4") && r.stderr.contains("associativity fails for"), "{}", r.stderr);
    let p = tmp("unresolved.iyb", "format=1\n[module m]\ngroup=nowhere\n");
    let r = iyb(&["is-iyb"], &p);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3: unresolved reference nowhere"));
    let p = tmp("big.iyb", "format=1\n[group c13]\nnamed=cyclic 13\n");
    let r = iyb(&["search-iyb"], &p);
    assert_eq!(r.code, 2);
    assert!(r.stdout.contains("RESULT estimate="));
}
