use std::io::Write;
use std::process::Command;

use ghostring::polycore::parse_ring;
use ghostring_cli::{corpus, run, EXIT_OK, EXIT_PRECONDITION, EXIT_TRUNCATED, EXIT_USAGE};
use proptest::prelude::*;

fn go(args: &[&str]) -> ghostring_cli::Outcome {
    run(std::iter::once("ghostring").chain(args.iter().copied()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum RingClass {
    CharZeroCi,
    CharPCi,
    NotCi,
    Invalid,
}

const RINGS: &[(&str, &str, RingClass)] = &[
    ("QQ[x,y]/(x*y)", "{x->x, y->y}", RingClass::CharZeroCi),
    ("F2[x]/(x^2)", "{x->x}", RingClass::CharPCi),
    ("F3[x,y]", "{x->x, y->y}", RingClass::CharPCi),
    ("QQ[x,y]/(x^2,x*y,y^2)", "{x->x, y->y}", RingClass::NotCi),
    ("QQ[x,y", "{x->x}", RingClass::Invalid),
    ("QQ[x,y]/(x+y^2)", "{x->x, y->y}", RingClass::Invalid),
    ("F4[x]/(x^2)", "{x->x}", RingClass::Invalid),
    ("QQ[x,y]/(x^2+y^3)", "{x->x, y->y}", RingClass::Invalid),
    ("QQ[x]/(y^2)", "{x->x}", RingClass::Invalid),
];

const COMMANDS: &[&str] = &["classify", "dim", "betti", "koszul", "aq", "kunz", "ghost-trivial", "tor", "ghost", "member"];

fn expected(cmd: &str, class: RingClass) -> i32 {
    use RingClass::*;
    match (cmd, class) {
        (_, Invalid) => EXIT_USAGE,
        ("aq", NotCi) => EXIT_PRECONDITION,
        ("kunz" | "ghost-trivial" | "tor", CharZeroCi | NotCi) => EXIT_PRECONDITION,
        _ => EXIT_OK,
    }
}

fn argv(cmd: &str, ring: &str, map: &str, json: bool) -> Vec<String> {
    let mut v = vec![cmd.to_string(), ring.to_string()];
    match cmd {
        "betti" | "kunz" | "ghost-trivial" => v.extend(["--homological-bound".into(), "3".into()]),
        "aq" => v.extend(["--levels".into(), "3".into()]),
        "tor" => v.extend(["--with".into(), "frobenius".into(), "--homological-bound".into(), "3".into()]),
        "ghost" => v.extend(["--map".into(), map.into()]),
        "member" => v.push("x^2".into()),
        _ => {}
    }
    if json {
        v.push("--json".into());
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn exit_code_contract(ci in 0..COMMANDS.len(), ri in 0..RINGS.len(), json in any::<bool>()) {
        let (ring, map, class) = RINGS[ri];
        let args = argv(COMMANDS[ci], ring, map, json);
        let out = go(&args.iter().map(String::as_str).collect::<Vec<_>>());
        prop_assert_eq!(out.code, expected(COMMANDS[ci], class), "{:?}: {}", args, out.stderr);
        if out.code == EXIT_OK {
            prop_assert!(out.report.is_some());
            if json {
                let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
                prop_assert_eq!(v["command"].as_str(), Some(COMMANDS[ci]));
            }
        } else {
            prop_assert!(out.stderr.starts_with("error:"));
        }
    }
}

#[test]
fn exit_code_matrix_is_exhaustive() {
    for cmd in COMMANDS {
        for (ring, map, class) in RINGS {
            let args = argv(cmd, ring, map, false);
            let out = go(&args.iter().map(String::as_str).collect::<Vec<_>>());
            assert_eq!(out.code, expected(cmd, *class), "{args:?}: {}", out.stderr);
        }
    }
}

#[test]
fn usage_and_other_codes() {
    assert_eq!(go(&[]).code, EXIT_USAGE);
    assert_eq!(go(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(go(&["classify"]).code, EXIT_USAGE);
    assert_eq!(go(&["--help"]).code, EXIT_OK);
    assert_eq!(go(&["--version"]).code, EXIT_OK);
    assert_eq!(go(&["classify", "QQ[x,y]", "--order", "lex"]).code, EXIT_USAGE);
    assert_eq!(go(&["classify", "QQ[x,y]", "--order", "deglex:q>x"]).code, EXIT_USAGE);
    assert_eq!(go(&["classify", "QQ[x,y]", "--order", "deglex:y>x"]).code, EXIT_OK);
    assert_eq!(go(&["tor", "QQ[x]", "--with", "bogus"]).code, EXIT_USAGE);
    // map problems are precondition rejections
    assert_eq!(go(&["ghost", "QQ[x,y]/(x*y)", "--map", "{x->x, y->x}"]).code, EXIT_PRECONDITION);
    assert_eq!(go(&["ghost", "QQ[x,y]/(x*y)", "--map", "{x->x+1, y->y}"]).code, EXIT_PRECONDITION);
    assert_eq!(go(&["ghost", "QQ[x,y]/(x*y)", "--map", "{x->x}"]).code, EXIT_USAGE);
    // a degree bound at the generator degree leaves the table inconclusive
    let out = go(&["betti", "QQ[x,y]/(x*y)", "--degree-bound", "3"]);
    assert_eq!(out.code, EXIT_TRUNCATED);
    assert!(out.stdout.contains("warning: syzygies"));
    assert_eq!(go(&["aq", "QQ[x]/(x^3)", "--degree-bound", "2", "--levels", "3"]).code, EXIT_TRUNCATED);
}

#[test]
fn documented_examples() {
    let out = go(&["aq", "F2[x]/(x^2)", "--levels", "4", "--json"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["aq_dims"], serde_json::json!([1, 1, 0]));
    assert_eq!(v["truncation"]["L"], 4);
    assert_eq!(v["truncation"]["D"], 10);

    let out = go(&["ghost", "QQ[x,y]/(y^3)", "--map", "{x->x,y->y^2}", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["conormal_zero"], false);
    assert_eq!(v["results"]["ci_koszul_ghost"], true);

    let out = go(&["classify", "QQ[x,y]/(x^2,x*y,y^2)"]);
    assert!(out.stdout.contains("verdict: other"));

    let out = go(&["ghost", "QQ[x,y]/(x^2,x*y,y^2)", "--map", "{x->x, y->y}", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["ci_koszul_ghost"], serde_json::Value::Null);
    assert!(v["results"]["higher_degrees"].as_str().unwrap().starts_with("undecided"));

    let out = go(&["member", "QQ[x,y]/(x*y)", "x^2*y - y*x*x + x*y"]);
    assert!(out.stdout.contains("member: true"));
}

#[test]
fn reports_are_deterministic() {
    let cases: &[&[&str]] = &[
        &["ghost", "QQ[x,y,z]/(x*y*z)", "--map", "{x->x, y->y^2, z->x*z^2}", "--json"],
        &["betti", "QQ[x,y]/(x*y)", "--json"],
        &["koszul", "QQ[x,y]/(x*y)", "--simplicial", "--levels", "3", "--json"],
        &["kunz", "F3[x,y]/(x*y)", "--homological-bound", "4", "--json"],
    ];
    for args in cases {
        let a = go(args).report.unwrap();
        let b = go(args).report.unwrap();
        assert_eq!(a.to_stable_json(), b.to_stable_json());
        assert_eq!(go(args).stdout.lines().filter(|l| !l.contains("wall_time_ms")).collect::<Vec<_>>(), go(args).stdout.lines().filter(|l| !l.contains("wall_time_ms")).collect::<Vec<_>>());
    }
}

#[test]
fn bundled_corpus_passes() {
    let out = go(&["corpus"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("8 entries"));
    assert!(out.stdout.contains(" 0 failed"));
}

#[test]
fn corpus_negative_control() {
    let wrong = corpus::BUNDLED.replace("expect.betti: (1, 2, 1, 0)", "expect.betti: (1, 2, 2, 0)");
    assert_ne!(wrong, corpus::BUNDLED);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(wrong.as_bytes()).unwrap();
    let out = go(&["corpus", f.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stdout.contains("FAIL    (1, 2, 2, 0)  (got (1, 2, 1, 0))"), "{}", out.stdout);
    assert!(out.stdout.contains(" 1 failed"));
}

#[test]
fn corpus_edge_cases() {
    let empty = tempfile::NamedTempFile::new().unwrap();
    let out = go(&["corpus", empty.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("0 entries, 0 checks, 0 failed"));
    assert_eq!(go(&["corpus", "/nonexistent/path.corpus"]).code, EXIT_USAGE);
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(b"name: a\nring: QQ[x]\nexpect.dim: 1\n").unwrap();
    let out = go(&["corpus", bad.path().to_str().unwrap()]);
    assert_eq!(out.code, EXIT_USAGE);
    assert!(out.stderr.contains("provenance tag"));
}

#[test]
fn corpus_rings_round_trip() {
    for e in corpus::parse(corpus::BUNDLED).unwrap() {
        let r = parse_ring(&e.ring).unwrap();
        let again = parse_ring(&r.to_dsl()).unwrap();
        assert_eq!(r.to_dsl(), again.to_dsl());
        assert_eq!(r.var_names(), again.var_names());
        assert_eq!(r.generators(), again.generators());
        assert!(e.expectations.iter().all(|x| !x.tag.is_empty()));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ghostring");
    let out = Command::new(bin).args(["aq", "QQ[x]/(x^2)", "--levels", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("aq_dims: (1, 1, 0)"));
    let out = Command::new(bin).args(["kunz", "QQ[x]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_PRECONDITION));
    let out = Command::new(bin).args(["classify", "QQ["]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = Command::new(bin).args(["betti", "QQ[x,y]/(x*y)", "--degree-bound", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_TRUNCATED));
}
