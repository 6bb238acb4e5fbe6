use std::path::PathBuf;
use std::process::{Command, Output};

use ccr_core::field::{CurveParams, PrimeField};
use ccr_core::isogeny::{elkies_step, ElkiesPolys};

fn cache(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ccr-cli-test-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn ccr(tag: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccr"))
        .args(args)
        .env("CCR_CACHE_DIR", cache(tag))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn elkies_ell5() {
    let o = ccr("e5", &["elkies", "--p", "1009", "--a", "1", "--b", "3", "--ell", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("roots=[584,664]"), "{s}");
    assert!(s.contains("sigma=584 Astar=441 Bstar=997 E4t=497"), "{s}");
    assert!(s.contains("v_root=true w_root=true phi_match=true"), "{s}");
}

#[test]
fn atkin_ell11() {
    let o = ccr("a11", &["atkin", "--p", "1009", "--a", "1", "--b", "3", "--ell", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("roots=[65,333]"), "{s}");
    assert!(s.contains("f=65 sigma=75 E4t=532 Bstar=460 Astar=395"), "{s}");
    assert!(s.contains("gcd_degree=1"), "{s}");
}

#[test]
fn atkin_prime_exits_one() {
    let f = PrimeField::from_u64(1009).unwrap();
    let polys = ElkiesPolys::build(5, &f, false).unwrap();
    let b = (1..500)
        .find(|&b| {
            CurveParams::from_i64(&f, 1, b)
                .map(|c| elkies_step(&c, 5, &polys, 0).unwrap().is_atkin())
                .unwrap_or(false)
        })
        .unwrap();
    let b = b.to_string();
    let o = ccr("atk", &["elkies", "--p", "1009", "--a", "1", "--b", &b, "--ell", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("roots=[]"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Atkin prime"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["elkies", "--p", "1000", "--a", "1", "--b", "3", "--ell", "5"],
        &["elkies", "--p", "1009", "--a", "0", "--b", "0", "--ell", "5"],
        &["atkin", "--p", "1009", "--a", "1", "--b", "3", "--ell", "13"],
        &["build", "--ell", "4", "--kind", "U"],
        &["series", "--name", "f", "--ell", "13"],
    ];
    for args in cases {
        assert_eq!(ccr("usage", args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn build_store_and_rebuild() {
    let dir = cache("build");
    let run = |extra: &[&str]| {
        let mut args = vec!["build", "--ell", "5", "--kind", "U", "--basis", "AB"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_ccr"))
            .args(&args)
            .env("CCR_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run(&[]);
    assert_eq!(first.status.code(), Some(0));
    let text = stdout(&first);
    assert!(text.starts_with("CCR kind=U ell=5 basis=AB"), "{text}");
    let cached = dir.join("U_5_AB.ccr");
    assert_eq!(std::fs::read_to_string(&cached).unwrap(), text);
    assert_eq!(run(&["--rebuild"]).status.code(), Some(0));
    std::fs::write(&cached, text.replace("-80", "-81")).unwrap();
    assert_eq!(run(&["--rebuild"]).status.code(), Some(3));
}

#[test]
fn series_and_verify() {
    let o = ccr("ser", &["series", "--name", "E4", "--prec", "3"]);
    assert_eq!(stdout(&o), "0 1\n1 240\n2 2160\n");
    let o = ccr("ver", &["verify-symbolic", "--case", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for c in ["e4t", "e6t", "a-sigma", "a-e4t"] {
        assert!(s.contains(&format!("PASS {c}")), "{s}");
    }
}
