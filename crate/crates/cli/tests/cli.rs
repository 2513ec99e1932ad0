use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_rankforge"));
    c.env_remove("RANKFORGE_SEED");
    c
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let Output { status, stdout, stderr } = cmd.output().expect("spawn");
    (
        status.code().unwrap_or(-1),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn gen(name: &str, dims: [usize; 4], seed: u64, with_solution: bool) -> PathBuf {
    let path = tmp(name);
    let [m, n, k, r] = dims.map(|v| v.to_string());
    let mut cmd = bin();
    cmd.args(["gen", "--q", "2", "--m", &m, "--n", &n, "--k", &k, "--r", &r, "--seed", &seed.to_string()])
        .arg("--out")
        .arg(&path);
    if with_solution {
        cmd.arg("--with-solution");
    }
    let (code, _, err) = run(&mut cmd);
    assert_eq!(code, 0, "{err}");
    path
}

fn value<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

/// Report lines that should not change between identical runs.
fn stable(report: &str) -> Vec<&str> {
    report.lines().filter(|l| !l.starts_with("elapsed_ms")).collect()
}

#[test]
fn gen_then_lin_solves() {
    let path = gen("lin.rsd", [10, 12, 2, 3], 7, true);
    let (code, out, _) = run(bin().args(["solve", "--attack", "lin", "--in"]).arg(&path));
    assert_eq!(code, 0, "{out}");
    assert_eq!(value(&out, "outcome"), Some("solved"));
    assert_eq!(value(&out, "matches_hidden"), Some("true"));
}

#[test]
fn lin_is_infeasible_on_large_rows() {
    let path = gen("loidreau.rsd", [24, 64, 12, 6], 1, false);
    let (code, out, _) = run(bin().args(["solve", "--attack", "lin", "--in"]).arg(&path));
    assert_eq!(code, 2);
    assert_eq!(value(&out, "outcome"), Some("infeasible"));
    let (code, out, _) = run(bin().args(["solve", "--attack", "brute", "--in"]).arg(&path));
    assert_eq!(code, 2);
    assert!(value(&out, "reason").unwrap().contains("subspaces"));
}

#[test]
fn failure_exit_code() {
    let path = gen("capped.rsd", [10, 12, 2, 3], 3, false);
    let (code, out, _) = run(bin()
        .args(["solve", "--attack", "es1", "--max-trials", "1", "--seed", "1", "--in"])
        .arg(&path));
    // one trial at success probability ~1/64 almost surely fails
    assert_eq!(code, 1, "{out}");
    assert_eq!(value(&out, "outcome"), Some("failed"));
}

#[test]
fn reports_are_reproducible() {
    let path = gen("repro.rsd", [6, 8, 2, 2], 4, false);
    let solve = |extra: &[&str], env: Option<&str>| {
        let mut cmd = bin();
        cmd.args(["solve", "--attack", "es1", "--in"]).arg(&path).args(extra);
        if let Some(s) = env {
            cmd.env("RANKFORGE_SEED", s);
        }
        run(&mut cmd).1
    };
    let a = solve(&["--seed", "11"], None);
    let b = solve(&["--seed", "11"], None);
    assert_eq!(stable(&a), stable(&b));
    let c = solve(&["--seed", "11", "--workers", "4"], None);
    assert_eq!(value(&a, "trials"), value(&c, "trials"));
    assert_eq!(value(&a, "solution_digest"), value(&c, "solution_digest"));
    let from_env = solve(&[], Some("11"));
    assert_eq!(value(&from_env, "seed"), Some("11"));
    assert_eq!(value(&from_env, "trials"), value(&a, "trials"));
    let flag_wins = solve(&["--seed", "12"], Some("11"));
    assert_eq!(value(&flag_wins, "seed"), Some("12"));
}

#[test]
fn every_attack_runs_from_the_command_line() {
    let path = gen("small.rsd", [5, 6, 1, 2], 9, true);
    for attack in ["es1", "es2", "lin", "hybrid", "brute"] {
        let (code, out, _) = run(bin().args(["solve", "--attack", attack, "--in"]).arg(&path));
        assert_eq!(code, 0, "{attack}: {out}");
        assert_eq!(value(&out, "attack"), Some(attack));
    }
}

#[test]
fn export_writes_polysys() {
    let path = gen("export.rsd", [8, 10, 3, 2], 2, false);
    let out_path = tmp("export.poly");
    let (code, _, err) = run(bin()
        .args(["export", "--guess", "c2=5", "--in"])
        .arg(&path)
        .arg("--out")
        .arg(&out_path));
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "POLYSYS 1");
    assert!(lines[1].starts_with("field q 2 m 8 modulus "));
    assert_eq!(lines[2], "vars p 0..1 c 1..3");
    assert_eq!(lines[3], "guess c2 = 5");
    assert_eq!(lines.iter().filter(|l| l.starts_with("eq ")).count(), 10);
    assert!(!text.contains("*c2^"));

    let (code, _, err) = run(bin().args(["export", "--guess", "c9=1", "--in"]).arg(&path).arg("--out").arg(&out_path));
    assert_eq!(code, 1);
    assert!(err.contains("c9"));
}

#[test]
fn estimate_prints_every_column() {
    let (code, out, _) = run(bin().args(["estimate", "--n", "12", "--k", "2", "--r", "3", "--m", "10"]));
    assert_eq!(code, 0);
    for key in ["chabaud_stern", "oj_basis", "oj_coords", "es_v1", "es_v2", "es", "linearization", "hybrid_t", "hybrid"] {
        assert!(value(&out, key).is_some(), "{key} missing");
    }
    assert!(value(&out, "linearization").unwrap().starts_with("10.38"));
    let (code, out, _) = run(bin().args(["estimate", "--paper-tables"]));
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("row ")).count(), 6);
}

#[test]
fn malformed_instance_is_an_error() {
    let path = tmp("bad.rsd");
    std::fs::write(&path, "RSD 1\nq 2 m 4 n 3 k 1 r 1\nmodulus 1 1 0 0 1\nG\n1 2\n").unwrap();
    let (code, _, err) = run(bin().args(["solve", "--attack", "lin", "--in"]).arg(&path));
    assert_eq!(code, 1);
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn smoke_bench_passes() {
    let (code, out, _) = run(bin().args(["bench", "--suite", "smoke", "--seed", "3"]));
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}
