use std::process::Command;

use mw_tutte::cli::run_args;
use mw_tutte::cli::search::{read_csv_rows, read_json_rows};

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["mw-tutte"];
    full.extend_from_slice(args);
    let code = run_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_examples() {
    assert_eq!(
        run(&["eval", "-n", "33", "-r", "22", "-k", "2", "-x", "0", "-y", "2"]).1,
        "64127582356390782814\n"
    );
    assert_eq!(
        run(&["eval", "-n", "2", "-r", "1", "-k", "1", "-x", "1", "-y", "1"]).1,
        "2\n"
    );
    assert_eq!(
        run(&["eval", "-n", "4", "-r", "2", "-k", "2", "-x", "1", "-y", "1"]).1,
        "24\n"
    );
}

#[test]
fn eval_prints_rationals_exactly() {
    let (code, out, _) = run(&["eval", "-n", "3", "-r", "1", "-x", "1/2", "-y", "0"]);
    assert_eq!(code, 0);
    // U(3,1): x + y + y^2
    assert_eq!(out, "1/2\n~ 0.500000000000\n");
}

#[test]
fn eval_exit_codes() {
    assert_eq!(run(&["eval", "-n", "3", "-r", "4", "-x", "1", "-y", "1"]).0, 2);
    assert_eq!(run(&["eval", "-n", "3", "-r", "1", "-x", "abc", "-y", "1"]).0, 2);
    let (code, _, err) = run(&["eval", "-n", "4", "-r", "2", "-k", "2", "-x", "1", "-y", "-1"]);
    assert_eq!(code, 3);
    assert!(err.contains("degenerate"));
}

#[test]
fn eval_fallback_uses_explicit_matroid() {
    // Subset expansion of the 8-element 2-thickening of U(4,2) at (2, -1).
    let poly = mw_tutte::oracle::thicken_matroid(&mw_tutte::oracle::uniform_oracle(4, 2).unwrap(), 2)
        .unwrap()
        .subset_expansion_tutte()
        .unwrap();
    let expected = poly.eval(&mw_tutte::exact::integer(2), &mw_tutte::exact::integer(-1));
    let (code, out, err) = run(&[
        "eval",
        "-n",
        "4",
        "-r",
        "2",
        "-k",
        "2",
        "-x",
        "2",
        "-y",
        "-1",
        "--fallback-oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), expected.to_string());
    assert!(err.contains("explicit"));
    // Too large for the oracle.
    let (code, _, _) = run(&[
        "eval",
        "-n",
        "20",
        "-r",
        "10",
        "-k",
        "2",
        "-x",
        "2",
        "-y",
        "-1",
        "--fallback-oracle",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn verify_examples() {
    let (code, out, _) = run(&["verify", "-n", "33", "-r", "22", "-k", "2", "-x", "2"]);
    assert_eq!(code, 10);
    assert!(out.contains("T(x,0): 8374746166\n"));
    assert!(out.contains("T(0,x): 64127582356390782814\n"));
    assert!(out.contains("T(1,1): 811751838842880\n"));
    assert!(out.contains("ratio_real: 0.815"));
    assert!(out.contains("multiplicative: violated"));

    assert_eq!(run(&["verify", "-n", "4", "-r", "2", "-k", "1", "-x", "2"]).0, 0);
    assert_eq!(run(&["verify", "-n", "33", "-r", "22", "-k", "2", "-x", "3"]).0, 0);
    assert_eq!(run(&["verify", "-n", "4", "-r", "4", "-k", "2"]).0, 2);
    assert_eq!(run(&["verify", "-n", "4", "-r", "2", "-x", "-1"]).0, 2);
}

#[test]
fn verify_json_parses() {
    let (_, out, _) = run(&["verify", "-n", "33", "-r", "22", "-k", "2", "--json"]);
    let report: mw_tutte::MwReport = serde_json::from_str(out.trim()).unwrap();
    assert!(!report.status_mult);
    assert_eq!(report.t_11.to_string(), "811751838842880");
}

#[test]
fn search_outputs_round_trip() {
    let (code, json, err) = run(&["search", "-n", "2..12", "-k", "1..2", "-x", "5/2", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(err.contains("rows"));
    let rows = read_json_rows(&json).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.is_consistent()));

    let (_, csv, _) = run(&["search", "-n", "2..12", "-k", "1..2", "-x", "5/2", "--format", "csv"]);
    assert!(csv.starts_with("n,r,k,x,t_x0,t_0x,t_11,ratio,mult,add,max\n"));
    assert_eq!(read_csv_rows(&csv).unwrap(), rows);
}

#[test]
fn search_is_deterministic_across_thread_counts() {
    let args = ["search", "-n", "2..26", "-k", "1..2", "--format", "csv"];
    let single = run(&[&["--threads", "1"], &args[..]].concat());
    let many = run(&[&["--threads", "4"], &args[..]].concat());
    assert_eq!(single.1, many.1);
    assert_eq!(single.1, run(&args).1);
}

#[test]
fn search_alpha_family_stops_at_first() {
    let (code, out, err) = run(&[
        "search",
        "-n",
        "3..99:3",
        "--alpha",
        "2/3",
        "-k",
        "2",
        "-x",
        "2",
        "--stop-at-first",
    ]);
    assert_eq!(code, 0);
    let rows = read_json_rows(&out).unwrap();
    let last = rows.last().unwrap();
    assert_eq!((last.n, last.r, last.k), (33, 22, 2));
    assert!(err.contains("first at n=33 r=22 k=2 (66 elements)"));
}

#[test]
fn search_uniform_matroids_never_violate() {
    let (_, out, err) = run(&["search", "-n", "2..20", "-r", "all", "-k", "1", "-x", "2"]);
    assert!(err.contains("no violations"));
    assert!(read_json_rows(&out).unwrap().iter().all(|r| r.mult));
}

#[test]
fn search_edge_cases() {
    let (code, out, _) = run(&["search", "-n", "9..3"]);
    assert_eq!((code, out.as_str()), (0, ""));
    assert_eq!(run(&["search", "-n", "3..9:0"]).0, 2);
    assert_eq!(run(&["search", "-x", "-2"]).0, 2);
    assert_eq!(run(&["search", "-r", "2", "--alpha", "1/2"]).0, 2);
    assert_eq!(run(&["search", "--config", "/nonexistent/cfg"]).0, 2);
}

#[test]
fn search_config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("mw-tutte-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sweep.cfg");
    std::fs::write(
        &path,
        "# family\nn = 3..36:3\nalpha = 2/3\nk = 2\nx = 2\nstop-at-first = true\nformat = csv\nthreads = 2\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let (_, out, _) = run(&["search", "--config", p]);
    let rows = read_csv_rows(&out).unwrap();
    assert_eq!((rows.last().unwrap().n, rows.last().unwrap().r), (33, 22));

    // Flags win: x = 3 has no violation, so the whole range is emitted.
    let (_, out, err) = run(&["search", "--config", p, "-x", "3"]);
    let rows = read_csv_rows(&out).unwrap();
    assert_eq!(rows.len(), 12);
    assert!(err.contains("no violations"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn asymptote_queries() {
    let (_, out, _) = run(&["asymptote", "x0"]);
    assert_eq!(out, "x0: 2.22668159707\n");
    let (_, out, _) = run(&["asymptote", "optimal-alpha"]);
    assert_eq!(out, "alpha: 0.666666666667\nvalue: 9.00000000000\n");
    let (_, out, _) = run(&["asymptote", "exponent", "-x", "2", "-a", "0.6666666667"]);
    assert!(out.starts_with("exponent: 0.11778"));
    let (_, out, _) = run(&["asymptote", "growth", "-x", "2", "-a", "0.6666666667"]);
    assert!(out.starts_with("growth: 0.69314"));
    assert_eq!(run(&["asymptote", "exponent", "-x", "1.2"]).0, 2);
    assert_eq!(run(&["asymptote", "x0", "--tol", "0"]).0, 2);
}

#[test]
fn asymptote_empirical_table() {
    let (code, out, _) = run(&["asymptote", "empirical", "-n", "33,99"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n\texponent\tlimit\tgap");
    assert!(lines[1].starts_with("33\t0.0061"));
    assert_eq!(run(&["asymptote", "empirical", "-n", "34"]).0, 2);
}

#[test]
fn oracle_check_command() {
    let (code, out, _) = run(&["oracle-check", "--max-n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("pass")).count(), 5);
    assert_eq!(run(&["oracle-check", "-n", "30"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mw-tutte");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let counterexample = status(&["verify", "-n", "33", "-r", "22", "-k", "2", "-x", "2"]);
    assert_eq!(counterexample.status.code(), Some(10));
    let ok = status(&["eval", "-n", "33", "-r", "22", "-k", "2", "-x", "2", "-y", "0"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "8374746166\n");
    assert_eq!(status(&["eval", "-n", "2"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
