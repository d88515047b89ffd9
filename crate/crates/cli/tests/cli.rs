use std::process::{Command, Output};

use hermseq::complexity::{complexity_profile, DEFAULT_MONOMIAL_BUDGET};
use hermseq::report::read_complexity_csv;
use hermseq::{build_sequence, FieldCtx};

fn hermseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn q2_sequence_rows() {
    let text = stdout(&hermseq(&["sequence", "--p", "2"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,i,j,value");
    assert_eq!(lines.len(), 5);
    let coords: Vec<(&str, &str, &str)> = lines[1..]
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0], f[1], f[2])
        })
        .collect();
    assert_eq!(
        coords,
        [
            ("1", "1", "1"),
            ("2", "1", "2"),
            ("3", "2", "1"),
            ("4", "2", "2")
        ]
    );
    assert!(lines[1..].iter().all(|l| !l.ends_with(",0:0")));
}

#[test]
fn output_is_deterministic() {
    let args = ["sequence", "--p", "3", "--ell", "3"];
    assert_eq!(stdout(&hermseq(&args)), stdout(&hermseq(&args)));
}

#[test]
fn csv_round_trip_matches_in_process_complexity() {
    let dir = tempfile::tempdir().unwrap();
    let seq_path = dir.path().join("seq.csv");
    let seq_arg = seq_path.to_str().unwrap();
    stdout(&hermseq(&[
        "sequence", "--p", "3", "--ell", "3", "--out", seq_arg,
    ]));
    let text = stdout(&hermseq(&[
        "complexity",
        "--p",
        "3",
        "--input",
        seq_arg,
        "--k-range",
        "1-3",
    ]));
    let rows = read_complexity_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 21 * 3 * 2);

    let f9 = FieldCtx::new(3, 1, None).unwrap();
    let s = build_sequence(&f9, f9.epsilon(), 3).unwrap();
    for row in rows {
        let direct =
            complexity_profile(&f9, &s.terms()[..row.n], row.mode, DEFAULT_MONOMIAL_BUDGET)
                .unwrap();
        assert_eq!(direct[row.n - 1], row.result, "n = {}", row.n);
    }
}

#[test]
fn complexity_of_selected_prefixes() {
    let text = stdout(&hermseq(&[
        "complexity",
        "--p",
        "2",
        "--k",
        "1",
        "--n",
        "4",
        "--mode",
        "per-variable",
    ]));
    assert_eq!(
        text,
        "n,k,mode,result_kind,value_or_lo,hi\n4,1,per-variable,exact,2,2\n"
    );
}

#[test]
fn tiny_budget_reports_a_bracket() {
    let text = stdout(&hermseq(&[
        "complexity",
        "--p",
        "3",
        "--k",
        "2",
        "--n",
        "21",
        "--budget",
        "1",
    ]));
    assert!(text.contains(",bracket,"), "{text}");
}

#[test]
fn figure_endpoints() {
    let fig1 = stdout(&hermseq(&["figures", "--preset", "fig1"]));
    let lines: Vec<&str> = fig1.lines().collect();
    assert_eq!(lines[0], "n,N1,N2");
    assert!(lines[1].starts_with("1023,"));
    assert_eq!(*lines.last().unwrap(), "32704,170.171875,92.909091");

    let fig2 = stdout(&hermseq(&["figures", "--preset", "fig2"]));
    assert_eq!(fig2.lines().next(), Some("n,L1,L2"));
    assert_eq!(fig2.lines().last(), Some("32704,50.081288,47.714286"));
}

#[test]
fn bounds_table_has_all_formulas() {
    let text = stdout(&hermseq(&[
        "bounds",
        "--p",
        "3",
        "--k-range",
        "1-2",
        "--n-range",
        "8-9",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0].split(',').count(), 16);
    assert!(lines[1].starts_with("8,3,1,3,"));
}

#[test]
fn verify_passes_by_default() {
    let out = hermseq(&["verify"]);
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_detects_injected_fault() {
    // Every bound at q = 2 is trivial, so the fault only shows from q = 3.
    let out = hermseq(&["verify", "--q", "3", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["sequence"][..],
        &["sequence", "--p", "4"],
        &["sequence", "--p", "3", "--ell", "5"],
        &["sequence", "--p", "3", "--a", "0:0"],
        &["complexity", "--p", "2"],
        &["complexity", "--p", "2", "--k", "1", "--n-range", "3-1"],
        &["complexity", "--p", "2", "--k", "1", "--n", "5"],
        &["complexity", "--p", "2", "--k", "1", "--budget", "0"],
        &["bounds", "--p", "4", "--k", "1"],
        &["figures", "--preset", "fig3"],
    ] {
        let out = hermseq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn thread_count_from_environment() {
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_hermseq"))
            .args(["sequence", "--p", "2"])
            .env("HERMSEQ_THREADS", value)
            .output()
            .unwrap()
    };
    assert!(run("2").status.success());
    assert_eq!(run("zero").status.code(), Some(2));
}
