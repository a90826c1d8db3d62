use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ioaco::assessment::ARoI;
use ioaco::optimizer::RunResult;
use ioaco_bench::results::{write_results, ResultRow};

fn ioaco(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ioaco"))
        .args(args)
        .current_dir(dir)
        .env_remove("IOACO_OUT")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn gen_dms(dir: &Path, m: usize, count: usize) -> String {
    let out = ioaco(
        &["--seed", "4", "gen-dms", "--count", &count.to_string(), "--m", &m.to_string(), "--out-path", "dms.cfg"],
        dir,
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    fs::read_to_string(dir.join("dms.cfg")).unwrap()
}

#[test]
fn gen_dms_is_deterministic_and_prints_without_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let written = gen_dms(dir.path(), 3, 2);
    let printed = ioaco(&["--seed", "4", "gen-dms", "--count", "2", "--m", "3"], dir.path());
    assert_eq!(stdout(&printed), written);
    assert!(written.contains("[dm dm1]") && written.contains("[dm dm2]"));
    let other = ioaco(&["--seed", "5", "gen-dms", "--count", "2", "--m", "3"], dir.path());
    assert_ne!(stdout(&other), written);
}

#[test]
fn aroi_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    gen_dms(dir.path(), 3, 1);
    let args = |path: &'static str, count: &'static str| {
        ["--seed", "1", "aroi", "--problem", "dtlz2", "--m", "3", "--dm", "dms.cfg", "--count", count, "--out-path", path]
    };
    for path in ["a.json", "b.json"] {
        let out = ioaco(&args(path, "400"), dir.path());
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stdout(&out).starts_with("A-RoI: "));
    }
    let a = fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, fs::read(dir.path().join("b.json")).unwrap());
    let aroi = ARoI::from_json(&String::from_utf8(a).unwrap()).unwrap();
    assert!(!aroi.points.is_empty() && aroi.points.len() <= 400);

    let out = ioaco(&args("one.json", "1"), dir.path());
    assert_eq!(out.status.code(), Some(0));
    let one = ARoI::from_json(&fs::read_to_string(dir.path().join("one.json")).unwrap()).unwrap();
    assert_eq!(one.points.len(), 1);
}

#[test]
fn run_is_deterministic_and_reports_indicators() {
    let dir = tempfile::tempdir().unwrap();
    gen_dms(dir.path(), 3, 1);
    let aroi = ioaco(
        &["aroi", "--problem", "dtlz1", "--m", "3", "--dm", "dms.cfg", "--count", "200", "--out-path", "aroi.json"],
        dir.path(),
    );
    assert_eq!(aroi.status.code(), Some(0));
    let run = |path: &'static str| {
        ioaco(
            &[
                "--seed", "3", "run", "--problem", "dtlz1", "--m", "3", "--dm", "dms.cfg", "--kappa", "10",
                "--iterations", "5", "--aroi", "aroi.json", "--out-path", path,
            ],
            dir.path(),
        )
    };
    let first = run("r1.json");
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let text = stdout(&first);
    assert!(text.contains("evaluations: 60"), "{text}");
    assert!(text.contains("front-1 size: ") && text.contains("min_euclid="), "{text}");
    assert_eq!(run("r2.json").status.code(), Some(0));
    let r1 = fs::read_to_string(dir.path().join("r1.json")).unwrap();
    assert_eq!(r1, fs::read_to_string(dir.path().join("r2.json")).unwrap());
    assert_eq!(RunResult::from_json(&r1).unwrap().evaluations, 60);
}

#[test]
fn baseline_with_a_dm_file_warns() {
    let dir = tempfile::tempdir().unwrap();
    gen_dms(dir.path(), 3, 1);
    let out = ioaco(
        &["run", "--problem", "dtlz2", "--m", "3", "--dm", "dms.cfg", "--baseline", "--kappa", "6", "--iterations", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("warning: --baseline ignores"));
    assert!(dir.path().join("run-dtlz2-m3-baseline-s0.json").exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ioaco(&["--help"], dir.path()).status.code(), Some(0));
    assert_eq!(ioaco(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(ioaco(&["run", "--m", "3"], dir.path()).status.code(), Some(1));
    // Preference mode without a decision maker, and an unknown problem.
    assert_eq!(ioaco(&["run", "--problem", "dtlz2", "--m", "3"], dir.path()).status.code(), Some(2));
    let unknown = ioaco(&["run", "--problem", "zdt1", "--m", "3", "--baseline"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).starts_with("error: "));
    fs::write(dir.path().join("bad.cfg"), "[dm x]\nweights = 0.1,0.2; 0.1,0.2\n").unwrap();
    let bad = ioaco(&["aroi", "--problem", "dtlz2", "--m", "2", "--dm", "bad.cfg"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("bad.cfg:"), "{}", stderr(&bad));
    assert_eq!(ioaco(&["report", "missing.csv"], dir.path()).status.code(), Some(3));
}

#[test]
fn empty_plan_gives_an_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("plan.cfg"), "[plan]\nmaster_seed = 1\n").unwrap();
    let out = ioaco(&["campaign", "plan.cfg", "--out-dir", "c"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = ioaco(&["report", "c/results.csv"], dir.path());
    assert_eq!(report.status.code(), Some(0));
    assert!(stdout(&report).contains("no complete groups"));
}

fn row(algorithm: &str, seed: u64, v: f64) -> ResultRow {
    ResultRow {
        problem: "dtlz2".into(),
        m: 3,
        dm_id: "dm1".into(),
        algorithm: algorithm.into(),
        seed,
        min_euclid: v,
        avg_euclid: v,
        min_cheby: v,
        avg_cheby: v,
        evaluations: 10,
        wall_ms: 0,
    }
}

#[test]
fn report_finds_a_separated_win_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows: Vec<ResultRow> = (0..10).map(|s| row("ioaco", s, 0.01 * s as f64)).collect();
    rows.extend((0..10).map(|s| row("baseline", s, 1.0 + 0.01 * s as f64)));
    fs::write(dir.path().join("r.csv"), write_results(&rows).unwrap()).unwrap();
    let out = ioaco(&["report", "r.csv", "--json", "r.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("ioaco > baseline (1): dtlz2 m=3"), "{}", stdout(&out));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["indicators"][0]["borda"]["order"][0], "ioaco");
}

#[test]
fn report_rejects_a_foreign_header_and_skips_corrupt_rows() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.csv"), "a,b,c\n1,2,3\n").unwrap();
    assert_eq!(ioaco(&["report", "bad.csv"], dir.path()).status.code(), Some(2));

    let rows: Vec<ResultRow> = (0..5).map(|s| row("ioaco", s, 1.0)).collect();
    let mut text = String::from_utf8(write_results(&rows).unwrap()).unwrap();
    text.push_str("dtlz2,3,dm1,ioaco,9,nan,1,1,1,10,0\n");
    fs::write(dir.path().join("mixed.csv"), text).unwrap();
    let out = ioaco(&["report", "mixed.csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("warning: skipped row line 7"), "{}", stderr(&out));
}
