use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn sqg(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqg"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("sqg runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn error_json(o: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(text.lines().last().unwrap()).expect("error JSON on stderr")
}

const TINY: &str =
    "lambda0 = 2\nb = 2\nbeta = 0.25\ngamma = 1\nnu = 0.5\nsteps = 2\nbase = seeded\nseed = 3\n";

#[test]
fn feasibility_passes_all_four() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("f.cfg"),
        "lambda0 = 2\nb = 1.001\nbeta = 0.3\ngamma = 1\neps0 = 1e-5\n",
    )
    .unwrap();
    let o = sqg(&["feasibility", "--config", "f.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["report"]["verdicts"].as_object().unwrap();
    assert_eq!(verdicts.len(), 4);
    assert!(verdicts.values().all(|b| b.as_bool() == Some(true)));
}

#[test]
fn feasibility_reports_range_failure() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("f.cfg"),
        "lambda0 = 2\nb = 1.001\nbeta = 0.4\ngamma = 1.4\n",
    )
    .unwrap();
    let o = sqg(&["feasibility", "--config", "f.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["constraints"]["betaRange"], false);
}

#[test]
fn verify_algebraic_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = sqg(
        &[
            "verify",
            "--check",
            "algebraic",
            "--check",
            "multiply",
            "--out",
            "rep",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let line = stdout(&o)
        .lines()
        .find(|l| l.starts_with("algebraic"))
        .unwrap()
        .to_string();
    assert!(line.ends_with("PASS"), "{line}");
    let reports: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("rep/reports.json")).unwrap())
            .unwrap();
    let first = &reports[0];
    assert_eq!(first["check"], "algebraic");
    assert!(first["maxDefect"].as_f64().unwrap() < 1e-10);
    assert_eq!(first["pass"], true);
}

#[test]
fn unknown_check_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = sqg(&["verify", "--check", "nope"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "InvalidArgument");
}

#[test]
fn export_cosine_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let f = sqg_core::TorusField::cos_mode(sqg_core::WaveVector::new(1, 0), 1.0);
    sqg_core::io::write_field(&dir.path().join("c.sqf1"), &f).unwrap();
    let o = sqg(&["export", "c.sqf1", "--format", "spectrum"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    for (row, k1) in rows.iter().zip(["-1", "1"]) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!((cols[0], cols[1]), (k1, "0"));
        assert_eq!(cols[3].parse::<f64>().unwrap(), 0.5);
    }
    let o = sqg(
        &[
            "export", "c.sqf1", "--format", "shells", "--apply", "lambda:1", "--out", "csv",
            "--quiet",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let shells = fs::read_to_string(dir.path().join("csv/c_shells.csv")).unwrap();
    assert_eq!(
        shells,
        "shell,energy\n0,0.0000000000000000e0\n1,5.0000000000000000e-1\n"
    );
}

#[test]
fn errors_are_json_with_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.cfg"),
        "lambda0 = 2\nbeta = 0.5\ngamma = 1.4\nb = 2\n",
    )
    .unwrap();
    let o = sqg(&["run", "--config", "bad.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"], "ValidationError");
    assert!(e["message"].as_str().unwrap().contains("3 - 2 gamma"));

    fs::write(
        dir.path().join("syntax.cfg"),
        "lambda0 = 2\nthis is not a pair\n",
    )
    .unwrap();
    let o = sqg(&["run", "--config", "syntax.cfg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "ParseError");

    let o = sqg(&["export", "missing.sqf1"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"], "IoError");

    fs::write(dir.path().join("junk.sqf1"), b"SQF2....").unwrap();
    let o = sqg(&["export", "junk.sqf1"], dir.path());
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"], "FormatError");

    let o = sqg(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "UsageError");
}

#[test]
fn run_then_resume_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("tiny.cfg"), TINY).unwrap();
    let o = sqg(
        &["run", "--config", "tiny.cfg", "--out", "whole", "--quiet"],
        d,
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let o = sqg(
        &[
            "run", "--config", "tiny.cfg", "--out", "split", "--quiet", "--steps", "1",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let o = sqg(
        &[
            "run",
            "--config",
            "tiny.cfg",
            "--out",
            "split",
            "--quiet",
            "--resume",
            "split/checkpoint_1",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    for f in [
        "ledger.jsonl",
        "diagnostics.jsonl",
        "series.jsonl",
        "theta.sqf1",
        "f.sqf1",
        "checkpoint_2/q.sqf1",
    ] {
        assert_eq!(
            fs::read(d.join("whole").join(f)).unwrap(),
            fs::read(d.join("split").join(f)).unwrap(),
            "{f}"
        );
    }
    let ledger = fs::read_to_string(d.join("whole/ledger.jsonl")).unwrap();
    assert_eq!(sqg_core::io::parse_ledger(&ledger).unwrap().len(), 2);
    let header: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("whole/run.json")).unwrap()).unwrap();
    assert!(header["feasibility"]["exponents"].is_object());

    // a checkpoint from different parameters is refused
    fs::write(
        d.join("other.cfg"),
        TINY.replace("beta = 0.25", "beta = 0.2"),
    )
    .unwrap();
    let o = sqg(
        &[
            "run",
            "--config",
            "other.cfg",
            "--out",
            "split",
            "--resume",
            "split/checkpoint_1",
        ],
        d,
    );
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"], "CheckpointError");
}
