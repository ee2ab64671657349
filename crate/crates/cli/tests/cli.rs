//! End-to-end checks of the binary: exit codes, emitted files, metadata
//! round-trip.

use std::path::Path;
use std::process::Command;

use nonclassical_cli::config::RawConfig;
use nonclassical_cli::spec::SweepSpec;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nonclassical"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_emits_header_rows_and_reparseable_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let status = bin()
        .args([
            "sweep",
            "--family",
            "ngbs",
            "--M",
            "10",
            "--q",
            "-0.02",
            "--sweep",
            "p",
            "--from",
            "0.2",
            "--to",
            "0.8",
            "--count",
            "7",
            "--witness",
            "hoa:1",
            "--witness",
            "hoa:2",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    let text = read(&out);
    let meta: String = text
        .lines()
        .filter(|l| l.starts_with("# "))
        .map(|l| format!("{}\n", &l[2..]))
        .collect();
    let spec = SweepSpec::from_raw(&RawConfig::parse(&meta).unwrap()).unwrap();
    assert_eq!(spec.count, 7);
    assert_eq!(spec.witnesses.len(), 2);
    // spec echoed into the metadata re-parses to an equal spec
    let echoed = spec.to_raw().to_config_string();
    assert_eq!(meta, echoed);

    let data_rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data_rows.len(), 1 + 7 * 2); // header + rows
    assert!(data_rows[0].starts_with("sweep_value,criterion,order,value,nonclassical,status"));
    assert!(data_rows[1].ends_with(",ok"));
}

#[test]
fn q_sweep_tags_invalid_points_instead_of_aborting() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let status = bin()
        .args([
            "sweep", "--family", "ngbs", "--M", "10", "--p", "0.5", "--sweep", "q", "--from",
            "-0.1", "--to", "0.1", "--count", "5", "--witness", "hosps:2",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    assert!(text.contains(",invalid-params"));
    assert!(text.contains(",ok"));
}

#[test]
fn parameter_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    // unknown family
    let status = bin()
        .args(["state", "--family", "squeezed", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // odd Hong-Mandel order is rejected up front
    let status = bin()
        .args([
            "sweep", "--family", "fock", "--sweep", "n", "--from", "1", "--to", "5", "--count",
            "5", "--witness", "hong-mandel:3",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
    // usage error from clap
    let status = bin().args(["frobnicate"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn unwritable_output_exits_three() {
    let status = bin()
        .args([
            "state",
            "--family",
            "fock",
            "--n",
            "2",
            "--out",
            "/nonexistent-dir/x.csv",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn volume_cap_exceeded_exits_two_with_partial_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("vol.json");
    let status = bin()
        .args([
            "volume",
            "--family",
            "fock",
            "--n",
            "1",
            "--tolerance",
            "1e-12",
            "--resolution",
            "21",
            "--max-refinements",
            "1",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(doc["converged"], serde_json::Value::Bool(false));
    assert_eq!(doc["refinement_history"].as_array().unwrap().len(), 2);
}

#[test]
fn volume_report_carries_refinement_history() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("vol.json");
    let status = bin()
        .args([
            "volume", "--family", "fock", "--n", "1", "--tolerance", "1e-4", "--resolution",
            "101",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let doc: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(doc["converged"], serde_json::Value::Bool(true));
    let delta = doc["delta"].as_f64().unwrap();
    assert!((delta - (4.0 * (-0.5f64).exp() - 2.0)).abs() < 1e-3);
    assert!((doc["negative_volume"].as_f64().unwrap() - delta / 2.0).abs() < 1e-12);
    assert!(doc["refinement_history"].as_array().unwrap().len() >= 2);
}

#[test]
fn config_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.conf");
    let out_a = dir.path().join("a.csv");
    let out_b = dir.path().join("b.csv");
    std::fs::write(
        &cfg,
        "family = fock\nsweep = n\nfrom = 1\nto = 3\ncount = 3\nwitness = hoa:1\nout = unused.csv\n",
    )
    .unwrap();
    let run = |out: &Path, extra: &[&str]| {
        let mut c = bin();
        c.arg("sweep").arg("--config").arg(&cfg).arg("--out").arg(out);
        c.args(extra);
        assert!(c.status().unwrap().success());
    };
    run(&out_a, &[]);
    // flag overrides the witness list entirely
    run(&out_b, &["--witness", "agarwal-tara:2"]);
    assert!(read(&out_a).contains(",hoa,"));
    let b = read(&out_b);
    assert!(b.contains(",agarwal-tara,"));
    assert!(!b.contains(",hoa,"));
}

#[test]
fn grid_normalization_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let status = bin()
        .args([
            "grid",
            "--kind",
            "wigner",
            "--family",
            "fock",
            "--n",
            "0",
            "--resolution",
            "201",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = read(&out);
    let norm_line = text
        .lines()
        .find(|l| l.starts_with("# normalization"))
        .unwrap();
    let norm: f64 = norm_line.split(" = ").nth(1).unwrap().parse().unwrap();
    assert!((norm - 1.0).abs() < 1e-6, "mass {norm}");
    assert!(text.lines().any(|l| l.starts_with("x,p,value")));
}
