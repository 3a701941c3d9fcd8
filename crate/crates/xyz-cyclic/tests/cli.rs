//! End-to-end checks of the `xyzc` binary: report formats, CSV schemas,
//! error handling and determinism.

use std::process::Command;

fn xyzc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xyzc"))
}

#[test]
fn construct_reports_structure() {
    let out = xyzc().args(["construct", "-a", "5", "-b", "0"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n=17"));
    assert!(text.contains("k=1"));
    assert!(text.contains("repetition_X=yes"));
    assert!(text.contains("repetition_Z=yes"));
    assert!(text.contains("repetition_Y=yes"));
}

#[test]
fn construct_k3_marks_repetition_inapplicable() {
    let out = xyzc().args(["construct", "-a", "2", "-b", "2"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("k=3"));
    assert!(text.contains("repetition=inapplicable"));
}

#[test]
fn construct_seed_row_label() {
    let out = xyzc().args(["construct", "-a", "0", "-b", "0"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s1=XZYIYZX"));
}

#[test]
fn distance_with_exact_confirmation() {
    let out = xyzc()
        .args([
            "distance", "-a", "5", "-b", "0", "--trials", "300", "--seed", "1",
            "--osd-order", "2", "--exact", "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("d_x_up=5"));
    assert!(text.contains("exact_distance=5"));
}

#[test]
fn witness_commands() {
    let out = xyzc().args(["witness", "x", "-b", "0", "-l", "1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("witness=IIXIIIIXIIIIXII"));
    assert!(text.contains("weight=3"));

    let out = xyzc().args(["witness", "y", "-a", "8", "-b", "1"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("weight=7"));
}

#[test]
fn sweep_rejects_zero_trials() {
    let dir = tempdir();
    let cfg = dir.join("sweep.toml");
    std::fs::write(
        &cfg,
        "codes = [[5,0]]\nnoise = \"pure_z\"\np_grid = [0.3]\ntrials = 0\nseed = 1\n",
    )
    .unwrap();
    let out = xyzc().args(["sweep", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error:"), "stderr was {err:?}");
}

#[test]
fn sweep_is_byte_identical_and_schema_stable() {
    let dir = tempdir();
    let cfg = dir.join("sweep.toml");
    std::fs::write(
        &cfg,
        "codes = [[5,0],[8,1]]\nnoise = \"pure_z\"\np_grid = [0.3, 0.45]\ntrials = 500\nseed = 9\n",
    )
    .unwrap();
    let run = || {
        let out = xyzc().args(["sweep", "--config"]).arg(&cfg).output().unwrap();
        assert!(out.status.success());
        out.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    let text = String::from_utf8(first).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# xyzc sweep schema v1"));
    assert_eq!(
        lines.next(),
        Some("a,b,n,noise_kind,eta,p,trials,failures,p_logical,stderr,seed")
    );
    assert_eq!(lines.count(), 4);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempdir();
    let path = dir.join("report.txt");
    let out = xyzc()
        .args(["--out"])
        .arg(&path)
        .args(["construct", "-a", "5", "-b", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("n=17"));
}

#[test]
fn unknown_noise_kind_is_an_error() {
    let dir = tempdir();
    let cfg = dir.join("sweep.toml");
    std::fs::write(
        &cfg,
        "codes = [[5,0]]\nnoise = \"gaussian\"\np_grid = [0.3]\ntrials = 10\nseed = 1\n",
    )
    .unwrap();
    let out = xyzc().args(["sweep", "--config"]).arg(&cfg).output().unwrap();
    assert!(!out.status.success());
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("xyzc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
