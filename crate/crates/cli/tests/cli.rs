use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn geobound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geobound")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("geobound-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn coxeter_validate_q4() {
    let o = geobound(&["coxeter", "--diagram", "q4-fig4", "--validate"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("constraints: PASS"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn coxeter_arithmeticity_verdicts() {
    let o = geobound(&["coxeter", "--diagram", "q3-fig6", "--arithmeticity"]);
    let out = stdout(&o);
    assert!(out.contains("arithmeticity: non-arithmetic"), "{out}");
    assert!(out.contains("certificate: cycle"));
    let o = geobound(&["coxeter", "--diagram", "orthoscheme-434", "--arithmeticity"]);
    assert!(stdout(&o).contains("arithmeticity: arithmetic"));
}

#[test]
fn coxeter_reads_files_and_data_directory() {
    let dir = scratch_dir("data");
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("square.txt"), "node A\nnode B\nnode C\nnode D\nA C inf\nB D inf\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_geobound"))
        .args(["coxeter", "--diagram", "square"])
        .env("GEOBOUND_DATA", &dir)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("square.txt"));

    let bad = dir.join("bad.txt");
    fs::write(&bad, "A B 4\nB C 4\nA B 3\n").unwrap();
    let o = geobound(&["coxeter", "--diagram", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_runs_a_suite_and_lists_ids_on_error() {
    let o = geobound(&["verify", "right-angled-P4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("right-angled-P4: PASS"));
    let o = geobound(&["verify", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("cusps-B") && err.contains("volume-ratio"), "{err}");
}

#[test]
fn census_writes_records_and_summary() {
    let dir = scratch_dir("census");
    let out = dir.to_str().unwrap();
    let o = geobound(&["census", "--family", "arithmetic", "--max-n", "8", "--out", out, "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let lines = fs::read_to_string(dir.join("arithmetic.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 7);
    let csv = fs::read_to_string(dir.join("arithmetic.csv")).unwrap();
    assert!(csv.starts_with("n,graphs,factorable,manifolds,vol3,chi4,K\n"));
    assert_eq!(csv.lines().count(), 5);

    // a second run resumes and appends nothing
    let again = geobound(&["census", "--family", "arithmetic", "--max-n", "8", "--out", out]);
    assert!(again.status.success());
    assert!(stdout(&again).contains("resuming: 7 records"));
    assert_eq!(fs::read_to_string(dir.join("arithmetic.jsonl")).unwrap(), lines);
    assert_eq!(fs::read_to_string(dir.join("arithmetic.csv")).unwrap(), csv);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_odd_bound_still_reports_even_rows() {
    let dir = scratch_dir("odd");
    let o = geobound(&["census", "--max-n", "7", "--out", dir.to_str().unwrap()]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.join("arithmetic.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("6,1,1,1,"));
    assert!(rows[2].starts_with("7,2,0,0,"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_is_deterministic_across_worker_counts() {
    let a = scratch_dir("jobs1");
    let b = scratch_dir("jobs4");
    for (dir, jobs) in [(&a, "1"), (&b, "4")] {
        let o = geobound(&[
            "census",
            "--family",
            "nonarithmetic",
            "--max-n",
            "6",
            "--jobs",
            jobs,
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    for file in ["nonarithmetic.jsonl", "nonarithmetic.csv"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
    fs::remove_dir_all(&a).unwrap();
    fs::remove_dir_all(&b).unwrap();
}

#[test]
fn census_exit_status_reflects_failed_flags() {
    let dir = scratch_dir("identity");
    let o = geobound(&["census", "--max-n", "6", "--gluing", "identity", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("orientable: false"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_rejects_infeasible_bounds() {
    let o = geobound(&["census", "--max-n", "14"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("feasible") && err.contains(" s"), "{err}");
}
