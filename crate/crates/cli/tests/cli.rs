//! End-to-end runs of the `cyclic-rips` binary.

use std::fs;
use std::process::{Command, Output};

use cyclic_rips::output::{
    from_csv, BinsSummary, CechReport, ClassifyReport, CouplingSummary, DismantleReport, HomologyReport, LookupReport,
    MeanRow, StepRow, ThresholdSummary, WfReport,
};
use cyclic_rips_core::rational::ratio;
use serde::de::DeserializeOwned;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-rips")).args(args).env_remove("CYCLIC_RIPS_SEED").output().unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn points_file(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn classify_cycle_power() {
    let rep: ClassifyReport = json(&["classify", "--cnk", "6", "2"]);
    assert_eq!(rep.wf, "1/3");
    assert_eq!(rep.core, [6, 2]);
    assert_eq!(rep.homotopy_type, "wedge(1) of S^2");
    assert_eq!(rep.homology.betti.get(&2), Some(&1));
}

#[test]
fn classify_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let x = points_file(&dir, "x.txt", "# five points\n0\n1/8\n1/4\n0.5\n3/4\n");
    let rep: ClassifyReport = json(&["classify", "--points", &x, "--r", "1/4", "--leq"]);
    assert_eq!(rep.homotopy_type, "S^1");
    assert_eq!(rep.core, [4, 1]);
    let d: DismantleReport = json(&["dismantle", "--points", &x, "--r", "1/4"]);
    assert_eq!(d.trace, vec![1]);
    assert_eq!(d.survivors, vec![0, 2, 3, 4]);
    let w: WfReport = json(&["wf", "--points", &x, "--r", "1/4", "--strict"]);
    assert_eq!(w.wf, "0/1");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["classify", "--cnk", "3", "2"][..],
        &["classify", "--cnk", "6", "2", "--points", "x.txt"],
        &["lookup", "--r", "1/2"],
        &["lookup", "--r", "abc"],
        &["classify", "--points", "/nonexistent/points.txt", "--r", "1/4"],
        &["evolve", "--r", "1/3", "--max-n", "10"],
        &["bins", "--m", "2", "--K", "10", "--trials", "0"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = points_file(&dir, "bad.txt", "0\n1/2\nnope\n");
    let out = run(&["homology", "--points", &bad, "--r", "1/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn lookup_examples() {
    let rep: LookupReport = json(&["lookup", "--r", "1/3"]);
    assert_eq!(rep.r, ratio(1, 3));
    let kind = |k: &str| rep.complexes.iter().find(|c| c.kind == k).unwrap().clone();
    assert_eq!(kind("vr<").homotopy_type, "S^1");
    assert_eq!(kind("vr<=").homotopy_type, "wedge(continuum) of S^2");
    assert!(kind("vr<=").homology.is_none());
    let i = kind("vr<").interval;
    assert_eq!((i.lo, i.hi, i.lo_closed, i.hi_closed), (ratio(0, 1), ratio(1, 3), false, true));
    let rep: LookupReport = json(&["lookup", "--r", "1/4"]);
    assert_eq!(rep.complexes.iter().find(|c| c.kind == "cech<").unwrap().homotopy_type, "S^1");
}

#[test]
fn homology_dump() {
    let rep: HomologyReport = json(&["homology", "--cnk", "8", "3"]);
    assert_eq!(rep.vertices, 8);
    assert_eq!(rep.homology.betti.get(&3), Some(&1));
    assert_eq!(rep.f_vector[0], 8);
    let out = run(&["homology", "--cnk", "17", "1"]);
    assert_eq!(out.status.code(), Some(2), "cap");
}

#[test]
fn cech_transform_of_square() {
    let dir = tempfile::tempdir().unwrap();
    let x = points_file(&dir, "x4.txt", "0\n1/4\n1/2\n3/4\n");
    let rep: CechReport = json(&["cech", "--points", &x, "--r", "1/8"]);
    assert!(rep.passed);
    assert_eq!(rep.transformed, (0..5).map(|i| ratio(i, 5)).collect::<Vec<_>>());
    assert_eq!(rep.vr_scale, ratio(1, 5));
}

#[test]
fn evolve_series_and_summary() {
    let out = run(&["evolve", "--r", "0.38", "--trials", "3", "--max-n", "60", "--seed", "7"]);
    assert!(out.status.success());
    let rows: Vec<StepRow> = from_csv(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(rows.len(), 180);
    assert!(rows.iter().all(|r| r.wf_num * 100 <= r.wf_den * 38));
    let means: Vec<MeanRow> = json(&[
        "evolve", "--r", "0.38", "--trials", "3", "--max-n", "60", "--seed", "7", "--means", "--format", "json",
    ]);
    assert_eq!(means.len(), 60);
    let s: ThresholdSummary =
        json(&["evolve", "--r", "1/5", "--trials", "4", "--max-n", "5000", "--summary", "--format", "json"]);
    assert_eq!((s.l, s.trials), (0, 4));
    assert_eq!(s.delta, ratio(1, 5));
    assert_eq!(s.n.reached, 4);
}

#[test]
fn seeds_come_from_environment() {
    let base = ["bins", "--m", "3", "--K", "20", "--trials", "5", "--format", "csv"];
    let with_env = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_cyclic-rips"))
            .args(base)
            .env("CYCLIC_RIPS_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    let explicit = run(&[&base[..], &["--seed", "42"]].concat()).stdout;
    assert_eq!(with_env("42"), explicit);
    assert_ne!(with_env("43"), explicit);
}

#[test]
fn bins_and_coupling_summaries() {
    let s: BinsSummary = json(&["bins", "--m", "2", "--K", "365", "--trials", "2000", "--seed", "1"]);
    assert_eq!((s.m, s.k, s.trials), (2, 365, 2000));
    assert!(s.mean_a <= s.mean_c && s.mean_c <= s.mean_b);
    assert!((s.good_probability - 0.5).abs() < 1e-12);
    // E[A_2(365)] is the birthday number, about 24.6.
    assert!((s.mean_a - 24.6).abs() < 1.5, "{}", s.mean_a);
    let c: CouplingSummary = json(&["regular-coupling", "--m", "3", "--K", "10", "--trials", "50"]);
    assert_eq!(c.violations, 0);
    assert_eq!(c.eps, ratio(1, 30));
}

#[test]
fn output_file_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.json");
    let p = path.to_str().unwrap();
    assert!(run(&["classify", "--cnk", "8", "3", "--output", p]).status.success());
    let rep: ClassifyReport = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep.homotopy_type, "S^3");
    // A failing run leaves the previous file and no temporaries.
    assert_eq!(run(&["classify", "--cnk", "4", "2", "--output", p]).status.code(), Some(2));
    assert_eq!(serde_json::from_str::<ClassifyReport>(&fs::read_to_string(&path).unwrap()).unwrap(), rep);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}
