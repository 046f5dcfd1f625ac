use std::fs;
use std::path::Path;

use qstable::cli::dispatch;
use qstable::homology::BettiTable;
use qstable::planner::PlanReport;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["qstable".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = dispatch(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn plan_reports_general_route() {
    let (code, out, _) = run(&["plan", "-q", "34", "-d", "1"]);
    assert_eq!(code, 0);
    let report: PlanReport = serde_json::from_str(&out).unwrap();
    assert!(report.consistent());
    assert_eq!(report.p % 34, 1);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run(&["plan", "-q", "34", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("certify"));
}

#[test]
fn malformed_points_report_line() {
    let dir = tempfile::tempdir().unwrap();
    let pts = path(dir.path(), "pts.txt");
    fs::write(&pts, "# two columns\n0 0\n1 1\n2 oops\n").unwrap();
    let (code, out, err) = run(&["tverberg", "--points", &pts, "-q", "2"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn tverberg_and_birch_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let pts = path(dir.path(), "pts.txt");
    fs::write(&pts, "0 0\n6 0\n0 6\n1/2 0.5\n5 -1\n-1 5\n2 2\n").unwrap();
    let (code, out, _) = run(&["tverberg", "--points", &pts, "-q", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"found\": true"));
    let six = path(dir.path(), "six.txt");
    fs::write(&six, "0 0\n6 0\n0 6\n1/2 0.5\n5 -1\n-1 5\n").unwrap();
    let (code, out, _) = run(&["birch", "--points", &six, "-q", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("triangles"));
    let (code, _, _) = run(&["birch", "--points", &pts, "-q", "2"]);
    assert_eq!(code, 2);
    let colors = path(dir.path(), "colors.json");
    fs::write(&colors, r#"{"mode":"rainbow","classes":[[0,1]]}"#).unwrap();
    let (code, out, _) = run(&["tverberg", "--points", &pts, "-q", "2", "--colors", &colors]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    for part in doc["certificate"]["parts"].as_array().unwrap() {
        let part: Vec<u64> = part.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        assert!(!(part.contains(&0) && part.contains(&1)));
    }
    // a triangle alone has no Radon partition
    let tri = path(dir.path(), "tri.txt");
    fs::write(&tri, "0 0\n1 0\n0 1\n").unwrap();
    let (code, out, _) = run(&["tverberg", "--points", &tri, "-q", "2"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"found\": false"));
}

#[test]
fn sigma_mode_and_shift() {
    let dir = tempfile::tempdir().unwrap();
    let sigma = path(dir.path(), "sigma.json");
    let (code, _, _) = run(&["build", "--family", "cyclic-ext", "-p", "7", "-q", "2", "-a", "2", "--out", &sigma]);
    assert_eq!(code, 0);
    let pts = path(dir.path(), "line.txt");
    fs::write(&pts, "0\n1\n2\n3\n4\n5\n").unwrap();
    let (code, out, _) = run(&["tverberg", "--points", &pts, "-q", "2", "--sigma", &sigma]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["shift", "-p", "7", "-q", "2", "-a", "2", "--sigma-plus", "1,3,5"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"m\": 5"));
    let (code, _, err) = run(&["shift", "-p", "8", "-q", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("not prime"));
}

#[test]
fn cache_is_transparent_and_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let complex = path(dir.path(), "c.json");
    let cache = path(dir.path(), "cache");
    run(&["build", "--family", "cyclic", "-p", "9", "-q", "2", "--out", &complex]);
    let (_, plain, _) = run(&["homology", "--complex", &complex, "--no-cache"]);
    let (code, first, _) = run(&["homology", "--complex", &complex, "--cache-dir", &cache]);
    assert_eq!(code, 0);
    let (_, second, err) = run(&["homology", "--complex", &complex, "--cache-dir", &cache]);
    assert_eq!(plain, first);
    assert_eq!(first, second);
    assert!(err.is_empty());
    let entry = fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    let text = fs::read_to_string(&entry).unwrap().replacen("\"rank\":0", "\"rank\":5", 1);
    fs::write(&entry, text).unwrap();
    let (_, third, err) = run(&["homology", "--complex", &complex, "--cache-dir", &cache]);
    assert_eq!(third, first);
    assert!(err.contains("warning"), "{err}");
    let table: BettiTable = serde_json::from_str(&third).unwrap();
    assert_eq!(table.bettis(), vec![0, 0, 0, 2, 0]);
    fs::write(&entry, "not json").unwrap();
    let (_, fourth, err) = run(&["homology", "--complex", &complex, "--cache-dir", &cache]);
    assert_eq!(fourth, first);
    assert!(err.contains("warning"));
}

#[test]
fn manifests_replay_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = path(dir.path(), "m.json");
    let out = path(dir.path(), "report.csv");
    let (code, _, _) = run(&["trials", "--kind", "tverberg", "-q", "3", "-d", "1", "--trials", "20", "--seed", "9", "--out", &out, "--manifest", &manifest]);
    assert_eq!(code, 0);
    let (code, replayed, err) = run(&["replay", &manifest]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(replayed, fs::read_to_string(&out).unwrap());
    let edited = fs::read_to_string(&manifest).unwrap().replace("\"9\"", "\"10\"").replace("--seed\",\n    \"9", "--seed\",\n    \"10");
    fs::write(&manifest, edited).unwrap();
    let (code, _, err) = run(&["replay", &manifest]);
    assert_eq!(code, 1);
    assert!(err.contains("DIFFERENT"));
}

#[test]
fn certify_csv_columns() {
    let (code, out, _) = run(&["certify", "--claim", "5.5", "--q", "2,3", "--a-max", "3"]);
    assert_eq!(code, 0, "{out}");
    let header = out.lines().next().unwrap();
    assert!(header.ends_with("expected,pass,witness_ref"), "{header}");
    let (code, out, _) = run(&["certify", "--claim", "kozlov", "--r-max", "8", "--format", "json"]);
    assert_eq!(code, 1);
    assert!(out.contains("\"pass\": false"));
}

#[test]
fn witness_uses_seed() {
    let (code, a, _) = run(&["witness", "-q", "3", "-d", "2", "--seed", "4"]);
    assert_eq!(code, 0);
    let (_, b, _) = run(&["witness", "-q", "3", "-d", "2", "--seed", "4"]);
    assert_eq!(a, b);
    let (code, _, _) = run(&["witness", "-q", "5", "-d", "3"]);
    assert_eq!(code, 2);
}
