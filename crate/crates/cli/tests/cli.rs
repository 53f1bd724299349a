//! Exit-code contract, output formats and determinism of the binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_borosmoll"));
    c.env_remove("BOROSMOLL_OUT_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8(o.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn of_kind<'a>(v: &'a [Value], kind: &str) -> Vec<&'a Value> {
    v.iter().filter(|r| r["record"] == kind).collect()
}

fn without_wall_time(text: &[u8]) -> String {
    String::from_utf8(text.to_vec())
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            if let Some(o) = v.as_object_mut() {
                o.remove("wall_time_us");
            }
            serde_json::to_string(&v).unwrap()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn coeffs_exit_codes() {
    let o = run(&["coeffs", "--m-max", "10"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    let rows = of_kind(&v, "row");
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|r| r["engines_agree"] == true && r["residuals_zero"] == true));
    assert_eq!(v.last().unwrap()["pass"], true);

    let o = run(&["coeffs", "--m-max", "0"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    assert_eq!(of_kind(&v, "row").len(), 1);
    assert_eq!(v[0]["scaled"].to_string(), "[1]");

    let o = run(&["coeffs", "--m-max", "6", "--perturb", "4:2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL coeffs m=4"));

    assert_eq!(code(&run(&["coeffs", "--bogus"])), 2);
    assert_eq!(code(&run(&["coeffs", "--m-min", "5", "--m-max", "3"])), 2);
    assert_eq!(code(&run(&["coeffs"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn row_export_is_exact() {
    let v = lines(&run(&["coeffs", "--m-min", "2", "--m-max", "2"]));
    // d(2) = [21/8, 15/4, 3/2], times 2^4
    assert_eq!(v[0]["scaled"].to_string(), "[42,60,24]");
    assert_eq!(v[0]["den_pow2"], 4);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--theorems", "2lc,thm15,ratio_bounds", "--m-max", "30"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    let verdicts = of_kind(&v, "verdict");
    assert_eq!(verdicts.len(), 3 * 29);
    assert!(verdicts.iter().all(|r| r["pass"] == true));

    assert_eq!(code(&run(&["verify", "--theorems", "nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "--theorems", "sign:nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "--theorems", "2lc", "--m-min", "1"])), 2);
    assert_eq!(code(&run(&["verify", "--theorems", "2lc", "--i-stride", "0"])), 2);
    assert_eq!(code(&run(&["verify"])), 2);
    assert_eq!(code(&run(&["verify", "--theorems", "identities", "--poly-table", "/nonexistent/x"])), 2);

    let o = run(&["verify", "--theorems", "list"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("thm15"));
}

#[test]
fn tampered_table_fails_identities() {
    let dir = tempfile::tempdir().unwrap();
    let text = borosmoll_core::PolyTable::builtin_text().replacen("\nK 5 4 16\n", "\nK 5 4 17\n", 1);
    assert_ne!(text, borosmoll_core::PolyTable::builtin_text());
    let path = dir.path().join("tampered.txt");
    std::fs::write(&path, text).unwrap();
    let o = run(&["verify", "--theorems", "identities", "--poly-table", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let v = lines(&o);
    assert_eq!(v[0]["matches_builtin"], false);
    let failed: Vec<&str> = of_kind(&v, "identity")
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["theorem"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"k_difference"), "{failed:?}");
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL k_difference"));

    let missing = dir.path().join("short.txt");
    std::fs::write(&missing, "K 0 0 1\n").unwrap();
    assert_eq!(code(&run(&["verify", "--theorems", "identities", "--poly-table", missing.to_str().unwrap()])), 2);
}

#[test]
fn roots_exit_codes() {
    let o = run(&["roots", "--which", "Q", "--m-max", "20"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    let recs = of_kind(&v, "roots");
    assert_eq!(recs.len(), 20);
    assert!(recs.iter().all(|r| r["real_rooted"] == true));

    let o = run(&["roots", "--which", "P", "--m-min", "2", "--m-max", "5"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    assert!(of_kind(&v, "roots").iter().all(|r| r["real_rooted"] == false));

    // P_1 is linear, so nothing in the sweep fails to be real-rooted.
    assert_eq!(code(&run(&["roots", "--which", "P", "--m-max", "1"])), 1);
    assert_eq!(code(&run(&["roots", "--which", "X", "--m-max", "3"])), 2);
    assert_eq!(code(&run(&["roots", "--which", "Q", "--m-min", "0", "--m-max", "3"])), 2);
}

#[test]
fn depth_exit_codes() {
    let o = run(&["depth", "--m-max", "30", "--max-k", "2"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    let d = of_kind(&v, "depth");
    assert_eq!(d.len(), 31);
    assert!(d.iter().all(|r| r["depth"] == 2));
    assert_eq!(of_kind(&v, "verdict")[0]["theorem"], "depth_at_least_2");

    let o = run(&["depth", "--m-max", "12", "--max-k", "5"]);
    assert_eq!(code(&o), 0);
    let v = lines(&o);
    assert!(of_kind(&v, "depth").iter().all(|r| r["depth"].as_u64().unwrap() >= 2));
    assert_eq!(of_kind(&v, "verdict")[0]["theorem"], "depth_at_least_2");

    // 1,4,6,4,1 -> L: 1,10,20,10,1 -> L^2: 1,80,300,80,1, all log-concave
    let o = run(&["depth", "--sequence", "1,4,6,4,1", "--max-k", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["depth"], 3);

    // 1,1,2 fails a_1^2 >= a_0 a_2
    let o = run(&["depth", "--sequence", "1,1,2", "--max-k", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(lines(&o)[0]["depth"], 0);

    assert_eq!(code(&run(&["depth", "--max-k", "2"])), 2);
    assert_eq!(code(&run(&["depth", "--m-max", "5", "--max-k", "0"])), 2);
    assert_eq!(code(&run(&["depth", "--sequence", "1,x"])), 2);
    assert_eq!(code(&run(&["depth", "--sequence", "1,2", "--m-max", "4"])), 2);
}

#[test]
fn identical_config_identical_bytes() {
    let args = ["verify", "--theorems", "2lc,thm14,thm44,sign:U", "--m-max", "40", "--jobs", "4"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(without_wall_time(&a.stdout), without_wall_time(&b.stdout));

    // Record order does not depend on the worker count.
    let one = run(&["verify", "--theorems", "2lc,thm14,thm44,sign:U", "--m-max", "40", "--jobs", "1"]);
    let body = |o: &Output| {
        let mut v = lines(o);
        v.pop();
        v
    };
    assert_eq!(body(&a), body(&one));
}

#[test]
fn env_var_sets_default_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .env("BOROSMOLL_OUT_DIR", dir.path())
        .args(["coeffs", "--m-max", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("coeffs.jsonl")).unwrap();
    assert_eq!(written.lines().count(), 5);

    let explicit = dir.path().join("nested").join("r.csv");
    let o = bin()
        .env("BOROSMOLL_OUT_DIR", dir.path())
        .args(["roots", "--which", "R", "--m-max", "4", "--format", "csv", "--out"])
        .arg(&explicit)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(Path::new(&explicit).exists());
    assert!(!dir.path().join("roots.csv").exists());
}

#[test]
fn csv_output() {
    let o = run(&["roots", "--which", "R", "--m-max", "4", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..6], ["record", "poly", "m", "real_roots", "sqfree_deg", "real_rooted"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    // four roots rows, one verdict, one summary
    assert_eq!(rows.len(), 6);
    assert_eq!(&rows[0][0], "roots");
    assert_eq!(&rows[5][0], "summary");
}
