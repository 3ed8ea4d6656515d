//! End-to-end runs of the binary against a temporary cache.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a2count"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn small_cache(dir: &Path) {
    let o = run(dir, &["census", "--q", "3,5,7", "--weight", "8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn census_writes_three_files_and_reruns_identically() {
    let dir = tempfile::tempdir().unwrap();
    let first = run(dir.path(), &["census", "--q", "3", "--weight", "8"]);
    assert_eq!(code(&first), 0);
    let cache = dir.path().join(".a2count-cache");
    let mut names: Vec<String> =
        std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name().to_string_lossy().into_owned()).collect();
    names.sort();
    assert_eq!(names, ["q3-w8-genus1-base.json", "q3-w8-genus1-ext.json", "q3-w8-genus2.json"]);
    let bytes = std::fs::read(cache.join("q3-w8-genus2.json")).unwrap();
    let second = run(dir.path(), &["census", "--q", "3", "--weight", "8"]);
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(std::fs::read(cache.join("q3-w8-genus2.json")).unwrap(), bytes);
    let v = json(&first);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["variant_flags"]["enumeration"], "monic");
    assert_eq!(v["caches"].as_object().unwrap().len(), 3);
}

#[test]
fn operational_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["census", "--q", "2"])), 2);
    assert_eq!(code(&run(dir.path(), &["census", "--q", "15"])), 2);
    assert_eq!(code(&run(dir.path(), &["census", "--q", "17"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "--kappa", "tripled"])), 2);
    small_cache(dir.path());
    let unknown = run(dir.path(), &["congruence", "--case", "99", "--weight", "8"]);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("unknown case"));
    assert_eq!(code(&run(dir.path(), &["verify", "--weight", "8", "--row", "9,9"])), 2);
}

#[test]
fn sharded_census_equals_unsharded() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(a.path(), &["census", "--q", "13", "--weight", "4", "--shards", "8"])), 0);
    assert_eq!(code(&run(b.path(), &["census", "--q", "13", "--weight", "4"])), 0);
    for s in ["genus2", "genus1-base", "genus1-ext"] {
        let name = format!(".a2count-cache/q13-w4-{s}.json");
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap(), "{s}");
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    small_cache(dir.path());
    let o = run(dir.path(), &["verify", "--weight", "8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(run(dir.path(), &["verify", "--weight", "8"]).stdout, o.stdout);
    let v = json(&o);
    assert_eq!(v["variant_flags"]["kappa"], "doubled");
    let rows = v["rows"].as_array().unwrap();
    let find = |l: &str, m: &str, q: &str| rows.iter().find(|r| r["l"] == l && r["m"] == m && r["q"] == q).unwrap();
    // -60*3 + 60 - 31*3*12 + 156
    assert_eq!(find("6", "0", "3")["expected"], "-1080");
    assert_eq!(find("6", "0", "3")["status"], "pass");
    assert_eq!(find("1", "1", "3")["status"], "info");
    assert_eq!(find("4", "2", "5")["status"], "not-evaluable");
    let csv = run(dir.path(), &["verify", "--weight", "8", "--format", "csv", "--row", "2,0"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.contains("# flag kappa=doubled\n"));
    assert!(text.contains("l,m,q,status,expected,assembled,difference\n2,0,3,pass,-60,-60,0\n2,0,5,pass,-120,-120,0\n"));
}

#[test]
fn trace_rule_decides_the_ninth_eigenvalue() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["census", "--q", "3,9", "--weight", "8"])), 0);
    let args = ["eigenvalues", "--weight", "8", "--space", "2,6", "--isotype", "3,2,1"];
    let frob = run(dir.path(), &args);
    assert_eq!(code(&frob), 1);
    let v = json(&frob);
    assert_eq!(v["status"], "mismatch");
    let nine = v["rows"].as_array().unwrap().iter().find(|r| r["q"] == "9").unwrap().clone();
    assert_eq!((nine["value"].as_str(), nine["tabulated"].as_str()), (Some("144180"), Some("141993")));
    let hecke = run(dir.path(), &[&args[..], &["--elliptic-trace", "hecke-eigenvalue"]].concat());
    assert_eq!(code(&hecke), 0);
    let rows = json(&hecke)["rows"].as_array().unwrap().clone();
    let slopes = rows.iter().find(|r| r["kind"] == "slopes").unwrap();
    assert_eq!(slopes["value"], "2 2 9 9");
    assert_eq!(slopes["agrees"], "true");
}

#[test]
fn eigenvalues_and_calibration() {
    let dir = tempfile::tempdir().unwrap();
    small_cache(dir.path());
    let o = run(dir.path(), &["eigenvalues", "--weight", "8", "--space", "2,5", "--isotype", "2,2,1,1"]);
    assert_eq!(code(&o), 0);
    let values: Vec<String> =
        json(&o)["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap().to_string()).collect();
    assert_eq!(values, ["-40", "-1300", "3120"]);
    let c = run(dir.path(), &["calibrate", "--weight", "8"]);
    assert_eq!(code(&c), 0);
    let v = json(&c);
    let selected: Vec<&Value> = v["rows"].as_array().unwrap().iter().filter(|r| r["selected"] == "true").collect();
    assert_eq!(selected.len(), 1);
    assert_eq!(selected[0]["variant"], "kappa=doubled,normalization=plain,binomials=on,exponent=corrected");
}

#[test]
fn congruence_and_report_from_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), "q = [3]\nweight = 16\ncache-dir = \"tallies\"\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["--config", "run.toml", "census"])), 0);
    assert!(dir.path().join("tallies/q3-w16-genus2.json").exists());
    let o = run(dir.path(), &["--config", "run.toml", "congruence", "--case", "61"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let row = &json(&o)["rows"][0];
    assert_eq!((row["lambda"].as_str(), row["predicted"].as_str()), (Some("18360"), Some("170616")));
    let r = run(dir.path(), &["--config", "run.toml", "report", "--row", "4,2", "--format", "csv"]);
    let text = String::from_utf8(r.stdout).unwrap();
    assert!(text.contains("\n3,4,2,\"[2^2,1^2]\","));
    assert_eq!(text.lines().filter(|l| l.starts_with("3,4,2,")).count(), 12);
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "colour = 1\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["--config", "bad.toml", "census"])), 2);
}
