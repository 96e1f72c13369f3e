use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn coble(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coble"))
        .args(args)
        .current_dir(dir)
        .env("COBLE_CACHE_DIR", dir.join("cache"))
        .output()
        .expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn failing_checks(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for s in v["suites"].as_array().unwrap() {
        for c in s["checks"].as_array().unwrap() {
            if c["status"] == "fail" {
                assert!(c["witness"]["known_deviation"].is_string(), "{c}");
                out.push((s["suite"].as_str().unwrap().to_string(), c["name"].as_str().unwrap().to_string()));
            }
        }
    }
    out
}

#[test]
fn root_counts() {
    let dir = tempfile::tempdir().unwrap();
    let o = coble(dir.path(), &["roots", "5"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "A4: 20 roots\n");
    let v = json_of(&coble(dir.path(), &["roots", "2", "--json"]));
    assert_eq!(v["count"], 126);
    assert_eq!(v["positive"], 63);
    let v = json_of(&coble(dir.path(), &["roots", "3", "--type", "3A2", "--json"]));
    assert_eq!(v["count"], 40);
    assert_eq!(v["subsystems"].as_array().unwrap().len(), 40);
    let o = coble(dir.path(), &["roots", "2", "--type", "7A1", "--split-s7"]);
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("7A1 in E7: 135") && text.contains("type (A): 105") && text.contains("type (B): 30"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["roots", "4", "--type", "2A1+A2", "--json"];
    let first = coble(dir.path(), &args);
    let second = coble(dir.path(), &args);
    let fresh = coble(dir.path(), &[&args[..], &["--no-cache"]].concat());
    assert_eq!(String::from_utf8_lossy(&first.stderr), "cache: written\n");
    assert_eq!(String::from_utf8_lossy(&second.stderr), "cache: hit\n");
    assert!(fresh.stderr.is_empty());
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fresh.stdout);
    assert_eq!(json_of(&first)["count"], 40);
    assert!(dir.path().join("cache/v1/subsystems_d4_2A1+A2.json").exists());
}

#[test]
fn corrupt_cache_is_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache/v1/subsystems_d3_3A2.json");
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(&path, "{\"format_version\": 1, \"lattice\": {\"d\": 4}}").unwrap();
    let o = coble(dir.path(), &["roots", "3", "--type", "3A2"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stderr), "cache: written\n");
    assert_eq!(String::from_utf8_lossy(&o.stdout), "3A2 in E6: 40\n");
}

#[test]
fn covariant_export() {
    let dir = tempfile::tempdir().unwrap();
    for (d, degree, count, dim) in [(3, 9, 40, 10), (2, 7, 135, 15), (4, 10, 12, 6), (5, 10, 1, 1)] {
        let out = dir.path().join(format!("cov{d}.json"));
        let o = coble(dir.path(), &["covariants", &d.to_string(), "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        assert_eq!(
            String::from_utf8_lossy(&o.stdout),
            format!("d={d}: degree {degree}, count {count}, dimension {dim}\n")
        );
        let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!((v["degree"].as_u64(), v["count"].as_u64(), v["dimension"].as_u64()), (Some(degree), Some(count), Some(dim)));
        assert_eq!(v["covariants"].as_array().unwrap().len(), count as usize);
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"points": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[2,"-1/3",5]]}"#);
    let v = json_of(&coble(dir.path(), &["eval", "4", &a, "--json"]));
    assert_eq!(v["generic"], true);
    let values = v["vector"]["values"].as_array().unwrap();
    assert_eq!(values.len(), 12);
    assert!(values.iter().all(|x| x != "0"));

    // g = [[1,2,0],[0,1,-1],[3,0,1]] applied to each point
    let b = write(
        dir.path(),
        "b.json",
        r#"{"points": [[1,0,3],[2,1,0],[0,-1,1],[3,0,4],["4/3","-16/3",11]]}"#,
    );
    let o = coble(dir.path(), &["eval", "4", "--compare", &a, &b]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "d=4: vectors proportional\n");

    let c = write(dir.path(), "c.json", r#"{"points": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,3]]}"#);
    let o = coble(dir.path(), &["eval", "4", "--compare", &a, &c]);
    assert_eq!(o.status.code(), Some(1));

    let col = write(dir.path(), "col.json", r#"{"points": [[1,0,0],[0,1,0],[1,1,0],[1,1,1],[1,2,3]]}"#);
    let v = json_of(&coble(dir.path(), &["eval", "4", &col, "--json"]));
    assert_eq!(v["generic"], false);
    assert_eq!(v["collinear"], serde_json::json!([[1, 2, 3]]));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"points": [[1,0]]}"#);
    let rep = write(dir.path(), "rep.json", r#"{"points": [[1,0,0],[2,0,0],[0,0,1],[1,1,1],[1,2,3]]}"#);
    for args in [
        vec!["roots", "9"],
        vec!["roots", "3", "--type", "Q7"],
        vec!["roots", "3", "--type", "3A2", "--split-s7"],
        vec!["verify", "nope"],
        vec!["verify"],
        vec!["eval", "4"],
        vec!["eval", "4", &bad],
        vec!["eval", "4", &rep],
        vec!["eval", "3", "missing.json"],
        vec!["--jobs", "0", "roots", "5"],
        vec!["frobnicate"],
    ] {
        let o = coble(dir.path(), &args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn passing_suites() {
    let dir = tempfile::tempdir().unwrap();
    let o = coble(dir.path(), &["verify", "s3", "det-identities", "--json", "--jobs", "2"]);
    assert!(o.status.success());
    let v = json_of(&o);
    assert_eq!(v["passed"], true);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(names, ["det-identities", "s3"]);
    let s3 = &v["suites"][1]["checks"][0]["witness"];
    assert_eq!((s3["covariants"].as_u64(), s3["subsets"].as_u64(), s3["annihilated"].as_u64()), (Some(30), Some(35), Some(1050)));
}

#[test]
fn known_deviations_fail_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let o = coble(dir.path(), &["verify", "naruki", "degree5", "vector-fields", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    assert_eq!(v["passed"], false);
    let expected: Vec<(String, String)> = [
        ("vector-fields", "X̂ fixed by every E6 simple reflection"),
        ("vector-fields", "X̂ = c·∇f5"),
        ("vector-fields", "X̂2 and X̂3 fixed by every D5 simple reflection"),
        ("vector-fields", "X̂3 = c′·∇f5"),
        ("vector-fields", "X̂2 = a·∇f4 + b·f2·E"),
        ("vector-fields", "rank{X̂2, X̂3, [X̂2, X̂3]} ≤ 2 at 20 seeded points"),
        ("naruki", "40/40 matched to the table as printed"),
        ("degree5", "worked product equals z0z1z2 − z1²z2 as printed"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    assert_eq!(failing_checks(&v), expected);
    let naruki = &v["suites"][1];
    assert_eq!(naruki["suite"], "naruki");
    let corrected = naruki["checks"].as_array().unwrap().iter().find(|c| c["name"].as_str().unwrap().starts_with("40/40 matched to table entries")).unwrap();
    assert_eq!(corrected["status"], "pass");
}

#[test]
fn deterministic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "vector-fields", "naruki", "--json", "--seed", "11"];
    let a = coble(dir.path(), &args);
    let b = coble(dir.path(), &args);
    assert_eq!(a.stdout, b.stdout);
    assert!(json_of(&a)["suites"][0].get("timing_ms").is_none());
    let t = json_of(&coble(dir.path(), &["verify", "cross-ratio", "--json", "--timing"]));
    assert!(t["suites"][0]["timing_ms"].is_u64());
}

#[test]
fn field_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fields.json");
    let o = coble(dir.path(), &["fields", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["e6"]["x_hat"]["coefficients"].as_array().unwrap().len(), 6);
    assert_eq!(v["d5"]["x2"]["coefficients"].as_array().unwrap().len(), 5);
    assert_eq!(v["d5"]["x3"]["variables"], serde_json::json!(["t1", "t2", "t3", "t4", "t5"]));
}
