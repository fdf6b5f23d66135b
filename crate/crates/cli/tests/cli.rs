//! End-to-end tests of the `ddc` binary: exit codes, JSON round trips,
//! deterministic rendering, and the catalog lifecycle.

use std::path::Path;
use std::process::{Command, Output};

fn ddc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddc"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn construct_verify_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddc(
        &["construct", "welch", "--p", "5", "--alpha", "2"],
        tmp.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["configuration"]["dots"].as_array().unwrap().len(), 4);
    assert_eq!(v["density"], serde_json::json!([1, 5]));
    std::fs::write(
        tmp.path().join("cfg.json"),
        serde_json::to_string(&v["configuration"]).unwrap(),
    )
    .unwrap();
    let verify = ddc(&["verify", "cfg.json"], tmp.path());
    assert_eq!(verify.status.code(), Some(0));
    assert!(stdout(&verify).starts_with("PASS"));
}

#[test]
fn verify_failure_and_usage_codes() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("bad.json"),
        r#"{"grid":"square","metric":"manhattan","r":4,"dots":[[0,0],[1,0],[2,0]]}"#,
    )
    .unwrap();
    let out = ddc(&["verify", "bad.json"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("repeats"));

    // grid/metric mismatch is a usage error
    std::fs::write(
        tmp.path().join("mismatch.json"),
        r#"{"grid":"hexagonal","metric":"manhattan","r":4,"dots":[[0,0]]}"#,
    )
    .unwrap();
    let out = ddc(&["verify", "mismatch.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    // non-prime construction parameter
    let out = ddc(&["construct", "welch", "--p", "6"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    // clap usage error
    let out = ddc(&["bogus-subcommand"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_leedd_example() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddc(
        &["construct", "leedd", "--r", "2", "--ruler", "0,1,3"],
        tmp.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let dots = v["configuration"]["dots"].as_array().unwrap();
    assert_eq!(dots.len(), 3);
    // a non-ruler is rejected
    let out = ddc(
        &["construct", "leedd", "--r", "2", "--ruler", "0,1,2"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_ascii_and_svg() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("row.json"),
        r#"{"grid":"square","metric":"manhattan","r":1,"dots":[[0,0],[1,0]]}"#,
    )
    .unwrap();
    let out = ddc(&["render", "row.json", "--format", "ascii"], tmp.path());
    assert!(out.status.success());
    assert_eq!(stdout(&out), "##\n");

    // hexagonal sphere of radius 2: 19 hexagons, byte-deterministic
    let sphere: Vec<[i64; 2]> = (-2i64..=2)
        .flat_map(|i| (-2i64..=2).map(move |j| [i, j]))
        .filter(|&[i, j]| {
            let d = if i.signum() * j.signum() >= 0 {
                i.abs().max(j.abs())
            } else {
                i.abs() + j.abs()
            };
            d <= 2
        })
        .collect();
    assert_eq!(sphere.len(), 19);
    let record = serde_json::json!({
        "grid": "hexagonal", "metric": "hex", "r": 4, "dots": sphere,
    });
    std::fs::write(tmp.path().join("sphere.json"), record.to_string()).unwrap();
    let svg1 = ddc(&["render", "sphere.json", "--format", "svg"], tmp.path());
    let svg2 = ddc(&["render", "sphere.json", "--format", "svg"], tmp.path());
    assert!(svg1.status.success());
    assert_eq!(svg1.stdout, svg2.stdout);
    assert_eq!(stdout(&svg1).matches("<polygon").count(), 19);

    // ascii is square-only
    let out = ddc(&["render", "sphere.json", "--format", "ascii"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_lifecycle() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("cfg.json"),
        r#"{"grid":"square","metric":"manhattan","r":4,"dots":[[0,0],[1,0],[0,1],[2,2]]}"#,
    )
    .unwrap();
    let add = ddc(
        &[
            "catalog",
            "--dir",
            "cat",
            "add",
            "cfg.json",
            "--id",
            "demo",
            "--note",
            "welch window",
        ],
        tmp.path(),
    );
    assert!(
        add.status.success(),
        "{}",
        String::from_utf8_lossy(&add.stderr)
    );
    let list = ddc(&["catalog", "--dir", "cat", "list"], tmp.path());
    assert!(stdout(&list).contains("demo  class=ddbar r=4 m=4"));
    let show = ddc(&["catalog", "--dir", "cat", "show", "demo"], tmp.path());
    assert!(show.status.success());
    let rec: serde_json::Value = serde_json::from_str(&stdout(&show)).unwrap();
    assert_eq!(rec["dots"].as_array().unwrap().len(), 4);

    // duplicate ids are rejected
    let dup = ddc(
        &["catalog", "--dir", "cat", "add", "cfg.json", "--id", "demo"],
        tmp.path(),
    );
    assert_eq!(dup.status.code(), Some(2));

    // a non-DDC configuration is rejected at add time
    std::fs::write(
        tmp.path().join("bad.json"),
        r#"{"grid":"square","metric":"manhattan","r":4,"dots":[[0,0],[1,0],[2,0]]}"#,
    )
    .unwrap();
    let bad = ddc(
        &["catalog", "--dir", "cat", "add", "bad.json", "--id", "bad"],
        tmp.path(),
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn search_and_bounds_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddc(&["search", "--class", "ddbar", "--r", "4"], tmp.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["m_opt"], 6);
    assert_eq!(v["exact"], true);

    // threads flag must not change the result
    let t1 = ddc(
        &["search", "--class", "ddbar", "--r", "4", "--threads", "1"],
        tmp.path(),
    );
    let v1: serde_json::Value = serde_json::from_str(&stdout(&t1)).unwrap();
    assert_eq!(v1["configuration"], v["configuration"]);
    assert_eq!(v1["nodes"], v["nodes"]);

    let out = ddc(&["bounds", "--class", "ddbar", "--r", "100"], tmp.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["m_max"].as_u64().unwrap() <= v["trivial_m_max"].as_u64().unwrap());

    let out = ddc(
        &["bounds", "--honeycomb", "--scan", "1289:1500"],
        tmp.path(),
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_ruled_out_in_range"], true);
    assert_eq!(v["smallest_fully_ruled_out"], 1289);

    let out = ddc(&["bounds", "--table1"], tmp.path());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["table"].as_array().unwrap().len(), 4);
}

#[test]
fn extract_command() {
    let tmp = tempfile::tempdir().unwrap();
    let out = ddc(
        &["extract", "--pipeline", "ddbar-lee", "--r", "10"],
        tmp.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["achieved"], 10);
    assert_eq!(v["class"], "ddbar");
    // the emitted configuration re-verifies
    std::fs::write(
        tmp.path().join("extracted.json"),
        serde_json::to_string(&v["configuration"]).unwrap(),
    )
    .unwrap();
    let verify = ddc(&["verify", "extracted.json"], tmp.path());
    assert_eq!(verify.status.code(), Some(0));
}
