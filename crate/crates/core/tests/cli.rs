use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn lissajous(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lissajous"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let o = lissajous(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_matches_golden_file() {
    let golden: Value = serde_json::from_str(include_str!("golden/classify_4_-5.json")).unwrap();
    assert_eq!(json_of(&["classify", "--type", "4,-5", "--json"]), golden);
}

#[test]
fn classify_worked_examples() {
    let v = json_of(&["classify", "--type", "-11,16", "--json"]);
    assert_eq!(v["level"], 1);
    assert_eq!(v["slope"], "2/3");
    assert_eq!(v["matrix"], serde_json::json!([[586, -741], [-741, 937]]));
    assert_eq!(v["friezeW"], "bqpqbqpqbqbdbqbdbq");
    let v = json_of(&["classify", "--type=-23,28", "--json"]);
    assert_eq!(
        v["matrix"],
        serde_json::json!([[31162, -103259], [-103259, 342161]])
    );
}

#[test]
fn exit_codes() {
    let o = lissajous(&["classify", "--type", "-5,7", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), r#"{"collision_free":false}"#);
    let o = lissajous(&["classify", "--type", "3,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divisible by 3"));
    assert_eq!(
        lissajous(&["classify", "--type", "2,4"]).status.code(),
        Some(1)
    );
    assert_eq!(
        lissajous(&["from-label", "--level", "1", "--slope", "1/2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        lissajous(&["verify", "--suite", "nope"]).status.code(),
        Some(1)
    );
    assert_eq!(lissajous(&["--help"]).status.code(), Some(0));
}

#[test]
fn from_label_gives_the_same_report() {
    let a = json_of(&["from-label", "--level", "2", "--slope", "0/1", "--json"]);
    let b = json_of(&["classify", "--type", "4,-5", "--json"]);
    assert_eq!(a, b);
    let v = json_of(&["from-label", "--level", "1", "--slope", "2/3", "--json"]);
    assert_eq!(v["input"], serde_json::json!({"m": -11, "n": 16}));
}

#[test]
fn json_round_trips_through_normalized_type() {
    for ty in ["2,5", "1,4", "-11,16", "10,7", "-13,-4", "25,-2"] {
        let mut first = json_of(&["classify", "--type", ty, "--json"]);
        let nt = &first["normalized"];
        let again = format!("{},{}", nt["m"], nt["n"]);
        let mut second = json_of(&["classify", "--type", &again, "--json"]);
        first.as_object_mut().unwrap().remove("input");
        second.as_object_mut().unwrap().remove("input");
        assert_eq!(first, second, "{ty}");
    }
}

#[test]
fn text_mode_carries_the_json_values() {
    let v = json_of(&["classify", "--type", "-11,16", "--json"]);
    let text = stdout(&lissajous(&["classify", "--type", "-11,16"]));
    let obj = v.as_object().unwrap();
    assert_eq!(text.lines().count(), obj.len());
    for (k, val) in obj {
        let shown = match val {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        assert!(text.contains(&format!("{k}: {shown}\n")), "{k}");
    }
}

#[test]
fn cf_and_syzygy_commands() {
    let out = stdout(&lissajous(&["cf", "--type", "4,-5"]));
    assert!(out.contains("(3+√13)/2"));
    assert!(out.contains("period: [3]"));
    let v = json_of(&["cf", "--type", "-11,16", "--json"]);
    assert_eq!(v["far_endpoint"], "(9+5√61)/38");
    assert_eq!(v["matches_clusters"], true);
    let out = stdout(&lissajous(&[
        "syzygy",
        "--type",
        "-8,13",
        "--periods",
        "1",
        "--group",
    ]));
    assert_eq!(
        out.trim(),
        "1231312.3123231.2312123.1231312.3123231.2312123"
    );
    let v = json_of(&["syzygy", "--type", "-8,13", "--periods", "2", "--json"]);
    assert_eq!(v["length"], 84);
    assert_eq!(v["omega"], "+++-+++");
}

#[test]
fn enumerate_streams_json_lines() {
    let out = stdout(&lissajous(&["enumerate", "--max-m", "30"]));
    let lines: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.len() > 5);
    assert_eq!(
        lines[0],
        serde_json::json!({"m": 1, "n": -2, "level": 1, "slope": "0/1"})
    );
    let out = stdout(&lissajous(&[
        "enumerate",
        "--labels",
        "--max-level",
        "1",
        "--max-sum",
        "5",
    ]));
    assert!(out
        .lines()
        .any(|l| l.contains(r#""slope":"2/3""#) && l.contains(r#""m":-11"#)));
}

#[test]
fn verify_reports_every_case() {
    let o = lissajous(&["verify", "--suite", "bijection", "--max-m", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(
        last.starts_with("all ") && last.ends_with(" cases pass"),
        "{last}"
    );
    let n: usize = last.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert_eq!(out.lines().filter(|l| l.starts_with("pass ")).count(), n);
    for suite in ["epsilon", "collision", "cf", "cluster", "syzygy"] {
        let o = lissajous(&[
            "verify", "--suite", suite, "--max-m", "8", "--seed", "3", "--quiet",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn plots_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let shape = dir.path().join("shape.svg");
    let csv = dir.path().join("shape.csv");
    let o = lissajous(&[
        "plot",
        "--type",
        "4,-5",
        "--kind",
        "shape",
        "--out",
        shape.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&shape).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("polyline"));
    let csv = fs::read_to_string(&csv).unwrap();
    assert_eq!(csv.lines().next(), Some("t,re_psi,im_psi"));
    assert_eq!(csv.lines().count(), 4001);

    let half = dir.path().join("half.svg");
    let o = lissajous(&[
        "plot",
        "--type",
        "-11,16",
        "--kind",
        "halfplane",
        "--max-den",
        "3",
        "--out",
        half.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let svg = fs::read_to_string(&half).unwrap();
    assert!(svg.contains("crimson"));
    assert!(svg.contains("586"));

    let o = lissajous(&["plot", "--type", "-5,7", "--out", shape.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}
