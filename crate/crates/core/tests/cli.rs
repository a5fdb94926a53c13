use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn freenil(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freenil"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn inverse_of_identity_word() {
    let o = freenil(&["--rank", "3", "--class", "2", "inv"], "[]");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"word\":[]}\n");
}

#[test]
fn random_aut_is_deterministic() {
    let args = ["--rank", "6", "--class", "3", "random-aut", "--seed", "7", "--length", "10", "--fix", "1,4"];
    let (a, b) = (freenil(&args, ""), freenil(&args, ""));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let map = json(&a);
    assert_eq!(map["rank"], 6);
    assert_eq!(map["images"][0], serde_json::json!([[1, 1]]));
    assert_eq!(map["images"][3], serde_json::json!([[4, 1]]));
}

#[test]
fn golden_random_aut() {
    let o = freenil(&["--rank", "3", "--class", "2", "random-aut", "--seed", "7", "--length", "4"], "");
    assert_eq!(stdout(&o), include_str!("golden/random_aut_3_2_seed7_len4.json"));
}

#[test]
fn decompose_verify_pipeline() {
    for seed in [1u64, 2, 3] {
        let seed = seed.to_string();
        let aut = freenil(&["--rank", "8", "--class", "2", "random-aut", "--seed", &seed, "--length", "12", "--fix", "2"], "");
        let dec = freenil(&["decompose", "--fix", "2"], &stdout(&aut));
        assert!(dec.status.success(), "{}", stdout(&dec));
        let report = freenil(&["verify"], &stdout(&dec));
        let value = json(&report);
        assert_eq!(value["ok"], true, "{value}");
        assert!(value["min_fixed_block"].as_u64().unwrap() >= 1);
        let again = freenil(&["decompose", "--fix", "2"], &stdout(&aut));
        assert_eq!(again.stdout, dec.stdout);
    }
}

#[test]
fn endo_commands() {
    let map = r#"{"rank":2,"class":2,"images":[[[1,1],[2,1]],[[2,1]]]}"#;
    let inv = freenil(&["invert-aut"], map);
    assert!(inv.status.success());
    let compose = format!(r#"{{"left":{map},"right":{}}}"#, stdout(&inv).trim());
    let id = json(&freenil(&["compose"], &compose));
    assert_eq!(id["images"], serde_json::json!([[[1, 1]], [[2, 1]]]));
    let aut = json(&freenil(&["is-aut"], map));
    assert_eq!(aut, serde_json::json!({"automorphism": true, "determinant": 1}));
    let applied = json(&freenil(&["apply"], &format!(r#"{{"map":{map},"a":[[1,1]]}}"#)));
    assert_eq!(applied, serde_json::json!({"word": [[1, 1], [2, 1]]}));
}

#[test]
fn element_commands() {
    let ctx = ["--rank", "3", "--class", "3"];
    let mul = json(&freenil(&[&ctx[..], &["mul"]].concat(), r#"{"a":[[1,1]],"b":[[1,-1]]}"#));
    assert_eq!(mul, serde_json::json!({"word": []}));
    let comm = freenil(&[&ctx[..], &["comm"]].concat(), r#"{"a":[[1,1]],"b":[[2,1]]}"#);
    let weight = json(&freenil(&[&ctx[..], &["weight"]].concat(), &stdout(&comm)));
    assert_eq!(weight, serde_json::json!({"weight": 2}));
    // [[x1,x2],x3] spelled out with [a,b] = a⁻¹b⁻¹ab
    let central = r#"[[2,-1],[1,-1],[2,1],[1,1],[3,-1],[1,-1],[2,-1],[1,1],[2,1],[3,1]]"#;
    let terms = json(&freenil(&[&ctx[..], &["central-factorize"]].concat(), central));
    assert_eq!(terms, serde_json::json!([{"comm": [1, 2, 3], "exp": 1}]));
}

#[test]
fn domain_errors_exit_one_with_a_name() {
    let o = freenil(&["invert-aut"], r#"{"rank":2,"class":1,"images":[[[1,2]],[[2,1]]]}"#);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "NotAutomorphism");
    let o = freenil(&["--rank", "3", "--class", "2", "central-factorize"], "[[1,1]]");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "NotCentral");
    let o = freenil(&["decompose", "--fix", "1"], r#"{"rank":8,"class":1,"images":[[[1,1],[2,1]],[[2,1]],[[3,1]],[[4,1]],[[5,1]],[[6,1]],[[7,1]],[[8,1]]]}"#);
    assert_eq!(json(&o)["error"], "DoesNotFixD");
}

#[test]
fn malformed_input_exits_two() {
    let o = freenil(&["--rank", "2", "--class", "2", "inv"], "[[1,");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"], "MalformedInput");
    let o = freenil(&["verify"], r#"{"input":3}"#);
    assert_eq!(o.status.code(), Some(2));
    let o = freenil(&["inv"], "[]");
    assert_eq!(o.status.code(), Some(2));
    let o = freenil(&["--rank", "2"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn files_and_pretty_output() {
    let dir = std::env::temp_dir().join(format!("freenil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    let output = dir.join("out.json");
    std::fs::write(&input, "[[2,3]]").unwrap();
    let o = freenil(
        &["--rank", "2", "--class", "2", "--pretty", "inv", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()],
        "",
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&output).unwrap();
    assert!(written.contains('\n') && written.contains("  "));
    let value: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(value, serde_json::json!({"word": [[2, -3]]}));
    std::fs::remove_dir_all(&dir).unwrap();
}
