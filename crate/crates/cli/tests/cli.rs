use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-mobius"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn mobius_c3_agrees_on_all_paths() {
    let v = json(&["mobius", "--family", "C", "--n", "3", "--format", "json"]);
    let r = &v["results"][0];
    assert_eq!(r["oracle"], 1);
    assert_eq!(r["nbb"], 1);
    assert_eq!(r["sparse_sum"], 1);
    assert_eq!(r["fib_value"], 1);
    assert_eq!(r["agree"], true);
}

#[test]
fn mobius_b6_is_minus_one() {
    let o = run(&["mobius", "--family", "B", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("oracle=-1 nbb=-1 sparse_sum=-1 F_{n-2}(-1)=-1 agree"), "{text}");
}

#[test]
fn mobius_a2_marks_identity_columns_out_of_range() {
    let o = run(&["mobius", "--family", "A", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("oracle=0"), "{text}");
    assert_eq!(text.matches("out of range (n<3)").count(), 2, "{text}");
}

#[test]
fn mobius_range_covers_every_family() {
    let v = json(&["mobius", "--n", "3..9", "--format", "json"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let expected = [1, 1, 0, -1, -1, 0, 1];
    for row in rows {
        let n = row["n"].as_u64().unwrap() as usize;
        assert_eq!(row["oracle"], expected[n - 3], "{row}");
        assert_eq!(row["agree"], true);
    }
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["mobius", "--n", "1..6", "--format", "json"][..],
        &["nbb-bases", "--family", "A", "--n", "6", "--predict", "--format", "json"],
        &["verify", "--max-n", "4", "--seed", "11"],
        &["hasse", "--family", "B", "--n", "4", "--format", "json"],
        &["fib", "--n", "30", "--eval", "-1", "--format", "json"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn nbb_bases_c3() {
    let v = json(&["nbb-bases", "--family", "C", "--n", "3", "--predict", "--format", "json"]);
    assert_eq!(v["bases"], serde_json::json!([["21", "12"]]));
    assert_eq!(v["match"], true);
}

#[test]
fn nbb_bases_b5_come_from_sparse_sets_of_three() {
    let v = json(&["nbb-bases", "--family", "B", "--n", "5", "--predict", "--format", "json"]);
    assert_eq!(
        v["bases"],
        serde_json::json!([["21345", "13245"], ["21345", "13245", "12354"]])
    );
    assert_eq!(v["match"], true);
}

#[test]
fn nbb_bases_c2_has_no_prediction() {
    let o = run(&["nbb-bases", "--family", "C", "--n", "2", "--predict"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("prediction unavailable (n<3)"), "{text}");
    assert!(text.contains("order 2\n") && text.contains("0 bases"), "{text}");
}

#[test]
fn verify_passes_and_reports_schema() {
    let v = json(&["verify", "--max-n", "7"]);
    assert_eq!(v["seed"], 0);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.len() > 50);
    for c in claims {
        assert_eq!(c["pass"], true, "{c}");
        assert!(c["witness"].is_null());
        assert!(["A", "B", "C", "-"].contains(&c["family"].as_str().unwrap()));
        assert!(c["id"].is_string() && c["n"].is_u64());
    }
}

#[test]
fn verify_small_ranges() {
    let v = json(&["verify", "--max-n", "3"]);
    let has = |id: &str, n: u64| {
        v["claims"]
            .as_array()
            .unwrap()
            .iter()
            .any(|c| c["id"] == id && c["n"] == n)
    };
    assert!(has("shape-recurrence", 1));
    let v1 = json(&["verify", "--max-n", "1"]);
    assert!(v1["claims"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["id"] != "mobius-fibonacci"));
}

#[test]
fn hasse_c3_dot() {
    let o = run(&["hasse", "--family", "C", "--n", "3", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches(" -> ").count(), 4);
    for edge in ["\"0̂\" -> \"21\"", "\"0̂\" -> \"12\"", "\"21\" -> \"111\"", "\"12\" -> \"111\""] {
        assert!(text.contains(edge), "{edge} missing from {text}");
    }
}

#[test]
fn hasse_a1_and_b3_json() {
    let a1 = json(&["hasse", "--family", "A", "--n", "1", "--format", "json"]);
    assert_eq!(a1["elements"].as_array().unwrap().len(), 2);
    assert_eq!(a1["covers"].as_array().unwrap().len(), 1);

    let b3 = json(&["hasse", "--family", "B", "--n", "3", "--format", "json"]);
    assert_eq!(b3["elements"].as_array().unwrap().len(), 6);
    let covers = b3["covers"].as_array().unwrap();
    assert!(covers.contains(&serde_json::json!(["231", "1̂"])));
    assert!(covers.contains(&serde_json::json!(["312", "1̂"])));
}

#[test]
fn hasse_writes_to_file_and_rejects_bad_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.dot");
    let o = run(&["hasse", "--family", "C", "--n", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("digraph"));

    let bad = dir.path().join("missing").join("x.dot");
    let o = run(&["hasse", "--family", "C", "--n", "4", "--output", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fib_tables() {
    let text = stdout(&run(&["fib", "--n", "4", "--eval", "-1"]));
    assert!(text.contains("F_4(q) = 1 + 2*q"), "{text}");
    assert!(text.contains("F_4(-1) = -1"), "{text}");
    assert!(text.contains("H=F"), "{text}");
    assert!(stdout(&run(&["fib", "--n", "1"])).contains("F_1(q) = 1\n"));
    assert!(stdout(&run(&["fib", "--n", "6"])).contains("1 + 4*q + 3*q^2"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fib", "--n", "0"][..],
        &["mobius", "--family", "D", "--n", "3"],
        &["nbb-bases", "--family", "X", "--n", "3"],
        &["mobius", "--family", "B", "--n", "10"],
        &["mobius", "--n", "5..3"],
        &["hasse", "--family", "A", "--n", "11"],
        &["verify", "--max-n", "12"],
        &["hasse", "--family", "C", "--n", "3", "--format", "text"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

mod statuses {
    use super::run;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn in_bound_mobius_succeeds(family in "[ABCabc]", n in 1usize..=7) {
            let o = run(&["mobius", "--family", &family, "--n", &n.to_string()]);
            prop_assert_eq!(o.status.code(), Some(0));
        }

        #[test]
        fn above_bound_without_force_is_a_usage_error(family in "[ABC]", extra in 2usize..40) {
            let n = 9 + extra;
            let o = run(&["nbb-bases", "--family", &family, "--n", &n.to_string()]);
            prop_assert_eq!(o.status.code(), Some(2));
        }

        #[test]
        fn fib_accepts_every_positive_degree(n in 1usize..80, q in -5i64..=5) {
            let o = run(&["fib", "--n", &n.to_string(), "--eval", &q.to_string()]);
            prop_assert_eq!(o.status.code(), Some(0));
        }
    }
}
