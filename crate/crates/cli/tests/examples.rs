//! Runs the `ulh` binary on the bundled example files.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn ulh(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ulh"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ulh_json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = ulh(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).expect("valid JSON")
}

fn verdict(args: &[&str]) -> String {
    ulh_json(args)["result"]["verdict"]
        .as_str()
        .unwrap()
        .to_owned()
}

#[test]
fn documented_companion_verdicts() {
    let cases = [
        ("c_34345.mat", "yes"),
        ("g_34355.mat", "yes"),
        ("f_34445.mat", "yes"),
        ("frobenius_4.mat", "yes"),
        ("d_35355.mat", "no"),
        ("h_sparse_5.mat", "no"),
        ("g_tilde_excess.mat", "no"),
        ("parametric_3.mat", "conditional"),
    ];
    for (file, expected) in cases {
        let path = example(file);
        assert_eq!(
            verdict(&["check", "--method", "direct", &path]),
            expected,
            "{file}"
        );
    }
    for file in [
        "c_34345.mat",
        "g_34355.mat",
        "f_34445.mat",
        "g_tilde_excess.mat",
        "parametric_3.mat",
    ] {
        let path = example(file);
        assert_eq!(
            verdict(&["check", "--method", "structural", &path]),
            verdict(&["check", "--method", "direct", &path]),
            "{file}"
        );
    }
    let v = ulh_json(&["check", "--method", "direct", &example("parametric_3.mat")]);
    assert_eq!(v["result"]["must_be_zero"], serde_json::json!(["a"]));
}

#[test]
fn malformed_file_reports_position() {
    let (code, out, err) = ulh(&["check", &example("bad_entry.mat")]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("line 5, column 9"), "{err}");
}

#[test]
fn ma_table_matches() {
    let v = ulh_json(&["pb", &example("pb_7x7.mat"), "--report", "ma"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[7]["label"], "p7");
    let p7: Vec<&str> = rows[7]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(p7, ["208", "-317", "168", "-129", "73", "0", "-7", "1"]);
    let (_, text, _) = ulh(&["pb", &example("pb_7x7.mat"), "--report", "ma"]);
    assert!(text.lines().nth(8).unwrap().starts_with("p7"));
}

#[test]
fn pb_reports() {
    let seven = example("pb_7x7.mat");
    assert_eq!(verdict(&["pb", &seven]), "yes");
    let concat = ulh_json(&["pb", &seven, "--report", "concat"]);
    assert_eq!(
        concat["result"]["components"],
        serde_json::json!([[0, 1, 2], [3], [4, 5], [6], [7]])
    );
    assert_eq!(
        ulh_json(&["pb", &seven, "--report", "criterion"])["result"]["verdict"],
        "not_applicable"
    );

    let six = example("pb_param_6x6.mat");
    let crit = ulh_json(&["pb", &six, "--report", "criterion"]);
    assert_eq!(
        crit["result"]["must_be_nonzero"],
        serde_json::json!(["-a22 + a66", "-a44 + a66"])
    );
    let full = ulh_json(&["pb", &six]);
    assert_eq!(
        full["result"]["via_blocks"]["must_be_nonzero"],
        serde_json::json!(["-a22 + a66", "-a44 + a66"])
    );
    assert_eq!(
        verdict(&["pb", &six, "--assume", "a22=1", "--assume", "a66=1"]),
        "no"
    );
    assert_eq!(
        verdict(&["pb", &six, "--assume", "a22=1", "--assume", "a44=2", "--assume", "a66=3"]),
        "yes"
    );
}

#[test]
fn completion_and_membership() {
    let v = ulh_json(&[
        "nilpotent-complete",
        &example("nilpotent_partial_6.mat"),
        "--checkpoints",
        "3,5,6",
    ]);
    assert_eq!(v["result"]["membership"]["verdict"], "yes");
    assert_eq!(v["result"]["rows"][2][0], "-2*a*c - a^3 - b*c");
    let (code, _, err) = ulh(&[
        "nilpotent-complete",
        &example("nested_4x4.mat"),
        "--checkpoints",
        "2",
    ]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("row 2"));
    let v = ulh_json(&[
        "nilpotent-complete",
        &example("nested_4x4.mat"),
        "--checkpoints",
        "1,3,4",
    ]);
    assert_eq!(v["result"]["membership"]["verdict"], "yes");
}

#[test]
fn parameterize_g() {
    let v = ulh_json(&["parameterize", "--set", "G", "--indices", "4,4,6,5,5,7,7"]);
    assert_eq!(v["result"]["verdict"], "yes");
    assert_eq!(
        v["result"]["parameters"],
        serde_json::json!(["a", "b", "c", "d"])
    );
}

#[test]
fn ghat_and_classify() {
    let v = ulh_json(&["ghat", &example("g_tilde_excess.mat")]);
    assert_eq!(v["result"]["verdict"], "no");
    assert_eq!(v["result"]["witnesses"].as_array().unwrap().len(), 3);
    assert_eq!(
        verdict(&[
            "ghat",
            &example("f_34445.mat"),
            "--fiedler-base",
            "3,4,4,4,5"
        ]),
        "yes"
    );
    let c = ulh_json(&["classify", &example("g_34355.mat")])["result"].clone();
    assert_eq!(c["sets"]["G"], true);
    assert_eq!(c["sets"]["F"], false);
    assert_eq!(c["i1"], 3);
}

#[test]
fn enumerate_search_digraph() {
    assert_eq!(
        ulh_json(&["enumerate", "--order", "4", "--family", "C", "--count"])["result"]["count"],
        10
    );
    let (_, text, _) = ulh(&["enumerate", "--order", "2", "--family", "F", "--emit"]);
    assert_eq!(text, "2; (1,1) (2,1)\n2; (2,2) (2,1)\n");
    let s = ulh_json(&["--jobs", "2", "search", "fiedler-mixed", "--order", "4"])["result"].clone();
    assert_eq!(s["counterexamples"], serde_json::json!([]));
    assert_eq!(s["all_above_forced_zero"], true);
    assert_eq!(s["status"], "exhausted");
    let b =
        ulh_json(&["search", "fiedler-mixed", "--order", "4", "--budget", "10"])["result"].clone();
    assert_eq!(b["examined"], 10);
    assert_eq!(b["status"], "budget_reached");
    let (code, _, _) = ulh(&["search", "fiedler-mixed", "--order", "9"]);
    assert_eq!(code, 1);
    let names = [
        "h_sparse_5.mat",
        "d_35355.mat",
        "c_34345.mat",
        "g_34355.mat",
        "f_34445.mat",
    ];
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            let v = ulh_json(&["digraph", &example(a), "--compare", &example(b)]);
            assert_eq!(v["result"]["isomorphic"], a == b, "{a} {b}");
        }
    }
}

#[test]
fn json_is_deterministic() {
    let seven = example("pb_7x7.mat");
    let args: [&[&str]; 3] = [
        &["pb", &seven],
        &["check", "--method", "structural", &seven],
        &["--jobs", "3", "search", "fiedler-mixed", "--order", "4"],
    ];
    for a in args {
        let mut first = ulh_json(a);
        let mut second = ulh_json(a);
        first.as_object_mut().unwrap().remove("elapsed_ms");
        second.as_object_mut().unwrap().remove("elapsed_ms");
        assert_eq!(first, second, "{a:?}");
        assert!(first["input_digest"].is_string() || a.contains(&"search"));
    }
}

#[test]
fn charpoly_of_frobenius() {
    let v = ulh_json(&["charpoly", &example("frobenius_4.mat")]);
    assert_eq!(
        v["result"]["charpoly"],
        "-x4 - lambda*x3 - lambda^2*x2 - lambda^3*x1 + lambda^4"
    );
}
