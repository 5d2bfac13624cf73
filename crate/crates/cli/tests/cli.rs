use std::process::{Command, Output};

use serde_json::Value;

const Z4: &str = r#"{"orders":[4],"modulus":4,"q":[0,1,0,1]}"#;
const Z8: &str = r#"{"orders":[8],"modulus":16,"q":[0,1,4,9,0,9,4,1]}"#;
const TORIC: &str = r#"{"orders":[2,2],"modulus":2,"q":[0,0,0,1]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_condensate"))
        .args(args)
        .env_remove("CONDENSATE_SUBGROUP_BOUND")
        .env_remove("CONDENSATE_ISO_BOUND")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_reports_degenerate_z4() {
    let out = run(&["analyze", Z4]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nondegenerate"], false);
    assert_eq!(v["gauss_sum"], "2+2*E(4)");
    assert_eq!(v["isotropic_subgroups"].as_array().unwrap().len(), 2);
    assert_eq!(v["lagrangian_subgroups"], serde_json::json!([]));
}

#[test]
fn toric_code_has_two_lagrangians() {
    let v = json(&run(&["analyze", TORIC]));
    assert_eq!(v["nondegenerate"], true);
    assert_eq!(v["gauss_sum"], "2");
    assert_eq!(v["lagrangian_subgroups"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_appendix_even_twist() {
    let out = run(&["verify-appendix", "--case", "even-twist", "--param", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"expected":"-1","pass":true,"value":"-1"}"#
    );
}

#[test]
fn verify_appendix_other_cases() {
    for (case, param) in [("even-braiding", "3"), ("odd-theta", "7"), ("taft", "5")] {
        let out = run(&["verify-appendix", "--case", case, "--param", param]);
        assert_eq!(out.status.code(), Some(0), "{case}");
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn non_isotropic_condense_is_a_domain_error() {
    let out = run(&["condense", Z4, "--gen", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "NotIsotropic");
}

#[test]
fn degenerate_witt_class_is_a_domain_error() {
    let out = run(&["witt-class", Z4]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "Degenerate");
}

#[test]
fn invalid_form_is_a_domain_error() {
    let out = run(&["analyze", r#"{"orders":[3],"modulus":3,"q":[0,1,2]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "InvalidForm");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["analyze", "--no-such-flag", Z4]).status.code(),
        Some(2)
    );
    let out = run(&["analyze", "{not json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "UsageError");
    let out = run(&[
        "analyze",
        r#"{"orders":[2],"modulus":4,"q":[0,1],"extra":1}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(
        run(&["condense", Z4, "--gen", "1,2"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", TORIC],
        vec!["algebra", Z8, "--gen", "4"],
        vec!["classify", TORIC, "--gen", "1,0"],
        vec!["deligne", "--p", "2,2,2,2"],
        vec!["taft", "--n", "9"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn emitted_forms_round_trip() {
    let out = run(&["condense", Z8, "--gen", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["condensed"]["orders"], serde_json::json!([2]));
    let condensed = serde_json::to_string(&v["condensed"]).unwrap();
    let again = json(&run(&["analyze", &condensed]));
    assert_eq!(again["form"], v["condensed"]);
    let kernel = json(&run(&["witt-class", Z8]))["anisotropic_kernel"].clone();
    let back = json(&run(&["analyze", &serde_json::to_string(&kernel).unwrap()]));
    assert_eq!(back["form"], kernel);
}

#[test]
fn witt_equal_compares_classes() {
    let semion = r#"{"orders":[2],"modulus":4,"q":[0,1]}"#;
    let anti = r#"{"orders":[2],"modulus":4,"q":[0,3]}"#;
    assert_eq!(
        json(&run(&["witt-equal", semion, anti]))["witt_equal"],
        false
    );
    assert_eq!(json(&run(&["witt-equal", Z8, Z8]))["witt_equal"], true);
    assert_eq!(
        json(&run(&[
            "witt-equal",
            TORIC,
            r#"{"orders":[],"modulus":1,"q":[0]}"#
        ]))["witt_equal"],
        true
    );
}

#[test]
fn bound_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_condensate"))
        .args(["analyze", TORIC])
        .env("CONDENSATE_SUBGROUP_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "TooLarge");
}

#[test]
fn deligne_reports_admissible_set() {
    let v = json(&run(&["deligne", "--p", "3,5"]));
    assert_eq!(v["admissible_set"], serde_json::json!([[0, 0], [1, 1]]));
    assert_eq!(v["is_subgroup"], true);
}
