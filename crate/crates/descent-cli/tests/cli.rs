//! End-to-end runs of the `descent` binary: golden outputs, exit codes,
//! and the JSON document shapes.

use std::process::{Command, Output};

use serde_json::Value;

fn descent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .output()
        .expect("the descent binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is a JSON document")
}

#[test]
fn table_five_prints_the_reference_rows() {
    let out = descent(&["table", "5"]);
    assert!(out.status.success(), "table 5 exits 0");
    let text = stdout_of(&out);
    assert!(text.contains("order-5 family over Q(la)"), "header line:\n{text}");
    assert!(
        text.contains("y^2 + (-la+1)*x*y - la*y = x^3 - la*x^2"),
        "curve equation:\n{text}"
    );
    assert!(text.contains("la^7-11*la^6-la^5"), "discriminant:\n{text}");
    for needle in ["la^4", "la^3", "la^2", "(la, la^2)", "(0, la)"] {
        assert!(text.contains(needle), "table row piece {needle}:\n{text}");
    }
    // four data rows: P plus 2P, 3P, 4P
    assert!(text.contains("P  (0, 0)"), "row for P:\n{text}");
    let numbered = text
        .lines()
        .filter(|l| l.trim_start().starts_with(|c: char| c.is_ascii_digit()))
        .count();
    assert_eq!(numbered, 3, "rows for 2P, 3P, 4P:\n{text}");
}

#[test]
fn table_json_carries_the_certificates() {
    let out = descent(&["table", "5", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["N"], 5);
    assert_eq!(doc["char"], 0);
    assert_eq!(doc["disc"], "la^7-11*la^6-la^5");
    assert_eq!(doc["delta"][0], serde_json::json!({"n": 1, "class": "la^4"}));
    assert_eq!(doc["a"].as_array().map(Vec::len), Some(5));
    let certs = &doc["certificates"];
    assert!(certs["norm_constant"].is_string(), "norm constant present: {doc}");
    assert!(certs["unit"].is_string(), "normalization unit present: {doc}");
}

#[test]
fn unknown_order_is_a_usage_error() {
    let out = descent(&["table", "11"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("no torsion family registered for N = 11"));
}

#[test]
fn char_dividing_the_order_is_a_usage_error() {
    let out = descent(&["table", "5", "--char", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("characteristic"));
}

#[test]
fn json_errors_are_structured() {
    let out = descent(&["table", "11", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_str(&stderr_of(&out)).expect("stderr is JSON");
    assert_eq!(doc["kind"], "UnsupportedN");
}

#[test]
fn verify_all_tables_passes() {
    let out = descent(&["verify", "--all"]);
    assert!(out.status.success(), "verify --all exits 0:\n{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("verified all 10 tables over Q(la)"), "summary:\n{text}");
    assert!(text.contains("N=12"), "largest order included:\n{text}");
}

#[test]
fn verify_json_report_is_ordered_by_n() {
    let out = descent(&["verify", "8", "4", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["ok"], true);
    let results = doc["results"].as_array().expect("results array");
    let ns: Vec<i64> = results.iter().map(|r| r["N"].as_i64().unwrap()).collect();
    assert_eq!(ns, vec![4, 8], "report sorted by order regardless of argument order");
    assert_eq!(results[0]["status"], "matched");
    assert!(results[1]["certificates"]["norm_constant"].is_string());
}

#[test]
fn injected_corruption_is_caught_with_exit_one() {
    let out = descent(&["verify", "5", "--inject-mismatch"]);
    assert_eq!(out.status.code(), Some(1), "a corrupted reference entry fails verification");
    let text = stdout_of(&out);
    assert!(text.contains("computed la^4"), "mismatch names both classes:\n{text}");
    assert!(text.contains("1 of 1 tables failed"), "summary counts the failure:\n{text}");
}

#[test]
fn verify_without_orders_is_a_usage_error() {
    let out = descent(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_skips_orders_killed_by_the_characteristic() {
    let out = descent(&["verify", "--all", "--char", "5"]);
    assert!(out.status.success(), "skips are not failures");
    let text = stdout_of(&out);
    assert!(text.contains("N=5   skipped"), "order 5 skipped over F_5:\n{text}");
    assert!(text.contains("verified 8 of 10 tables over F_5(la), 2 skipped"), "{text}");
}

#[test]
fn specialize_reproduces_the_known_discriminant() {
    let out = descent(&["specialize", "5", "11", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["disc"], "-161051");
    assert_eq!(doc["order"], 5);
    assert_eq!(doc["delta"][3], serde_json::json!({"n": 4, "class": "11"}));
}

#[test]
fn specialize_rejects_singular_parameter_values() {
    let out = descent(&["specialize", "5", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("singular"));
}

#[test]
fn specialize_accepts_fractions_and_negatives() {
    let out = descent(&["specialize", "3", "-2/3", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["lambda"], "-2/3");
    // delta(P) = la^2 at -2/3 is 4/9 = 2^2 * 3^-2; exponents mod 3 give the
    // canonical unit 2^2 * 3^1
    assert_eq!(doc["delta"][0], serde_json::json!({"n": 1, "class": "12"}));
}

#[test]
fn choose_lambda_minus_three_for_order_eight() {
    let out = descent(&["choose-lambda", "8", "--primes", "3", "--real", "--format", "json"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["lambda"], "-3");
    assert_eq!(doc["disc_nonzero"], true);
    let conditions = doc["conditions"].as_array().expect("conditions array");
    assert!(conditions.contains(&serde_json::json!({"place": "3", "valuation": 7})));
    assert!(conditions.contains(&serde_json::json!({"place": "real", "sign": -1})));
}

#[test]
fn real_place_with_an_odd_order_is_rejected() {
    let out = descent(&["choose-lambda", "7", "--real"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("real place only constrains even N"));
}

#[test]
fn hilbert_two_three_ramifies_at_two_and_three() {
    let out = descent(&["hilbert", "2", "3", "--format", "json"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    assert_eq!(doc["split"], false);
    assert_eq!(doc["ramification"], serde_json::json!(["2", "3"]));
}

#[test]
fn hilbert_hamiltons_ramify_at_two_and_the_real_place() {
    let out = descent(&["hilbert", "-1", "-1", "--format", "json"]);
    assert!(out.status.success(), "hyphen-led values parse; stderr: {}", stderr_of(&out));
    let doc = json_of(&out);
    assert_eq!(doc["ramification"], serde_json::json!(["2", "real"]));
}

#[test]
fn hilbert_split_algebra_and_single_place() {
    let out = descent(&["hilbert", "1", "5"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("splits"));

    let out = descent(&["hilbert", "2", "3", "--place", "3"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("= -1"));

    let out = descent(&["hilbert", "2", "3", "--place", "7"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("= 1"));
}

#[test]
fn nonzero_char_is_rejected_outside_table_and_verify() {
    for args in [
        &["specialize", "5", "11", "--char", "7"][..],
        &["hilbert", "2", "3", "--char", "7"][..],
        &["choose-lambda", "8", "--char", "7"][..],
    ] {
        let out = descent(args);
        assert_eq!(out.status.code(), Some(2), "{args:?} rejects --char");
        assert!(stderr_of(&out).contains("works over Q"), "{args:?}");
    }
}

#[test]
fn dump_fixtures_lists_every_family_once() {
    let out = descent(&["dump-fixtures"]);
    assert!(out.status.success());
    let doc = json_of(&out);
    let docs = doc.as_array().expect("array of fixtures");
    assert_eq!(docs.len(), 11, "ten orders plus the characteristic-2 variant");
    let pairs: Vec<(i64, i64)> = docs
        .iter()
        .map(|d| (d["N"].as_i64().unwrap(), d["char"].as_i64().unwrap()))
        .collect();
    assert!(pairs.contains(&(2, 0)) && pairs.contains(&(2, 2)), "both order-2 families: {pairs:?}");
    assert!(pairs.contains(&(12, 0)), "largest order present: {pairs:?}");
    for d in docs {
        assert!(d["source"].is_string(), "every fixture is attributed: {d}");
    }
}
