use std::process::{Command, Output};

use serde_json::Value;

fn wordmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmap"))
        .args(args)
        .arg("--quiet")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let out = wordmap(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn squares_in_c12() {
    let doc = report(&["image", "--group", "C12", "--word", "x^2"]);
    assert_eq!(doc["result"]["size"], 6);
    assert_eq!(doc["word"], "x^2");
    // the even residues: identity and the powers a^2, a^4, ..., a^10
    let a = "(1,2,3,4,5,6,7,8,9,10,11,12)";
    let gen = wordmap::Permutation::parse_cycles(12, a).unwrap();
    let mut expected: Vec<String> = (0..6).map(|i| gen.pow(2 * i).to_string()).collect();
    expected.sort();
    let got: Vec<String> = doc["result"]["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn commutators_fill_a5_under_both_strategies() {
    let orbit = report(&["image", "--group", "A5", "--word", "[x,y]", "--strategy", "orbit"]);
    let brute = report(&["image", "--group", "A5", "--word", "[x,y]", "--strategy", "brute"]);
    assert_eq!(orbit["result"]["size"], 60);
    assert_eq!(orbit["result"]["elements"], brute["result"]["elements"]);
    assert!(orbit["result"]["tuples_evaluated"].as_u64() < brute["result"]["tuples_evaluated"].as_u64());
}

#[test]
fn identity_word_on_m11_is_everything() {
    let doc = report(&["image", "--group", "M11", "--word", "x"]);
    assert_eq!(doc["result"]["size"], 7920);
    assert_eq!(doc["group"]["order"], 7920);
    assert_eq!(doc["group"]["class_sizes"].as_array().unwrap().len(), 10);
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn dn_cogen_and_closure() {
    assert_eq!(report(&["dn", "--group", "A5", "-n", "2"])["result"]["d_n"], 19);
    let cogen = report(&["cogen", "--group", "M11"]);
    assert_eq!(
        cogen["result"]["summary"],
        "all 7919 nontrivial elements have a cogenerator"
    );
    let closure = report(&["closure", "--group", "M11", "--set-from-image", "[x,y]"]);
    assert_eq!(closure["result"]["closure"]["aut_closed"], true);
    assert_eq!(closure["result"]["closure"]["endo_closed"], true);
}

#[test]
fn explicit_set_closure_reports_a_violation() {
    let doc = report(&["closure", "--group", "S4", "--set", "();(1,2)"]);
    assert_eq!(doc["result"]["closure"]["aut_closed"], false);
    assert!(doc["result"]["closure"]["violation"]["by"].is_string());
}

#[test]
fn builtin_checks_pass() {
    let t2 = report(&["theorem2"]);
    assert_eq!(t2["result"]["verdict"], "PASS");
    let t3 = report(&["theorem3"]);
    assert_eq!(t3["result"]["verdict"], "PASS");
    assert_eq!(t3["result"]["details"]["subset"], "{1,a^2,a^3,a^4,a^6,a^8,a^9,a^10}");
}

#[test]
fn chirality_of_the_short_word_on_order_three_elements() {
    let doc = report(&[
        "chirality",
        "--group",
        "M11",
        "--word",
        "[x(x^y)x, y^(x y) y]",
        "--strategy",
        "orbit",
        "--restrict-orders",
        "3",
    ]);
    assert_eq!(doc["result"]["chiral"], true);
    let spectrum = doc["result"]["witness_order_spectrum"].as_object().unwrap();
    assert_eq!(spectrum.keys().collect::<Vec<_>>(), vec!["11"]);
}

#[test]
fn exit_codes() {
    assert_eq!(wordmap(&["image", "--group", "A5", "--word", "x^"]).status.code(), Some(2));
    assert_eq!(wordmap(&["image", "--group", "Q8", "--word", "x"]).status.code(), Some(2));
    assert_eq!(wordmap(&["image", "--group", "S20", "--word", "x"]).status.code(), Some(2));
    assert_eq!(
        wordmap(&["image", "--group", "S8", "--word", "[x,y,z]", "--max-tuples", "1000"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn text_and_csv_carry_the_json_data() {
    let json = report(&["image", "--group", "S3", "--word", "x^2"]);
    let text = String::from_utf8(wordmap(&["image", "--group", "S3", "--word", "x^2"]).stdout).unwrap();
    assert!(text.contains(&format!("result.size: {}", json["result"]["size"])));
    let csv = String::from_utf8(
        wordmap(&["image", "--group", "S3", "--word", "x^2", "--output", "csv"]).stdout,
    )
    .unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("element,order,class_representative"));
    assert_eq!(lines.count() as u64, json["result"]["size"].as_u64().unwrap());
}

#[test]
fn catalog_is_seed_deterministic() {
    let args = ["catalog", "--group", "S3", "--samples", "50", "--max-length", "6", "--seed", "7"];
    let a = report(&args);
    let b = report(&args);
    assert_eq!(a, b);
    for e in a["result"]["entries"].as_array().unwrap() {
        assert_eq!(e["contains_identity"], true);
        assert_eq!(e["closure"]["aut_closed"], true);
    }
}
