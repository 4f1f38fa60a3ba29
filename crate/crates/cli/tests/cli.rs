use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn posring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posring"))
        .args(args)
        .env_remove("POSRING_BUDGET_DEFAULT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = posring(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn schema(name: &str) -> Value {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    let cert = schema("certificate.schema.json");
    let id = cert["$id"].as_str().unwrap().to_string();
    let registry = jsonschema::Registry::new().add(id, cert).unwrap().prepare().unwrap();
    jsonschema::options()
        .with_registry(&registry)
        .build(&schema(name))
        .unwrap()
}

#[test]
fn atoms_of_two_thirds() {
    let o = posring(&["atoms", "--model", "N0[2/3]", "--side", "add", "--count", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1, 2/3, 4/9, 8/27\n"));
}

#[test]
fn atoms_json_and_listing() {
    let v = json(&["atoms", "--model", "N0[alg(x^3-2, 1, 2)]", "--json"]);
    assert_eq!(v["complete"], true);
    assert_eq!(v["atoms"].as_array().unwrap().len(), 3);
    assert_eq!(v["certificate"]["kind"], "AtomListing");
    assert!(validator("certificate.schema.json").is_valid(&v["certificate"]));

    let v = json(&["atoms", "--model", "N0[1/2]", "--json"]);
    assert_eq!(v["atoms"], serde_json::json!([]));
}

#[test]
fn atoms_dividing_element() {
    let v = json(&["atoms", "--model", "N0[x]", "--side", "mul", "--element", "x^3+1", "--json"]);
    assert_eq!(v["atoms"], serde_json::json!(["x^3 + 1"]));
    let v = json(&["atoms", "--model", "N0[x]", "--side", "mul", "--element", "(x+1)*(x^3+1)", "--json"]);
    assert_eq!(v["atoms"], serde_json::json!(["x + 1", "x^3 + 1"]));
}

#[test]
fn refute_hf_on_polynomials() {
    let v = json(&["refute", "--model", "N0[x]", "--side", "mul", "--property", "HF", "--json"]);
    assert_eq!(v["outcome"], "refuted");
    assert_eq!(v["certificate"]["kind"], "NotHF");
    assert_eq!(v["certificate"]["lengths"], serde_json::json!([2, 3]));
    assert!(validator("certificate.schema.json").is_valid(&v["certificate"]));
}

#[test]
fn refute_not_found_keeps_exit_zero() {
    let o = posring(&["refute", "--model", "numerical(3,5)", "--property", "LF"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no refutation of LF"));
    let v = json(&["refute", "--model", "numerical(3,5,7)", "--property", "LF", "--json"]);
    assert_eq!(v["certificate"]["kind"], "NotLF");
}

#[test]
fn lengths_and_factorize() {
    let v = json(&["lengths", "--model", "numerical(3,5)", "--element", "30", "--json"]);
    assert_eq!(v["lengths"], serde_json::json!([6, 8, 10]));
    let v = json(&["factorize", "--model", "N0[x]", "--side", "mul", "--element", "(x+1)*(x+2)*(x^2-x+3)", "--json"]);
    assert_eq!(v["factorizations"].as_array().unwrap().len(), 2);
    assert_eq!(v["complete"], true);
}

#[test]
fn membership_and_atom_queries() {
    let v = json(&["is-member", "--model", "N0[2/3]", "--element", "1/3", "--json"]);
    assert_eq!(v["member"], false);
    let v = json(&["is-member", "--model", "ray(2)", "--element", "5/2", "--json"]);
    assert_eq!(v["member"], true);
    let v = json(&["is-atom", "--model", "ray(2)", "--side", "mul", "--element", "5", "--json"]);
    assert_eq!(v["result"], "not-atom");
    let v = json(&["is-atom", "--model", "ray(2)", "--element", "5/2", "--json"]);
    assert_eq!(v["result"], "atom");
}

#[test]
fn accp_chain_command() {
    let v = json(&["accp-chain", "--model", "N0[2/3]", "--length", "10", "--json"]);
    assert_eq!(v["chain"].as_array().unwrap().len(), 11);
    assert_eq!(v["verified"], true);
    let o = posring(&["accp-chain", "--model", "N0[3/2]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let o = posring(&["atoms", "--model", "N0[2/3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(posring(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(posring(&["atoms", "--model", "ray(2)"]).status.code(), Some(2));
    assert_eq!(
        posring(&["atoms", "--model", "rank2(pi; 2)", "--side", "mul"]).status.code(),
        Some(2)
    );
    assert_eq!(posring(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_posring"))
            .args(["lengths", "--model", "numerical(3,5)", "--element", "30", "--json"])
            .env("POSRING_BUDGET_DEFAULT", v)
            .output()
            .unwrap()
    };
    let o = run("3");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(run("0").status.code(), Some(1));
    assert_eq!(run("many").status.code(), Some(1));
    let o = posring(&["lengths", "--model", "numerical(3,5)", "--element", "30", "--budget-length", "3"]);
    assert!(stdout(&o).contains("truncated"));
}

#[test]
fn diagram_matches_schema() {
    let v = json(&["verify-diagram", "--json"]);
    let val = validator("diagram-report.schema.json");
    let errors: Vec<String> = val.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let text = stdout(&posring(&["verify-diagram"]));
    assert!(text.trim_end().ends_with("all certificates verified: true"));
}
