//! End-to-end tests for the `nilchar` binary: exit codes, report shapes,
//! and byte-for-byte determinism of seeded runs.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn nilchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilchar"))
        .args(args)
        .output()
        .expect("failed to spawn nilchar")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not a JSON report: {e}\n--- stdout ---\n{}\n--- stderr ---\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    file.write_all(contents.as_bytes()).expect("write temp file");
    file
}

#[test]
fn validate_reports_the_example_as_nilpotent_of_class_three() {
    let out = nilchar(&["--builtin", "example5", "validate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["dim"], 5);
    assert_eq!(v["antisymmetric"], true);
    assert_eq!(v["jacobi"], true);
    assert_eq!(v["nilpotent"], true);
    assert_eq!(v["class"], 3);
    assert_eq!(v["characters"]["lambda"]["on"], "h");
    assert_eq!(v["forms"]["f0"]["E"], "1");
}

#[test]
fn validate_accepts_a_definition_file() {
    let file = temp_file(
        "algebra heis\nbasis X Y Z\nbracket [X,Y] = Z\n\
         subalgebra h = Y\ncharacter chi on h: Y=2\n",
    );
    let out = nilchar(&["--file", file.path().to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["algebra"], "heis");
    assert_eq!(v["class"], 2);
    assert_eq!(v["characters"]["chi"]["values"][0], "2");
}

#[test]
fn validate_exits_one_when_the_algebra_is_not_nilpotent() {
    // so(3): a genuine Lie algebra, but semisimple rather than nilpotent.
    let file = temp_file(
        "algebra so3\nbasis X Y Z\nbracket [X,Y] = Z\nbracket [Y,Z] = X\nbracket [Z,X] = Y\n",
    );
    let out = nilchar(&["--file", file.path().to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["jacobi"], true);
    assert_eq!(v["nilpotent"], false);
}

#[test]
fn parse_errors_exit_two_and_name_the_offender() {
    let file = temp_file("algebra bad\nbasis X Y\nbracket [X,Y] = 1/*X\n");
    let out = nilchar(&["--file", file.path().to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("parse error:"), "stderr: {err}");
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn unknown_builtins_and_missing_inputs_exit_two() {
    let out = nilchar(&["--builtin", "nonexistent", "validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown builtin"));

    let out = nilchar(&["validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--builtin"));

    let out = nilchar(&["--builtin", "example5", "character", "--form", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown form"));

    let out = nilchar(&["--builtin", "heisenberg3", "orbits"]);
    assert_eq!(out.status.code(), Some(2), "two characters, none selected");
    assert!(String::from_utf8_lossy(&out.stderr).contains("--character"));
}

#[test]
fn bad_command_lines_exit_two() {
    let out = nilchar(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn orbits_reports_the_frozen_profile_with_the_default_seed() {
    let out = nilchar(&["--builtin", "example5", "orbits", "--samples", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["seed"], 0, "default seed is recorded in the report");
    assert_eq!(v["max_profile"]["dim_h_orbit"], 1);
    assert_eq!(v["max_profile"]["dim_g_orbit"], 2);
    assert_eq!(v["holds_generically"], true);
}

#[test]
fn invariants_degree_zero_is_the_constants() {
    let out = nilchar(&["--builtin", "example5", "invariants", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["basis"][0], "1");
}

#[test]
fn invariants_degree_two_contains_the_quadratic_invariant() {
    let out = nilchar(&["--builtin", "example5", "invariants", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["dimension"], 4);
    let basis: Vec<&str> = v["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert!(basis.contains(&"-2*u*z + v^2"), "basis: {basis:?}");
}

#[test]
fn the_specialized_family_passes_the_invariance_certificate() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "invariants",
        "--degree",
        "2",
        "--specialize",
        "t=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["family"]["parameter"], "t");
    assert!(v["family"]["dimension"].as_u64().unwrap() >= 1);
    assert_eq!(v["specialization"]["t"], "1");
    assert_eq!(v["specialization"]["all_invariant"], true);
    assert!(v["specialization"]["nonzero"].as_u64().unwrap() >= 1);
}

#[test]
fn character_with_both_methods_agrees_on_the_example() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "character",
        "--form",
        "f0",
        "--method",
        "both",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["ct"]["multiplicative"], true);
    // gamma_ct on [1, z, z^2, k] at the bundled form with l(Z) = 2.
    let values: Vec<&str> = v["ct"]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|entry| entry["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "2", "4", "13"]);
}

#[test]
fn character_exits_one_when_the_form_does_not_extend_the_character() {
    let out = nilchar(&[
        "--builtin",
        "heisenberg3",
        "--character",
        "mu",
        "character",
        "--form",
        "f0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "stderr: {err}");
}

#[test]
fn compare_exits_one_when_no_sample_is_lagrangian() {
    // mu lives on the center of heisenberg3, so h.f = 0 while g.f is
    // 2-dimensional at every sampled functional.
    let out = nilchar(&[
        "--builtin",
        "heisenberg3",
        "--character",
        "mu",
        "compare",
        "--samples",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = report(&out);
    assert_eq!(v["agreement_all"], false);
    for entry in v["results"].as_array().unwrap() {
        assert!(entry["error"].as_str().unwrap().contains("lagrangian"));
    }
}

#[test]
fn compare_agrees_at_the_documented_sample_point() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "compare",
        "--degree",
        "3",
        "--samples",
        "5",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["agreement_all"], true);
    assert_eq!(v["seed"], 7);
    assert!(v["convention"].as_str().unwrap().contains("gamma_ct"));
    for entry in v["results"].as_array().unwrap() {
        assert_eq!(entry["agreement"], true);
    }
}

#[test]
fn identical_seeds_give_byte_identical_reports() {
    let args = [
        "--builtin",
        "example5",
        "compare",
        "--degree",
        "2",
        "--samples",
        "3",
        "--seed",
        "11",
    ];
    let first = nilchar(&args);
    let second = nilchar(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    // The default seed is 0, spelled out or left implicit.
    let implicit = nilchar(&["--builtin", "example5", "orbits", "--samples", "4"]);
    let explicit = nilchar(&[
        "--builtin",
        "example5",
        "orbits",
        "--samples",
        "4",
        "--seed",
        "0",
    ]);
    assert_eq!(implicit.stdout, explicit.stdout);
}

#[test]
fn example_check_verifies_both_identities() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "example-check",
        "--degree",
        "3",
        "--trials",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["seed"], 0);
    for sample in v["samples"].as_array().unwrap() {
        assert_eq!(sample["operator_identity"], true);
        assert_eq!(sample["scalar_identity"], true);
        assert_eq!(sample["failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn example_check_rejects_other_inputs() {
    let out = nilchar(&["--builtin", "heisenberg3", "example-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn supplement_map_is_the_identity_between_equal_supplements() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "supplement-map",
        "--from",
        "default",
        "--to",
        "span:U,V,Z",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    assert_eq!(v["variables"]["u"], "u");
    assert_eq!(v["variables"]["v"], "v");
    assert_eq!(v["variables"]["z"], "z");
    for entry in v["invariants"].as_array().unwrap() {
        assert_eq!(entry["from"], entry["to"]);
    }
}

#[test]
fn supplement_map_to_the_vergne_supplement_shears_u() {
    let out = nilchar(&[
        "--builtin",
        "example5",
        "supplement-map",
        "--from",
        "default",
        "--to",
        "vergne:f0",
        "--degree",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = report(&out);
    // With l(Z) = 2 the Vergne supplement replaces U by X - 2U, and the
    // quadratic invariant becomes (x - 2u)z + v^2 in the new coordinates.
    let to_vars: Vec<&str> = v["to"]["variables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert!(to_vars.contains(&"(x - 2*u)"), "to vars: {to_vars:?}");
    let images: Vec<&str> = v["invariants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|entry| entry["to"].as_str().unwrap())
        .collect();
    assert!(
        images.contains(&"(x - 2*u)*z + v^2"),
        "images: {images:?}"
    );
}
