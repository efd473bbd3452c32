use std::path::{Path, PathBuf};
use std::process::Command;

use hopfpi_cli::session::{parse_input, FieldSpec, SessionSpec};
use serde_json::Value;

fn inputs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("inputs")
}

fn hopfpi(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfpi")).args(args).output().expect("spawn hopfpi");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().unwrap())
}

fn run_file(name: &str) -> (Value, i32) {
    let path = inputs().join(name);
    hopfpi(&["run", "--input", path.to_str().unwrap()])
}

#[test]
fn golden_exit_codes() {
    let expected = [
        ("c01_adjoint_fq.toml", 0),
        ("c02_standard_vn.toml", 0),
        ("c03_delta_fq.toml", 0),
        ("c04_vn_rep.toml", 0),
        ("c05_standard_fq.toml", 0),
        ("c06_a2_borel.toml", 0),
        ("c07_example2_pi.toml", 0),
        ("c08_quantum_linear_space.toml", 0),
        ("c09_bilinear.toml", 0),
        ("c10_group_s3.toml", 0),
        ("c11_colorlie_curated.toml", 0),
        ("c12_tlsabw_search.toml", 0),
        ("c13_char_kernel.toml", 0),
        ("datum_example1_explicit.toml", 0),
        ("datum_invalid.toml", 1),
        ("fq_transcendental.toml", 3),
        ("heisenberg_search.toml", 0),
        ("syntax_error.toml", 2),
    ];
    let on_disk = std::fs::read_dir(inputs()).unwrap().count();
    assert_eq!(on_disk, expected.len(), "every input file needs an expected exit code");
    for (name, code) in expected {
        let (v, got) = run_file(name);
        assert_eq!(got, code, "{name}: {v}");
        assert_eq!(v["exit_code"], code, "{name}");
    }
}

#[test]
fn corpus_round_trips() {
    for entry in std::fs::read_dir(inputs()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(spec) = parse_input(&text) else { continue };
        let back = toml::to_string(&spec).unwrap();
        let again = parse_input(&back).unwrap_or_else(|e| panic!("{}: {e}\n{back}", path.display()));
        assert_eq!(spec, again, "{}", path.display());
    }
}

#[test]
fn fq_session_from_field_and_preset() {
    let spec = parse_input("field = {kind=\"cyclotomic\", n=4}\n[algebra]\npreset=\"Fq\"\nq=\"zeta\"\n").unwrap();
    assert_eq!(spec.field, FieldSpec::Cyclotomic { n: 4 });
    let ctx = spec.ctx().unwrap();
    let p = spec.presentation(ctx).unwrap();
    let names: Vec<&str> = p.gens().iter().map(|g| g.name.as_str()).collect();
    assert_eq!(names, ["x"]);
}

#[test]
fn syntax_error_points_at_second_caret() {
    let text = "field = { kind = \"rational_function\" }\n[algebra]\npreset = \"Fq\"\nq = \"q^^2\"\n";
    let e = parse_input(text).unwrap_err();
    assert_eq!((e.line, e.column), (4, 8), "{e}");
    let (v, code) = run_file("syntax_error.toml");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["line"], 5);
    assert_eq!(v["error"]["column"], 8);
}

#[test]
fn toml_errors_are_located() {
    let e = parse_input("field = { kind = \"rational\" }\n[algebra]\npreset = 3\n").unwrap_err();
    assert_eq!(e.line, 3);
    let e = parse_input("field = { kind = \"rational\" }\n[bogus]\n").unwrap_err();
    assert_eq!(e.line, 2);
}

#[test]
fn explicit_example1_datum_matches_named_one() {
    let text = std::fs::read_to_string(inputs().join("datum_example1_explicit.toml")).unwrap();
    let spec = parse_input(&text).unwrap();
    let ctx = spec.ctx().unwrap();
    let d = spec.cartan_datum(ctx).unwrap();
    assert!(d.validate().valid);
    let named = SessionSpec {
        datum: Some(hopfpi_cli::session::DatumSpec {
            example: Some("example1".into()),
            q: Some("q".into()),
            ..Default::default()
        }),
        ..spec.clone()
    };
    let e = named.cartan_datum(ctx).unwrap();
    assert_eq!(d.cartan, e.cartan);
    assert_eq!(d.g, e.g);
    for (a, b) in d.chi.iter().zip(&e.chi) {
        assert_eq!(a.images(), b.images());
    }
}

#[test]
fn pi_decide_example2_cyclic() {
    let (v, code) = run_file("c07_example2_pi.toml");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pi"], true);
    assert_eq!(v["result"]["orders"], serde_json::json!([3, 3]));
}

#[test]
fn delta_dim_of_inverse_grouplike_is_order_of_q() {
    let path = inputs().join("c03_delta_fq.toml");
    let (v, code) = hopfpi(&["delta-dim", "--input", path.to_str().unwrap(), "--element", "a^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 3);
    let (v, _) = run_file("c03_delta_fq.toml");
    assert_eq!(v["result"]["dim"], 2);
}

#[test]
fn standard_identity_on_vn_without_input() {
    let (v, code) = hopfpi(&["identity-check", "--standard", "4", "--target", "vn", "--n", "2"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["status"], "holds_exact");
    let (v, code) = hopfpi(&["identity-check", "--standard", "3", "--target", "vn", "--n", "2"]);
    assert_eq!(code, 1, "{v}");
    assert_eq!(v["result"]["status"], "fails");
    assert!(v["result"]["counterexample"].as_array().is_some());
}

#[test]
fn min_identity_degree_of_m2() {
    let (v, code) = hopfpi(&["min-identity-degree", "--target", "matrices", "--n", "2", "--max", "4"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["min_degree"], 4);
    let (v, code) = hopfpi(&["min-identity-degree", "--target", "matrices", "--n", "2", "--max", "3"]);
    assert_eq!(code, 3, "{v}");
}

#[test]
fn output_is_deterministic_for_fixed_seed() {
    let args = ["bilinear-bound", "--n", "20", "--seed", "11"];
    let (a, _) = hopfpi(&args);
    let (b, _) = hopfpi(&args);
    assert_eq!(a, b);
    assert_eq!(a["result"]["violations"], serde_json::json!([]));
}

#[test]
fn invalid_invocations_exit_2() {
    let (v, code) = hopfpi(&["normalize"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("--input"));
    let path = inputs().join("c01_adjoint_fq.toml");
    let (_, code) = hopfpi(&["normalize", "--input", path.to_str().unwrap(), "--element", "y*x"]);
    assert_eq!(code, 2);
    let (_, code) = hopfpi(&["identity-check", "--standard", "4", "--target", "vn", "--n", "2", "--mode", "fast"]);
    assert_eq!(code, 2);
}

#[test]
fn normalize_and_adjoint() {
    let path = inputs().join("c06_a2_borel.toml");
    let (v, code) = hopfpi(&["normalize", "--input", path.to_str().unwrap(), "--element", "x2*x1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["normal_form"], "q*x1*x2 - q*x12");
    let (v, _) = run_file("c01_adjoint_fq.toml");
    assert_eq!(v["result"]["result"], "(2*zeta + 2)*x^2*a");
}
