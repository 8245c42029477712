use foliation_algebra::ParseError;
use foliation_core::corpus::{classic_planar_germs, jordan_fixtures, seidenberg_corpus};
use foliation_core::parse_vector_field;
use foliation_lab::{run, Outcome, EXIT_ERROR, EXIT_OK, EXIT_REFUTED, SCHEMA};
use foliation_nevanlinna::{parse_curve, NevanlinnaError};
use serde_json::Value;

fn lab(args: &[&str]) -> Outcome {
    run(std::iter::once("foliation-lab").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], SCHEMA);
    v["result"].clone()
}

#[test]
fn vector_field_examples() {
    let v = parse_vector_field("v = (x^2 + y) d/dx + (x*y) d/dy").unwrap();
    assert_eq!(v.dim(), 2);
    assert_eq!(v.to_text(), parse_vector_field(&v.to_text()).unwrap().to_text());
    let w = parse_vector_field("v = (i*x) d/dx - y d/dy").unwrap();
    assert_eq!(w.linear_part().get(0, 0).to_string(), "i");
    assert!(matches!(parse_vector_field("v = exp(x) d/dx"), Err(ParseError::NonPolynomial { .. })));
}

#[test]
fn curve_examples() {
    assert_eq!(parse_curve("f(t) = (exp(t), exp(2t))").unwrap().dim(), 2);
    let f = parse_curve("f(t) = (t, t^2) zeros: both at 0").unwrap();
    assert_eq!(f.declared_zeros().len(), 1);
    assert_eq!(f.declared_zeros()[0].order, 1);
    assert!(matches!(
        parse_curve("f(t) = (1/t, t)"),
        Err(NevanlinnaError::Parse(ParseError::Syntax { .. }))
    ));
}

#[test]
fn germ_text_round_trips_on_the_fixture_corpus() {
    let germs = seidenberg_corpus(5, 60)
        .into_iter()
        .chain(classic_planar_germs())
        .chain(jordan_fixtures().into_iter().map(|f| f.germ));
    for g in germs {
        assert_eq!(parse_vector_field(&g.to_text()).unwrap(), g);
    }
}

#[test]
fn classify_report_keys() {
    let r = json(&lab(&["classify", "v = x d/dx - y d/dy"]));
    for key in ["multiplicity", "reduced", "simple_status", "dicritical"] {
        assert!(r.get(key).is_some(), "{key}");
    }
    assert_eq!(r["multiplicity"], 1);
    assert_eq!(r["reduced"], true);
}

#[test]
fn output_is_deterministic_and_sorted() {
    let args = ["resolve", "v = 2*y d/dx + 3*x^2 d/dy", "--depth", "6"];
    let a = lab(&args);
    assert_eq!(a, lab(&args));
    fn sorted(v: &Value) -> bool {
        match v {
            Value::Object(m) => m.keys().zip(m.keys().skip(1)).all(|(a, b)| a < b) && m.values().all(sorted),
            Value::Array(xs) => xs.iter().all(sorted),
            _ => true,
        }
    }
    assert!(sorted(&serde_json::from_str(&a.stdout).unwrap()));
    let keys: Vec<&str> = a.stdout.lines().filter(|l| l.starts_with("  \"")).collect();
    assert_eq!(keys, ["  \"command\": \"resolve\",", "  \"result\": {", "  \"schema\": \"foliation-lab/1\""]);
}

#[test]
fn depth_exceeded_is_a_result() {
    let r = json(&lab(&["resolve", "v = 2*y d/dx + 3*x^2 d/dy", "--depth", "1"]));
    assert_eq!(r["status"], "depth_exceeded");
}

#[test]
fn exit_codes() {
    assert_eq!(lab(&["weakly-reduced", "v = x d/dx - y d/dy"]).code, EXIT_OK);
    assert_eq!(lab(&["weakly-reduced", "v = x d/dx + y d/dy"]).code, EXIT_REFUTED);
    let parse = lab(&["classify", "v = exp(x) d/dx"]);
    assert_eq!(parse.code, EXIT_ERROR);
    assert!(parse.stderr.contains("1:5"));
    assert_eq!(lab(&["classify", "v = x d/dx - y d/dy", "--bogus"]).code, EXIT_ERROR);
    assert_eq!(lab(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(lab(&["classify", "v = 1 d/dx + y d/dy"]).code, EXIT_ERROR);
    assert_eq!(lab(&["nevanlinna", "f(t) = (t)", "--radii", "0:4:3"]).code, EXIT_ERROR);
    assert_eq!(lab(&["classify", "v = x d/dx - y d/dy", "--format", "csv"]).code, EXIT_ERROR);
    assert_eq!(lab(&["--help"]).code, EXIT_OK);
}

#[test]
fn blowup_lists_classified_points() {
    let r = json(&lab(&["blowup", "v = x d/dx - 2*y d/dy"]));
    let points = r["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert!(points.iter().all(|p| p["report"]["reduced"] == true));
}

#[test]
fn separatrix_commands() {
    let r = json(&lab(&["separatrix", "v = x d/dx + (-y + x^2) d/dy", "--direction", "1", "--order", "4"]));
    assert_eq!(r[0]["outcome"]["components"][1][2], "1/3");
    let r = json(&lab(&["separatrix", "v = x d/dx + (2*y + x^2) d/dy"]));
    assert_eq!(r[0]["outcome"]["outcome"], "resonance");
    let r = json(&lab(&["separatrix", "v = x d/dx - y d/dy", "--divisor", "{1,2}"]));
    assert_eq!(r["verdict"], "confirmed");
}

#[test]
fn effectivity_command() {
    let r = json(&lab(&["effectivity", "--n", "3", "--k", "8"]));
    assert_eq!(r["alpha"], 3);
    assert_eq!(r["exceptional_multiplicity"], 8);
    assert_eq!(r["count"]["verdict"]["verdict"], "section_exists");
}

#[test]
fn nevanlinna_profile_csv_and_json() {
    let csv = lab(&["nevanlinna", "f(t) = (t)", "--radii", "1:8:4", "--format", "csv"]);
    assert_eq!(csv.code, EXIT_OK);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines[0], "r,T,N,m,bound");
    assert_eq!(lines.len(), 5);
    let last: Vec<f64> = lines[4].split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 8.0);
    assert!((last[1] - (65f64 / 2.0).sqrt().ln()).abs() < 1e-7);

    let r = json(&lab(&["nevanlinna", "f(t) = (t)", "--radii", "1:8:4"]));
    assert_eq!(r["T_values"].as_array().unwrap().len(), 4);
}

#[test]
fn nevanlinna_modes() {
    let r = json(&lab(&[
        "nevanlinna",
        "f(t) = (t, t^2) zeros: both at 0",
        "--mode",
        "fmt",
        "--ideal",
        "x, y",
        "--ideal-zeros",
        "0:1",
        "--radii",
        "2:32:5",
    ]));
    assert_eq!(r["pass"], true);

    let r = json(&lab(&["nevanlinna", "P(t) = ((t - 2)(t - 1/2)) zeros: f1 at 2; f1 at 1/2", "--mode", "jensen", "--radii", "2:10:3"]));
    assert_eq!(r["pass"], true);

    let r = json(&lab(&["nevanlinna", "f(t) = (exp(t))", "--mode", "tautological", "--radii", "4:256:7"]));
    assert_eq!(r["applicability"]["kind"], "transcendental");
    let r = json(&lab(&["nevanlinna", "f(t) = (t)", "--mode", "tautological", "--radii", "4:64:5"]));
    assert_eq!(r["applicability"]["kind"], "not_applicable");

    let r = json(&lab(&["nevanlinna", "g(t) = (t exp(t)) zeros: f1 at 0", "--mode", "log-derivative", "--radii", "2:64:6"]));
    assert_eq!(r["pass"], true);

    let r = json(&lab(&[
        "nevanlinna",
        "f(t) = (t, t^2)",
        "--mode",
        "bookkeeping",
        "--field",
        "v = x d/dx + 2*y d/dy",
        "--at",
        "0",
    ]));
    assert_eq!((r["mu"].as_i64(), r["eta"].as_i64(), r["nu"].as_i64()), (Some(0), Some(-1), Some(1)));

    let not_leaf = lab(&["nevanlinna", "f(t) = (t, t)", "--mode", "bookkeeping", "--field", "v = x d/dx + 2*y d/dy"]);
    assert_eq!(not_leaf.code, EXIT_ERROR);
}

#[test]
fn plot_data_series() {
    let out = lab(&["plot-data", "f(t) = (exp(t))", "--radii", "4:32:4", "--format", "csv"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("r,T\n"));
    let r = json(&lab(&["plot-data", "f(t) = (t, t^2) zeros: both at 0", "--quantity", "N", "--ideal", "x, y", "--ideal-zeros", "0:1", "--radii", "1:4:3"]));
    assert_eq!(r["quantity"], "N");
    assert_eq!(r["points"][2]["value"].as_f64().unwrap(), 4f64.ln());
}

#[test]
fn budget_env_caps_quadrature() {
    let exe = env!("CARGO_BIN_EXE_foliation-lab");
    let out = std::process::Command::new(exe)
        .args(["nevanlinna", "f(t) = (exp(t))", "--radii", "1:128:3"])
        .env("FOLIATION_LAB_BUDGET", "2000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["status"]["status"], "diverged_within_budget");
}
