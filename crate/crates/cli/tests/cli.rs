use std::process::Command;

fn qortho(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qortho")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn number(s: &str) -> f64 {
    s.trim().parse().unwrap_or_else(|_| panic!("not a number: {s}"))
}

#[test]
fn gen_examples() {
    let (code, out, _) = qortho(&["gen", "cont_q_hermite", "2", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"4*x^2 + q - 1\""), "{out}");

    let (code, out, _) = qortho(&["gen", "fibonacci", "0", "json"]);
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows[0]["text"], "0");
    assert_eq!(rows[0]["terms"].as_array().unwrap().len(), 0);

    let (code, out, _) = qortho(&["gen", "hermite_classical", "3", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("x^{3} - 3 s x"), "{out}");
}

#[test]
fn gen_flags_match_positionals() {
    let a = qortho(&["gen", "q_lucas", "6", "csv"]);
    let b = qortho(&["gen", "--family", "q_lucas", "--n", "6", "--format", "csv"]);
    assert_eq!(a, b);
    assert_eq!(a.1.lines().count(), 8);
}

#[test]
fn gen_json_round_trips() {
    for family in ["q_hermite", "rogers_szego", "physicists_q_hermite", "q_fibonacci"] {
        let (code, out, _) = qortho(&["gen", family, "8", "json"]);
        assert_eq!(code, 0);
        assert_eq!(qortho_cli::regen_json(&out).unwrap(), out, "{family}");
        let rows: Vec<qortho_cli::PolyRecord> = serde_json::from_str(&out).unwrap();
        for r in rows {
            assert_eq!(qortho::qcore::parse_poly(&r.text).unwrap(), r.poly().unwrap());
        }
    }
}

#[test]
fn gen_numeric_substitution() {
    // x^2 - (1-q)s at q = 1/2, s = 2.
    let (code, out, _) = qortho(&["gen", "q_hermite", "2", "text", "--q", "1/2", "--s", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "2: x^2 - 1");
    let (code, out, _) = qortho(&["gen", "cont_q_hermite", "2", "csv", "--q", "0"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().last().unwrap(), "cont_q_hermite,2,4*x^2 - 1");
}

#[test]
fn moments_examples() {
    let (code, out, _) = qortho(&["moments", "fibonacci", "4", "--s", "-1", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let values: Vec<_> = doc["moments"].as_array().unwrap().iter().map(|m| m["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "0", "1", "0", "2"]);
    assert!(doc["moments"].as_array().unwrap().iter().all(|m| m["matches"] == true));

    let (code, out, _) = qortho(&["moments", "q_lucas", "4", "csv", "--s", "-1"]);
    assert_eq!(code, 0);
    let last = out.lines().last().unwrap();
    assert!(squash(last).starts_with("4,q^4+q^3+2*q^2+q+1,"), "{last}");

    let (_, out, _) = qortho(&["moments", "hermite_classical", "3", "csv"]);
    let rows: Vec<_> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(rows, ["1", "0", "s", "0"]);
}

#[test]
fn verify_examples() {
    let (code, out, _) = qortho(&["verify", "q_hermite_exact", "--upto", "10"]);
    assert_eq!(code, 0, "{out}");
    for tag in ["eq_5_4", "eq_5_11", "eq_5_12", "eq_5_20", "eq_5_23", "eq_5_28", "eq_5_29", "eq_5_31"] {
        assert!(out.contains(tag), "missing {tag}");
    }
    let (code, out, _) = qortho(&["verify", "--suite", "circle", "--upto", "8"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("eq_2_23"));
    let (code, out, _) = qortho(&["verify", "numeric_weights", "--q", "1/2", "--tol", "1e-6", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["status"], "PASS");
}

#[test]
fn verify_reports_failure_with_exit_one() {
    // one truncated product factor cannot meet a tight tolerance
    let (code, out, _) = qortho(&["verify", "numeric_series", "--trunc", "1", "--tol", "1e-14"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn verify_is_deterministic() {
    let ids = |out: &str| out.lines().map(|l| l.split_whitespace().take(3).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>();
    let a = qortho(&["verify", "classical"]);
    let b = qortho(&["verify", "classical"]);
    assert_eq!(ids(&a.1), ids(&b.1));
}

#[test]
fn eval_examples() {
    let (code, out, _) = qortho(&["eval", "weight", "--x", "0", "--q", "0"]);
    assert_eq!(code, 0);
    assert!((number(&out) - 2.0 / std::f64::consts::PI).abs() < 1e-12);

    let (code, out, _) = qortho(&["eval", "wrapped_moment", "--n", "1", "--q", "1/2"]);
    assert_eq!(code, 0);
    assert!((number(&out) - 0.5f64.sqrt()).abs() < 1e-8);

    let (code, out, err) = qortho(&["eval", "weight", "--x", "1.5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty() && err.contains("outside"));

    // Lambda(x^2) = (1-q)/4
    let (code, out, _) = qortho(&["eval", "circle_moment", "--n", "2", "--q", "1/2"]);
    assert_eq!(code, 0);
    assert!((number(&out) - 0.125).abs() < 1e-8);

    let (code, out, _) = qortho(&["eval", "product_gf", "--x", "0.3", "--s", "0.1", "--t", "0.2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(doc["value"].as_f64().unwrap() < 1e-10);
}

#[test]
fn transform_commands() {
    let (code, out, _) = qortho(&["transform", "to_basis", "--family", "chebyshev_t", "--poly", "x^3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let coeffs: Vec<_> = doc["coeffs"].as_array().unwrap().iter().map(|c| squash(c.as_str().unwrap())).collect();
    assert_eq!(coeffs, ["0", "(3/4)", "0", "(1/4)"]);

    let (code, out, _) = qortho(&["transform", "connection_check", "--id", "eq_5_11", "--n", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("residual: 0"));

    let (code, out, _) =
        qortho(&["transform", "inverse_pair", "--id", "pair_5_21", "--seq", "1,2,-1,3", "--direction", "forward"]);
    assert_eq!(code, 0);
    let fwd = out.trim().trim_matches(['[', ']']).to_string();
    let (code, out, _) = qortho(&["transform", "inverse_pair", "--id", "pair_5_21", "--seq", &fwd, "--direction", "backward"]);
    assert_eq!(code, 0);
    assert_eq!(squash(&out), "[1,2,-1,3]");
}

#[test]
fn malformed_input_exits_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["gen"],
        &["gen", "nope", "3"],
        &["gen", "fibonacci", "3", "yaml"],
        &["gen", "fibonacci", "-3"],
        &["gen", "fibonacci", "3", "--q", "x+1"],
        &["gen", "cont_q_hermite", "3", "--q", "1/0"],
        &["moments", "q_lucas"],
        &["verify", "bogus"],
        &["verify", "circle", "--tol", "-1"],
        &["verify", "numeric_weights", "--q", "2"],
        &["eval", "nothing"],
        &["eval", "weight"],
        &["eval", "weight", "--x", "0", "--q", "1"],
        &["eval", "wrapped_moment", "--n", "1", "--q", "0"],
        &["eval", "product_gf", "--x", "0.3", "--t", "1.5"],
        &["transform", "to_basis", "--family", "lucas", "--poly", "x^^2"],
        &["transform", "connection_check", "--id", "eq_9_9", "--n", "2"],
        &["transform", "inverse_pair", "--id", "pair_3_6", "--seq", "1,,2"],
        &["transform", "spin"],
    ];
    for args in cases {
        let (code, _, err) = qortho(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.contains("panicked"), "{args:?}: {err}");
    }
}
