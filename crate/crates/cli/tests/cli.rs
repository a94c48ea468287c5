use std::process::{Command, Output};

fn logderiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logderiv"))
        .args(args)
        .env_remove("LOGDERIV_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["logderiv"];
    full.extend_from_slice(args);
    let code = logderiv_cli::run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn dynkin_of_ab_is_the_commutator() {
    let (code, out, _) = in_process(&["dynkin", "--expr", "a*b", "--derivation", "Y"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "ab - ba");
}

#[test]
fn dynkin_with_letter_and_diagonal_derivations() {
    // [δ(a), b] with δ(a) = 0 for the count of b
    let (_, out, _) = in_process(&["dynkin", "--expr", "a*b", "--derivation", "letter:b"]);
    assert_eq!(out.trim(), "0");
    let (_, out, _) = in_process(&["dynkin", "--expr", "a*b", "--derivation", "letter:a"]);
    assert_eq!(out.trim(), "ab - ba");
    // eigenvalue 2·1/2 + 3 on a Lie element of multidegree (2, 1)
    let (_, out, _) = in_process(&["dynkin", "--expr", "[a,[a,b]]", "--derivation", "diag:1/2,3"]);
    let (_, expected, _) = in_process(&["dynkin", "--expr", "4/3*[a,[a,b]]", "--derivation", "Y"]);
    assert_eq!(out, expected);
}

#[test]
fn dinv_json_is_the_exponential() {
    let (code, out, _) = in_process(&["dinv", "--expr", "a", "--order", "3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        r#"{"truncation":3,"terms":[{"coeff":"1","word":""},{"coeff":"1","word":"a"},{"coeff":"1/2","word":"aa"},{"coeff":"1/6","word":"aaa"}]}"#
    );
}

#[test]
fn project_modes() {
    let (_, out, _) = in_process(&["project", "--expr", "a*b", "--mode", "classical"]);
    assert_eq!(out.trim(), "1/2 ab - 1/2 ba");
    let (_, out, _) = in_process(&["project", "--expr", "b*a*a", "--mode", "letter:b"]);
    assert_eq!(out.trim(), "aab - 2 aba + baa");
    let (code, _, err) = in_process(&["project", "--expr", "a + a*b"]);
    assert_eq!(code, 2);
    assert!(err.contains("homogeneous"));
}

#[test]
fn atkinson_and_logderiv() {
    let (_, out, _) = in_process(&["atkinson", "--generator", "a", "--order", "3"]);
    assert_eq!(out.trim(), "1 + a + 1/2 aa + 1/6 aaa");
    let (code, out, _) = in_process(&["logderiv", "--generator", "a + [a,b]", "--order", "5", "--d", "Y"]);
    assert_eq!(code, 0);
    assert!(out.contains("agree:     true"));
    let (code, out, _) = in_process(&["logderiv", "--generator", "a*b", "--order", "4", "--d", "diag:1,2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["recursion"], v["direct"]);
}

#[test]
fn magnus_commands_match_the_library() {
    use logderiv_core::algebra::DiagonalDerivation;
    use logderiv_core::magnus::{magnus_forward, magnus_solve};
    use logderiv_core::rational::int;
    use logderiv_core::tensor::{bracket, letter, TensorAlgebra};

    let t = TensorAlgebra::new(2).unwrap();
    let delta = DiagonalDerivation::weights([int(1), int(2)]);
    let h = letter(0) + bracket(&letter(0), &letter(1));
    let (code, out, _) = in_process(&["magnus", "--solve", "--expr", "a + [a,b]", "--order", "4", "--delta", "diag:1,2"]);
    assert_eq!(code, 0);
    let l = magnus_solve(&t, &delta, &h, 4).unwrap();
    assert_eq!(out.trim(), l.to_string());
    assert_eq!(magnus_forward(&t, &delta, &l, 4).unwrap(), h);
    let (_, out, _) = in_process(&["magnus", "--forward", "--expr", "a + [a,b]", "--order", "3"]);
    let expected = magnus_forward(&t, &DiagonalDerivation::Graduation, &h, 3).unwrap();
    assert_eq!(out.trim(), expected.to_string());
}

#[test]
fn exit_codes() {
    let (code, _, err) = in_process(&["dynkin", "--expr", "[a"]);
    assert_eq!(code, 1);
    assert!(err.contains("column 3"));
    let (code, _, err) = in_process(&["dynkin", "--expr", "c"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown letter"));
    assert_eq!(in_process(&["dynkin", "--expr", "c", "--alphabet", "3"]).0, 0);
    assert_eq!(in_process(&["nonsense"]).0, 1);
    assert_eq!(in_process(&["dynkin", "--expr", "a", "--derivation", "Z"]).0, 1);
    assert_eq!(in_process(&["dynkin", "--expr", "a", "--derivation", "diag:1"]).0, 1);
    assert_eq!(in_process(&["--help"]).0, 0);
    // mathematical preconditions
    assert_eq!(in_process(&["magnus", "--forward", "--expr", "a*b"]).0, 2);
    assert_eq!(in_process(&["magnus", "--solve", "--expr", "a", "--delta", "diag:1,-1"]).0, 2);
    assert_eq!(in_process(&["dinv", "--expr", "a*a"]).0, 2);
    assert_eq!(in_process(&["atkinson", "--generator", "1 + a"]).0, 2);
    assert_eq!(in_process(&["dynkin", "--expr", "exp(1)"]).0, 2);
}

#[test]
fn degree_cap_from_environment() {
    let capped = Command::new(env!("CARGO_BIN_EXE_logderiv"))
        .args(["dinv", "--expr", "a", "--order", "4"])
        .env("LOGDERIV_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(1));
    let raised = Command::new(env!("CARGO_BIN_EXE_logderiv"))
        .args(["dinv", "--expr", "a", "--order", "14"])
        .env("LOGDERIV_MAX_DEGREE", "14")
        .output()
        .unwrap();
    assert_eq!(raised.status.code(), Some(0));
    assert_eq!(logderiv(&["dinv", "--expr", "a", "--order", "14"]).status.code(), Some(1));
}

#[test]
fn ode_command_reports_the_relation() {
    let dir = std::env::temp_dir().join(format!("logderiv-ode-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "entries": [[["1", "1"], ["2"]], [["0", "3"], ["-1", "0", "1/2"]]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = logderiv(&["ode", "--matrix", p, "--order", "4", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("magnus relation: holds"));
    let o = logderiv(&["ode", "--matrix", p, "--order", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relation_holds"], true);
    assert_eq!(v["exp_round_trip"], true);
    assert_eq!(v["omega"][0]["lambda"], 1);

    std::fs::write(&path, r#"{"dimension": 2, "entries": [[["1"]]]}"#).unwrap();
    assert_eq!(logderiv(&["ode", "--matrix", p]).status.code(), Some(1));
    assert_eq!(logderiv(&["ode", "--matrix", "/nonexistent/a.json"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn constant_generator_gives_linear_omega() {
    let dir = std::env::temp_dir().join(format!("logderiv-ode-const-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a.json");
    std::fs::write(&path, r#"{"dimension": 2, "entries": [[["1"], ["2"]], [["3"], ["4"]]]}"#).unwrap();
    let o = logderiv(&["ode", "--matrix", path.to_str().unwrap(), "--order", "4"]);
    let text = stdout(&o);
    assert!(text.contains("λ^1: [t, 2 t; 3 t, 4 t]"), "{text}");
    assert!(!text.contains("λ^2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_single_suite_text_and_json() {
    let o = logderiv(&["verify", "--suite", "dynkin", "--max-degree", "3", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.ends_with("0 failed")));
    let o = logderiv(&["verify", "--suite", "ode", "--max-degree", "3", "--seed", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(logderiv(&["verify", "--suite", "bogus"]).status.code(), Some(1));
}
