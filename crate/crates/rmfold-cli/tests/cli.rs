//! End-to-end tests of the command-line interface, including the exit-code
//! contract (0 pass, 1 verification failure, 2 usage/parse error) and the
//! synth -> check round trip through the circuit JSON format.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rmfold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("rmfold-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn code_prints_parameters_and_logicals() {
    let out = rmfold(&["code", "--m", "2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("[[4, 2, 2]]"));

    let out = rmfold(&["code", "--m", "4", "--logicals"]);
    let text = stdout_of(&out);
    assert!(text.contains("[[16, 6, 4]]"));
    // Logical X(B_1) acts on positions {3, 7, 11, 15}.
    assert!(text.contains("B={1,2}    ...X...X...X...X"));
    // Logical Z(B_1) acts on positions {12..15}.
    assert!(text.contains("B={1,2}    ............ZZZZ"));

    // Odd m is a usage error.
    let out = rmfold(&["code", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn code_reduced_matches_paper_choice() {
    let out = rmfold(&["code", "--m", "4", "--reduced", "--h-empty", "4"]);
    let text = stdout_of(&out);
    assert!(text.contains("A={}         XXXXXXXX........"));

    let out = rmfold(&["code", "--m", "4", "--json"]);
    let desc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(desc["n"], 16);
    assert_eq!(desc["k"], 6);
    assert_eq!(desc["canonical_indices"][0], serde_json::json!([1, 2]));
}

#[test]
fn synth_and_check_round_trip() {
    let path = tmp_path("s2.json");
    let out = rmfold(&[
        "synth",
        "s",
        "--qubit",
        "2",
        "--m",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("\"depth\":4"));

    let out = rmfold(&["check", path.to_str().unwrap(), "--m", "4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("stabilizer preservation: PASS"));
    assert!(text.contains("diagonal decomposition: S(2)"));

    // m mismatch is a usage error.
    let out = rmfold(&["check", path.to_str().unwrap(), "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn synth_operand_forms() {
    // Set form with braces and by-set pair form.
    let out = rmfold(&["synth", "s", "--qubit", "1,3", "--m", "4"]);
    assert!(out.status.success());
    let combined: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(combined["circuit"]["meta"]["action"], "S(2)");
    assert_eq!(combined["depth_report"]["depth"], 4);

    let out = rmfold(&[
        "synth", "cz00", "--qubits", "{1,3},{1,4}", "--m", "4",
    ]);
    assert!(out.status.success());
    let combined: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(combined["circuit"]["meta"]["action"], "CZ00(2,3)");
    assert_eq!(combined["depth_report"]["depth"], 2);
    assert_eq!(combined["depth_report"]["asymptotic"], "sqrt(n)");

    // Bad operand: wrong set size.
    let out = rmfold(&["synth", "s", "--qubit", "1,2,3", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn synth_with_oracle_cross_check() {
    let out = rmfold(&["synth", "h", "--qubit", "1", "--m", "2", "--oracle"]);
    assert!(out.status.success());
    let out = rmfold(&["synth", "cx", "--qubits", "1,2", "--m", "2", "--oracle"]);
    assert!(out.status.success());
}

#[test]
fn verify_pass_and_unknown_theorem() {
    let out = rmfold(&["verify", "--theorem", "thm3", "--m", "2..4"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("thm3: PASS"));

    let out = rmfold(&["verify", "--theorem", "tables-m4"]);
    assert!(out.status.success());

    let out = rmfold(&["verify", "--theorem", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = rmfold(&["verify", "--theorem", "thm2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let out = rmfold(&["verify", "--theorem", "thm1", "--m", "2,4", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["theorem"], "thm1");
    assert_eq!(report["failures"], serde_json::json!([]));
}

#[test]
fn bound_prints_both_branches_and_regression_value() {
    let out = rmfold(&["bound", "--n", "16", "--k", "6", "--l", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("852437556169034724016128000"));
    assert!(text.contains("1650277538512462888319/2377522578222945174985"));
    assert!(text.contains("sum"));

    let out = rmfold(&["bound", "--n", "4", "--k", "0", "--l", "2"]);
    assert!(stdout_of(&out).contains("bound = 0"));

    // l > n is a usage error.
    let out = rmfold(&["bound", "--n", "4", "--k", "2", "--l", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_flags_broken_circuit_with_witness() {
    // U_P(Q(1,2)) at m = 4 with one CZ deleted no longer preserves the
    // stabilizer group.
    use rmfold::circuit::fold_phase;
    use rmfold::rmcode::perm_q;
    let good = fold_phase(4, &perm_q(1, 2, 4).unwrap()).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&good.to_json()).unwrap();
    let gates = v["layers"][0]["gates"].as_array_mut().unwrap();
    let removed = gates.remove(0);
    assert_eq!(removed["g"], "CZ");
    let path = tmp_path("broken.json");
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();

    let out = rmfold(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("stabilizer preservation: FAIL"));
    assert!(text.contains("witness"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn check_identity_and_up_e() {
    // Empty circuit: identity tableau.
    let path = tmp_path("empty.json");
    std::fs::write(&path, r#"{"m":2,"layers":[],"meta":{}}"#).unwrap();
    let out = rmfold(&["check", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("identity tableau"));
    std::fs::remove_file(&path).ok();

    // U_P(e) at m = 4 decomposes into the three complement-pair CZ gates.
    use rmfold::circuit::fold_phase;
    use rmfold::Permutation;
    let up_e = fold_phase(4, &Permutation::identity(16)).unwrap();
    let path = tmp_path("upe.json");
    std::fs::write(&path, up_e.to_json()).unwrap();
    let out = rmfold(&["check", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("CZ(1,4) CZ(2,5) CZ(3,6)"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn tableau_compilation_from_file() {
    use rmfold::pauli::Gate;
    use rmfold::tableau::tableau_from_word;
    let target = tableau_from_word(2, &[Gate::H(0), Gate::Cz(0, 1), Gate::S(1)]);
    let path = tmp_path("target.json");
    std::fs::write(&path, serde_json::to_string(&target.to_json()).unwrap()).unwrap();
    let out_path = tmp_path("compiled.json");
    let out = rmfold(&[
        "synth",
        "tableau",
        "--file",
        path.to_str().unwrap(),
        "--m",
        "2",
        "--out",
        out_path.to_str().unwrap(),
        "--oracle",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // The compiled circuit reproduces the target through cmd_check --json.
    let out = rmfold(&["check", out_path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let json_start = text.find('{').unwrap();
    let dumped: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(dumped, target.to_json());
    std::fs::remove_file(&path).ok();
    std::fs::remove_file(&out_path).ok();
}
