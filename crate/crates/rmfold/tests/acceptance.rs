//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them).
//!
//! Budgets and tolerances are pinned in the assertions themselves.

use std::time::Instant;

use rmfold::bound::{depth_lower_bound, CliffordCountFormula};
use rmfold::circuit::fold_swap;
use rmfold::f2::IndexSet;
use rmfold::oracle::{encoded_logical_unitary, tableau_matches_unitary, word_matrix};
use rmfold::pauli::Gate;
use rmfold::qrm::QrmCode;
use rmfold::rmcode::{perm_p, perm_q};
use rmfold::synth::{
    compile_clifford, phase_product_circuit, synth_cz00, synth_cz00_adjacent, synth_derived,
    synth_h, synth_s, synth_sw, DerivedKind,
};
use rmfold::tableau::{logical_action, tableau_from_word};
use rmfold::verify::{
    bound_family_ratios, random_clifford_word, run_theorem, SplitMix64, SweepOutcome,
};
use rmfold::PairSet;

fn report(criterion: u32, label: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] criterion {criterion} ({label}): {}{}",
        if pass { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" - {detail}")
        }
    );
    assert!(pass, "criterion {criterion} ({label}) failed: {detail}");
}

fn sweep(label: &str, ms: &[usize], sample: Option<u64>) -> SweepOutcome {
    run_theorem(label, ms, sample, 4).unwrap_or_else(|e| panic!("sweep {label}: {e}"))
}

fn fail_summary(outcomes: &[&SweepOutcome]) -> String {
    outcomes
        .iter()
        .flat_map(|o| o.failures.iter())
        .take(3)
        .cloned()
        .collect::<Vec<_>>()
        .join("; ")
}

#[test]
fn criterion_01_golden_tables_m4() {
    let start = Instant::now();
    let tables = sweep("tables-m4", &[4], None);
    let elapsed = start.elapsed();
    let within_budget = elapsed.as_secs_f64() < 1.0;
    report(
        1,
        "m=4 golden tables",
        tables.pass() && within_budget,
        &format!("{} in {elapsed:?}", fail_summary(&[&tables])),
    );
}

#[test]
fn criterion_02_weight_reduction() {
    let start = Instant::now();
    let outcome = sweep("thm1", &[2, 4, 6, 8], None);
    let elapsed = start.elapsed();
    let within_budget = elapsed.as_secs_f64() < 30.0;
    report(
        2,
        "weight-reduced generators m=2..8",
        outcome.pass() && within_budget,
        &format!(
            "{} checks in {elapsed:?} {}",
            outcome.total_checks(),
            fail_summary(&[&outcome])
        ),
    );
}

#[test]
fn criterion_03_stabilizer_preservation() {
    let thm2 = sweep("thm2", &[2, 4, 6, 8], None);
    let thm3_small = sweep("thm3", &[2, 4, 6], None);
    let thm3_m8 = sweep("thm3", &[8], Some(10_000));
    let sampled = thm3_m8.per_m[0].sampled.unwrap_or(0);
    report(
        3,
        "preservation under fold-transversal layers",
        thm2.pass() && thm3_small.pass() && thm3_m8.pass() && sampled >= 10_000,
        &format!(
            "{} + {} + {} checks (m=8: exhaustive + {sampled} sampled K) {}",
            thm2.total_checks(),
            thm3_small.total_checks(),
            thm3_m8.total_checks(),
            fail_summary(&[&thm2, &thm3_small, &thm3_m8])
        ),
    );
}

#[test]
fn criterion_04_logical_action_closed_forms() {
    let thm4 = sweep("thm4", &[2, 4, 6], None);
    let thm5 = sweep("thm5", &[2, 4, 6], None);
    // The worked m=4 layer/product tables, including the S(2) row, are part
    // of the golden-table sweep; re-run it so this criterion stands alone.
    let tables = sweep("tables-m4", &[4], None);
    report(
        4,
        "closed-form logical actions",
        thm4.pass() && thm5.pass() && tables.pass(),
        &format!(
            "{} + {} checks {}",
            thm4.total_checks(),
            thm5.total_checks(),
            fail_summary(&[&thm4, &thm5, &tables])
        ),
    );
}

#[test]
fn criterion_05_depth_equalities() {
    let outcome = sweep("cor5", &[2, 4, 6, 8], None);
    report(
        5,
        "exact synthesis depths",
        outcome.pass(),
        &format!(
            "{} checks {}",
            outcome.total_checks(),
            fail_summary(&[&outcome])
        ),
    );
}

#[test]
fn criterion_06_addressability() {
    // cor5 covers S and adjacent C00Z addressability (the synthesis
    // validates the full tableau); thm6/thm7 cover H, SW, and general C00Z.
    let cor5 = sweep("cor5", &[2, 4, 6], None);
    let thm6 = sweep("thm6", &[2, 4, 6], None);
    let thm7 = sweep("thm7", &[2, 4, 6], None);
    report(
        6,
        "addressable gate suite m=2..6",
        cor5.pass() && thm6.pass() && thm7.pass(),
        &format!(
            "{} + {} + {} checks {}",
            cor5.total_checks(),
            thm6.total_checks(),
            thm7.total_checks(),
            fail_summary(&[&cor5, &thm6, &thm7])
        ),
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    const TOL: f64 = 1e-10;
    let code2 = QrmCode::build(2).unwrap();
    let b1 = IndexSet::new(2, [1]).unwrap();
    let b2 = IndexSet::new(2, [2]).unwrap();
    let mut checks = 0usize;

    // Every synthesized gate kind at m = 2 against the dense oracle.
    let named: Vec<(rmfold::Circuit, Vec<Gate>)> = vec![
        (synth_s(&code2, &b1, false).unwrap(), vec![Gate::S(0)]),
        (synth_s(&code2, &b1, true).unwrap(), vec![Gate::Sdg(0)]),
        (synth_s(&code2, &b2, false).unwrap(), vec![Gate::S(1)]),
        (synth_h(&code2, &b1).unwrap(), vec![Gate::H(0)]),
        (synth_h(&code2, &b2).unwrap(), vec![Gate::H(1)]),
        (synth_sw(&code2, &b1, &b2).unwrap(), vec![Gate::Sw(0, 1)]),
        (
            synth_cz00(&code2, &b1, &b2).unwrap(),
            vec![Gate::Cz00(0, 1)],
        ),
        (
            synth_derived(&code2, DerivedKind::Cz11, &b1, Some(&b2)).unwrap(),
            vec![Gate::Cz(0, 1)],
        ),
        (
            synth_derived(&code2, DerivedKind::Cx, &b1, Some(&b2)).unwrap(),
            vec![Gate::Cx(0, 1)],
        ),
        (
            synth_derived(&code2, DerivedKind::X, &b1, None).unwrap(),
            vec![Gate::X(0)],
        ),
        (
            synth_derived(&code2, DerivedKind::Z, &b2, None).unwrap(),
            vec![Gate::Z(1)],
        ),
    ];
    for (circuit, word) in &named {
        let u = encoded_logical_unitary(circuit, &code2).unwrap();
        let expected = word_matrix(2, word);
        assert!(
            u.distance_up_to_phase(&expected) < TOL,
            "m=2 gate {word:?} disagrees with the oracle"
        );
        let t = logical_action(circuit, &code2).unwrap();
        assert!(tableau_matches_unitary(&t, &u, TOL));
        checks += 1;
    }

    // 50 random compiled tableaux at m = 2.
    let mut rng = SplitMix64::new(0xacce97ed);
    for trial in 0..50 {
        let word = random_clifford_word(2, 12, &mut rng);
        let target = tableau_from_word(2, &word);
        let circuit = compile_clifford(&code2, &target).unwrap();
        let u = encoded_logical_unitary(&circuit, &code2).unwrap();
        let expected = word_matrix(2, &word);
        assert!(
            u.distance_up_to_phase(&expected) < TOL,
            "random compile #{trial} disagrees with the oracle"
        );
        checks += 1;
    }

    // m = 4: the worked S(2) and C00Z(2,3) circuits on all 64 encoded
    // basis states.
    let code4 = QrmCode::build(4).unwrap();
    let s2 = synth_s(&code4, &IndexSet::new(4, [1, 3]).unwrap(), false).unwrap();
    let u = encoded_logical_unitary(&s2, &code4).unwrap();
    assert_eq!(u.dim, 64);
    assert!(u.distance_up_to_phase(&word_matrix(6, &[Gate::S(1)])) < TOL);
    let cz = synth_cz00_adjacent(
        &code4,
        &IndexSet::new(4, [1, 3]).unwrap(),
        &IndexSet::new(4, [1, 4]).unwrap(),
    )
    .unwrap();
    let u2 = encoded_logical_unitary(&cz, &code4).unwrap();
    assert!(u2.distance_up_to_phase(&word_matrix(6, &[Gate::Cz00(1, 2)])) < TOL);
    checks += 2;

    report(
        7,
        "state-vector oracle equivalence",
        true,
        &format!("{checks} circuits within 1e-10"),
    );
}

#[test]
fn criterion_08_swap_type_identities_m4() {
    let code = QrmCode::build(4).unwrap();
    let us_p12 = logical_action(&fold_swap(4, &perm_p(1, 2, 4).unwrap()).unwrap(), &code).unwrap();
    let ok1 = us_p12 == tableau_from_word(6, &[Gate::Sw(1, 5), Gate::Sw(2, 4)]);

    let up_p12 = logical_action(
        &rmfold::circuit::fold_phase(4, &perm_p(1, 2, 4).unwrap()).unwrap(),
        &code,
    )
    .unwrap();
    let ok2 = up_p12 == tableau_from_word(6, &[Gate::Cz(0, 3), Gate::Cz00(1, 2), Gate::Cz00(4, 5)]);

    let us_q12 = logical_action(&fold_swap(4, &perm_q(1, 2, 4).unwrap()).unwrap(), &code).unwrap();
    let ok3 = us_q12 == tableau_from_word(6, &[Gate::Cx(1, 5), Gate::Cx(2, 4)]);

    report(
        8,
        "worked swap/phase identities at m=4",
        ok1 && ok2 && ok3,
        &format!("US(P12)={ok1} UP(P12)={ok2} US(Q12)={ok3}"),
    );
}

#[test]
fn criterion_09_replacement_lemmas() {
    let small = sweep("lemmas", &[2, 4, 6], None);
    let m8 = sweep("lemmas", &[8], Some(2_000));
    report(
        9,
        "replacement-operator and weight lemmas",
        small.pass() && m8.pass(),
        &format!(
            "{} + {} checks (m=8 exhaustive + {} sampled K) {}",
            small.total_checks(),
            m8.total_checks(),
            m8.per_m[0].sampled.unwrap_or(0),
            fail_summary(&[&small, &m8])
        ),
    );
}

#[test]
fn criterion_10_depth_bound_calculator() {
    // Frozen regression: exact rational at (n, k, l) = (16, 6, 2).
    const FROZEN_RATIONAL: &str = "1650277538512462888319/2377522578222945174985";
    let trace = depth_lower_bound(16, 6, 2, CliffordCountFormula::Product).unwrap();
    let stable = trace.value.to_string() == FROZEN_RATIONAL;
    let again = depth_lower_bound(16, 6, 2, CliffordCountFormula::Product).unwrap();
    let rerun_stable = again.value == trace.value;

    // Family ratios bound / (k^2 / (n ln n)) for m = 2..10 stay inside the
    // frozen band.
    const BAND: (f64, f64) = (0.60, 1.40);
    let rows = bound_family_ratios(&[2, 4, 6, 8, 10]).unwrap();
    let mut in_band = true;
    let mut detail = String::new();
    for (m, _n, _k, bound, ratio) in &rows {
        if *ratio < BAND.0 || *ratio > BAND.1 {
            in_band = false;
        }
        detail.push_str(&format!("m={m}: bound={bound:.4} ratio={ratio:.4}; "));
    }

    // Frozen per-m ratios (regression pins; recomputed exactly every run).
    const FROZEN_RATIOS: [f64; 5] = [
        0.6546920358537216,
        0.8553330884575605,
        0.9893315471413214,
        1.1297423644048021,
        1.2648813944848736,
    ];
    let pinned = rows
        .iter()
        .zip(FROZEN_RATIOS)
        .all(|((_, _, _, _, ratio), frozen)| (ratio - frozen).abs() < 1e-9);

    report(
        10,
        "depth lower bound behavior",
        stable && rerun_stable && in_band && pinned,
        &format!(
            "regression={} band=({},{}) {detail}",
            trace.value, BAND.0, BAND.1
        ),
    );
}

// The Example-5 rows are load-bearing for criterion 4; assert them directly
// as well so a regression names the row.
#[test]
fn example5_rows_direct() {
    let code = QrmCode::build(4).unwrap();
    let cases: Vec<(PairSet, Vec<Gate>, usize)> = vec![
        (
            PairSet::empty(4),
            vec![Gate::Cz(0, 3), Gate::Cz(1, 4), Gate::Cz(2, 5)],
            1,
        ),
        (
            PairSet::new(4, [(1, 2)]).unwrap(),
            vec![Gate::Cz00(1, 2)],
            2,
        ),
        (
            PairSet::new(4, [(3, 4)]).unwrap(),
            vec![Gate::Cz00(1, 5)],
            2,
        ),
        (
            PairSet::new(4, [(1, 2), (3, 4)]).unwrap(),
            vec![Gate::S(1)],
            4,
        ),
    ];
    for (kset, word, depth) in &cases {
        let circ = phase_product_circuit(4, kset).unwrap();
        assert_eq!(circ.depth(), *depth, "K={kset}");
        assert_eq!(
            logical_action(&circ, &code).unwrap(),
            tableau_from_word(6, word),
            "K={kset}"
        );
    }
}

// Round trip between the compiler and the engine on random targets at m=4,
// plus a depth contrast: the single layer U_P(e) realizes the same pairing
// of controlled-Z gates that a per-gate compilation spends far more depth on.
#[test]
fn compile_round_trip_m4_and_depth_contrast() {
    let code = QrmCode::build(4).unwrap();
    let k = code.k();
    let mut rng = SplitMix64::new(0xc0ffee);
    for _ in 0..6 {
        let word = random_clifford_word(k, 16, &mut rng);
        let target = tableau_from_word(k, &word);
        let circuit = compile_clifford(&code, &target).unwrap();
        assert_eq!(logical_action(&circuit, &code).unwrap(), target);
    }

    // Target: CZ(i, i + k/2) on every complement pair.
    let word: Vec<Gate> = (0..k / 2).map(|i| Gate::Cz(i, i + k / 2)).collect();
    let target = tableau_from_word(k, &word);
    let compiled = compile_clifford(&code, &target).unwrap();
    let single_layer = rmfold::circuit::fold_phase(
        4,
        &rmfold::Permutation::identity(16),
    )
    .unwrap();
    assert_eq!(logical_action(&single_layer, &code).unwrap(), target);
    assert_eq!(single_layer.depth(), 1);
    assert!(
        compiled.depth() > 10 * single_layer.depth(),
        "per-gate compilation (depth {}) should dwarf the depth-1 layer",
        compiled.depth()
    );
}
