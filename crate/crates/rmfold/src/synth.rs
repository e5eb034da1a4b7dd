//! Logical gate synthesis: addressable S, C00Z, H, SW, derived gates, and
//! arbitrary logical Clifford tableaux, all as sequences of transversal and
//! fold-transversal layers.
//!
//! Phase-type products: for a pair set `K`, the circuit is the product of
//! `U_P(Q(L))` over every `L <= K`, one layer per subset in ascending
//! bitmask order, so its depth is exactly `2^|K|`. Choosing `F1(K) = B`
//! (paired positionally with the sorted complement) yields the addressable
//! phase gate on `B`; `F1(K) = B n B'`, `F2(K) = [m] \ (B u B')` yields the
//! adjacent `C00Z`. Every synthesized circuit is validated against its
//! intended logical tableau before being returned.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::circuit::{fold_phase, transversal_h, Circuit};
use crate::error::{Error, Result};
use crate::f2::{BitVector, IndexSet};
use crate::pauli::Gate;
use crate::qrm::QrmCode;
use crate::rmcode::PairSet;
use crate::tableau::{logical_action, tableau_from_word, LogicalTableau};

/// Gate kinds a synthesis request may name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DerivedKind {
    Cz11,
    Cx,
    X,
    Z,
}

/// Depth accounting for an emitted circuit.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub depth: usize,
    pub kind_counts: BTreeMap<String, usize>,
    pub asymptotic: String,
}

impl DepthReport {
    pub fn of_circuit(circuit: &Circuit, asymptotic: &str) -> Self {
        let mut kind_counts = BTreeMap::new();
        for layer in circuit.layers() {
            *kind_counts.entry(layer_kind(layer).to_string()).or_insert(0) += 1;
        }
        DepthReport {
            depth: circuit.depth(),
            kind_counts,
            asymptotic: asymptotic.to_string(),
        }
    }
}

fn layer_kind(layer: &crate::circuit::GateLayer) -> &'static str {
    if layer.is_empty() {
        return "empty";
    }
    let mut phase = true;
    let mut swap = true;
    let mut hadamard = true;
    let mut pauli = true;
    for g in layer.gates() {
        match g {
            Gate::S(_) | Gate::Sdg(_) | Gate::Cz(..) | Gate::Cz00(..) => {
                swap = false;
                hadamard = false;
                pauli = false;
            }
            Gate::Sw(..) => {
                phase = false;
                hadamard = false;
                pauli = false;
            }
            Gate::H(_) => {
                phase = false;
                swap = false;
                pauli = false;
            }
            Gate::X(_) | Gate::Z(_) => {
                phase = false;
                swap = false;
                hadamard = false;
            }
            Gate::Cx(..) => {
                phase = false;
                swap = false;
                hadamard = false;
                pauli = false;
            }
        }
    }
    if phase {
        "phase"
    } else if swap {
        "swap"
    } else if hadamard {
        "hadamard"
    } else if pauli {
        "pauli"
    } else {
        "mixed"
    }
}

fn check_logical_size(code: &QrmCode, b: &IndexSet) -> Result<usize> {
    code.position_of(b).ok_or_else(|| Error::BadLogicalOperand {
        expected: code.m() / 2,
        m: code.m(),
        got: b.to_string(),
    })
}

/// `K` pairing the sorted elements of `B` with the sorted elements of its
/// complement, positionally.
fn pair_with_complement(b: &IndexSet) -> PairSet {
    let firsts = b.to_vec();
    let seconds = b.complement().to_vec();
    PairSet::new(b.m(), firsts.into_iter().zip(seconds)).expect("disjoint by construction")
}

/// Product of `U_P(Q(L))` over all `L <= K`, one layer per subset.
pub fn phase_product_circuit(m: usize, k: &PairSet) -> Result<Circuit> {
    let mut circ = Circuit::empty(m);
    for l in k.subsets() {
        circ = circ.then(&fold_phase(m, &l.permutation())?);
    }
    Ok(circ)
}

fn validate_action(code: &QrmCode, circuit: &Circuit, expected: &[Gate], gate: &str) -> Result<()> {
    let got = logical_action(circuit, code)?;
    let want = tableau_from_word(code.k(), expected);
    if got == want {
        Ok(())
    } else {
        Err(Error::SynthesisValidation {
            gate: gate.to_string(),
            detail: "logical action differs from the intended tableau".to_string(),
        })
    }
}

type CircuitCache = Mutex<HashMap<(usize, u64, u8), Circuit>>;

fn cache() -> &'static CircuitCache {
    static CACHE: OnceLock<CircuitCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn set_key(b: &IndexSet) -> u64 {
    b.iter().fold(0u64, |acc, i| acc | 1 << (i - 1))
}

/// Addressable logical phase gate on `B` (`dagger = true` for the inverse).
///
/// The natural product realizes S when m/2 is even and S-dagger when odd;
/// the opposite request emits the inverse sequence (layers reversed, S and
/// SDG exchanged). Depth is exactly `2^(m/2)`.
pub fn synth_s(code: &QrmCode, b: &IndexSet, dagger: bool) -> Result<Circuit> {
    let pos = check_logical_size(code, b)?;
    let key = (code.m(), set_key(b), dagger as u8);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let k = pair_with_complement(b);
    let natural_dagger = (code.m() / 2) % 2 == 1;
    let mut circ = phase_product_circuit(code.m(), &k)?;
    if dagger != natural_dagger {
        circ = circ.inverse();
    }
    let expected = [if dagger { Gate::Sdg(pos) } else { Gate::S(pos) }];
    let label = format!("{}({})", if dagger { "SDG" } else { "S" }, pos + 1);
    validate_action(code, &circ, &expected, &label)?;
    let circ = circ.with_action_label(&label);
    cache().lock().unwrap().insert(key, circ.clone());
    Ok(circ)
}

/// Addressable `C00Z` on logical qubits whose labels differ by exactly one
/// index. Depth is exactly `2^(m/2 - 1)`.
pub fn synth_cz00_adjacent(code: &QrmCode, b1: &IndexSet, b2: &IndexSet) -> Result<Circuit> {
    let p1 = check_logical_size(code, b1)?;
    let p2 = check_logical_size(code, b2)?;
    if b1 == b2 {
        return Err(Error::EqualOperands);
    }
    if b1.intersection(b2).len() != code.m() / 2 - 1 {
        return Err(Error::NotAdjacent(b1.to_string(), b2.to_string()));
    }
    let firsts = b1.intersection(b2).to_vec();
    let seconds = b1.union(b2).complement().to_vec();
    let k = PairSet::new(code.m(), firsts.into_iter().zip(seconds))?;
    let circ = phase_product_circuit(code.m(), &k)?;
    let label = format!("CZ00({},{})", p1 + 1, p2 + 1);
    validate_action(code, &circ, &[Gate::Cz00(p1, p2)], &label)?;
    Ok(circ.with_action_label(&label))
}

// Letters of the addressable-H search alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum HLetter {
    Hn,
    SB,
    SBdg,
    SBc,
    SBcdg,
}

const H_ALPHABET: [HLetter; 5] = [
    HLetter::Hn,
    HLetter::SB,
    HLetter::SBdg,
    HLetter::SBc,
    HLetter::SBcdg,
];

fn h_pattern_cache() -> &'static Mutex<HashMap<usize, Vec<HLetter>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<HLetter>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Breadth-first search for the shortest word over
/// `{H^n, S(B)^+-1, S(B^c)^+-1}` whose logical tableau is `H` on `B` alone.
fn search_h_word(code: &QrmCode, pos: usize, cpos: usize) -> Result<Vec<HLetter>> {
    let k = code.k();
    let target = tableau_from_word(k, &[Gate::H(pos)]);
    let t_h = logical_action(&transversal_h(code.m()), code)?;
    let letter_tableau = |l: HLetter| -> LogicalTableau {
        match l {
            HLetter::Hn => t_h.clone(),
            HLetter::SB => tableau_from_word(k, &[Gate::S(pos)]),
            HLetter::SBdg => tableau_from_word(k, &[Gate::Sdg(pos)]),
            HLetter::SBc => tableau_from_word(k, &[Gate::S(cpos)]),
            HLetter::SBcdg => tableau_from_word(k, &[Gate::Sdg(cpos)]),
        }
    };
    let mut frontier: Vec<(Vec<HLetter>, LogicalTableau)> =
        vec![(vec![], LogicalTableau::identity(k))];
    for _len in 1..=9usize {
        let mut next = Vec::with_capacity(frontier.len() * H_ALPHABET.len());
        for (word, tab) in &frontier {
            for &letter in &H_ALPHABET {
                let t = tab.then(&letter_tableau(letter));
                let mut w = word.clone();
                w.push(letter);
                if t == target {
                    return Ok(w);
                }
                next.push((w, t));
            }
        }
        frontier = next;
    }
    Err(Error::SynthesisValidation {
        gate: format!("H({})", pos + 1),
        detail: "no word of length <= 9 realizes the addressable H".to_string(),
    })
}

/// Addressable logical Hadamard on `B`, built from `H^n` layers and
/// addressable phase gates on `B` and `B^c`. Depth `O(sqrt n)`.
pub fn synth_h(code: &QrmCode, b: &IndexSet) -> Result<Circuit> {
    let pos = check_logical_size(code, b)?;
    let key = (code.m(), set_key(b), 2u8);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let bc = b.complement();
    let cpos = check_logical_size(code, &bc)?;
    let pattern = {
        let hit = h_pattern_cache().lock().unwrap().get(&code.m()).cloned();
        match hit {
            Some(p) => p,
            None => {
                let p = search_h_word(code, pos, cpos)?;
                h_pattern_cache().lock().unwrap().insert(code.m(), p.clone());
                p
            }
        }
    };
    let mut circ = Circuit::empty(code.m());
    for letter in &pattern {
        let piece = match letter {
            HLetter::Hn => transversal_h(code.m()),
            HLetter::SB => synth_s(code, b, false)?,
            HLetter::SBdg => synth_s(code, b, true)?,
            HLetter::SBc => synth_s(code, &bc, false)?,
            HLetter::SBcdg => synth_s(code, &bc, true)?,
        };
        circ = circ.then(&piece);
    }
    let label = format!("H({})", pos + 1);
    validate_action(code, &circ, &[Gate::H(pos)], &label)?;
    let circ = circ.with_action_label(&label);
    cache().lock().unwrap().insert(key, circ.clone());
    Ok(circ)
}

/// Chain of intermediate labels from `b1` to `b2`, each adjacent to the
/// next: swap out the smallest leftover of `b1 \ b2` for the smallest
/// unused element of `b2 \ b1` at every step.
fn adjacency_chain(b1: &IndexSet, b2: &IndexSet) -> Vec<IndexSet> {
    let drop: Vec<usize> = b1.minus(b2).to_vec();
    let add: Vec<usize> = b2.minus(b1).to_vec();
    let mut chain = vec![*b1];
    let mut current = *b1;
    for step in 0..drop.len() {
        let remove = IndexSet::singleton(b1.m(), drop[step]).expect("member");
        let insert = IndexSet::singleton(b1.m(), add[step]).expect("member");
        current = current.minus(&remove).union(&insert);
        chain.push(current);
    }
    chain
}

/// Three rounds of `C00Z` then `H` on both qubits realize the adjacent swap.
fn sw_adjacent(code: &QrmCode, b1: &IndexSet, b2: &IndexSet) -> Result<Circuit> {
    let round = synth_cz00_adjacent(code, b1, b2)?
        .then(&synth_h(code, b1)?)
        .then(&synth_h(code, b2)?);
    Ok(round.clone().then(&round).then(&round))
}

/// Addressable logical swap on any pair of logical qubits. Adjacent pairs
/// use the three-round sandwich; distant pairs conjugate through a chain of
/// adjacent swaps. Depth `O(sqrt n)` adjacent, `O(sqrt n log n)` in general.
pub fn synth_sw(code: &QrmCode, b1: &IndexSet, b2: &IndexSet) -> Result<Circuit> {
    let p1 = check_logical_size(code, b1)?;
    let p2 = check_logical_size(code, b2)?;
    if b1 == b2 {
        return Err(Error::EqualOperands);
    }
    let chain = adjacency_chain(b1, b2);
    let steps = chain.len() - 1;
    let mut circ = Circuit::empty(code.m());
    for w in chain.windows(2).take(steps - 1) {
        circ = circ.then(&sw_adjacent(code, &w[0], &w[1])?);
    }
    circ = circ.then(&sw_adjacent(code, &chain[steps - 1], &chain[steps])?);
    for w in chain.windows(2).take(steps - 1).rev() {
        circ = circ.then(&sw_adjacent(code, &w[0], &w[1])?);
    }
    let label = format!("SW({},{})", p1 + 1, p2 + 1);
    validate_action(code, &circ, &[Gate::Sw(p1, p2)], &label)?;
    Ok(circ.with_action_label(&label))
}

/// Addressable `C00Z` on any pair: conjugate an adjacent `C00Z` through a
/// chain of adjacent swaps. Depth `O(sqrt n log n)`.
pub fn synth_cz00(code: &QrmCode, b1: &IndexSet, b2: &IndexSet) -> Result<Circuit> {
    let p1 = check_logical_size(code, b1)?;
    let p2 = check_logical_size(code, b2)?;
    if b1 == b2 {
        return Err(Error::EqualOperands);
    }
    if b1.intersection(b2).len() == code.m() / 2 - 1 {
        return synth_cz00_adjacent(code, b1, b2);
    }
    let chain = adjacency_chain(b1, b2);
    let steps = chain.len() - 1;
    let mut circ = Circuit::empty(code.m());
    for w in chain.windows(2).take(steps - 1) {
        circ = circ.then(&sw_adjacent(code, &w[0], &w[1])?);
    }
    circ = circ.then(&synth_cz00_adjacent(code, &chain[steps - 1], &chain[steps])?);
    for w in chain.windows(2).take(steps - 1).rev() {
        circ = circ.then(&sw_adjacent(code, &w[0], &w[1])?);
    }
    let label = format!("CZ00({},{})", p1 + 1, p2 + 1);
    validate_action(code, &circ, &[Gate::Cz00(p1, p2)], &label)?;
    Ok(circ.with_action_label(&label))
}

/// Gates reduced to the primitives: `Z = S^2`, `X = H Z H`,
/// `C11Z = C00Z Z Z`, `CX = (I x H) C11Z (I x H)`.
pub fn synth_derived(
    code: &QrmCode,
    kind: DerivedKind,
    b1: &IndexSet,
    b2: Option<&IndexSet>,
) -> Result<Circuit> {
    let p1 = check_logical_size(code, b1)?;
    let (circ, expected, label): (Circuit, Vec<Gate>, String) = match kind {
        DerivedKind::Z => {
            let s = synth_s(code, b1, false)?;
            (
                s.clone().then(&s),
                vec![Gate::Z(p1)],
                format!("Z({})", p1 + 1),
            )
        }
        DerivedKind::X => {
            let h = synth_h(code, b1)?;
            let z = synth_derived(code, DerivedKind::Z, b1, None)?;
            (
                h.clone().then(&z).then(&h),
                vec![Gate::X(p1)],
                format!("X({})", p1 + 1),
            )
        }
        DerivedKind::Cz11 => {
            let b2 = b2.ok_or(Error::EqualOperands)?;
            let p2 = check_logical_size(code, b2)?;
            let cz00 = synth_cz00(code, b1, b2)?;
            let z1 = synth_derived(code, DerivedKind::Z, b1, None)?;
            let z2 = synth_derived(code, DerivedKind::Z, b2, None)?;
            (
                cz00.then(&z1).then(&z2),
                vec![Gate::Cz(p1, p2)],
                format!("CZ({},{})", p1 + 1, p2 + 1),
            )
        }
        DerivedKind::Cx => {
            let b2 = b2.ok_or(Error::EqualOperands)?;
            let p2 = check_logical_size(code, b2)?;
            let h2 = synth_h(code, b2)?;
            let cz = synth_derived(code, DerivedKind::Cz11, b1, Some(b2))?;
            (
                h2.clone().then(&cz).then(&h2),
                vec![Gate::Cx(p1, p2)],
                format!("CX({},{})", p1 + 1, p2 + 1),
            )
        }
    };
    validate_action(code, &circ, &expected, &label)?;
    Ok(circ.with_action_label(&label))
}

/// Reduce a tableau to the identity by conjugating its rows with elementary
/// logical gates; the returned word (inverses, reversed) realizes the
/// tableau. Gates touch only qubits >= the column being cleared.
fn decompose_tableau(target: &LogicalTableau) -> Result<Vec<Gate>> {
    if let Some(defect) = target.symplectic_defect() {
        return Err(Error::NonSymplecticTarget(defect));
    }
    let k = target.k();
    let mut work = target.clone();
    let mut applied: Vec<Gate> = Vec::new();
    let apply = |work: &mut LogicalTableau, applied: &mut Vec<Gate>, g: Gate| {
        work.conjugate_rows(&g);
        applied.push(g);
    };
    for j in 0..k {
        // Bring the X-row to +-X_j.
        if (j..k).all(|q| !work.x_row(j).x().get(q)) {
            let q = (j..k)
                .find(|&q| work.x_row(j).z().get(q))
                .expect("nonsingular row");
            apply(&mut work, &mut applied, Gate::H(q));
        }
        let q = (j..k)
            .find(|&q| work.x_row(j).x().get(q))
            .expect("x support exists");
        if q != j {
            apply(&mut work, &mut applied, Gate::Sw(j, q));
        }
        for q in j + 1..k {
            if work.x_row(j).x().get(q) {
                apply(&mut work, &mut applied, Gate::Cx(j, q));
            }
        }
        for q in j + 1..k {
            if work.x_row(j).z().get(q) {
                apply(&mut work, &mut applied, Gate::Cz(j, q));
            }
        }
        if work.x_row(j).z().get(j) {
            apply(&mut work, &mut applied, Gate::S(j));
        }
        // The partner row often lands on +-Z_j already; skip the flip then.
        {
            let q = work.z_row(j);
            let mut ej = BitVector::zero(k);
            ej.set(j, true);
            if q.x().is_zero() && q.z() == &ej {
                continue;
            }
        }
        // Turn the Z-row into +-X_j while fixing Z_j, then flip back.
        apply(&mut work, &mut applied, Gate::H(j));
        for q in j + 1..k {
            if work.z_row(j).x().get(q) {
                apply(&mut work, &mut applied, Gate::Cx(j, q));
            }
        }
        for q in j + 1..k {
            if work.z_row(j).z().get(q) {
                apply(&mut work, &mut applied, Gate::Cz(j, q));
            }
        }
        if work.z_row(j).z().get(j) {
            apply(&mut work, &mut applied, Gate::S(j));
        }
        apply(&mut work, &mut applied, Gate::H(j));
    }
    for j in 0..k {
        if work.x_row(j).phase() == 2 {
            apply(&mut work, &mut applied, Gate::Z(j));
        }
        if work.z_row(j).phase() == 2 {
            apply(&mut work, &mut applied, Gate::X(j));
        }
    }
    if !work.is_identity() {
        return Err(Error::NonSymplecticTarget(
            "elimination did not reach the identity tableau".to_string(),
        ));
    }
    // The circuit is the reversed inverses, with CX lowered to H CZ H.
    let mut word = Vec::with_capacity(applied.len());
    for g in applied.into_iter().rev() {
        match g.inverse() {
            Gate::Cx(c, t) => {
                word.push(Gate::H(t));
                word.push(Gate::Cz(c, t));
                word.push(Gate::H(t));
            }
            inv => word.push(inv),
        }
    }
    Ok(word)
}

/// Compile an arbitrary signed logical Clifford tableau into a physical
/// circuit by expanding the elimination word through the addressable
/// syntheses. The result's logical action equals the target exactly.
pub fn compile_clifford(code: &QrmCode, target: &LogicalTableau) -> Result<Circuit> {
    if target.k() != code.k() {
        return Err(Error::NonSymplecticTarget(format!(
            "target has k = {}, code has k = {}",
            target.k(),
            code.k()
        )));
    }
    let word = decompose_tableau(target)?;
    let mut circ = Circuit::empty(code.m());
    for g in &word {
        let piece = match *g {
            Gate::H(i) => synth_h(code, &code.logicals()[i].b)?,
            Gate::S(i) => synth_s(code, &code.logicals()[i].b, false)?,
            Gate::Sdg(i) => synth_s(code, &code.logicals()[i].b, true)?,
            Gate::Z(i) => synth_derived(code, DerivedKind::Z, &code.logicals()[i].b, None)?,
            Gate::X(i) => synth_derived(code, DerivedKind::X, &code.logicals()[i].b, None)?,
            Gate::Sw(i, j) => synth_sw(code, &code.logicals()[i].b, &code.logicals()[j].b)?,
            Gate::Cz(i, j) => synth_derived(
                code,
                DerivedKind::Cz11,
                &code.logicals()[i].b,
                Some(&code.logicals()[j].b),
            )?,
            Gate::Cz00(i, j) => synth_cz00(code, &code.logicals()[i].b, &code.logicals()[j].b)?,
            Gate::Cx(i, j) => synth_derived(
                code,
                DerivedKind::Cx,
                &code.logicals()[i].b,
                Some(&code.logicals()[j].b),
            )?,
        };
        circ = circ.then(&piece);
    }
    let got = logical_action(&circ, code)?;
    if &got != target {
        return Err(Error::SynthesisValidation {
            gate: "compile_clifford".to_string(),
            detail: "compiled circuit does not reproduce the target tableau".to_string(),
        });
    }
    Ok(circ.with_action_label("compiled tableau"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrm::QrmCode;
    use crate::tableau::tableau_from_word;

    fn code(m: usize) -> QrmCode {
        QrmCode::build(m).unwrap()
    }

    fn set(m: usize, members: &[usize]) -> IndexSet {
        IndexSet::new(m, members.iter().copied()).unwrap()
    }

    #[test]
    fn synth_s_example5_row() {
        // B_2 = {1,3} at m = 4 compiles to S(2) with depth 4.
        let code = code(4);
        let b = set(4, &[1, 3]);
        let c = synth_s(&code, &b, false).unwrap();
        assert_eq!(c.depth(), 4);
        let t = logical_action(&c, &code).unwrap();
        assert_eq!(t, tableau_from_word(6, &[Gate::S(1)]));
        assert_eq!(c.meta()["action"], "S(2)");
    }

    #[test]
    fn synth_s_m2_is_dagger_natural() {
        // m/2 odd: the plain product gives S-dagger, so S needs the inverse.
        let code = code(2);
        let b = set(2, &[1]);
        let sdg = synth_s(&code, &b, true).unwrap();
        assert_eq!(sdg.depth(), 2);
        let t = logical_action(&sdg, &code).unwrap();
        assert_eq!(t, tableau_from_word(2, &[Gate::Sdg(0)]));

        let s = synth_s(&code, &b, false).unwrap();
        let t2 = logical_action(&s, &code).unwrap();
        assert_eq!(t2, tableau_from_word(2, &[Gate::S(0)]));
    }

    #[test]
    fn synth_cz00_adjacent_example5_rows() {
        let code4 = code(4);
        let code = &code4;
        let c = synth_cz00_adjacent(code, &set(4, &[1, 3]), &set(4, &[1, 4])).unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(
            logical_action(&c, code).unwrap(),
            tableau_from_word(6, &[Gate::Cz00(1, 2)])
        );

        let c2 = synth_cz00_adjacent(code, &set(4, &[1, 3]), &set(4, &[2, 3])).unwrap();
        assert_eq!(
            logical_action(&c2, code).unwrap(),
            tableau_from_word(6, &[Gate::Cz00(1, 5)])
        );

        // m = 2: K is empty, the single U_P(e) layer is C00Z(1,2).
        let code2 = QrmCode::build(2).unwrap();
        let c3 = synth_cz00_adjacent(&code2, &set(2, &[1]), &set(2, &[2])).unwrap();
        assert_eq!(c3.depth(), 1);
        assert_eq!(
            logical_action(&c3, &code2).unwrap(),
            tableau_from_word(2, &[Gate::Cz00(0, 1)])
        );

        // Non-adjacent operands are rejected here.
        assert!(matches!(
            synth_cz00_adjacent(code, &set(4, &[1, 2]), &set(4, &[3, 4])),
            Err(Error::NotAdjacent(..))
        ));
    }

    #[test]
    fn synth_h_small() {
        for m in [2usize, 4] {
            let code = code(m);
            for lidx in code.logicals().to_vec() {
                let c = synth_h(&code, &lidx.b).unwrap();
                let t = logical_action(&c, &code).unwrap();
                assert_eq!(
                    t,
                    tableau_from_word(code.k(), &[Gate::H(lidx.position - 1)]),
                    "m={m} B={}",
                    lidx.b
                );
            }
        }
    }

    #[test]
    fn synth_h_twice_is_identity() {
        let code = code(2);
        let c = synth_h(&code, &set(2, &[1])).unwrap();
        let twice = c.clone().then(&c);
        assert!(logical_action(&twice, &code).unwrap().is_identity());
    }

    #[test]
    fn synth_sw_adjacent_and_complement_pair() {
        let code = code(4);
        // Adjacent pair (B_1, B_2).
        let c = synth_sw(&code, &set(4, &[1, 2]), &set(4, &[1, 3])).unwrap();
        assert_eq!(
            logical_action(&c, &code).unwrap(),
            tableau_from_word(6, &[Gate::Sw(0, 1)])
        );
        // Complement pair (B_1, B_4) needs a chain of three adjacent swaps.
        let c2 = synth_sw(&code, &set(4, &[1, 2]), &set(4, &[3, 4])).unwrap();
        assert_eq!(
            logical_action(&c2, &code).unwrap(),
            tableau_from_word(6, &[Gate::Sw(0, 3)])
        );
        // Swap symmetry.
        let c3 = synth_sw(&code, &set(4, &[3, 4]), &set(4, &[1, 2])).unwrap();
        assert_eq!(
            logical_action(&c3, &code).unwrap(),
            logical_action(&c2, &code).unwrap()
        );
        assert!(matches!(
            synth_sw(&code, &set(4, &[1, 2]), &set(4, &[1, 2])),
            Err(Error::EqualOperands)
        ));
    }

    #[test]
    fn synth_cz00_general_pair() {
        let code = code(4);
        let c = synth_cz00(&code, &set(4, &[1, 2]), &set(4, &[3, 4])).unwrap();
        assert_eq!(
            logical_action(&c, &code).unwrap(),
            tableau_from_word(6, &[Gate::Cz00(0, 3)])
        );
    }

    #[test]
    fn synth_derived_gates() {
        let code4 = code(4);
        let z = synth_derived(&code4, DerivedKind::Z, &set(4, &[1, 3]), None).unwrap();
        assert_eq!(
            logical_action(&z, &code4).unwrap(),
            tableau_from_word(6, &[Gate::Z(1)])
        );
        let cz = synth_derived(
            &code4,
            DerivedKind::Cz11,
            &set(4, &[1, 3]),
            Some(&set(4, &[1, 4])),
        )
        .unwrap();
        assert_eq!(
            logical_action(&cz, &code4).unwrap(),
            tableau_from_word(6, &[Gate::Cz(1, 2)])
        );

        let code2 = code(2);
        let cx = synth_derived(
            &code2,
            DerivedKind::Cx,
            &set(2, &[1]),
            Some(&set(2, &[2])),
        )
        .unwrap();
        assert_eq!(
            logical_action(&cx, &code2).unwrap(),
            tableau_from_word(2, &[Gate::Cx(0, 1)])
        );
        let x = synth_derived(&code2, DerivedKind::X, &set(2, &[2]), None).unwrap();
        assert_eq!(
            logical_action(&x, &code2).unwrap(),
            tableau_from_word(2, &[Gate::X(1)])
        );
    }

    #[test]
    fn compile_identity_is_empty() {
        let code = code(2);
        let c = compile_clifford(&code, &LogicalTableau::identity(2)).unwrap();
        assert_eq!(c.depth(), 0);
    }

    #[test]
    fn compile_round_trips_words() {
        let code = code(2);
        let words: Vec<Vec<Gate>> = vec![
            vec![Gate::H(0)],
            vec![Gate::Cz(0, 1)],
            vec![Gate::S(0), Gate::H(1), Gate::Cx(1, 0)],
            vec![Gate::X(0), Gate::Sdg(1), Gate::Sw(0, 1), Gate::S(0)],
        ];
        for word in &words {
            let target = tableau_from_word(2, word);
            let circ = compile_clifford(&code, &target).unwrap();
            assert_eq!(logical_action(&circ, &code).unwrap(), target);
        }
    }

    #[test]
    fn depth_report_counts_layers() {
        let code = code(4);
        let c = synth_s(&code, &set(4, &[1, 3]), false).unwrap();
        let report = DepthReport::of_circuit(&c, "sqrt(n)");
        assert_eq!(report.depth, 4);
        assert_eq!(report.kind_counts.get("phase"), Some(&4));
    }
}
