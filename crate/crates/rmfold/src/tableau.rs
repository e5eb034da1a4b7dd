//! Logical tableaux: the signed action of a physical circuit on the logical
//! Pauli basis, reduced modulo the stabilizer group.
//!
//! Reduction works in the canonical phase convention: a stabilizer element
//! written `X(v) Z(w)` carries exponent 0, and "preserves the stabilizer
//! group" demands exponent 0 after full reduction. A logical image
//! `i^s X(x) Z(z)` splits as `x = xs + xl`, `z = zs + zl` over the ordered
//! basis [stabilizer rows, logical rows]; the reported row phase is
//! `s - 2 (zl . xs)`, the exponent relative to the canonical logical word
//! `X(xl) Z(zl)` times the phase-0 stabilizer element `X(xs) Z(zs)`.

use std::fmt;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::f2::BitVector;
use crate::pauli::{conjugate_gate, Gate, PhasedPauli};
use crate::qrm::QrmCode;

/// Signed symplectic action on `k` logical qubits: rows are the images of
/// each `X(i)` and `Z(i)` as `k`-qubit phased Paulis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogicalTableau {
    k: usize,
    x_rows: Vec<PhasedPauli>,
    z_rows: Vec<PhasedPauli>,
}

impl LogicalTableau {
    pub fn identity(k: usize) -> Self {
        let x_rows = (0..k)
            .map(|i| PhasedPauli::x_op(BitVector::from_positions(k, &[i])))
            .collect();
        let z_rows = (0..k)
            .map(|i| PhasedPauli::z_op(BitVector::from_positions(k, &[i])))
            .collect();
        LogicalTableau { k, x_rows, z_rows }
    }

    pub fn new(x_rows: Vec<PhasedPauli>, z_rows: Vec<PhasedPauli>) -> Result<Self> {
        let k = x_rows.len();
        if z_rows.len() != k {
            return Err(Error::NonSymplecticTarget(
                "row counts differ between X and Z images".into(),
            ));
        }
        for row in x_rows.iter().chain(&z_rows) {
            if row.num_qubits() != k {
                return Err(Error::NonSymplecticTarget(format!(
                    "row width {} != k = {k}",
                    row.num_qubits()
                )));
            }
            if !row.is_hermitian() {
                return Err(Error::NonSymplecticTarget(format!(
                    "row {row} is not Hermitian"
                )));
            }
        }
        let t = LogicalTableau { k, x_rows, z_rows };
        if let Some(msg) = t.symplectic_defect() {
            return Err(Error::NonSymplecticTarget(msg));
        }
        Ok(t)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x_row(&self, i: usize) -> &PhasedPauli {
        &self.x_rows[i]
    }

    pub fn z_row(&self, i: usize) -> &PhasedPauli {
        &self.z_rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = (&PhasedPauli, &PhasedPauli)> {
        self.x_rows.iter().zip(self.z_rows.iter())
    }

    pub fn is_identity(&self) -> bool {
        *self == LogicalTableau::identity(self.k)
    }

    /// First violated (anti)commutation relation, if any.
    pub fn symplectic_defect(&self) -> Option<String> {
        for i in 0..self.k {
            for j in 0..self.k {
                if self.x_rows[i].commutes_with(&self.z_rows[j]) != (i != j) {
                    return Some(format!("X({}) vs Z({})", i + 1, j + 1));
                }
                if i < j {
                    if !self.x_rows[i].commutes_with(&self.x_rows[j]) {
                        return Some(format!("X({}) vs X({})", i + 1, j + 1));
                    }
                    if !self.z_rows[i].commutes_with(&self.z_rows[j]) {
                        return Some(format!("Z({}) vs Z({})", i + 1, j + 1));
                    }
                }
            }
        }
        None
    }

    pub fn is_symplectic(&self) -> bool {
        self.symplectic_defect().is_none()
    }

    /// Image of an arbitrary `k`-qubit phased Pauli under this tableau.
    pub fn apply(&self, p: &PhasedPauli) -> PhasedPauli {
        let mut acc = PhasedPauli::identity(self.k);
        acc.multiply_phase(p.phase());
        for i in 0..self.k {
            if p.x().get(i) {
                acc = acc.mul(&self.x_rows[i]);
            }
        }
        for i in 0..self.k {
            if p.z().get(i) {
                acc = acc.mul(&self.z_rows[i]);
            }
        }
        acc
    }

    /// Tableau of `self` followed by `other` (time order).
    pub fn then(&self, other: &LogicalTableau) -> LogicalTableau {
        LogicalTableau {
            k: self.k,
            x_rows: self.x_rows.iter().map(|r| other.apply(r)).collect(),
            z_rows: self.z_rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    /// Conjugate every row by one logical gate.
    pub fn conjugate_rows(&mut self, gate: &Gate) {
        for row in self.x_rows.iter_mut().chain(self.z_rows.iter_mut()) {
            conjugate_gate(row, gate);
        }
    }
}

impl fmt::Display for LogicalTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.k {
            writeln!(f, "X({}) -> {}", i + 1, format_logical(&self.x_rows[i]))?;
        }
        for i in 0..self.k {
            writeln!(f, "Z({}) -> {}", i + 1, format_logical(&self.z_rows[i]))?;
        }
        Ok(())
    }
}

/// Render a logical Pauli as a signed product of `X(i)`/`Z(i)` factors with
/// 1-based logical positions.
pub fn format_logical(p: &PhasedPauli) -> String {
    let mut s = match p.phase() {
        0 => String::new(),
        1 => "i ".to_string(),
        2 => "-".to_string(),
        3 => "-i ".to_string(),
        _ => unreachable!(),
    };
    let mut any = false;
    for i in 0..p.num_qubits() {
        if p.x().get(i) {
            s.push_str(&format!("X({})", i + 1));
            any = true;
        }
    }
    for i in 0..p.num_qubits() {
        if p.z().get(i) {
            s.push_str(&format!("Z({})", i + 1));
            any = true;
        }
    }
    if !any {
        s.push('I');
    }
    s
}

/// Tableau of a word of logical gates applied in time order to `k` qubits.
pub fn tableau_from_word(k: usize, word: &[Gate]) -> LogicalTableau {
    let mut t = LogicalTableau::identity(k);
    for g in word {
        t.conjugate_rows(g);
    }
    t
}

/// Witness for a stabilizer-preservation failure: the violating generator
/// and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationWitness {
    pub kind: char,
    pub label: String,
    pub image: PhasedPauli,
}

/// True iff the image of every stabilizer generator is a product of
/// stabilizer generators with overall phase exactly +1.
pub fn preserves_stabilizers(
    circuit: &Circuit,
    code: &QrmCode,
) -> std::result::Result<(), PreservationWitness> {
    if circuit.m() != code.m() {
        return Err(PreservationWitness {
            kind: '?',
            label: format!("m mismatch: circuit {} vs code {}", circuit.m(), code.m()),
            image: PhasedPauli::identity(1),
        });
    }
    let solver = code.stabilizer_solver();
    for (label, support) in code.stabilizer_labels().iter().zip(code.stabilizer_supports()) {
        for (kind, gen) in [
            ('X', PhasedPauli::x_op(support.clone())),
            ('Z', PhasedPauli::z_op(support.clone())),
        ] {
            let image = circuit.conjugate(&gen);
            let ok = image.phase() == 0
                && solver.contains(image.x())
                && solver.contains(image.z());
            if !ok {
                return Err(PreservationWitness {
                    kind,
                    label: label.to_string(),
                    image,
                });
            }
        }
    }
    Ok(())
}

/// Decompose one physical Pauli image into `i^phase * logical word *
/// stabilizer element`; returns the logical row.
fn reduce_to_logical(code: &QrmCode, image: &PhasedPauli) -> Result<PhasedPauli> {
    let outside = || Error::OutsideNormalizer {
        phase: image.phase(),
        x: image.x().to_string(),
        z: image.z().to_string(),
    };
    let num_stab = code.stabilizer_supports().len();
    let k = code.k();

    let x_combo = code.x_basis_solver().solve(image.x()).ok_or_else(outside)?;
    let z_combo = code.z_basis_solver().solve(image.z()).ok_or_else(outside)?;

    let mut alpha = BitVector::zero(k);
    let mut beta = BitVector::zero(k);
    let mut xs = BitVector::zero(code.n());
    for i in 0..num_stab {
        if x_combo.get(i) {
            xs.add_assign(&code.stabilizer_supports()[i]);
        }
    }
    let mut zl = BitVector::zero(code.n());
    for i in 0..k {
        if x_combo.get(num_stab + i) {
            alpha.set(i, true);
        }
        if z_combo.get(num_stab + i) {
            beta.set(i, true);
            zl.add_assign(code.logical_z_support(i));
        }
    }
    // i^s X(x)Z(z) = i^{s - 2 (zl . xs)} [X(xl)Z(zl)] [X(xs)Z(zs)]
    let phase = (image.phase() + 2 * zl.dot(&xs)) & 3;
    Ok(PhasedPauli::new(phase, alpha, beta))
}

/// The logical tableau of a stabilizer-preserving circuit: the image of each
/// `X(i)` and `Z(i)`, reduced modulo the stabilizer group, global phase
/// quotiented out.
pub fn logical_action(circuit: &Circuit, code: &QrmCode) -> Result<LogicalTableau> {
    if circuit.m() != code.m() {
        return Err(Error::MMismatch {
            circuit_m: circuit.m(),
            code_m: code.m(),
        });
    }
    if let Err(w) = preserves_stabilizers(circuit, code) {
        return Err(Error::not_preserving(w.kind, w.label, &w.image));
    }
    let k = code.k();
    let mut x_rows = Vec::with_capacity(k);
    let mut z_rows = Vec::with_capacity(k);
    for i in 0..k {
        let xi = PhasedPauli::x_op(code.logical_x_support(i).clone());
        x_rows.push(reduce_to_logical(code, &circuit.conjugate(&xi))?);
        let zi = PhasedPauli::z_op(code.logical_z_support(i).clone());
        z_rows.push(reduce_to_logical(code, &circuit.conjugate(&zi))?);
    }
    let t = LogicalTableau { k, x_rows, z_rows };
    debug_assert!(t.is_symplectic());
    Ok(t)
}

/// Recognize a diagonal logical action as a word over `CZ`, `CZ00`, `S`,
/// `Sdg`, `Z`; `None` when the tableau is not diagonal-type. Used for
/// human-readable reports.
pub fn diagonal_word(t: &LogicalTableau) -> Option<Vec<Gate>> {
    let k = t.k();
    let id = LogicalTableau::identity(k);
    for i in 0..k {
        if t.z_row(i) != id.z_row(i) {
            return None;
        }
        let row = t.x_row(i);
        let mut expected_x = BitVector::zero(k);
        expected_x.set(i, true);
        if row.x() != &expected_x {
            return None;
        }
    }
    // Edge (i, j) set iff Z(j) appears in the image of X(i); symmetric.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut s_exp: Vec<u8> = vec![0; k];
    let mut z_fix: Vec<bool> = vec![false; k];
    for i in 0..k {
        let row = t.x_row(i);
        for j in 0..k {
            if j != i && row.z().get(j) && i < j {
                edges.push((i, j));
            }
        }
        let diag = row.z().get(i);
        match (diag, row.phase()) {
            (true, 1) => s_exp[i] = 1,
            (true, 3) => s_exp[i] = 3,
            (false, 0) => {}
            (false, 2) => z_fix[i] = true,
            _ => return None,
        }
    }
    let mut word: Vec<Gate> = Vec::new();
    // Fold an edge with residual sign flips on both ends into CZ00.
    for &(i, j) in &edges {
        if z_fix[i] && z_fix[j] {
            word.push(Gate::Cz00(i, j));
            z_fix[i] = false;
            z_fix[j] = false;
        } else {
            word.push(Gate::Cz(i, j));
        }
    }
    for i in 0..k {
        match s_exp[i] {
            1 => word.push(Gate::S(i)),
            3 => word.push(Gate::Sdg(i)),
            _ => {}
        }
        if z_fix[i] {
            word.push(Gate::Z(i));
        }
    }
    // The candidate must reproduce the tableau exactly (signs included).
    if &tableau_from_word(k, &word) == t {
        Some(word)
    } else {
        None
    }
}

// Wire helpers for tableau JSON: {"k": int, "x_images": [...], "z_images":
// [...]} with rows {"phase": 0..3, "x": [bits], "z": [bits]}.

fn row_to_json(p: &PhasedPauli) -> serde_json::Value {
    let bits = |v: &BitVector| -> Vec<u8> { (0..v.len()).map(|q| v.get(q) as u8).collect() };
    serde_json::json!({
        "phase": p.phase(),
        "x": bits(p.x()),
        "z": bits(p.z()),
    })
}

fn row_from_json(k: usize, v: &serde_json::Value) -> Result<PhasedPauli> {
    let parse_bits = |key: &str| -> Result<BitVector> {
        let arr = v
            .get(key)
            .and_then(|a| a.as_array())
            .ok_or_else(|| Error::Parse(format!("tableau row missing {key:?} array")))?;
        if arr.len() != k {
            return Err(Error::Parse(format!(
                "tableau row {key:?} has length {}, expected {k}",
                arr.len()
            )));
        }
        let mut out = BitVector::zero(k);
        for (i, bit) in arr.iter().enumerate() {
            match bit.as_u64() {
                Some(0) => {}
                Some(1) => out.set(i, true),
                _ => return Err(Error::Parse(format!("tableau row {key:?} has a non-bit"))),
            }
        }
        Ok(out)
    };
    let phase = v
        .get("phase")
        .and_then(|p| p.as_u64())
        .ok_or_else(|| Error::Parse("tableau row missing phase".into()))?;
    Ok(PhasedPauli::new(
        (phase & 3) as u8,
        parse_bits("x")?,
        parse_bits("z")?,
    ))
}

impl LogicalTableau {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "x_images": self.x_rows.iter().map(row_to_json).collect::<Vec<_>>(),
            "z_images": self.z_rows.iter().map(row_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LogicalTableau> {
        let k = v
            .get("k")
            .and_then(|k| k.as_u64())
            .ok_or_else(|| Error::Parse("tableau JSON missing k".into()))? as usize;
        let rows = |key: &str| -> Result<Vec<PhasedPauli>> {
            let arr = v
                .get(key)
                .and_then(|a| a.as_array())
                .ok_or_else(|| Error::Parse(format!("tableau JSON missing {key:?}")))?;
            if arr.len() != k {
                return Err(Error::Parse(format!(
                    "tableau JSON {key:?} has {} rows, expected {k}",
                    arr.len()
                )));
            }
            arr.iter().map(|r| row_from_json(k, r)).collect()
        };
        LogicalTableau::new(rows("x_images")?, rows("z_images")?)
    }
}

/// Render a logical gate word with 1-based qubit numbers, e.g. `CZ(1,4)`.
pub fn format_word(word: &[Gate]) -> String {
    word.iter()
        .map(|g| {
            let q = g.qubits();
            match q.len() {
                1 => format!("{}({})", g.name(), q[0] + 1),
                _ => format!("{}({},{})", g.name(), q[0] + 1, q[1] + 1),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
