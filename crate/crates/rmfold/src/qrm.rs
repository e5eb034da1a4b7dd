//! Construction of the self-dual CSS code family built on RM(m/2 - 1, m):
//! stabilizer generators, weight-reduced generators, canonical logical Pauli
//! operators, and code parameters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{subsets_of_size, vector_from_set, BitVector, F2Solver, IndexSet};
use crate::rmcode::RMCode;

/// Binomial coefficient in u128 to keep parameter formulas exact.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Exact `(n, k, d) = (2^m, C(m, m/2), 2^(m/2))`.
pub fn code_params(m: usize) -> Result<(u128, u128, u128)> {
    check_m(m)?;
    Ok((
        1u128 << m,
        binomial(m, m / 2),
        1u128 << (m / 2),
    ))
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 || !m.is_multiple_of(2) {
        return Err(Error::InvalidM(m));
    }
    Ok(())
}

/// A canonical logical qubit: the size-m/2 label set `B` and its 1-based
/// position in the canonical ordering.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LogicalIndex {
    pub position: usize,
    pub b: IndexSet,
}

/// Canonical logical qubit labels: the first k/2 are the size-m/2 subsets
/// containing index 1 in lexicographic order; entry `i + k/2` is the
/// complement of entry `i`.
pub fn canonical_indices(m: usize) -> Result<Vec<LogicalIndex>> {
    check_m(m)?;
    let first_half: Vec<IndexSet> = subsets_of_size(m, m / 2)
        .into_iter()
        .filter(|b| b.contains(1))
        .collect();
    let mut out = Vec::with_capacity(first_half.len() * 2);
    for (i, b) in first_half.iter().enumerate() {
        out.push(LogicalIndex {
            position: i + 1,
            b: *b,
        });
    }
    let half = first_half.len();
    for (i, b) in first_half.iter().enumerate() {
        out.push(LogicalIndex {
            position: half + i + 1,
            b: b.complement(),
        });
    }
    Ok(out)
}

/// How to pick the complement indices when weight-reducing a generator whose
/// label has fewer than m/2 - 1 elements.
#[derive(Clone, Debug, Default)]
pub struct ReductionChoice {
    /// Explicit picks per label; anything absent uses the smallest indices
    /// outside the label.
    pub overrides: BTreeMap<IndexSet, Vec<usize>>,
}

impl ReductionChoice {
    pub fn with_override(mut self, label: IndexSet, picks: Vec<usize>) -> Self {
        self.overrides.insert(label, picks);
        self
    }
}

/// The quantum code for a given even `m`: `X`- and `Z`-type stabilizer
/// generators share supports `v_A` over all `|A| <= m/2 - 1` (self-dual), and
/// logical pairs are `X(v_B)`, `Z(v_{B^c})` over the canonical `B`.
#[derive(Clone)]
pub struct QrmCode {
    m: usize,
    n: usize,
    k: usize,
    d: usize,
    stabilizer_labels: Vec<IndexSet>,
    stabilizer_supports: Vec<BitVector>,
    logicals: Vec<LogicalIndex>,
    logical_x_supports: Vec<BitVector>,
    logical_z_supports: Vec<BitVector>,
    stabilizer_solver: F2Solver,
    // Decomposition bases for the normalizer: stabilizer rows then logical
    // rows, x-side over v_B and z-side over v_{B^c}.
    x_basis_solver: F2Solver,
    z_basis_solver: F2Solver,
}

impl QrmCode {
    pub fn build(m: usize) -> Result<Self> {
        check_m(m)?;
        let n = 1usize << m;
        let rm = RMCode::new(m / 2 - 1, m)?;
        let stabilizer_labels: Vec<IndexSet> = rm.labels().to_vec();
        let stabilizer_supports: Vec<BitVector> = rm.generators().to_vec();
        let logicals = canonical_indices(m)?;
        let k = logicals.len();
        debug_assert_eq!(k as u128, binomial(m, m / 2));
        // n = k + s for stabilizer codes.
        debug_assert_eq!(n, k + 2 * stabilizer_supports.len());

        let logical_x_supports: Vec<BitVector> =
            logicals.iter().map(|l| vector_from_set(&l.b)).collect();
        let logical_z_supports: Vec<BitVector> = logicals
            .iter()
            .map(|l| vector_from_set(&l.b.complement()))
            .collect();

        let stabilizer_solver = F2Solver::new(&stabilizer_supports);
        let mut x_rows = stabilizer_supports.clone();
        x_rows.extend(logical_x_supports.iter().cloned());
        let mut z_rows = stabilizer_supports.clone();
        z_rows.extend(logical_z_supports.iter().cloned());
        let x_basis_solver = F2Solver::new(&x_rows);
        let z_basis_solver = F2Solver::new(&z_rows);
        debug_assert_eq!(x_basis_solver.rank(), x_rows.len());
        debug_assert_eq!(z_basis_solver.rank(), z_rows.len());

        Ok(QrmCode {
            m,
            n,
            k,
            d: 1 << (m / 2),
            stabilizer_labels,
            stabilizer_supports,
            logicals,
            logical_x_supports,
            logical_z_supports,
            stabilizer_solver,
            x_basis_solver,
            z_basis_solver,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of stabilizer generators (X-type plus Z-type).
    pub fn num_stabilizers(&self) -> usize {
        2 * self.stabilizer_supports.len()
    }

    pub fn stabilizer_labels(&self) -> &[IndexSet] {
        &self.stabilizer_labels
    }

    /// Shared supports of `g_x(A)` and `g_z(A)`, ordered by `|A|` ascending
    /// then lexicographic `A`.
    pub fn stabilizer_supports(&self) -> &[BitVector] {
        &self.stabilizer_supports
    }

    pub fn logicals(&self) -> &[LogicalIndex] {
        &self.logicals
    }

    /// Support of `X(v_{B_i})`, 0-based logical position.
    pub fn logical_x_support(&self, pos: usize) -> &BitVector {
        &self.logical_x_supports[pos]
    }

    /// Support of `Z(v_{B_i^c})`, 0-based logical position.
    pub fn logical_z_support(&self, pos: usize) -> &BitVector {
        &self.logical_z_supports[pos]
    }

    /// 0-based position of an explicit label set, if canonical-sized.
    pub fn position_of(&self, b: &IndexSet) -> Option<usize> {
        self.logicals.iter().position(|l| l.b == *b)
    }

    /// Resolve a 1-based canonical position or an explicit set to a logical.
    pub fn resolve(&self, spec: &LogicalSpec) -> Result<LogicalIndex> {
        match spec {
            LogicalSpec::Position(i) => {
                if *i >= 1 && *i <= self.k {
                    Ok(self.logicals[*i - 1])
                } else {
                    Err(Error::BadLogicalOperand {
                        expected: self.m / 2,
                        m: self.m,
                        got: format!("position {i} (k = {})", self.k),
                    })
                }
            }
            LogicalSpec::Set(b) => self
                .position_of(b)
                .map(|p| self.logicals[p])
                .ok_or_else(|| Error::BadLogicalOperand {
                    expected: self.m / 2,
                    m: self.m,
                    got: b.to_string(),
                }),
        }
    }

    pub fn stabilizer_solver(&self) -> &F2Solver {
        &self.stabilizer_solver
    }

    pub(crate) fn x_basis_solver(&self) -> &F2Solver {
        &self.x_basis_solver
    }

    pub(crate) fn z_basis_solver(&self) -> &F2Solver {
        &self.z_basis_solver
    }

    /// Weight-reduced generating set `h_A`, every support of weight exactly
    /// `2^(m/2 + 1)`, spanning the same row space as the canonical set.
    ///
    /// Labels with `|A| = m/2 - 1` keep `h_A = v_A`; smaller labels wedge in
    /// complemented basis vectors picked by `choice` (default: the smallest
    /// indices outside `A`).
    pub fn weight_reduced_stabilizers(&self, choice: &ReductionChoice) -> Result<Vec<BitVector>> {
        let half = self.m / 2;
        let mut out = Vec::with_capacity(self.stabilizer_supports.len());
        for (label, support) in self.stabilizer_labels.iter().zip(&self.stabilizer_supports) {
            let needed = half - 1 - label.len();
            if needed == 0 {
                out.push(support.clone());
                continue;
            }
            let picks: Vec<usize> = match choice.overrides.get(label) {
                Some(explicit) => explicit.clone(),
                None => label.complement().iter().take(needed).collect(),
            };
            if picks.len() != needed {
                return Err(Error::Parse(format!(
                    "reduction for A = {label} needs {needed} indices, got {}",
                    picks.len()
                )));
            }
            let mut h = support.clone();
            for &i in &picks {
                if label.contains(i) || i < 1 || i > self.m {
                    return Err(Error::IndexOutOfRange { index: i, m: self.m });
                }
                h = h.wedge(&crate::f2::basis_vector(i, self.m)?.complement());
            }
            out.push(h);
        }
        Ok(out)
    }

    /// JSON-serializable description of the code.
    pub fn description(&self, reduced: Option<&ReductionChoice>) -> Result<CodeDescription> {
        let stabilizers = match reduced {
            None => self
                .stabilizer_labels
                .iter()
                .zip(&self.stabilizer_supports)
                .map(|(label, support)| StabilizerEntry {
                    label: label.to_vec(),
                    support: support.positions(),
                })
                .collect(),
            Some(choice) => {
                let supports = self.weight_reduced_stabilizers(choice)?;
                self.stabilizer_labels
                    .iter()
                    .zip(&supports)
                    .map(|(label, support)| StabilizerEntry {
                        label: label.to_vec(),
                        support: support.positions(),
                    })
                    .collect()
            }
        };
        Ok(CodeDescription {
            m: self.m,
            n: self.n,
            k: self.k,
            d: self.d,
            reduced: reduced.is_some(),
            stabilizers,
            logical_x: self
                .logicals
                .iter()
                .zip(&self.logical_x_supports)
                .map(|(l, s)| LogicalEntry {
                    position: l.position,
                    b: l.b.to_vec(),
                    support: s.positions(),
                })
                .collect(),
            logical_z: self
                .logicals
                .iter()
                .zip(&self.logical_z_supports)
                .map(|(l, s)| LogicalEntry {
                    position: l.position,
                    b: l.b.to_vec(),
                    support: s.positions(),
                })
                .collect(),
            canonical_indices: self.logicals.iter().map(|l| l.b.to_vec()).collect(),
        })
    }
}

impl fmt::Debug for QrmCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRM({}) [[{}, {}, {}]]", self.m, self.n, self.k, self.d)
    }
}

/// Operand addressing for logical qubits: canonical 1-based position or an
/// explicit label set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicalSpec {
    Position(usize),
    Set(IndexSet),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct StabilizerEntry {
    pub label: Vec<usize>,
    pub support: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LogicalEntry {
    pub position: usize,
    pub b: Vec<usize>,
    pub support: Vec<usize>,
}

/// Wire format for `code --json`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CodeDescription {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub reduced: bool,
    pub stabilizers: Vec<StabilizerEntry>,
    pub logical_x: Vec<LogicalEntry>,
    pub logical_z: Vec<LogicalEntry>,
    pub canonical_indices: Vec<Vec<usize>>,
}
