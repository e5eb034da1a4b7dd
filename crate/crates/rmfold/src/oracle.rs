//! Dense state-vector oracle for small codes: encodes each logical
//! computational basis state as the uniform superposition over its coset,
//! applies a circuit amplitude by amplitude, and reports the induced
//! logical unitary up to global phase.
//!
//! Independent of the symplectic engine: the only shared ingredients are the
//! code's support vectors.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{Gate, PhasedPauli};
use crate::qrm::QrmCode;
use crate::tableau::LogicalTableau;

/// Largest `m` the dense oracle accepts (dimension `2^(2^m)`).
pub const ORACLE_M_CAP: usize = 4;

/// Dense complex matrix, row major.
#[derive(Clone, Debug)]
pub struct CMat {
    pub dim: usize,
    pub a: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat {
            dim,
            a: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.a[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.a[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for t in 0..d {
                let v = self.get(r, t);
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..d {
                    out.a[r * d + c] += v * other.get(t, c);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> CMat {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        self.a
            .iter()
            .zip(&other.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Divide out the phase of the largest-magnitude entry (ties broken by
    /// lowest flat index), making comparisons deterministic.
    pub fn normalize_phase(&mut self) {
        let mut best = 0usize;
        let mut best_norm = 0.0f64;
        for (i, v) in self.a.iter().enumerate() {
            let n = v.norm();
            if n > best_norm + 1e-12 {
                best_norm = n;
                best = i;
            }
        }
        if best_norm > 0.0 {
            let phase = self.a[best] / best_norm;
            for v in self.a.iter_mut() {
                *v /= phase;
            }
        }
    }

    /// `max |self - e^{i t} other|` after canonical phase normalization.
    pub fn distance_up_to_phase(&self, other: &CMat) -> f64 {
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize_phase();
        b.normalize_phase();
        a.max_abs_diff(&b)
    }
}

/// Apply one gate to a dense state on `nq` qubits (qubit `q` = bit `q` of
/// the amplitude index).
#[allow(clippy::needless_range_loop)]
pub fn apply_gate_dense(state: &mut [Complex64], nq: usize, gate: &Gate) {
    let dim = 1usize << nq;
    debug_assert_eq!(state.len(), dim);
    let i = Complex64::new(0.0, 1.0);
    match *gate {
        Gate::H(q) => {
            let bit = 1usize << q;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for idx in 0..dim {
                if idx & bit == 0 {
                    let a = state[idx];
                    let b = state[idx | bit];
                    state[idx] = s * (a + b);
                    state[idx | bit] = s * (a - b);
                }
            }
        }
        Gate::S(q) => {
            let bit = 1usize << q;
            for idx in 0..dim {
                if idx & bit != 0 {
                    state[idx] *= i;
                }
            }
        }
        Gate::Sdg(q) => {
            let bit = 1usize << q;
            for idx in 0..dim {
                if idx & bit != 0 {
                    state[idx] *= -i;
                }
            }
        }
        Gate::X(q) => {
            let bit = 1usize << q;
            for idx in 0..dim {
                if idx & bit == 0 {
                    state.swap(idx, idx | bit);
                }
            }
        }
        Gate::Z(q) => {
            let bit = 1usize << q;
            for idx in 0..dim {
                if idx & bit != 0 {
                    state[idx] = -state[idx];
                }
            }
        }
        Gate::Sw(p, q) => {
            let (bp, bq) = (1usize << p, 1usize << q);
            for idx in 0..dim {
                if idx & bp != 0 && idx & bq == 0 {
                    state.swap(idx, (idx & !bp) | bq);
                }
            }
        }
        Gate::Cx(c, t) => {
            let (bc, bt) = (1usize << c, 1usize << t);
            for idx in 0..dim {
                if idx & bc != 0 && idx & bt == 0 {
                    state.swap(idx, idx | bt);
                }
            }
        }
        Gate::Cz(p, q) => {
            let (bp, bq) = (1usize << p, 1usize << q);
            for idx in 0..dim {
                if idx & bp != 0 && idx & bq != 0 {
                    state[idx] = -state[idx];
                }
            }
        }
        Gate::Cz00(p, q) => {
            let (bp, bq) = (1usize << p, 1usize << q);
            for idx in 0..dim {
                if idx & bp == 0 && idx & bq == 0 {
                    state[idx] = -state[idx];
                }
            }
        }
    }
}

/// Dense unitary of a gate word on `nq` qubits (time order).
pub fn word_matrix(nq: usize, word: &[Gate]) -> CMat {
    let dim = 1usize << nq;
    let mut m = CMat::zeros(dim);
    for col in 0..dim {
        let mut state = vec![Complex64::new(0.0, 0.0); dim];
        state[col] = Complex64::new(1.0, 0.0);
        for g in word {
            apply_gate_dense(&mut state, nq, g);
        }
        for (r, v) in state.iter().enumerate() {
            m.set(r, col, *v);
        }
    }
    m
}

/// Dense matrix of a phased Pauli `i^s X(x) Z(z)`.
pub fn pauli_matrix(p: &PhasedPauli) -> CMat {
    let nq = p.num_qubits();
    let dim = 1usize << nq;
    let mut m = CMat::zeros(dim);
    let phase = Complex64::new(0.0, 1.0).powu(p.phase() as u32);
    let xmask: usize = (0..nq).filter(|&q| p.x().get(q)).map(|q| 1usize << q).sum();
    let zmask: usize = (0..nq).filter(|&q| p.z().get(q)).map(|q| 1usize << q).sum();
    for col in 0..dim {
        // Z acts first (diagonal sign), then X flips bits.
        let sign = if (col & zmask).count_ones() & 1 == 1 {
            -1.0
        } else {
            1.0
        };
        m.set(col ^ xmask, col, phase * sign);
    }
    m
}

fn bits_to_index(v: &crate::f2::BitVector) -> usize {
    let mut idx = 0usize;
    for p in 0..v.len() {
        if v.get(p) {
            idx |= 1 << p;
        }
    }
    idx
}

// Coset structure of the encoded computational basis.
struct EncodedBasis {
    coset: Vec<usize>,
    logical_offsets: Vec<usize>,
    amp: f64,
}

impl EncodedBasis {
    fn build(code: &QrmCode) -> Self {
        let mut coset = vec![0usize];
        for row in code.stabilizer_supports() {
            let r = bits_to_index(row);
            let mut next = Vec::with_capacity(coset.len() * 2);
            for &u in &coset {
                next.push(u);
                next.push(u ^ r);
            }
            coset = next;
        }
        coset.sort_unstable();
        coset.dedup();
        let logical_offsets = (0..code.k())
            .map(|i| bits_to_index(code.logical_x_support(i)))
            .collect();
        let amp = 1.0 / (coset.len() as f64).sqrt();
        EncodedBasis {
            coset,
            logical_offsets,
            amp,
        }
    }

    fn offset_of(&self, b: usize) -> usize {
        let mut x = 0usize;
        for (i, &off) in self.logical_offsets.iter().enumerate() {
            if b >> i & 1 == 1 {
                x ^= off;
            }
        }
        x
    }
}

/// Apply the circuit to every encoded basis state and return the induced
/// `2^k x 2^k` logical unitary, phase-normalized. Errors if the circuit
/// leaves the code space.
pub fn encoded_logical_unitary(circuit: &Circuit, code: &QrmCode) -> Result<CMat> {
    if code.m() > ORACLE_M_CAP {
        return Err(Error::OracleDimensionCap {
            m: code.m(),
            cap: ORACLE_M_CAP,
        });
    }
    if circuit.m() != code.m() {
        return Err(Error::MMismatch {
            circuit_m: circuit.m(),
            code_m: code.m(),
        });
    }
    let n = code.n();
    let dim = 1usize << n;
    let k2 = 1usize << code.k();
    let basis = EncodedBasis::build(code);
    let mut u = CMat::zeros(k2);
    for b in 0..k2 {
        let xb = basis.offset_of(b);
        let mut state = vec![Complex64::new(0.0, 0.0); dim];
        for &cw in &basis.coset {
            state[cw ^ xb] = Complex64::new(basis.amp, 0.0);
        }
        for layer in circuit.layers() {
            for g in layer.gates() {
                apply_gate_dense(&mut state, n, g);
            }
        }
        let mut total = 0.0f64;
        for c in 0..k2 {
            let xc = basis.offset_of(c);
            let mut amp = Complex64::new(0.0, 0.0);
            for &cw in &basis.coset {
                amp += state[cw ^ xc];
            }
            amp *= basis.amp;
            total += amp.norm_sqr();
            u.set(c, b, amp);
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::OracleLeftCodeSpace(1.0 - total));
        }
    }
    u.normalize_phase();
    Ok(u)
}

/// Check that a logical tableau describes the same unitary: for every basis
/// Pauli `P`, `U mat(P) U^dag = mat(T(P))` within `tol`.
pub fn tableau_matches_unitary(t: &LogicalTableau, u: &CMat, tol: f64) -> bool {
    let k = t.k();
    let udag = u.dagger();
    for i in 0..k {
        let basis = [
            (
                PhasedPauli::x_op(crate::f2::BitVector::from_positions(k, &[i])),
                t.x_row(i),
            ),
            (
                PhasedPauli::z_op(crate::f2::BitVector::from_positions(k, &[i])),
                t.z_row(i),
            ),
        ];
        for (p, image) in basis {
            let lhs = u.mul(&pauli_matrix(&p)).mul(&udag);
            if lhs.max_abs_diff(&pauli_matrix(image)) > tol {
                return false;
            }
        }
    }
    true
}
