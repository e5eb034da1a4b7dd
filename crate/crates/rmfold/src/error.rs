use thiserror::Error;

use crate::pauli::PhasedPauli;

/// Errors surfaced by code construction, gate-layer building, synthesis,
/// and the verification entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("m must be a positive even integer, got {0}")]
    InvalidM(usize),

    #[error("order r = {r} out of range for m = {m}")]
    OrderOutOfRange { r: usize, m: usize },

    #[error("basis vector index {index} out of range [1, {m}]")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("automorphism indices must be distinct, got ({0}, {0})")]
    EqualIndices(usize),

    #[error("pair set indices are not pairwise distinct: {0:?}")]
    OverlappingPairs(Vec<(usize, usize)>),

    #[error("permutation is not an involution (position {0} breaks pi^2 = e)")]
    NotInvolutive(usize),

    #[error("gate positions overlap within a layer at qubit {0}")]
    OverlappingSupports(usize),

    #[error("qubit position {position} out of range for n = {n}")]
    PositionOutOfRange { position: usize, n: usize },

    #[error("circuit is for m = {circuit_m} but the code has m = {code_m}")]
    MMismatch { circuit_m: usize, code_m: usize },

    #[error(
        "circuit does not preserve the stabilizer group: image of {kind}-type generator {label} \
         is i^{phase} X({x})Z({z})"
    )]
    NotStabilizerPreserving {
        kind: char,
        label: String,
        phase: u8,
        x: String,
        z: String,
    },

    #[error("Pauli image leaves the code normalizer: i^{phase} X({x})Z({z})")]
    OutsideNormalizer { phase: u8, x: String, z: String },

    #[error("logical operand must be a size-{expected} subset of [{m}], got {got}")]
    BadLogicalOperand {
        expected: usize,
        m: usize,
        got: String,
    },

    #[error("logical operands must be distinct")]
    EqualOperands,

    #[error("logical qubit indices {0} and {1} are not adjacent (must share all but one index)")]
    NotAdjacent(String, String),

    #[error("target tableau is not symplectic: {0}")]
    NonSymplecticTarget(String),

    #[error("internal synthesis validation failed for {gate}: {detail}")]
    SynthesisValidation { gate: String, detail: String },

    #[error("state-vector oracle supports m <= {cap}, got m = {m}")]
    OracleDimensionCap { m: usize, cap: usize },

    #[error("the synthesized circuit left the code space (norm defect {0})")]
    OracleLeftCodeSpace(f64),

    #[error("unknown theorem label {0:?}")]
    UnknownTheorem(String),

    #[error("l = {l} must satisfy 1 <= l <= n = {n}")]
    DegenerateBlockSize { l: usize, n: usize },

    #[error("{0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn not_preserving(kind: char, label: String, image: &PhasedPauli) -> Self {
        Error::NotStabilizerPreserving {
            kind,
            label,
            phase: image.phase(),
            x: image.x().to_string(),
            z: image.z().to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
