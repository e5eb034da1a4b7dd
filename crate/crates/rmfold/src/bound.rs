//! Circuit-depth lower bound from gate counting: any implementation of the
//! hardest logical Clifford gate by layers of <= l-qubit Clifford gates needs
//! depth at least `log |C_k| / log N_{l,n}`, where `N_{l,n}` bounds the number
//! of distinct single layers.
//!
//! Everything is exact: group sizes and layer counts are big integers, and
//! the returned ratio divides a directed-rounded fixed-point `log2` of the
//! numerator by one of the denominator, so it is a true rational lower bound.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which count of the n-qubit Clifford group to use. `Product` is the
/// standard `2^(n^2 + 2n) prod_{j=1}^n (4^j - 1)`; `Sum` replaces the
/// product with a sum (kept selectable because both shapes circulate).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CliffordCountFormula {
    Product,
    Sum,
}

/// `|C_n|` under the chosen formula; `|C_0| = 1`.
pub fn clifford_group_size(n_qubits: usize, formula: CliffordCountFormula) -> BigUint {
    if n_qubits == 0 {
        return BigUint::one();
    }
    let lead = BigUint::one() << (n_qubits * n_qubits + 2 * n_qubits);
    let terms = (1..=n_qubits).map(|j| (BigUint::one() << (2 * j)) - BigUint::one());
    match formula {
        CliffordCountFormula::Product => lead * terms.product::<BigUint>(),
        CliffordCountFormula::Sum => lead * terms.sum::<BigUint>(),
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Upper bound on the number of distinct depth-1 layers of Clifford gates
/// supported on at most `l` qubits each:
/// `(ceil(n/l) l)! / ((l!)^ceil(n/l) ceil(n/l)!) * |C_l|^ceil(n/l)`.
pub fn layer_count_upper_bound(n: usize, l: usize, c_l: &BigUint) -> Result<BigUint> {
    if l == 0 || l > n {
        return Err(Error::DegenerateBlockSize { l, n });
    }
    let groups = n.div_ceil(l);
    let numerator = factorial(groups * l);
    let denominator = factorial(l).pow(groups as u32) * factorial(groups);
    Ok(numerator / denominator * c_l.pow(groups as u32))
}

/// Directed-rounding fixed-point `log2(x)` scaled by `2^frac_bits`.
/// `round_up = false` never overestimates; `true` never underestimates.
pub fn log2_fixed(x: &BigUint, frac_bits: u32, round_up: bool) -> BigInt {
    assert!(!x.is_zero(), "log2 of zero");
    const P: u64 = 192;
    let shift_div = |v: BigUint, sh: u64, up: bool| -> BigUint {
        if up {
            (v + ((BigUint::one() << sh) - BigUint::one())) >> sh
        } else {
            v >> sh
        }
    };
    let int_part = x.bits() - 1;
    // Mantissa in [2^P, 2^(P+1)).
    let mut mant = shift_div(x.clone() << P, int_part, round_up);
    let mut result = BigInt::from(int_part) << frac_bits;
    for bit in (0..frac_bits).rev() {
        mant = shift_div(&mant * &mant, P, round_up);
        if mant.bits() > P + 1 {
            result += BigInt::one() << bit;
            mant = shift_div(mant, 1, round_up);
        }
    }
    result
}

/// Full trace of one bound evaluation.
#[derive(Clone, Debug)]
pub struct BoundTrace {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub formula: CliffordCountFormula,
    pub c_k: BigUint,
    pub c_l: BigUint,
    pub layer_bound: BigUint,
    pub value: Ratio<BigInt>,
}

impl BoundTrace {
    pub fn value_f64(&self) -> f64 {
        ratio_to_f64(&self.value)
    }
}

pub fn ratio_to_f64(r: &Ratio<BigInt>) -> f64 {
    let num = r.numer().to_f64().unwrap_or(f64::MAX);
    let den = r.denom().to_f64().unwrap_or(f64::MAX);
    num / den
}

const LOG_FRAC_BITS: u32 = 64;

/// Rational lower bound on the depth needed to realize every `k`-qubit
/// logical Clifford gate out of layers of <= `l`-qubit gates on `n` qubits.
pub fn depth_lower_bound(
    n: usize,
    k: usize,
    l: usize,
    formula: CliffordCountFormula,
) -> Result<BoundTrace> {
    let c_k = clifford_group_size(k, formula);
    let c_l = clifford_group_size(l, formula);
    let layer_bound = layer_count_upper_bound(n, l, &c_l)?;
    let value = if c_k.is_one() {
        Ratio::zero()
    } else {
        // Underestimate the numerator, overestimate the denominator.
        let num = log2_fixed(&c_k, LOG_FRAC_BITS, false);
        let den = log2_fixed(&layer_bound, LOG_FRAC_BITS, true);
        let r = Ratio::new(num, den);
        if r.is_negative() {
            Ratio::zero()
        } else {
            r
        }
    };
    Ok(BoundTrace {
        n,
        k,
        l,
        formula,
        c_k,
        c_l,
        layer_bound,
        value,
    })
}
