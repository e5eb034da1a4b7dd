//! Classical Reed-Muller codes RM(r, m), their shear/swap automorphisms, and
//! the replacement-operator calculus used to reason about products of shears.
//!
//! `P(i, j)` swaps basis vectors `v_i <-> v_j`; `Q(i, j)` maps
//! `v_i -> v_i + v_j` and fixes every other basis vector. Both are
//! involutions on bit positions. `Q(K)` composes `Q` over a set of ordered
//! pairs with pairwise-distinct indices, and `R(K) = prod (M_Q + I)` sends
//! `v_A` to `v_{(A u F2(K)) \ F1(K)}` when `F1(K) <= A` and to zero otherwise.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2::{
    subsets_of_size, vector_from_set, BitVector, F2Solver, IndexSet, Permutation,
};

/// Classical Reed-Muller code RM(r, m), generated by all `v_A` with
/// `0 <= |A| <= r`, enumerated by `|A|` ascending then lexicographic `A`.
#[derive(Clone)]
pub struct RMCode {
    r: usize,
    m: usize,
    labels: Vec<IndexSet>,
    generators: Vec<BitVector>,
    solver: F2Solver,
}

impl RMCode {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        if r > m {
            return Err(Error::OrderOutOfRange { r, m });
        }
        let mut labels = Vec::new();
        for size in 0..=r {
            labels.extend(subsets_of_size(m, size));
        }
        let generators: Vec<BitVector> = labels.iter().map(vector_from_set).collect();
        let solver = F2Solver::new(&generators);
        debug_assert_eq!(solver.rank(), generators.len());
        Ok(RMCode {
            r,
            m,
            labels,
            generators,
            solver,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block_length(&self) -> usize {
        1 << self.m
    }

    /// Dimension: sum of C(m, i) for i <= r.
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn distance(&self) -> usize {
        1 << (self.m - self.r)
    }

    pub fn labels(&self) -> &[IndexSet] {
        &self.labels
    }

    pub fn generators(&self) -> &[BitVector] {
        &self.generators
    }

    /// F2 membership via the cached row echelon form.
    pub fn contains(&self, w: &BitVector) -> bool {
        w.len() == self.block_length() && self.solver.contains(w)
    }

    pub fn solver(&self) -> &F2Solver {
        &self.solver
    }

    /// True iff every permuted generator stays inside the code.
    pub fn is_automorphism(&self, pi: &Permutation) -> bool {
        pi.len() == self.block_length()
            && self.generators.iter().all(|g| self.contains(&pi.apply(g)))
    }
}

impl fmt::Debug for RMCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RM({}, {}) [{}, {}, {}]",
            self.r,
            self.m,
            self.block_length(),
            self.dimension(),
            self.distance()
        )
    }
}

/// Swap automorphism `P(i, j)`: exchanges labels that differ exactly in bit
/// positions `i` and `j`.
pub fn perm_p(i: usize, j: usize, m: usize) -> Result<Permutation> {
    check_pair(i, j, m)?;
    let n = 1usize << m;
    let (bi, bj) = (1usize << (i - 1), 1usize << (j - 1));
    Permutation::from_fn(n, |p| {
        let (xi, xj) = (p & bi != 0, p & bj != 0);
        if xi != xj {
            p ^ bi ^ bj
        } else {
            p
        }
    })
}

/// Shear automorphism `Q(i, j)`: on labels with `x_j = 1`, flips `x_i`.
pub fn perm_q(i: usize, j: usize, m: usize) -> Result<Permutation> {
    check_pair(i, j, m)?;
    let n = 1usize << m;
    let (bi, bj) = (1usize << (i - 1), 1usize << (j - 1));
    Permutation::from_fn(n, |p| if p & bj != 0 { p ^ bi } else { p })
}

fn check_pair(i: usize, j: usize, m: usize) -> Result<()> {
    for idx in [i, j] {
        if idx < 1 || idx > m {
            return Err(Error::IndexOutOfRange { index: idx, m });
        }
    }
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    Ok(())
}

/// Set `K` of ordered pairs of distinct indices from `[m]`; canonical storage
/// sorts pairs by first index, so equality ignores insertion order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    m: usize,
    pairs: Vec<(usize, usize)>,
}

impl PairSet {
    pub fn new(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        let mut seen = 0u64;
        for &(i, j) in &pairs {
            for idx in [i, j] {
                if idx < 1 || idx > m {
                    return Err(Error::IndexOutOfRange { index: idx, m });
                }
                if seen & (1 << (idx - 1)) != 0 {
                    return Err(Error::OverlappingPairs(pairs.clone()));
                }
                seen |= 1 << (idx - 1);
            }
        }
        pairs.sort_unstable();
        Ok(PairSet { m, pairs })
    }

    pub fn empty(m: usize) -> Self {
        PairSet { m, pairs: vec![] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// First elements of each ordered pair.
    pub fn f1(&self) -> IndexSet {
        IndexSet::new(self.m, self.pairs.iter().map(|&(i, _)| i)).expect("validated")
    }

    /// Second elements of each ordered pair.
    pub fn f2(&self) -> IndexSet {
        IndexSet::new(self.m, self.pairs.iter().map(|&(_, j)| j)).expect("validated")
    }

    /// All subsets `L <= K`, in ascending bitmask order over the sorted pairs.
    pub fn subsets(&self) -> Vec<PairSet> {
        let c = self.pairs.len();
        (0u32..(1 << c))
            .map(|mask| PairSet {
                m: self.m,
                pairs: self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| mask >> idx & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect(),
            })
            .collect()
    }

    /// The composed shear `Q(K)`; `Q({}) = e`. Involutive because the pairs
    /// touch pairwise-distinct indices.
    pub fn permutation(&self) -> Permutation {
        let n = 1usize << self.m;
        let masks: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(i, j)| (1usize << (i - 1), 1usize << (j - 1)))
            .collect();
        Permutation::from_fn(n, |p| {
            let mut q = p;
            for &(bi, bj) in &masks {
                if p & bj != 0 {
                    q ^= bi;
                }
            }
            q
        })
        .expect("shears are bijective")
    }
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (i, j)) in self.pairs.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "({i},{j})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairSet({self})")
    }
}

/// Dense square matrix over F2, rows as bit vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    n: usize,
    rows: Vec<BitVector>,
}

impl F2Matrix {
    pub fn zero(n: usize) -> Self {
        F2Matrix {
            n,
            rows: vec![BitVector::zero(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for p in 0..n {
            m.rows[p].set(p, true);
        }
        m
    }

    pub fn from_permutation(pi: &Permutation) -> Self {
        let n = pi.len();
        let mut m = Self::zero(n);
        for p in 0..n {
            // (M_pi)_{q, p} = 1 iff q = pi(p)
            m.rows[pi.image(p)].set(p, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, q: usize) -> &BitVector {
        &self.rows[q]
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.add_assign(b);
        }
    }

    /// Matrix-vector product with `w` as a column vector.
    pub fn mul_vec(&self, w: &BitVector) -> BitVector {
        assert_eq!(self.n, w.len());
        let mut out = BitVector::zero(self.n);
        for q in 0..self.n {
            if self.rows[q].dot(w) == 1 {
                out.set(q, true);
            }
        }
        out
    }

    /// Build a matrix from its action on the standard basis columns.
    pub fn from_columns_fn(n: usize, f: impl Fn(usize) -> BitVector) -> Self {
        let mut m = Self::zero(n);
        for p in 0..n {
            let col = f(p);
            assert_eq!(col.len(), n);
            for q in 0..n {
                if col.get(q) {
                    m.rows[q].set(p, true);
                }
            }
        }
        m
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}:", self.n, self.n)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

// Column of the literal product R(i1,i2)...R(i_{2c-1},i_{2c}) on e_p,
// applying the factors (M_Q + I) right to left as a growing XOR set.
fn product_column(n: usize, pair_perms: &[Permutation], p: usize) -> BitVector {
    let mut support = vec![p];
    for pi in pair_perms.iter().rev() {
        let mut next = Vec::with_capacity(support.len() * 2);
        next.extend(support.iter().map(|&q| pi.image(q)));
        next.extend(support.iter().copied());
        next.sort_unstable();
        // XOR semantics: positions appearing an even number of times cancel.
        let mut reduced = Vec::with_capacity(next.len());
        let mut idx = 0;
        while idx < next.len() {
            let mut run = 1;
            while idx + run < next.len() && next[idx + run] == next[idx] {
                run += 1;
            }
            if run % 2 == 1 {
                reduced.push(next[idx]);
            }
            idx += run;
        }
        support = reduced;
    }
    BitVector::from_positions(n, &support)
}

fn pair_permutations(k: &PairSet) -> Vec<Permutation> {
    k.pairs()
        .iter()
        .map(|&(i, j)| perm_q(i, j, k.m()).expect("validated pair"))
        .collect()
}

/// Replacement operator `R(K)` as the literal matrix product of the
/// per-pair factors `M_Q(i,j) + I`; `R({}) = I`.
pub fn replacement_r(k: &PairSet) -> F2Matrix {
    let n = 1usize << k.m();
    let perms = pair_permutations(k);
    F2Matrix::from_columns_fn(n, |p| product_column(n, &perms, p))
}

/// Apply `R(K)` to a vector without materializing the matrix.
pub fn replacement_apply(k: &PairSet, w: &BitVector) -> BitVector {
    let mut out = w.clone();
    for &(i, j) in k.pairs() {
        // (M_Q(i,j) + I) w
        let q = perm_q(i, j, k.m()).expect("validated pair");
        let mut next = q.apply(&out);
        next.add_assign(&out);
        out = next;
    }
    out
}

/// Subset-sum of shear permutation matrices: `frak_Q(K) = sum_{L <= K} M_Q(L)`.
pub fn frak_q(k: &PairSet) -> F2Matrix {
    let n = 1usize << k.m();
    let subs: Vec<Permutation> = k.subsets().iter().map(PairSet::permutation).collect();
    F2Matrix::from_columns_fn(n, |p| {
        let mut col = BitVector::zero(n);
        for pi in &subs {
            col.flip(pi.image(p));
        }
        col
    })
}

/// Subset-sum of replacement operators: `frak_R(K) = sum_{L <= K} R(L)`,
/// each `R(L)` computed as its literal product.
pub fn frak_r(k: &PairSet) -> F2Matrix {
    let n = 1usize << k.m();
    let per_subset: Vec<Vec<Permutation>> =
        k.subsets().iter().map(pair_permutations).collect();
    F2Matrix::from_columns_fn(n, |p| {
        let mut col = BitVector::zero(n);
        for perms in &per_subset {
            col.add_assign(&product_column(n, perms, p));
        }
        col
    })
}

/// Expected image of `v_A` under `R(K)` per the replacement lemma.
pub fn replacement_on_set(k: &PairSet, a: &IndexSet) -> BitVector {
    if k.f1().is_subset_of(a) {
        vector_from_set(&a.union(&k.f2()).minus(&k.f1()))
    } else {
        BitVector::zero(1 << k.m())
    }
}

/// Lemma oracle: `R(K) v_A` equals the closed-form image for every `A` with
/// `|A| <= m/2` and every valid `K` drawn from `ks`. Returns failures.
pub fn check_rk_on_v(m: usize, ks: &[PairSet]) -> Vec<String> {
    let mut failures = Vec::new();
    let mut sets = Vec::new();
    for size in 0..=m / 2 {
        sets.extend(subsets_of_size(m, size));
    }
    for k in ks {
        for a in &sets {
            let got = replacement_apply(k, &vector_from_set(a));
            let expected = replacement_on_set(k, a);
            if got != expected {
                failures.push(format!("R({k}) v_{a} mismatch at m={m}"));
            }
        }
    }
    failures
}

/// Lemma oracle: `R(K) = frak_Q(K)` and `M_Q(K) = frak_R(K)` as matrices.
pub fn check_rk_qk_equiv(k: &PairSet) -> Vec<String> {
    let mut failures = Vec::new();
    if replacement_r(k) != frak_q(k) {
        failures.push(format!("R({k}) != frak_Q({k})"));
    }
    if F2Matrix::from_permutation(&k.permutation()) != frak_r(k) {
        failures.push(format!("M_Q({k}) != frak_R({k})"));
    }
    failures
}

/// Weight class of `wt(v_S ^ Q(K) v_S)` predicted by the phase lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseWeightClass {
    Zero,
    One,
    Two,
    DivisibleByFour,
}

/// Closed-form prediction for `wt(v_S ^ Q(K) v_S)` where `S` has size
/// `<= m/2`. Matches the case split on pair containment and `|S ^ F1(K)|`.
pub fn phase_weight_class(k: &PairSet, s: &IndexSet) -> PhaseWeightClass {
    let m = k.m();
    if s.len() < m / 2 {
        return PhaseWeightClass::DivisibleByFour;
    }
    // |S| = m/2 from here on.
    if k.pairs().iter().any(|&(i, j)| s.contains(i) && s.contains(j)) {
        return PhaseWeightClass::Zero;
    }
    match m / 2 - s.intersection(&k.f1()).len() {
        0 => PhaseWeightClass::One,
        1 => PhaseWeightClass::Two,
        _ => PhaseWeightClass::DivisibleByFour,
    }
}

/// Lemma oracle: computed overlap weights match `phase_weight_class` for all
/// labels of size `<= m/2` and all `K` in `ks`.
pub fn check_phase_from_qk(m: usize, ks: &[PairSet]) -> Vec<String> {
    let mut failures = Vec::new();
    let mut sets = Vec::new();
    for size in 0..=m / 2 {
        sets.extend(subsets_of_size(m, size));
    }
    for k in ks {
        let pi = k.permutation();
        for s in &sets {
            let v = vector_from_set(s);
            let wt = v.wedge(&pi.apply(&v)).weight();
            let ok = match phase_weight_class(k, s) {
                PhaseWeightClass::Zero => wt == 0,
                PhaseWeightClass::One => wt == 1,
                PhaseWeightClass::Two => wt == 2,
                PhaseWeightClass::DivisibleByFour => wt.is_multiple_of(4),
            };
            if !ok {
                failures.push(format!("wt(v_{s} ^ Q({k}) v_{s}) = {wt} breaks the case split"));
            }
        }
    }
    failures
}

/// Every valid pair set over `[m]`, every size, in deterministic order.
pub fn all_pair_sets(m: usize) -> Vec<PairSet> {
    let mut out = vec![PairSet::empty(m)];
    // Grow by appending pairs (i, j) on untouched indices with i greater than
    // all current first elements, so each set is produced exactly once.
    fn extend(m: usize, current: &[(usize, usize)], used: u64, out: &mut Vec<PairSet>) {
        let min_first = current.last().map_or(1, |&(i, _)| i + 1);
        for i in min_first..=m {
            if used & (1 << (i - 1)) != 0 {
                continue;
            }
            for j in 1..=m {
                if j == i || used & (1 << (j - 1)) != 0 {
                    continue;
                }
                let mut next = current.to_vec();
                next.push((i, j));
                out.push(PairSet::new(m, next.iter().copied()).expect("distinct"));
                let next_used = used | (1 << (i - 1)) | (1 << (j - 1));
                extend(m, &next, next_used, out);
            }
        }
    }
    extend(m, &[], 0, &mut out);
    out
}
