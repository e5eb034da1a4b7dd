//! Exact F2 linear algebra on dense bit vectors, base-2 bit indexing, and
//! involutive bit permutations.
//!
//! Positions of a length-2^m vector carry base-2 labels `x_m ... x_1`, with
//! position `p = sum_i x_i 2^(i-1)`. Basis vector `v_i` is one exactly at the
//! positions whose label has `x_i = 1`, and `v_A` is the bitwise AND of `v_a`
//! over `a in A` (with `v_{} = all-ones`).

use std::fmt;

use crate::error::{Error, Result};

/// Dense vector over F2, packed 64 positions per word.
///
/// Vectors produced by the code-construction API always have length 2^m;
/// length-k vectors also back logical-support rows in tableaux.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zero(len: usize) -> Self {
        assert!(len > 0, "BitVector length must be positive");
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zero(len);
        for p in 0..len {
            v.set(p, true);
        }
        v
    }

    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zero(len);
        for &p in positions {
            assert!(p < len, "position {p} out of range for length {len}");
            v.set(p, true);
        }
        v
    }

    /// Parse a 0/1 string, leftmost character = position 0.
    pub fn from_bits_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        let mut v = Self::zero(s.len());
        for (p, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(p, true),
                _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, p: usize) -> bool {
        debug_assert!(p < self.len);
        (self.words[p >> 6] >> (p & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, p: usize, value: bool) {
        debug_assert!(p < self.len);
        if value {
            self.words[p >> 6] |= 1u64 << (p & 63);
        } else {
            self.words[p >> 6] &= !(1u64 << (p & 63));
        }
    }

    #[inline]
    pub fn flip(&mut self, p: usize) {
        debug_assert!(p < self.len);
        self.words[p >> 6] ^= 1u64 << (p & 63);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positionwise AND (the wedge product).
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "wedge of unequal lengths");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Positionwise XOR (addition over F2).
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "sum of unequal lengths");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "sum of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the overlap: `(w0 z0 + ... + w_{n-1} z_{n-1}) mod 2`.
    pub fn dot(&self, other: &Self) -> u8 {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (ones & 1) as u8
    }

    pub fn complement(&self) -> Self {
        let mut v = Self::ones(self.len);
        v.add_assign(self);
        v
    }

    pub fn positions(&self) -> Vec<usize> {
        (0..self.len).filter(|&p| self.get(p)).collect()
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((i << 6) + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.len {
            write!(f, "{}", if self.get(p) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Subset of the basis-vector index range `[m] = {1, ..., m}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    m: usize,
    mask: u64,
}

impl IndexSet {
    pub fn empty(m: usize) -> Self {
        assert!((1..=63).contains(&m), "index range m out of supported bounds");
        IndexSet { m, mask: 0 }
    }

    pub fn full(m: usize) -> Self {
        Self::empty(m).complement()
    }

    pub fn new(m: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(m);
        for i in members {
            if i < 1 || i > m {
                return Err(Error::IndexOutOfRange { index: i, m });
            }
            set.mask |= 1u64 << (i - 1);
        }
        Ok(set)
    }

    pub fn singleton(m: usize, i: usize) -> Result<Self> {
        Self::new(m, [i])
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.m && (self.mask >> (i - 1)) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        IndexSet {
            m: self.m,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        IndexSet {
            m: self.m,
            mask: self.mask & other.mask,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        IndexSet {
            m: self.m,
            mask: self.mask & !other.mask,
        }
    }

    /// Complement within `[m]`.
    pub fn complement(&self) -> Self {
        let full = if self.m == 63 {
            !0u64 >> 1
        } else {
            (1u64 << self.m) - 1
        };
        IndexSet {
            m: self.m,
            mask: full & !self.mask,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.m).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSet({self} over [{}])", self.m)
    }
}

/// All size-`k` subsets of `[m]` in lexicographic order of their sorted
/// element lists.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if current.len() == k {
            out.push(IndexSet::new(m, current.iter().copied()).expect("in range"));
            return;
        }
        let remaining = k - current.len();
        for i in start..=m.saturating_sub(remaining - 1) {
            current.push(i);
            rec(m, k, i + 1, current, out);
            current.pop();
        }
    }
    if k <= m {
        rec(m, k, 1, &mut current, &mut out);
    }
    out
}

/// Basis vector `v_i`: one at positions whose label has `x_i = 1`.
pub fn basis_vector(i: usize, m: usize) -> Result<BitVector> {
    if i < 1 || i > m {
        return Err(Error::IndexOutOfRange { index: i, m });
    }
    let n = 1usize << m;
    let mut v = BitVector::zero(n);
    for p in 0..n {
        if (p >> (i - 1)) & 1 == 1 {
            v.set(p, true);
        }
    }
    Ok(v)
}

/// `v_A`: wedge of `v_a` over `a in A`, with `v_{} = all-ones`.
pub fn vector_from_set(a: &IndexSet) -> BitVector {
    let m = a.m();
    let n = 1usize << m;
    let mut v = BitVector::ones(n);
    for i in a.iter() {
        v = v.wedge(&basis_vector(i, m).expect("members are in range"));
    }
    v
}

/// Explicit bijection on positions `{0, ..., 2^m - 1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Validates bijectivity.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &q in &map {
            if q >= n {
                return Err(Error::Parse(format!("permutation image {q} out of range")));
            }
            if seen[q] {
                return Err(Error::Parse(format!("permutation image {q} repeated")));
            }
            seen[q] = true;
        }
        Ok(Permutation { map })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::from_map((0..n).map(f).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn image(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(p, &q)| p == q)
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(p, &q)| self.map[q] == p)
    }

    /// First position violating `pi^2 = e`, if any.
    pub fn involution_defect(&self) -> Option<usize> {
        (0..self.len()).find(|&p| self.map[self.map[p]] != p)
    }

    /// `self . other`: apply `other` first (matches `M_self M_other`).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation {
            map: (0..self.len()).map(|p| self.map[other.map[p]]).collect(),
        }
    }

    /// `M_pi w`: output position `pi(p)` carries input position `p`'s bit.
    pub fn apply(&self, w: &BitVector) -> BitVector {
        assert_eq!(self.len(), w.len(), "permutation/vector length mismatch");
        let mut out = BitVector::zero(w.len());
        for p in 0..w.len() {
            if w.get(p) {
                out.set(self.map[p], true);
            }
        }
        out
    }

    /// Moved pairs `{p, pi(p)}` with `p < pi(p)`; meaningful for involutions.
    pub fn moved_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&p| p < self.map[p])
            .map(|p| (p, self.map[p]))
            .collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| p == self.map[p]).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({:?})", self.map)
    }
}

/// Row-echelon solver over a fixed list of F2 basis rows.
///
/// `solve` returns the coefficient vector over the *original* rows, which is
/// what stabilizer/logical decompositions need.
#[derive(Clone)]
pub struct F2Solver {
    num_rows: usize,
    // (pivot position, eliminated row, combination over original rows)
    pivots: Vec<(usize, BitVector, BitVector)>,
}

impl F2Solver {
    pub fn new(rows: &[BitVector]) -> Self {
        let num_rows = rows.len();
        let mut pivots: Vec<(usize, BitVector, BitVector)> = Vec::new();
        for (idx, row) in rows.iter().enumerate() {
            let mut r = row.clone();
            let mut combo = BitVector::zero(num_rows.max(1));
            combo.set(idx, true);
            for (pcol, prow, pcombo) in &pivots {
                if r.get(*pcol) {
                    r.add_assign(prow);
                    combo.add_assign(pcombo);
                }
            }
            if let Some(col) = r.first_one() {
                pivots.push((col, r, combo));
            }
        }
        F2Solver { num_rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients over the original rows, or `None` if `w` is outside the
    /// row space.
    pub fn solve(&self, w: &BitVector) -> Option<BitVector> {
        let mut r = w.clone();
        let mut combo = BitVector::zero(self.num_rows.max(1));
        for (pcol, prow, pcombo) in &self.pivots {
            if r.get(*pcol) {
                r.add_assign(prow);
                combo.add_assign(pcombo);
            }
        }
        if r.is_zero() {
            Some(combo)
        } else {
            None
        }
    }

    pub fn contains(&self, w: &BitVector) -> bool {
        self.solve(w).is_some()
    }
}

/// Rank of a list of rows.
pub fn rank(rows: &[BitVector]) -> usize {
    F2Solver::new(rows).rank()
}

/// Row-space equality via ranks of each side and of the union.
pub fn same_row_space(a: &[BitVector], b: &[BitVector]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    if ra != rb {
        return false;
    }
    let mut all: Vec<BitVector> = a.to_vec();
    all.extend_from_slice(b);
    rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_bits_str(s).unwrap()
    }

    #[test]
    fn basis_vectors_match_bit_label_rule() {
        // Table rows for m = 4 and the m = 2 direct case.
        assert_eq!(basis_vector(1, 4).unwrap(), bv("0101010101010101"));
        assert_eq!(basis_vector(4, 4).unwrap(), bv("0000000011111111"));
        assert_eq!(basis_vector(1, 2).unwrap(), bv("0101"));
    }

    #[test]
    fn basis_vector_rejects_out_of_range_index() {
        assert!(matches!(
            basis_vector(5, 4),
            Err(Error::IndexOutOfRange { index: 5, m: 4 })
        ));
        assert!(basis_vector(0, 4).is_err());
    }

    #[test]
    fn vector_from_set_wedges_members() {
        let m = 4;
        let a12 = IndexSet::new(m, [1, 2]).unwrap();
        assert_eq!(vector_from_set(&a12), bv("0001000100010001"));
        assert_eq!(vector_from_set(&IndexSet::empty(m)), BitVector::ones(16));
        let full = IndexSet::new(m, [1, 2, 3, 4]).unwrap();
        assert_eq!(vector_from_set(&full), bv("0000000000000001"));
    }

    #[test]
    fn wedge_truth_table_and_identity() {
        assert_eq!(bv("0101").wedge(&bv("0011")), bv("0001"));
        let w = bv("0110");
        assert_eq!(w.wedge(&BitVector::ones(4)), w);
        let v1 = basis_vector(1, 4).unwrap();
        let v2 = basis_vector(2, 4).unwrap();
        let a12 = IndexSet::new(4, [1, 2]).unwrap();
        assert_eq!(v1.wedge(&v2), vector_from_set(&a12));
    }

    #[test]
    fn dot_products_detect_full_union() {
        let m = 4;
        let v12 = vector_from_set(&IndexSet::new(m, [1, 2]).unwrap());
        let v34 = vector_from_set(&IndexSet::new(m, [3, 4]).unwrap());
        let v13 = vector_from_set(&IndexSet::new(m, [1, 3]).unwrap());
        assert_eq!(v12.dot(&v34), 1);
        assert_eq!(v12.dot(&v13), 0);
        assert_eq!(v12.dot(&BitVector::zero(16)), 0);
    }

    #[test]
    fn weights_follow_closed_form() {
        for m in 1..=6 {
            for size in 0..=m {
                for a in subsets_of_size(m, size) {
                    assert_eq!(vector_from_set(&a).weight(), 1 << (m - size));
                }
            }
        }
        assert_eq!(BitVector::zero(8).weight(), 0);
        // v_1 AND (1 + v_2) at m = 4 has weight 2^(4-1-1).
        let v1 = basis_vector(1, 4).unwrap();
        let v2c = basis_vector(2, 4).unwrap().complement();
        assert_eq!(v1.wedge(&v2c).weight(), 4);
    }

    // Prop 1(1): disjoint A, B give weight 2^(m-|A|-|B|). Exhaustive m <= 6.
    #[test]
    fn prop1_weight_of_mixed_wedges() {
        for m in 2..=6usize {
            let n = 1usize << m;
            for asize in 0..=m {
                for a in subsets_of_size(m, asize) {
                    for bsize in 0..=(m - asize) {
                        for b in subsets_of_size(m, bsize) {
                            if !a.intersection(&b).is_empty() {
                                continue;
                            }
                            let mut w = vector_from_set(&a);
                            for i in b.iter() {
                                w = w.wedge(&basis_vector(i, m).unwrap().complement());
                            }
                            assert_eq!(w.weight() * (1 << (asize + bsize)), n);
                        }
                    }
                }
            }
        }
    }

    // Prop 1(3): v_A . v_B = 1 iff A union B = [m]. Exhaustive m <= 6.
    #[test]
    fn prop1_dot_iff_union_full() {
        for m in 2..=6usize {
            let mut sets = Vec::new();
            for size in 0..=m {
                sets.extend(subsets_of_size(m, size));
            }
            for a in &sets {
                let va = vector_from_set(a);
                for b in &sets {
                    let expected = u8::from(a.union(b) == IndexSet::full(m));
                    assert_eq!(va.dot(&vector_from_set(b)), expected, "A={a} B={b}");
                }
            }
        }
    }

    #[test]
    fn permutation_application_and_involutions() {
        let id = Permutation::identity(16);
        let w = bv("0011001100110011");
        assert_eq!(id.apply(&w), w);

        // Transposition of positions 0 and 1.
        let t = Permutation::from_fn(4, |p| match p {
            0 => 1,
            1 => 0,
            p => p,
        })
        .unwrap();
        assert!(t.is_involution());
        assert_eq!(t.apply(&bv("1000")), bv("0100"));
        let u = bv("1010");
        assert_eq!(t.apply(&t.apply(&u)), u);
    }

    #[test]
    fn from_map_rejects_non_bijections() {
        assert!(Permutation::from_map(vec![0, 0, 2]).is_err());
        assert!(Permutation::from_map(vec![0, 3]).is_err());
    }

    #[test]
    fn solver_tracks_combinations() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010")];
        let solver = F2Solver::new(&rows);
        assert_eq!(solver.rank(), 2);
        let combo = solver.solve(&bv("1010")).unwrap();
        // Reconstruct and compare.
        let mut acc = BitVector::zero(4);
        for (i, row) in rows.iter().enumerate() {
            if combo.get(i) {
                acc.add_assign(row);
            }
        }
        assert_eq!(acc, bv("1010"));
        assert!(solver.solve(&bv("1000")).is_none());
    }

    #[test]
    fn subsets_enumerate_in_lexicographic_order() {
        let subs = subsets_of_size(4, 2);
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        assert_eq!(subs.iter().map(|s| s.to_vec()).collect::<Vec<_>>(), expected);
    }
}
