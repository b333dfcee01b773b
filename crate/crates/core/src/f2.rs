//! Linear algebra over the two-element field, and subgroups of `Z₂^m`.
//!
//! Rows are bit-packed into 64-bit words; elimination is word-wise XOR.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simplicial::{VertexSet, MAX_VERTICES};

const WORD: usize = 64;

/// A vector in `F₂^len`. Bits are 0-indexed internally; the string form writes bit 0
/// first, so character `k` (1-indexed) is coordinate `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// The indicator vector of a vertex set: vertex `k` is bit `k - 1`.
    pub fn from_vertex_set(len: usize, set: VertexSet) -> Self {
        Self::from_indices(len, set.iter().map(|v| v as usize - 1))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over `F₂`.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * WORD + b)
            })
        })
    }

    /// The support as a vertex set (bit `i` is vertex `i + 1`).
    pub fn support(&self) -> VertexSet {
        assert!(self.len <= MAX_VERTICES as usize);
        VertexSet::from_bits(self.words.first().copied().unwrap_or(0) as u32)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::Invalid(format!("bad bit character {other:?} in {s:?}"))),
            }
        }
        Ok(v)
    }
}

/// A matrix over `F₂` stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl F2Matrix {
    pub fn new(cols: usize) -> Self {
        F2Matrix { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "row length differs from column count {cols}"
        );
        F2Matrix { cols, rows }
    }

    /// Parses rows written as bit strings, e.g. `["110", "011"]`.
    pub fn parse(cols: usize, rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Invalid(format!(
                "row {bad} has length {}, expected {cols}",
                bad.len()
            )));
        }
        Ok(F2Matrix { cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            cols: n,
            rows: (0..n).map(|i| BitVector::from_indices(n, [i])).collect(),
        }
    }

    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out: Vec<BitVector> = (0..self.cols).map(|_| BitVector::zeros(self.rows.len())).collect();
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                out[c].set(r, true);
            }
        }
        F2Matrix {
            cols: self.rows.len(),
            rows: out,
        }
    }

    /// `M v`, one bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        BitVector::from_indices(
            self.rows.len(),
            self.rows.iter().enumerate().filter(|(_, r)| r.dot(v)).map(|(i, _)| i),
        )
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only: basis keyed by leading (lowest) bit.
        let mut pivots: Vec<Option<BitVector>> = vec![None; self.cols];
        let mut rank = 0;
        for row in &self.rows {
            let mut v = row.clone();
            while let Some(lead) = v.first_one() {
                match &pivots[lead] {
                    Some(p) => v.xor_assign(p),
                    None => {
                        pivots[lead] = Some(v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Reduced row echelon form of the row space.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }

    /// Basis of `{x : M x = 0}`, returned in reduced row echelon form.
    pub fn kernel_basis(&self) -> F2Matrix {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        let basis: Vec<BitVector> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::from_indices(self.cols, [free]);
                for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect();
        let kernel = F2Matrix {
            cols: self.cols,
            rows: basis,
        };
        kernel.echelon().into_matrix()
    }
}

/// A row space in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if out.get(c) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols);
        self.reduce(v).is_zero()
    }

    pub fn into_matrix(self) -> F2Matrix {
        F2Matrix {
            cols: self.cols,
            rows: self.rows,
        }
    }
}

/// A subgroup of `Z₂^m`, held as the `F₂`-row space of its generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    m: usize,
    generators: F2Matrix,
    basis: Echelon,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.basis == other.basis
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn new(m: usize, generators: Vec<BitVector>) -> Result<Self> {
        if m > MAX_VERTICES as usize {
            return Err(Error::TooManyVertices {
                what: "subgroup",
                m,
                cap: MAX_VERTICES as usize,
            });
        }
        if let Some(g) = generators.iter().find(|g| g.len() != m) {
            return Err(Error::AmbientMismatch {
                expected: m,
                found: g.len(),
            });
        }
        let generators = F2Matrix::from_rows(m, generators);
        let basis = generators.echelon();
        Ok(Subgroup { m, generators, basis })
    }

    pub fn parse(m: usize, generators: &[&str]) -> Result<Self> {
        let rows = generators
            .iter()
            .map(|g| g.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, rows)
    }

    pub fn trivial(m: usize) -> Self {
        Self::new(m, Vec::new()).expect("valid")
    }

    pub fn full(m: usize) -> Self {
        Self::coordinate(m, VertexSet::full(m))
    }

    /// `Z₂^I`: elements supported on `subset`.
    pub fn coordinate(m: usize, subset: VertexSet) -> Self {
        let gens = subset
            .iter()
            .filter(|&v| v as usize <= m)
            .map(|v| BitVector::from_indices(m, [v as usize - 1]))
            .collect();
        Self::new(m, gens).expect("valid")
    }

    /// `ker ρ` for a homomorphism `ρ: Z₂^m → Z₂^n` given as an `n × m` matrix.
    pub fn kernel_of(rho: &F2Matrix) -> Result<Self> {
        Self::new(rho.ncols(), rho.kernel_basis().into_rows())
    }

    pub fn ambient_rank(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[BitVector] {
        self.generators.rows()
    }

    pub fn basis(&self) -> &[BitVector] {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// `m − rank`.
    pub fn corank(&self) -> usize {
        self.m - self.rank()
    }

    /// Support of the coordinate hull: coordinates on which some element is nonzero.
    pub fn hull(&self) -> VertexSet {
        self.basis
            .rows()
            .iter()
            .fold(VertexSet::EMPTY, |acc, g| acc.union(g.support()))
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.m && self.basis.contains(v)
    }

    /// Every element, as sums of basis subsets. Only sensible for small rank.
    pub fn elements(&self) -> Vec<BitVector> {
        let rank = self.rank();
        assert!(rank < 24, "refusing to list 2^{rank} elements");
        (0u32..1 << rank)
            .map(|mask| {
                let mut v = BitVector::zeros(self.m);
                for (k, row) in self.basis.rows().iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        v.xor_assign(row);
                    }
                }
                v
            })
            .collect()
    }

    pub fn to_json(&self) -> SubgroupJson {
        SubgroupJson {
            m: self.m,
            generators: self.generators.rows().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(json: &SubgroupJson) -> Result<Self> {
        let gens: Vec<&str> = json.generators.iter().map(String::as_str).collect();
        Self::parse(json.m, &gens)
    }
}

/// Wire form of a subgroup: `{"m": 4, "generators": ["0110"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub m: usize,
    pub generators: Vec<String>,
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subgroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SubgroupJson::deserialize(deserializer)?;
        Subgroup::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[&str]) -> F2Matrix {
        F2Matrix::parse(cols, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(3, &["110", "011", "101"]).rank(), 2);
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(m(3, &["000", "000"]).rank(), 0);
        assert_eq!(F2Matrix::new(5).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(m(2, &["11"]).kernel_basis(), m(2, &["11"]));
        assert_eq!(F2Matrix::identity(2).kernel_basis().nrows(), 0);

        let a = m(3, &["111"]);
        let k = a.kernel_basis();
        assert_eq!(k.nrows(), 2);
        for row in k.rows() {
            assert!(a.mul_vec(row).is_zero());
        }
        assert_eq!(k, m(3, &["101", "011"]));
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 130;
        let mut a = F2Matrix::new(n);
        a.push_row(BitVector::from_indices(n, [0, 64, 129]));
        a.push_row(BitVector::from_indices(n, [64, 128]));
        a.push_row(BitVector::from_indices(n, [0, 128, 129]));
        assert_eq!(a.rank(), 2);
        assert_eq!(a.kernel_basis().nrows(), n - 2);
    }

    #[test]
    fn hull_examples() {
        let a = Subgroup::parse(3, &["110", "011"]).unwrap();
        assert_eq!(a.hull(), VertexSet::from_vertices([1, 2, 3]));
        assert_eq!(Subgroup::trivial(3).hull(), VertexSet::EMPTY);
        assert_eq!(
            Subgroup::parse(3, &["101"]).unwrap().hull(),
            VertexSet::from_vertices([1, 3])
        );
    }

    #[test]
    fn corank_examples() {
        assert_eq!(Subgroup::trivial(4).corank(), 4);
        assert_eq!(Subgroup::full(4).corank(), 0);
        assert_eq!(Subgroup::parse(2, &["11"]).unwrap().corank(), 1);
    }

    #[test]
    fn alternating_subgroup_is_kernel_of_sign() {
        let sign = m(3, &["111"]);
        let even = Subgroup::kernel_of(&sign).unwrap();
        assert_eq!(even.rank(), 2);
        for e in even.elements() {
            assert_eq!(e.count_ones() % 2, 0);
        }
    }

    #[test]
    fn subgroup_rejects_wrong_lengths() {
        assert!(Subgroup::parse(3, &["10"]).is_err());
        assert!(Subgroup::parse(3, &["1a1"]).is_err());
    }

    #[test]
    fn subgroup_json_uses_bit_strings() {
        let a = Subgroup::parse(4, &["0110"]).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"m":4,"generators":["0110"]}"#);
        assert_eq!(a.hull(), VertexSet::from_vertices([2, 3]));
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..80, 0usize..12).prop_flat_map(|(cols, nrows)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), nrows).prop_map(move |rows| {
                F2Matrix::from_rows(
                    cols,
                    rows.into_iter()
                        .map(|r| {
                            BitVector::from_indices(cols, r.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
                        })
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let rank = a.rank();
            let kernel = a.kernel_basis();
            prop_assert_eq!(rank, a.echelon().rank());
            prop_assert_eq!(rank + kernel.nrows(), a.ncols());
            prop_assert_eq!(kernel.rank(), kernel.nrows());
            for k in kernel.rows() {
                for r in a.rows() {
                    prop_assert!(!r.dot(k));
                }
            }
            prop_assert_eq!(a.transpose().rank(), rank);
        }

        #[test]
        fn hull_is_minimal_and_idempotent(gens in proptest::collection::vec(0u32..64, 0..4)) {
            let m = 6;
            let rows = gens.iter().map(|&g| BitVector::from_vertex_set(m, VertexSet::from_bits(g))).collect();
            let a = Subgroup::new(m, rows).unwrap();
            let hull = a.hull();
            let elements = a.elements();
            for e in &elements {
                prop_assert!(e.support().is_subset(hull));
            }
            for v in hull.iter() {
                prop_assert!(elements.iter().any(|e| e.support().contains(v)));
            }
            prop_assert_eq!(Subgroup::coordinate(m, hull).hull(), hull);
        }
    }
}
