//! Binary vectors and binary linear codes.
//!
//! Vectors are packed into 64-bit words; coordinate `i` (1-based at the code
//! level) lives in bit `(i - 1) % 64` of word `(i - 1) / 64`. Codes are kept
//! as a generator matrix in reduced row echelon form, which is canonical for
//! the subspace, so two codes are equal exactly when their bases are equal.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A vector of `F_2^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfVector {
    len: usize,
    words: Vec<u64>,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

impl GfVector {
    pub fn zeros(len: usize) -> Self {
        GfVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from 0-based indices of its set coordinates.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `word` (bit 0 is coordinate 1).
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        GfVector {
            len,
            words: vec![word & mask],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit `i`, 0-based.
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over `F_2`.
    pub fn dot(&self, other: &GfVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn xor_assign(&mut self, other: &GfVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// 0-based indices of the nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// The vector with 0-based coordinate `i` deleted.
    pub fn delete(&self, i: usize) -> GfVector {
        let mut out = GfVector::zeros(self.len - 1);
        let mut j = 0;
        for k in 0..self.len {
            if k != i {
                out.set(j, self.get(k));
                j += 1;
            }
        }
        out
    }

    /// Restriction to the given 0-based coordinates, in the given order.
    pub fn restrict(&self, coords: &[usize]) -> GfVector {
        GfVector::from_support(
            coords.len(),
            coords.iter().enumerate().filter(|(_, &c)| self.get(c)).map(|(j, _)| j),
        )
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Display for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GfVector({self})")
    }
}

impl FromStr for GfVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character `{other}` in binary vector"))),
            })
            .collect::<Result<_>>()?;
        Ok(GfVector::from_support(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        ))
    }
}

/// Classification flags of a binary code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeClass {
    pub is_even: bool,
    pub is_doubly_even: bool,
    pub is_self_dual: bool,
    pub is_type2: bool,
}

impl CodeClass {
    /// Type I: self-dual and even but not doubly-even.
    pub fn is_type1(&self) -> bool {
        self.is_self_dual && self.is_even && !self.is_doubly_even
    }
}

/// A binary linear code of length `n`, stored as its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    n: usize,
    basis: Vec<GfVector>,
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode[{}, {}]", self.n, self.dim())?;
        f.debug_list().entries(self.basis.iter().map(|v| v.to_string())).finish()
    }
}

/// Row-reduces a list of generators into a code. The rows must share one length `n >= 1`.
pub fn rref(generators: &[GfVector]) -> Result<BinaryCode> {
    let n = generators
        .first()
        .map(|g| g.len())
        .ok_or_else(|| Error::InvalidInput("rref needs at least one row to fix the length".into()))?;
    BinaryCode::new(n, generators.to_vec())
}

impl BinaryCode {
    /// Builds the code spanned by `rows`; every row must have length `n`.
    pub fn new(n: usize, rows: Vec<GfVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("code length must be at least 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "generator row of length {} in a code of length {n}",
                bad.len()
            )));
        }
        let mut rows: Vec<GfVector> = rows.into_iter().filter(|r| !r.is_zero()).collect();
        let mut basis: Vec<GfVector> = Vec::new();
        let mut col = 0;
        while col < n && !rows.is_empty() {
            if let Some(p) = rows.iter().position(|r| r.get(col)) {
                let pivot = rows.swap_remove(p);
                for r in rows.iter_mut().chain(basis.iter_mut()) {
                    if r.get(col) {
                        r.xor_assign(&pivot);
                    }
                }
                rows.retain(|r| !r.is_zero());
                basis.push(pivot);
            }
            col += 1;
        }
        Ok(BinaryCode { n, basis })
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero(n: usize) -> Self {
        BinaryCode { n, basis: Vec::new() }
    }

    /// The whole space `F_2^n`.
    pub fn full(n: usize) -> Self {
        let rows = (0..n).map(|i| GfVector::from_support(n, [i])).collect();
        BinaryCode::new(n, rows).expect("unit vectors have length n")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical (reduced row echelon) basis.
    pub fn basis(&self) -> &[GfVector] {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.first_one().expect("basis rows are nonzero")).collect()
    }

    /// All `2^k` codewords in Gray-code order of the message vectors.
    pub fn codewords(&self) -> Vec<GfVector> {
        let k = self.dim();
        assert!(k < usize::BITS as usize - 1, "code dimension {k} too large to list");
        let mut out = Vec::with_capacity(1usize << k);
        let mut cur = GfVector::zeros(self.n);
        out.push(cur.clone());
        for i in 1..(1usize << k) {
            cur.xor_assign(&self.basis[i.trailing_zeros() as usize]);
            out.push(cur.clone());
        }
        out
    }

    pub fn contains(&self, v: &GfVector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut r = v.clone();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r.is_zero()
    }

    /// The dual code `{v : u.v = 0 for all u in C}`.
    pub fn dual(&self) -> BinaryCode {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = GfVector::zeros(self.n);
                v.set(f, true);
                for (row, &p) in self.basis.iter().zip(&pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BinaryCode::new(self.n, rows).expect("dual rows have length n")
    }

    /// Weight distribution `A_0..A_n` by exhaustive enumeration.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.n + 1];
        for c in self.codewords() {
            dist[c.weight()] += 1;
        }
        dist
    }

    /// Minimum nonzero weight, or `None` for the zero code.
    pub fn minimum_weight(&self) -> Option<usize> {
        self.weight_distribution()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &a)| a > 0)
            .map(|(w, _)| w)
    }

    pub fn classify(&self) -> CodeClass {
        let mut is_even = true;
        let mut is_doubly_even = true;
        for c in self.codewords() {
            let w = c.weight();
            is_even &= w % 2 == 0;
            is_doubly_even &= w % 4 == 0;
        }
        let is_self_dual = 2 * self.dim() == self.n && *self == self.dual();
        CodeClass {
            is_even,
            is_doubly_even,
            is_self_dual,
            is_type2: is_self_dual && is_doubly_even,
        }
    }

    fn check_coord(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange {
                what: "coordinate",
                value: i,
                range: format!("1..={}", self.n),
            });
        }
        Ok(i - 1)
    }

    /// Deletes coordinate `i` (1-based) from every codeword.
    pub fn puncture(&self, i: usize) -> Result<BinaryCode> {
        let c = self.check_coord(i)?;
        if self.n == 1 {
            return Err(Error::InvalidInput("cannot puncture a code of length 1".into()));
        }
        BinaryCode::new(self.n - 1, self.basis.iter().map(|r| r.delete(c)).collect())
    }

    /// Keeps the codewords vanishing at coordinate `i` (1-based), then deletes it.
    pub fn shorten(&self, i: usize) -> Result<BinaryCode> {
        let c = self.check_coord(i)?;
        if self.n == 1 {
            return Err(Error::InvalidInput("cannot shorten a code of length 1".into()));
        }
        let mut rows: Vec<GfVector> = Vec::new();
        let mut carrier: Option<GfVector> = None;
        for r in &self.basis {
            if r.get(c) {
                match &carrier {
                    None => carrier = Some(r.clone()),
                    Some(k) => {
                        let mut s = r.clone();
                        s.xor_assign(k);
                        rows.push(s);
                    }
                }
            } else {
                rows.push(r.clone());
            }
        }
        BinaryCode::new(self.n - 1, rows.iter().map(|r| r.delete(c)).collect())
    }

    /// Codewords whose coordinate `i` (1-based) equals `a`, punctured at `i`.
    /// For `a = 1` this is a coset, not a subcode, hence a plain list.
    pub fn slice_at(&self, i: usize, a: bool) -> Result<Vec<GfVector>> {
        let c = self.check_coord(i)?;
        if self.n == 1 {
            return Err(Error::InvalidInput("cannot slice a code of length 1".into()));
        }
        Ok(self
            .codewords()
            .into_iter()
            .filter(|u| u.get(c) == a)
            .map(|u| u.delete(c))
            .collect())
    }

    /// Whether every puncture `C - i` yields the same code.
    pub fn has_unique_punctures(&self) -> bool {
        if self.n < 2 {
            return true;
        }
        let first = self.puncture(1).expect("n >= 2");
        (2..=self.n).all(|i| self.puncture(i).expect("in range") == first)
    }
}

/// Generator rows of `d_n^+`: blocks of four ones shifted by two, plus `1010..10`.
pub fn d_plus(n: usize) -> Result<BinaryCode> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("d_plus needs an even length n >= 4, got {n}")));
    }
    let mut rows: Vec<GfVector> = (0..=(n - 4) / 2)
        .map(|j| GfVector::from_support(n, 2 * j..2 * j + 4))
        .collect();
    rows.push(GfVector::from_support(n, (0..n).step_by(2)));
    BinaryCode::new(n, rows)
}

/// The extended Golay code as `[I_12 | J - A]`, `A` the icosahedron adjacency matrix.
pub fn golay24() -> BinaryCode {
    let mut adj = [[false; 12]; 12];
    let mut edge = |a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
    };
    // vertex 0 on top, rings 1..=5 and 6..=10, vertex 11 at the bottom
    for i in 0..5 {
        let (u, un) = (1 + i, 1 + (i + 1) % 5);
        let (l, ln) = (6 + i, 6 + (i + 1) % 5);
        edge(0, u);
        edge(u, un);
        edge(u, l);
        edge(u, ln);
        edge(l, ln);
        edge(l, 11);
    }
    let rows = (0..12)
        .map(|i| {
            GfVector::from_support(
                24,
                core::iter::once(i).chain((0..12).filter(|&j| !adj[i][j]).map(|j| 12 + j)),
            )
        })
        .collect();
    BinaryCode::new(24, rows).expect("rows have length 24")
}

const P24_ROWS: [&str; 12] = [
    "100101010101010101010110",
    "010101010101000000000011",
    "001100000000010101010101",
    "000011000000010101010101",
    "000000110000010101010101",
    "000000001100010101010101",
    "000000000011010101010101",
    "000000000000110000000011",
    "000000000000001100000011",
    "000000000000000011000011",
    "000000000000000000110011",
    "000000000000000000001111",
];

/// The Type II code `p_24` from its printed generator matrix.
pub fn p24() -> BinaryCode {
    let rows = P24_ROWS.iter().map(|r| r.parse().expect("fixture row")).collect();
    BinaryCode::new(24, rows).expect("rows have length 24")
}

/// Resolves a built-in code name: `d_plus(n)` (also `d<n>+`), `g24`, `p24`.
pub fn builtin(name: &str) -> Result<BinaryCode> {
    let name = name.trim();
    match name {
        "g24" => return Ok(golay24()),
        "p24" => return Ok(p24()),
        _ => {}
    }
    let n_str = name
        .strip_prefix("d_plus(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| name.strip_prefix('d').and_then(|r| r.strip_suffix('+')));
    match n_str.map(|s| s.trim().parse::<usize>()) {
        Some(Ok(n)) => d_plus(n),
        _ => Err(Error::UnknownCode(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn v(s: &str) -> GfVector {
        s.parse().unwrap()
    }

    fn span(rows: &[GfVector], n: usize) -> BTreeSet<GfVector> {
        // brute force: every subset sum of the rows
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << rows.len()) {
            let mut acc = GfVector::zeros(n);
            for (j, r) in rows.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    acc.xor_assign(r);
                }
            }
            out.insert(acc);
        }
        out
    }

    #[test]
    fn rref_small_example() {
        let rows = [v("1100"), v("0110"), v("1010")];
        let c = rref(&rows).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.basis(), &[v("1010"), v("0110")]);
        assert_eq!(span(c.basis(), 4), span(&rows, 4));
    }

    #[test]
    fn rref_zero_rows_vanish() {
        let c = rref(&[v("0000")]).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(c.codewords(), alloc::vec![v("0000")]);
    }

    #[test]
    fn rref_rejects_ragged_rows() {
        assert!(matches!(rref(&[v("01"), v("011")]), Err(Error::InvalidInput(_))));
        assert!(rref(&[]).is_err());
    }

    #[test]
    fn d8_plus_is_type2() {
        let c = d_plus(8).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.dual(), c);
        assert!(c.classify().is_type2);
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        assert_eq!(BinaryCode::full(5).dual(), BinaryCode::zero(5));
        assert_eq!(BinaryCode::zero(5).dual(), BinaryCode::full(5));
    }

    #[test]
    fn repetition_code_of_length_two_is_type1() {
        let c = rref(&[v("11")]).unwrap();
        // enumerate F_2^2 and keep the vectors orthogonal to 11
        let dual: BTreeSet<GfVector> = ["00", "01", "10", "11"]
            .iter()
            .map(|s| v(s))
            .filter(|x| !x.dot(&v("11")))
            .collect();
        assert_eq!(c.dual().codewords().into_iter().collect::<BTreeSet<_>>(), dual);
        let cls = c.classify();
        assert!(cls.is_self_dual && cls.is_even && !cls.is_doubly_even && cls.is_type1());
    }

    #[test]
    fn zero_code_is_not_self_dual() {
        assert!(!BinaryCode::zero(4).classify().is_self_dual);
    }

    #[test]
    fn puncture_shorten_slice() {
        let rep3 = rref(&[v("111")]).unwrap();
        assert_eq!(rep3.puncture(1).unwrap(), rref(&[v("11")]).unwrap());
        let full2 = BinaryCode::full(2);
        assert_eq!(full2.shorten(2).unwrap(), BinaryCode::full(1));
        assert!(rep3.puncture(0).is_err());
        assert!(rep3.puncture(4).is_err());

        let d8 = d_plus(8).unwrap();
        let mut a: Vec<GfVector> = d8.slice_at(1, false).unwrap();
        a.extend(d8.slice_at(1, true).unwrap());
        a.sort();
        let mut b: Vec<GfVector> = d8.codewords().iter().map(|u| u.delete(0)).collect();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn builtins() {
        let g = builtin("g24").unwrap();
        assert_eq!((g.len(), g.dim()), (24, 12));
        let dist = g.weight_distribution();
        let nonzero: Vec<(usize, u64)> =
            dist.iter().enumerate().filter(|(_, &a)| a > 0).map(|(w, &a)| (w, a)).collect();
        assert_eq!(nonzero, alloc::vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
        assert_eq!(g.minimum_weight(), Some(8));
        assert!(g.classify().is_type2);

        let p = builtin("p24").unwrap();
        assert_eq!((p.len(), p.dim()), (24, 12));
        assert!(p.classify().is_type2);

        assert_eq!(builtin("d_plus(8)").unwrap(), builtin("d8+").unwrap());
        for n in [8, 16, 24] {
            let d = builtin(&format!("d_plus({n})")).unwrap();
            assert_eq!(d.dim(), n / 2);
            assert!(d.classify().is_type2, "d{n}+");
        }
        assert!(matches!(builtin("h7"), Err(Error::UnknownCode(_))));
        assert!(builtin("d_plus(7)").is_err());
        assert!(builtin("d_plus(2)").is_err());
    }

    #[test]
    fn long_vectors_work() {
        let n = 1000;
        let a = GfVector::from_support(n, [0, 63, 64, 999]);
        let b = GfVector::from_support(n, [63, 999, 500]);
        assert_eq!(a.weight(), 4);
        assert!(!a.dot(&b));
        let c = BinaryCode::new(n, alloc::vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.dual().dim(), n - 2);
        assert!(c.dual().contains(&GfVector::from_support(n, [0, 64])));
    }

    #[test]
    fn unique_punctures() {
        assert!(rref(&[v("11111")]).unwrap().has_unique_punctures());
        assert!(BinaryCode::full(4).has_unique_punctures());
        assert!(!rref(&[v("1100")]).unwrap().has_unique_punctures());
        // equivalent but not equal as sets
        assert!(!d_plus(8).unwrap().has_unique_punctures());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn code_strategy() -> impl Strategy<Value = BinaryCode> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), 0..6).prop_map(
                move |rows| {
                    let rows = rows
                        .into_iter()
                        .map(|bits| {
                            GfVector::from_support(
                                n,
                                bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                            )
                        })
                        .collect();
                    BinaryCode::new(n, rows).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn weight_matches_naive_loop(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let v = GfVector::from_support(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
            prop_assert_eq!(v.weight(), bits.iter().filter(|&&b| b).count());
        }

        #[test]
        fn dual_is_an_involution(c in code_strategy()) {
            let d = c.dual();
            prop_assert_eq!(d.dim(), c.len() - c.dim());
            for u in c.codewords() {
                for w in d.basis() {
                    prop_assert!(!u.dot(w));
                }
            }
            prop_assert_eq!(d.dual(), c);
        }

        #[test]
        fn rref_idempotent_and_complete(c in code_strategy()) {
            prop_assert_eq!(BinaryCode::new(c.len(), c.basis().to_vec()).unwrap(), c.clone());
            let words = c.codewords();
            prop_assert_eq!(words.len(), 1usize << c.dim());
            let set: alloc::collections::BTreeSet<_> = words.iter().cloned().collect();
            prop_assert_eq!(set.len(), words.len());
        }

        #[test]
        fn puncture_is_union_of_slices(c in code_strategy(), i in 1usize..=10) {
            prop_assume!(c.len() >= 2 && i <= c.len());
            let mut a = c.slice_at(i, false).unwrap();
            a.extend(c.slice_at(i, true).unwrap());
            a.sort();
            let mut b: Vec<GfVector> = c.codewords().iter().map(|u| u.delete(i - 1)).collect();
            b.sort();
            prop_assert_eq!(a, b);
            let p = c.puncture(i).unwrap();
            for u in c.codewords() {
                prop_assert!(p.contains(&u.delete(i - 1)));
            }
        }

        #[test]
        fn doubly_even_weights(c in code_strategy()) {
            if c.classify().is_doubly_even {
                for u in c.codewords() {
                    prop_assert_eq!(u.weight() % 4, 0);
                }
            }
        }
    }
}
