//! Genus-`g` weight enumerators, Jacobi polynomials and their split
//! refinements, computed by exhaustive enumeration of `C^g`.
//!
//! A tuple `(u_1, ..., u_g)` of codewords is read column by column: column
//! `i` carries the label `a = (u_1[i], ..., u_g[i])`. The enumeration keeps,
//! for every label, the bitmask of columns carrying it; one popcount per
//! (label, region) then gives the exponent of the matching variable.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;

use crate::gf2::{BinaryCode, GfVector};
use crate::mpoly::{Kind, MPoly, Monomial, Var};
use crate::{Error, Rational, Result};

/// Default ceiling on `log2` of the number of enumerated tuples.
pub const DEFAULT_MAX_LOG2_TUPLES: u32 = 26;

/// Knobs of the enumeration engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Refuse enumerations of more than `2^max_log2_tuples` tuples.
    pub max_log2_tuples: u32,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_log2_tuples: DEFAULT_MAX_LOG2_TUPLES,
        }
    }
}

/// A partition `X_1 | ... | X_l` of `[n]` with subsets `T_i` of each block.
/// Coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
    sets: Vec<Vec<usize>>,
}

impl BlockPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>, sets: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.is_empty() || blocks.len() > u16::MAX as usize {
            return Err(Error::InvalidInput("a partition needs at least one block".into()));
        }
        if sets.len() != blocks.len() {
            return Err(Error::InvalidInput(format!(
                "{} blocks but {} coordinate sets",
                blocks.len(),
                sets.len()
            )));
        }
        let mut owner = vec![usize::MAX; n + 1];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidInput(format!("block {} is empty", b + 1)));
            }
            for &i in block {
                if i == 0 || i > n {
                    return Err(Error::OutOfRange {
                        what: "coordinate",
                        value: i,
                        range: format!("1..={n}"),
                    });
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidInput(format!("coordinate {i} lies in two blocks")));
                }
                owner[i] = b;
            }
        }
        if let Some(i) = (1..=n).find(|&i| owner[i] == usize::MAX) {
            return Err(Error::InvalidInput(format!("coordinate {i} lies in no block")));
        }
        for (b, set) in sets.iter().enumerate() {
            let mut seen = vec![false; n + 1];
            for &i in set {
                if i == 0 || i > n || owner[i] != b {
                    return Err(Error::InvalidInput(format!("T_{} is not a subset of X_{}", b + 1, b + 1)));
                }
                if core::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidInput(format!("coordinate {i} repeated in T_{}", b + 1)));
                }
            }
        }
        Ok(BlockPartition { n, blocks, sets })
    }

    /// One block `[n]` with the set `t`.
    pub fn single(n: usize, t: &[usize]) -> Result<Self> {
        Self::new(n, vec![(1..=n).collect()], vec![t.to_vec()])
    }

    /// The same blocks with all `T_i` empty.
    pub fn without_sets(&self) -> Self {
        BlockPartition {
            n: self.n,
            blocks: self.blocks.clone(),
            sets: vec![Vec::new(); self.blocks.len()],
        }
    }

    /// The same blocks with new sets.
    pub fn with_sets(&self, sets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(self.n, self.blocks.clone(), sets)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Block sizes `v_i`.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Set sizes `t_i`.
    pub fn set_sizes(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    /// `T_1 u ... u T_l`, sorted.
    pub fn union_set(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.sets.iter().flatten().copied().collect();
        u.sort_unstable();
        u
    }

    fn regions(&self) -> Vec<Region> {
        let mut out = Vec::new();
        for (b, (block, set)) in self.blocks.iter().zip(&self.sets).enumerate() {
            let inside = GfVector::from_support(self.n, set.iter().map(|i| i - 1));
            let outside = GfVector::from_support(
                self.n,
                block.iter().filter(|i| !set.contains(i)).map(|i| i - 1),
            );
            for (kind, mask) in [(Kind::Y, inside), (Kind::X, outside)] {
                if !mask.is_zero() {
                    out.push(Region {
                        block: b as u16 + 1,
                        kind,
                        mask: mask.words().to_vec(),
                        size: mask.weight() as u32,
                    });
                }
            }
        }
        out
    }
}

/// A set of columns whose label counts become exponents of one variable family.
#[derive(Clone, Debug)]
struct Region {
    block: u16,
    kind: Kind,
    mask: Vec<u64>,
    size: u32,
}

/// Codeword lists flattened into words, one list per genus level.
struct Levels {
    words: usize,
    n: usize,
    lists: Vec<Vec<u64>>,
}

impl Levels {
    fn from_lists(n: usize, lists: &[Vec<GfVector>]) -> Self {
        let words = n.div_ceil(64).max(1);
        let lists = lists
            .iter()
            .map(|l| l.iter().flat_map(|v| v.words().iter().copied()).collect())
            .collect();
        Levels { words, n, lists }
    }

    fn len(&self, level: usize) -> usize {
        self.lists[level].len() / self.words
    }
}

fn check_budget(sizes: &[usize], opts: &EnumOptions) -> Result<()> {
    let mut log2 = 0u32;
    for &s in sizes {
        if s > 1 {
            log2 += usize::BITS - (s - 1).leading_zeros();
        }
    }
    if log2 > opts.max_log2_tuples {
        return Err(Error::Infeasible {
            required: log2,
            limit: opts.max_log2_tuples,
        });
    }
    Ok(())
}

struct Layout {
    g: usize,
    labels: usize,
    bits: u32,
    packed: bool,
}

impl Layout {
    fn new(g: usize, regions: &[Region]) -> Self {
        let labels = 1usize << g;
        let max = regions.iter().map(|r| r.size).max().unwrap_or(0);
        let bits = (u32::BITS - max.leading_zeros()).max(1);
        let slots = regions.len() * labels;
        Layout {
            g,
            labels,
            bits,
            packed: slots as u32 * bits <= 128,
        }
    }

    fn slots(&self, regions: &[Region]) -> usize {
        regions.len() * self.labels
    }

    /// Bit offset of slot `s` in a packed key; slot 0 is the most significant.
    fn shift(&self, slots: usize, s: usize) -> u32 {
        self.bits * (slots - 1 - s) as u32
    }
}

/// Term counts keyed by exponent vectors: packed into `u128` when they fit.
enum Counts {
    Packed(HashMap<u128, u64>),
    Wide(HashMap<Vec<u32>, u64>),
}

/// Refines every label mask by one more codeword: label `a` splits into `2a` (bit 0) and `2a+1` (bit 1).
fn split_masks(masks: &[u64], u: &[u64], count: usize, w: usize, next: &mut [u64]) {
    for idx in 0..count {
        for j in 0..w {
            let m = masks[idx * w + j];
            next[(2 * idx) * w + j] = m & !u[j];
            next[(2 * idx + 1) * w + j] = m & u[j];
        }
    }
}

/// Walks levels `level..target`, calling `f` with the label masks reached at `target`.
fn descend_to(
    target: usize,
    level: usize,
    masks: &[u64],
    levels: &Levels,
    bufs: &mut [Vec<u64>],
    f: &mut impl FnMut(&[u64]),
) {
    if level == target {
        f(masks);
        return;
    }
    let w = levels.words;
    let count = masks.len() / w;
    let (cur, rest) = bufs.split_first_mut().expect("one buffer per level");
    for u in levels.lists[level].chunks_exact(w) {
        split_masks(masks, u, count, w, cur);
        descend_to(target, level + 1, cur, levels, rest, f);
    }
}

/// Last level of a packed enumeration. A leaf key is linear in the counts,
/// and the bit-0 half of each split is the parent count minus the bit-1 half,
/// so one popcount per (parent label, region) suffices.
fn last_level_packed(
    masks: &[u64],
    w: usize,
    list: &[u64],
    regions: &[Region],
    layout: &Layout,
    out: &mut HashMap<u128, u64>,
) {
    let parents = masks.len() / w;
    let slots = layout.slots(regions);
    let mut q: Vec<u64> = Vec::with_capacity(parents * regions.len() * w);
    let mut delta: Vec<u128> = Vec::with_capacity(parents * regions.len());
    let mut base = 0u128;
    for (r, reg) in regions.iter().enumerate() {
        for a in 0..parents {
            let m = &masks[a * w..(a + 1) * w];
            let mut total = 0u32;
            for (x, y) in m.iter().zip(&reg.mask) {
                q.push(x & y);
                total += (x & y).count_ones();
            }
            let s0 = 1u128 << layout.shift(slots, r * layout.labels + 2 * a);
            let s1 = 1u128 << layout.shift(slots, r * layout.labels + 2 * a + 1);
            base = base.wrapping_add((total as u128).wrapping_mul(s0));
            delta.push(s1.wrapping_sub(s0));
        }
    }
    if w == 1 {
        for &u in list {
            let mut key = base;
            for (x, d) in q.iter().zip(&delta) {
                key = key.wrapping_add(((x & u).count_ones() as u128).wrapping_mul(*d));
            }
            *out.entry(key).or_insert(0) += 1;
        }
    } else {
        for u in list.chunks_exact(w) {
            let mut key = base;
            for (qi, d) in q.chunks_exact(w).zip(&delta) {
                let c: u32 = qi.iter().zip(u).map(|(x, y)| (x & y).count_ones()).sum();
                key = key.wrapping_add((c as u128).wrapping_mul(*d));
            }
            *out.entry(key).or_insert(0) += 1;
        }
    }
}

fn leaf_wide(masks: &[u64], w: usize, regions: &[Region], layout: &Layout, out: &mut HashMap<Vec<u32>, u64>) {
    let mut key = Vec::with_capacity(layout.slots(regions));
    for r in regions {
        for a in 0..layout.labels {
            let m = &masks[a * w..(a + 1) * w];
            key.push(m.iter().zip(&r.mask).map(|(x, y)| (x & y).count_ones()).sum());
        }
    }
    *out.entry(key).or_insert(0) += 1;
}

fn full_mask(n: usize, words: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; words];
    let extra = words * 64 - n;
    if extra > 0 {
        m[words - 1] >>= extra;
    }
    m
}

/// Enumerates all tuples whose first codeword is drawn from `first` (a slice of level 0).
fn run_range(levels: &Levels, regions: &[Region], layout: &Layout, first: &[u64]) -> Counts {
    let g = layout.g;
    let w = levels.words;
    let root = full_mask(levels.n, w);
    let mut bufs: Vec<Vec<u64>> = (1..=g).map(|j| vec![0u64; (1 << j) * w]).collect();
    let (b0, rest) = bufs.split_first_mut().expect("g >= 1");
    if layout.packed {
        let mut out = HashMap::new();
        if g == 1 {
            last_level_packed(&root, w, first, regions, layout, &mut out);
        } else {
            let last = &levels.lists[g - 1];
            for u in first.chunks_exact(w) {
                split_masks(&root, u, 1, w, b0);
                descend_to(g - 1, 1, b0, levels, rest, &mut |m| {
                    last_level_packed(m, w, last, regions, layout, &mut out)
                });
            }
        }
        Counts::Packed(out)
    } else {
        let mut out = HashMap::new();
        for u in first.chunks_exact(w) {
            split_masks(&root, u, 1, w, b0);
            descend_to(g, 1, b0, levels, rest, &mut |m| leaf_wide(m, w, regions, layout, &mut out));
        }
        Counts::Wide(out)
    }
}

#[cfg(feature = "std")]
fn merge(a: Counts, b: Counts) -> Counts {
    fn join<K: core::hash::Hash + Eq>(mut a: HashMap<K, u64>, mut b: HashMap<K, u64>) -> HashMap<K, u64> {
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    }
    match (a, b) {
        (Counts::Packed(a), Counts::Packed(b)) => Counts::Packed(join(a, b)),
        (Counts::Wide(a), Counts::Wide(b)) => Counts::Wide(join(a, b)),
        _ => unreachable!("one layout per enumeration"),
    }
}

fn run(levels: &Levels, regions: &[Region], g: usize) -> Counts {
    let layout = Layout::new(g, regions);
    let top = &levels.lists[0];
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        let w = levels.words;
        let threads = rayon::current_num_threads();
        if g >= 2 && threads > 1 {
            let per = (levels.len(0) / (4 * threads)).max(1) * w;
            return top
                .par_chunks(per)
                .map(|chunk| run_range(levels, regions, &layout, chunk))
                .reduce_with(merge)
                .expect("nonempty codeword list");
        }
    }
    run_range(levels, regions, &layout, top)
}

fn to_poly(counts: Counts, regions: &[Region], g: usize) -> MPoly {
    let layout = Layout::new(g, regions);
    let slots = layout.slots(regions);
    let mask = (1u128 << layout.bits) - 1;
    let entries: Vec<(Vec<u32>, u64)> = match counts {
        Counts::Wide(m) => m.into_iter().collect(),
        Counts::Packed(m) => m
            .into_iter()
            .map(|(k, mult)| {
                let exps = (0..slots).map(|s| ((k >> layout.shift(slots, s)) & mask) as u32).collect();
                (exps, mult)
            })
            .collect(),
    };
    let mut p = MPoly::zero();
    for (exps, mult) in entries {
        let pairs = regions.iter().enumerate().flat_map(|(r, reg)| {
            let exps = &exps;
            (0..layout.labels).map(move |a| (Var::new(reg.kind, reg.block, a as u16), exps[r * layout.labels + a]))
        });
        p.add_term(Monomial::from_pairs(pairs), &Rational::from_integer(BigInt::from(mult)));
    }
    p
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > 15 {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            range: "1..=15".into(),
        });
    }
    Ok(())
}

fn enumerate_code(code: &BinaryCode, g: usize, regions: &[Region], opts: &EnumOptions) -> Result<MPoly> {
    check_genus(g)?;
    let words = code.codewords();
    check_budget(&vec![words.len(); g], opts)?;
    let levels = Levels::from_lists(code.len(), &vec![words; g]);
    Ok(to_poly(run(&levels, regions, g), regions, g))
}

/// The split Jacobi polynomial for `partition` (the most general enumerator).
pub fn split_jacobi_with(code: &BinaryCode, partition: &BlockPartition, g: usize, opts: &EnumOptions) -> Result<MPoly> {
    if partition.n() != code.len() {
        return Err(Error::InvalidInput(format!(
            "partition of [{}] for a code of length {}",
            partition.n(),
            code.len()
        )));
    }
    enumerate_code(code, g, &partition.regions(), opts)
}

pub fn split_jacobi(code: &BinaryCode, partition: &BlockPartition, g: usize) -> Result<MPoly> {
    split_jacobi_with(code, partition, g, &EnumOptions::default())
}

/// Split weight enumerator: the split Jacobi polynomial with every `T_i` empty.
pub fn split_weight_enumerator(code: &BinaryCode, partition: &BlockPartition, g: usize) -> Result<MPoly> {
    if partition.sets().iter().any(|s| !s.is_empty()) {
        return Err(Error::InvalidInput("split weight enumerator takes empty sets T_i".into()));
    }
    split_jacobi(code, partition, g)
}

pub fn jacobi_with(code: &BinaryCode, t: &[usize], g: usize, opts: &EnumOptions) -> Result<MPoly> {
    split_jacobi_with(code, &BlockPartition::single(code.len(), t)?, g, opts)
}

/// The genus-`g` Jacobi polynomial attached to `t` (1-based coordinates).
pub fn jacobi(code: &BinaryCode, t: &[usize], g: usize) -> Result<MPoly> {
    jacobi_with(code, t, g, &EnumOptions::default())
}

/// The genus-`g` weight enumerator.
pub fn weight_enumerator(code: &BinaryCode, g: usize) -> Result<MPoly> {
    jacobi(code, &[], g)
}

/// `Z` for codeword slices at coordinate `i`: tuples with `u_j[i] = a_j`, read on the other `n-1` coordinates.
pub fn z_polynomial(code: &BinaryCode, i: usize, a: usize, g: usize) -> Result<MPoly> {
    check_genus(g)?;
    if a >= 1 << g {
        return Err(Error::OutOfRange {
            what: "label",
            value: a,
            range: format!("0..{}", 1usize << g),
        });
    }
    let slices = [code.slice_at(i, false)?, code.slice_at(i, true)?];
    let lists: Vec<Vec<GfVector>> = (0..g).map(|j| slices[(a >> (g - 1 - j)) & 1].clone()).collect();
    check_budget(&lists.iter().map(Vec::len).collect::<Vec<_>>(), &EnumOptions::default())?;
    let n = code.len() - 1;
    let region = Region {
        block: 1,
        kind: Kind::X,
        mask: full_mask(n, n.div_ceil(64).max(1)),
        size: n as u32,
    };
    if lists.iter().any(Vec::is_empty) {
        return Ok(MPoly::zero());
    }
    let levels = Levels::from_lists(n, &lists);
    debug_assert!((0..g).all(|j| levels.len(j) > 0));
    let regions = [region];
    Ok(to_poly(run(&levels, &regions, g), &regions, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{d_plus, golay24, rref};
    use alloc::collections::BTreeMap;
    use alloc::string::ToString;
    use num_traits::One;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn v(s: &str) -> GfVector {
        s.parse().unwrap()
    }

    fn all_ones_value(f: &MPoly) -> Rational {
        let point: BTreeMap<Var, Rational> = f.vars().into_iter().map(|v| (v, Rational::one())).collect();
        f.eval(&point).unwrap()
    }

    /// Straightforward oracle: loop over tuples and columns.
    fn naive(code: &BinaryCode, t: &[usize], g: usize) -> MPoly {
        let words = code.codewords();
        let n = code.len();
        let mut out = MPoly::zero();
        let total = words.len().pow(g as u32);
        for mut idx in 0..total {
            let mut tuple = Vec::new();
            for _ in 0..g {
                tuple.push(&words[idx % words.len()]);
                idx /= words.len();
            }
            let mut pairs = Vec::new();
            for i in 0..n {
                let mut a = 0u16;
                for u in &tuple {
                    a = (a << 1) | u.get(i) as u16;
                }
                let kind = if t.contains(&(i + 1)) { Kind::Y } else { Kind::X };
                pairs.push((Var::new(kind, 1, a), 1));
            }
            out.add_term(Monomial::from_pairs(pairs), &Rational::one());
        }
        out
    }

    #[test]
    fn e8_weight_enumerator() {
        let d8 = d_plus(8).unwrap();
        assert_eq!(weight_enumerator(&d8, 1).unwrap(), p("x0^8 + 14*x0^4*x1^4 + x1^8"));
    }

    #[test]
    fn e8_jacobi_one_coordinate() {
        let d8 = d_plus(8).unwrap();
        let j = jacobi(&d8, &[1], 1).unwrap();
        assert_eq!(j, p("x0^7*y0 + 7*x0^3*x1^4*y0 + 7*x0^4*x1^3*y1 + x1^7*y1"));
    }

    #[test]
    fn golay_weight_enumerator() {
        let w = weight_enumerator(&golay24(), 1).unwrap();
        assert_eq!(w, p("x0^24 + 759*x0^16*x1^8 + 2576*x0^12*x1^12 + 759*x0^8*x1^16 + x1^24"));
    }

    #[test]
    fn zero_code() {
        let z = BinaryCode::zero(5);
        assert_eq!(weight_enumerator(&z, 2).unwrap(), p("x0^5"));
        assert_eq!(z_polynomial(&z, 2, 0, 1).unwrap(), p("x0^4"));
        assert!(z_polynomial(&z, 2, 1, 1).unwrap().is_zero());
    }

    #[test]
    fn matches_naive_oracle() {
        let c = rref(&[v("110100"), v("011010"), v("101001")]).unwrap();
        for g in 1..=2 {
            for t in [vec![], vec![1], vec![2, 5], vec![1, 2, 3, 4, 5, 6]] {
                assert_eq!(jacobi(&c, &t, g).unwrap(), naive(&c, &t, g), "g={g} T={t:?}");
            }
        }
    }

    #[test]
    fn repetition_split() {
        let c = rref(&[v("11")]).unwrap();
        let part = BlockPartition::new(2, vec![vec![1], vec![2]], vec![vec![], vec![]]).unwrap();
        let w = split_weight_enumerator(&c, &part, 1).unwrap();
        assert_eq!(w, p("x1_0*x2_0 + x1_1*x2_1"));
    }

    #[test]
    fn counting_at_all_ones() {
        let d8 = d_plus(8).unwrap();
        for g in 1..=2 {
            let j = jacobi(&d8, &[2, 3, 7], g).unwrap();
            assert_eq!(all_ones_value(&j), Rational::from_integer(BigInt::from(1u64 << (4 * g))));
        }
    }

    #[test]
    fn guard_refuses() {
        let g24 = golay24();
        let err = jacobi_with(&g24, &[], 3, &EnumOptions::default()).unwrap_err();
        assert_eq!(err, Error::Infeasible { required: 36, limit: 26 });
        assert!(jacobi(&g24, &[25], 1).is_err());
        assert!(jacobi(&g24, &[0], 1).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(BlockPartition::new(4, vec![vec![1, 2], vec![2, 3, 4]], vec![vec![], vec![]]).is_err());
        assert!(BlockPartition::new(4, vec![vec![1, 2], vec![3]], vec![vec![], vec![]]).is_err());
        assert!(BlockPartition::new(4, vec![vec![1, 2], vec![3, 4]], vec![vec![3], vec![]]).is_err());
        assert!(BlockPartition::new(4, vec![vec![1, 2], vec![3, 4]], vec![vec![1], vec![4]]).is_ok());
    }

    #[test]
    fn wide_keys_agree_with_packed() {
        // 32 labels over 4 regions at 2 bits each overflows 128 bits
        let c = rref(&[v("1100110"), v("0110011")]).unwrap();
        let part = BlockPartition::new(7, vec![vec![1, 2, 3], vec![4, 5, 6, 7]], vec![vec![1], vec![5, 6]]).unwrap();
        let regions = part.regions();
        assert!(!Layout::new(5, &regions).packed);
        let split = split_jacobi(&c, &part, 5).unwrap();
        let merged = split.rename(|v| Var::new(v.kind, 1, v.label));
        assert_eq!(merged, jacobi(&c, &[1, 5, 6], 5).unwrap());
        assert_eq!(merged, naive(&c, &[1, 5, 6], 5));
        assert!(merged.to_string().contains("y"));
    }
}
