//! Combinatorial designs held by codewords of fixed weight, and their
//! blockwise generalization over a partition of the coordinates.
//!
//! Points are 1-based coordinates. Counting is exhaustive: every t-subset of
//! every block increments a counter indexed by its colex rank, then all
//! counters are compared in lexicographic order of the t-subsets so the
//! reported witness is the lexicographically first mismatch.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::combin::{binomial, binomial_table, colex_rank, compositions, for_each_subset};
use crate::enums::BlockPartition;
use crate::gf2::BinaryCode;

/// Distinct supports of codewords, as sorted lists of 1-based coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

/// Distinct tuples `(K_1, ..., K_l)` with `K_i = supp(u) n X_i`, for codewords of a fixed profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedBlockSystem {
    pub n: usize,
    pub parts: Vec<Vec<usize>>,
    pub profile: Vec<usize>,
    pub members: Vec<Vec<Vec<usize>>>,
}

/// Two t-subsets (tuples of subsets in the generalized case) covered unequally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub first: Vec<Vec<usize>>,
    pub first_count: u64,
    pub other: Vec<Vec<usize>>,
    pub other_count: u64,
}

/// Outcome of a design check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignVerdict {
    pub is_design: bool,
    pub lambda: Option<u64>,
    pub blocks: usize,
    pub witness: Option<Witness>,
    /// `lambda` for every composition `(t_1, ..., t_l)`; a single entry when `l = 1`.
    pub per_composition: Vec<(Vec<usize>, Option<u64>)>,
    pub note: Option<String>,
}

impl DesignVerdict {
    fn trivial(blocks: usize, note: &str) -> Self {
        DesignVerdict {
            is_design: true,
            lambda: Some(0),
            blocks,
            witness: None,
            per_composition: Vec::new(),
            note: Some(note.into()),
        }
    }

    fn rejected(blocks: usize, note: String) -> Self {
        DesignVerdict {
            is_design: false,
            lambda: None,
            blocks,
            witness: None,
            per_composition: Vec::new(),
            note: Some(note),
        }
    }
}

/// Supports of the codewords of weight `k`.
pub fn supports_of_weight(code: &BinaryCode, k: usize) -> BlockSystem {
    let blocks: BTreeSet<Vec<usize>> = code
        .codewords()
        .into_iter()
        .filter(|u| u.weight() == k)
        .map(|u| u.support().into_iter().map(|i| i + 1).collect())
        .collect();
    BlockSystem {
        n: code.len(),
        blocks: blocks.into_iter().collect(),
    }
}

fn profile_of(support: &[usize], owner: &[usize], ell: usize) -> Vec<usize> {
    let mut k = vec![0; ell];
    for &i in support {
        k[owner[i]] += 1;
    }
    k
}

fn owners(partition: &BlockPartition) -> Vec<usize> {
    let mut owner = vec![0; partition.n() + 1];
    for (b, block) in partition.blocks().iter().enumerate() {
        for &i in block {
            owner[i] = b;
        }
    }
    owner
}

fn split_support(support: &[usize], owner: &[usize], ell: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); ell];
    for &i in support {
        parts[owner[i]].push(i);
    }
    parts
}

/// Codewords with `wt_{X_i}(u) = k_i` for all `i`, as tuples of block-wise supports.
pub fn supports_of_profile(code: &BinaryCode, partition: &BlockPartition, k: &[usize]) -> GeneralizedBlockSystem {
    let owner = owners(partition);
    let ell = partition.ell();
    let members: BTreeSet<Vec<Vec<usize>>> = code
        .codewords()
        .into_iter()
        .map(|u| u.support().into_iter().map(|i| i + 1).collect::<Vec<_>>())
        .filter(|s| profile_of(s, &owner, ell) == k)
        .map(|s| split_support(&s, &owner, ell))
        .collect();
    GeneralizedBlockSystem {
        n: code.len(),
        parts: partition.blocks().to_vec(),
        profile: k.to_vec(),
        members: members.into_iter().collect(),
    }
}

/// Counts, for every choice `(T_1, ..., T_l)` with `|T_i| = t_i` and `T_i` in part `i`,
/// the members containing it; indexed mixed-radix by colex ranks.
fn count_choices(parts: &[Vec<usize>], members: &[Vec<Vec<usize>>], ts: &[usize], table: &[Vec<u64>]) -> Vec<u64> {
    let radices: Vec<usize> = parts.iter().zip(ts).map(|(p, &t)| binomial(p.len(), t) as usize).collect();
    let total: usize = radices.iter().product();
    let positions: Vec<BTreeMap<usize, usize>> =
        parts.iter().map(|p| p.iter().enumerate().map(|(j, &i)| (i, j)).collect()).collect();
    let mut counts = vec![0u64; total];
    for m in members {
        let mut ranks: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
        for (b, kb) in m.iter().enumerate() {
            let local: Vec<usize> = kb.iter().map(|i| positions[b][i]).collect();
            let mut rs = Vec::new();
            for_each_subset(&local, ts[b], |s| rs.push(colex_rank(s, table)));
            ranks.push(rs);
        }
        let mut idx = vec![0usize; parts.len()];
        'product: loop {
            let mut flat = 0;
            for b in 0..parts.len() {
                flat = flat * radices[b] + ranks[b][idx[b]];
            }
            counts[flat] += 1;
            for b in (0..parts.len()).rev() {
                idx[b] += 1;
                if idx[b] < ranks[b].len() {
                    continue 'product;
                }
                idx[b] = 0;
            }
            break;
        }
    }
    counts
}

/// Visits every choice `(T_1, ..., T_l)` in lexicographic order with its counter.
fn scan_choices(parts: &[Vec<usize>], ts: &[usize], table: &[Vec<u64>], mut f: impl FnMut(&[Vec<usize>], usize) -> bool) {
    fn rec(
        b: usize,
        parts: &[Vec<usize>],
        ts: &[usize],
        table: &[Vec<u64>],
        cur: &mut Vec<Vec<usize>>,
        flat: usize,
        f: &mut dyn FnMut(&[Vec<usize>], usize) -> bool,
    ) -> bool {
        if b == parts.len() {
            return f(cur, flat);
        }
        let radix = binomial(parts[b].len(), ts[b]) as usize;
        let local: Vec<usize> = (0..parts[b].len()).collect();
        let mut go = true;
        for_each_subset(&local, ts[b], |s| {
            if !go {
                return;
            }
            cur.push(s.iter().map(|&j| parts[b][j]).collect());
            go = rec(b + 1, parts, ts, table, cur, flat * radix + colex_rank(s, table), f);
            cur.pop();
        });
        go
    }
    rec(0, parts, ts, table, &mut Vec::new(), 0, &mut f);
}

/// Checks that every t-subset of `[n]` lies in the same number of blocks.
pub fn is_t_design(system: &BlockSystem, t: usize) -> DesignVerdict {
    let gen = GeneralizedBlockSystem {
        n: system.n,
        parts: vec![(1..=system.n).collect()],
        profile: vec![system.blocks.first().map_or(0, Vec::len)],
        members: system.blocks.iter().map(|b| vec![b.clone()]).collect(),
    };
    if let Some(k) = system.blocks.first().map(Vec::len) {
        if system.blocks.iter().any(|b| b.len() != k) {
            return DesignVerdict::rejected(system.blocks.len(), "blocks have different sizes".into());
        }
    }
    is_generalized_t_design(&gen, t)
}

/// Checks Def. of a generalized t-design: one common `lambda` over every
/// composition `t = t_1 + ... + t_l` with `t_i <= k_i` and every choice of `T_i`.
pub fn is_generalized_t_design(system: &GeneralizedBlockSystem, t: usize) -> DesignVerdict {
    let nb = system.members.len();
    if nb == 0 {
        return DesignVerdict::trivial(0, "no blocks: trivial design with lambda = 0");
    }
    let k = &system.profile;
    if k.iter().sum::<usize>() < t {
        return DesignVerdict::rejected(nb, format!("block size {} is below t = {t}", k.iter().sum::<usize>()));
    }
    let caps: Vec<usize> = k.iter().zip(&system.parts).map(|(&ki, p)| ki.min(p.len())).collect();
    let table = binomial_table(system.parts.iter().map(Vec::len).max().unwrap_or(0));
    let mut verdict = DesignVerdict {
        is_design: true,
        lambda: None,
        blocks: nb,
        witness: None,
        per_composition: Vec::new(),
        note: None,
    };
    let mut reference: Option<(Vec<Vec<usize>>, u64)> = None;
    for ts in compositions(t, &caps) {
        let counts = count_choices(&system.parts, &system.members, &ts, &table);
        let mut local: Option<u64> = None;
        let mut uniform = true;
        scan_choices(&system.parts, &ts, &table, |choice, flat| {
            let c = counts[flat];
            match &reference {
                None => reference = Some((choice.to_vec(), c)),
                Some((first, lam)) if *lam != c && verdict.witness.is_none() => {
                    verdict.witness = Some(Witness {
                        first: first.clone(),
                        first_count: *lam,
                        other: choice.to_vec(),
                        other_count: c,
                    });
                }
                _ => {}
            }
            match local {
                None => local = Some(c),
                Some(l) if l != c => uniform = false,
                _ => {}
            }
            true
        });
        verdict.per_composition.push((ts, if uniform { local } else { None }));
    }
    verdict.is_design = verdict.witness.is_none();
    if verdict.is_design {
        verdict.lambda = reference.map(|(_, l)| l);
        if system.parts.len() == 1 {
            let (v, kk, lam) = (system.parts[0].len(), k[0], verdict.lambda.unwrap_or(0));
            debug_assert_eq!(
                lam as u128 * binomial(v, t) as u128,
                nb as u128 * binomial(kk, t) as u128,
                "lambda C(v,t) = b C(k,t)"
            );
        }
    }
    verdict
}

/// Per-class verdicts of a homogeneity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub t: usize,
    pub holds: bool,
    /// Weight (or profile) of each class with its verdict; classes of size below `t` are skipped.
    pub classes: Vec<(Vec<usize>, DesignVerdict)>,
    pub skipped: Vec<Vec<usize>>,
}

/// Whether the supports of every nonzero weight class form a t-design.
pub fn is_t_homogeneous(code: &BinaryCode, t: usize) -> HomogeneityReport {
    let dist = code.weight_distribution();
    let mut report = HomogeneityReport {
        t,
        holds: true,
        classes: Vec::new(),
        skipped: Vec::new(),
    };
    for (w, &a) in dist.iter().enumerate().skip(1) {
        if a == 0 {
            continue;
        }
        if w < t {
            report.skipped.push(vec![w]);
            continue;
        }
        let v = is_t_design(&supports_of_weight(code, w), t);
        report.holds &= v.is_design;
        report.classes.push((vec![w], v));
    }
    report
}

/// Whether the codewords of every realized nonzero profile form a generalized t-design.
pub fn is_ell_t_homogeneous(code: &BinaryCode, partition: &BlockPartition, t: usize) -> HomogeneityReport {
    let owner = owners(partition);
    let ell = partition.ell();
    let profiles: BTreeSet<Vec<usize>> = code
        .codewords()
        .into_iter()
        .filter(|u| !u.is_zero())
        .map(|u| {
            let s: Vec<usize> = u.support().into_iter().map(|i| i + 1).collect();
            profile_of(&s, &owner, ell)
        })
        .collect();
    let mut report = HomogeneityReport {
        t,
        holds: true,
        classes: Vec::new(),
        skipped: Vec::new(),
    };
    for k in profiles {
        if k.iter().sum::<usize>() < t {
            report.skipped.push(k);
            continue;
        }
        let v = is_generalized_t_design(&supports_of_profile(code, partition, &k), t);
        report.holds &= v.is_design;
        report.classes.push((k, v));
    }
    report
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::gf2::GfVector;
    use proptest::prelude::*;

    fn code() -> impl Strategy<Value = BinaryCode> {
        (2usize..=9).prop_flat_map(|n| {
            proptest::collection::vec(0u64..(1 << n), 1..5).prop_map(move |rows| {
                BinaryCode::new(n, rows.into_iter().map(|r| GfVector::from_u64(n, r)).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn design_monotone_and_divisible(c in code(), t in 1usize..4) {
            for w in 1..=c.len() {
                let b = supports_of_weight(&c, w);
                if b.blocks.is_empty() || w < t {
                    continue;
                }
                let v = is_t_design(&b, t);
                if v.is_design {
                    let lam = v.lambda.unwrap();
                    prop_assert_eq!(lam as u128 * binomial(c.len(), t) as u128, b.blocks.len() as u128 * binomial(w, t) as u128);
                    for s in 0..t {
                        prop_assert!(is_t_design(&b, s).is_design);
                    }
                }
            }
        }

        #[test]
        fn ell_one_agrees_with_plain(c in code(), t in 0usize..4) {
            let part = BlockPartition::single(c.len(), &[]).unwrap();
            prop_assert_eq!(is_t_homogeneous(&c, t).holds, is_ell_t_homogeneous(&c, &part, t).holds);
        }
    }
}
