//! MacWilliams-type transforms, polarization operators, and checkers for the
//! identities that tie Jacobi polynomials to weight enumerators.
//!
//! The transforms run as bitwise Hadamard butterflies on dense exponent
//! vectors: for every bit of the label, `x_{a} ↦ x_{a} + x_{a|bit}` and
//! `x_{a|bit} ↦ x_{a} - x_{a|bit}`. Coefficients are scaled to integers first
//! and stay in `i128` when a bound on their growth allows it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combin::{binomial, for_each_subset};
use crate::designs::{is_ell_t_homogeneous, is_t_homogeneous};
use crate::enums::{jacobi, split_jacobi, weight_enumerator, BlockPartition};
use crate::gf2::BinaryCode;
use crate::mpoly::{Kind, MPoly, Monomial, Var};
use crate::{Error, Rational, Result};

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x5eed_1a0b;

/// Genus, number of blocks and block sizes of a split setting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusContext {
    pub g: usize,
    pub block_sizes: Vec<usize>,
}

impl GenusContext {
    pub fn new(g: usize, block_sizes: Vec<usize>) -> Result<Self> {
        if g == 0 || g > 15 {
            return Err(Error::OutOfRange {
                what: "genus",
                value: g,
                range: "1..=15".into(),
            });
        }
        if block_sizes.is_empty() {
            return Err(Error::InvalidInput("at least one block is required".into()));
        }
        Ok(GenusContext { g, block_sizes })
    }

    pub fn ell(&self) -> usize {
        self.block_sizes.len()
    }

    /// Checks that every variable of `p` has a label below `2^g` and a block in `1..=ell`.
    pub fn check(&self, p: &MPoly) -> Result<()> {
        check_vars(p, self.g, self.ell())
    }
}

fn check_vars(p: &MPoly, g: usize, ell: usize) -> Result<()> {
    for v in p.vars() {
        if usize::from(v.label) >= 1 << g {
            return Err(Error::InvalidInput(format!("variable {v} has a label outside genus {g}")));
        }
        if v.block == 0 || usize::from(v.block) > ell {
            return Err(Error::InvalidInput(format!("variable {v} lies outside blocks 1..={ell}")));
        }
    }
    Ok(())
}

trait Coef: Clone + Zero {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn mul_add(&mut self, a: &Self, b: &Self);
}

impl Coef for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("coefficient bound was checked")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn mul_add(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Coef for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn mul_add(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Coefficients of `x0^(e0+e1-i) x1^i` in `(x0 + x1)^e0 (x0 - x1)^e1`.
fn butterfly_row(e0: u32, e1: u32) -> Vec<BigInt> {
    let plus: Vec<BigInt> = (0..=e0).map(|i| BigInt::from(binomial(e0 as usize, i as usize))).collect();
    let minus: Vec<BigInt> = (0..=e1)
        .map(|j| {
            let b = BigInt::from(binomial(e1 as usize, j as usize));
            if j % 2 == 1 {
                -b
            } else {
                b
            }
        })
        .collect();
    let mut out = vec![BigInt::zero(); (e0 + e1 + 1) as usize];
    for (i, p) in plus.iter().enumerate() {
        for (j, m) in minus.iter().enumerate() {
            out[i + j] += p * m;
        }
    }
    out
}

fn butterflies<C: Coef>(mut terms: HashMap<Vec<u32>, C>, pairs: &[(usize, usize)]) -> HashMap<Vec<u32>, C> {
    let mut rows: HashMap<(u32, u32), Vec<C>> = HashMap::new();
    for &(p0, p1) in pairs {
        let mut next: HashMap<Vec<u32>, C> = HashMap::with_capacity(terms.len());
        for (mut exps, c) in terms {
            let (e0, e1) = (exps[p0], exps[p1]);
            if e0 == 0 && e1 == 0 {
                next.entry(exps).or_insert_with(C::zero).mul_add(&c, &C::from_big(&BigInt::one()));
                continue;
            }
            let row = rows
                .entry((e0, e1))
                .or_insert_with(|| butterfly_row(e0, e1).iter().map(C::from_big).collect());
            let e = e0 + e1;
            for (i, k) in row.iter().enumerate() {
                if k.is_zero() {
                    continue;
                }
                exps[p0] = e - i as u32;
                exps[p1] = i as u32;
                next.entry(exps.clone()).or_insert_with(C::zero).mul_add(&c, k);
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    terms
}

/// Applies `v_a ↦ Σ_b (-1)^{a·b} v_b` to every family `(kind, block)` listed, without normalization.
///
/// Variables of other families pass through unchanged.
pub fn hadamard(p: &MPoly, g: usize, families: &[(Kind, u16)]) -> Result<MPoly> {
    if g == 0 || g > 15 {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            range: "1..=15".into(),
        });
    }
    let q = 1usize << g;
    let mut vars: BTreeSet<Var> = p.vars();
    for v in &vars {
        if families.contains(&(v.kind, v.block)) && usize::from(v.label) >= q {
            return Err(Error::InvalidInput(format!("variable {v} has a label outside genus {g}")));
        }
    }
    for &(kind, block) in families {
        for a in 0..q {
            vars.insert(Var::new(kind, block, a as u16));
        }
    }
    let order: Vec<Var> = vars.into_iter().collect();
    let index: BTreeMap<Var, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();

    let mut pairs = Vec::new();
    for &(kind, block) in families {
        for j in 0..g {
            let bit = 1usize << j;
            for a in (0..q).filter(|a| a & bit == 0) {
                pairs.push((
                    index[&Var::new(kind, block, a as u16)],
                    index[&Var::new(kind, block, (a | bit) as u16)],
                ));
            }
        }
    }

    // Integer coefficients over a common denominator.
    let denom = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let mut ints: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(p.len());
    let mut abs_sum = BigInt::zero();
    for (m, c) in p.terms() {
        let mut exps = vec![0u32; order.len()];
        for &(v, e) in m.pairs() {
            exps[index[&v]] = e;
        }
        let k = c.numer() * (&denom / c.denom());
        abs_sum += k.abs();
        ints.push((exps, k));
    }
    // One pass over a bit of a family multiplies the absolute coefficient sum
    // by at most 2^(degree in that family).
    let growth: u64 = families
        .iter()
        .map(|&(kind, block)| {
            let deg = p
                .terms()
                .map(|(m, _)| m.degree_where(|v| v.kind == kind && v.block == block))
                .max()
                .unwrap_or(0);
            g as u64 * u64::from(deg)
        })
        .sum();
    let fits = abs_sum.bits() + growth < 126;

    let out: Vec<(Vec<u32>, BigInt)> = if fits {
        let terms: HashMap<Vec<u32>, i128> = ints.into_iter().map(|(e, c)| (e, i128::from_big(&c))).collect();
        butterflies(terms, &pairs).into_iter().map(|(e, c)| (e, c.to_big())).collect()
    } else {
        butterflies(ints.into_iter().collect(), &pairs).into_iter().collect()
    };

    Ok(MPoly::from_terms(out.into_iter().map(|(exps, c)| {
        let m = Monomial::from_pairs(order.iter().zip(&exps).filter(|(_, &e)| e > 0).map(|(v, &e)| (*v, e)));
        (m, Rational::new(c, denom.clone()))
    })))
}

fn dim_scale(g: usize, k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << (g * k))
}

/// MacWilliams transform of a genus-`g` polynomial of a code of dimension `k`.
///
/// Every `x_a` and `y_a` goes to `Σ_b (-1)^{a·b}` of its family, and the result is
/// divided by `2^{g k}`. Applied to `J_{C,T}` it yields `J_{C^⊥,T}`.
pub fn macwilliams(p: &MPoly, g: usize, k: usize) -> Result<MPoly> {
    if p.vars().iter().any(|v| v.block != 1) {
        return Err(Error::InvalidInput(
            "polynomial uses several blocks; use split_macwilliams".into(),
        ));
    }
    Ok(hadamard(p, g, &[(Kind::Y, 1), (Kind::X, 1)])?.scale(&dim_scale(g, k)))
}

/// Blockwise MacWilliams transform for split polynomials with blocks `1..=ell`.
pub fn split_macwilliams(p: &MPoly, g: usize, ell: usize, k: usize) -> Result<MPoly> {
    if ell == 0 {
        return Err(Error::InvalidInput("at least one block is required".into()));
    }
    check_vars(p, g, ell)?;
    let families: Vec<(Kind, u16)> = (1..=ell as u16)
        .flat_map(|b| [(Kind::Y, b), (Kind::X, b)])
        .collect();
    Ok(hadamard(p, g, &families)?.scale(&dim_scale(g, k)))
}

/// Same transform as [`macwilliams`], computed by generic linear substitution.
pub fn macwilliams_by_substitution(p: &MPoly, g: usize, k: usize) -> Result<MPoly> {
    let q = 1usize << g;
    let mut images: BTreeMap<Var, Vec<(Var, Rational)>> = BTreeMap::new();
    for kind in [Kind::Y, Kind::X] {
        for a in 0..q {
            let form = (0..q)
                .map(|b| {
                    let sign = if (a & b).count_ones() % 2 == 1 { -1 } else { 1 };
                    (Var::new(kind, 1, b as u16), Rational::from_integer(sign.into()))
                })
                .collect();
            images.insert(Var::new(kind, 1, a as u16), form);
        }
    }
    Ok(p.substitute_linear(&images)?.scale(&dim_scale(g, k)))
}

fn polarize_block(p: &MPoly, g: usize, block: u16) -> MPoly {
    let mut out = MPoly::zero();
    for a in 0..(1u16 << g) {
        let d = p.partial(Var::new(Kind::X, block, a));
        if !d.is_zero() {
            out = out.add(&d.mul(&MPoly::var(Var::new(Kind::Y, block, a))));
        }
    }
    out
}

/// The polarization operator `Σ_a y_a ∂/∂x_a` on block 1.
pub fn polarize(p: &MPoly, g: usize) -> MPoly {
    polarize_block(p, g, 1)
}

/// `(1/v_k) Σ_a y_{k,a} ∂/∂x_{k,a}` for block `k` of `ell`.
pub fn polarize_split(p: &MPoly, g: usize, ell: usize, k: usize, v_k: usize) -> Result<MPoly> {
    if k == 0 || k > ell {
        return Err(Error::OutOfRange {
            what: "block index",
            value: k,
            range: format!("1..={ell}"),
        });
    }
    if v_k == 0 {
        return Err(Error::DivisionByZero);
    }
    let s = Rational::new(BigInt::one(), BigInt::from(v_k));
    Ok(polarize_block(p, g, k as u16).scale(&s))
}

fn falling(n: usize, t: usize) -> BigInt {
    (0..t).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

/// A named left/right pair that disagreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub case: String,
    pub left: String,
    pub right: String,
}

/// Result of an identity check.
///
/// `hypothesis` records whether the premises of the identity were verified;
/// `verdict` is the outcome of the exact comparison regardless.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub theorem: String,
    pub code: String,
    pub parameters: Vec<(String, String)>,
    pub hypothesis: bool,
    pub verdict: bool,
    pub witness: Option<Mismatch>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(theorem: &str, code: &str, parameters: Vec<(&str, String)>) -> Self {
        CheckReport {
            theorem: theorem.into(),
            code: code.into(),
            parameters: parameters.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            hypothesis: true,
            verdict: true,
            witness: None,
            notes: Vec::new(),
        }
    }

    fn compare(&mut self, case: impl Into<String>, left: &MPoly, right: &MPoly) {
        if left != right {
            if self.witness.is_none() {
                self.witness = Some(Mismatch {
                    case: case.into(),
                    left: left.to_string(),
                    right: right.to_string(),
                });
            }
            self.verdict = false;
        }
    }
}

/// How coordinate sets are chosen by [`check_t_independence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SampleMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// Outcome of a T-independence check: the report and, on success, `J_{C,t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Independence {
    pub report: CheckReport,
    pub common: Option<MPoly>,
}

/// Whether `J_{C,T}` is the same for every (or every sampled) `T` with `|T| = t`.
pub fn check_t_independence(code: &BinaryCode, name: &str, t: usize, g: usize, mode: SampleMode) -> Result<Independence> {
    let n = code.len();
    if t > n {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: format!("0..={n}"),
        });
    }
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mode_desc = match mode {
        SampleMode::Exhaustive => {
            let items: Vec<usize> = (1..=n).collect();
            for_each_subset(&items, t, |s| sets.push(s.to_vec()));
            "exhaustive".to_string()
        }
        SampleMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let mut s: Vec<usize> = rand::seq::index::sample(&mut rng, n, t).into_iter().map(|i| i + 1).collect();
                s.sort_unstable();
                sets.push(s);
            }
            format!("sampled {count} (seed {seed})")
        }
    };
    let mut report = CheckReport::new(
        "t-independence",
        name,
        vec![("t", t.to_string()), ("g", g.to_string()), ("mode", mode_desc)],
    );
    let homogeneous = is_t_homogeneous(code, t);
    report.hypothesis = homogeneous.holds;
    let mut first: Option<(Vec<usize>, MPoly)> = None;
    for s in &sets {
        let j = jacobi(code, s, g)?;
        match &first {
            None => first = Some((s.clone(), j)),
            Some((s0, j0)) => report.compare(format!("T={s0:?} vs T={s:?}"), j0, &j),
        }
    }
    report.notes.push(format!("{} sets compared", sets.len()));
    let common = if report.verdict { first.map(|(_, j)| j) } else { None };
    Ok(Independence { report, common })
}

/// Compares `J_{C,[s]}` with `A^s W_C / (n (n-1) ... (n-s+1))` for `s = 0..=t`.
pub fn check_polarization_chain(code: &BinaryCode, name: &str, t: usize, g: usize) -> Result<CheckReport> {
    let n = code.len();
    if t > n {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            range: format!("0..={n}"),
        });
    }
    let mut report = CheckReport::new("polarization-chain", name, vec![("t", t.to_string()), ("g", g.to_string())]);
    report.hypothesis = is_t_homogeneous(code, t).holds;
    let mut pol = weight_enumerator(code, g)?;
    for s in 0..=t {
        if s > 0 {
            pol = polarize(&pol, g);
        }
        let set: Vec<usize> = (1..=s).collect();
        let left = jacobi(code, &set, g)?;
        let right = pol.scale(&Rational::new(BigInt::one(), falling(n, s)));
        report.compare(format!("s={s}"), &left, &right);
    }
    Ok(report)
}

/// Outcome of the split chain check under both normalizations.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitChain {
    /// `A^{t_l}(l) ... A^{t_1}(1) W_split` with the operator's own `1/v_k` per application.
    pub literal: CheckReport,
    /// The same product rescaled so block `k` carries `1/(v_k (v_k - 1) ... (v_k - t_k + 1))`.
    pub falling: CheckReport,
}

/// Compares the split Jacobi polynomial of `partition` (whose sets give `(t_1, ..., t_l)`)
/// with iterated block polarizations of the split weight enumerator.
pub fn check_split_chain(code: &BinaryCode, name: &str, partition: &BlockPartition, g: usize) -> Result<SplitChain> {
    let sizes = partition.block_sizes();
    let ts = partition.set_sizes();
    let ell = partition.ell();
    let t: usize = ts.iter().sum();
    let params = vec![
        ("g", g.to_string()),
        ("blocks", format!("{:?}", partition.blocks())),
        ("sets", format!("{:?}", partition.sets())),
    ];
    let homogeneous = is_ell_t_homogeneous(code, &partition.without_sets(), t).holds;
    let light = code.codewords().iter().any(|u| !u.is_zero() && u.weight() < t);

    let mut pol = split_jacobi(code, &partition.without_sets(), g)?;
    for (k, (&tk, &vk)) in ts.iter().zip(&sizes).enumerate() {
        for _ in 0..tk {
            pol = polarize_split(&pol, g, ell, k + 1, vk)?;
        }
    }
    let target = split_jacobi(code, partition, g)?;

    let mut literal = CheckReport::new("split-polarization-chain", name, params.clone());
    literal.hypothesis = homogeneous && !light;
    literal.compare("literal normalization", &target, &pol);

    // (1/v)^t -> 1/(v)_t
    let mut ratio = Rational::one();
    for (&tk, &vk) in ts.iter().zip(&sizes) {
        ratio *= Rational::new(BigInt::from(vk).pow(tk as u32), falling(vk, tk));
    }
    let rescaled = pol.scale(&ratio);
    let mut fall = CheckReport::new("split-polarization-chain", name, params);
    fall.hypothesis = literal.hypothesis;
    fall.compare("falling-factorial normalization", &target, &rescaled);
    for r in [&mut literal, &mut fall] {
        if !homogeneous {
            r.notes.push(format!("code is not ell-th {t}-homogeneous for this partition"));
        }
        if light {
            r.notes.push(format!("code has a nonzero codeword of weight below {t}"));
        }
    }
    Ok(SplitChain { literal, falling: fall })
}

/// Compares `W_{C-i}` with `(1/n) Σ_a ∂W_C/∂x_a` for every coordinate `i`.
///
/// The hypothesis is that all punctured codes coincide as sets and that
/// puncturing is injective (no codeword of weight 1), so `C-i` has `|C|` words.
pub fn check_puncture_identity(code: &BinaryCode, name: &str, g: usize) -> Result<CheckReport> {
    let n = code.len();
    if n < 2 {
        return Err(Error::InvalidInput("puncturing needs length at least 2".into()));
    }
    let mut report = CheckReport::new("puncture-derivative", name, vec![("g", g.to_string())]);
    report.hypothesis = code.has_unique_punctures() && code.minimum_weight().is_none_or(|d| d >= 2);
    let w = weight_enumerator(code, g)?;
    let mut right = MPoly::zero();
    for a in 0..(1u16 << g) {
        right = right.add(&w.partial(Var::x(a)));
    }
    let right = right.scale(&Rational::new(BigInt::one(), BigInt::from(n)));
    let mut punctured = Vec::with_capacity(n);
    for i in 1..=n {
        let left = weight_enumerator(&code.puncture(i)?, g)?;
        report.compare(format!("i={i}"), &left, &right);
        punctured.push(left);
    }
    let same = punctured.windows(2).all(|w| w[0] == w[1]);
    report.notes.push(format!("punctured enumerators agree for all i: {same}"));
    Ok(report)
}
