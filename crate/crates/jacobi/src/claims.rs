//! Reproduction harness: one check per published claim.
//!
//! Each check recomputes its quantities from scratch (through the provider,
//! so a disk cache can be used) and compares them with the published values
//! by exact equality.

use std::cell::RefCell;
use std::time::Instant;

use clap::ValueEnum;
use jacobi_core::designs::{is_ell_t_homogeneous, is_t_design, supports_of_weight};
use jacobi_core::enums::{jacobi, split_jacobi, BlockPartition};
use jacobi_core::gf2::{d_plus, golay24, BinaryCode, GfVector};
use jacobi_core::invar::{
    algebraic_independence, check_invariance, genus_group, molien, molien_closed_form_check, product_of_one_minus,
    span_dimension,
};
use jacobi_core::mpoly::MPoly;
use jacobi_core::tables::{
    fixture_set, genus1_dimension_table, genus2_basis_tables, j8_basis, printed_j8_basis, BasisReport, JacobiProvider,
    NamedCode, SearchOptions,
};
use jacobi_core::xform::{
    check_polarization_chain, check_split_chain, check_t_independence, macwilliams, split_macwilliams, SampleMode,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Claim {
    /// Orders of G_1 and G_2.
    #[value(name = "table1")]
    GroupOrders,
    /// Molien series of G_1 and its closed form.
    #[value(name = "thm5.2")]
    Genus1Molien,
    /// Molien series of G_2 and its closed form.
    #[value(name = "thm5.3")]
    Genus2Molien,
    /// The ten genus-1 Jacobi polynomials of d8+ against the printed list, and their span.
    #[value(name = "basis-j8")]
    BasisJ8,
    /// Prints the ten degree-8 polynomials next to the printed ones.
    #[value(name = "j8-list")]
    J8List,
    /// Genus-1 dimensions at n = 8, 16, 24.
    #[value(name = "table3")]
    Genus1Dimensions,
    /// Genus-2 counts at n = 8.
    #[value(name = "table4")]
    Genus2Degree8,
    /// Genus-2 counts at n = 16.
    #[value(name = "table5")]
    Genus2Degree16,
    /// Genus-2 counts at n = 24 (long-running).
    #[value(name = "table6")]
    Genus2Degree24,
    /// MacWilliams identities on a random corpus of short codes.
    #[value(name = "macwilliams")]
    MacWilliams,
    /// Polarization chains, the Golay 5-design and the split chains on d8+.
    #[value(name = "polarization")]
    Polarization,
    /// Invariance of every polynomial counted by the table claims (long-running).
    #[value(name = "invariance")]
    Invariance,
    /// Independence of J_{C,T} from the choice of T.
    #[value(name = "t-independence")]
    TIndependence,
    /// Jacobian rank of the degree-8 and degree-24 generators.
    #[value(name = "independence")]
    Independence,
}

impl Claim {
    pub fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub pass: bool,
    /// Computed values, comparisons and diffs, one per line.
    pub details: Vec<String>,
}

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            details: Vec::new(),
        }
    }

    fn info(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got == want {
            self.details.push(format!("{what}: {got:?} (ok)"));
        } else {
            self.pass = false;
            self.details.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }
}

pub const GENUS1_MOLIEN_NUMERATOR: [i64; 8] = [1, 8, 21, 58, 47, 35, 21, 1];
pub const GENUS1_MOLIEN_SERIES: [u64; 8] = [1, 10, 40, 130, 283, 513, 883, 1372];
pub const GENUS2_MOLIEN_NUMERATOR: [i64; 24] = [
    1, 8, 49, 325, 1240, 3421, 7987, 15287, 24892, 35648, 45097, 50365, 50365, 45097, 35648, 24892, 15287, 7987, 3421,
    1240, 325, 49, 8, 1,
];
pub const GENUS2_MOLIEN_SERIES: [u64; 6] = [1, 10, 68, 455, 2114, 7392];
pub const DEGREE8_TOTALS: [usize; 5] = [1, 1, 1, 1, 2];
pub const DEGREE16_TOTALS: [usize; 9] = [1, 1, 3, 3, 5, 5, 6, 6, 8];
pub const DEGREE16_PRODUCTS: [usize; 9] = [1, 1, 2, 2, 4, 4, 5, 5, 7];
pub const DEGREE24_TOTALS: [usize; 13] = [3, 3, 6, 9, 13, 15, 21, 22, 27, 29, 31, 31, 35];
pub const DEGREE24_SPLITS: [[usize; 4]; 13] = [
    [1, 1, 1, 0],
    [1, 1, 1, 0],
    [3, 2, 1, 0],
    [5, 2, 1, 1],
    [8, 3, 1, 1],
    [10, 3, 1, 1],
    [15, 5, 0, 1],
    [16, 5, 0, 1],
    [20, 6, 0, 1],
    [22, 6, 0, 1],
    [24, 5, 1, 1],
    [24, 5, 1, 1],
    [27, 6, 1, 1],
];

/// Spreads coefficients given at multiples of 8 into a dense polynomial in `t`.
fn in_t8(coeffs: &[i64]) -> Vec<i64> {
    let mut out = vec![0; 8 * (coeffs.len() - 1) + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        out[8 * k] = c;
    }
    out
}

fn at_multiples_of_8(series: &jacobi_core::invar::DimensionSeries, count: usize) -> Vec<BigInt> {
    (0..count).map(|k| series.at(8 * k).clone()).collect()
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ms(start: Instant) -> String {
    format!("{:.2} s", start.elapsed().as_secs_f64())
}

/// Runs claims against one provider, sharing the genus-2 tables between them.
pub struct Harness<'a> {
    provider: &'a dyn JacobiProvider,
    seed: u64,
    genus2: RefCell<Vec<BasisReport>>,
}

impl<'a> Harness<'a> {
    pub fn new(provider: &'a dyn JacobiProvider, seed: u64) -> Self {
        Harness {
            provider,
            seed,
            genus2: RefCell::new(Vec::new()),
        }
    }

    /// Genus-2 tables for n = 8, ..., `n`, computed once.
    pub fn genus2(&self, n: usize) -> Result<BasisReport> {
        let idx = n / 8 - 1;
        if self.genus2.borrow().len() <= idx {
            let tables = genus2_basis_tables(self.provider, n, &SearchOptions::default())?;
            *self.genus2.borrow_mut() = tables;
        }
        Ok(self.genus2.borrow()[idx].clone())
    }

    pub fn run(&self, claim: Claim) -> Result<ClaimOutcome> {
        let start = Instant::now();
        let mut out = Outcome::new();
        match claim {
            Claim::GroupOrders => self.group_orders(&mut out)?,
            Claim::Genus1Molien => self.genus1_molien(&mut out)?,
            Claim::Genus2Molien => self.genus2_molien(&mut out)?,
            Claim::BasisJ8 => self.basis_j8(&mut out)?,
            Claim::J8List => self.j8_list(&mut out)?,
            Claim::Genus1Dimensions => self.genus1_dimensions(&mut out)?,
            Claim::Genus2Degree8 => drop(self.genus2_totals(&mut out, 8, &DEGREE8_TOTALS)?),
            Claim::Genus2Degree16 => self.degree16(&mut out)?,
            Claim::Genus2Degree24 => self.degree24(&mut out)?,
            Claim::MacWilliams => self.macwilliams_suite(&mut out)?,
            Claim::Polarization => self.polarization_suite(&mut out)?,
            Claim::Invariance => self.invariance(&mut out)?,
            Claim::TIndependence => self.t_independence(&mut out)?,
            Claim::Independence => self.independence(&mut out)?,
        }
        out.info(format!("elapsed {}", ms(start)));
        Ok(ClaimOutcome {
            claim: claim.name(),
            pass: out.pass,
            details: out.details,
        })
    }

    fn group_orders(&self, out: &mut Outcome) -> Result<()> {
        for (g, want) in [(1, 192), (2, 92160)] {
            let start = Instant::now();
            let group = genus_group(g)?;
            out.expect(&format!("|G_{g}|"), group.order(), want);
            out.info(format!("G_{g} closed in {}", ms(start)));
        }
        Ok(())
    }

    fn genus1_molien(&self, out: &mut Outcome) -> Result<()> {
        let series = molien(&genus_group(1)?, 56)?;
        out.expect("coefficients at t^0, t^8, ..., t^56", at_multiples_of_8(&series, 8), big(&GENUS1_MOLIEN_SERIES));
        let den = product_of_one_minus(&[(8, 2), (24, 2)]);
        let check = molien_closed_form_check(&series, &in_t8(&GENUS1_MOLIEN_NUMERATOR), &den)?;
        out.expect("closed form agrees through t^56", (check.matches, check.mismatch), (true, None));
        Ok(())
    }

    fn genus2_molien(&self, out: &mut Outcome) -> Result<()> {
        let series = molien(&genus_group(2)?, 40)?;
        out.expect("coefficients at t^0, t^8, ..., t^40", at_multiples_of_8(&series, 6), big(&GENUS2_MOLIEN_SERIES));
        let den = product_of_one_minus(&[(8, 2), (24, 4), (40, 2)]);
        let check = molien_closed_form_check(&series, &in_t8(&GENUS2_MOLIEN_NUMERATOR), &den)?;
        out.expect("closed form agrees through t^40", (check.matches, check.mismatch), (true, None));
        Ok(())
    }

    fn basis_j8(&self, out: &mut Outcome) -> Result<()> {
        let computed = j8_basis(self.provider, 1)?;
        for ((label, set, printed), (_, c)) in printed_j8_basis().iter().zip(&computed) {
            if printed != c {
                out.pass = false;
                out.info(format!("{label} T={set:?}: computed {c}, printed {printed}"));
            }
        }
        out.info(format!("{} polynomials compared with the printed list", computed.len()));
        let polys: Vec<MPoly> = computed.into_iter().map(|(_, p)| p).collect();
        let span = span_dimension(&polys);
        out.expect("span dimension", span.rank, 10);
        Ok(())
    }

    fn j8_list(&self, out: &mut Outcome) -> Result<()> {
        let computed = j8_basis(self.provider, 1)?;
        for ((label, set, printed), (_, c)) in printed_j8_basis().iter().zip(&computed) {
            let same = printed == c;
            out.pass &= same;
            out.info(format!("{label} T={set:?} = {c}{}", if same { "" } else { "  (differs from print)" }));
        }
        Ok(())
    }

    fn genus1_dimensions(&self, out: &mut Outcome) -> Result<()> {
        let rows = genus1_dimension_table(self.provider, 24)?;
        out.expect("Molien at n = 8, 16, 24", rows.iter().map(|r| r.molien).collect(), vec![10u64, 40, 130]);
        out.expect("products of the degree-8 basis", rows.iter().map(|r| r.products).collect(), vec![10usize, 40, 105]);
        out.expect("with the 25 d24+ polynomials", rows[2].with_d24, Some(130));
        Ok(())
    }

    fn genus2_totals(&self, out: &mut Outcome, n: usize, want: &[usize]) -> Result<BasisReport> {
        let r = self.genus2(n)?;
        let totals = r.totals();
        out.expect(&format!("totals for |T| = 0..={}", n / 2), totals[..=n / 2].to_vec(), want.to_vec());
        out.expect("mirror symmetry", totals.iter().rev().cloned().collect::<Vec<_>>(), totals.clone());
        out.expect("grand total against Molien", r.total as u64, r.molien);
        out.expect("invariance failures", r.invariance_failures.clone(), Vec::<String>::new());
        Ok(r)
    }

    fn degree16(&self, out: &mut Outcome) -> Result<()> {
        let r = self.genus2_totals(out, 16, &DEGREE16_TOTALS)?;
        let products: Vec<usize> = r.rows[..=8].iter().map(|row| row.sources[0].1).collect();
        out.info(format!("products split {products:?}, published {DEGREE16_PRODUCTS:?}"));
        Ok(())
    }

    fn degree24(&self, out: &mut Outcome) -> Result<()> {
        let r = self.genus2_totals(out, 24, &DEGREE24_TOTALS)?;
        for (row, published) in r.rows[..=12].iter().zip(DEGREE24_SPLITS) {
            let split: Vec<usize> = row.sources.iter().map(|s| s.1).collect();
            out.info(format!("|T|={:2} split {split:?} published {published:?}", row.t));
        }
        Ok(())
    }

    fn macwilliams_suite(&self, out: &mut Outcome) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut checked = 0usize;
        let mut failures = Vec::new();
        let codes: Vec<BinaryCode> = (0..100).map(|_| random_code(&mut rng, 1..=8)).collect::<Result<_>>()?;
        for code in &codes {
            let dual = code.dual();
            let n = code.len();
            for t in 0..=n.min(3) {
                for set in subsets(n, t) {
                    for g in 1..=2 {
                        let left = macwilliams(&jacobi(code, &set, g)?, g, code.dim())?;
                        let right = jacobi(&dual, &set, g)?;
                        checked += 1;
                        if left != right {
                            failures.push(format!("n={n} k={} T={set:?} g={g}", code.dim()));
                        }
                    }
                }
            }
        }
        out.info(format!("{} codes, {checked} Jacobi identities", codes.len()));
        let mut split_checked = 0;
        for _ in 0..60 {
            let code = random_code(&mut rng, 2..=8)?;
            let part = random_partition(&mut rng, code.len())?;
            let g = rng.gen_range(1..=2);
            let left = split_macwilliams(&split_jacobi(&code, &part, g)?, g, part.ell(), code.dim())?;
            let right = split_jacobi(&code.dual(), &part, g)?;
            split_checked += 1;
            if left != right {
                failures.push(format!("split n={} blocks={:?} sets={:?} g={g}", code.len(), part.blocks(), part.sets()));
            }
        }
        out.info(format!("{split_checked} split identities"));
        out.expect("failures", failures, Vec::new());
        Ok(())
    }

    fn polarization_suite(&self, out: &mut Outcome) -> Result<()> {
        let d8 = d_plus(8)?;
        let g24 = golay24();
        let design = is_t_design(&supports_of_weight(&g24, 8), 5);
        out.expect("g24 weight-8 supports form a 5-design with lambda", (design.is_design, design.lambda), (true, Some(1)));
        let mut cases = vec![];
        for g in 1..=2 {
            for t in 1..=3 {
                cases.push((&d8, "d8+", t, g));
            }
        }
        for t in 1..=5 {
            cases.push((&g24, "g24", t, 1));
        }
        for (code, name, t, g) in cases {
            let r = check_polarization_chain(code, name, t, g)?;
            out.expect(&format!("{name} t={t} g={g}: homogeneous, chain holds"), (r.hypothesis, r.verdict), (true, true));
        }
        let blocks = vec![(1..=4).collect::<Vec<_>>(), (5..=8).collect()];
        let split_sets: [(Vec<usize>, Vec<usize>); 3] = [(vec![1], vec![]), (vec![], vec![6]), (vec![3], vec![])];
        for g in 1..=2 {
            for (a, b) in &split_sets {
                let part = BlockPartition::new(8, blocks.clone(), vec![a.clone(), b.clone()])?;
                let r = check_split_chain(&d8, "d8+", &part, g)?;
                out.expect(
                    &format!("d8+ sets {a:?},{b:?} g={g}: hypothesis, chain holds"),
                    (r.literal.hypothesis, r.literal.verdict),
                    (true, true),
                );
            }
        }
        // Reported, not asserted: the premises fail from t = 2 on this partition.
        let two = is_ell_t_homogeneous(&d8, &BlockPartition::new(8, blocks.clone(), vec![vec![], vec![]])?, 2);
        out.info(format!("d8+ with blocks 1-4;5-8 is 2nd 2-homogeneous: {}", two.holds));
        for sets in [vec![vec![1, 2], vec![]], vec![vec![1], vec![5]]] {
            let part = BlockPartition::new(8, blocks.clone(), sets.clone())?;
            let r = check_split_chain(&d8, "d8+", &part, 1)?;
            out.info(format!(
                "sets {sets:?}: hypothesis {}, literal {}, falling-factorial {}",
                r.literal.hypothesis, r.literal.verdict, r.falling.verdict
            ));
        }
        Ok(())
    }

    fn invariance(&self, out: &mut Outcome) -> Result<()> {
        let mut failures = Vec::new();
        let mut checked = 0;
        for g in 1..=2 {
            for (set, p) in j8_basis(self.provider, g)? {
                checked += 1;
                if !check_invariance(&p, g)?.invariant {
                    failures.push(format!("d8+ T={set:?} g={g}"));
                }
            }
        }
        let d24 = NamedCode::new("d24+", d_plus(24)?);
        for t in 0..=24 {
            let set = fixture_set(t);
            checked += 1;
            if !check_invariance(&self.provider.jacobi(&d24, &set, 1)?, 1)?.invariant {
                failures.push(format!("d24+ T={set:?} g=1"));
            }
        }
        out.info(format!("{checked} genus-1 and degree-8 polynomials checked directly"));
        for n in [8, 16, 24] {
            let r = self.genus2(n)?;
            out.info(format!("genus 2, n = {n}: {} code polynomials checked", r.members.len()));
            failures.extend(r.invariance_failures.iter().map(|f| format!("n={n} {f}")));
        }
        out.expect("failures", failures, Vec::new());
        Ok(())
    }

    fn t_independence(&self, out: &mut Outcome) -> Result<()> {
        let d8 = d_plus(8)?;
        for t in 0..=3 {
            let r = check_t_independence(&d8, "d8+", t, 1, SampleMode::Exhaustive)?.report;
            out.expect(&format!("d8+ t={t} exhaustive ({})", r.notes.join("; ")), (r.hypothesis, r.verdict), (true, true));
        }
        let mode = SampleMode::Sampled {
            count: 100,
            seed: self.seed,
        };
        let r = check_t_independence(&golay24(), "g24", 5, 1, mode)?.report;
        out.expect(&format!("g24 t=5 sampled ({})", r.notes.join("; ")), (r.hypothesis, r.verdict), (true, true));
        Ok(())
    }

    fn independence(&self, out: &mut Outcome) -> Result<()> {
        let d8 = NamedCode::new("d8+", d_plus(8)?);
        let d24 = NamedCode::new("d24+", d_plus(24)?);
        let g24 = NamedCode::new("g24", golay24());
        let full = |n: usize| (1..=n).collect::<Vec<_>>();
        let generators = |g: usize, codes: &[&NamedCode]| -> Result<Vec<MPoly>> {
            let mut v = Vec::new();
            for c in codes {
                v.push(self.provider.jacobi(c, &[], g)?);
                v.push(self.provider.jacobi(c, &full(c.code.len()), g)?);
            }
            Ok(v)
        };
        let r = algebraic_independence(&generators(1, &[&d8, &d24])?, 5, self.seed)?;
        out.expect("genus-1 Jacobian rank of the four generators", r.rank, 4);
        let r = algebraic_independence(&generators(2, &[&d8, &d24, &g24])?, 5, self.seed)?;
        out.info(format!("genus-2 Jacobian rank of the six listed generators: {} ({})", r.rank, r.verdict));
        Ok(())
    }
}

pub fn random_code(rng: &mut ChaCha8Rng, lengths: std::ops::RangeInclusive<usize>) -> Result<BinaryCode> {
    let n = rng.gen_range(lengths);
    let k = rng.gen_range(0..=n);
    let rows = (0..k).map(|_| GfVector::from_u64(n, rng.gen::<u64>())).collect();
    Ok(BinaryCode::new(n, rows)?)
}

/// A random partition of `1..=n` into at most three blocks, with a random set in each.
pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Result<BlockPartition> {
    let ell = rng.gen_range(1..=n.min(3));
    let mut coords: Vec<usize> = (1..=n).collect();
    rand::seq::SliceRandom::shuffle(&mut coords[..], rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, ell - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut blocks = Vec::new();
    let mut start = 0;
    for c in cuts {
        let mut b = coords[start..c].to_vec();
        b.sort_unstable();
        blocks.push(b);
        start = c;
    }
    let sets = blocks
        .iter()
        .map(|b| {
            let mut s: Vec<usize> = b.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    Ok(BlockPartition::new(n, blocks, sets)?)
}

fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(n, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, t, 1, &mut Vec::new(), &mut out);
    out
}
