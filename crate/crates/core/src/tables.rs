//! Basis constructions for the rings of Jacobi polynomials of Type II codes
//! and the dimension counts built from them.
//!
//! Every count is an incremental rank inside one graded piece: polynomials
//! with y-degree `t` and x-degree `n - t`. Candidates are tried in a fixed
//! order (products of lower-degree bases first, then Jacobi polynomials of
//! each source code) and each source is credited with its rank increments.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enums::jacobi;
use crate::gf2::{d_plus, golay24, p24, BinaryCode};
use crate::invar::{check_invariance, genus_group, molien, molien_bigraded, SpanBuilder};
use crate::mpoly::{swap_xy, MPoly};
use crate::{Error, Result};

/// A code together with the name used in reports and cache keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCode {
    pub name: String,
    pub code: BinaryCode,
}

impl NamedCode {
    pub fn new(name: &str, code: BinaryCode) -> Self {
        NamedCode {
            name: name.to_string(),
            code,
        }
    }
}

/// Source of Jacobi polynomials; lets callers put a cache in front of enumeration.
pub trait JacobiProvider {
    fn jacobi(&self, code: &NamedCode, t: &[usize], g: usize) -> Result<MPoly>;
}

/// Enumerates every request directly.
#[derive(Clone, Copy, Debug, Default)]
pub struct Direct;

impl JacobiProvider for Direct {
    fn jacobi(&self, code: &NamedCode, t: &[usize], g: usize) -> Result<MPoly> {
        jacobi(&code.code, t, g)
    }
}

/// Coordinate sets used for `d_24^+` with `6 <= |T| <= 18`.
pub fn table2_sets() -> BTreeMap<usize, Vec<usize>> {
    (6..=18)
        .map(|t| {
            let set = if t % 2 == 0 {
                (1..=t).collect()
            } else {
                core::iter::once(1).chain(3..=t + 1).collect()
            };
            (t, set)
        })
        .collect()
}

/// The fixture set of size `t` for length 24: the table entry when there is one, else `[1..t]`.
pub fn fixture_set(t: usize) -> Vec<usize> {
    table2_sets().remove(&t).unwrap_or_else(|| (1..=t).collect())
}

/// The genus-1 basis of the degree-8 piece as printed, keyed by a label and its set `T`.
pub fn printed_j8_basis() -> Vec<(&'static str, Vec<usize>, MPoly)> {
    const ROWS: [(&str, &[usize], &str); 10] = [
        ("J_{C,0}", &[], "x0^8 + 14*x0^4*x1^4 + x1^8"),
        ("J_{C,1}", &[1], "x0^7*y0 + 7*x0^3*x1^4*y0 + 7*x0^4*x1^3*y1 + x1^7*y1"),
        (
            "J_{C,2}",
            &[1, 2],
            "x0^6*y0^2 + 3*x0^2*x1^4*y0^2 + 8*x0^3*x1^3*y0*y1 + 3*x0^4*x1^2*y1^2 + x1^6*y1^2",
        ),
        (
            "J_{C,3}",
            &[1, 2, 3],
            "x0^5*y0^3 + x0*x1^4*y0^3 + 6*x0^2*x1^3*y0^2*y1 + 6*x0^3*x1^2*y0*y1^2 + x0^4*x1*y1^3 + x1^5*y1^3",
        ),
        (
            "J_{C,T1}",
            &[1, 2, 3, 4],
            "x0^4*y0^4 + x1^4*y0^4 + 12*x0^2*x1^2*y0^2*y1^2 + x0^4*y1^4 + x1^4*y1^4",
        ),
        (
            "J_{C,T2}",
            &[1, 2, 3, 5],
            "x0^4*y0^4 + 4*x0*x1^3*y0^3*y1 + 6*x0^2*x1^2*y0^2*y1^2 + 4*x0^3*x1*y0*y1^3 + x1^4*y1^4",
        ),
        (
            "J_{C,5}",
            &[1, 2, 3, 4, 5],
            "x0^3*y0^5 + x1^3*y0^4*y1 + 6*x0*x1^2*y0^3*y1^2 + 6*x0^2*x1*y0^2*y1^3 + x0^3*y0*y1^4 + x1^3*y1^5",
        ),
        (
            "J_{C,6}",
            &[1, 2, 3, 4, 5, 6],
            "x0^2*y0^6 + 3*x1^2*y0^4*y1^2 + 8*x0*x1*y0^3*y1^3 + 3*x0^2*y0^2*y1^4 + x1^2*y1^6",
        ),
        (
            "J_{C,7}",
            &[1, 2, 3, 4, 5, 6, 7],
            "x0*y0^7 + 7*x1*y0^4*y1^3 + 7*x0*y0^3*y1^4 + x1*y1^7",
        ),
        ("J_{C,8}", &[1, 2, 3, 4, 5, 6, 7, 8], "y0^8 + 14*y0^4*y1^4 + y1^8"),
    ];
    ROWS.iter()
        .map(|(label, set, text)| (*label, set.to_vec(), text.parse().expect("fixture polynomial parses")))
        .collect()
}

/// The ten Jacobi polynomials of `d_8^+` spanning the degree-8 piece in genus `g`,
/// as `(T, J)` in the order `|T| = 0, 1, 2, 3, 4 (T1), 4 (T2), 5, ..., 8`.
pub fn j8_basis(provider: &dyn JacobiProvider, g: usize) -> Result<Vec<(Vec<usize>, MPoly)>> {
    let d8 = NamedCode::new("d8+", d_plus(8)?);
    printed_j8_basis()
        .into_iter()
        .map(|(_, set, _)| Ok((set.clone(), provider.jacobi(&d8, &set, g)?)))
        .collect()
}

/// All products of `arity` basis elements (with repetition) whose set sizes add up to `t`.
fn products(base: &[(usize, MPoly)], arity: usize, t: usize) -> Vec<MPoly> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(base: &[(usize, MPoly)], arity: usize, t: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<MPoly>) {
        if stack.len() == arity {
            if stack.iter().map(|&i| base[i].0).sum::<usize>() == t {
                let p = stack.iter().skip(1).fold(base[stack[0]].1.clone(), |acc, &i| acc.mul(&base[i].1));
                out.push(p);
            }
            return;
        }
        let used: usize = stack.iter().map(|&i| base[i].0).sum();
        for i in start..base.len() {
            if used + base[i].0 <= t {
                stack.push(i);
                rec(base, arity, t, i, stack, out);
                stack.pop();
            }
        }
    }
    rec(base, arity, t, 0, &mut stack, &mut out);
    out
}

/// One row of the genus-1 dimension comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus1Row {
    pub n: usize,
    /// Coefficient of `t^n` in the Molien series of `G_1`.
    pub molien: u64,
    /// Dimension of the span of products of the degree-8 basis.
    pub products: usize,
    /// Dimension after adjoining the 25 `d_24^+` fixture polynomials (`n = 24` only).
    pub with_d24: Option<usize>,
}

/// Dimensions at `n = 8, 16, 24` (up to `max_n`) in genus 1.
pub fn genus1_dimension_table(provider: &dyn JacobiProvider, max_n: usize) -> Result<Vec<Genus1Row>> {
    if max_n > 24 {
        return Err(Error::OutOfRange {
            what: "degree",
            value: max_n,
            range: "8..=24".into(),
        });
    }
    let series = molien(&genus_group(1)?, max_n)?;
    let base: Vec<(usize, MPoly)> = j8_basis(provider, 1)?
        .into_iter()
        .map(|(set, p)| (set.len(), p))
        .collect();
    let d24 = NamedCode::new("d24+", d_plus(24)?);
    let mut rows = Vec::new();
    for n in (8..=max_n).step_by(8) {
        let arity = n / 8;
        let mut products_rank = 0;
        let mut total = 0;
        for t in 0..=n {
            let mut sb = SpanBuilder::new();
            for p in products(&base, arity, t) {
                sb.try_add(&p);
            }
            products_rank += sb.rank();
            if n == 24 {
                sb.try_add(&provider.jacobi(&d24, &fixture_set(t), 1)?);
            }
            total += sb.rank();
        }
        rows.push(Genus1Row {
            n,
            molien: series.at(n).to_u64().unwrap_or(u64::MAX),
            products: products_rank,
            with_d24: (n == 24).then_some(total),
        });
    }
    Ok(rows)
}

/// Contributions to the piece with `|T| = t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TCount {
    pub t: usize,
    /// Rank increment credited to each source, in the order tried.
    pub sources: Vec<(String, usize)>,
    pub total: usize,
    /// Dimension of the invariants of this bidegree.
    pub target: u64,
    /// Whether the row was obtained from the row at `n - t` by exchanging x and y.
    pub mirrored: bool,
}

/// Accepted code polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub code: String,
    pub set: Vec<usize>,
}

/// Per-`|T|` basis counts for the degree-`n` piece in genus `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: usize,
    pub g: usize,
    pub rows: Vec<TCount>,
    pub total: usize,
    pub molien: u64,
    pub members: Vec<Member>,
    /// Names of members (or product factors) that failed a generator check.
    pub invariance_failures: Vec<String>,
}

impl BasisReport {
    /// Totals per `|T|`.
    pub fn totals(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.total).collect()
    }

    /// Whether every piece reached its invariant dimension, which makes the counts exact.
    pub fn certified(&self) -> bool {
        self.invariance_failures.is_empty() && self.rows.iter().all(|r| r.total as u64 == r.target)
    }
}

/// Search limits for [`basis_table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Stop trying a source after this many consecutive candidates add nothing.
    pub stall: usize,
    /// Upper bound on candidates per source and piece.
    pub max_tries: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            stall: 4,
            max_tries: 40,
            seed: 0x7ab1e,
        }
    }
}

/// Sources used for the genus-2 tables at `n = 8, 16, 24`.
pub fn genus2_sources(n: usize) -> Result<Vec<NamedCode>> {
    Ok(match n {
        8 => vec![NamedCode::new("d8+", d_plus(8)?)],
        16 => vec![NamedCode::new("d16+", d_plus(16)?)],
        24 => vec![
            NamedCode::new("d24+", d_plus(24)?),
            NamedCode::new("g24", golay24()),
            NamedCode::new("p24", p24()),
        ],
        _ => {
            return Err(Error::OutOfRange {
                what: "degree",
                value: n,
                range: "8, 16 or 24".into(),
            })
        }
    })
}

/// Products of two lower-degree bases, each given per y-degree.
#[derive(Clone, Copy, Debug)]
pub struct Products<'a> {
    pub label: &'a str,
    pub left: &'a [Vec<MPoly>],
    pub right: &'a [Vec<MPoly>],
}

impl Products<'_> {
    fn at(&self, t: usize) -> Vec<MPoly> {
        let mut out = Vec::new();
        for a in 0..=t.min(self.left.len().saturating_sub(1)) {
            let Some(rs) = self.right.get(t - a) else { continue };
            for p in &self.left[a] {
                for q in rs {
                    out.push(p.mul(q));
                }
            }
        }
        out
    }
}

/// A basis report together with the accepted polynomials of every piece.
#[derive(Clone, Debug)]
pub struct BasisTable {
    pub report: BasisReport,
    /// `pieces[t]` spans the invariants of y-degree `t` found by the search.
    pub pieces: Vec<Vec<MPoly>>,
}

/// Basis counts of the degree-`n` piece in genus `g`.
///
/// Candidates from `products` come first, then each source code with its
/// fixture set followed by seeded random sets, until the piece reaches its
/// invariant dimension. Pieces with `t > n/2` mirror the piece at `n - t`.
pub fn basis_table(
    provider: &dyn JacobiProvider,
    g: usize,
    n: usize,
    products: Option<Products<'_>>,
    sources: &[NamedCode],
    opts: &SearchOptions,
) -> Result<BasisTable> {
    if n == 0 || !n.is_multiple_of(8) {
        return Err(Error::InvalidInput(format!("degree {n} is not a positive multiple of 8")));
    }
    if let Some(c) = sources.iter().find(|c| c.code.len() != n) {
        return Err(Error::InvalidInput(format!("{} has length {}, not {n}", c.name, c.code.len())));
    }
    let group = genus_group(g)?;
    let molien_n = molien(&group, n)?.at(n).to_u64().unwrap_or(u64::MAX);
    let bigraded = molien_bigraded(&group, n)?;

    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows: Vec<TCount> = Vec::new();
    let mut pieces: Vec<Vec<MPoly>> = Vec::new();
    let mut members = Vec::new();
    for t in 0..=n / 2 {
        let target = bigraded[t][n - t].to_u64().unwrap_or(u64::MAX);
        let mut sb = SpanBuilder::new();
        let mut accepted = Vec::new();
        let mut sources_out = Vec::new();
        if let Some(pr) = &products {
            for p in pr.at(t) {
                if (sb.rank() as u64) < target && sb.try_add(&p) {
                    accepted.push(p);
                }
            }
            sources_out.push((pr.label.to_string(), sb.rank()));
        }
        for src in sources {
            let before = sb.rank();
            let mut tried: BTreeSet<Vec<usize>> = BTreeSet::new();
            let mut stall = 0;
            let mut candidates = vec![if n == 24 { fixture_set(t) } else { (1..=t).collect() }];
            while (sb.rank() as u64) < target && stall < opts.stall && tried.len() < opts.max_tries {
                let set = match candidates.pop() {
                    Some(s) => s,
                    None => {
                        let mut s: Vec<usize> = rand::seq::index::sample(&mut rng, n, t).into_iter().map(|i| i + 1).collect();
                        s.sort_unstable();
                        s
                    }
                };
                if !tried.insert(set.clone()) {
                    // Small sets are exhausted quickly; the stall counter ends the loop.
                    stall += 1;
                    continue;
                }
                let p = provider.jacobi(src, &set, g)?;
                if sb.try_add(&p) {
                    stall = 0;
                    if !check_invariance(&p, g)?.invariant {
                        failures.push(format!("{} {set:?}", src.name));
                    }
                    accepted.push(p);
                    members.push(Member {
                        code: src.name.clone(),
                        set,
                    });
                } else {
                    stall += 1;
                }
            }
            sources_out.push((src.name.clone(), sb.rank() - before));
        }
        rows.push(TCount {
            t,
            sources: sources_out,
            total: sb.rank(),
            target,
            mirrored: false,
        });
        pieces.push(accepted);
    }
    for t in n / 2 + 1..=n {
        let mut row = rows[n - t].clone();
        row.t = t;
        row.target = bigraded[t][n - t].to_u64().unwrap_or(u64::MAX);
        row.mirrored = true;
        rows.push(row);
        pieces.push(pieces[n - t].iter().map(swap_xy).collect());
    }
    let mirrored: Vec<Member> = members
        .iter()
        .filter(|m| 2 * m.set.len() != n)
        .map(|m| Member {
            code: m.code.clone(),
            set: (1..=n).filter(|i| !m.set.contains(i)).collect(),
        })
        .collect();
    members.extend(mirrored);
    Ok(BasisTable {
        report: BasisReport {
            n,
            g,
            total: rows.iter().map(|r| r.total).sum(),
            rows,
            molien: molien_n,
            members,
            invariance_failures: failures,
        },
        pieces,
    })
}

/// The degree-8 basis of [`j8_basis`] grouped by `|T|`.
pub fn j8_pieces(provider: &dyn JacobiProvider, g: usize) -> Result<Vec<Vec<MPoly>>> {
    let mut pieces = vec![Vec::new(); 9];
    for (set, p) in j8_basis(provider, g)? {
        pieces[set.len()].push(p);
    }
    Ok(pieces)
}

/// Genus-2 tables for `n = 8, 16, ...` up to `max_n`.
///
/// Degree 16 starts from products of two degree-8 basis elements and degree
/// 24 from products of the degree-8 basis with the degree-16 basis found here.
pub fn genus2_basis_tables(provider: &dyn JacobiProvider, max_n: usize, opts: &SearchOptions) -> Result<Vec<BasisReport>> {
    if !(8..=24).contains(&max_n) || !max_n.is_multiple_of(8) {
        return Err(Error::OutOfRange {
            what: "degree",
            value: max_n,
            range: "8, 16 or 24".into(),
        });
    }
    let j8 = j8_pieces(provider, 2)?;
    let mut j8_failures = Vec::new();
    for (t, piece) in j8.iter().enumerate() {
        for p in piece {
            if !check_invariance(p, 2)?.invariant {
                j8_failures.push(format!("d8+ |T|={t}"));
            }
        }
    }
    let mut out = Vec::new();
    let b8 = basis_table(provider, 2, 8, None, &genus2_sources(8)?, opts)?;
    out.push(b8.report);
    if max_n >= 16 {
        let prods = Products {
            label: "J8*J8",
            left: &j8,
            right: &j8,
        };
        let mut b16 = basis_table(provider, 2, 16, Some(prods), &genus2_sources(16)?, opts)?;
        b16.report.invariance_failures.extend(j8_failures.iter().cloned());
        if max_n >= 24 {
            let prods = Products {
                label: "J8*J16",
                left: &j8,
                right: &b16.pieces,
            };
            let mut b24 = basis_table(provider, 2, 24, Some(prods), &genus2_sources(24)?, opts)?;
            b24.report.invariance_failures.extend(b16.report.invariance_failures.iter().cloned());
            out.push(b16.report);
            out.push(b24.report);
        } else {
            out.push(b16.report);
        }
    }
    Ok(out)
}

/// The genus-2 table at `n = 8, 16` or `24` with the default search options.
pub fn genus2_basis_table(provider: &dyn JacobiProvider, n: usize) -> Result<BasisReport> {
    let mut all = genus2_basis_tables(provider, n, &SearchOptions::default())?;
    all.pop().ok_or_else(|| Error::InvalidInput("no table".into()))
}

/// `J_{C, [n] \ T}` obtained from `J_{C,T}` by exchanging the families.
pub fn complement_jacobi(j: &MPoly) -> MPoly {
    swap_xy(j)
}
