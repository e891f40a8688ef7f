//! The group `G_g`, its Molien series, invariance tests, span dimensions and
//! algebraic independence.
//!
//! Every generator of `G_g` has the shape `diag(A, A)`, so the closure runs
//! on the `2^g x 2^g` blocks. Block entries lie in `Z[zeta_8][1/2]` and are
//! stored exactly as integer coordinates over `1, zeta, zeta^2, zeta^3`
//! divided by a common power of two.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclo::{
    build_eg, build_mg, build_tg, dot_parity, lift_tilde, AffineMap, CycloMatrix, CycloNum, PowerSeries,
    rational_function_series,
};
use crate::mpoly::{CPoly, Kind, MPoly, Monomial, Var};
use crate::xform::hadamard;
use crate::{Error, Rational, Result};

/// Default ceiling on the number of group elements produced by [`close_group`].
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Element of `Z[zeta_8]` as coordinates over `1, zeta, zeta^2, zeta^3`.
type Zeta = [i64; 4];

fn zmul(a: &Zeta, b: &Zeta) -> [i128; 4] {
    let mut c = [0i128; 4];
    for i in 0..4 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..4 {
            let p = i128::from(a[i]) * i128::from(b[j]);
            if i + j < 4 {
                c[i + j] += p;
            } else {
                c[i + j - 4] -= p;
            }
        }
    }
    c
}

fn cyclo_to_zeta(c: &CycloNum) -> Option<(Zeta, u32)> {
    let coords = c.coeffs();
    let den = coords.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let e = den.trailing_zeros().unwrap_or(0);
    if den != BigInt::one() << e {
        return None;
    }
    let mut out = [0i64; 4];
    for (o, x) in out.iter_mut().zip(coords) {
        *o = (x.numer() * (&den / x.denom())).to_i64()?;
    }
    Some((out, e as u32))
}

fn zeta_to_cyclo(z: &Zeta, e: u32) -> CycloNum {
    let den = BigInt::one() << e;
    CycloNum::new(z.map(|n| Rational::new(BigInt::from(n), den.clone())))
}

/// Square matrix `N / 2^e` with `N` over `Z[zeta_8]`, `e` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicMatrix {
    m: usize,
    e: u32,
    entries: Vec<[i32; 4]>,
}

impl DyadicMatrix {
    pub fn identity(m: usize) -> Self {
        let mut entries = vec![[0; 4]; m * m];
        for i in 0..m {
            entries[i * m + i] = [1, 0, 0, 0];
        }
        DyadicMatrix { m, e: 0, entries }
    }

    /// Exact conversion; `None` when some entry is outside `Z[zeta_8][1/2]`.
    pub fn from_cyclo(a: &CycloMatrix) -> Option<Self> {
        let m = a.size();
        let parts: Vec<(Zeta, u32)> = a.entries().iter().map(cyclo_to_zeta).collect::<Option<_>>()?;
        let e = parts.iter().map(|p| p.1).max().unwrap_or(0);
        let wide: Vec<[i128; 4]> = parts
            .iter()
            .map(|(z, k)| z.map(|x| i128::from(x) << (e - k)))
            .collect();
        Self::normalized(m, e, wide)
    }

    fn normalized(m: usize, mut e: u32, mut wide: Vec<[i128; 4]>) -> Option<Self> {
        while e > 0 && wide.iter().all(|z| z.iter().all(|x| x % 2 == 0)) {
            for z in wide.iter_mut() {
                for x in z.iter_mut() {
                    *x /= 2;
                }
            }
            e -= 1;
        }
        let entries = wide
            .iter()
            .map(|z| {
                let mut o = [0i32; 4];
                for (a, b) in o.iter_mut().zip(z) {
                    *a = i32::try_from(*b).ok()?;
                }
                Some(o)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(DyadicMatrix { m, e, entries })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn to_cyclo(&self) -> CycloMatrix {
        CycloMatrix::from_fn(self.m, |r, c| {
            let z = self.entries[r * self.m + c].map(i64::from);
            zeta_to_cyclo(&z, self.e)
        })
    }

    /// Product; `None` only if a coordinate overflows the compact storage.
    pub fn mul(&self, o: &DyadicMatrix) -> Option<DyadicMatrix> {
        let m = self.m;
        let mut wide = vec![[0i128; 4]; m * m];
        for i in 0..m {
            for k in 0..m {
                let a = self.entries[i * m + k];
                if a == [0; 4] {
                    continue;
                }
                let a = a.map(i64::from);
                for j in 0..m {
                    let b = o.entries[k * m + j];
                    if b == [0; 4] {
                        continue;
                    }
                    let p = zmul(&a, &b.map(i64::from));
                    let w = &mut wide[i * m + j];
                    for t in 0..4 {
                        w[t] += p[t];
                    }
                }
            }
        }
        Self::normalized(m, self.e + o.e, wide)
    }

    /// Trace as `(coordinates, e)` with the same normalization.
    fn trace_key(&self) -> (u32, [i128; 4]) {
        let mut t = [0i128; 4];
        for i in 0..self.m {
            for (a, b) in t.iter_mut().zip(&self.entries[i * self.m + i]) {
                *a += i128::from(*b);
            }
        }
        let mut e = self.e;
        while e > 0 && t.iter().all(|x| x % 2 == 0) {
            for x in t.iter_mut() {
                *x /= 2;
            }
            e -= 1;
        }
        if t == [0; 4] {
            e = 0;
        }
        (e, t)
    }
}

/// A finite matrix group given by its generators and all of its elements.
///
/// With `copies = 2` every element is `diag(A, A)` and only the blocks `A` are stored.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    size: usize,
    copies: usize,
    generators: Vec<CycloMatrix>,
    elements: Vec<DyadicMatrix>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Size of the matrices in the group.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of identical diagonal blocks per element.
    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn generators(&self) -> &[CycloMatrix] {
        &self.generators
    }

    /// The stored diagonal blocks.
    pub fn blocks(&self) -> &[DyadicMatrix] {
        &self.elements
    }

    /// Element `i` as a full matrix.
    pub fn element(&self, i: usize) -> CycloMatrix {
        let a = self.elements[i].to_cyclo();
        if self.copies == 2 {
            lift_tilde(&a)
        } else {
            a
        }
    }

    /// Checks identity membership, inverses, and closure on `samples` random pairs.
    pub fn spot_check(&self, samples: usize, seed: u64) -> bool {
        let set: HashSet<&DyadicMatrix> = self.elements.iter().collect();
        let id = DyadicMatrix::identity(self.elements[0].m);
        if !set.contains(&id) {
            return false;
        }
        let has_inverse = self.elements.iter().all(|a| {
            // The group is finite, so some power of `a` is the identity and the previous one is its inverse.
            let mut p = a.clone();
            for _ in 0..self.order() {
                match p.mul(a) {
                    Some(next) if next == id => return set.contains(&p),
                    Some(next) => p = next,
                    None => return false,
                }
            }
            false
        });
        if !has_inverse {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let a = &self.elements[rng.gen_range(0..self.order())];
            let b = &self.elements[rng.gen_range(0..self.order())];
            a.mul(b).is_some_and(|p| set.contains(&p))
        })
    }
}

fn split_diagonal(a: &CycloMatrix) -> Option<CycloMatrix> {
    let m = a.size();
    if !m.is_multiple_of(2) {
        return None;
    }
    let h = m / 2;
    for r in 0..m {
        for c in 0..m {
            let v = a.get(r, c);
            if r / h != c / h {
                if !v.is_zero() {
                    return None;
                }
            } else if v != a.get(r % h, c % h) {
                return None;
            }
        }
    }
    Some(CycloMatrix::from_fn(h, |r, c| a.get(r, c).clone()))
}

/// Breadth-first closure of the group generated by `generators`.
///
/// Entries must lie in `Z[zeta_8][1/2]`.
pub fn close_group(generators: &[CycloMatrix], cap: usize) -> Result<MatrixGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let size = first.size();
    if generators.iter().any(|g| g.size() != size) {
        return Err(Error::InvalidInput("generators have different sizes".into()));
    }
    let halves: Option<Vec<CycloMatrix>> = generators.iter().map(split_diagonal).collect();
    let (copies, blocks) = match halves {
        Some(h) => (2, h),
        None => (1, generators.to_vec()),
    };
    let gens: Vec<DyadicMatrix> = blocks
        .iter()
        .map(|b| {
            DyadicMatrix::from_cyclo(b)
                .ok_or_else(|| Error::InvalidInput("generator entries must lie in Z[zeta_8][1/2]".into()))
        })
        .collect::<Result<_>>()?;
    let overflow = || Error::Inconsistent("group element entries overflow the dyadic storage".into());

    let id = DyadicMatrix::identity(size / copies);
    let mut seen: HashSet<DyadicMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut elements = vec![id];
    let mut idx = 0;
    while idx < elements.len() {
        let a = elements[idx].clone();
        for g in &gens {
            let p = a.mul(g).ok_or_else(overflow)?;
            if !seen.contains(&p) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                seen.insert(p.clone());
                elements.push(p);
            }
        }
        idx += 1;
    }
    Ok(MatrixGroup {
        size,
        copies,
        generators: generators.to_vec(),
        elements,
    })
}

/// The named generators of `G_g`: `T`, `E`, every `M(sigma)`, and `eta_8 I`, all lifted to `diag(A, A)`.
pub fn genus_generators(g: usize) -> Vec<(String, CycloMatrix)> {
    let mut out = vec![
        ("T".to_string(), lift_tilde(&build_tg(g))),
        ("E".to_string(), lift_tilde(&build_eg(g))),
    ];
    for s in AffineMap::all(g) {
        out.push((format!("M(v={}, cols={:?})", s.v, s.cols), lift_tilde(&build_mg(&s))));
    }
    out.push(("eta8".to_string(), CycloMatrix::scalar(2 << g, CycloNum::zeta())));
    out
}

/// `G_g` itself.
pub fn genus_group(g: usize) -> Result<MatrixGroup> {
    if g == 0 || g > 3 {
        return Err(Error::OutOfRange {
            what: "genus",
            value: g,
            range: "1..=3".into(),
        });
    }
    let gens: Vec<CycloMatrix> = genus_generators(g).into_iter().map(|(_, m)| m).collect();
    close_group(&gens, DEFAULT_GROUP_CAP)
}

/// Coefficients of a dimension series at every degree `0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSeries {
    pub coeffs: Vec<BigInt>,
}

impl DimensionSeries {
    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn at(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }
}

/// `(k, zeta-coordinates of tr A^k)` for `k = 1..=m`.
type TraceSignature = Vec<(u32, [i128; 4])>;

/// Conjugation-invariant buckets: one `1/det(I - tA)` series per distinct trace-power signature.
fn bucket_series(group: &MatrixGroup, max_degree: usize) -> Result<Vec<(usize, PowerSeries<CycloNum>)>> {
    let mut buckets: HashMap<TraceSignature, (usize, usize)> = HashMap::new();
    for (i, a) in group.elements.iter().enumerate() {
        let mut key = Vec::with_capacity(a.m);
        let mut p = a.clone();
        key.push(p.trace_key());
        for _ in 1..a.m {
            p = p
                .mul(a)
                .ok_or_else(|| Error::Inconsistent("group element power overflows".into()))?;
            key.push(p.trace_key());
        }
        buckets.entry(key).or_insert((i, 0)).1 += 1;
    }
    let mut out: Vec<(usize, usize)> = buckets.into_values().collect();
    out.sort_unstable();
    out.into_iter()
        .map(|(rep, count)| {
            let q = group.elements[rep].to_cyclo().det_one_minus_t();
            let inv = PowerSeries::new(q, max_degree).inverse()?;
            Ok((count, inv))
        })
        .collect()
}

fn integral(r: &Rational, what: impl Fn() -> String) -> Result<BigInt> {
    if !r.is_integer() || r.is_negative() {
        return Err(Error::Inconsistent(format!("{} is {r}, not a nonnegative integer", what())));
    }
    Ok(r.to_integer())
}

/// Molien series `(1/|G|) Σ 1/det(I - tA)` up to `max_degree`.
pub fn molien(group: &MatrixGroup, max_degree: usize) -> Result<DimensionSeries> {
    let mut total = PowerSeries::new(vec![CycloNum::zero()], max_degree);
    for (count, inv) in bucket_series(group, max_degree)? {
        let mut s = inv.clone();
        for _ in 1..group.copies {
            s = s.mul(&inv);
        }
        total = total.add(&s.scale(&CycloNum::from_int(count as i64)));
    }
    let order = Rational::from_integer(BigInt::from(group.order()));
    let q = total.to_rational()?;
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| integral(&(c / &order), || format!("Molien coefficient of t^{d}")))
        .collect::<Result<_>>()?;
    Ok(DimensionSeries { coeffs })
}

/// Bigraded Molien series of a group of `diag(A, A)` elements.
///
/// Entry `[a][b]` is the dimension of invariants of degree `a` in the first
/// family and `b` in the second, for `a + b <= max_degree`.
pub fn molien_bigraded(group: &MatrixGroup, max_degree: usize) -> Result<Vec<Vec<BigInt>>> {
    if group.copies != 2 {
        return Err(Error::InvalidInput("bigraded series needs a group of diag(A, A) matrices".into()));
    }
    let buckets = bucket_series(group, max_degree)?;
    let order = Rational::from_integer(BigInt::from(group.order()));
    let mut out = Vec::with_capacity(max_degree + 1);
    for a in 0..=max_degree {
        let mut row = Vec::with_capacity(max_degree + 1 - a);
        for b in 0..=(max_degree - a) {
            let mut acc = CycloNum::zero();
            for (count, inv) in &buckets {
                let term = inv.coeff(a) * inv.coeff(b);
                acc += &term.scale(&Rational::from_integer(BigInt::from(*count)));
            }
            let r = acc
                .to_rational()
                .ok_or_else(|| Error::Inconsistent(format!("bigraded coefficient ({a},{b}) is not rational")))?;
            row.push(integral(&(r / &order), || format!("bigraded coefficient ({a},{b})"))?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Coefficients of `Π (1 - t^k)^p` for `(k, p)` in `factors`.
pub fn product_of_one_minus(factors: &[(usize, u32)]) -> Vec<i64> {
    let mut out = vec![1i64];
    for &(k, p) in factors {
        for _ in 0..p {
            let mut next = vec![0i64; out.len() + k];
            for (i, &c) in out.iter().enumerate() {
                next[i] += c;
                next[i + k] -= c;
            }
            out = next;
        }
    }
    out
}

/// Comparison of a computed series with the expansion of a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub matches: bool,
    pub compared_to: usize,
    /// First degree where they differ, with computed and expected values.
    pub mismatch: Option<(usize, String, String)>,
}

pub fn molien_closed_form_check(series: &DimensionSeries, numerator: &[i64], denominator: &[i64]) -> Result<ClosedFormCheck> {
    let d = series.max_degree();
    let expected = rational_function_series(numerator, denominator, d)?;
    let mismatch = series.coeffs.iter().enumerate().find_map(|(k, c)| {
        let e = expected.coeff(k);
        (Rational::from_integer(c.clone()) != *e).then(|| (k, c.to_string(), e.to_string()))
    });
    Ok(ClosedFormCheck {
        matches: mismatch.is_none(),
        compared_to: d,
        mismatch,
    })
}

/// Applies `v_a ↦ Σ_b A[a][b] v_b` to both families of block 1.
pub fn act(p: &MPoly, a: &CycloMatrix) -> Result<CPoly> {
    let q = a.size();
    let mut images: BTreeMap<Var, Vec<(Var, CycloNum)>> = BTreeMap::new();
    for kind in [Kind::Y, Kind::X] {
        for r in 0..q {
            let form = (0..q)
                .filter(|&c| !a.get(r, c).is_zero())
                .map(|c| (Var::new(kind, 1, c as u16), a.get(r, c).clone()))
                .collect();
            images.insert(Var::new(kind, 1, r as u16), form);
        }
    }
    CPoly::from(p).substitute_linear(&images)
}

/// How a generator was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Scalar,
    Monomial,
    Hadamard,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorVerdict {
    pub name: String,
    pub invariant: bool,
    pub method: Method,
    pub obstruction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub degree: Option<u32>,
    pub invariant: bool,
    pub generators: Vec<GeneratorVerdict>,
}

fn monomial_action(p: &MPoly, a: &CycloMatrix) -> Option<CPoly> {
    let q = a.size();
    let mut image = Vec::with_capacity(q);
    for r in 0..q {
        let nz: Vec<usize> = (0..q).filter(|&c| !a.get(r, c).is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        image.push((nz[0] as u16, a.get(r, nz[0]).clone()));
    }
    let mut out = CPoly::zero();
    for (m, c) in p.terms() {
        let mut coef = CycloNum::from(c.clone());
        let mut pairs = Vec::with_capacity(m.pairs().len());
        for &(v, e) in m.pairs() {
            if v.block != 1 || usize::from(v.label) >= q {
                return None;
            }
            let (to, s) = &image[usize::from(v.label)];
            coef = &coef * &s.pow(e);
            pairs.push((Var::new(v.kind, 1, *to), e));
        }
        out.add_term(Monomial::from_pairs(pairs), &coef);
    }
    Some(out)
}

/// Invariance under a monomial matrix whose nonzero entries are powers of `zeta_8`.
///
/// Such a matrix permutes monomials, so `p` is fixed iff every term lands on a
/// term with the same coefficient and the accumulated root of unity is 1.
fn monomial_zeta_invariant(p: &MPoly, a: &CycloMatrix) -> Option<bool> {
    let q = a.size();
    let powers: Vec<CycloNum> = (0..8).map(CycloNum::zeta_pow).collect();
    let mut image = Vec::with_capacity(q);
    for r in 0..q {
        let nz: Vec<usize> = (0..q).filter(|&c| !a.get(r, c).is_zero()).collect();
        if nz.len() != 1 {
            return None;
        }
        let k = powers.iter().position(|z| z == a.get(r, nz[0]))?;
        image.push((nz[0] as u16, k as u32));
    }
    for (m, c) in p.terms() {
        let mut k = 0u32;
        let mut pairs = Vec::with_capacity(m.pairs().len());
        for &(v, e) in m.pairs() {
            if v.block != 1 || usize::from(v.label) >= q {
                return None;
            }
            let (to, z) = image[usize::from(v.label)];
            k = (k + z * e) % 8;
            pairs.push((Var::new(v.kind, 1, to), e));
        }
        if k != 0 || p.coeff(&Monomial::from_pairs(pairs)) != *c {
            return Some(false);
        }
    }
    Some(true)
}

fn hadamard_scale(a: &CycloMatrix) -> Option<CycloNum> {
    let s = a.get(0, 0).clone();
    if s.is_zero() {
        return None;
    }
    let ms = -&s;
    let q = a.size();
    (0..q)
        .all(|r| (0..q).all(|c| *a.get(r, c) == if dot_parity(r, c) { ms.clone() } else { s.clone() }))
        .then_some(s)
}

/// Checks `p` against each named generator, given either as a `2^g` block or as `diag(A, A)`.
pub fn check_invariance_under(p: &MPoly, generators: &[(String, CycloMatrix)]) -> Result<InvarianceReport> {
    let degree = p.homogeneous_degree();
    let target = CPoly::from(p);
    let mut out = Vec::with_capacity(generators.len());
    for (name, full) in generators {
        let block = split_diagonal(full)
            .filter(|b| b.size() >= 2)
            .unwrap_or_else(|| full.clone());
        let q = block.size();
        if !q.is_power_of_two() || q < 2 {
            return Err(Error::InvalidInput(format!("generator {name} has size {}", full.size())));
        }
        let g = q.trailing_zeros() as usize;
        let verdict = if let Some(c) = block.as_scalar() {
            match degree {
                Some(n) => {
                    let f = c.pow(n);
                    let ok = p.is_zero() || f == CycloNum::one();
                    GeneratorVerdict {
                        name: name.clone(),
                        invariant: ok,
                        method: Method::Scalar,
                        obstruction: (!ok).then(|| format!("scalar {c} acts on degree {n} as {f}, not 1")),
                    }
                }
                None => {
                    let img = monomial_action(p, &block).ok_or_else(|| Error::InvalidInput("variables outside the genus".into()))?;
                    GeneratorVerdict {
                        name: name.clone(),
                        invariant: img == target,
                        method: Method::Scalar,
                        obstruction: None,
                    }
                }
            }
        } else if let Some(ok) = monomial_zeta_invariant(p, &block) {
            GeneratorVerdict {
                name: name.clone(),
                invariant: ok,
                method: Method::Monomial,
                obstruction: None,
            }
        } else if let Some(img) = monomial_action(p, &block) {
            GeneratorVerdict {
                name: name.clone(),
                invariant: img == target,
                method: Method::Monomial,
                obstruction: None,
            }
        } else if let (Some(s), Some(n)) = (hadamard_scale(&block), degree) {
            let h = hadamard(p, g, &[(Kind::Y, 1), (Kind::X, 1)])?;
            let img = CPoly::from(&h).scale(&s.pow(n));
            GeneratorVerdict {
                name: name.clone(),
                invariant: img == target,
                method: Method::Hadamard,
                obstruction: None,
            }
        } else {
            GeneratorVerdict {
                name: name.clone(),
                invariant: act(p, &block)? == target,
                method: Method::Generic,
                obstruction: None,
            }
        };
        out.push(verdict);
    }
    Ok(InvarianceReport {
        degree,
        invariant: out.iter().all(|v| v.invariant),
        generators: out,
    })
}

/// Invariance under every generator of `G_g`.
pub fn check_invariance(p: &MPoly, g: usize) -> Result<InvarianceReport> {
    check_invariance_under(p, &genus_generators(g))
}

/// `2^62 - 57`, the modulus of the rank filter.
pub const RANK_PRIME: u64 = 4_611_686_018_427_387_847;

fn mulmod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(RANK_PRIME)) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, RANK_PRIME - 2)
}

fn to_mod(r: &Rational) -> Option<u64> {
    let p = BigInt::from(RANK_PRIME);
    let n = r.numer().mod_floor(&p).to_u64()?;
    let d = r.denom().mod_floor(&p).to_u64()?;
    (d != 0).then(|| mulmod(n, invmod(d)))
}

/// Smallest `a/b` with `a ≡ b x (mod p)`, `|a|, b <= sqrt(p/2)`.
fn reconstruct(x: u64) -> Option<Rational> {
    let p = i128::from(RANK_PRIME);
    let bound = 1_518_500_249i128; // floor(sqrt(p/2))
    let (mut r0, mut r1) = (p, i128::from(x));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    Some(Rational::new(BigInt::from(a), BigInt::from(b)))
}

/// Row-echelon basis modulo [`RANK_PRIME`] with columns indexed by monomial.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    columns: HashMap<Monomial, usize>,
    /// Basis rows (sparse, pivot normalized to 1) keyed by pivot column.
    rows: BTreeMap<usize, BTreeMap<usize, u64>>,
    /// Combination of accepted inputs giving each basis row.
    combos: BTreeMap<usize, BTreeMap<usize, u64>>,
    accepted: Vec<MPoly>,
    relations: Vec<(MPoly, BTreeMap<usize, u64>)>,
    unreducible: bool,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[MPoly] {
        &self.accepted
    }

    fn row_of(&mut self, p: &MPoly) -> Option<BTreeMap<usize, u64>> {
        let mut row = BTreeMap::new();
        for (m, c) in p.terms() {
            let next = self.columns.len();
            let col = *self.columns.entry(m.clone()).or_insert(next);
            let v = to_mod(c)?;
            if v != 0 {
                row.insert(col, v);
            }
        }
        Some(row)
    }

    fn reduce(&self, row: &mut BTreeMap<usize, u64>, combo: &mut BTreeMap<usize, u64>) {
        loop {
            // lowest column of `row` that is a pivot
            let Some((&col, &v)) = row.iter().find(|(c, _)| self.rows.contains_key(c)) else {
                return;
            };
            let f = RANK_PRIME - v;
            for (&c, &b) in &self.rows[&col] {
                let e = row.entry(c).or_insert(0);
                *e = (*e + mulmod(f, b)) % RANK_PRIME;
                if *e == 0 {
                    row.remove(&c);
                }
            }
            for (&c, &b) in &self.combos[&col] {
                let e = combo.entry(c).or_insert(0);
                *e = (*e + mulmod(f, b)) % RANK_PRIME;
                if *e == 0 {
                    combo.remove(&c);
                }
            }
        }
    }

    /// Adds `p` if it is independent of the basis modulo the prime; returns whether it was added.
    pub fn try_add(&mut self, p: &MPoly) -> bool {
        let Some(mut row) = self.row_of(p) else {
            self.unreducible = true;
            return false;
        };
        let id = self.accepted.len();
        let mut combo = BTreeMap::new();
        combo.insert(id, 1u64);
        self.reduce(&mut row, &mut combo);
        let Some((&pivot, &v)) = row.iter().next() else {
            combo.remove(&id);
            self.relations.push((p.clone(), combo));
            return false;
        };
        let inv = invmod(v);
        for x in row.values_mut() {
            *x = mulmod(*x, inv);
        }
        for x in combo.values_mut() {
            *x = mulmod(*x, inv);
        }
        self.rows.insert(pivot, row);
        self.combos.insert(pivot, combo);
        self.accepted.push(p.clone());
        true
    }

    /// Proves that every rejected polynomial lies in the rational span of the basis.
    ///
    /// Each modular relation is lifted by rational reconstruction and checked exactly.
    pub fn certify_relations(&self) -> bool {
        if self.unreducible {
            return false;
        }
        self.relations.iter().all(|(p, combo)| {
            // p + Σ c_j basis_j ≡ 0
            let mut acc = p.clone();
            for (&j, &c) in combo {
                let Some(r) = reconstruct(c) else {
                    return false;
                };
                acc = acc.add(&self.accepted[j].scale(&r));
            }
            acc.is_zero()
        })
    }
}

/// Rank of a family of polynomials over `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanReport {
    pub rank: usize,
    pub modular_rank: usize,
    /// `exact` when the rank is proved over `Q`, otherwise how it was obtained.
    pub method: String,
}

/// Exact rank of a rational matrix by fraction-free elimination.
pub fn exact_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

fn coefficient_matrix(polys: &[MPoly]) -> Vec<Vec<Rational>> {
    let mut cols: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let n = cols.len();
            cols.entry(m).or_insert(n);
        }
    }
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Rational::zero(); cols.len()];
            for (m, c) in p.terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect()
}

/// Dimension of the `Q`-span of `polys`.
///
/// The modular rank is a lower bound that is exact for the accepted rows;
/// the rejected rows are then certified by lifted relations, falling back to
/// exact elimination.
pub fn span_dimension(polys: &[MPoly]) -> SpanReport {
    let mut sb = SpanBuilder::new();
    for p in polys {
        sb.try_add(p);
    }
    let modular_rank = sb.rank();
    if modular_rank == polys.len() || sb.certify_relations() {
        return SpanReport {
            rank: modular_rank,
            modular_rank,
            method: "exact".into(),
        };
    }
    let rank = exact_rank(&coefficient_matrix(polys));
    SpanReport {
        rank,
        modular_rank,
        method: "exact".into(),
    }
}

/// Outcome of a Jacobian rank test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub polynomials: usize,
    pub variables: usize,
    pub rank: usize,
    pub trials: usize,
    /// `"independent"` (proved) or `"probably dependent"`.
    pub verdict: String,
}

/// Jacobian rank of `polys` at random integer points.
///
/// Full rank at one point proves algebraic independence.
pub fn algebraic_independence(polys: &[MPoly], trials: usize, seed: u64) -> Result<IndependenceReport> {
    let vars: Vec<Var> = polys
        .iter()
        .flat_map(|p| p.vars())
        .collect::<alloc::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let partials: Vec<Vec<MPoly>> = polys.iter().map(|p| vars.iter().map(|&v| p.partial(v)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    let mut used = 0;
    for _ in 0..trials.max(1) {
        used += 1;
        let point: BTreeMap<Var, Rational> = vars
            .iter()
            .map(|&v| (v, Rational::from_integer(BigInt::from(rng.gen_range(-97i64..=97)))))
            .collect();
        let rows: Vec<Vec<Rational>> = partials
            .iter()
            .map(|row| row.iter().map(|d| d.eval(&point)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        best = best.max(exact_rank(&rows));
        if best == polys.len() {
            break;
        }
    }
    Ok(IndependenceReport {
        polynomials: polys.len(),
        variables: vars.len(),
        rank: best,
        trials: used,
        verdict: if best == polys.len() {
            "independent".into()
        } else {
            "probably dependent".into()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enums::{jacobi, weight_enumerator};
    use crate::gf2::{d_plus, golay24};
    use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn every_eighth(s: &DimensionSeries) -> Vec<BigInt> {
        s.coeffs.iter().step_by(8).cloned().collect()
    }

    #[test]
    fn dyadic_round_trip() {
        for (_, m) in genus_generators(2) {
            let d = DyadicMatrix::from_cyclo(&m).unwrap();
            assert_eq!(d.to_cyclo(), m);
        }
        let t = build_tg(1);
        let d = DyadicMatrix::from_cyclo(&t).unwrap();
        assert_eq!(d.mul(&d).unwrap().to_cyclo(), t.mul(&t));
    }

    #[test]
    fn trivial_group() {
        let g = close_group(&[CycloMatrix::identity(3)], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 1);
        let s = molien(&g, 6).unwrap();
        // C(m + d - 1, d) with m = 3
        assert_eq!(s.coeffs, big(&[1, 3, 6, 10, 15, 21, 28]));
    }

    #[test]
    fn cap_is_enforced() {
        let gens: Vec<CycloMatrix> = genus_generators(1).into_iter().map(|(_, m)| m).collect();
        assert_eq!(close_group(&gens, 50).unwrap_err(), Error::CapExceeded { cap: 50 });
    }

    #[test]
    fn genus_one_group() {
        let g = genus_group(1).unwrap();
        assert_eq!(g.order(), 192);
        assert_eq!(g.size(), 4);
        assert!(g.spot_check(200, 7));
        let s = molien(&g, 56).unwrap();
        assert_eq!(every_eighth(&s), big(&[1, 10, 40, 130, 283, 513, 883, 1372]));
        assert!(s.coeffs.iter().enumerate().all(|(d, c)| d % 8 == 0 || c.is_zero()));
        let num = [1, 8, 21, 58, 47, 35, 21, 1];
        let mut numerator = vec![0i64; 57];
        for (k, c) in num.iter().enumerate() {
            numerator[8 * k] = *c;
        }
        let den = product_of_one_minus(&[(8, 2), (24, 2)]);
        assert!(molien_closed_form_check(&s, &numerator, &den).unwrap().matches);
        let off = molien_closed_form_check(&s, &[1], &den).unwrap();
        assert!(!off.matches && off.mismatch.unwrap().0 == 8);
    }

    #[test]
    fn geometric_closed_form() {
        let s = DimensionSeries { coeffs: big(&[1; 10]) };
        assert!(molien_closed_form_check(&s, &[1], &[1, -1]).unwrap().matches);
    }

    #[test]
    fn bigraded_sums_to_total() {
        let g = genus_group(1).unwrap();
        let s = molien(&g, 24).unwrap();
        let b = molien_bigraded(&g, 24).unwrap();
        for n in 0..=24 {
            let sum: BigInt = (0..=n).map(|a| b[a][n - a].clone()).sum();
            assert_eq!(sum, s.coeffs[n]);
        }
        // one invariant per |T| at n = 8 apart from |T| = 4
        let row: Vec<BigInt> = (0..=8).map(|a| b[a][8 - a].clone()).collect();
        assert_eq!(row, big(&[1, 1, 1, 1, 2, 1, 1, 1, 1]));
    }

    #[test]
    fn d8_jacobi_invariant() {
        let c = d_plus(8).unwrap();
        for t in 0..=8 {
            let set: Vec<usize> = (1..=t).collect();
            let r = check_invariance(&jacobi(&c, &set, 1).unwrap(), 1).unwrap();
            assert!(r.invariant, "{r:?}");
        }
    }

    #[test]
    fn invariance_methods_agree_with_generic() {
        let c = d_plus(8).unwrap();
        let j = jacobi(&c, &[1, 2], 1).unwrap();
        let t = build_tg(1);
        let s = hadamard_scale(&t).unwrap();
        let fast = CPoly::from(&hadamard(&j, 1, &[(Kind::Y, 1), (Kind::X, 1)]).unwrap()).scale(&s.pow(8));
        assert_eq!(fast, act(&j, &t).unwrap());
        let e = build_eg(1);
        assert_eq!(monomial_action(&j, &e).unwrap(), act(&j, &e).unwrap());
        let p: MPoly = "x0^3*x1 + y1^4".parse().unwrap();
        for (_, m) in genus_generators(1).iter().skip(1) {
            let block = split_diagonal(m).unwrap();
            let slow = act(&p, &block).unwrap() == CPoly::from(&p);
            assert_eq!(monomial_zeta_invariant(&p, &block), Some(slow));
        }
    }

    #[test]
    fn eta_obstruction_reported() {
        let p: MPoly = "x0^4".parse().unwrap();
        let r = check_invariance(&p, 1).unwrap();
        let eta = r.generators.iter().find(|v| v.name == "eta8").unwrap();
        assert!(!eta.invariant && eta.obstruction.is_some());
        let id = vec![("I".to_string(), CycloMatrix::identity(2))];
        assert!(check_invariance_under(&p, &id).unwrap().invariant);
    }

    #[test]
    fn golay_genus_two_invariant_under_e() {
        let w = weight_enumerator(&golay24(), 2).unwrap();
        let e = vec![("E".to_string(), lift_tilde(&build_eg(2)))];
        assert!(check_invariance_under(&w, &e).unwrap().invariant);
    }

    #[test]
    fn d8_basis_spans_ten() {
        let c = d_plus(8).unwrap();
        let mut polys: Vec<MPoly> = (0..=8)
            .map(|t| jacobi(&c, &(1..=t).collect::<Vec<_>>(), 1).unwrap())
            .collect();
        polys.push(jacobi(&c, &[1, 2, 3, 5], 1).unwrap());
        let r = span_dimension(&polys);
        assert_eq!((r.rank, r.modular_rank), (10, 10));
        let mut products = Vec::new();
        for i in 0..10 {
            for j in i..10 {
                products.push(polys[i].mul(&polys[j]));
            }
        }
        let r = span_dimension(&products);
        assert_eq!(r.rank, 40);
        assert_eq!(exact_rank(&coefficient_matrix(&products)), 40);
        assert_eq!(span_dimension(&[polys[0].clone(), polys[0].clone()]).rank, 1);
    }

    #[test]
    fn reconstruction() {
        let x = mulmod(to_mod(&Rational::new(BigInt::from(-7), BigInt::from(12))).unwrap(), 1);
        assert_eq!(reconstruct(x).unwrap(), Rational::new(BigInt::from(-7), BigInt::from(12)));
    }

    #[test]
    fn independence() {
        let c = d_plus(8).unwrap();
        let w = weight_enumerator(&c, 1).unwrap();
        let full = jacobi(&c, &(1..=8).collect::<Vec<_>>(), 1).unwrap();
        let c24 = d_plus(24).unwrap();
        let w24 = weight_enumerator(&c24, 1).unwrap();
        let full24 = jacobi(&c24, &(1..=24).collect::<Vec<_>>(), 1).unwrap();
        let r = algebraic_independence(&[w.clone(), full, w24, full24], 3, 1).unwrap();
        assert_eq!((r.rank, r.verdict.as_str()), (4, "independent"));
        let r = algebraic_independence(&[w.clone(), w.mul(&w)], 3, 1).unwrap();
        assert_eq!(r.verdict, "probably dependent");
        let vars: Vec<MPoly> = ["x0", "x1", "y0", "y1"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(algebraic_independence(&vars, 1, 1).unwrap().rank, 4);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn span_is_order_and_scale_invariant(seed in any::<u64>(), k in 1i64..9) {
            let c = d_plus(8).unwrap();
            let mut polys: Vec<MPoly> = (0..=8)
                .map(|t| jacobi(&c, &(1..=t).collect::<Vec<_>>(), 1).unwrap())
                .collect();
            polys.push(polys[3].scale(&Rational::from_integer(BigInt::from(k))));
            let base = span_dimension(&polys).rank;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..polys.len()).rev() {
                polys.swap(i, Rng::gen_range(&mut rng, 0..=i));
            }
            polys[0] = polys[0].scale(&Rational::new(BigInt::from(-k), BigInt::from(3)));
            prop_assert_eq!(span_dimension(&polys).rank, base);
        }
    }
}
