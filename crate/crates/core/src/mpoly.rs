//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are `y_{i,a}` and `x_{i,a}`: a kind, a block index `i >= 1` and a
//! label `a` encoding an element of `F_2^g`. Non-split objects use block 1
//! and print as `x0`, `y3`; as soon as a polynomial mentions another block,
//! every variable prints as `x{i}_{a}`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{CycloNum, Scalar};
use crate::{Error, Rational, Result};

/// Variable family: `y` variables live inside the coordinate set, `x` outside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Y,
    X,
}

/// A variable `y_{block,label}` or `x_{block,label}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub block: u16,
    pub kind: Kind,
    pub label: u16,
}

impl Var {
    pub const fn new(kind: Kind, block: u16, label: u16) -> Self {
        Var { block, kind, label }
    }

    pub const fn x(label: u16) -> Self {
        Var::new(Kind::X, 1, label)
    }

    pub const fn y(label: u16) -> Self {
        Var::new(Kind::Y, 1, label)
    }

    fn name(&self, with_block: bool) -> String {
        let k = match self.kind {
            Kind::X => 'x',
            Kind::Y => 'y',
        };
        if with_block {
            format!("{k}{}_{}", self.block, self.label)
        } else {
            format!("{k}{}", self.label)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(self.block != 1))
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let bad = || Error::Parse(format!("bad variable name `{s}`"));
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('x') => Kind::X,
            Some('y') => Kind::Y,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let num = |t: &str| -> Result<u16> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match rest.split_once('_') {
            Some((b, a)) => {
                let block = num(b)?;
                if block == 0 {
                    return Err(bad());
                }
                Ok(Var::new(kind, block, num(a)?))
            }
            None => Ok(Var::new(kind, 1, num(rest)?)),
        }
    }
}

/// A monomial: variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Builds a monomial from `(var, exp)` pairs in any order; repeated variables add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// Degree in the variables selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(*v)).map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `v` by one; `None` if `v` does not occur.
    fn without_one(&self, v: Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Printing order: higher degree first, then lexicographically larger
    /// exponent vectors first with `y` before `x` and smaller labels first.
    pub fn display_cmp(&self, o: &Monomial) -> Ordering {
        o.degree().cmp(&self.degree()).then_with(|| {
            let vars: BTreeSet<Var> = self.0.iter().chain(&o.0).map(|&(v, _)| v).collect();
            for v in vars {
                match o.exponent(v).cmp(&self.exponent(v)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, with_block: bool) -> fmt::Result {
        // x factors first, then y, as in x0^3*x1^4*y0
        let mut factors: Vec<&(Var, u32)> = self.0.iter().collect();
        factors.sort_by_key(|(v, _)| (v.kind == Kind::Y, v.block, v.label));
        for (k, (v, e)) in factors.into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            f.write_str(&v.name(with_block))?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial with coefficients in `C`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with rational coefficients.
pub type MPoly = Poly<Rational>;
/// Polynomial with coefficients in `Q(zeta_8)`.
pub type CPoly = Poly<CycloNum>;

/// A linear form `sum c_j v_j`.
pub type LinearForm<D> = Vec<(Var, D)>;

impl From<Rational> for CycloNum {
    fn from(r: Rational) -> Self {
        CycloNum::from_rational(r)
    }
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(C::one(), Monomial::var(v))
    }

    pub fn term(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The common degree of all monomials, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.mul_ref(s))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.without_one(v) {
                let mut k = C::zero();
                for _ in 0..e {
                    k += &C::one();
                }
                out.add_term(rest, &c.mul_ref(&k));
            }
        }
        out
    }

    /// Renames variables; monomials that collide are merged.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::from_pairs(m.0.iter().map(|&(v, e)| (f(v), e))), c);
        }
        out
    }

    /// Substitutes a linear form for every variable.
    pub fn substitute_linear<D>(&self, images: &BTreeMap<Var, LinearForm<D>>) -> Result<Poly<D>>
    where
        D: Scalar + From<C>,
    {
        let mut powers: BTreeMap<(Var, u32), Poly<D>> = BTreeMap::new();
        let mut out = Poly::<D>::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::<D>::constant(D::from(c.clone()));
            for &(v, e) in &m.0 {
                if let alloc::collections::btree_map::Entry::Vacant(slot) = powers.entry((v, e)) {
                    let form = images.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                    let lin = Poly::from_terms(form.iter().map(|(w, d)| (Monomial::var(*w), d.clone())));
                    slot.insert(lin.pow(e));
                }
                acc = acc.mul(&powers[&(v, e)]);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Evaluates at a point given by a total assignment of the occurring variables.
    pub fn eval(&self, point: &BTreeMap<Var, C>) -> Result<C> {
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(&v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                for _ in 0..e {
                    acc = acc.mul_ref(x);
                }
            }
            total += &acc;
        }
        Ok(total)
    }

    /// Monomials in printing order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<(&Monomial, &C)> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    fn needs_block_names(&self) -> bool {
        self.vars().iter().any(|v| v.block != 1)
    }
}

impl MPoly {
    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl CPoly {
    /// Narrows to rational coefficients when every coefficient is rational.
    pub fn to_rational(&self) -> Option<MPoly> {
        self.terms
            .iter()
            .map(|(m, c)| c.to_rational().map(|r| (m.clone(), r)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(|terms| Poly { terms })
    }
}

impl From<&MPoly> for CPoly {
    fn from(p: &MPoly) -> CPoly {
        Poly {
            terms: p.terms.iter().map(|(m, c)| (m.clone(), CycloNum::from_rational(c.clone()))).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let with_block = self.needs_block_names();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let is_const = m.0.is_empty();
            if !a.is_one() || is_const {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
                if !is_const {
                    f.write_str("*")?;
                }
            }
            m.write(f, with_block)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let with_block = self.needs_block_names();
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if !m.0.is_empty() {
                f.write_str("*")?;
                m.write(f, with_block)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly({self})")
    }
}

/// Parses a rational literal `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let int = |t: &str| -> Result<BigInt> { t.trim().parse::<BigInt>().map_err(|_| bad()) };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = int(q)?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(int(p)?, q))
        }
        None => Ok(Rational::from_integer(int(s)?)),
    }
}

fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for MPoly {
    type Err = Error;

    /// Parses the canonical text form, e.g. `x0^7*y0 + 7*x0^3*x1^4*y0 - 1/2*x1_3`.
    fn from_str(s: &str) -> Result<MPoly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut p = MPoly::zero();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut sign = true;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = bytes[0] == b'+';
            start = 1;
        }
        let first_term = start;
        for i in first_term..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
                pieces.push((sign, &compact[start..i]));
                if i < bytes.len() {
                    sign = bytes[i] == b'+';
                    start = i + 1;
                }
            }
        }
        for (positive, piece) in pieces {
            if piece.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let mut coeff = Rational::one();
            let mut pairs = Vec::new();
            for factor in piece.split('*') {
                let first = factor.chars().next().ok_or_else(|| Error::Parse(format!("empty factor in `{piece}`")))?;
                if first.is_ascii_digit() {
                    coeff *= parse_rational(factor)?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (factor, 1),
                    };
                    pairs.push((name.parse::<Var>()?, exp));
                }
            }
            if !positive {
                coeff = -coeff;
            }
            p.add_term(Monomial::from_pairs(pairs), &coeff);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    vars: Vec<(Kind, u16, u16, u32)>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| JsonTerm {
                coeff: format_rational(c),
                vars: m.0.iter().map(|&(v, e)| (v.kind, v.block, v.label, e)).collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let terms: Vec<JsonTerm> = Vec::deserialize(d)?;
        let mut p = MPoly::zero();
        for t in terms {
            let c = parse_rational(&t.coeff).map_err(serde::de::Error::custom)?;
            if t.vars.iter().any(|&(_, b, _, _)| b == 0) {
                return Err(serde::de::Error::custom("block indices start at 1"));
            }
            let m = Monomial::from_pairs(t.vars.into_iter().map(|(k, b, l, e)| (Var::new(k, b, l), e)));
            p.add_term(m, &c);
        }
        Ok(p)
    }
}

/// Replaces every `y_{i,a}` by `x_{i,a}`.
pub fn y_to_x(p: &MPoly) -> MPoly {
    p.rename(|v| Var::new(Kind::X, v.block, v.label))
}

/// Swaps the `x` and `y` families.
pub fn swap_xy(p: &MPoly) -> MPoly {
    p.rename(|v| {
        let k = match v.kind {
            Kind::X => Kind::Y,
            Kind::Y => Kind::X,
        };
        Var::new(k, v.block, v.label)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn ring_basics() {
        assert_eq!(p("x0 + x1").mul(&p("x0 - x1")), p("x0^2 - x1^2"));
        let a = p("3*x0*y1 - 1/2*x1");
        assert!(a.add(&a.scale(&q(-1))).is_zero());
        let e = p("x0 + x1").pow(8);
        assert_eq!(e.coeff(&Monomial::from_pairs([(Var::x(0), 4), (Var::x(1), 4)])), q(70));
    }

    #[test]
    fn partials() {
        assert_eq!(p("x0^8").partial(Var::x(0)), p("8*x0^7"));
        assert!(p("x1^4").partial(Var::x(0)).is_zero());
        assert_eq!(p("x0^4*x1^4").partial(Var::x(0)), p("4*x0^3*x1^4"));
    }

    #[test]
    fn substitution() {
        let images: BTreeMap<Var, LinearForm<Rational>> = [
            (Var::x(0), vec![(Var::x(0), q(1)), (Var::x(1), q(1))]),
            (Var::x(1), vec![(Var::x(0), q(1)), (Var::x(1), q(-1))]),
        ]
        .into_iter()
        .collect();
        assert_eq!(p("x0^2 + x1^2").substitute_linear(&images).unwrap(), p("2*x0^2 + 2*x1^2"));
        let id: BTreeMap<Var, LinearForm<Rational>> =
            [(Var::x(0), vec![(Var::x(0), q(1))]), (Var::x(1), vec![(Var::x(1), q(1))])].into_iter().collect();
        let f = p("x0^5*x1 - 3*x1^6");
        assert_eq!(f.substitute_linear(&id).unwrap(), f);
        let mut partial = images.clone();
        partial.remove(&Var::x(1));
        assert!(matches!(f.substitute_linear(&partial), Err(Error::MissingVariable(_))));
    }

    #[test]
    fn zeta_scaling_fixes_degree_eight() {
        let f = p("x0^8 + 14*x0^4*x1^4 + x1^8");
        let images: BTreeMap<Var, LinearForm<CycloNum>> =
            f.vars().into_iter().map(|v| (v, vec![(v, CycloNum::zeta())])).collect();
        let image = f.substitute_linear(&images).unwrap();
        assert_eq!(image.to_rational(), Some(f));
    }

    #[test]
    fn evaluation() {
        let f = p("x0^8 + 14*x0^4*x1^4 + x1^8");
        let ones: BTreeMap<Var, Rational> = [(Var::x(0), q(1)), (Var::x(1), q(1))].into_iter().collect();
        assert_eq!(f.eval(&ones).unwrap(), q(16));
        let zeros: BTreeMap<Var, Rational> = [(Var::x(0), q(0)), (Var::x(1), q(0))].into_iter().collect();
        assert_eq!(f.eval(&zeros).unwrap(), q(0));
        let pt: BTreeMap<Var, Rational> = [(Var::x(0), q(3)), (Var::x(1), q(2))].into_iter().collect();
        assert_eq!(p("x0^2 - x1^2").eval(&pt).unwrap(), q(5));
        assert!(p("y0").eval(&pt).is_err());
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("x1^8 + x0^8 + 14*x1^4*x0^4").to_string(), "x0^8 + 14*x0^4*x1^4 + x1^8");
        let j = p("x1^7*y1 + 7*y1*x0^4*x1^3 + 7*x0^3*x1^4*y0 + x0^7*y0");
        assert_eq!(j.to_string(), "x0^7*y0 + 7*x0^3*x1^4*y0 + 7*x0^4*x1^3*y1 + x1^7*y1");
        assert_eq!(p("x1_0*x2_0 + x1_1*x2_1").to_string(), "x1_0*x2_0 + x1_1*x2_1");
        assert_eq!(p("-2 + 1/3*x0").to_string(), "1/3*x0 - 2");
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        assert!("x0^".parse::<MPoly>().is_err());
        assert!("z3".parse::<MPoly>().is_err());
        assert!("x0_1".parse::<MPoly>().is_err());
        assert!("".parse::<MPoly>().is_err());
        assert!("1/0*x0".parse::<MPoly>().is_err());
    }

    #[test]
    fn json_form() {
        let f = p("x0^7*y0 - 1/2*x1_3");
        let terms: Vec<JsonTerm> = f
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| JsonTerm {
                coeff: format_rational(c),
                vars: m.0.iter().map(|&(v, e)| (v.kind, v.block, v.label, e)).collect(),
            })
            .collect();
        assert_eq!(terms[0].vars, vec![(Kind::Y, 1, 0, 1), (Kind::X, 1, 0, 7)]);
        assert_eq!(terms[1].coeff, "-1/2");
    }

    #[test]
    fn swaps() {
        assert_eq!(swap_xy(&p("x0^2*y1")), p("y0^2*x1"));
        assert_eq!(y_to_x(&p("x0*y0 + x0^2")), p("2*x0^2"));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn var() -> impl Strategy<Value = Var> {
        (any::<bool>(), 1u16..3, 0u16..4).prop_map(|(x, b, l)| Var::new(if x { Kind::X } else { Kind::Y }, b, l))
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-9i64..10, 1i64..4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((rat(), proptest::collection::vec((var(), 1u32..3), 0..3)), 0..5)
            .prop_map(|terms| MPoly::from_terms(terms.into_iter().map(|(c, m)| (Monomial::from_pairs(m), c))))
    }

    fn hom_poly(d: u32) -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((rat(), proptest::collection::vec(var(), d as usize)), 1..5).prop_map(|terms| {
            MPoly::from_terms(terms.into_iter().map(|(c, vs)| (Monomial::from_pairs(vs.into_iter().map(|v| (v, 1))), c)))
        })
    }

    fn vars_of(ps: &[&MPoly]) -> BTreeSet<Var> {
        ps.iter().flat_map(|p| p.vars()).collect()
    }

    fn map_of(vars: &BTreeSet<Var>, forms: &[Vec<(u16, i64)>]) -> BTreeMap<Var, LinearForm<Rational>> {
        let list: Vec<Var> = vars.iter().copied().collect();
        list.iter()
            .enumerate()
            .map(|(i, &v)| {
                let form = forms[i % forms.len()]
                    .iter()
                    .map(|&(j, c)| (list[j as usize % list.len()], Rational::from_integer(BigInt::from(c))))
                    .collect();
                (v, form)
            })
            .collect()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn text_round_trip(a in poly()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<MPoly>().unwrap(), a);
        }

        #[test]
        fn homogeneous_scaling(a in hom_poly(3), lambda in rat(), pt in proptest::collection::vec(rat(), 16)) {
            let vars: Vec<Var> = a.vars().into_iter().collect();
            let point: BTreeMap<Var, Rational> = vars.iter().zip(&pt).map(|(v, r)| (*v, r.clone())).collect();
            let scaled: BTreeMap<Var, Rational> = point.iter().map(|(v, r)| (*v, r * &lambda)).collect();
            let l3 = &lambda * &lambda * &lambda;
            prop_assert_eq!(a.eval(&scaled).unwrap(), a.eval(&point).unwrap() * l3);
        }

        #[test]
        fn substitution_composes(
            a in poly(),
            fa in proptest::collection::vec(proptest::collection::vec((0u16..8, -2i64..3), 1..3), 1..4),
            fb in proptest::collection::vec(proptest::collection::vec((0u16..8, -2i64..3), 1..3), 1..4),
        ) {
            let vars = vars_of(&[&a]);
            prop_assume!(!vars.is_empty());
            let ma = map_of(&vars, &fa);
            let mb = map_of(&vars, &fb);
            // (B o A)(v) = A(v) with B substituted inside
            let composed: BTreeMap<Var, LinearForm<Rational>> = ma
                .iter()
                .map(|(v, form)| {
                    let lin = MPoly::from_terms(form.iter().map(|(w, c)| (Monomial::var(*w), c.clone())));
                    let img = lin.substitute_linear(&mb).unwrap();
                    (*v, img.terms().map(|(m, c)| (m.pairs()[0].0, c.clone())).collect())
                })
                .collect();
            let lhs = a.substitute_linear(&ma).unwrap().substitute_linear(&mb).unwrap();
            prop_assert_eq!(lhs, a.substitute_linear(&composed).unwrap());
        }

        #[test]
        fn json_round_trip(a in poly()) {
            let terms: Vec<JsonTerm> = a
                .sorted_terms()
                .into_iter()
                .map(|(m, c)| JsonTerm {
                    coeff: format_rational(c),
                    vars: m.pairs().iter().map(|&(v, e)| (v.kind, v.block, v.label, e)).collect(),
                })
                .collect();
            let mut back = MPoly::zero();
            for t in terms {
                let m = Monomial::from_pairs(t.vars.into_iter().map(|(k, b, l, e)| (Var::new(k, b, l), e)));
                back.add_term(m, &parse_rational(&t.coeff).unwrap());
            }
            prop_assert_eq!(back, a);
        }
    }
}
