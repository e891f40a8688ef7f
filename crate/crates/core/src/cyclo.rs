//! Exact arithmetic in `Q(zeta_8)`, square matrices over it, and truncated
//! power series.
//!
//! An element is stored as `c0 + c1*z + c2*z^2 + c3*z^3` with `z = zeta_8`
//! and `z^4 = -1`; this representation is unique, so equality and hashing are
//! component-wise. Useful constants: `i = z^2`, `sqrt(2) = z - z^3`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// An element of `Q(zeta_8)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloNum {
    c: [Rational; 4],
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl CycloNum {
    pub fn new(c: [Rational; 4]) -> Self {
        CycloNum { c }
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloNum {
            c: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `zeta_8^k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c: [Rational; 4] = Default::default();
        if k < 4 {
            c[k] = Rational::one();
        } else {
            c[k - 4] = -Rational::one();
        }
        CycloNum { c }
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta_pow(1) - &Self::zeta_pow(3)
    }

    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.c[0].clone())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloNum {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// The Galois automorphism `zeta -> zeta^k` for odd `k`.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = CycloNum::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if !cj.is_zero() {
                out += &Self::zeta_pow(j as i64 * k).scale(cj);
            }
        }
        out
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> Rational {
        let p = self * &self.galois(3) * self.galois(5) * self.galois(7);
        p.to_rational().expect("the norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let n = (self * &others).to_rational().expect("the norm is rational");
        Ok(others.scale(&n.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycloNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for CycloNum {
    fn zero() -> Self {
        CycloNum::default()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for CycloNum {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        CycloNum {
            c: [&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2], &self.c[3] + &o.c[3]],
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        CycloNum {
            c: [&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2], &self.c[3] - &o.c[3]],
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        let mut out: [Rational; 4] = Default::default();
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let e = j + k;
                if e < 4 {
                    out[e] += p;
                } else {
                    out[e - 4] -= p;
                }
            }
        }
        CycloNum { c: out }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, o: &CycloNum) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycloNum {
    /// Renders `a + b*i + c*sqrt2 + d*i*sqrt2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let parts = [
            (self.c[0].clone(), ""),
            (self.c[2].clone(), "i"),
            ((&self.c[1] - &self.c[3]) * &half, "sqrt2"),
            ((&self.c[1] + &self.c[3]) * &half, "i*sqrt2"),
        ];
        let mut first = true;
        for (v, name) in parts.iter().filter(|(v, _)| !v.is_zero()) {
            let sign = if v.is_negative() { "-" } else { "+" };
            if first {
                if v.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = v.abs();
            match (*name, a.is_one()) {
                ("", _) => f.write_str(&fmt_rational(&a))?,
                (n, true) => f.write_str(n)?,
                (n, false) => write!(f, "{}*{n}", fmt_rational(&a))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}

/// Coefficient rings usable in [`PowerSeries`].
pub trait Scalar:
    Clone + PartialEq + Zero + One + for<'a> AddAssign<&'a Self> + fmt::Debug
{
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn try_inv(&self) -> Result<Self>;
}

impl Scalar for Rational {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl Scalar for CycloNum {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
}

/// A power series truncated after degree `max_degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

pub type PowerSeriesQ = PowerSeries<Rational>;

impl<T: Scalar> PowerSeries<T> {
    /// Builds a series from its leading coefficients, truncated or zero-padded to `max_degree`.
    pub fn new(mut coeffs: Vec<T>, max_degree: usize) -> Self {
        coeffs.resize(max_degree + 1, T::zero());
        PowerSeries { coeffs }
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &T {
        &self.coeffs[d]
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.max_degree().min(o.max_degree());
        let mut out = vec![T::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &a.mul_ref(b);
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn scale(&self, s: &T) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(s)).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let c0inv = self.coeffs[0].try_inv()?;
        let d = self.max_degree();
        let mut out: Vec<T> = Vec::with_capacity(d + 1);
        out.push(c0inv.clone());
        for k in 1..=d {
            let mut acc = T::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += &a.mul_ref(&out[k - j]);
                }
            }
            out.push(acc.neg_ref().mul_ref(&c0inv));
        }
        Ok(PowerSeries { coeffs: out })
    }
}

impl PowerSeries<CycloNum> {
    /// Narrows every coefficient to `Q`, failing on the first non-rational one.
    pub fn to_rational(&self) -> Result<PowerSeriesQ> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| {
                c.to_rational()
                    .ok_or_else(|| Error::Inconsistent(format!("coefficient of t^{d} is {c}, not rational")))
            })
            .collect::<Result<Vec<_>>>()
            .map(|coeffs| PowerSeries { coeffs })
    }
}

/// Expands `numerator / denominator` (integer polynomials, lowest degree first) to degree `max_degree`.
pub fn rational_function_series(numerator: &[i64], denominator: &[i64], max_degree: usize) -> Result<PowerSeriesQ> {
    let num = PowerSeriesQ::new(numerator.iter().map(|&c| rat(c)).collect(), max_degree);
    let den = PowerSeriesQ::new(denominator.iter().map(|&c| rat(c)).collect(), max_degree);
    Ok(num.mul(&den.inverse()?))
}

/// A square matrix over `Q(zeta_8)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    m: usize,
    entries: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> CycloNum) -> Self {
        let mut entries = Vec::with_capacity(m * m);
        for r in 0..m {
            for c in 0..m {
                entries.push(f(r, c));
            }
        }
        CycloMatrix { m, entries }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, CycloNum::one())
    }

    pub fn scalar(m: usize, s: CycloNum) -> Self {
        Self::from_fn(m, |r, c| if r == c { s.clone() } else { CycloNum::zero() })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.entries[r * self.m + c]
    }

    pub fn entries(&self) -> &[CycloNum] {
        &self.entries
    }

    pub fn mul(&self, o: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.m, o.m, "matrix sizes differ");
        let m = self.m;
        let mut out = vec![CycloNum::zero(); m * m];
        for r in 0..m {
            for k in 0..m {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..m {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out[r * m + c] += &(a * b);
                    }
                }
            }
        }
        CycloMatrix { m, entries: out }
    }

    pub fn add(&self, o: &CycloMatrix) -> CycloMatrix {
        CycloMatrix {
            m: self.m,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &CycloNum) -> CycloMatrix {
        CycloMatrix {
            m: self.m,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> CycloMatrix {
        let mut base = self.clone();
        let mut acc = CycloMatrix::identity(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero();
        for r in 0..self.m {
            t += self.get(r, r);
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        *self == CycloMatrix::identity(self.m)
    }

    /// The common diagonal value when the matrix is scalar.
    pub fn as_scalar(&self) -> Option<CycloNum> {
        let s = self.get(0, 0).clone();
        (*self == CycloMatrix::scalar(self.m, s.clone())).then_some(s)
    }

    /// Whether the matrix has exactly one nonzero entry, equal to 1, in each row and column.
    pub fn is_permutation(&self) -> bool {
        let one = CycloNum::one();
        (0..self.m).all(|r| {
            let row: Vec<&CycloNum> = (0..self.m).map(|c| self.get(r, c)).filter(|x| !x.is_zero()).collect();
            row.len() == 1 && *row[0] == one
        }) && (0..self.m).all(|c| (0..self.m).filter(|&r| !self.get(r, c).is_zero()).count() == 1)
    }

    /// Coefficients `1, c_1, ..., c_m` of `det(I - tA)` by the Faddeev-LeVerrier recursion.
    pub fn det_one_minus_t(&self) -> Vec<CycloNum> {
        let m = self.m;
        let mut coeffs = vec![CycloNum::one()];
        let mut mk = CycloMatrix::from_fn(m, |_, _| CycloNum::zero());
        for k in 1..=m {
            let shifted = mk.add(&CycloMatrix::scalar(m, coeffs[k - 1].clone()));
            mk = self.mul(&shifted);
            let tr = mk.trace();
            coeffs.push((-&tr).scale(&Rational::new(BigInt::one(), BigInt::from(k))));
        }
        coeffs
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix {}x{} [", self.m, self.m)?;
        for r in 0..self.m {
            let row: Vec<String> = (0..self.m).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// `1 / det(I - tA)` truncated at degree `max_degree`.
pub fn char_series_inverse(a: &CycloMatrix, max_degree: usize) -> PowerSeries<CycloNum> {
    PowerSeries::new(a.det_one_minus_t(), max_degree)
        .inverse()
        .expect("constant term of det(I - tA) is 1")
}

/// An affine map `a -> M a + v` of `F_2^g`.
///
/// Labels encode `a = (a_1, ..., a_g)` as `sum a_j 2^(g-j)`. The matrix is
/// stored by columns: `cols[j]` is the label of `M e_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub g: usize,
    pub v: usize,
    pub cols: Vec<usize>,
}

fn independent(labels: &[usize]) -> bool {
    let mut basis: Vec<usize> = Vec::new();
    for &l in labels {
        let mut x = l;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x == 0 {
            return false;
        }
        basis.push(x);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

impl AffineMap {
    pub fn new(g: usize, v: usize, cols: Vec<usize>) -> Result<Self> {
        if cols.len() != g || v >= 1 << g || cols.iter().any(|&c| c >= 1 << g) {
            return Err(Error::InvalidInput(format!("affine map data does not fit genus {g}")));
        }
        if !independent(&cols) {
            return Err(Error::Singular);
        }
        Ok(AffineMap { g, v, cols })
    }

    pub fn apply(&self, a: usize) -> usize {
        let mut out = self.v;
        for (j, &col) in self.cols.iter().enumerate() {
            if (a >> (self.g - 1 - j)) & 1 == 1 {
                out ^= col;
            }
        }
        out
    }

    /// Every element of `F_2^g x| GL(g, F_2)`, in a fixed order.
    pub fn all(g: usize) -> Vec<AffineMap> {
        let q = 1usize << g;
        let mut mats: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..g {
            mats = mats
                .into_iter()
                .flat_map(|m| {
                    (1..q).filter_map(move |c| {
                        let mut n = m.clone();
                        n.push(c);
                        independent(&n).then_some(n)
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for cols in mats {
            for v in 0..q {
                out.push(AffineMap { g, v, cols: cols.clone() });
            }
        }
        out
    }
}

/// Parity of `a . b` for labels `a`, `b`.
pub fn dot_parity(a: usize, b: usize) -> bool {
    (a & b).count_ones() % 2 == 1
}

/// `T_g = ((1+i)/2)^g ((-1)^{a.b})`.
pub fn build_tg(g: usize) -> CycloMatrix {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let base = (&CycloNum::one() + &CycloNum::i()).scale(&half);
    let s = base.pow(g as u32);
    let ms = -&s;
    CycloMatrix::from_fn(1 << g, |a, b| if dot_parity(a, b) { ms.clone() } else { s.clone() })
}

/// `E_g = diag(1, i, 1, i, ...)`.
pub fn build_eg(g: usize) -> CycloMatrix {
    CycloMatrix::from_fn(1 << g, |a, b| {
        if a != b {
            CycloNum::zero()
        } else if a & 1 == 1 {
            CycloNum::i()
        } else {
            CycloNum::one()
        }
    })
}

/// The permutation matrix with entry 1 at `(a, sigma(a))`.
pub fn build_mg(sigma: &AffineMap) -> CycloMatrix {
    CycloMatrix::from_fn(1 << sigma.g, |a, b| {
        if sigma.apply(a) == b {
            CycloNum::one()
        } else {
            CycloNum::zero()
        }
    })
}

/// The block-diagonal matrix `diag(A, A)`.
pub fn lift_tilde(a: &CycloMatrix) -> CycloMatrix {
    let m = a.size();
    CycloMatrix::from_fn(2 * m, |r, c| {
        if r / m == c / m {
            a.get(r % m, c % m).clone()
        } else {
            CycloNum::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycloNum::zeta().pow(8), CycloNum::one());
        assert_eq!(CycloNum::i().pow(2), CycloNum::from_int(-1));
        assert_eq!(CycloNum::sqrt2().pow(2), CycloNum::from_int(2));
    }

    #[test]
    fn eta8_times_sqrt2() {
        // ((1+i)/2) * sqrt2 expands to (z + z^3 + z^3 - z^5)/2 = z
        let one_plus_i = &CycloNum::one() + &CycloNum::i();
        let lhs = &one_plus_i.scale(&q(1, 2)) * &CycloNum::sqrt2();
        assert_eq!(lhs, CycloNum::zeta());
        assert_eq!(&CycloNum::zeta() * &CycloNum::sqrt2(), one_plus_i);
    }

    #[test]
    fn inverse_and_conj() {
        let z = CycloNum::new([q(1, 2), q(-3, 1), q(0, 1), q(5, 7)]);
        assert_eq!(&z * &z.inv().unwrap(), CycloNum::one());
        assert_eq!(z.conj().conj(), z);
        assert_eq!(CycloNum::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(CycloNum::zeta().conj(), CycloNum::zeta_pow(7));
    }

    #[test]
    fn real_subfield_norm() {
        // a + b*sqrt2 times its Galois conjugate a - b*sqrt2
        let z = &CycloNum::from_int(3) + &CycloNum::sqrt2().scale(&q(2, 5));
        assert_eq!(z.conj(), z);
        assert_eq!((&z * &z.galois(3)).to_rational(), Some(q(9, 1) - q(8, 25)));
        let w = CycloNum::new([q(1, 1), q(2, 1), q(-1, 3), q(4, 1)]);
        let r = &w * &w.conj();
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn display_form() {
        assert_eq!(format!("{}", CycloNum::zeta()), "1/2*sqrt2 + 1/2*i*sqrt2");
        assert_eq!(format!("{}", CycloNum::sqrt2()), "sqrt2");
        assert_eq!(format!("{}", &CycloNum::from_int(-2) - &CycloNum::i()), "-2 - i");
        assert_eq!(format!("{}", CycloNum::zero()), "0");
    }

    #[test]
    fn t1_squares_to_i() {
        // ((1+i)/2)^2 = i/2 and the +-1 matrix squares to 2I
        let t1 = build_tg(1);
        assert_eq!(t1.mul(&t1), CycloMatrix::scalar(2, CycloNum::i()));
        let t2 = build_tg(2);
        assert_eq!(t2.mul(&t2).as_scalar(), Some(CycloNum::from_int(-1)));
    }

    #[test]
    fn e1_and_m1() {
        let e1 = build_eg(1);
        assert_eq!(e1.get(1, 1), &CycloNum::i());
        assert!(e1.pow(4).is_identity());
        let swap = build_mg(&AffineMap::new(1, 1, vec![1]).unwrap());
        assert!(swap.is_permutation());
        assert_eq!(swap.get(0, 1), &CycloNum::one());
        assert_eq!(swap.get(1, 0), &CycloNum::one());
        assert!(swap.get(0, 0).is_zero());
    }

    #[test]
    fn affine_group_sizes() {
        assert_eq!(AffineMap::all(1).len(), 2);
        assert_eq!(AffineMap::all(2).len(), 24);
        assert_eq!(AffineMap::all(3).len(), 8 * 168);
        assert_eq!(AffineMap::new(2, 0, vec![1, 1]), Err(Error::Singular));
    }

    #[test]
    fn lift_is_multiplicative() {
        let a = build_tg(1);
        let b = build_eg(1);
        assert_eq!(lift_tilde(&a.mul(&b)), lift_tilde(&a).mul(&lift_tilde(&b)));
    }

    #[test]
    fn series_of_identity_and_diag_i() {
        let s = char_series_inverse(&CycloMatrix::identity(3), 6).to_rational().unwrap();
        for d in 0..=6 {
            let expect = (d as i64 + 1) * (d as i64 + 2) / 2;
            assert_eq!(s.coeff(d), &rat(expect));
        }
        let s = char_series_inverse(&CycloMatrix::scalar(1, CycloNum::i()), 9);
        for d in 0..=9 {
            assert_eq!(s.coeff(d), &CycloNum::zeta_pow(2 * d as i64));
        }
        assert!(s.to_rational().is_err());
    }

    #[test]
    fn rational_function_expansion() {
        let s = rational_function_series(&[1], &[1, -1], 5).unwrap();
        assert!(s.coeffs().iter().all(|c| c.is_one()));
    }
}
