use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Rational};

/// Degree of the 72nd cyclotomic field over the rationals.
pub const DEG: usize = 24;
/// Order of the primitive root of unity `z` generating the field.
pub const ORDER: i64 = 72;

/// `POWERS[k]` is `z^k` reduced modulo `z^24 - z^12 + 1`.
const POWERS: [[i8; DEG]; 72] = build_powers();

const fn build_powers() -> [[i8; DEG]; 72] {
    let mut out = [[0i8; DEG]; 72];
    let mut cur = [0i8; DEG];
    cur[0] = 1;
    let mut k = 0;
    while k < 72 {
        out[k] = cur;
        // multiply by z, then rewrite z^24 = z^12 - 1
        let top = cur[DEG - 1];
        let mut j = DEG - 1;
        while j > 0 {
            cur[j] = cur[j - 1];
            j -= 1;
        }
        cur[0] = -top;
        cur[12] += top;
        k += 1;
    }
    out
}

/// Units of Z/72: the exponents of the Galois automorphisms `z -> z^j`.
pub const GALOIS_UNITS: [i64; DEG] = [
    1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49, 53, 55, 59, 61, 65, 67, 71,
];

/// Exact element of Q(z), z = exp(2 pi i / 72), stored as integer numerators over
/// the power basis `1, z, ..., z^23` and one common positive denominator.
///
/// Values whose reduced numerators and denominator fit in `i64` are stored inline;
/// larger values spill to big integers. The representation is canonical, so the
/// derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: [i64; DEG], den: i64 },
    Big(Box<BigRepr>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct BigRepr {
    num: Vec<BigInt>,
    den: BigInt,
}

/// Integer backend for the generic kernels. `i128` reports overflow through `None`.
trait Coef: Clone {
    fn czero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_z(&self) -> bool;
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn sub_c(&self, o: &Self) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
    fn gcd_c(&self, o: &Self) -> Self;
    fn div_c(&self, o: &Self) -> Self;
    fn is_one_c(&self) -> bool;
}

impl Coef for i128 {
    fn czero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_z(&self) -> bool {
        *self == 0
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn gcd_c(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_c(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one_c(&self) -> bool {
        *self == 1
    }
}

impl Coef for BigInt {
    fn czero() -> Self {
        BigInt::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_z(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub_c(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn gcd_c(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_c(&self, o: &Self) -> Self {
        self / o
    }
    fn is_one_c(&self) -> bool {
        self.is_one()
    }
}

type Parts<C> = (Vec<C>, C);

/// Divides out the content so that the numerators and denominator are coprime.
fn normalize<C: Coef>(mut num: Vec<C>, mut den: C) -> Parts<C> {
    if num.iter().all(Coef::is_z) {
        return (num, C::from_i64(1));
    }
    let mut g = den.clone();
    for c in &num {
        if g.is_one_c() {
            break;
        }
        if !c.is_z() {
            g = g.gcd_c(c);
        }
    }
    if !g.is_one_c() {
        for c in num.iter_mut() {
            if !c.is_z() {
                *c = c.div_c(&g);
            }
        }
        den = den.div_c(&g);
    }
    (num, den)
}

fn k_add<C: Coef>(an: &[C], ad: &C, bn: &[C], bd: &C, negate: bool) -> Option<Parts<C>> {
    let g = ad.gcd_c(bd);
    let fa = bd.div_c(&g);
    let fb = ad.div_c(&g);
    let den = fa.mul_c(ad)?;
    let mut out = Vec::with_capacity(DEG);
    for k in 0..DEG {
        let x = if an[k].is_z() { C::czero() } else { an[k].mul_c(&fa)? };
        let y = if bn[k].is_z() { C::czero() } else { bn[k].mul_c(&fb)? };
        out.push(if negate { x.sub_c(&y)? } else { x.add_c(&y)? });
    }
    Some(normalize(out, den))
}

fn k_mul<C: Coef>(an: &[C], ad: &C, bn: &[C], bd: &C) -> Option<Parts<C>> {
    let mut acc: Vec<C> = vec![C::czero(); 2 * DEG - 1];
    for i in 0..DEG {
        if an[i].is_z() {
            continue;
        }
        for j in 0..DEG {
            if bn[j].is_z() {
                continue;
            }
            let p = an[i].mul_c(&bn[j])?;
            acc[i + j] = acc[i + j].add_c(&p)?;
        }
    }
    // z^k = z^(k-12) - z^(k-24) for k >= 24, applied from the top down.
    for k in (DEG..2 * DEG - 1).rev() {
        if acc[k].is_z() {
            continue;
        }
        let t = std::mem::replace(&mut acc[k], C::czero());
        acc[k - 12] = acc[k - 12].add_c(&t)?;
        acc[k - 24] = acc[k - 24].sub_c(&t)?;
    }
    acc.truncate(DEG);
    Some(normalize(acc, ad.mul_c(bd)?))
}

/// Applies `z -> z^e` for a unit `e`.
fn k_galois<C: Coef>(an: &[C], ad: &C, e: i64) -> Option<Parts<C>> {
    let mut out: Vec<C> = vec![C::czero(); DEG];
    for (k, c) in an.iter().enumerate() {
        if c.is_z() {
            continue;
        }
        let row = &POWERS[(k as i64 * e).rem_euclid(ORDER) as usize];
        for j in 0..DEG {
            match row[j] {
                0 => {}
                1 => out[j] = out[j].add_c(c)?,
                -1 => out[j] = out[j].sub_c(c)?,
                v => out[j] = out[j].add_c(&c.mul_c(&C::from_i64(v as i64))?)?,
            }
        }
    }
    Some(normalize(out, ad.clone()))
}

fn k_scale<C: Coef>(an: &[C], ad: &C, p: &C, q: &C) -> Option<Parts<C>> {
    let mut out = Vec::with_capacity(DEG);
    for c in an {
        out.push(if c.is_z() { C::czero() } else { c.mul_c(p)? });
    }
    Some(normalize(out, ad.mul_c(q)?))
}

impl Cyclotomic {
    fn from_small_parts((num, den): Parts<i128>) -> Self {
        let mut small = [0i64; DEG];
        let fits = den <= i64::MAX as i128
            && num.iter().zip(small.iter_mut()).all(|(c, s)| match i64::try_from(*c) {
                Ok(v) => {
                    *s = v;
                    true
                }
                Err(_) => false,
            });
        if fits {
            Cyclotomic(Repr::Small { num: small, den: den as i64 })
        } else {
            Self::from_big_parts((num.into_iter().map(BigInt::from).collect(), BigInt::from(den)))
        }
    }

    fn from_big_parts((num, den): Parts<BigInt>) -> Self {
        let mut small = [0i64; DEG];
        let fits = den.to_i64().is_some()
            && num.iter().zip(small.iter_mut()).all(|(c, s)| match c.to_i64() {
                Some(v) => {
                    *s = v;
                    true
                }
                None => false,
            });
        if fits {
            Cyclotomic(Repr::Small { num: small, den: den.to_i64().unwrap() })
        } else {
            Cyclotomic(Repr::Big(Box::new(BigRepr { num, den })))
        }
    }

    fn small_parts(&self) -> Option<Parts<i128>> {
        match &self.0 {
            Repr::Small { num, den } => {
                Some((num.iter().map(|&c| c as i128).collect(), *den as i128))
            }
            Repr::Big(_) => None,
        }
    }

    fn big_parts(&self) -> Parts<BigInt> {
        match &self.0 {
            Repr::Small { num, den } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big(b) => (b.num.clone(), b.den.clone()),
        }
    }

    fn binary(
        &self,
        other: &Self,
        small: impl Fn(&[i128], &i128, &[i128], &i128) -> Option<Parts<i128>>,
        big: impl Fn(&[BigInt], &BigInt, &[BigInt], &BigInt) -> Option<Parts<BigInt>>,
    ) -> Self {
        if let (Some((an, ad)), Some((bn, bd))) = (self.small_parts(), other.small_parts()) {
            if let Some(r) = small(&an, &ad, &bn, &bd) {
                return Self::from_small_parts(r);
            }
        }
        let (an, ad) = self.big_parts();
        let (bn, bd) = other.big_parts();
        Self::from_big_parts(big(&an, &ad, &bn, &bd).expect("big integer arithmetic cannot overflow"))
    }

    fn unary(
        &self,
        small: impl Fn(&[i128], &i128) -> Option<Parts<i128>>,
        big: impl Fn(&[BigInt], &BigInt) -> Option<Parts<BigInt>>,
    ) -> Self {
        if let Some((an, ad)) = self.small_parts() {
            if let Some(r) = small(&an, &ad) {
                return Self::from_small_parts(r);
            }
        }
        let (an, ad) = self.big_parts();
        Self::from_big_parts(big(&an, &ad).expect("big integer arithmetic cannot overflow"))
    }

    pub fn zero() -> Self {
        Cyclotomic(Repr::Small { num: [0; DEG], den: 1 })
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut num = [0i64; DEG];
        num[0] = n;
        Cyclotomic(Repr::Small { num, den: 1 })
    }

    pub fn from_rational(r: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); DEG];
        num[0] = r.numer().clone();
        Self::from_big_parts((num, r.denom().clone()))
    }

    /// Builds an element from its 24 power-basis coefficients.
    pub fn from_coeffs(coeffs: &[Rational]) -> Result<Self, ArithError> {
        if coeffs.len() != DEG {
            return Err(ArithError::Parse(format!("expected {DEG} coefficients, got {}", coeffs.len())));
        }
        let mut acc = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &Self::zeta(k as i64).scale(c);
            }
        }
        Ok(acc)
    }

    /// `z^k` for any integer `k`.
    pub fn zeta(k: i64) -> Self {
        let row = &POWERS[k.rem_euclid(ORDER) as usize];
        let mut num = [0i64; DEG];
        for j in 0..DEG {
            num[j] = row[j] as i64;
        }
        Cyclotomic(Repr::Small { num, den: 1 })
    }

    /// `exp(2 pi i k / n)`; `n` must divide 72.
    pub fn root_of_unity(n: i64, k: i64) -> Result<Self, ArithError> {
        if n <= 0 || ORDER % n != 0 {
            return Err(ArithError::NotInField(format!("{n}-th roots of unity")));
        }
        Ok(Self::zeta(k * (ORDER / n)))
    }

    /// `exp(2 pi i / 3)`.
    pub fn omega() -> Self {
        Self::zeta(24)
    }

    pub fn i() -> Self {
        Self::zeta(18)
    }

    /// `exp(-pi i / 9)`.
    pub fn tau() -> Self {
        Self::zeta(-4)
    }

    pub fn sqrt2() -> Self {
        &Self::zeta(9) + &Self::zeta(-9)
    }

    pub fn sqrt3() -> Self {
        &Self::zeta(6) - &Self::zeta(30)
    }

    /// Square root of a rational, when it lies in the field.
    ///
    /// Exactly the rationals `s^2 t` with `t` in {1, 2, 3, 6} up to sign qualify.
    pub fn sqrt_rational(r: &Rational) -> Option<Self> {
        if r.is_negative() {
            return Self::sqrt_rational(&-r).map(|s| &s * &Self::i());
        }
        let (s, t) = r.square_decompose_23()?;
        let root = match t {
            1 => Self::one(),
            2 => Self::sqrt2(),
            3 => Self::sqrt3(),
            6 => &Self::sqrt2() * &Self::sqrt3(),
            _ => return None,
        };
        Some(root.scale(&s))
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big(b) => b.num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Coefficient of `z^k` in the power basis.
    pub fn coeff(&self, k: usize) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational::new(num[k], *den),
            Repr::Big(b) => Rational::new(b.num[k].clone(), b.den.clone()),
        }
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        (0..DEG).map(|k| self.coeff(k)).collect()
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support(&self) -> usize {
        match &self.0 {
            Repr::Small { num, .. } => num.iter().filter(|&&c| c != 0).count(),
            Repr::Big(b) => b.num.iter().filter(|c| !c.is_zero()).count(),
        }
    }

    /// Rough size measure used to pick simple pivots.
    pub fn weight(&self) -> u64 {
        match &self.0 {
            Repr::Small { num, den } => {
                let bits: u64 = num.iter().filter(|&&c| c != 0).map(|&c| 64 - c.unsigned_abs().leading_zeros() as u64).sum();
                bits + 64 - den.unsigned_abs().leading_zeros() as u64
            }
            Repr::Big(b) => {
                b.num.iter().map(|c| c.bits()).sum::<u64>() + b.den.bits() + 1_000
            }
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let rest_zero = match &self.0 {
            Repr::Small { num, .. } => num[1..].iter().all(|&c| c == 0),
            Repr::Big(b) => b.num[1..].iter().all(Zero::is_zero),
        };
        rest_zero.then(|| self.coeff(0))
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Complex conjugation `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Galois automorphism `z -> z^e`; `e` must be coprime to 72.
    pub fn galois(&self, e: i64) -> Self {
        debug_assert!(Integer::gcd(&e, &ORDER) == 1);
        if e.rem_euclid(ORDER) == 1 {
            return self.clone();
        }
        self.unary(|n, d| k_galois(n, d, e), |n, d| k_galois(n, d, e))
    }

    /// `self * conj(self)`, a nonnegative real element.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    /// Field norm down to the rationals.
    pub fn field_norm(&self) -> Rational {
        let mut acc = self.clone();
        for &e in &GALOIS_UNITS[1..] {
            acc = &acc * &self.galois(e);
        }
        acc.as_rational().expect("field norm is rational")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let (p, q) = (r.numer(), r.denom());
        if let (Some(p), Some(q)) = (p.to_i64(), q.to_i64()) {
            let (p, q) = (p as i128, q as i128);
            return self.unary(
                |n, d| k_scale(n, d, &p, &q),
                |n, d| k_scale(n, d, &BigInt::from(p), &BigInt::from(q)),
            );
        }
        self.unary(|_, _| None, |n, d| k_scale(n, d, p, q))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from(k))
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&r.recip()?));
        }
        let c = self.conj();
        if let Some(r) = (self * &c).as_rational() {
            return Ok(c.scale(&r.recip()?));
        }
        // Product of the 23 nontrivial conjugates equals N(a)/a.
        let mut others = Self::one();
        for &e in &GALOIS_UNITS[1..] {
            others = &others * &self.galois(e);
        }
        let n = (self * &others).as_rational().expect("field norm is rational");
        Ok(others.scale(&n.recip()?))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.inverse().expect("negative power of zero") } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// If `self = z^k`, returns `k` in `0..72`.
    pub fn as_root_of_unity(&self) -> Option<i64> {
        let support = self.support();
        if support == 0 || support > 2 {
            return None;
        }
        (0..ORDER).find(|&k| *self == Self::zeta(k))
    }

    pub fn to_complex(&self) -> Complex64 {
        static TABLE: OnceLock<Vec<Complex64>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            (0..DEG)
                .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / ORDER as f64))
                .collect()
        });
        let mut acc = Complex64::new(0.0, 0.0);
        match &self.0 {
            Repr::Small { num, den } => {
                for k in 0..DEG {
                    if num[k] != 0 {
                        acc += table[k] * num[k] as f64;
                    }
                }
                acc / *den as f64
            }
            Repr::Big(_) => {
                for k in 0..DEG {
                    let c = self.coeff(k);
                    if !c.is_zero() {
                        acc += table[k] * c.to_f64();
                    }
                }
                acc
            }
        }
    }

    /// Canonical text form `a0 + a1*z + ... + a23*z^23`, zero terms omitted.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// JSON-friendly form: the 24 power-basis coefficients as `p/q` strings.
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }

    pub fn from_coeff_strings<S: AsRef<str>>(items: &[S]) -> Result<Self, ArithError> {
        let coeffs = items.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Rational>, _>>()?;
        Self::from_coeffs(&coeffs)
    }

    /// Positive-denominator sign test for rational values.
    pub fn rational_sign(&self) -> Option<std::cmp::Ordering> {
        self.as_rational().map(|r| r.cmp(&Rational::zero()))
    }

    #[cfg(test)]
    pub(crate) fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small { .. })
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

impl From<&Rational> for Cyclotomic {
    fn from(r: &Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.binary(rhs, |a, b, c, d| k_add(a, b, c, d, false), |a, b, c, d| k_add(a, b, c, d, false))
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if rhs.is_zero() {
            return self.clone();
        }
        self.binary(rhs, |a, b, c, d| k_add(a, b, c, d, true), |a, b, c, d| k_add(a, b, c, d, true))
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        self.binary(rhs, k_mul, k_mul)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.try_div(rhs).expect("division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        match &self.0 {
            Repr::Small { num, den } if num.iter().all(|&c| c != i64::MIN) => {
                let mut n = *num;
                n.iter_mut().for_each(|c| *c = -*c);
                Cyclotomic(Repr::Small { num: n, den: *den })
            }
            _ => {
                let (n, d) = self.big_parts();
                Cyclotomic::from_big_parts((n.into_iter().map(|c| -c).collect(), d))
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl<'a> std::iter::Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..DEG {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl FromStr for Cyclotomic {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_expr(s)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Signed integer backend check used by tests: the inline path must agree with
/// the big-integer path.
#[cfg(test)]
pub(crate) fn force_big(x: &Cyclotomic) -> (Vec<BigInt>, BigInt) {
    x.big_parts()
}
