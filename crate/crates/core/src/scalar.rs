//! Exact arithmetic over finite sums `Σ q_r·√r` with rational `q_r` and
//! squarefree positive radicands `r`.
//!
//! Every radicand key is kept squarefree and no stored coefficient is zero,
//! so the representation is canonical: two scalars are equal as real numbers
//! iff their term maps are equal (the square roots of distinct squarefree
//! integers are linearly independent over ℚ).
//!
//! Squarefree extraction uses trial division up to `√r`, which costs
//! `O(√r)` divisions per call. Products of already-squarefree radicands
//! never need factoring: `√r·√s = g·√((r/g)(s/g))` with `g = gcd(r, s)`.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Bits of fixed-point precision used for each square root in [`RadicalScalar::to_f64`]
/// (about 38 significant decimal digits).
const FLOAT_EVAL_BITS: u64 = 128;

/// Builds the rational `num/den`.
///
/// # Panics
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Splits `n` as `square² · core` with `core` squarefree.
pub fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut exp = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            exp += 1;
        }
        square *= p.pow(exp / 2);
        if exp % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, core * n)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && squarefree_split(n).0 == 1
}

fn mul_radicands(r: u64, s: u64) -> (u64, u64) {
    let g = r.gcd(&s);
    let rad = (r / g)
        .checked_mul(s / g)
        .expect("radicand product exceeds u64 range");
    (g, rad)
}

fn to_u64(value: &BigInt, what: &str) -> Result<u64> {
    value
        .to_u64()
        .ok_or_else(|| Error::Domain(format!("{what} {value} exceeds the supported radicand range")))
}

/// An exact real number `Σ q_r·√r`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, Rational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    /// `coeff·√radicand`, with the square part of the radicand moved into the coefficient.
    pub fn make(coeff: Rational, radicand: i64) -> Result<Self> {
        if radicand <= 0 {
            return Err(Error::Domain(format!(
                "radicand must be a positive integer, got {radicand}"
            )));
        }
        Ok(Self::make_unsigned(coeff, radicand as u64))
    }

    fn make_unsigned(coeff: Rational, radicand: u64) -> Self {
        debug_assert!(radicand >= 1);
        let (square, core) = squarefree_split(radicand);
        let coeff = coeff * Rational::from_integer(BigInt::from(square));
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(core, coeff);
        }
        Self { terms }
    }

    /// `√n` for a positive integer `n`.
    pub fn sqrt(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("radicand must be positive, got 0".into()));
        }
        Ok(Self::make_unsigned(Rational::one(), n))
    }

    /// `√q` for a nonnegative rational `q`.
    ///
    /// With `q = p/d` in lowest terms, `p = a²·r` and `d = b²·s`, this is
    /// `a/(b·s)·√(r·s)`; `r·s` is squarefree because `p` and `d` are coprime.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Domain(format!("square root of negative value {q}")));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let (a, r) = squarefree_split(to_u64(q.numer(), "numerator")?);
        let (b, s) = squarefree_split(to_u64(q.denom(), "denominator")?);
        let coeff = Rational::new(BigInt::from(a), BigInt::from(b) * BigInt::from(s));
        let rad = r.checked_mul(s).ok_or_else(|| {
            Error::Domain(format!("radicand of sqrt({q}) exceeds the supported range"))
        })?;
        let mut terms = BTreeMap::new();
        terms.insert(rad, coeff);
        Ok(Self { terms })
    }

    /// `1/√q` for a positive rational `q`, computed as `√q / q`.
    pub fn inv_sqrt_rational(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("1/sqrt({q}) needs a positive argument")));
        }
        Ok(Self::sqrt_rational(q)?.scale(&q.recip()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    /// Terms in ascending radicand order as `(radicand, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&r, q)| (r, q))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&r, c)| (r, c * q)).collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact `Σ a_k·b_k`, accumulated without intermediate normalization.
    pub fn dot<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (&'a RadicalScalar, &'a RadicalScalar)>,
    {
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        for (a, b) in pairs {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            accumulate_product(&mut acc, a, b);
        }
        acc.retain(|_, c| !c.is_zero());
        Self { terms: acc }
    }

    /// Evaluates to `f64`, computing each square root with 128 fractional bits
    /// before the single final rounding.
    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return q.to_f64().unwrap_or(f64::NAN);
        }
        let scale = BigInt::one() << FLOAT_EVAL_BITS;
        let mut total = Rational::zero();
        for (&r, q) in &self.terms {
            let root = if r == 1 {
                scale.clone()
            } else {
                let shifted = BigUint::from(r) << (2 * FLOAT_EVAL_BITS);
                BigInt::from_biguint(Sign::Plus, shifted.sqrt())
            };
            total += q * Rational::from_integer(root);
        }
        (total / Rational::from_integer(scale))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

fn accumulate_product(acc: &mut BTreeMap<u64, Rational>, a: &RadicalScalar, b: &RadicalScalar) {
    for (&r, p) in &a.terms {
        for (&s, q) in &b.terms {
            let (g, rad) = mul_radicands(r, s);
            let mut c = p * q;
            if g != 1 {
                c *= Rational::from_integer(BigInt::from(g));
            }
            match acc.get_mut(&rad) {
                Some(existing) => *existing += c,
                None => {
                    acc.insert(rad, c);
                }
            }
        }
    }
}

impl From<Rational> for RadicalScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn add(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        for (&r, q) in &rhs.terms {
            let remove = match self.terms.get_mut(&r) {
                Some(c) => {
                    *c += q;
                    c.is_zero()
                }
                None => {
                    self.terms.insert(r, q.clone());
                    false
                }
            };
            if remove {
                self.terms.remove(&r);
            }
        }
    }
}

impl AddAssign for RadicalScalar {
    fn add_assign(&mut self, rhs: RadicalScalar) {
        *self += &rhs;
    }
}

impl Add for RadicalScalar {
    type Output = RadicalScalar;

    fn add(mut self, rhs: RadicalScalar) -> RadicalScalar {
        self += &rhs;
        self
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;

    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(&r, q)| (r, -q)).collect(),
        }
    }
}

impl Neg for RadicalScalar {
    type Output = RadicalScalar;

    fn neg(mut self) -> RadicalScalar {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn sub(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        out += &(-rhs);
        out
    }
}

impl Sub for RadicalScalar {
    type Output = RadicalScalar;

    fn sub(self, rhs: RadicalScalar) -> RadicalScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        RadicalScalar::dot(std::iter::once((self, rhs)))
    }
}

impl Mul for RadicalScalar {
    type Output = RadicalScalar;

    fn mul(self, rhs: RadicalScalar) -> RadicalScalar {
        &self * &rhs
    }
}

impl Sum for RadicalScalar {
    fn sum<I: Iterator<Item = RadicalScalar>>(iter: I) -> Self {
        iter.fold(RadicalScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a RadicalScalar> for RadicalScalar {
    fn sum<I: Iterator<Item = &'a RadicalScalar>>(iter: I) -> Self {
        iter.fold(RadicalScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, radicand: u64, coeff: &Rational) -> fmt::Result {
    if radicand == 1 {
        write!(f, "{coeff}")
    } else if coeff.is_one() {
        write!(f, "sqrt({radicand})")
    } else if (-coeff).is_one() {
        write!(f, "-sqrt({radicand})")
    } else {
        write!(f, "{coeff}*sqrt({radicand})")
    }
}

/// Canonical text: irrational terms by ascending radicand, then the rational
/// part, e.g. `-1/4*sqrt(7) + 1/2`.
impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let ordered = self
            .terms
            .iter()
            .filter(|(&r, _)| r != 1)
            .chain(self.terms.get_key_value(&1));
        for (idx, (&r, q)) in ordered.enumerate() {
            if idx == 0 {
                fmt_term(f, r, q)?;
            } else if q.is_negative() {
                f.write_str(" - ")?;
                fmt_term(f, r, &-q)?;
            } else {
                f.write_str(" + ")?;
                fmt_term(f, r, q)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalScalar({self})")
    }
}

struct ScalarParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> ScalarParser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::parse(format!("offset {} of {:?}", self.pos, self.src), message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("invalid integer"))
    }

    fn sqrt_arg(&mut self) -> Result<u64> {
        let n = self.digits()?;
        let n = n.to_u64().ok_or_else(|| self.err("radicand too large"))?;
        if n == 0 {
            return Err(self.err("radicand must be positive"));
        }
        if !self.eat(")") {
            return Err(self.err("expected ')'"));
        }
        Ok(n)
    }

    fn term(&mut self) -> Result<RadicalScalar> {
        if self.eat("sqrt(") {
            let n = self.sqrt_arg()?;
            return Ok(RadicalScalar::make_unsigned(Rational::one(), n));
        }
        let num = self.digits()?;
        let den = if self.eat("/") {
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let coeff = Rational::new(num, den);
        if self.eat("*sqrt(") {
            let n = self.sqrt_arg()?;
            Ok(RadicalScalar::make_unsigned(coeff, n))
        } else {
            Ok(RadicalScalar::from_rational(coeff))
        }
    }

    fn parse(mut self) -> Result<RadicalScalar> {
        let mut total = RadicalScalar::zero();
        self.skip_ws();
        let mut negate = self.eat("-");
        if !negate {
            self.eat("+");
        }
        loop {
            self.skip_ws();
            let t = self.term()?;
            total += &(if negate { -t } else { t });
            self.skip_ws();
            match self.peek() {
                None => return Ok(total),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
            }
            self.pos += 1;
        }
    }
}

/// Parses the grammar `term (("+" | "-") term)*` with
/// `term := rational ["*sqrt(" integer ")"] | "sqrt(" integer ")"`.
/// Non-squarefree radicands are normalized.
impl FromStr for RadicalScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScalarParser { src: s, pos: 0 }.parse()
    }
}
