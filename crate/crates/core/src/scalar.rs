//! Exact scalars: rationals and elements `a + b·√m` of a real quadratic field.
//!
//! Every fugacity the crate constructs lives in some `ℚ(√m)` (√2, √3 and
//! √(2 − 2/Δ) all do), so counts, generating functions and inequality checks
//! stay exact. Mixing two different radicands in one computation is a
//! programming error and panics; [`crate::fugacities::FugacitySpec`]
//! validates a common field up front.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `rational + irrational·√radicand`.
///
/// Normal form: `radicand` is squarefree and ≥ 2 whenever `irrational ≠ 0`;
/// a plain rational has `irrational = 0` and `radicand = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: BigRational,
    irrational: BigRational,
    radicand: u64,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Surd {
    pub fn from_rational(r: BigRational) -> Self {
        Surd { rational: r, irrational: BigRational::zero(), radicand: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// `a + b·√m` for any `m ≥ 0`; square factors of `m` are pulled out.
    pub fn new(a: BigRational, b: BigRational, m: u64) -> Self {
        let (square, free) = split_square(m);
        let b = b * BigRational::from_integer(BigInt::from(square));
        Self::normalized(a, b, free)
    }

    fn normalized(a: BigRational, b: BigRational, m: u64) -> Self {
        if b.is_zero() || m <= 1 {
            let a = if m == 1 { a + b } else { a };
            Surd { rational: a, irrational: BigRational::zero(), radicand: 1 }
        } else {
            Surd { rational: a, irrational: b, radicand: m }
        }
    }

    /// Exact square root of a nonnegative rational `p/q`, as `(s/q)·√m`.
    pub fn sqrt_of(r: &BigRational) -> Result<Self, Error> {
        if r.is_negative() {
            return Err(Error::InvalidInput(format!("square root of negative rational {r}")));
        }
        let pq: BigUint = (r.numer() * r.denom())
            .to_biguint()
            .expect("nonnegative");
        let pq = pq.to_u64().ok_or_else(|| {
            Error::InvalidInput(format!("radicand of sqrt({r}) too large for exact form"))
        })?;
        let (square, free) = split_square(pq);
        let coeff = BigRational::new(BigInt::from(square), r.denom().clone());
        Ok(Self::normalized(BigRational::zero(), coeff, free))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.irrational
    }

    /// 1 for plain rationals.
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.irrational.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    fn field_with(&self, other: &Surd) -> u64 {
        match (self.radicand, other.radicand) {
            (1, m) | (m, 1) => m,
            (m, n) if m == n => m,
            (m, n) => panic!("mixed quadratic fields Q(sqrt {m}) and Q(sqrt {n})"),
        }
    }

    /// Sign of the exact value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.irrational);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.rational * &self.rational;
        let b2m = &self.irrational
            * &self.irrational
            * BigRational::from_integer(BigInt::from(self.radicand));
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Surd {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = rational_to_f64(&self.rational);
        if self.irrational.is_zero() {
            return a;
        }
        let b_root = rational_to_f64(&self.irrational) * (self.radicand as f64).sqrt();
        if self.rational.is_positive() == self.irrational.is_positive() || self.rational.is_zero() {
            return a + b_root;
        }
        // opposite signs cancel: use (a² − b²m) / (a − b√m) instead
        let m = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.irrational * &self.irrational * m;
        rational_to_f64(&norm) / (a - b_root)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Surd::from_rational(self.rational.recip()));
        }
        let m = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.irrational * &self.irrational * m;
        Some(Surd::normalized(
            &self.rational / &norm,
            -(&self.irrational / &norm),
            self.radicand,
        ))
    }

    pub fn pow(&self, e: u32) -> Surd {
        (0..e).fold(Surd::one(), |acc, _| acc * self)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back to a scaled quotient when numerator/denominator overflow f64
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// `m = square² · free` with `free` squarefree.
fn split_square(mut m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 1);
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * m)
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Parse an exact rational from `"a"`, `"a/b"` or a decimal such as `"-0.25"` or `"1e-3"`.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a number: {s:?}"));
    }
    let all: BigInt = format!("0{whole}{frac}").parse().expect("digits");
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_rational(BigRational::one())
    }
}

impl From<BigRational> for Surd {
    fn from(r: BigRational) -> Self {
        Surd::from_rational(r)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::from_int(n)
    }
}

impl From<BigInt> for Surd {
    fn from(n: BigInt) -> Self {
        Surd::from_rational(BigRational::from_integer(n))
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let m = self.field_with(rhs);
        Surd::normalized(&self.rational + &rhs.rational, &self.irrational + &rhs.irrational, m)
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let m = self.field_with(rhs);
        Surd::normalized(&self.rational - &rhs.rational, &self.irrational - &rhs.irrational, m)
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        if self.is_rational() && rhs.is_rational() {
            return Surd::from_rational(&self.rational * &rhs.rational);
        }
        let m = self.field_with(rhs);
        let mq = BigRational::from_integer(BigInt::from(m));
        let a = &self.rational * &rhs.rational + &self.irrational * &rhs.irrational * mq;
        let b = &self.rational * &rhs.irrational + &self.irrational * &rhs.rational;
        Surd::normalized(a, b, m)
    }
}

impl<'a> Div<&'a Surd> for &'a Surd {
    type Output = Surd;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Surd) -> Surd {
        self * &rhs.recip().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Surd> for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Surd> for Surd {
            type Output = Surd;
            fn $m(self, rhs: &Surd) -> Surd { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        if rhs.is_rational() {
            self.rational += &rhs.rational;
            if self.is_rational() {
                self.radicand = 1;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign for Surd {
    fn add_assign(&mut self, rhs: Surd) {
        *self += &rhs;
    }
}

impl MulAssign<&Surd> for Surd {
    fn mul_assign(&mut self, rhs: &Surd) {
        *self = &*self * rhs;
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { rational: -self.rational, irrational: -self.irrational, radicand: self.radicand }
    }
}

impl Sum for Surd {
    fn sum<I: Iterator<Item = Surd>>(iter: I) -> Surd {
        iter.fold(Surd::zero(), |acc, x| acc + x)
    }
}

impl Product for Surd {
    fn product<I: Iterator<Item = Surd>>(iter: I) -> Surd {
        iter.fold(Surd::one(), |acc, x| acc * x)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irrational.is_zero() {
            return write!(f, "{}", self.rational);
        }
        let b = &self.irrational;
        let m = self.radicand;
        let term = |b: &BigRational| {
            if b.is_one() {
                format!("sqrt({m})")
            } else {
                format!("{b}*sqrt({m})")
            }
        };
        if self.rational.is_zero() {
            if b.is_negative() {
                write!(f, "-{}", term(&-b.clone()))
            } else {
                write!(f, "{}", term(b))
            }
        } else if b.is_negative() {
            write!(f, "{}-{}", self.rational, term(&-b.clone()))
        } else {
            write!(f, "{}+{}", self.rational, term(b))
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Surd {
    type Err = String;

    /// Accepts the `Display` forms: `"p/q"`, `"a+b*sqrt(m)"`, `"-sqrt(m)"`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(open) = s.find("sqrt(") else {
            return parse_rational(&s).map(Surd::from_rational);
        };
        let close = s[open..].find(')').map(|i| open + i).ok_or("unclosed sqrt(")?;
        if close + 1 != s.len() {
            return Err(format!("trailing text after sqrt term in {s:?}"));
        }
        let m: u64 = s[open + 5..close].parse().map_err(|_| format!("bad radicand in {s:?}"))?;
        let head = &s[..open];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "a+b" / "a-b" at the last sign that is not a leading sign or exponent sign
        let split = head
            .char_indices()
            .filter(|&(i, c)| {
                (c == '+' || c == '-') && i > 0 && !matches!(head.as_bytes()[i - 1], b'e' | b'E')
            })
            .map(|(i, _)| i)
            .next_back();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, &head[i..]),
            None => (BigRational::zero(), head),
        };
        let b = match b {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(Surd::new(a, b, m))
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a `BigRational` as `"a/b"`.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
