//! Exact rational and rational-complex arithmetic.
//!
//! Every amplitude, inner product and squared norm in the engine is one of
//! these two types. Norms themselves are irrational in general and are never
//! materialized; callers compare squared norms instead.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number in canonical form.
///
/// The denominator is always positive and coprime to the numerator; zero is
/// stored as `0/1`. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Returns `None` for a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Option<Self> {
        Self::from_big(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(numer, denom)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Lossy conversion, for timing reports and log-scale diagnostics only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Bit length of numerator plus denominator; a rough size measure.
    pub fn bits(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned_digits(s: &str, whole: &str) -> Result<BigInt, NumberParseError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(NumberParseError::Malformed(whole.to_string()));
    }
    BigInt::parse_bytes(s.as_bytes(), 10).ok_or_else(|| NumberParseError::Malformed(whole.into()))
}

/// Accepts `INT`, `INT/POSINT` and `DECIMAL` (e.g. `-0.25`), converting
/// decimals exactly.
impl FromStr for Rational {
    type Err = NumberParseError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let s = src.trim();
        if s.is_empty() {
            return Err(NumberParseError::Empty);
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            let num = parse_unsigned_digits(num, src)?;
            let den = parse_unsigned_digits(den, src)?;
            if den.is_zero() {
                return Err(NumberParseError::ZeroDenominator(src.to_string()));
            }
            BigRational::new(num, den)
        } else if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(NumberParseError::Malformed(src.to_string()));
            }
            let int = if int.is_empty() {
                BigInt::zero()
            } else {
                parse_unsigned_digits(int, src)?
            };
            let frac_val = if frac.is_empty() {
                BigInt::zero()
            } else {
                parse_unsigned_digits(frac, src)?
            };
            let scale = num_traits::pow(BigInt::from(10u32), frac.len());
            BigRational::new(int * &scale + frac_val, scale)
        } else {
            BigRational::from_integer(parse_unsigned_digits(body, src)?)
        };
        Ok(Rational(if negative { -value } else { value }))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

/// Panics on division by zero, like the integer types.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Rational> for Rational {
    fn product<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Complex number with exact rational parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactComplex { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ExactComplex {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        ExactComplex {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    /// Shorthand for a real rational `numer / denom`. Panics on zero `denom`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::real(Rational::new(numer, denom).expect("nonzero denominator"))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `self · conj(other)`, the per-coordinate term of an inner product.
    pub fn mul_conj(&self, other: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re * &other.re + &self.im * &other.im,
            im: &self.im * &other.re - &self.re * &other.im,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ExactComplex {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let inv = n.recip()?;
        Some(self.conj().scale(&inv))
    }
}

impl From<Rational> for ExactComplex {
    fn from(r: Rational) -> Self {
        ExactComplex::real(r)
    }
}

impl From<i64> for ExactComplex {
    fn from(n: i64) -> Self {
        ExactComplex::real(Rational::from(n))
    }
}

impl Add<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        &self - &rhs
    }
}

impl Mul<&ExactComplex> for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        &self * &rhs
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Sum for ExactComplex {
    fn sum<I: Iterator<Item = ExactComplex>>(iter: I) -> Self {
        iter.fold(ExactComplex::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactComplex {
    fn product<I: Iterator<Item = ExactComplex>>(iter: I) -> Self {
        iter.fold(ExactComplex::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `RAT`, `RAT±RATi` and `RATi`. A bare `i` / `-i` is read as ±1.
impl FromStr for ExactComplex {
    type Err = NumberParseError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let s = src.trim();
        if s.is_empty() {
            return Err(NumberParseError::Empty);
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ExactComplex::real(s.parse()?));
        };
        let split = body
            .char_indices()
            .rev()
            .find(|&(idx, ch)| idx > 0 && (ch == '+' || ch == '-'))
            .map(|(idx, _)| idx);
        let (re, im) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let im = match im {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other
                .parse()
                .map_err(|_| NumberParseError::Malformed(src.to_string()))?,
        };
        let re = if re.is_empty() {
            Rational::zero()
        } else {
            re.parse()
                .map_err(|_| NumberParseError::Malformed(src.to_string()))?
        };
        Ok(ExactComplex { re, im })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn parses_integer_fraction_and_decimal() {
        assert_eq!("3".parse::<Rational>().unwrap(), r(3, 1));
        assert_eq!("-6/8".parse::<Rational>().unwrap(), r(-3, 4));
        assert_eq!("0.5".parse::<Rational>().unwrap(), r(1, 2));
        assert_eq!("-0.125".parse::<Rational>().unwrap(), r(-1, 8));
        assert_eq!(".25".parse::<Rational>().unwrap(), r(1, 4));
        assert_eq!("+2.".parse::<Rational>().unwrap(), r(2, 1));
    }

    #[test]
    fn rejects_malformed_rationals() {
        assert!("".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("1e5".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = r(0, -7);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn complex_parse_and_display() {
        let cases = [
            ("3/5", ExactComplex::ratio(3, 5)),
            ("1/2+3/4i", ExactComplex::new(r(1, 2), r(3, 4))),
            ("-1/2-3/4i", ExactComplex::new(r(-1, 2), r(-3, 4))),
            ("-2i", ExactComplex::new(r(0, 1), r(-2, 1))),
            ("i", ExactComplex::i()),
            ("0.5-i", ExactComplex::new(r(1, 2), r(-1, 1))),
        ];
        for (text, expected) in cases {
            assert_eq!(text.parse::<ExactComplex>().unwrap(), expected, "{text}");
        }
        assert_eq!(ExactComplex::new(r(1, 2), r(-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(ExactComplex::new(r(0, 1), r(1, 1)).to_string(), "1i");
    }

    #[test]
    fn sqrt_exact_detects_squares() {
        assert_eq!(r(9, 4).sqrt_exact(), Some(r(3, 2)));
        assert_eq!(r(2, 1).sqrt_exact(), None);
        assert_eq!(r(1, 8).sqrt_exact(), None);
        assert_eq!(r(0, 1).sqrt_exact(), Some(r(0, 1)));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| r(n, d))
    }

    fn arb_complex() -> impl Strategy<Value = ExactComplex> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| ExactComplex::new(a, b))
    }

    proptest! {
        #[test]
        fn canonical_form_closed_under_ops(a in arb_rational(), b in arb_rational()) {
            for v in [&a + &b, &a * &b, &a - &b] {
                prop_assert!(v.denom() > &BigInt::from(0));
                prop_assert_eq!(v.numer().gcd(v.denom()), BigInt::from(1));
            }
        }

        #[test]
        fn complex_text_round_trip(z in arb_complex()) {
            prop_assert_eq!(z.to_string().parse::<ExactComplex>().unwrap(), z);
        }

        #[test]
        fn mul_conj_matches_definition(a in arb_complex(), b in arb_complex()) {
            prop_assert_eq!(a.mul_conj(&b), &a * &b.conj());
            prop_assert_eq!(a.mul_conj(&a), ExactComplex::real(a.norm_sqr()));
        }
    }
}
