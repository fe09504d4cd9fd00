//! Gaussian rationals: complex numbers with exact rational real and
//! imaginary parts.
//!
//! Every matrix in this crate lives over `Q(i)`. Values are always kept in
//! lowest terms (that is inherited from [`BigRational`]), so structural
//! equality is mathematical equality.
//!
//! Text form is `a/b` for purely real values and `a/b+c/d*i` otherwise;
//! integers drop the `/1`. Parsing is lenient about unreduced fractions,
//! whitespace and a few shorthands (`i`, `-i`, `3*i`, `2/3i`).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Scalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `re + im*i` with integer parts.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::new(
            Rational::from_integer(BigInt::from(re)),
            Rational::from_integer(BigInt::from(im)),
        )
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
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
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = re^2 + im^2`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
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

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.re, f)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                f.write_str("-")?;
                fmt_rational(&-self.im.clone(), f)?;
            } else {
                f.write_str("+")?;
                fmt_rational(&self.im, f)?;
            }
            f.write_str("*i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("invalid scalar {whole:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {whole:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Parses the coefficient in front of `i` (possibly empty or a bare sign).
fn parse_imag_coeff(s: &str, whole: &str) -> Result<Rational, Error> {
    let s = s.trim().trim_end_matches('*').trim();
    match s {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(s, whole),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::real(parse_rational(&s, text)?));
        };
        // Split "re±im" at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        match split {
            Some(k) => Ok(Scalar::new(
                parse_rational(&body[..k], text)?,
                parse_imag_coeff(&body[k..], text)?,
            )),
            None => Ok(Scalar::new(Rational::zero(), parse_imag_coeff(body, text)?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Bare JSON integers are accepted as a convenience.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from_int(n)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &Scalar) -> Scalar {
        if rhs.im.is_zero() {
            assert!(!rhs.re.is_zero(), "division by zero scalar");
            return Scalar::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_int(-3).to_string(), "-3");
        assert_eq!(Scalar::frac(6, -4).to_string(), "-3/2");
        assert_eq!(Scalar::gaussian(1, -2).to_string(), "1-2*i");
        assert_eq!(Scalar::i().to_string(), "0+1*i");
        let z = Scalar::new(
            Rational::new(1.into(), 2.into()),
            Rational::new(3.into(), 4.into()),
        );
        assert_eq!(z.to_string(), "1/2+3/4*i");
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(s("4/6"), Scalar::frac(2, 3));
        assert_eq!(s("-2/-4"), Scalar::frac(1, 2));
        assert_eq!(s("2/4+6/8*i").to_string(), "1/2+3/4*i");
        assert_eq!(
            s("1/2 - 1/3*i"),
            Scalar::new(
                Rational::new(1.into(), 2.into()),
                Rational::new((-1).into(), 3.into())
            )
        );
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("3*i"), Scalar::gaussian(0, 3));
        assert_eq!(s("-1-i"), Scalar::gaussian(-1, -1));
        assert_eq!(s("-5"), Scalar::from_int(-5));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1/0", "abc", "1/2/3", "--1", "1+2"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn field_ops() {
        let a = Scalar::gaussian(1, 2);
        let b = Scalar::gaussian(3, -1);
        assert_eq!(&a * &b, Scalar::gaussian(5, 5));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::i().pow(4), Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn serde_round_trip() {
        let z = Scalar::new(
            Rational::new((-7).into(), 3.into()),
            Rational::new(5.into(), 2.into()),
        );
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, "\"-7/3+5/2*i\"");
        assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), z);
        assert_eq!(
            serde_json::from_str::<Scalar>("12").unwrap(),
            Scalar::from_int(12)
        );
    }
}
