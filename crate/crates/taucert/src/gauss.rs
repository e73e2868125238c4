//! Gaussian rationals Q(i): the exact constant field of the whole crate.
//!
//! Every constant appearing in the supported difference equations lives here,
//! including the shift parameters i and 2i used by the tangent, alternating
//! and Springer equations.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
// Field supplies zero()/is_zero() for BigRational as well; num_traits::Zero
// is deliberately not imported to keep method calls unambiguous.
use crate::field::Field;

pub type BigRat = BigRational;

/// An element re + im*i of Q(i). Both parts are kept in lowest terms by
/// `BigRational`, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    re: BigRat,
    im: BigRat,
}

impl GaussRat {
    pub fn new(re: BigRat, im: BigRat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: BigRat) -> Self {
        GaussRat {
            re,
            im: BigRat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(BigRat::from_integer(n.into()))
    }

    /// p/q as a Gaussian rational.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rat(BigRat::new(p.into(), q.into()))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat {
            re: BigRat::zero(),
            im: BigRat::from_integer(1.into()),
        }
    }

    pub fn re(&self) -> &BigRat {
        &self.re
    }

    pub fn im(&self) -> &BigRat {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// re^2 + im^2, zero iff the value is zero.
    pub fn norm(&self) -> BigRat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    /// Rational upper bound on the absolute value: |re| + |im| >= |z|.
    pub fn abs_upper_bound(&self) -> BigRat {
        self.re.abs() + self.im.abs()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parse the canonical string grammar: "p/q", "p/q+r/si", "p/q-r/si",
    /// "r/si", "-i", "i", with each part an integer or integer ratio.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().replace(' ', "");
        if s.is_empty() {
            return Err(Error::Parse("empty Gaussian rational".into()));
        }
        // Split at the last '+' or '-' that is not at position 0 and not
        // inside a ratio (ratios never contain signs past the front).
        let bytes = s.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if b == b'+' || b == b'-' {
                split = Some(idx);
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) if s.ends_with('i') => (&s[..idx], &s[idx..s.len() - 1]),
            _ if s.ends_with('i') => ("0", &s[..s.len() - 1]),
            _ => (s.as_str(), ""),
        };
        let re = if re_str.is_empty() {
            BigRat::zero()
        } else {
            parse_rat(re_str)?
        };
        let im = match im_str {
            "" if s.ends_with('i') => BigRat::from_integer(1.into()),
            "" => BigRat::zero(),
            "+" => BigRat::from_integer(1.into()),
            "-" => BigRat::from_integer((-1).into()),
            other => parse_rat(other)?,
        };
        Ok(GaussRat { re, im })
    }
}

fn parse_rat(s: &str) -> Result<BigRat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {den:?}")))?;
    if num_traits::Zero::is_zero(&d) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRat::new(n, d))
}

pub fn format_rat(r: &BigRat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rat(&self.re));
        }
        let im_mag = self.im.abs();
        let im_part = if im_mag == BigRat::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}i", format_rat(&im_mag))
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im_part}")
        } else {
            write!(f, "{}{}{}", format_rat(&self.re), sign, im_part)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let conj = rhs.conj();
        let prod = self * &conj;
        GaussRat {
            re: prod.re / &n,
            im: prod.im / n,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for GaussRat {
            type Output = GaussRat;
            fn $method(self, rhs: GaussRat) -> GaussRat {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl Field for GaussRat {
    fn zero() -> Self {
        GaussRat {
            re: BigRat::zero(),
            im: BigRat::zero(),
        }
    }
    fn one() -> Self {
        GaussRat::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        &GaussRat::one() / self
    }
    fn from_i64(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

/// Fields with a distinguished embedding of Q(i): the base field itself and
/// the parameter field Q(i)(x).
pub trait CoeffField: Field {
    fn from_gauss(g: &GaussRat) -> Self;
}

impl CoeffField for GaussRat {
    fn from_gauss(g: &GaussRat) -> Self {
        g.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::new(
            BigRat::from_integer(re.into()),
            BigRat::from_integer(im.into()),
        )
    }

    #[test]
    fn arithmetic() {
        let a = g(1, 2);
        let b = g(3, -1);
        assert_eq!(&a * &b, g(5, 5));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a + &(-&a), GaussRat::zero());
        assert_eq!(a.norm(), BigRat::from_integer(5.into()));
    }

    #[test]
    fn inverse_of_i() {
        let i = GaussRat::i();
        assert_eq!(i.inv(), -&i);
        assert_eq!(&i * &i, GaussRat::from_int(-1));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            g(3, 0),
            g(-3, 0),
            g(0, 1),
            g(0, -1),
            g(0, 2),
            g(1, 1),
            g(-1, -2),
            GaussRat::new(BigRat::new(1.into(), 2.into()), BigRat::new((-3).into(), 4.into())),
        ];
        for c in cases {
            let s = c.to_string();
            assert_eq!(GaussRat::parse(&s).unwrap(), c, "round trip of {s}");
        }
        assert_eq!(GaussRat::parse("1/2").unwrap(), GaussRat::ratio(1, 2));
        assert_eq!(GaussRat::parse("2i").unwrap(), &g(0, 2) + &GaussRat::zero());
        assert_eq!(GaussRat::parse("-5/3").unwrap(), GaussRat::ratio(-5, 3));
    }
}
