//! Reduced rational functions over an exact field.
//!
//! Normal form: gcd(num, den) = 1 and den monic, so structural equality is
//! equality of functions. `RatFun<K>` is itself a [`Field`], which is how the
//! parameter field Q(i)(x) is obtained (see [`crate::param`]).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct RatFun<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFun<K> {
    /// Build num/den in normal form. Errors on a zero denominator.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly<K>, den: Poly<K>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        // Constant denominators need no gcd; this is the hot path for the
        // parameter field, where most values are plain polynomials.
        if den.deg() == Some(0) {
            if den.lc().is_one() {
                return RatFun { num, den };
            }
            let inv = den.lc().inv();
            return RatFun {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.deg() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        if !den.lc().is_one() {
            let inv = den.lc().inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn from_i64_ratio(p: i64, q: i64) -> Self {
        Self::reduced(Poly::from_i64s(&[p]), Poly::from_i64s(&[q]))
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.deg() == Some(0)
    }

    /// As a polynomial, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<K>> {
        if self.is_poly() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_poly() && other.is_poly() {
            return RatFun {
                num: self.num.add(&other.num),
                den: Poly::one(),
            };
        }
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_poly() && other.is_poly() {
            return RatFun {
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        Self::reduced(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Evaluate at a point; `None` when the point is a pole.
    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x).div(&d))
        }
    }

    /// Substitute the variable by the Moebius expression (a t + b)/(c t + d).
    /// The substitution must be nondegenerate (ad - bc != 0) to be a field
    /// automorphism, which all callers in this crate guarantee.
    pub fn moebius_subst(&self, a: &K, b: &K, c: &K, d: &K) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.deg().unwrap_or(0);
        let dd = self.den.deg().unwrap_or(0);
        let mut num = self.num.moebius_numerator(a, b, c, d);
        let mut den = self.den.moebius_numerator(a, b, c, d);
        // Balance the cleared (ct+d) powers.
        let bot = Poly::from_coeffs(vec![d.clone(), c.clone()]);
        if dn < dd {
            num = num.mul(&bot.pow(dd - dn));
        } else if dd < dn {
            den = den.mul(&bot.pow(dn - dd));
        }
        Self::reduced(num, den)
    }

    /// Derivative with respect to the variable.
    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        Self::reduced(num, den)
    }

    /// Total degree measure used for witness guard bands:
    /// deg num + deg den.
    pub fn degree_sum(&self) -> usize {
        self.num.deg().unwrap_or(0) + self.den.deg().unwrap_or(0)
    }
}

impl<K: Field> fmt::Display for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl<K: Field> fmt::Debug for RatFun<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Field> RatFun<K> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_poly() {
            self.num.to_string_var(var)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_var(var),
                self.den.to_string_var(var)
            )
        }
    }
}

impl<K: Field> Field for RatFun<K> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFun::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFun::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFun::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn inv(&self) -> Self {
        RatFun::inv(self)
    }
    fn from_i64(n: i64) -> Self {
        RatFun::from_poly(Poly::from_i64s(&[n]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRat;

    type R = RatFun<GaussRat>;

    fn poly(coeffs: &[i64]) -> Poly<GaussRat> {
        Poly::from_i64s(coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> R {
        R::new(poly(num), poly(den)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        // (t^2 - 1)/(t - 1) -> t + 1
        let r = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(r, R::from_poly(poly(&[1, 1])));
        assert!(r.is_poly());

        // (2t + 2)/4 -> (t + 1)/2, monic denominator 1 after scaling
        let r = rf(&[2, 2], &[4]);
        assert_eq!(r.den(), &Poly::one());
        assert_eq!(
            r.num(),
            &Poly::from_coeffs(vec![GaussRat::ratio(1, 2), GaussRat::ratio(1, 2)])
        );

        // t^3 / t^2 -> t
        let r = rf(&[0, 0, 0, 1], &[0, 0, 1]);
        assert_eq!(r, R::var());
    }

    #[test]
    fn zero_denominator_errors() {
        assert_eq!(
            R::new(poly(&[1]), Poly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let a = rf(&[1], &[0, 1]); // 1/t
        let b = rf(&[0, 1], &[1, 1]); // t/(1+t)
        let s = a.add(&b);
        let p = a.mul(&b);
        let q = a.div(&b);
        for r in [&s, &p, &q] {
            let g = Poly::gcd(r.num(), r.den());
            assert_eq!(g.deg(), Some(0), "not reduced: {r}");
            assert!(r.den().lc().is_one());
        }
        assert_eq!(p, rf(&[1], &[1, 1]));
        assert_eq!(q, rf(&[1, 1], &[0, 0, 1]));
    }

    #[test]
    fn moebius_substitution() {
        // f = t, t -> t/(1+t) gives t/(1+t)
        let f = R::var();
        let one = GaussRat::from_int(1);
        let zero = GaussRat::from_int(0);
        let g = f.moebius_subst(&one, &zero, &one, &one);
        assert_eq!(g, rf(&[0, 1], &[1, 1]));

        // f = 1/t under t -> 1/s gives s
        let f = rf(&[1], &[0, 1]);
        let g = f.moebius_subst(&zero, &one, &one, &zero);
        assert_eq!(g, R::var());
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dt (1/t) = -1/t^2
        let f = rf(&[1], &[0, 1]);
        assert_eq!(f.derivative(), rf(&[-1], &[0, 0, 1]));
    }
}
