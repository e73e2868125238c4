//! The parameter field Q(i)(x).
//!
//! Catalog equations and the EGF compiler carry a free parameter x in their
//! coefficients; this newtype wraps a rational function in x over Q(i) so the
//! generic polynomial/series machinery can treat the whole coefficient domain
//! as one exact field. Specialization substitutes a Q(i) value for x and
//! reports singular loci (vanishing denominators) as errors.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::{CoeffField, GaussRat};
use crate::poly::Poly;
use crate::ratfun::RatFun;

/// An element of Q(i)(x).
#[derive(Clone, PartialEq)]
pub struct Param(RatFun<GaussRat>);

impl Param {
    /// The parameter x itself.
    pub fn x() -> Self {
        Param(RatFun::var())
    }

    pub fn constant(c: GaussRat) -> Self {
        Param(RatFun::constant(c))
    }

    pub fn from_ratfun(r: RatFun<GaussRat>) -> Self {
        Param(r)
    }

    pub fn as_ratfun(&self) -> &RatFun<GaussRat> {
        &self.0
    }

    /// The underlying polynomial in x, when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Poly<GaussRat>> {
        self.0.as_poly()
    }

    /// The constant value, when x does not occur.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.0.as_poly() {
            Some(p) if p.deg().is_none() => Some(GaussRat::from_int(0)),
            Some(p) if p.deg() == Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }

    /// Substitute x = value. Errors when the value lies on the singular locus
    /// of this coefficient (denominator vanishes).
    pub fn eval_at(&self, value: &GaussRat) -> Result<GaussRat> {
        self.0.eval(value).ok_or_else(|| {
            Error::SingularParameter(format!(
                "x = {} annihilates denominator {}",
                value,
                self.0.den().to_string_var("x")
            ))
        })
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_var("x"))
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for Param {
    fn zero() -> Self {
        Param(RatFun::zero())
    }
    fn one() -> Self {
        Param(RatFun::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Param(self.0.add(&other.0))
    }
    fn sub(&self, other: &Self) -> Self {
        Param(self.0.sub(&other.0))
    }
    fn mul(&self, other: &Self) -> Self {
        Param(self.0.mul(&other.0))
    }
    fn neg(&self) -> Self {
        Param(self.0.neg())
    }
    fn inv(&self) -> Self {
        Param(self.0.inv())
    }
    fn from_i64(n: i64) -> Self {
        Param(RatFun::from_i64(n))
    }
}

impl CoeffField for Param {
    fn from_gauss(g: &GaussRat) -> Self {
        Param::constant(g.clone())
    }
}

/// Substitute x = value in every coefficient of a polynomial in t.
pub fn specialize_poly(p: &Poly<Param>, x: &GaussRat) -> Result<Poly<GaussRat>> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|c| c.eval_at(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

/// Substitute x = value in a rational function in t. Errors when the value
/// lies on a singular locus, i.e. the t-denominator collapses to zero.
///
/// The monic-in-t normal form can park x-poles inside coefficients even
/// where the function itself is regular, so parameter denominators are
/// cleared from both sides before evaluating.
pub fn specialize_ratfun(f: &RatFun<Param>, x: &GaussRat) -> Result<RatFun<GaussRat>> {
    let mut clear = Poly::<GaussRat>::one();
    for c in f.num().coeffs().iter().chain(f.den().coeffs()) {
        let d = c.as_ratfun().den();
        let g = Poly::gcd(&clear, d);
        clear = clear.mul(&d.exact_div(&g));
    }
    let clear_p = Param::from_ratfun(RatFun::from_poly(clear));
    let eval_side = |p: &Poly<Param>| -> Result<Poly<GaussRat>> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let cleared = c.mul(&clear_p);
                let poly = cleared.as_polynomial().ok_or_else(|| {
                    Error::SingularParameter(format!(
                        "coefficient {c} did not clear to a polynomial in x"
                    ))
                })?;
                Ok(poly.eval(x))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    };
    let num = eval_side(f.num())?;
    let den = eval_side(f.den())?;
    if den.is_zero() {
        return Err(Error::SingularParameter(format!(
            "x = {} annihilates the denominator of {}",
            x, f
        )));
    }
    RatFun::new(num, den)
}

/// Substitute x = value in every series coefficient.
pub fn specialize_series(
    s: &crate::series::Series<Param>,
    x: &GaussRat,
) -> Result<crate::series::Series<GaussRat>> {
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| c.eval_at(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::series::Series::from_coeffs(coeffs))
}

/// Lift a Q(i) rational function in t to the parameter field coefficients.
pub fn lift_ratfun(f: &RatFun<GaussRat>) -> RatFun<Param> {
    let lift_poly = |p: &Poly<GaussRat>| {
        Poly::from_coeffs(p.coeffs().iter().map(|c| Param::constant(c.clone())).collect())
    };
    RatFun::new(lift_poly(f.num()), lift_poly(f.den())).expect("nonzero denominator lifts")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_and_specialization() {
        let x = Param::x();
        // x/(x+1)
        let f = x.div(&x.add(&Param::from_i64(1)));
        assert_eq!(
            f.eval_at(&GaussRat::from_int(1)).unwrap(),
            GaussRat::ratio(1, 2)
        );
        let err = f.eval_at(&GaussRat::from_int(-1)).unwrap_err();
        assert!(matches!(err, Error::SingularParameter(_)));
    }

    #[test]
    fn constant_detection() {
        assert_eq!(
            Param::from_i64(7).as_constant(),
            Some(GaussRat::from_int(7))
        );
        assert_eq!(Param::x().as_constant(), None);
        assert_eq!(Param::zero().as_constant(), Some(GaussRat::from_int(0)));
    }
}
