//! Exact partial-fraction decomposition over Q(i).
//!
//! Requires the denominator to split into linear factors over Q(i); callers
//! that cannot guarantee this fall back to factorization-free paths and
//! surface the `non-split-denominator` error.

use crate::error::Result;
use crate::field::Field;
use crate::gauss::GaussRat;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::roots::split_roots;
use crate::series::Series;

/// One term coeff/(t - pole)^order.
#[derive(Clone, Debug, PartialEq)]
pub struct PfTerm {
    pub pole: GaussRat,
    pub order: usize,
    pub coeff: GaussRat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub poly_part: Poly<GaussRat>,
    pub terms: Vec<PfTerm>,
}

/// Decompose f into a polynomial part plus simple terms over the poles.
pub fn partial_fractions(f: &RatFun<GaussRat>) -> Result<PartialFractions> {
    let (poly_part, rem) = f.num().divrem(f.den());
    let mut terms = Vec::new();
    if rem.is_zero() {
        return Ok(PartialFractions { poly_part, terms });
    }
    let roots = split_roots(f.den())?;
    for (pole, mult) in roots {
        // Local expansion at t = pole + u: the denominator is u^mult * e(u)
        // with e(0) != 0, and the u-coefficients 0..mult of num/e give the
        // top-down coefficients of (t - pole)^-mult ... (t - pole)^-1.
        let num_local = rem.shift_arg(&pole);
        let den_local = f.den().shift_arg(&pole);
        debug_assert_eq!(den_local.valuation(), Some(mult));
        let unit = Poly::from_coeffs(den_local.coeffs()[mult..].to_vec());
        let mut num_coeffs: Vec<GaussRat> = num_local.coeffs().to_vec();
        num_coeffs.resize(num_coeffs.len().max(mult), GaussRat::from_int(0));
        let local = Series::from_coeffs(num_coeffs)
            .div_poly(&unit)
            .expect("unit has nonzero constant term");
        for idx in 0..mult {
            let coeff = local.coeff(idx);
            if coeff.is_zero() {
                continue;
            }
            terms.push(PfTerm {
                pole: pole.clone(),
                order: mult - idx,
                coeff,
            });
        }
    }
    Ok(PartialFractions { poly_part, terms })
}

impl PartialFractions {
    /// Recombine into a single rational function; exact inverse of
    /// [`partial_fractions`].
    pub fn reassemble(&self) -> RatFun<GaussRat> {
        let mut acc = RatFun::from_poly(self.poly_part.clone());
        for term in &self.terms {
            let lin = Poly::from_coeffs(vec![-&term.pole, GaussRat::from_int(1)]);
            let frac = RatFun::new(Poly::constant(term.coeff.clone()), lin.pow(term.order))
                .expect("linear factor is nonzero");
            acc = acc.add(&frac);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    type R = RatFun<GaussRat>;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn rf(num: &[i64], den: &[i64]) -> R {
        R::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        // 1/(s(s+1)) = 1/s - 1/(s+1)
        let f = rf(&[1], &[0, 1, 1]);
        let pf = partial_fractions(&f).unwrap();
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert!(pf
            .terms
            .contains(&PfTerm { pole: g(0), order: 1, coeff: g(1) }));
        assert!(pf
            .terms
            .contains(&PfTerm { pole: g(-1), order: 1, coeff: g(-1) }));
        assert_eq!(pf.reassemble(), f);
    }

    #[test]
    fn single_double_pole() {
        // 1/s^2
        let f = rf(&[1], &[0, 0, 1]);
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(
            pf.terms,
            vec![PfTerm { pole: g(0), order: 2, coeff: g(1) }]
        );
    }

    #[test]
    fn shifted_double_pole() {
        // (2s+3)/(s-1)^2 = 2/(s-1) + 5/(s-1)^2
        let f = rf(&[3, 2], &[1, -2, 1]);
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.terms.len(), 2);
        assert!(pf
            .terms
            .contains(&PfTerm { pole: g(1), order: 1, coeff: g(2) }));
        assert!(pf
            .terms
            .contains(&PfTerm { pole: g(1), order: 2, coeff: g(5) }));
        assert_eq!(pf.reassemble(), f);
    }

    #[test]
    fn polynomial_part_and_gaussian_pole() {
        // t + 1/(t - i), reassembled
        let lin = Poly::from_coeffs(vec![-&GaussRat::i(), g(1)]);
        let f = RatFun::from_poly(Poly::from_i64s(&[0, 1]))
            .add(&RatFun::new(Poly::one(), lin).unwrap());
        let pf = partial_fractions(&f).unwrap();
        assert_eq!(pf.poly_part, Poly::from_i64s(&[0, 1]));
        assert_eq!(
            pf.terms,
            vec![PfTerm { pole: GaussRat::i(), order: 1, coeff: g(1) }]
        );
        assert_eq!(pf.reassemble(), f);
    }

    #[test]
    fn non_split_is_an_error() {
        // 1/(t^2 - 2)
        let f = rf(&[1], &[-2, 0, 1]);
        assert_eq!(
            partial_fractions(&f).unwrap_err(),
            Error::NonSplitDenominator { degree: 2 }
        );
    }
}
