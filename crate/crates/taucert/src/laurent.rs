//! Laurent windows: truncated expansions with finitely many negative powers.
//!
//! Rational functions with a pole at the origin expand into these; equation
//! residual checks and witness-versus-series comparisons all happen here.
//! A value represents sum_{k >= start} coeffs[k - start] t^k, exact for
//! start <= k < end() and zero below start.

use crate::error::Result;
use crate::field::Field;
use crate::ratfun::RatFun;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<K> {
    start: i64,
    coeffs: Vec<K>,
}

impl<K: Field> Laurent<K> {
    pub fn from_series(s: &Series<K>) -> Self {
        Laurent {
            start: 0,
            coeffs: s.coeffs().to_vec(),
        }
    }

    /// A window starting at an arbitrary exponent.
    pub fn from_parts(start: i64, coeffs: Vec<K>) -> Self {
        Laurent { start, coeffs }
    }

    /// Expand a rational function so that coefficients are exact on a window
    /// of length `terms` starting at its valuation.
    pub fn from_ratfun(f: &RatFun<K>, terms: usize) -> Result<Self> {
        if f.is_zero() {
            return Ok(Laurent {
                start: 0,
                coeffs: vec![K::zero(); terms],
            });
        }
        let den_val = f.den().valuation().unwrap_or(0);
        let den_core = crate::poly::Poly::from_coeffs(f.den().coeffs()[den_val..].to_vec());
        let num = Series::from_coeffs({
            let mut v: Vec<K> = f.num().coeffs().to_vec();
            v.resize(terms + f.num().deg().unwrap_or(0) + 1, K::zero());
            v
        });
        let expanded = num.div_poly(&den_core)?;
        let mut start = -(den_val as i64);
        let mut coeffs = expanded.coeffs().to_vec();
        // Strip known-zero prefix so `start` is the true valuation.
        while coeffs.first().is_some_and(K::is_zero) && coeffs.len() > 1 {
            coeffs.remove(0);
            start += 1;
        }
        coeffs.truncate(terms);
        Ok(Laurent { start, coeffs })
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last exactly-known exponent.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of t^k; zero below the window start. Panics past the
    /// precision end, which would silently read unknown coefficients.
    pub fn coeff(&self, k: i64) -> K {
        assert!(k < self.end(), "coefficient {k} beyond precision {}", self.end());
        if k < self.start {
            K::zero()
        } else {
            self.coeffs[(k - self.start) as usize].clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let start = self.start.min(other.start);
        let end = self.end().min(other.end());
        let coeffs = (start..end).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Laurent { start, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Laurent {
            start: self.start,
            coeffs: self.coeffs.iter().map(K::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let start = self.start + other.start;
        let end = (self.end() + other.start).min(other.end() + self.start);
        let len = (end - start).max(0) as usize;
        let mut out = vec![K::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < len && !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Laurent { start, coeffs: out }
    }

    /// First exponent in [from, end) with a nonzero coefficient.
    pub fn first_nonzero_from(&self, from: i64) -> Option<i64> {
        (from.max(self.start)..self.end()).find(|&k| !self.coeff(k).is_zero())
    }

    /// True iff all known coefficients in [from, upto) vanish.
    pub fn is_zero_on(&self, from: i64, upto: i64) -> bool {
        assert!(upto <= self.end(), "window beyond precision");
        (from.max(self.start)..upto).all(|k| self.coeff(k).is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRat;
    use crate::poly::Poly;

    type R = RatFun<GaussRat>;

    fn rf(num: &[i64], den: &[i64]) -> R {
        R::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn expansion_with_pole_at_zero() {
        // (1+t)/t^2 = t^-2 + t^-1
        let f = rf(&[1, 1], &[0, 0, 1]);
        let l = Laurent::from_ratfun(&f, 6).unwrap();
        assert_eq!(l.start(), -2);
        assert_eq!(l.coeff(-2), GaussRat::from_int(1));
        assert_eq!(l.coeff(-1), GaussRat::from_int(1));
        assert_eq!(l.coeff(0), GaussRat::from_int(0));
        assert_eq!(l.coeff(3), GaussRat::from_int(0));
    }

    #[test]
    fn geometric_expansion() {
        // 1/(1 - t)
        let f = rf(&[1], &[1, -1]);
        let l = Laurent::from_ratfun(&f, 5).unwrap();
        assert_eq!(l.start(), 0);
        for k in 0..5 {
            assert_eq!(l.coeff(k), GaussRat::from_int(1));
        }
    }

    #[test]
    fn product_precision_tracking() {
        let a = Laurent::from_ratfun(&rf(&[1], &[0, 1]), 4).unwrap(); // 1/t
        let b = Laurent::from_series(&Series::from_coeffs(vec![GaussRat::from_int(2); 6]));
        let p = a.mul(&b);
        assert_eq!(p.start(), -1);
        // end = min(a.end + b.start, b.end + a.start) = min(3+0, 6-1) = 3
        assert_eq!(p.end(), 3);
        assert_eq!(p.coeff(-1), GaussRat::from_int(2));
    }

    #[test]
    fn zero_function() {
        let l = Laurent::from_ratfun(&R::zero(), 4).unwrap();
        assert!(l.is_zero_on(l.start(), l.end()));
    }
}
