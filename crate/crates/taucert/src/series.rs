//! Truncated formal power series over an exact field.
//!
//! A `Series<K>` is a vector of N coefficients representing a power series
//! modulo t^N. Binary operations require equal truncation orders and panic
//! otherwise: an implicit minimum would silently weaken downstream
//! verification, so mismatches are treated as caller bugs.
//!
//! Besides ring operations the module provides the Borel transform and its
//! inverse, the Phi operator (whose Borel image is multiplication by e^(ct)),
//! divided differences, substitution of t/(1+bt), and exp/log/reciprocal/
//! composition with exact coefficients.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{factorial, Field};
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct Series<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Series<K> {
    pub fn from_coeffs(coeffs: Vec<K>) -> Self {
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![K::zero(); order],
        }
    }

    pub fn constant(c: K, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(K::one(), order)
    }

    /// The series t.
    pub fn var(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = K::one();
        }
        s
    }

    /// Build coefficients from a function of the index.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> K) -> Self {
        Series {
            coeffs: (0..order).map(f).collect(),
        }
    }

    /// The exponential series of c*t: coefficients c^n / n!.
    pub fn exp_ct(c: &K, order: usize) -> Self {
        let mut pow = K::one();
        let mut fact = K::one();
        Self::from_fn(order, |n| {
            if n > 0 {
                pow = pow.mul(c);
                fact = fact.mul(&K::from_i64(n as i64));
            }
            pow.div(&fact)
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> K {
        self.coeffs.get(n).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(K::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order(),
            other.order(),
            "series truncation mismatch: {} vs {}",
            self.order(),
            other.order()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(K::neg).collect(),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let n = self.order();
        let mut out = vec![K::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series { coeffs: out }
    }

    /// Multiply by a polynomial in t, truncating at the series order.
    pub fn mul_poly(&self, p: &Poly<K>) -> Self {
        let n = self.order();
        let mut out = vec![K::zero(); n];
        for (i, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in self.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Series { coeffs: out }
    }

    /// Divide by a polynomial with p(0) != 0, truncating at the order.
    pub fn div_poly(&self, p: &Poly<K>) -> Result<Self> {
        let p0 = p.coeff(0);
        if p0.is_zero() {
            return Err(Error::Precondition(format!(
                "polynomial division needs nonzero constant term, got {p}"
            )));
        }
        let inv = p0.inv();
        let inv_is_one = inv.is_one();
        let n = self.order();
        let mut out = vec![K::zero(); n];
        for i in 0..n {
            let mut acc = self.coeff(i);
            for k in 1..=i.min(p.deg().unwrap_or(0)) {
                let pk = p.coeff(k);
                if pk.is_zero() {
                    continue;
                }
                let prod = if pk.is_one() {
                    out[i - k].clone()
                } else {
                    pk.mul(&out[i - k])
                };
                acc = acc.sub(&prod);
            }
            out[i] = if inv_is_one { acc } else { acc.mul(&inv) };
        }
        Ok(Series { coeffs: out })
    }

    /// Truncate to a smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a series by truncation");
        Series {
            coeffs: self.coeffs[..order].to_vec(),
        }
    }

    /// Multiply by t^k; the top k coefficients fall off the window, so the
    /// result keeps the same order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![K::zero(); n];
        for i in 0..n.saturating_sub(k) {
            out[i + k] = self.coeff(i);
        }
        Series { coeffs: out }
    }

    // ---- Borel calculus ----

    /// Borel transform: coefficient n divided by n!.
    pub fn borel(&self) -> Self {
        let mut fact = K::one();
        Self::from_fn(self.order(), |n| {
            if n > 0 {
                fact = fact.mul(&K::from_i64(n as i64));
            }
            self.coeff(n).div(&fact)
        })
    }

    /// Inverse Borel transform: coefficient n multiplied by n!.
    pub fn inverse_borel(&self) -> Self {
        let mut fact = K::one();
        Self::from_fn(self.order(), |n| {
            if n > 0 {
                fact = fact.mul(&K::from_i64(n as i64));
            }
            self.coeff(n).mul(&fact)
        })
    }

    /// The operator f -> (1/(1-ct)) * f(t/(1-ct)). Its Borel image is
    /// multiplication by e^(ct). Rate c = 1 is the classical case.
    pub fn phi_rate(&self, c: &K) -> Self {
        // f(t/(1-ct)) is the shift substitution with -c, then divide by 1-ct.
        let composed = self.tau_substitute_unchecked(&c.neg());
        let denom = Poly::from_coeffs(vec![K::one(), c.neg()]);
        composed
            .div_poly(&denom)
            .expect("1 - ct has unit constant term")
    }

    /// Iterated divided difference: (f - f mod t^i) / t^i, truncated at
    /// order N - i.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(
            i <= self.order(),
            "divided difference order {i} exceeds truncation {}",
            self.order()
        );
        Series {
            coeffs: self.coeffs[i..].to_vec(),
        }
    }

    /// Substitute t -> t/(1+bt). Errors when b = 0 (the identity shift is
    /// not a valid Moebius shift).
    pub fn tau_substitute(&self, beta: &K) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::BetaZero);
        }
        Ok(self.tau_substitute_unchecked(beta))
    }

    fn tau_substitute_unchecked(&self, beta: &K) -> Self {
        let n = self.order();
        if n == 0 {
            return self.clone();
        }
        // Horner: acc = c_k + (t/(1+bt)) * acc, from the top coefficient
        // down. Multiplication by t/(1+bt) is the in-place recurrence
        // new[i] = acc[i-1] - b new[i-1], so the whole substitution is
        // O(N^2) scalar operations.
        let beta_is_one = beta.is_one();
        let mut acc = vec![K::zero(); n];
        acc[0] = self.coeff(n - 1);
        for k in (0..n - 1).rev() {
            let mut next = vec![K::zero(); n];
            for i in 1..n {
                let scaled = if beta_is_one {
                    next[i - 1].clone()
                } else {
                    beta.mul(&next[i - 1])
                };
                next[i] = acc[i - 1].sub(&scaled);
            }
            next[0] = self.coeff(k);
            acc = next;
        }
        Series { coeffs: acc }
    }

    // ---- Analytic-style operations ----

    /// Composition f(g) for g with g(0) = 0.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check_order(g);
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !g.coeff(0).is_zero() {
            return Err(Error::Precondition(format!(
                "composition needs g(0) = 0, got constant term {}",
                g.coeff(0)
            )));
        }
        let mut acc = Series::constant(self.coeff(n - 1), n);
        for k in (0..n - 1).rev() {
            acc = acc.mul(g);
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeff(k));
        }
        Ok(acc)
    }

    /// Reciprocal 1/f for invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        let f0 = self.coeff(0);
        if f0.is_zero() {
            return Err(Error::Precondition(
                "reciprocal needs invertible constant term, got 0".into(),
            ));
        }
        let inv = f0.inv();
        let n = self.order();
        let mut out = vec![K::zero(); n];
        if n > 0 {
            out[0] = inv.clone();
        }
        for i in 1..n {
            let mut acc = K::zero();
            for k in 1..=i {
                acc = acc.add(&self.coeff(k).mul(&out[i - k]));
            }
            out[i] = acc.mul(&inv).neg();
        }
        Ok(Series { coeffs: out })
    }

    /// exp(f) for f(0) = 0, by the differential recurrence
    /// y' = f' y, i.e. n y_n = sum_k k f_k y_(n-k).
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Precondition(format!(
                "exp needs constant term 0, got {}",
                self.coeff(0)
            )));
        }
        let n = self.order();
        let mut out = vec![K::zero(); n];
        if n > 0 {
            out[0] = K::one();
        }
        for m in 1..n {
            let mut acc = K::zero();
            for k in 1..=m {
                let fk = self.coeff(k);
                if fk.is_zero() {
                    continue;
                }
                acc = acc.add(&K::from_i64(k as i64).mul(&fk).mul(&out[m - k]));
            }
            out[m] = acc.div(&K::from_i64(m as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// log(f) for f(0) = 1, by n f_n = n y_n + sum_k k y_k f_(n-k).
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::Precondition(format!(
                "log needs constant term 1, got {}",
                self.coeff(0)
            )));
        }
        let n = self.order();
        let mut out = vec![K::zero(); n];
        for m in 1..n {
            let mut acc = K::from_i64(m as i64).mul(&self.coeff(m));
            for k in 1..m {
                if out[k].is_zero() {
                    continue;
                }
                acc = acc.sub(&K::from_i64(k as i64).mul(&out[k]).mul(&self.coeff(m - k)));
            }
            out[m] = acc.div(&K::from_i64(m as i64));
        }
        Ok(Series { coeffs: out })
    }

    /// Termwise derivative, order drops by one conceptually but the window
    /// is kept by padding with the (unknown) top slot removed.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        Self::from_fn(n.saturating_sub(1), |k| {
            self.coeff(k + 1).mul(&K::from_i64((k + 1) as i64))
        })
    }
}

/// The sine series, exact rational coefficients.
pub fn series_sin<K: Field>(order: usize) -> Series<K> {
    Series::from_fn(order, |n| {
        if n % 2 == 1 {
            let sign = if n % 4 == 1 { K::one() } else { K::one().neg() };
            sign.div(&factorial::<K>(n))
        } else {
            K::zero()
        }
    })
}

/// The cosine series, exact rational coefficients.
pub fn series_cos<K: Field>(order: usize) -> Series<K> {
    Series::from_fn(order, |n| {
        if n % 2 == 0 {
            let sign = if n % 4 == 0 { K::one() } else { K::one().neg() };
            sign.div(&factorial::<K>(n))
        } else {
            K::zero()
        }
    })
}

impl<K: Field> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.coeffs.iter().take(8).map(|c| c.to_string()).collect();
        let ellipsis = if self.order() > 8 { ", ..." } else { "" };
        write!(f, "[{}{}] + O(t^{})", shown.join(", "), ellipsis, self.order())
    }
}

impl<K: Field> fmt::Debug for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::GaussRat;

    type S = Series<GaussRat>;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn rat(p: i64, q: i64) -> GaussRat {
        GaussRat::ratio(p, q)
    }

    fn from_i64s(v: &[i64]) -> S {
        S::from_coeffs(v.iter().map(|&n| g(n)).collect())
    }

    #[test]
    fn borel_inverse_borel_round_trip() {
        // sum n! t^n  -> geometric series
        let mut fact = GaussRat::from_int(1);
        let f = S::from_fn(10, |n| {
            if n > 0 {
                fact = fact.mul(&g(n as i64));
            }
            fact.clone()
        });
        let b = f.borel();
        assert_eq!(b, S::from_coeffs(vec![g(1); 10]));
        assert_eq!(b.inverse_borel(), f);

        // 1 + t fixed
        let low = from_i64s(&[1, 1, 0, 0]);
        assert_eq!(low.borel(), low);
    }

    #[test]
    fn inverse_borel_of_geometric_is_factorials() {
        let geo = S::from_coeffs(vec![g(1); 8]);
        let ib = geo.inverse_borel();
        assert_eq!(ib.coeff(5), g(120));
    }

    #[test]
    fn phi_of_constant_is_geometric() {
        let one = S::one(12);
        let phi = one.phi_rate(&g(1));
        assert_eq!(phi, S::from_coeffs(vec![g(1); 12]));
    }

    #[test]
    fn phi_of_t_counts_integers() {
        // Phi(t) = t/(1-t)^2 = sum n t^n
        let t = S::var(12);
        let phi = t.phi_rate(&g(1));
        let expect = S::from_fn(12, |n| g(n as i64));
        assert_eq!(phi, expect);
    }

    #[test]
    fn phi_borel_identity() {
        // borel(phi(f)) = borel(f) * e^t for a generic-looking f
        let f = from_i64s(&[3, -1, 4, 1, -5, 9, 2, 6, -5, 3, 5, 8, 9, 7, 9, 3, 2, 3, 8, 4]);
        let lhs = f.phi_rate(&g(1)).borel();
        let rhs = f.borel().mul(&S::exp_ct(&g(1), 20));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_difference_drops_prefix() {
        let f = from_i64s(&[1, 1, 2]);
        assert_eq!(f.divided_difference(1), from_i64s(&[1, 2]));
        assert_eq!(f.divided_difference(0), f);
    }

    #[test]
    fn borel_of_divided_difference_is_derivative() {
        let f = from_i64s(&[2, 7, 1, 8, 2, 8, 1, 8, 2, 8]);
        let lhs = f.divided_difference(1).borel();
        let rhs = f.borel().derivative();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_substitute_geometric_expansion() {
        // t -> t/(1+t) = t - t^2 + t^3 - ...
        let t = S::var(8);
        let sub = t.tau_substitute(&g(1)).unwrap();
        let expect = S::from_fn(8, |n| match n {
            0 => g(0),
            n if n % 2 == 1 => g(1),
            _ => g(-1),
        });
        assert_eq!(sub, expect);

        // constants are invariant
        let c = S::constant(g(7), 8);
        assert_eq!(c.tau_substitute(&g(2)).unwrap(), c);

        // beta = 0 rejected
        assert!(t.tau_substitute(&g(0)).is_err());
    }

    #[test]
    fn tau_substitute_is_ring_morphism() {
        let f = from_i64s(&[1, 2, 0, -1, 3, 5, -2, 1, 1, 4]);
        let h = from_i64s(&[2, -1, 1, 0, 2, -3, 1, 0, 5, 1]);
        let beta = rat(1, 2);
        let tf = f.tau_substitute(&beta).unwrap();
        let th = h.tau_substitute(&beta).unwrap();
        assert_eq!(f.mul(&h).tau_substitute(&beta).unwrap(), tf.mul(&th));
        assert_eq!(f.add(&h).tau_substitute(&beta).unwrap(), tf.add(&th));
    }

    #[test]
    fn exp_log_round_trip_and_bell() {
        // exp(e^t - 1) has coefficients Bell_n / n!
        let n = 8;
        let expm1 = S::exp_ct(&g(1), n).sub(&S::one(n));
        let bell_egf = expm1.exp().unwrap();
        let expected = [
            g(1),
            g(1),
            g(1),
            rat(5, 6),
            rat(5, 8),
            rat(13, 30),
        ];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(&bell_egf.coeff(k), e, "coefficient {k}");
        }
        // log inverts exp
        assert_eq!(bell_egf.log().unwrap(), expm1);
    }

    #[test]
    fn recip_gives_bernoulli_egf() {
        // 1 / sum t^n/(n+1)!  =  t/(e^t - 1): 1, -1/2, 1/12, 0, -1/720
        let n = 8;
        let mut fact = g(1);
        let f = S::from_fn(n, |k| {
            fact = fact.mul(&g((k + 1) as i64));
            GaussRat::from_int(1).div(&fact)
        });
        let r = f.recip().unwrap();
        assert_eq!(r.coeff(0), g(1));
        assert_eq!(r.coeff(1), rat(-1, 2));
        assert_eq!(r.coeff(2), rat(1, 12));
        assert_eq!(r.coeff(3), g(0));
        assert_eq!(r.coeff(4), rat(-1, 720));
    }

    #[test]
    fn compose_constant_case() {
        let f = from_i64s(&[3, 1, 4, 1]);
        let zero = S::zero(4);
        assert_eq!(f.compose(&zero).unwrap(), S::constant(g(3), 4));
        // nonzero constant term rejected
        assert!(f.compose(&S::one(4)).is_err());
    }

    #[test]
    fn compose_associativity_sample() {
        let f = from_i64s(&[1, 1, 1, 1, 1, 1, 1, 1]);
        let gs = from_i64s(&[0, 1, 2, 3, 0, 1, 2, 3]);
        let h = from_i64s(&[0, 2, -1, 0, 1, 0, 0, 2]);
        let lhs = f.compose(&gs).unwrap().compose(&h).unwrap();
        let rhs = f.compose(&gs.compose(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    #[should_panic(expected = "truncation mismatch")]
    fn order_mismatch_panics() {
        let a = S::one(4);
        let b = S::one(5);
        let _ = a.add(&b);
    }

    #[test]
    fn trig_series() {
        let sin: S = series_sin(8);
        let cos: S = series_cos(8);
        // sin^2 + cos^2 = 1
        let unit = sin.mul(&sin).add(&cos.mul(&cos));
        assert_eq!(unit, S::one(8));
        assert_eq!(sin.coeff(3), rat(-1, 6));
        assert_eq!(cos.coeff(2), rat(-1, 2));
    }
}
