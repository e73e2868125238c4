//! Abstract field interface used by the polynomial, rational-function and
//! series layers.
//!
//! Two coefficient fields matter in practice: the Gaussian rationals Q(i)
//! ([`crate::gauss::GaussRat`]) and the parameter field Q(i)(x)
//! ([`crate::param::Param`]). Everything downstream is generic so both run
//! through the same code paths.

use std::fmt::{Debug, Display};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field. All operations take references; implementations are
/// expected to keep values reduced so that `==` is semantic equality.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse. Panics on zero; callers check `is_zero` first.
    fn inv(&self) -> Self;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// n! as a field element, built by repeated multiplication so arbitrarily
/// large factorials stay exact.
pub fn factorial<K: Field>(n: usize) -> K {
    let mut acc = K::one();
    for k in 2..=n {
        acc = acc.mul(&K::from_i64(k as i64));
    }
    acc
}

/// Binomial coefficient C(n, k) as a field element.
pub fn binomial<K: Field>(n: usize, k: usize) -> K {
    if k > n {
        return K::zero();
    }
    let k = k.min(n - k);
    let mut acc = K::one();
    for j in 0..k {
        acc = acc.mul(&K::from_i64((n - j) as i64));
        acc = acc.div(&K::from_i64((j + 1) as i64));
    }
    acc
}

/// Rising factorial j(j+1)...(j+i-1) as a field element.
pub fn rising_factorial<K: Field>(j: usize, i: usize) -> K {
    let mut acc = K::one();
    for l in 0..i {
        acc = acc.mul(&K::from_i64((j + l) as i64));
    }
    acc
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

/// Floor of a rational number as a big integer.
pub fn rational_floor(r: &BigRational) -> num_bigint::BigInt {
    let q = r.numer() / r.denom();
    if r.is_negative() && &q * r.denom() != *r.numer() {
        q - 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial::<BigRational>(5), rat(120, 1));
        assert_eq!(binomial::<BigRational>(6, 2), rat(15, 1));
        assert_eq!(binomial::<BigRational>(4, 7), rat(0, 1));
        assert_eq!(rising_factorial::<BigRational>(2, 3), rat(24, 1));
        assert_eq!(rising_factorial::<BigRational>(3, 0), rat(1, 1));
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(rational_floor(&rat(7, 2)), BigInt::from(3));
        assert_eq!(rational_floor(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(rational_floor(&rat(-6, 2)), BigInt::from(-3));
        assert_eq!(rational_floor(&rat(0, 1)), BigInt::from(0));
    }
}
