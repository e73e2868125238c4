//! Dense univariate polynomials over an exact field.
//!
//! The variable is anonymous; the surrounding context fixes whether a value
//! is a polynomial in t, in the frame variable s, or in the parameter x.
//! Invariant: the coefficient vector never has a trailing zero, so `deg` and
//! structural equality are reliable.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![K::one()],
        }
    }

    pub fn constant(c: K) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The monomial c * t^n.
    pub fn monomial(c: K, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(K::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(vals: &[i64]) -> Self {
        Self::from_coeffs(vals.iter().map(|&v| K::from_i64(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// Coefficient of t^n, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> K {
        self.coeffs.get(n).cloned().unwrap_or_else(K::zero)
    }

    /// Leading coefficient. Panics on the zero polynomial.
    pub fn lc(&self) -> &K {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    /// Multiplicity of the root 0, i.e. the t-adic valuation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&other.coeff(k)));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(K::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiply by t^n.
    pub fn mul_var_pow(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![K::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.mul(&K::from_i64(n as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    /// Panics if d is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg().unwrap();
        if self.coeffs.len() < dd + 1 {
            return (Self::zero(), self.clone());
        }
        let lc_inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); rem.len() - dd];
        loop {
            while rem.last().is_some_and(K::is_zero) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap().mul(&lc_inv);
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].sub(&factor.mul(dc));
            }
            quot[shift] = factor;
            rem.pop();
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    /// Scale so the leading coefficient is one. Zero stays zero.
    pub fn into_monic(self) -> Self {
        if self.is_zero() || self.lc().is_one() {
            return self;
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// p(t + c), by Horner on the shifted basis.
    pub fn shift_arg(&self, c: &K) -> Self {
        let shift = Self::from_coeffs(vec![c.clone(), K::one()]);
        let mut acc = Self::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&Self::constant(coeff.clone()));
        }
        acc
    }

    /// p(c * t).
    pub fn scale_arg(&self, c: &K) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut p = K::one();
        for coeff in &self.coeffs {
            out.push(coeff.mul(&p));
            p = p.mul(c);
        }
        Self::from_coeffs(out)
    }

    /// Substitute t -> (a t + b)/(c t + d) and clear denominators:
    /// returns sum_i p_i (a t + b)^i (c t + d)^(deg - i), which equals
    /// p((at+b)/(ct+d)) * (ct+d)^deg.
    pub fn moebius_numerator(&self, a: &K, b: &K, c: &K, d: &K) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let top = Self::from_coeffs(vec![b.clone(), a.clone()]);
        let bot = Self::from_coeffs(vec![d.clone(), c.clone()]);
        // Horner from the leading coefficient down; lower-degree terms pick
        // up one more power of `bot` at each step.
        let mut acc = Self::constant(self.coeffs.last().unwrap().clone());
        let mut bot_pow = Self::one();
        for coeff in self.coeffs.iter().rev().skip(1) {
            bot_pow = bot_pow.mul(&bot);
            acc = acc
                .mul(&top)
                .add(&bot_pow.scale(coeff));
        }
        acc
    }

    /// Resultant of two polynomials over the field, via the Euclidean
    /// remainder sequence. Res(a, b) = 0 iff a and b share a root.
    pub fn resultant(a: &Self, b: &Self) -> K {
        fn go<K: Field>(a: &Poly<K>, b: &Poly<K>) -> K {
            if b.is_zero() {
                return if a.deg() == Some(0) { K::one() } else { K::zero() };
            }
            let n = match a.deg() {
                None => return K::zero(),
                Some(n) => n,
            };
            let m = b.deg().unwrap();
            if m == 0 {
                let mut acc = K::one();
                for _ in 0..n {
                    acc = acc.mul(b.lc());
                }
                return acc;
            }
            let (_, r) = a.divrem(b);
            if r.is_zero() {
                return K::zero();
            }
            let rd = r.deg().unwrap();
            let mut lead_pow = K::one();
            for _ in 0..(n - rd) {
                lead_pow = lead_pow.mul(b.lc());
            }
            let sign = if (n * m) % 2 == 1 {
                K::one().neg()
            } else {
                K::one()
            };
            sign.mul(&lead_pow).mul(&go(b, &r))
        }
        if a.is_zero() || b.is_zero() {
            return K::zero();
        }
        if a.deg() == Some(0) {
            let mut acc = K::one();
            for _ in 0..b.deg().unwrap() {
                acc = acc.mul(a.lc());
            }
            return acc;
        }
        go(a, b)
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("t"))
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: Field> Poly<K> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let needs_parens = cs.contains('+') || (cs[1..].contains('-'));
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let term = match n {
                0 => cs,
                _ => {
                    let var_part = if n == 1 {
                        var.to_string()
                    } else {
                        format!("{var}^{n}")
                    };
                    if c.is_one() {
                        var_part
                    } else {
                        format!("{cs}*{var_part}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}
