//! Root extraction over Q(i).
//!
//! Finds all Gaussian-rational roots of a polynomial with Gaussian-rational
//! coefficients, with multiplicities. Candidates come from a rational-root
//! search in the Gaussian integers: after clearing denominators, any root
//! u/v in lowest terms has u dividing the trailing and v dividing the leading
//! coefficient in Z[i]. Divisors are enumerated by factoring coefficient
//! norms; every candidate is verified by evaluation.
//!
//! There is no algebraic-number tower: factors irreducible over Q(i) are
//! simply left unsplit, and callers that need a full splitting report a
//! non-split denominator.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::GaussRat;
use crate::poly::Poly;

const MAX_DIVISORS: usize = 20_000;
const MAX_CANDIDATES: usize = 400_000;

/// All Q(i) roots of `p` with multiplicities. The sum of multiplicities can
/// be less than deg p when an irreducible factor of degree >= 2 remains.
pub fn qi_roots(p: &Poly<GaussRat>) -> Result<Vec<(GaussRat, usize)>> {
    let mut roots = Vec::new();
    if p.deg().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let val = p.valuation().unwrap();
    let mut reduced = p.clone();
    if val > 0 {
        reduced = strip_valuation(p, val);
        roots.push((GaussRat::from_int(0), val));
    }
    if reduced.deg() == Some(0) {
        return Ok(roots);
    }

    let scaled = clear_denominators(&reduced);
    let trailing = scaled.first().expect("valuation stripped").clone();
    let leading = scaled.last().unwrap().clone();

    let num_divs = gaussian_divisors(&trailing)?;
    let den_divs = gaussian_divisors(&leading)?;
    if num_divs.len().saturating_mul(den_divs.len()) > MAX_CANDIDATES {
        return Err(Error::RootSearchOverflow(format!(
            "{} x {} divisor candidates",
            num_divs.len(),
            den_divs.len()
        )));
    }

    let units = [
        GInt::new(1, 0),
        GInt::new(-1, 0),
        GInt::new(0, 1),
        GInt::new(0, -1),
    ];
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for u in &num_divs {
        for unit in &units {
            let uu = u.mul(unit);
            for v in &den_divs {
                let cand = gint_ratio(&uu, v);
                if !seen.insert(cand.clone()) {
                    continue;
                }
                if reduced.eval(&cand).is_zero() {
                    found.push(cand);
                }
            }
        }
    }

    for root in found {
        let lin = Poly::from_coeffs(vec![-&root, GaussRat::from_int(1)]);
        let mut mult = 0usize;
        loop {
            let (q, r) = reduced.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            reduced = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        roots.push((root, mult));
    }
    Ok(roots)
}

/// Split check: true iff the polynomial factors into linear factors over
/// Q(i). Returns the roots when it does.
pub fn split_roots(p: &Poly<GaussRat>) -> Result<Vec<(GaussRat, usize)>> {
    let roots = qi_roots(p)?;
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    let deg = p.deg().unwrap_or(0);
    if total != deg {
        return Err(Error::NonSplitDenominator {
            degree: deg - total,
        });
    }
    Ok(roots)
}

fn strip_valuation(p: &Poly<GaussRat>, val: usize) -> Poly<GaussRat> {
    Poly::from_coeffs(p.coeffs()[val..].to_vec())
}

/// Scale coefficients to Gaussian integers (returned as GInt values, degree
/// order preserved, trailing coefficient first).
fn clear_denominators(p: &Poly<GaussRat>) -> Vec<GInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re().denom());
        lcm = lcm.lcm(c.im().denom());
    }
    p.coeffs()
        .iter()
        .map(|c| {
            let re = c.re() * BigRational::from_integer(lcm.clone());
            let im = c.im() * BigRational::from_integer(lcm.clone());
            debug_assert!(re.is_integer() && im.is_integer());
            GInt {
                re: re.to_integer(),
                im: im.to_integer(),
            }
        })
        .collect()
}

fn gint_ratio(u: &GInt, v: &GInt) -> GaussRat {
    let n = v.norm();
    let prod = u.mul(&v.conj());
    GaussRat::new(
        BigRational::new(prod.re, n.clone()),
        BigRational::new(prod.im, n),
    )
}

// ---- Gaussian integers ----

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn new(re: i64, im: i64) -> Self {
        GInt {
            re: re.into(),
            im: im.into(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn conj(&self) -> Self {
        GInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, o: &Self) -> Self {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        GInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Rounded Euclidean division: remainder norm is at most half the
    /// divisor norm, which makes the gcd terminate.
    fn divrem(&self, d: &Self) -> (Self, Self) {
        let n = d.norm();
        assert!(!n.is_zero());
        let prod = self.mul(&d.conj());
        let q = GInt {
            re: round_div(&prod.re, &n),
            im: round_div(&prod.im, &n),
        };
        let r = self.sub(&q.mul(d));
        (q, r)
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient self / d when d divides self.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let n = d.norm();
        let prod = self.mul(&d.conj());
        if (&prod.re % &n).is_zero() && (&prod.im % &n).is_zero() {
            Some(GInt {
                re: &prod.re / &n,
                im: &prod.im / &n,
            })
        } else {
            None
        }
    }
}

/// Round a/b to the nearest integer; ties may go either way, which keeps the
/// Euclidean remainder norm at most half the divisor norm.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if (&r + &r).abs() >= b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// All divisors of g up to units, from a factorization of its norm.
fn gaussian_divisors(g: &GInt) -> Result<Vec<GInt>> {
    assert!(!g.is_zero());
    let norm = g.norm();
    let n = norm
        .to_u128()
        .ok_or_else(|| Error::RootSearchOverflow("coefficient norm exceeds u128".into()))?;
    let rational_primes = factor_u128(n)?;

    // Gaussian primes dividing g, with exponents.
    let mut gprimes: Vec<(GInt, u32)> = Vec::new();
    for (p, _) in rational_primes {
        if p == 2 {
            push_with_valuation(&mut gprimes, g, GInt::new(1, 1));
        } else if p % 4 == 3 {
            let pg = GInt {
                re: BigInt::from(p),
                im: BigInt::zero(),
            };
            push_with_valuation(&mut gprimes, g, pg);
        } else {
            let pi = gaussian_prime_above(p)?;
            push_with_valuation(&mut gprimes, g, pi.clone());
            push_with_valuation(&mut gprimes, g, pi.conj());
        }
    }

    let mut divisors = vec![GInt::new(1, 0)];
    for (pi, e) in &gprimes {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(pi);
                next.push(acc.clone());
            }
        }
        divisors = next;
        if divisors.len() > MAX_DIVISORS {
            return Err(Error::RootSearchOverflow(format!(
                "more than {MAX_DIVISORS} divisors"
            )));
        }
    }
    Ok(divisors)
}

fn push_with_valuation(out: &mut Vec<(GInt, u32)>, g: &GInt, pi: GInt) {
    let mut v = 0u32;
    let mut cur = g.clone();
    while let Some(q) = cur.exact_div(&pi) {
        cur = q;
        v += 1;
    }
    if v > 0 {
        out.push((pi, v));
    }
}

/// A Gaussian prime above a rational prime p = 1 mod 4, found from a square
/// root of -1 modulo p.
fn gaussian_prime_above(p: u128) -> Result<GInt> {
    let x = sqrt_minus_one_mod(p)?;
    let pi = GInt::gcd(
        &GInt {
            re: BigInt::from(p),
            im: BigInt::zero(),
        },
        &GInt {
            re: BigInt::from(x),
            im: BigInt::one(),
        },
    );
    debug_assert_eq!(pi.norm(), BigInt::from(p));
    Ok(pi)
}

fn sqrt_minus_one_mod(p: u128) -> Result<u128> {
    if p >= 1 << 64 {
        return Err(Error::RootSearchOverflow(format!(
            "prime {p} too large for modular square root"
        )));
    }
    let exp = (p - 1) / 4;
    for a in 2..1000u128 {
        let x = pow_mod(a, exp, p);
        if mul_mod(x, x, p) == p - 1 {
            return Ok(x);
        }
    }
    Err(Error::RootSearchOverflow(format!(
        "no square root of -1 mod {p} found"
    )))
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // Safe because callers keep m < 2^64.
    (a % m) * (b % m) % m
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const LIMIT: usize = 1 << 16;
        let mut sieve = vec![true; LIMIT];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..LIMIT {
            if sieve[i] {
                let mut j = i * i;
                while j < LIMIT {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i as u64))
            .collect()
    })
}

fn factor_u128(mut n: u128) -> Result<Vec<(u128, u32)>> {
    let mut out = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    for &p in small_primes() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        factor_large(n, &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn factor_large(n: u128, out: &mut Vec<(u128, u32)>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if n >= 1 << 64 {
        // mul_mod would overflow; coefficients this large are out of scope.
        return Err(Error::RootSearchOverflow(format!(
            "cofactor {n} exceeds factoring range"
        )));
    }
    if is_prime_u128(n) {
        merge_factor(out, n, 1);
        return Ok(());
    }
    let d = pollard_rho(n)?;
    let mut e1 = 0u32;
    let mut m = n;
    while m % d == 0 {
        m /= d;
        e1 += 1;
    }
    if is_prime_u128(d) {
        merge_factor(out, d, e1);
    } else {
        for _ in 0..e1 {
            factor_large(d, out)?;
        }
    }
    factor_large(m, out)
}

fn merge_factor(out: &mut Vec<(u128, u32)>, p: u128, e: u32) {
    if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        out.push((p, e));
    }
}

fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    if n >= 1 << 64 {
        // Out of supported range; treated as composite so factoring fails
        // loudly rather than silently mis-splitting.
        return false;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> Result<u128> {
    if n % 2 == 0 {
        return Ok(2);
    }
    let mut c = 1u128;
    while c < 64 {
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        let mut steps = 0u64;
        while d == 1 {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = gcd_u128(x.abs_diff(y), n);
            steps += 1;
            if steps > 2_000_000 {
                break;
            }
        }
        if d != 1 && d != n {
            return Ok(d);
        }
        c += 1;
    }
    Err(Error::RootSearchOverflow(format!("cannot factor {n}")))
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    fn linear(root: &GaussRat) -> Poly<GaussRat> {
        Poly::from_coeffs(vec![-root, GaussRat::from_int(1)])
    }

    #[test]
    fn rational_roots() {
        // (t - 1)(t - 1/2)^2
        let p = linear(&g(1, 0)).mul(&linear(&GaussRat::ratio(1, 2)).pow(2));
        let mut roots = qi_roots(&p).unwrap();
        roots.sort_by_key(|(_, m)| *m);
        assert_eq!(roots, vec![(g(1, 0), 1), (GaussRat::ratio(1, 2), 2)]);
    }

    #[test]
    fn gaussian_roots() {
        // (t - i)(t + i) = t^2 + 1
        let p = Poly::from_i64s(&[1, 0, 1]);
        let roots = split_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, m)| *r == g(0, 1) && *m == 1));
        assert!(roots.iter().any(|(r, m)| *r == g(0, -1) && *m == 1));
    }

    #[test]
    fn mixed_root_with_fraction() {
        // (t - (1/2 + 3i/2)) * (t - 2)
        let alpha = GaussRat::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(3.into(), 2.into()),
        );
        let p = linear(&alpha).mul(&linear(&g(2, 0)));
        let roots = split_roots(&p).unwrap();
        assert!(roots.iter().any(|(r, _)| *r == alpha));
        assert!(roots.iter().any(|(r, _)| *r == g(2, 0)));
    }

    #[test]
    fn zero_root_multiplicity() {
        // t^3 (t - 5)
        let p = linear(&g(5, 0)).mul_var_pow(3);
        let roots = qi_roots(&p).unwrap();
        assert!(roots.contains(&(g(0, 0), 3)));
        assert!(roots.contains(&(g(5, 0), 1)));
    }

    #[test]
    fn irreducible_over_qi_is_reported() {
        // t^2 - 2 has no Q(i) roots
        let p = Poly::from_i64s(&[-2, 0, 1]);
        assert!(qi_roots(&p).unwrap().is_empty());
        assert_eq!(
            split_roots(&p).unwrap_err(),
            Error::NonSplitDenominator { degree: 2 }
        );
    }

    #[test]
    fn gint_gcd_and_primes() {
        // 5 = (2+i)(2-i)
        let pi = gaussian_prime_above(5).unwrap();
        assert_eq!(pi.norm(), BigInt::from(5));
        assert_eq!(factor_u128(600).unwrap(), vec![(2, 3), (3, 1), (5, 2)]);
        assert!(is_prime_u128(1_000_000_007));
        assert!(!is_prime_u128(1_000_000_007u128 * 998_244_353));
        assert_eq!(
            factor_u128(1_000_000_007u128 * 998_244_353).unwrap().len(),
            2
        );
    }

    #[test]
    fn round_div_rounds_to_nearest() {
        assert_eq!(round_div(&BigInt::from(7), &BigInt::from(2)), BigInt::from(4));
        assert_eq!(round_div(&BigInt::from(-7), &BigInt::from(2)), BigInt::from(-4));
        assert_eq!(round_div(&BigInt::from(6), &BigInt::from(2)), BigInt::from(3));
        assert_eq!(round_div(&BigInt::from(1), &BigInt::from(3)), BigInt::from(0));
    }
}
