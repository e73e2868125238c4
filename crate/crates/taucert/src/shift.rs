//! The operator calculus on rational functions: the Moebius shift
//! tau: t -> t/(1+bt), the derivation d = t^2 d/dt that commutes with it,
//! and the change of frame s = 1/(bt) under which tau becomes the unit shift
//! s -> s+1 and d becomes -(1/b) d/ds.
//!
//! The shift fixes only t = 0 (a parabolic homography); dilations t -> at
//! with a != 1 have two fixed points and belong to a different theory, so
//! only the single-fixed-point family is representable here.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{rational_floor, Field};
use crate::gauss::{CoeffField, GaussRat};
use crate::ratfun::RatFun;

/// The shift t -> t/(1+bt) for a nonzero Gaussian rational b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoebiusShift {
    beta: GaussRat,
}

impl MoebiusShift {
    pub fn new(beta: GaussRat) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::BetaZero);
        }
        Ok(MoebiusShift { beta })
    }

    /// The classical shift t -> t/(1+t).
    pub fn unit() -> Self {
        MoebiusShift {
            beta: GaussRat::from_int(1),
        }
    }

    pub fn beta(&self) -> &GaussRat {
        &self.beta
    }

    pub fn beta_in<K: CoeffField>(&self) -> K {
        K::from_gauss(&self.beta)
    }
}

/// Apply tau: substitute t -> t/(1+bt). A field automorphism of K(t).
pub fn tau_apply<K: CoeffField>(f: &RatFun<K>, shift: &MoebiusShift) -> RatFun<K> {
    tau_power(f, shift, 1)
}

/// Apply tau^k for any integer k; tau_b^k is the shift with parameter k*b,
/// and k = 0 is the identity.
pub fn tau_power<K: CoeffField>(f: &RatFun<K>, shift: &MoebiusShift, k: i64) -> RatFun<K> {
    if k == 0 {
        return f.clone();
    }
    let kb = shift.beta_in::<K>().mul(&K::from_i64(k));
    f.moebius_subst(&K::one(), &K::zero(), &kb, &K::one())
}

/// The derivation d = t^2 d/dt, iterated i times.
pub fn partial_d<K: Field>(f: &RatFun<K>, i: usize) -> RatFun<K> {
    let t_sq = RatFun::from_poly(crate::poly::Poly::monomial(K::one(), 2));
    let mut acc = f.clone();
    for _ in 0..i {
        acc = acc.derivative().mul(&t_sq);
    }
    acc
}

/// Move to the shift frame: F(s) = f(1/(bs)). In this frame tau acts as
/// s -> s+1 and d acts as -(1/b) d/ds. The map is an involution up to the
/// variable renaming, so [`from_shift_frame`] uses the same substitution.
pub fn to_shift_frame<K: CoeffField>(f: &RatFun<K>, shift: &MoebiusShift) -> RatFun<K> {
    let b = shift.beta_in::<K>();
    f.moebius_subst(&K::zero(), &K::one(), &b, &K::zero())
}

/// Return from the shift frame: f(t) = F(1/(bt)).
pub fn from_shift_frame<K: CoeffField>(big_f: &RatFun<K>, shift: &MoebiusShift) -> RatFun<K> {
    to_shift_frame(big_f, shift)
}

/// The frame image of the derivation: -(1/b) dF/ds.
pub fn frame_derivation<K: CoeffField>(big_f: &RatFun<K>, shift: &MoebiusShift) -> RatFun<K> {
    let b_inv = shift.beta_in::<K>().inv();
    big_f.derivative().scale(&b_inv).neg()
}

/// The unit shift in the frame: sigma(F)(s) = F(s+1).
pub fn sigma<K: Field>(big_f: &RatFun<K>) -> RatFun<K> {
    big_f.moebius_subst(&K::one(), &K::one(), &K::zero(), &K::one())
}

/// Shift by any integer in the frame: F(s + k).
pub fn sigma_power<K: Field>(big_f: &RatFun<K>, k: i64) -> RatFun<K> {
    big_f.moebius_subst(&K::one(), &K::from_i64(k), &K::zero(), &K::one())
}

/// Frame coordinate of a nonzero pole: s = 1/(b t).
pub fn frame_coordinate(pole: &GaussRat, shift: &MoebiusShift) -> GaussRat {
    assert!(!pole.is_zero(), "pole at t = 0 lives at frame infinity");
    GaussRat::from_int(1).div(&shift.beta().mul(pole))
}

/// Decide whether two nonzero poles lie on the same tau-orbit, and return
/// the integer offset of q past p in the shift frame: frame(q) - frame(p).
/// Orbits are exactly the integer-translation classes in the frame.
///
/// Panics when either pole is zero; t = 0 corresponds to the polynomial part
/// in the frame and is orbit-exempt.
pub fn same_orbit(p: &GaussRat, q: &GaussRat, shift: &MoebiusShift) -> Option<i64> {
    assert!(
        !p.is_zero() && !q.is_zero(),
        "same_orbit is undefined for the fixed point t = 0"
    );
    let diff = frame_coordinate(q, shift).sub(&frame_coordinate(p, shift));
    gauss_as_integer(&diff)
}

/// The value as an i64 when it is a (small) rational integer.
pub fn gauss_as_integer(g: &GaussRat) -> Option<i64> {
    if !g.im().is_zero() {
        return None;
    }
    let re = g.re();
    if re.denom() != &BigInt::from(1) {
        return None;
    }
    re.numer().to_i64()
}

/// Floor of the real part, exact. Used to pick orbit representatives with
/// real part in [0, 1).
pub fn floor_re(g: &GaussRat) -> BigInt {
    rational_floor(g.re())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    type R = RatFun<GaussRat>;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn rf(num: &[i64], den: &[i64]) -> R {
        R::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn tau_of_t() {
        let shift = MoebiusShift::unit();
        assert_eq!(tau_apply(&R::var(), &shift), rf(&[0, 1], &[1, 1]));
    }

    #[test]
    fn tau_inverse_round_trip() {
        let beta = GaussRat::ratio(1, 2).add(&GaussRat::i());
        let shift = MoebiusShift::new(beta).unwrap();
        let f = rf(&[1, 2, 3], &[2, 0, 0, 5]);
        let back = tau_power(&tau_apply(&f, &shift), &shift, -1);
        assert_eq!(back, f);
    }

    #[test]
    fn tau_power_composes() {
        let shift = MoebiusShift::unit();
        let f = rf(&[1, 1], &[3, -1, 1]);
        let twice = tau_apply(&tau_apply(&f, &shift), &shift);
        assert_eq!(tau_power(&f, &shift, 2), twice);
    }

    #[test]
    fn inverse_power_pole_shift_identity() {
        // tau(1/t^2) - 1/t^2 = 2/t + 1
        let shift = MoebiusShift::unit();
        let f = rf(&[1], &[0, 0, 1]);
        let lhs = tau_apply(&f, &shift).sub(&f);
        assert_eq!(lhs, rf(&[2, 1], &[0, 1]));
    }

    #[test]
    fn tau_of_simple_pole() {
        // tau(1/(t - a)) = (1+t)/((1-a)t - a)
        let shift = MoebiusShift::unit();
        let a = g(3);
        let f = R::new(
            Poly::from_i64s(&[1]),
            Poly::from_coeffs(vec![-&a, g(1)]),
        )
        .unwrap();
        let image = tau_apply(&f, &shift);
        let expect = R::new(
            Poly::from_i64s(&[1, 1]),
            Poly::from_coeffs(vec![-&a, g(1).sub(&a)]),
        )
        .unwrap();
        assert_eq!(image, expect);
    }

    #[test]
    fn partial_d_monomials() {
        // d^n(t) = n! t^(n+1)
        let t = R::var();
        assert_eq!(partial_d(&t, 0), t);
        assert_eq!(partial_d(&t, 1), R::from_poly(Poly::monomial(g(1), 2)));
        assert_eq!(partial_d(&t, 2), R::from_poly(Poly::monomial(g(2), 3)));
        assert_eq!(partial_d(&t, 3), R::from_poly(Poly::monomial(g(6), 4)));
        // constants die
        assert_eq!(partial_d(&R::one(), 1), R::zero());
    }

    #[test]
    fn commutation_with_tau() {
        let shift = MoebiusShift::unit();
        let f = rf(&[1, 0, 2], &[1, 1, 0, 1]);
        let lhs = partial_d(&tau_apply(&f, &shift), 1);
        let rhs = tau_apply(&partial_d(&f, 1), &shift);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn frame_defining_case() {
        let shift = MoebiusShift::unit();
        // f = t -> F = 1/s, and tau(t) -> 1/(s+1) = sigma(F)
        let f = R::var();
        let big_f = to_shift_frame(&f, &shift);
        assert_eq!(big_f, rf(&[1], &[0, 1]));
        let tf = tau_apply(&f, &shift);
        assert_eq!(to_shift_frame(&tf, &shift), sigma(&big_f));
        // round trip
        assert_eq!(from_shift_frame(&big_f, &shift), f);
    }

    #[test]
    fn frame_intertwines_derivation() {
        let shift = MoebiusShift::unit();
        // f = 1/t -> F = s; d(1/t) = -1 maps to -dF/ds = -1
        let f = rf(&[1], &[0, 1]);
        let big_f = to_shift_frame(&f, &shift);
        assert_eq!(big_f, R::var());
        let lhs = to_shift_frame(&partial_d(&f, 1), &shift);
        assert_eq!(lhs, frame_derivation(&big_f, &shift));
        assert_eq!(lhs, R::constant(g(-1)));
    }

    #[test]
    fn frame_intertwines_for_general_beta() {
        let shift = MoebiusShift::new(GaussRat::i().mul(&GaussRat::from_int(2))).unwrap();
        let f = rf(&[1, 3], &[1, 0, 1]);
        let lhs = to_shift_frame(&tau_apply(&f, &shift), &shift);
        let rhs = sigma(&to_shift_frame(&f, &shift));
        assert_eq!(lhs, rhs);
        let lhs_d = to_shift_frame(&partial_d(&f, 1), &shift);
        let rhs_d = frame_derivation(&to_shift_frame(&f, &shift), &shift);
        assert_eq!(lhs_d, rhs_d);
    }

    #[test]
    fn orbit_offsets() {
        let shift = MoebiusShift::unit();
        assert_eq!(same_orbit(&g(1), &GaussRat::ratio(1, 2), &shift), Some(1));
        assert_eq!(same_orbit(&g(1), &GaussRat::ratio(1, 3), &shift), Some(2));
        assert_eq!(same_orbit(&g(1), &GaussRat::ratio(2, 3), &shift), None);
        // symmetry is negation
        assert_eq!(same_orbit(&GaussRat::ratio(1, 2), &g(1), &shift), Some(-1));
        // reflexive
        assert_eq!(same_orbit(&g(5), &g(5), &shift), Some(0));
    }
}
