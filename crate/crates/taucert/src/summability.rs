//! Rational summability and telescopers, decided in the shift frame.
//!
//! In the frame s = 1/(bt) the shift acts as s -> s+1, so the poles of a
//! rational function fall into integer-translation orbits. A proper rational
//! function is a difference sigma(G) - G iff every orbit sum of its
//! partial-fraction coefficients vanishes, per pole order; polynomial parts
//! are always summable through the discrete antiderivative. Telescoper
//! existence reduces to a small exact linear system on those orbit sums,
//! because the derivation acts diagonally on partial fractions with
//! rising-factorial factors.

use crate::error::{Error, Result};
use crate::field::{rising_factorial, Field};
use crate::gauss::GaussRat;
use crate::linsolve::{linsolve, LinSystem};
use crate::partfrac::{partial_fractions, PfTerm};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::shift::{
    floor_re, from_shift_frame, gauss_as_integer, partial_d, sigma, tau_apply, to_shift_frame,
    MoebiusShift,
};

type Rat = RatFun<GaussRat>;

/// One pole of an orbit: located at rep + offset, with its order and
/// partial-fraction coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitMember {
    pub offset: i64,
    pub order: usize,
    pub coeff: GaussRat,
}

/// An integer-translation class of poles, keyed by the representative with
/// real part in [0, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub rep: GaussRat,
    pub members: Vec<OrbitMember>,
}

impl Orbit {
    /// Sum of coefficients of members with the given pole order.
    pub fn level_sum(&self, order: usize) -> GaussRat {
        let mut acc = GaussRat::from_int(0);
        for m in &self.members {
            if m.order == order {
                acc = acc.add(&m.coeff);
            }
        }
        acc
    }

    pub fn max_order(&self) -> usize {
        self.members.iter().map(|m| m.order).max().unwrap_or(0)
    }
}

/// Partial fractions of a frame-side rational function, grouped by orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitDecomposition {
    pub poly_part: Poly<GaussRat>,
    pub orbits: Vec<Orbit>,
}

/// Decompose a rational function of the frame variable s by pole orbits.
pub fn orbit_decompose(big_f: &Rat) -> Result<OrbitDecomposition> {
    let pf = partial_fractions(big_f)?;
    let mut orbits: Vec<Orbit> = Vec::new();
    for PfTerm { pole, order, coeff } in pf.terms {
        let shift_by = floor_re(&pole);
        let rep = pole.sub(&GaussRat::from_rat(crate::gauss::BigRat::from_integer(
            shift_by.clone(),
        )));
        let offset: i64 = shift_by
            .try_into()
            .map_err(|_| Error::Precondition("orbit offset exceeds i64".into()))?;
        let member = OrbitMember { offset, order, coeff };
        if let Some(orbit) = orbits.iter_mut().find(|o| o.rep == rep) {
            orbit.members.push(member);
        } else {
            orbits.push(Orbit {
                rep,
                members: vec![member],
            });
        }
    }
    Ok(OrbitDecomposition {
        poly_part: pf.poly_part,
        orbits,
    })
}

impl OrbitDecomposition {
    pub fn reassemble(&self) -> Rat {
        let mut acc = RatFun::from_poly(self.poly_part.clone());
        for orbit in &self.orbits {
            for m in &orbit.members {
                acc = acc.add(&pole_term(&position(orbit, m), m.order, &m.coeff));
            }
        }
        acc
    }
}

fn position(orbit: &Orbit, member: &OrbitMember) -> GaussRat {
    orbit.rep.add(&GaussRat::from_int(member.offset))
}

/// coeff / (s - pos)^order as a rational function.
fn pole_term(pos: &GaussRat, order: usize, coeff: &GaussRat) -> Rat {
    let lin = Poly::from_coeffs(vec![-pos, GaussRat::from_int(1)]);
    RatFun::new(Poly::constant(coeff.clone()), lin.pow(order)).expect("linear factor nonzero")
}

/// Discrete antiderivative: the polynomial q with q(s+1) - q(s) = p(s) and
/// zero constant term, via the falling-factorial basis.
pub fn discrete_antiderivative(p: &Poly<GaussRat>) -> Poly<GaussRat> {
    // Falling factorials F_n(s) = s(s-1)...(s-n+1) are monic of degree n and
    // satisfy F_{n+1}(s+1) - F_{n+1}(s) = (n+1) F_n(s).
    let mut rem = p.clone();
    let mut acc = Poly::zero();
    while let Some(n) = rem.deg() {
        let c = rem.lc().clone();
        let f_n = falling_factorial_poly(n);
        let f_n1 = falling_factorial_poly(n + 1);
        let scale = c.div(&GaussRat::from_int((n + 1) as i64));
        acc = acc.add(&f_n1.scale(&scale));
        rem = rem.sub(&f_n.scale(&c));
    }
    acc
}

fn falling_factorial_poly(n: usize) -> Poly<GaussRat> {
    let mut acc = Poly::one();
    for k in 0..n {
        acc = acc.mul(&Poly::from_coeffs(vec![
            GaussRat::from_int(-(k as i64)),
            GaussRat::from_int(1),
        ]));
    }
    acc
}

/// Write F = sigma(G) - G + Rem with Rem canonical: at most one pole per
/// orbit and order, sitting at the representative and carrying the orbit
/// sum; the polynomial part is absorbed into G entirely.
pub fn summable_decompose(big_f: &Rat) -> Result<(Rat, Rat)> {
    let od = orbit_decompose(big_f)?;
    let mut g = RatFun::from_poly(discrete_antiderivative(&od.poly_part));
    let mut rem = Rat::zero();
    for orbit in &od.orbits {
        for m in &orbit.members {
            // Move the pole at rep+offset to rep; the shifted tail goes to G.
            // With u_l = 1/(s - rep - l)^order:
            //   u_k = u_0 + sigma(H) - H,  H = -sum_{l=1..k} u_l   (k > 0)
            //   u_k = u_0 + sigma(H) - H,  H = +sum_{l=k+1..0} u_l (k < 0)
            let mut h = Rat::zero();
            if m.offset > 0 {
                for l in 1..=m.offset {
                    let pos = orbit.rep.add(&GaussRat::from_int(l));
                    h = h.sub(&pole_term(&pos, m.order, &m.coeff));
                }
            } else {
                for l in (m.offset + 1)..=0 {
                    let pos = orbit.rep.add(&GaussRat::from_int(l));
                    h = h.add(&pole_term(&pos, m.order, &m.coeff));
                }
            }
            g = g.add(&h);
        }
        for order in 1..=orbit.max_order() {
            let total = orbit.level_sum(order);
            if !total.is_zero() {
                rem = rem.add(&pole_term(&orbit.rep, order, &total));
            }
        }
    }
    debug_assert_eq!(sigma(&g).sub(&g).add(&rem), *big_f);
    Ok((g, rem))
}

/// Decide tau(g) - g = h for rational g, in the t frame. Requires the
/// frame-side denominator to split over Q(i).
pub fn is_summable(h: &Rat, shift: &MoebiusShift) -> Result<Option<Rat>> {
    let big_f = to_shift_frame(h, shift);
    let (g_frame, rem) = summable_decompose(&big_f)?;
    if rem.is_zero() {
        let g = from_shift_frame(&g_frame, shift);
        debug_assert_eq!(tau_apply(&g, shift).sub(&g), *h);
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

/// A telescoping relation sum_i alphas[i] d^i(f) = tau(g) - g.
#[derive(Clone, Debug, PartialEq)]
pub struct TelescoperWitness {
    pub n: usize,
    pub alphas: Vec<GaussRat>,
    pub g: Rat,
}

impl TelescoperWitness {
    /// Exact recheck of the defining identity against f.
    pub fn verify(&self, f: &Rat, shift: &MoebiusShift) -> bool {
        let mut lhs = Rat::zero();
        for (i, alpha) in self.alphas.iter().enumerate() {
            lhs = lhs.add(&partial_d(f, i).scale(alpha));
        }
        let rhs = tau_apply(&self.g, shift).sub(&self.g);
        lhs == rhs && self.alphas.iter().any(|a| !a.is_zero())
    }
}

/// Search for the smallest n <= n_max such that some nontrivial constants
/// alpha_0..alpha_n make sum alpha_i d^i(f) summable; returns the witness
/// with its certificate g.
///
/// In the frame, d = -(1/b) d/ds sends c/(s-a)^j to
/// c * j(j+1)...(j+i-1) / b^i / (s-a)^(j+i), so summability of the
/// combination is a homogeneous linear condition on the alphas for every
/// orbit and every pole order; polynomial parts impose nothing.
pub fn telescoper_decide(
    f: &Rat,
    shift: &MoebiusShift,
    n_max: usize,
) -> Result<Option<TelescoperWitness>> {
    if f.is_zero() {
        return Ok(Some(TelescoperWitness {
            n: 0,
            alphas: vec![GaussRat::from_int(1)],
            g: Rat::zero(),
        }));
    }
    let big_f = to_shift_frame(f, shift);
    let od = orbit_decompose(&big_f)?;
    let beta = shift.beta();
    let beta_inv = GaussRat::from_int(1).div(beta);

    for n in 0..=n_max {
        let mut rows: Vec<Vec<GaussRat>> = Vec::new();
        for orbit in &od.orbits {
            let max_order = orbit.max_order();
            for level in 1..=(max_order + n) {
                let mut row = Vec::with_capacity(n + 1);
                let mut nontrivial = false;
                for i in 0..=n {
                    let entry = if level > i && level - i <= max_order {
                        let j = level - i;
                        let sum = orbit.level_sum(j);
                        if sum.is_zero() {
                            GaussRat::from_int(0)
                        } else {
                            nontrivial = true;
                            let mut factor = rising_factorial::<GaussRat>(j, i);
                            for _ in 0..i {
                                factor = factor.mul(&beta_inv);
                            }
                            sum.mul(&factor)
                        }
                    } else {
                        GaussRat::from_int(0)
                    };
                    row.push(entry);
                }
                if nontrivial {
                    rows.push(row);
                }
            }
        }

        let alphas = if rows.is_empty() {
            let mut v = vec![GaussRat::from_int(0); n + 1];
            v[0] = GaussRat::from_int(1);
            Some(v)
        } else {
            let zeros = vec![GaussRat::from_int(0); rows.len()];
            let sys = LinSystem::new(rows, zeros)?;
            linsolve(&sys)?
                .and_then(|sol| sol.kernel.into_iter().next())
        };

        if let Some(alphas) = alphas {
            let mut h = Rat::zero();
            for (i, alpha) in alphas.iter().enumerate() {
                if !alpha.is_zero() {
                    h = h.add(&partial_d(f, i).scale(alpha));
                }
            }
            let g = is_summable(&h, shift)?
                .expect("orbit conditions guarantee summability");
            let witness = TelescoperWitness { n, alphas, g };
            debug_assert!(witness.verify(f, shift));
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// Convenience: offsets within one orbit, for tests and diagnostics.
pub fn orbit_offset(p: &GaussRat, q: &GaussRat, shift: &MoebiusShift) -> Option<i64> {
    if p.is_zero() || q.is_zero() {
        return None;
    }
    let fp = to_frame_point(p, shift);
    let fq = to_frame_point(q, shift);
    gauss_as_integer(&fq.sub(&fp))
}

fn to_frame_point(p: &GaussRat, shift: &MoebiusShift) -> GaussRat {
    GaussRat::from_int(1).div(&shift.beta().mul(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn rf(num: &[i64], den: &[i64]) -> Rat {
        RatFun::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn discrete_antiderivative_of_linear() {
        // q(s+1) - q(s) = s  =>  q = s(s-1)/2
        let p = Poly::from_i64s(&[0, 1]);
        let q = discrete_antiderivative(&p);
        assert_eq!(sigma(&RatFun::from_poly(q.clone())).sub(&RatFun::from_poly(q)), RatFun::from_poly(p));
    }

    #[test]
    fn constructed_difference_is_summable() {
        // F = 1/(s+1) - 1/s = sigma(G) - G for G = 1/s
        let f = rf(&[1], &[1, 1]).sub(&rf(&[1], &[0, 1]));
        let (gg, rem) = summable_decompose(&f).unwrap();
        assert!(rem.is_zero());
        assert_eq!(sigma(&gg).sub(&gg), f);
    }

    #[test]
    fn single_pole_orbit_is_not_summable() {
        // F = 1/s^2: lone orbit sum nonzero
        let f = rf(&[1], &[0, 0, 1]);
        let (_, rem) = summable_decompose(&f).unwrap();
        assert_eq!(rem, f);
    }

    #[test]
    fn telescoping_five_steps() {
        // F = 1/s^2 - 1/(s+5)^2 is summable
        let f = rf(&[1], &[0, 0, 1]).sub(&RatFun::new(
            Poly::one(),
            Poly::from_i64s(&[5, 1]).pow(2),
        )
        .unwrap());
        let (gg, rem) = summable_decompose(&f).unwrap();
        assert!(rem.is_zero());
        assert_eq!(sigma(&gg).sub(&gg), f);
    }

    #[test]
    fn is_summable_round_trip() {
        let shift = MoebiusShift::unit();
        // h = tau(1/t) - 1/t = 1
        let g0 = rf(&[1], &[0, 1]);
        let h = tau_apply(&g0, &shift).sub(&g0);
        assert_eq!(h, Rat::one());
        let found = is_summable(&h, &shift).unwrap().expect("summable");
        let diff = found.sub(&g0);
        assert!(diff.is_poly() && diff.num().deg().unwrap_or(0) == 0, "differ by constant, got {diff}");
    }

    #[test]
    fn t_is_not_summable() {
        let shift = MoebiusShift::unit();
        assert!(is_summable(&Rat::var(), &shift).unwrap().is_none());
    }

    #[test]
    fn bernoulli_cores_are_not_summable() {
        // (t/(1+t-tx))^2 at x = 3 is t^2/(1-2t)^2
        let shift = MoebiusShift::unit();
        let f = rf(&[0, 0, 1], &[1, -4, 4]);
        assert!(is_summable(&f, &shift).unwrap().is_none());
    }

    #[test]
    fn telescoper_negative_for_t() {
        let shift = MoebiusShift::unit();
        assert!(telescoper_decide(&Rat::var(), &shift, 5).unwrap().is_none());
    }

    #[test]
    fn telescoper_negative_for_bernoulli_core() {
        let shift = MoebiusShift::unit();
        for x in [2i64, 3] {
            // (t/(1+t-tx))^2
            let core = RatFun::new(
                Poly::from_i64s(&[0, 1]),
                Poly::from_i64s(&[1, 1 - x]),
            )
            .unwrap()
            .pow(2);
            assert!(
                telescoper_decide(&core, &shift, 6).unwrap().is_none(),
                "x = {x}"
            );
        }
    }

    #[test]
    fn constructed_telescoper_found_at_order_zero() {
        let shift = MoebiusShift::unit();
        // f = tau(g0) - g0 for g0 = 1/(t-2)
        let g0 = rf(&[1], &[-2, 1]);
        let f = tau_apply(&g0, &shift).sub(&g0);
        let witness = telescoper_decide(&f, &shift, 0).unwrap().expect("witness");
        assert_eq!(witness.n, 0);
        assert!(witness.verify(&f, &shift));
    }

    #[test]
    fn log_derivative_of_one_plus_t_is_summable() {
        // d(a)/a for a = 1+t is t^2/(1+t) = tau(-t) - (-t); the lone orbit
        // splits into cancelling +1/-1 coefficients in the frame.
        let shift = MoebiusShift::unit();
        let f = rf(&[0, 0, 1], &[1, 1]);
        let witness = telescoper_decide(&f, &shift, 0).unwrap().expect("summable");
        assert!(witness.verify(&f, &shift));
        let expected_g_diff = tau_apply(&rf(&[0, -1], &[1]), &shift).sub(&rf(&[0, -1], &[1]));
        assert_eq!(expected_g_diff, f);
    }

    #[test]
    fn zero_function_witness() {
        let shift = MoebiusShift::unit();
        let w = telescoper_decide(&Rat::zero(), &shift, 3).unwrap().unwrap();
        assert_eq!(w.n, 0);
        assert_eq!(w.g, Rat::zero());
    }

    #[test]
    fn orbit_decomposition_reassembles() {
        let f = rf(&[1, 3, 1], &[0, 2, 3, 1]); // poles 0, -1, -2
        let od = orbit_decompose(&f).unwrap();
        assert_eq!(od.reassemble(), f);
        // single orbit with three members
        assert_eq!(od.orbits.len(), 1);
        assert_eq!(od.orbits[0].members.len(), 3);
        assert_eq!(od.orbits[0].rep, g(0));
    }

    #[test]
    fn complex_orbit_representatives() {
        // poles i and i+1 share an orbit with rep i; pole 1/2 is separate
        let li = Poly::from_coeffs(vec![-&GaussRat::i(), g(1)]);
        let li1 = Poly::from_coeffs(vec![-&GaussRat::i().add(&g(-1)), g(1)]);
        let lhalf = Poly::from_coeffs(vec![GaussRat::ratio(-1, 2), g(1)]);
        let f = RatFun::new(Poly::one(), li.mul(&li1).mul(&lhalf)).unwrap();
        let od = orbit_decompose(&f).unwrap();
        assert_eq!(od.orbits.len(), 2);
        let orbit_i = od.orbits.iter().find(|o| o.rep == GaussRat::i()).unwrap();
        assert_eq!(orbit_i.members.len(), 2);
    }
}
