//! The certification pipeline for first-order shift equations.
//!
//! Given tau(w) = a w + f with a, f rational and a formal power-series
//! solution w, exactly one of two things is true: w is itself a rational
//! function, or w is differentially transcendental over the germs of
//! meromorphic functions at the origin. The pipeline decides which by
//! exhaustively describing the rational solution set (particular solution
//! plus at most one homogeneous ray) and comparing it against the series:
//!
//! - no rational solution at all: w cannot be rational; verdict strongly
//!   differentially transcendental, with the solver diagnostics as evidence;
//! - rational solutions exist: the constant in front of the homogeneous
//!   solution is pinned by the first coefficients, the assembled witness is
//!   rechecked against the equation exactly, and its expansion is compared
//!   with w over the guarded window. Agreement certifies rationality with
//!   that witness; disagreement certifies transcendence.
//!
//! Homogeneous problems (f = 0) go through the same machinery using the
//! homogeneous ray alone. Equations of order two and higher, or shifts
//! outside the single-fixed-point family, are out of scope and yield an
//! `Unsupported` verdict rather than an over-claim.

use sha2::{Digest, Sha256};

use crate::equation::TauEquation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::GaussRat;
use crate::laurent::Laurent;
use crate::ratfun::RatFun;
use crate::ratsolve::{rational_solution_full, RatSolveOutcome};
use crate::series::Series;
use crate::shift::{partial_d, tau_apply, MoebiusShift};
use crate::summability::{telescoper_decide, TelescoperWitness};

type Rat = RatFun<GaussRat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational,
    StronglyDTranscendental,
    Unsupported,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    /// The equation has no rational solution, so the series cannot be one.
    NoRationalSolution {
        universal_denominator_degree: usize,
        poly_degree_bound: i64,
    },
    /// Rational solutions exist but every one of them differs from the
    /// series; the first differing exponent is recorded.
    SeriesMismatch {
        comparison_order: usize,
        mismatch_order: i64,
    },
    /// Out-of-scope input (higher order, unsupported shift).
    OutOfScope { reason: String },
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Option<Rat>,
    pub evidence: Option<Evidence>,
    pub series_prefix: Vec<GaussRat>,
    pub series_prefix_hash: String,
    pub equation: TauEquation<GaussRat>,
    pub order: usize,
}

/// A first-order certification problem: the equation tau(w) = a w + f, the
/// candidate series solution, and the comparison order.
#[derive(Clone, Debug)]
pub struct FirstOrderProblem {
    pub shift: MoebiusShift,
    pub a: Rat,
    pub f: Rat,
    pub w: Series<GaussRat>,
    pub order: usize,
}

/// Hash of a coefficient prefix, for tamper-evident certificates.
pub fn prefix_hash(coeffs: &[GaussRat]) -> String {
    let joined: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    let mut hasher = Sha256::new();
    hasher.update(joined.join(",").as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Decide rational versus strongly differentially transcendental for the
/// series solution of a first-order equation.
pub fn certify(problem: &FirstOrderProblem) -> Result<Certificate> {
    if problem.a.is_zero() {
        return Err(Error::Precondition("certification needs a != 0".into()));
    }
    let order = problem.order;
    if problem.w.order() < order {
        return Err(Error::ComparisonOrderTooSmall {
            order: problem.w.order(),
            needed: order,
        });
    }
    let w = problem.w.truncated(order);
    let equation =
        TauEquation::first_order(problem.shift.clone(), &problem.a, &problem.f)?;

    // The candidate must actually solve the equation on the window;
    // verdicts about a non-solution would be meaningless.
    let residual = equation.series_residual(&w);
    if let Some(bad) = residual.first_failure {
        return Err(Error::InvalidProblem(format!(
            "candidate series violates the equation at order {bad}"
        )));
    }

    let outcome = rational_solution_full(&problem.a, &problem.f, &problem.shift)?;
    let prefix = w.coeffs().to_vec();
    let hash = prefix_hash(&prefix);

    let base = |verdict, witness, evidence| Certificate {
        verdict,
        witness,
        evidence,
        series_prefix: prefix.clone(),
        series_prefix_hash: hash.clone(),
        equation: equation.clone(),
        order,
    };

    let RatSolveOutcome {
        particular,
        homogeneous,
        universal_denominator_degree,
        numerator_degree_bound,
    } = outcome;

    let anchor = if problem.f.is_zero() {
        // Homogeneous case: the solution set is the ray c z.
        match &homogeneous {
            None => {
                return Ok(base(
                    Verdict::StronglyDTranscendental,
                    None,
                    Some(Evidence::NoRationalSolution {
                        universal_denominator_degree,
                        poly_degree_bound: numerator_degree_bound,
                    }),
                ))
            }
            Some(_) => Rat::zero(),
        }
    } else {
        match particular {
            None => {
                return Ok(base(
                    Verdict::StronglyDTranscendental,
                    None,
                    Some(Evidence::NoRationalSolution {
                        universal_denominator_degree,
                        poly_degree_bound: numerator_degree_bound,
                    }),
                ))
            }
            Some(r) => r,
        }
    };

    // Guard band: a rational function of total degree d is pinned down by
    // 2d + 1 coefficients, so agreement over the window is equality.
    let witness_degree = anchor
        .degree_sum()
        .max(homogeneous.as_ref().map_or(0, Rat::degree_sum));
    let needed = 2 * witness_degree + 8;
    if order < needed {
        return Err(Error::ComparisonOrderTooSmall { order, needed });
    }

    let window = order + 8;
    let lw = Laurent::from_series(&w);
    let l_anchor = Laurent::from_ratfun(&anchor, window)?;
    let diff = lw.sub(&l_anchor);
    let compare_end = (order as i64).min(diff.end());

    let witness = match &homogeneous {
        None => anchor.clone(),
        Some(z) => {
            let lz = Laurent::from_ratfun(z, window)?;
            // Fix the constant on the first index where z has a nonzero
            // coefficient; earlier indices must already agree.
            let k = lz
                .first_nonzero_from(lz.start())
                .expect("homogeneous solution is nonzero");
            if let Some(bad) = diff.first_nonzero_from(diff.start()) {
                if bad < k {
                    return Ok(base(
                        Verdict::StronglyDTranscendental,
                        None,
                        Some(Evidence::SeriesMismatch {
                            comparison_order: order,
                            mismatch_order: bad,
                        }),
                    ));
                }
            }
            let c = diff.coeff(k).div(&lz.coeff(k));
            anchor.add(&z.scale(&c))
        }
    };

    // The witness solves the equation by construction; recheck exactly
    // because it is about to be certified.
    let lhs = tau_apply(&witness, &problem.shift);
    let rhs = problem.a.mul(&witness).add(&problem.f);
    if lhs != rhs {
        return Err(Error::InvalidProblem(
            "internal: assembled witness fails the equation".into(),
        ));
    }

    let l_witness = Laurent::from_ratfun(&witness, window)?;
    let final_diff = lw.sub(&l_witness);
    match final_diff.first_nonzero_from(final_diff.start()) {
        Some(bad) if bad < compare_end => Ok(base(
            Verdict::StronglyDTranscendental,
            None,
            Some(Evidence::SeriesMismatch {
                comparison_order: order,
                mismatch_order: bad,
            }),
        )),
        _ => Ok(base(Verdict::Rational, Some(witness), None)),
    }
}

/// Certify from a full equation: first-order equations are dispatched to
/// [`certify`], anything else is honestly `Unsupported`.
pub fn certify_equation(
    equation: &TauEquation<GaussRat>,
    w: &Series<GaussRat>,
    order: usize,
) -> Result<Certificate> {
    if equation.order() == 1 {
        let (a, f) = equation.as_first_order().expect("order checked");
        return certify(&FirstOrderProblem {
            shift: equation.shift().clone(),
            a,
            f,
            w: w.clone(),
            order,
        });
    }
    let prefix: Vec<GaussRat> = w.coeffs().iter().take(order).cloned().collect();
    Ok(Certificate {
        verdict: Verdict::Unsupported,
        witness: None,
        evidence: Some(Evidence::OutOfScope {
            reason: format!(
                "only first-order equations are certified, got order {}",
                equation.order()
            ),
        }),
        series_prefix_hash: prefix_hash(&prefix),
        series_prefix: prefix,
        equation: equation.clone(),
        order,
    })
}

/// Differential-algebraicity criterion for the homogeneous equation
/// tau(z) = a z, by searching a telescoper for the logarithmic derivative
/// d(a)/a. `Some` witness means every nonzero solution is differentially
/// algebraic at that order; `None` up to n_max supports transcendence.
pub fn homogeneous_criterion(
    a: &Rat,
    shift: &MoebiusShift,
    n_max: usize,
) -> Result<Option<TelescoperWitness>> {
    if a.is_zero() {
        return Err(Error::Precondition(
            "logarithmic derivative needs a != 0".into(),
        ));
    }
    let log_deriv = partial_d(a, 1).div(a);
    telescoper_decide(&log_deriv, shift, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn g(n: i64) -> GaussRat {
        GaussRat::from_int(n)
    }

    fn rf(num: &[i64], den: &[i64]) -> Rat {
        Rat::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    fn bell_problem(order: usize) -> FirstOrderProblem {
        let shift = MoebiusShift::unit();
        let eq = TauEquation::first_order(shift.clone(), &Rat::var(), &Rat::one()).unwrap();
        FirstOrderProblem {
            shift,
            a: Rat::var(),
            f: Rat::one(),
            w: eq.solve_series(order).unwrap(),
            order,
        }
    }

    #[test]
    fn bell_is_strongly_transcendental() {
        let cert = certify(&bell_problem(48)).unwrap();
        assert_eq!(cert.verdict, Verdict::StronglyDTranscendental);
        assert!(matches!(
            cert.evidence,
            Some(Evidence::NoRationalSolution { .. })
        ));
        assert_eq!(cert.series_prefix[..7], [g(1), g(1), g(2), g(5), g(15), g(52), g(203)]);
    }

    #[test]
    fn constructed_rational_problem() {
        // w = t solves tau(w) = 2 w + (tau(t) - 2t)
        let shift = MoebiusShift::unit();
        let a = Rat::constant(g(2));
        let f = tau_apply(&Rat::var(), &shift).sub(&Rat::var().scale(&g(2)));
        let w = Series::var(32);
        let cert = certify(&FirstOrderProblem {
            shift,
            a,
            f,
            w,
            order: 32,
        })
        .unwrap();
        assert_eq!(cert.verdict, Verdict::Rational);
        assert_eq!(cert.witness.unwrap(), Rat::var());
    }

    #[test]
    fn bernoulli_number_problem_is_transcendental() {
        // tau(y) = (1+t) y - t/(1+t), the x = 0 specialization
        let shift = MoebiusShift::unit();
        let a = rf(&[1, 1], &[1]);
        let f = rf(&[0, -1], &[1, 1]);
        let eq = TauEquation::first_order(shift.clone(), &a, &f).unwrap();
        let w = eq.solve_series(48).unwrap();
        // sanity: Bernoulli numbers 1, -1/2, 1/6, 0, -1/30
        assert_eq!(w.coeff(0), g(1));
        assert_eq!(w.coeff(1), GaussRat::ratio(-1, 2));
        assert_eq!(w.coeff(2), GaussRat::ratio(1, 6));
        assert_eq!(w.coeff(3), g(0));
        assert_eq!(w.coeff(4), GaussRat::ratio(-1, 30));
        let cert = certify(&FirstOrderProblem { shift, a, f, w, order: 48 }).unwrap();
        assert_eq!(cert.verdict, Verdict::StronglyDTranscendental);
        assert!(matches!(
            cert.evidence,
            Some(Evidence::NoRationalSolution { .. })
        ));
    }

    #[test]
    fn homogeneous_rational_ray_certified() {
        // tau(z) = (1+t) z has z = 1/t, but a power series candidate must be
        // compared against the ray; w = 0 is rational (c = 0).
        // Use instead a problem with a genuine series solution:
        // tau(z) = ((1+t)/(1+2t)) z is solved by z = t/(1+t) ... check:
        // actually plant z0 = t/(1+t): a = tau(z0)/z0.
        let shift = MoebiusShift::unit();
        let z0 = rf(&[0, 1], &[1, 1]);
        let a = tau_apply(&z0, &shift).div(&z0);
        let w = {
            let l = Laurent::from_ratfun(&z0, 40).unwrap();
            Series::from_fn(32, |k| l.coeff(k as i64))
        };
        let cert = certify(&FirstOrderProblem {
            shift,
            a,
            f: Rat::zero(),
            w,
            order: 32,
        })
        .unwrap();
        assert_eq!(cert.verdict, Verdict::Rational);
        assert_eq!(cert.witness.unwrap(), z0);
    }

    #[test]
    fn mismatching_series_is_rejected_as_non_solution() {
        let mut p = bell_problem(32);
        let mut coeffs = p.w.coeffs().to_vec();
        coeffs[5] = coeffs[5].add(&g(1));
        p.w = Series::from_coeffs(coeffs);
        assert!(matches!(certify(&p), Err(Error::InvalidProblem(_))));
    }

    #[test]
    fn order_two_is_unsupported() {
        let shift = MoebiusShift::unit();
        let eq = TauEquation::new(
            shift,
            vec![Rat::var().neg(), Rat::one(), Rat::one()],
            Rat::one(),
        )
        .unwrap();
        let w = Series::zero(16);
        let cert = certify_equation(&eq, &w, 16).unwrap();
        assert_eq!(cert.verdict, Verdict::Unsupported);
    }

    #[test]
    fn gamma_criterion_negative_for_bell_homogeneous() {
        // a = t: d(a)/a = t, no telescoper up to order 5
        let out = homogeneous_criterion(&Rat::var(), &MoebiusShift::unit(), 5).unwrap();
        assert!(out.is_none());
    }

    #[test]
    fn trivial_criterion_for_constant_a() {
        let out = homogeneous_criterion(&Rat::one(), &MoebiusShift::unit(), 3)
            .unwrap()
            .expect("zero is summable");
        assert_eq!(out.n, 0);
        assert_eq!(out.g, Rat::zero());
        assert_eq!(out.alphas, vec![g(1)]);
    }

    #[test]
    fn log_derivative_of_one_plus_t_has_witness() {
        // a = 1 + t: d(a)/a = t^2/(1+t) = tau(-t) - (-t), so the criterion
        // finds a telescoper already at n = 0.
        let a = rf(&[1, 1], &[1]);
        let w = homogeneous_criterion(&a, &MoebiusShift::unit(), 4)
            .unwrap()
            .expect("g = -t is a witness");
        assert_eq!(w.n, 0);
        assert!(w.verify(&partial_d(&a, 1).div(&a), &MoebiusShift::unit()));
    }

    #[test]
    fn comparison_order_guard() {
        let mut p = bell_problem(48);
        p.order = 4;
        // Bell has no rational solutions, so the guard never triggers there;
        // use the constructed rational problem with a tiny order instead.
        let shift = MoebiusShift::unit();
        let a = Rat::constant(g(2));
        let f = tau_apply(&Rat::var(), &shift).sub(&Rat::var().scale(&g(2)));
        let res = certify(&FirstOrderProblem {
            shift,
            a,
            f,
            w: Series::var(4),
            order: 4,
        });
        assert!(matches!(res, Err(Error::ComparisonOrderTooSmall { .. })));
    }
}
