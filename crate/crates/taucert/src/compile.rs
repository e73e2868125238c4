//! Compiling differential equations for exponential generating functions
//! into difference equations for the ordinary generating functions.
//!
//! Input shape: a_0(u) f + a_1(u) D(f) + ... + a_r(u) D^r(f) = rhs, where
//! u stands for e^(lt), D = d/dt, the a_i are polynomials in u with
//! coefficients in Q(i)(x), and the right-hand side is a sum of terms
//! c * t^m * e^(rate*t).
//!
//! Under the inverse Borel transform, multiplication by u^k corresponds to
//! the operator h -> (1/(1-klt)) tau^(-k)(h) on the OGF, the derivative D
//! corresponds to the divided difference (y - y_0 - ... ) / t^i which brings
//! in the leading OGF coefficients, and each right-hand monomial has the
//! closed preimage m! t^m / (1 - rate*t)^(m+1). Collecting shift powers and
//! applying tau^k_top to clear negative shifts yields a difference equation
//! of order at most max_i deg_u(a_i) for the shift t -> t/(1+lt).

use crate::equation::{ResidualReport, TauEquation};
use crate::error::{Error, Result};
use crate::field::{factorial, Field};
use crate::gauss::{CoeffField, GaussRat};
use crate::param::Param;
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::series::Series;
use crate::shift::{tau_power, MoebiusShift};

/// One right-hand term coeff * t^power * e^(rate*t).
#[derive(Clone, Debug, PartialEq)]
pub struct ExpMonomial {
    pub power: usize,
    pub rate: Param,
    pub coeff: Param,
}

impl ExpMonomial {
    /// The inverse Borel image: coeff * power! * t^power / (1-rate*t)^(power+1).
    pub fn inverse_borel(&self) -> RatFun<Param> {
        let num = Poly::monomial(
            self.coeff.mul(&factorial::<Param>(self.power)),
            self.power,
        );
        let den = Poly::from_coeffs(vec![Param::one(), self.rate.neg()]).pow(self.power + 1);
        RatFun::new(num, den).expect("denominator has unit constant term")
    }

    /// The series coeff * t^power * e^(rate*t) to the given order.
    pub fn series(&self, order: usize) -> Series<Param> {
        Series::exp_ct(&self.rate, order)
            .shift_up(self.power)
            .scale(&self.coeff)
    }
}

/// A linear differential equation with exponential coefficients for an EGF.
#[derive(Clone, Debug)]
pub struct EgfEquation {
    /// The exponential scale: u = e^(lambda t); also the shift parameter of
    /// the compiled difference equation.
    pub lambda: GaussRat,
    /// lhs[i] is the u-polynomial multiplying D^i.
    pub lhs: Vec<Poly<Param>>,
    pub rhs: Vec<ExpMonomial>,
    /// Leading OGF coefficients y_0, ..., y_(r-1) consumed by the divided
    /// differences; r is the differential order.
    pub init: Vec<Param>,
}

impl EgfEquation {
    /// Differential order: largest i with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.lhs.iter().rposition(|a| !a.is_zero())
    }

    pub fn max_u_degree(&self) -> usize {
        self.lhs
            .iter()
            .filter_map(Poly::deg)
            .max()
            .unwrap_or(0)
    }
}

/// Compile the EGF equation into a difference equation for the OGF under
/// the shift t -> t/(1 + lambda t).
pub fn compile(eq: &EgfEquation) -> Result<TauEquation<Param>> {
    if eq.lambda.is_zero() {
        return Err(Error::BetaZero);
    }
    let r = eq.order().ok_or(Error::ZeroEquation)?;
    if eq.init.len() < r {
        return Err(Error::MissingInitialTerms {
            needed: r,
            got: eq.init.len(),
        });
    }
    let shift = MoebiusShift::new(eq.lambda.clone())?;
    let lambda = Param::from_gauss(&eq.lambda);
    let k_max = eq.max_u_degree();

    // Collect sum_k coef[k] tau^(-k)(y) = rhs_total.
    let mut coef: Vec<RatFun<Param>> = vec![RatFun::zero(); k_max + 1];
    let mut rhs_total: RatFun<Param> = RatFun::zero();
    for m in &eq.rhs {
        rhs_total = rhs_total.add(&m.inverse_borel());
    }

    for (i, a_i) in eq.lhs.iter().enumerate() {
        if a_i.is_zero() {
            continue;
        }
        // Divided difference: D^i f corresponds to (y - p_i)/t^i with
        // p_i the known prefix built from the initial coefficients.
        let prefix = Poly::from_coeffs(eq.init[..i].to_vec());
        let t_pow_i = RatFun::new(Poly::one(), Poly::monomial(Param::one(), i))
            .expect("t^i nonzero");
        for (k, c) in a_i.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // 1/(1 - k lambda t), from iterating the Phi operator.
            let phi_front = RatFun::new(
                Poly::one(),
                Poly::from_coeffs(vec![
                    Param::one(),
                    lambda.mul(&Param::from_i64(k as i64)).neg(),
                ]),
            )
            .expect("unit constant term");
            let weight = phi_front.scale(c);
            let y_factor = tau_power(&t_pow_i, &shift, -(k as i64));
            coef[k] = coef[k].add(&weight.mul(&y_factor));
            if i > 0 && !prefix.is_zero() {
                let known = tau_power(
                    &RatFun::from_poly(prefix.clone()).mul(&t_pow_i),
                    &shift,
                    -(k as i64),
                );
                rhs_total = rhs_total.add(&weight.mul(&known));
            }
        }
    }

    let k_top = coef
        .iter()
        .rposition(|b| !b.is_zero())
        .ok_or(Error::ZeroEquation)?;
    let k_min = coef.iter().position(|b| !b.is_zero()).unwrap();

    // Apply tau^k_top; shift power j corresponds to original power k_top - j.
    let coeffs: Vec<RatFun<Param>> = (0..=k_top - k_min)
        .map(|j| tau_power(&coef[k_top - j], &shift, k_top as i64))
        .collect();
    let rhs = tau_power(&rhs_total, &shift, k_top as i64);

    Ok(TauEquation::new(shift, coeffs, rhs)?.canonical())
}

/// Solve the EGF equation as a truncated series (the EGF itself).
///
/// For order zero the equation is a division; for higher order the
/// coefficient recursion must have nonzero leading factor a_r(1), otherwise
/// the series is underdetermined (resonance).
pub fn solve_egf_series(eq: &EgfEquation, order: usize) -> Result<Series<Param>> {
    let r = eq.order().ok_or(Error::ZeroEquation)?;
    if eq.init.len() < r {
        return Err(Error::MissingInitialTerms {
            needed: r,
            got: eq.init.len(),
        });
    }
    let lambda = Param::from_gauss(&eq.lambda);

    if r == 0 {
        // a_0(e^(lt)) f = rhs: divide series, handling a common valuation.
        let slack = eq.lhs[0].deg().unwrap_or(0) + 4;
        let n_big = order + slack;
        let m = eval_u_poly(&eq.lhs[0], &lambda, n_big);
        let rhs = rhs_series(eq, n_big);
        let v = m.valuation().ok_or(Error::ZeroEquation)?;
        if v > 0 && !rhs.is_zero() {
            let rv = rhs.valuation().unwrap_or(n_big);
            if rv < v {
                return Err(Error::InvalidProblem(
                    "no power-series solution: right-hand side valuation too small".into(),
                ));
            }
        }
        let m_red = m.divided_difference(v);
        let rhs_red = rhs.divided_difference(v);
        let sol = rhs_red.mul(&m_red.recip()?);
        return Ok(sol.truncated(order));
    }

    // Coefficient recursion in the EGF coefficients.
    let a_series: Vec<Series<Param>> = eq
        .lhs
        .iter()
        .map(|a| eval_u_poly(a, &lambda, order))
        .collect();
    let rhs = rhs_series(eq, order);
    let lead = eq.lhs[r].eval(&Param::one());
    let mut egf: Vec<Param> = Vec::with_capacity(order);
    let mut fact = Param::one();
    for (j, y_j) in eq.init.iter().take(r.min(order)).enumerate() {
        if j > 0 {
            fact = fact.mul(&Param::from_i64(j as i64));
        }
        egf.push(y_j.div(&fact));
    }
    for p in 0..order.saturating_sub(r) {
        // Equation coefficient at t^p; the only new unknown is egf[p + r].
        if lead.is_zero() {
            return Err(Error::Resonance { order: p + r });
        }
        let mut acc = rhs.coeff(p);
        for (i, ai) in a_series.iter().enumerate() {
            if eq.lhs[i].is_zero() {
                continue;
            }
            for k in 0..=p {
                let a_k = ai.coeff(k);
                if a_k.is_zero() {
                    continue;
                }
                let q = p - k;
                // (D^i f)_q = (q+i)!/q! * f_(q+i)
                let idx = q + i;
                if idx == p + r && k == 0 && i == r {
                    continue; // the unknown itself
                }
                if idx >= egf.len() {
                    continue;
                }
                let fall = rising_product(q + 1, i);
                acc = acc.sub(&a_k.mul(&fall).mul(&egf[idx]));
            }
        }
        let fall_lead = rising_product(p + 1, r);
        egf.push(acc.div(&lead.mul(&fall_lead)));
    }
    egf.truncate(order);
    while egf.len() < order {
        egf.push(Param::zero());
    }
    Ok(Series::from_coeffs(egf))
}

/// (q)(q+1)...(q+i-1) restated for the derivative factor (q+i)!/q! with
/// q = start-1: rising_product(q+1, i).
fn rising_product(start: usize, i: usize) -> Param {
    let mut acc = Param::one();
    for l in 0..i {
        acc = acc.mul(&Param::from_i64((start + l) as i64));
    }
    acc
}

fn eval_u_poly(a: &Poly<Param>, lambda: &Param, order: usize) -> Series<Param> {
    // a(e^(lt)) as a series, Horner in u.
    let u = Series::exp_ct(lambda, order);
    let mut acc = Series::zero(order);
    for c in a.coeffs().iter().rev() {
        acc = acc.mul(&u);
        acc = acc.add(&Series::constant(c.clone(), order));
    }
    acc
}

fn rhs_series(eq: &EgfEquation, order: usize) -> Series<Param> {
    let mut acc = Series::zero(order);
    for m in &eq.rhs {
        acc = acc.add(&m.series(order));
    }
    acc
}

/// Solve the EGF equation, transport the series through the inverse Borel
/// transform, and substitute it into the compiled difference equation.
pub fn verify_compiled(
    eq: &EgfEquation,
    out: &TauEquation<Param>,
    order: usize,
) -> Result<ResidualReport> {
    let egf = solve_egf_series(eq, order + 8)?;
    let ogf = egf.inverse_borel();
    Ok(out.series_residual(&ogf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::specialize_series;

    fn gp(n: i64) -> Param {
        Param::from_i64(n)
    }

    /// D(f) - u f = 0, lambda = 1, y0 = 1: the set-partition EGF equation.
    fn bell_equation() -> EgfEquation {
        EgfEquation {
            lambda: GaussRat::from_int(1),
            lhs: vec![
                Poly::from_coeffs(vec![Param::zero(), Param::x().neg()]),
                Poly::constant(Param::one()),
            ],
            rhs: vec![],
            init: vec![Param::one()],
        }
    }

    #[test]
    fn bell_compiles_to_expected_equation() {
        // tau(y) = x t y + 1
        let eq = compile(&bell_equation()).unwrap();
        assert_eq!(eq.order(), 1);
        let (a, f) = eq.as_first_order().unwrap();
        let expect_a = RatFun::from_poly(Poly::from_coeffs(vec![Param::zero(), Param::x()]));
        assert_eq!(a, expect_a);
        assert_eq!(f, RatFun::one());
    }

    #[test]
    fn bell_series_verifies() {
        let egf_eq = bell_equation();
        let tau_eq = compile(&egf_eq).unwrap();
        let report = verify_compiled(&egf_eq, &tau_eq, 40).unwrap();
        assert!(report.exact_to(40), "{report:?}");
    }

    #[test]
    fn bell_egf_series_at_x_one() {
        let egf = solve_egf_series(&bell_equation(), 8).unwrap();
        let at_one = specialize_series(&egf, &GaussRat::from_int(1)).unwrap();
        let ogf = at_one.inverse_borel();
        let bells = [1i64, 1, 2, 5, 15, 52, 203, 877];
        for (k, b) in bells.iter().enumerate() {
            assert_eq!(ogf.coeff(k), GaussRat::from_int(*b), "Bell {k}");
        }
    }

    /// (u - 1) f = t e^(xt), order 0: the Appell-style equation.
    fn bernoulli_equation() -> EgfEquation {
        EgfEquation {
            lambda: GaussRat::from_int(1),
            lhs: vec![Poly::from_coeffs(vec![gp(-1), gp(1)])],
            rhs: vec![ExpMonomial {
                power: 1,
                rate: Param::x(),
                coeff: Param::one(),
            }],
            init: vec![],
        }
    }

    #[test]
    fn bernoulli_compiles_to_lemma_form() {
        // tau(y) = (1+t) y - t(1+t)/(1+t-tx)^2
        let eq = compile(&bernoulli_equation()).unwrap();
        let (a, f) = eq.as_first_order().unwrap();
        assert_eq!(
            a,
            RatFun::from_poly(Poly::from_coeffs(vec![gp(1), gp(1)]))
        );
        let den = Poly::from_coeffs(vec![gp(1), gp(1).sub(&Param::x())]).pow(2);
        let num = Poly::from_coeffs(vec![gp(0), gp(-1), gp(-1)]);
        assert_eq!(f, RatFun::new(num, den).unwrap());
    }

    #[test]
    fn bernoulli_verifies_symbolically() {
        let egf_eq = bernoulli_equation();
        let tau_eq = compile(&egf_eq).unwrap();
        let report = verify_compiled(&egf_eq, &tau_eq, 40).unwrap();
        assert!(report.exact_to(40), "{report:?}");
    }

    /// D(f) = (u^2 - u) f, order 1 with u-degree 2: bipartite-components.
    fn graph_equation() -> EgfEquation {
        EgfEquation {
            lambda: GaussRat::from_int(1),
            lhs: vec![
                Poly::from_coeffs(vec![gp(0), gp(1), gp(-1)]),
                Poly::constant(Param::one()),
            ],
            rhs: vec![],
            init: vec![Param::one()],
        }
    }

    #[test]
    fn graph_equation_is_second_order() {
        // tau^2(y) + (t/(t+1)) tau(y) - t y = 1
        let eq = compile(&graph_equation()).unwrap();
        assert_eq!(eq.order(), 2);
        let canon = eq.canonical();
        assert_eq!(canon.coeffs()[2], RatFun::one());
        assert_eq!(
            canon.coeffs()[1],
            RatFun::new(
                Poly::from_coeffs(vec![gp(0), gp(1)]),
                Poly::from_coeffs(vec![gp(1), gp(1)])
            )
            .unwrap()
        );
        assert_eq!(
            canon.coeffs()[0],
            RatFun::from_poly(Poly::from_coeffs(vec![gp(0), gp(-1)]))
        );
        assert_eq!(canon.rhs(), &RatFun::one());
        let report = verify_compiled(&graph_equation(), &eq, 40).unwrap();
        assert!(report.exact_to(40), "{report:?}");
    }

    #[test]
    fn order_bound_holds() {
        for eq in [bell_equation(), bernoulli_equation(), graph_equation()] {
            let compiled = compile(&eq).unwrap();
            assert!(compiled.order() <= eq.max_u_degree());
        }
    }

    #[test]
    fn missing_initials_rejected() {
        let mut eq = bell_equation();
        eq.init.clear();
        assert_eq!(
            compile(&eq).unwrap_err(),
            Error::MissingInitialTerms { needed: 1, got: 0 }
        );
    }

    #[test]
    fn corrupted_rhs_detected() {
        let egf_eq = bernoulli_equation();
        let mut tau_eq = compile(&egf_eq).unwrap();
        // corrupt: flip the sign of the right-hand side
        tau_eq = TauEquation::new(
            tau_eq.shift().clone(),
            tau_eq.coeffs().to_vec(),
            tau_eq.rhs().neg(),
        )
        .unwrap();
        let report = verify_compiled(&egf_eq, &tau_eq, 30).unwrap();
        assert!(!report.exact_to(30));
        assert!(report.first_failure.is_some());
    }
}
