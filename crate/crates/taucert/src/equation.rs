//! Linear difference equations for the Moebius shift:
//! b_0 y + b_1 tau(y) + ... + b_m tau^m(y) = c, with rational-function
//! coefficients.
//!
//! The canonical form divides through by the highest-shift coefficient, so
//! Table-style first-order equations read tau(y) = R y + S with b = [-R, 1]
//! and rhs = S, and equality of canonicalized equations is structural.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::CoeffField;
use crate::laurent::Laurent;
use crate::linsolve::{linsolve, LinSystem};
use crate::ratfun::RatFun;
use crate::series::Series;
use crate::shift::MoebiusShift;

#[derive(Clone, PartialEq)]
pub struct TauEquation<K> {
    shift: MoebiusShift,
    coeffs: Vec<RatFun<K>>,
    rhs: RatFun<K>,
}

/// Outcome of substituting a truncated series into an equation.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    /// Exponent up to which the residual could be checked exactly.
    pub checked_to: i64,
    /// Smallest exponent with a nonzero residual coefficient, if any.
    pub first_failure: Option<i64>,
}

impl ResidualReport {
    /// True when every residual coefficient below order n vanishes and the
    /// window actually reached n.
    pub fn exact_to(&self, n: usize) -> bool {
        self.checked_to >= n as i64 && self.first_failure.map_or(true, |f| f >= n as i64)
    }
}

impl<K: CoeffField> TauEquation<K> {
    /// Build an equation; the trailing and leading coefficients must be
    /// nonzero (true order at both ends).
    pub fn new(shift: MoebiusShift, coeffs: Vec<RatFun<K>>, rhs: RatFun<K>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(RatFun::is_zero) {
            return Err(Error::ZeroEquation);
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidProblem(
                "highest-shift coefficient is zero; trim to the true order".into(),
            ));
        }
        if coeffs[0].is_zero() {
            return Err(Error::InvalidProblem(
                "order-zero coefficient is zero; apply an inverse shift first".into(),
            ));
        }
        Ok(TauEquation { shift, coeffs, rhs })
    }

    /// The first-order equation tau(y) = a y + f.
    pub fn first_order(shift: MoebiusShift, a: &RatFun<K>, f: &RatFun<K>) -> Result<Self> {
        Self::new(shift, vec![a.neg(), RatFun::one()], f.clone())
    }

    pub fn shift(&self) -> &MoebiusShift {
        &self.shift
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFun<K>] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &RatFun<K> {
        &self.rhs
    }

    /// For order-1 equations, the pair (a, f) with tau(y) = a y + f.
    pub fn as_first_order(&self) -> Option<(RatFun<K>, RatFun<K>)> {
        if self.order() != 1 {
            return None;
        }
        let top_inv = self.coeffs[1].inv();
        let a = self.coeffs[0].mul(&top_inv).neg();
        let f = self.rhs.mul(&top_inv);
        Some((a, f))
    }

    /// Divide through by the highest-shift coefficient, making it 1.
    pub fn canonical(&self) -> Self {
        let top = self.coeffs.last().unwrap();
        if top.is_zero() || *top == RatFun::one() {
            return self.clone();
        }
        let inv = top.inv();
        TauEquation {
            shift: self.shift.clone(),
            coeffs: self.coeffs.iter().map(|b| b.mul(&inv)).collect(),
            rhs: self.rhs.mul(&inv),
        }
    }

    /// Substitute a truncated power series and report how far the residual
    /// sum_k b_k tau^k(y) - rhs vanishes.
    pub fn series_residual(&self, y: &Series<K>) -> ResidualReport {
        let n = y.order();
        let window = n + 8;
        let beta = self.shift.beta_in::<K>();

        let mut residual = Laurent::from_ratfun(&self.rhs.neg(), window)
            .expect("rational functions always expand");
        let mut tau_k = y.clone();
        for (k, b) in self.coeffs.iter().enumerate() {
            if k > 0 {
                tau_k = tau_k
                    .tau_substitute(&beta)
                    .expect("shift has nonzero beta");
            }
            if b.is_zero() {
                continue;
            }
            // b * tau^k(y) as numerator multiply plus unit-denominator
            // divide; a power of t in the denominator only moves the
            // window start. Keeps the cost at O(N deg b) per term.
            let den_val = b.den().valuation().unwrap_or(0);
            let den_core =
                crate::poly::Poly::from_coeffs(b.den().coeffs()[den_val..].to_vec());
            let term = tau_k
                .mul_poly(b.num())
                .div_poly(&den_core)
                .expect("unit constant term after stripping valuation");
            residual = residual.add(&Laurent::from_parts(
                -(den_val as i64),
                term.coeffs().to_vec(),
            ));
        }
        let checked_to = residual.end();
        let first_failure = residual.first_nonzero_from(residual.start());
        ResidualReport {
            checked_to,
            first_failure,
        }
    }

    /// Unique power-series solution of an order-1 equation, to order n.
    ///
    /// Fails with `Resonance` when the coefficient recursion does not pin
    /// the series down (the homogeneous equation has a series solution), and
    /// with `InvalidProblem` when no power-series solution exists.
    pub fn solve_series(&self, n: usize) -> Result<Series<K>> {
        if self.order() != 1 {
            return Err(Error::InvalidProblem(format!(
                "series solving expects an order-1 equation, got order {}",
                self.order()
            )));
        }
        if n == 0 {
            return Ok(Series::zero(0));
        }
        let beta = self.shift.beta_in::<K>();

        // Solve for a few extra coefficients beyond n. Rows are cut at
        // n + 4 + V0 (V0 the worst coefficient valuation), so every row is a
        // true constraint referencing only the unknowns present: column j
        // starts no earlier than j + V0. Tail unknowns may come out
        // underdetermined, which is a windowing artifact, not resonance;
        // only kernel vectors touching the first n coefficients count.
        let extra = 4usize;
        let unknowns = n + extra;
        let window = n + extra + 24;

        let b0 = Laurent::from_ratfun(&self.coeffs[0], window)?;
        let b1 = Laurent::from_ratfun(&self.coeffs[1], window)?;
        let rhs = Laurent::from_ratfun(&self.rhs, window)?;
        let v0 = b0.start().min(b1.start()).min(0);

        // Image of each basis monomial t^j under y -> b0 y + b1 tau(y).
        let mut columns = Vec::with_capacity(unknowns);
        let mut tau_tj = Series::one(window); // tau(t^j), built incrementally
        let denom = crate::poly::Poly::from_coeffs(vec![K::one(), beta.clone()]);
        for j in 0..unknowns {
            if j > 0 {
                tau_tj = tau_tj
                    .shift_up(1)
                    .div_poly(&denom)
                    .expect("unit constant term");
            }
            let tj = Series::from_fn(window, |k| if k == j { K::one() } else { K::zero() });
            let img = b0
                .mul(&Laurent::from_series(&tj))
                .add(&b1.mul(&Laurent::from_series(&tau_tj)));
            columns.push(img);
        }

        let row_start = columns
            .iter()
            .map(Laurent::start)
            .chain(std::iter::once(rhs.start()))
            .min()
            .unwrap();
        let row_end = (n as i64 + extra as i64 + v0)
            .min(columns.iter().map(Laurent::end).min().unwrap())
            .min(rhs.end());
        if row_end <= row_start {
            return Err(Error::InvalidProblem("empty residual window".into()));
        }

        let mut matrix = Vec::new();
        let mut rhs_vec = Vec::new();
        for e in row_start..row_end {
            matrix.push(columns.iter().map(|c| c.coeff(e)).collect());
            rhs_vec.push(rhs.coeff(e));
        }
        let sys = LinSystem::new(matrix, rhs_vec)?;
        let sol = linsolve(&sys)?.ok_or_else(|| {
            Error::InvalidProblem("equation has no power-series solution".into())
        })?;
        let genuine_resonance = sol
            .kernel
            .iter()
            .filter_map(|k| k.iter().position(|c| !c.is_zero()))
            .filter(|&pos| pos < n)
            .min();
        if let Some(order) = genuine_resonance {
            return Err(Error::Resonance { order });
        }
        Ok(Series::from_coeffs(sol.particular[..n].to_vec()))
    }
}

impl<K: CoeffField> std::fmt::Display for TauEquation<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .map(|(k, b)| match k {
                0 => format!("({b})*y"),
                1 => format!("({b})*T(y)"),
                _ => format!("({b})*T^{k}(y)"),
            })
            .collect();
        write!(
            f,
            "{} = {}  [t -> t/(1+({})t)]",
            terms.join(" + "),
            self.rhs,
            self.shift.beta()
        )
    }
}

impl<K: CoeffField> std::fmt::Debug for TauEquation<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// Substitute x = value in every coefficient of an equation over Q(i)(x).
pub fn specialize_equation(
    eq: &TauEquation<crate::param::Param>,
    x: &crate::gauss::GaussRat,
) -> Result<TauEquation<crate::gauss::GaussRat>> {
    let coeffs = eq
        .coeffs()
        .iter()
        .map(|b| crate::param::specialize_ratfun(b, x))
        .collect::<Result<Vec<_>>>()?;
    let rhs = crate::param::specialize_ratfun(eq.rhs(), x)?;
    TauEquation::new(eq.shift().clone(), coeffs, rhs)
}
