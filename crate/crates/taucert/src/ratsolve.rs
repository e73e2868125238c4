//! Rational solutions of first-order shift equations tau(g) = a g + f,
//! factorization-free.
//!
//! The equation moves to the frame s = 1/(bt), where it becomes a polynomial
//! difference equation B(s) G(s+1) = A(s) G(s) + C(s). Any rational solution
//! has its poles confined to integer chains whose right ends are roots of A
//! and whose left ends sit one past roots of B, so a universal denominator
//! can be assembled from gcds at integer shifts (the dispersion set). The
//! numerator is then bounded by leading-coefficient analysis and found by an
//! exact linear solve; nothing is ever factored.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::{BigRat, GaussRat};
use crate::linsolve::{linsolve, LinSystem};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::shift::{from_shift_frame, tau_apply, to_shift_frame, MoebiusShift};

type Rat = RatFun<GaussRat>;
type P = Poly<GaussRat>;

const DISPERSION_CAP: i64 = 1 << 14;

/// Solver diagnostics kept for certificates.
#[derive(Clone, Debug)]
pub struct RatSolveOutcome {
    /// A rational g with tau(g) = a g + f, when one exists.
    pub particular: Option<Rat>,
    /// A nonzero rational z with tau(z) = a z, when one exists. The space of
    /// such solutions is at most one-dimensional over the constants.
    pub homogeneous: Option<Rat>,
    /// Degree of the universal denominator used in the frame.
    pub universal_denominator_degree: usize,
    /// Bound used for the numerator degree in the frame (-1: forced zero).
    pub numerator_degree_bound: i64,
}

/// Decide existence of a rational solution of tau(g) = a g + f and return
/// one if it exists.
pub fn rational_solution(a: &Rat, f: &Rat, shift: &MoebiusShift) -> Result<Option<Rat>> {
    Ok(rational_solution_full(a, f, shift)?.particular)
}

/// Full outcome: particular and homogeneous solutions plus diagnostics.
pub fn rational_solution_full(a: &Rat, f: &Rat, shift: &MoebiusShift) -> Result<RatSolveOutcome> {
    if a.is_zero() {
        return Err(Error::Precondition("tau(g) = a g + f needs a != 0".into()));
    }
    let a_frame = to_shift_frame(a, shift);
    let f_frame = to_shift_frame(f, shift);

    // Clear denominators: B G(s+1) = A G(s) + C with polynomial A, B, C.
    let common = lcm(a_frame.den(), f_frame.den());
    let b_poly = common.clone();
    let a_poly = a_frame.num().mul(&common.exact_div(a_frame.den()));
    let c_poly = f_frame.num().mul(&common.exact_div(f_frame.den()));

    let (particular, homogeneous, udeg, dbound) =
        solve_polynomial_difference(&b_poly, &a_poly, &c_poly)?;

    let particular = particular.map(|g_frame| from_shift_frame(&g_frame, shift));
    let homogeneous = homogeneous.map(|z_frame| from_shift_frame(&z_frame, shift));

    if let Some(g) = &particular {
        debug_assert_eq!(tau_apply(g, shift), a.mul(g).add(f));
    }
    if let Some(z) = &homogeneous {
        debug_assert_eq!(tau_apply(z, shift), a.mul(z));
        debug_assert!(!z.is_zero());
    }

    Ok(RatSolveOutcome {
        particular,
        homogeneous,
        universal_denominator_degree: udeg,
        numerator_degree_bound: dbound,
    })
}

fn lcm(p: &P, q: &P) -> P {
    let g = Poly::gcd(p, q);
    p.mul(&q.exact_div(&g)).into_monic()
}

/// Solve B(s) G(s+1) = A(s) G(s) + C(s) for rational G.
fn solve_polynomial_difference(
    b: &P,
    a: &P,
    c: &P,
) -> Result<(Option<Rat>, Option<Rat>, usize, i64)> {
    let u = universal_denominator(a, b)?;
    let u_next = u.shift_arg(&GaussRat::from_int(1));

    // Substituting G = P/U and clearing:
    //   L(s) P(s+1) - M(s) P(s) = N(s)
    let l = b.mul(&u);
    let m = a.mul(&u_next);
    let n = c.mul(&u).mul(&u_next);

    let d_bound = numerator_degree_bound(&l, &m, &n);
    let udeg = u.deg().unwrap_or(0);

    if d_bound < 0 {
        // Only the zero numerator is possible.
        let particular = if n.is_zero() { Some(Rat::zero()) } else { None };
        return Ok((particular, None, udeg, d_bound));
    }

    let d = d_bound as usize;
    // Row e: coefficient of s^e in L P(s+1) - M P - N.
    let max_deg = l
        .deg()
        .unwrap_or(0)
        .max(m.deg().unwrap_or(0))
        .saturating_add(d)
        .max(n.deg().unwrap_or(0));
    let mut matrix = vec![vec![GaussRat::from_int(0); d + 1]; max_deg + 1];
    for j in 0..=d {
        // image of s^j: L (s+1)^j - M s^j
        let sj = Poly::monomial(GaussRat::from_int(1), j);
        let sj_shift = sj.shift_arg(&GaussRat::from_int(1));
        let img = l.mul(&sj_shift).sub(&m.mul(&sj));
        for (e, row) in matrix.iter_mut().enumerate() {
            row[j] = img.coeff(e);
        }
    }
    let rhs: Vec<GaussRat> = (0..=max_deg).map(|e| n.coeff(e)).collect();
    let sys = LinSystem::new(matrix, rhs)?;
    let solution = linsolve(&sys)?;

    let to_ratfun = |coeffs: &[GaussRat]| -> Rat {
        RatFun::new(Poly::from_coeffs(coeffs.to_vec()), u.clone()).expect("U nonzero")
    };

    match solution {
        None => {
            // No particular solution; the kernel (homogeneous solutions)
            // still needs reporting. Re-solve with zero right-hand side.
            let zero_rhs = vec![GaussRat::from_int(0); max_deg + 1];
            let hom_sys = LinSystem::new(sys.matrix.clone(), zero_rhs)?;
            let hom = linsolve(&hom_sys)?
                .and_then(|s| s.kernel.into_iter().next())
                .map(|k| to_ratfun(&k))
                .filter(|z| !z.is_zero());
            Ok((None, hom, udeg, d_bound))
        }
        Some(sol) => {
            let particular = to_ratfun(&sol.particular);
            let homogeneous = sol
                .kernel
                .into_iter()
                .map(|k| to_ratfun(&k))
                .find(|z| !z.is_zero());
            Ok((Some(particular), homogeneous, udeg, d_bound))
        }
    }
}

/// Degree bound for the numerator P in L P(s+1) - M P = N.
fn numerator_degree_bound(l: &P, m: &P, n: &P) -> i64 {
    let e1 = l.deg().expect("L nonzero") as i64;
    let e2 = m.deg().expect("M nonzero") as i64;
    let ndeg = n.deg().map(|d| d as i64);

    if e1 != e2 || l.lc() != m.lc() {
        // Leading terms cannot cancel: deg lhs = max(e1, e2) + deg P.
        return match ndeg {
            Some(nd) => nd - e1.max(e2),
            None => -1,
        };
    }

    // Leading cancellation: the top surviving coefficient of the image of
    // s^d is lc * (d - d0) at degree e + d - 1, with d0 below.
    let e = e1;
    let l2 = if e > 0 { l.coeff((e - 1) as usize) } else { GaussRat::from_int(0) };
    let m2 = if e > 0 { m.coeff((e - 1) as usize) } else { GaussRat::from_int(0) };
    let d0 = m2.sub(&l2).div(l.lc());
    let d0_int = integer_value(&d0).filter(|v| *v >= 0);

    let generic = ndeg.map(|nd| nd - e + 1);
    match (generic, d0_int) {
        (Some(g), Some(d0)) => g.max(d0),
        (Some(g), None) => g,
        (None, Some(d0)) => d0,
        (None, None) => -1,
    }
}

fn integer_value(g: &GaussRat) -> Option<i64> {
    crate::shift::gauss_as_integer(g)
}

/// Universal denominator for B(s) G(s+1) = A(s) G(s) + C(s): a polynomial
/// divisible by the denominator of every rational solution G.
pub fn universal_denominator(a: &P, b: &P) -> Result<P> {
    let mut a0 = a.clone().into_monic();
    let mut b0 = b.shift_arg(&GaussRat::from_int(-1)).into_monic();
    let mut u = P::one();
    let mut dispersion = dispersion_set(&a0, &b0)?;
    dispersion.sort_unstable_by(|x, y| y.cmp(x));
    for k in dispersion {
        let shifted = b0.shift_arg(&GaussRat::from_int(-k));
        let d = Poly::gcd(&a0, &shifted);
        if d.deg().unwrap_or(0) == 0 {
            continue;
        }
        a0 = a0.exact_div(&d);
        b0 = b0.exact_div(&d.shift_arg(&GaussRat::from_int(k)));
        for i in 0..=k {
            u = u.mul(&d.shift_arg(&GaussRat::from_int(i)));
        }
    }
    Ok(u)
}

/// All k >= 0 with gcd(A(s), B0(s - k)) nontrivial, where B0 is already the
/// left-end marker. Integer candidates are the integer roots of the
/// resultant Res_s(A(s), B0(s-k)), a polynomial in k recovered by
/// interpolation; each candidate within its Cauchy root bound is verified by
/// an actual gcd.
fn dispersion_set(a: &P, b0: &P) -> Result<Vec<i64>> {
    let da = a.deg().unwrap_or(0);
    let db = b0.deg().unwrap_or(0);
    if da == 0 || db == 0 {
        return Ok(Vec::new());
    }
    let degree = da * db;
    let samples: Vec<(GaussRat, GaussRat)> = (0..=degree as i64)
        .map(|k| {
            let shifted = b0.shift_arg(&GaussRat::from_int(-k));
            (GaussRat::from_int(k), Poly::resultant(a, &shifted))
        })
        .collect();
    let res_poly = lagrange_interpolate(&samples);

    // Every dispersion value is an integer root of the resultant AND a
    // difference of a root of A and a root of B0, so the smaller of the two
    // root bounds is still a bound.
    let pair_bound = cauchy_root_bound(a) + cauchy_root_bound(b0) + 1;
    let bound = match res_poly.deg() {
        None => pair_bound, // resultant vanished at every node
        Some(0) => 0,       // nonzero constant: empty dispersion
        Some(_) => pair_bound.min(cauchy_root_bound(&res_poly)),
    };
    if bound > DISPERSION_CAP {
        return Err(Error::Precondition(format!(
            "dispersion bound {bound} exceeds cap {DISPERSION_CAP}"
        )));
    }

    let mut out = Vec::new();
    for k in 0..=bound {
        if !res_poly.is_zero() && !res_poly.eval(&GaussRat::from_int(k)).is_zero() {
            continue;
        }
        let shifted = b0.shift_arg(&GaussRat::from_int(-k));
        if Poly::gcd(a, &shifted).deg().unwrap_or(0) >= 1 {
            out.push(k);
        }
    }
    Ok(out)
}

/// Cauchy bound on root magnitudes: 1 + max |c_i| / |lead|, with the
/// numerator over-estimated and the denominator under-estimated so the
/// result stays a genuine upper bound.
fn cauchy_root_bound(p: &P) -> i64 {
    let deg = match p.deg() {
        None | Some(0) => return 0,
        Some(d) => d,
    };
    // |z| >= (|re| + |im|) / 2 for the leading coefficient.
    let lead_lower = p.lc().abs_upper_bound() / BigRat::from_integer(2.into());
    let mut worst = BigRat::from_integer(0.into());
    for i in 0..deg {
        let ratio = p.coeff(i).abs_upper_bound() / lead_lower.clone();
        if ratio > worst {
            worst = ratio;
        }
    }
    (worst.to_f64().unwrap_or(f64::INFINITY)).min(DISPERSION_CAP as f64 * 4.0).ceil() as i64 + 1
}

fn lagrange_interpolate(samples: &[(GaussRat, GaussRat)]) -> P {
    let mut acc = P::zero();
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = P::one();
        let mut denom = GaussRat::from_int(1);
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::from_coeffs(vec![-xj, GaussRat::from_int(1)]));
            denom = denom.mul(&xi.sub(xj));
        }
        acc = acc.add(&basis.scale(&yi.div(&denom)));
    }
    acc
}
