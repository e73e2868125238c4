//! The catalog of sequence families.
//!
//! Each entry packages an EGF construction, the first-order (or, for the
//! bipartite-graph family, second-order) difference equation its OGF
//! satisfies under the appropriate Moebius shift, parameter slots with their
//! singular loci, and reference coefficient prefixes for regression checks.
//! Family and parameter conventions follow the classical sources (Apostol,
//! Carlitz, Glaisher, Tanny, Touchard, Toscano, Andre, Springer); OEIS ids
//! are recorded where the specialized sequences live there.

use crate::compile::{EgfEquation, ExpMonomial};
use crate::equation::{specialize_equation, ResidualReport, TauEquation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gauss::{CoeffField, GaussRat};
use crate::param::{specialize_series, Param};
use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::series::{series_cos, series_sin, Series};
use crate::shift::MoebiusShift;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bernoulli,
    Glaisher,
    ApostolBernoulli,
    Imschenetsky,
    Euler,
    Genocchi,
    Carlitz,
    Fubini,
    BellTouchard,
    Mahler,
    Toscano,
    Tangent,
    Alternating,
    Springer,
    GraphA060311,
    BernoulliNumbers,
}

/// Parameter choice for the x slot.
#[derive(Clone, Debug, PartialEq)]
pub enum XValue {
    Symbolic,
    At(GaussRat),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryParams {
    pub x: XValue,
    pub gamma: Option<GaussRat>,
}

impl EntryParams {
    pub fn symbolic() -> Self {
        EntryParams {
            x: XValue::Symbolic,
            gamma: None,
        }
    }

    pub fn at(x: i64) -> Self {
        EntryParams {
            x: XValue::At(GaussRat::from_int(x)),
            gamma: None,
        }
    }

    pub fn at_rat(x: GaussRat) -> Self {
        EntryParams {
            x: XValue::At(x),
            gamma: None,
        }
    }

    pub fn with_gamma(mut self, gamma: GaussRat) -> Self {
        self.gamma = Some(gamma);
        self
    }
}

/// Reference coefficients at a specialization, for regression checks.
#[derive(Clone, Debug)]
pub struct ReferenceTerms {
    pub label: &'static str,
    pub x: Option<GaussRat>,
    pub gamma: Option<GaussRat>,
    pub terms: Vec<GaussRat>,
}

#[derive(Clone, Debug)]
pub struct EntryInfo {
    pub family: Family,
    pub name: &'static str,
    pub description: &'static str,
    pub provenance: &'static str,
    pub oeis: &'static [&'static str],
    pub uses_x: bool,
    pub uses_gamma: bool,
    /// x values that hit a stored singular locus and are rejected.
    pub singular_x: Vec<GaussRat>,
    /// gamma values that degenerate the EGF construction.
    pub singular_gamma: Vec<GaussRat>,
    /// Order of the stored difference equation.
    pub equation_order: usize,
    /// Whether the EGF differential equation is in the compiler's class.
    pub compilable: bool,
    /// Specializations used by the verification sweeps.
    pub default_specializations: Vec<EntryParams>,
    /// Whether the stored equation also holds with symbolic x.
    pub symbolic_equation: bool,
}

pub const FAMILIES: [Family; 16] = [
    Family::Bernoulli,
    Family::Glaisher,
    Family::ApostolBernoulli,
    Family::Imschenetsky,
    Family::Euler,
    Family::Genocchi,
    Family::Carlitz,
    Family::Fubini,
    Family::BellTouchard,
    Family::Mahler,
    Family::Toscano,
    Family::Tangent,
    Family::Alternating,
    Family::Springer,
    Family::GraphA060311,
    Family::BernoulliNumbers,
];

pub fn family_name(f: Family) -> &'static str {
    match f {
        Family::Bernoulli => "bernoulli",
        Family::Glaisher => "glaisher",
        Family::ApostolBernoulli => "apostol-bernoulli",
        Family::Imschenetsky => "imschenetsky",
        Family::Euler => "euler",
        Family::Genocchi => "genocchi",
        Family::Carlitz => "carlitz",
        Family::Fubini => "fubini",
        Family::BellTouchard => "bell-touchard",
        Family::Mahler => "mahler",
        Family::Toscano => "toscano",
        Family::Tangent => "tangent",
        Family::Alternating => "alternating",
        Family::Springer => "springer",
        Family::GraphA060311 => "graph-a060311",
        Family::BernoulliNumbers => "bernoulli-numbers",
    }
}

pub fn find(name: &str) -> Result<Family> {
    let lower = name.to_ascii_lowercase();
    FAMILIES
        .iter()
        .copied()
        .find(|f| family_name(*f) == lower)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn g(n: i64) -> GaussRat {
    GaussRat::from_int(n)
}

fn gr(p: i64, q: i64) -> GaussRat {
    GaussRat::ratio(p, q)
}

fn two_i() -> GaussRat {
    GaussRat::i().mul(&g(2))
}

pub fn entry_info(family: Family) -> EntryInfo {
    let defaults_x3 = vec![EntryParams::at(1), EntryParams::at(2), EntryParams::at(-1)];
    let defaults_gamma = |xs: &[i64]| -> Vec<EntryParams> {
        let mut out = Vec::new();
        for (x, gamma) in [(xs[0], g(2)), (xs[1], gr(1, 2)), (xs[2], g(2))] {
            out.push(EntryParams::at(x).with_gamma(gamma));
        }
        out
    };
    let fixed = vec![EntryParams::symbolic()];
    match family {
        Family::Bernoulli => EntryInfo {
            family,
            name: "bernoulli",
            description: "Bernoulli polynomials B_n(x), EGF t e^(xt)/(e^t - 1)",
            provenance: "Apostol 2008; Appell class",
            oeis: &["A027641", "A027642"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::Glaisher => EntryInfo {
            family,
            name: "glaisher",
            description: "Glaisher polynomials U_n(x), EGF t e^(xt)/(e^t + 1)",
            provenance: "Glaisher 1898, sections 229 and 234",
            oeis: &[],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::ApostolBernoulli => EntryInfo {
            family,
            name: "apostol-bernoulli",
            description: "Apostol-Bernoulli polynomials, EGF t e^(xt)/(g e^t - 1)",
            provenance: "Apostol 1951",
            oeis: &[],
            uses_x: true,
            uses_gamma: true,
            singular_x: vec![],
            singular_gamma: vec![g(1), g(0)],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_gamma(&[1, 2, -1]),
            symbolic_equation: true,
        },
        Family::Imschenetsky => EntryInfo {
            family,
            name: "imschenetsky",
            description: "Imschenetsky polynomials, EGF t (e^(xt) - 1)/(e^t - 1)",
            provenance: "Erdelyi-Magnus-Oberhettinger-Tricomi 1955, p. 254 (38)",
            oeis: &[],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: vec![
                EntryParams::at(1),
                EntryParams::at(2),
                EntryParams::at(3),
            ],
            symbolic_equation: true,
        },
        Family::Euler => EntryInfo {
            family,
            name: "euler",
            description: "Euler polynomials E_n(x), EGF 2 e^(xt)/(e^t + 1)",
            provenance: "Carlitz 1958",
            oeis: &["A060096"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::Genocchi => EntryInfo {
            family,
            name: "genocchi",
            description: "Genocchi polynomials G_n(x), EGF 2t e^(xt)/(e^t + 1)",
            provenance: "Horadam 1991; Dumont 1974 for the numbers",
            oeis: &["A001469"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::Carlitz => EntryInfo {
            family,
            name: "carlitz",
            description: "Carlitz polynomials, EGF (1-g) e^(xt)/(1 - g e^t)",
            provenance: "Carlitz 1962",
            oeis: &[],
            uses_x: true,
            uses_gamma: true,
            singular_x: vec![],
            singular_gamma: vec![g(1)],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_gamma(&[1, 2, -1]),
            symbolic_equation: true,
        },
        Family::Fubini => EntryInfo {
            family,
            name: "fubini",
            description: "Fubini polynomials, EGF 1/(1 - x(e^t - 1))",
            provenance: "Tanny 1975",
            oeis: &["A000670"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![g(-1)],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: vec![
                EntryParams::at(1),
                EntryParams::at(2),
                EntryParams::at(3),
            ],
            symbolic_equation: true,
        },
        Family::BellTouchard => EntryInfo {
            family,
            name: "bell-touchard",
            description: "Bell-Touchard polynomials phi_n(x), EGF exp(x(e^t - 1))",
            provenance: "Bell 1934; Touchard 1956",
            oeis: &["A000110", "A000587", "A001861"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::Mahler => EntryInfo {
            family,
            name: "mahler",
            description: "Mahler polynomials s_n(x), EGF exp(x(1 + t - e^t))",
            provenance: "Mahler 1932",
            oeis: &["A000296"],
            uses_x: true,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_x3.clone(),
            symbolic_equation: true,
        },
        Family::Toscano => EntryInfo {
            family,
            name: "toscano",
            description: "Toscano actuarial polynomials, EGF exp(-x e^t + g t + x)",
            provenance: "Toscano 1950",
            oeis: &[],
            uses_x: true,
            uses_gamma: true,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: defaults_gamma(&[1, 2, -1]),
            symbolic_equation: true,
        },
        Family::Tangent => EntryInfo {
            family,
            name: "tangent",
            description: "Tangent numbers, EGF tan(t), interleaved OGF",
            provenance: "classical; equation under the shift with beta = 2i",
            oeis: &["A000182"],
            uses_x: false,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: false,
            default_specializations: fixed.clone(),
            symbolic_equation: false,
        },
        Family::Alternating => EntryInfo {
            family,
            name: "alternating",
            description: "Alternating permutations, EGF tan(t) + sec(t)",
            provenance: "Andre 1881",
            oeis: &["A000111"],
            uses_x: false,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: false,
            default_specializations: fixed.clone(),
            symbolic_equation: false,
        },
        Family::Springer => EntryInfo {
            family,
            name: "springer",
            description: "Springer numbers, EGF 1/(cos(t) - sin(t))",
            provenance: "Springer 1971; Glaisher 1898 section 253",
            oeis: &["A001586"],
            uses_x: false,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: false,
            default_specializations: fixed.clone(),
            symbolic_equation: false,
        },
        Family::GraphA060311 => EntryInfo {
            family,
            name: "graph-a060311",
            description: "Labeled graphs whose components are complete bipartite, EGF exp((e^t - 1)^2/2)",
            provenance: "OEIS A060311",
            oeis: &["A060311"],
            uses_x: false,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 2,
            compilable: true,
            default_specializations: fixed.clone(),
            symbolic_equation: false,
        },
        Family::BernoulliNumbers => EntryInfo {
            family,
            name: "bernoulli-numbers",
            description: "Bernoulli numbers, EGF t/(e^t - 1)",
            provenance: "classical; Zagier 1998 for the OGF equation",
            oeis: &["A027641", "A027642"],
            uses_x: false,
            uses_gamma: false,
            singular_x: vec![],
            singular_gamma: vec![],
            equation_order: 1,
            compilable: true,
            default_specializations: fixed,
            symbolic_equation: false,
        },
    }
}

pub fn list_entries() -> Vec<EntryInfo> {
    FAMILIES.iter().map(|f| entry_info(*f)).collect()
}

fn check_singular(family: Family, params: &EntryParams) -> Result<()> {
    let info = entry_info(family);
    if let XValue::At(x) = &params.x {
        if info.singular_x.contains(x) {
            return Err(Error::SingularParameter(format!(
                "{}: x = {} is a stored singular locus",
                info.name, x
            )));
        }
    }
    if info.uses_gamma {
        let gamma = params
            .gamma
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} needs gamma", info.name)))?;
        if info.singular_gamma.contains(gamma) {
            return Err(Error::SingularParameter(format!(
                "{}: gamma = {} degenerates the family",
                info.name, gamma
            )));
        }
    }
    Ok(())
}

// ---- EGF builders, generic over the coefficient field ----

/// sum_k t^k/(k+1)! = (e^t - 1)/t, the unit used by the Appell families.
fn expm1_over_t<K: Field>(n: usize) -> Series<K> {
    let mut fact = K::one();
    Series::from_fn(n, |k| {
        fact = fact.mul(&K::from_i64((k + 1) as i64));
        K::one().div(&fact)
    })
}

fn egf_series<K: CoeffField>(family: Family, x: &K, gamma: &K, n: usize) -> Result<Series<K>> {
    let one = Series::one(n);
    let exp_t = Series::exp_ct(&K::one(), n);
    let exp_xt = || Series::exp_ct(x, n);
    let out = match family {
        Family::Bernoulli => expm1_over_t(n).recip()?.mul(&exp_xt()),
        Family::Glaisher => exp_t.add(&one).recip()?.mul(&exp_xt()).shift_up(1),
        Family::ApostolBernoulli => {
            // t e^(xt) / (g e^t - 1); at g = 1 the denominator loses its
            // constant term and the construction degenerates.
            let den = exp_t.scale(gamma).sub(&one);
            if den.coeff(0).is_zero() {
                return Err(Error::SingularParameter(
                    "apostol-bernoulli: gamma = 1 degenerates the EGF".into(),
                ));
            }
            den.recip()?.mul(&exp_xt()).shift_up(1)
        }
        Family::Imschenetsky => {
            let expxt_m1 = exp_xt().sub(&one);
            expm1_over_t(n).recip()?.mul(&expxt_m1)
        }
        Family::Euler => exp_t.add(&one).recip()?.mul(&exp_xt()).scale(&K::from_i64(2)),
        Family::Genocchi => exp_t
            .add(&one)
            .recip()?
            .mul(&exp_xt())
            .scale(&K::from_i64(2))
            .shift_up(1),
        Family::Carlitz => {
            let den = one.sub(&exp_t.scale(gamma));
            if den.coeff(0).is_zero() {
                return Err(Error::SingularParameter(
                    "carlitz: gamma = 1 degenerates the EGF".into(),
                ));
            }
            let scale = K::one().sub(gamma);
            den.recip()?.mul(&exp_xt()).scale(&scale)
        }
        Family::Fubini => one.sub(&exp_t.sub(&one).scale(x)).recip()?,
        Family::BellTouchard => exp_t.sub(&one).scale(x).exp()?,
        Family::Mahler => {
            // x(1 + t - e^t)
            let arg = Series::var(n).add(&one).sub(&exp_t).scale(x);
            arg.exp()?
        }
        Family::Toscano => {
            // -x e^t + g t + x = x(1 - e^t) + g t
            let arg = one.sub(&exp_t).scale(x).add(&Series::var(n).scale(gamma));
            arg.exp()?
        }
        Family::Tangent => series_sin::<K>(n).mul(&series_cos::<K>(n).recip()?),
        Family::Alternating => {
            let cos_inv = series_cos::<K>(n).recip()?;
            series_sin::<K>(n).mul(&cos_inv).add(&cos_inv)
        }
        Family::Springer => series_cos::<K>(n).sub(&series_sin::<K>(n)).recip()?,
        Family::GraphA060311 => {
            let em1 = exp_t.sub(&one);
            em1.mul(&em1).scale(&K::one().div(&K::from_i64(2))).exp()?
        }
        Family::BernoulliNumbers => expm1_over_t(n).recip()?,
    };
    Ok(out)
}

/// OGF at a concrete parameter point, over Q(i).
pub fn build_ogf(family: Family, params: &EntryParams, n: usize) -> Result<Series<GaussRat>> {
    check_singular(family, params)?;
    let info = entry_info(family);
    let x = match (&params.x, info.uses_x) {
        (XValue::At(x), _) => x.clone(),
        (XValue::Symbolic, false) => g(0),
        (XValue::Symbolic, true) => {
            return Err(Error::Precondition(format!(
                "{} needs a concrete x for coefficient output",
                info.name
            )))
        }
    };
    let gamma = params.gamma.clone().unwrap_or_else(|| g(0));
    Ok(egf_series(family, &x, &gamma, n)?.inverse_borel())
}

/// OGF with symbolic x, over Q(i)(x). Gamma, when the family has one, must
/// still be specialized.
pub fn build_ogf_symbolic(
    family: Family,
    gamma: Option<&GaussRat>,
    n: usize,
) -> Result<Series<Param>> {
    let info = entry_info(family);
    if info.uses_gamma && gamma.is_none() {
        return Err(Error::Precondition(format!("{} needs gamma", info.name)));
    }
    let gamma = gamma
        .map(|gv| Param::constant(gv.clone()))
        .unwrap_or_else(Param::zero);
    Ok(egf_series(family, &Param::x(), &gamma, n)?.inverse_borel())
}

// ---- Stored difference equations ----

/// The stored equation template over Q(i)(x), with gamma specialized.
pub fn equation(family: Family, gamma: Option<&GaussRat>) -> Result<TauEquation<Param>> {
    let info = entry_info(family);
    if info.uses_gamma && gamma.is_none() {
        return Err(Error::Precondition(format!("{} needs gamma", info.name)));
    }
    if let (Some(gv), true) = (gamma, info.uses_gamma) {
        if info.singular_gamma.contains(gv) {
            return Err(Error::SingularParameter(format!(
                "{}: gamma = {} degenerates the family",
                info.name, gv
            )));
        }
    }
    let x = || Param::x();
    let c = |v: GaussRat| Param::constant(v);
    let one = Param::one();
    let gamma_p = gamma.map(|gv| Param::constant(gv.clone())).unwrap_or_else(Param::zero);

    // Building blocks in the t variable over Q(i)(x).
    let t = Poly::<Param>::var();
    let one_plus_t = Poly::from_coeffs(vec![one.clone(), one.clone()]);
    // x t - t - 1 = -(1 + t - xt)
    let xt_m_t_m_1 = Poly::from_coeffs(vec![one.neg(), x().sub(&one)]);
    let one_p_t_m_xt = Poly::from_coeffs(vec![one.clone(), one.sub(&x())]);
    let rf = |num: Poly<Param>, den: Poly<Param>| RatFun::new(num, den);

    let unit = MoebiusShift::unit();
    let (shift, r, s) = match family {
        Family::Bernoulli => (
            unit,
            RatFun::from_poly(one_plus_t.clone()),
            rf(t.mul(&one_plus_t).neg(), xt_m_t_m_1.pow(2))?,
        ),
        Family::Glaisher => (
            // The (e^t + 1) companion of the Bernoulli row: same S up to
            // sign conventions but R = -(1+t), consistent with twice the
            // Glaisher EGF being the Genocchi EGF.
            unit,
            RatFun::from_poly(one_plus_t.clone()).neg(),
            rf(t.mul(&one_plus_t), xt_m_t_m_1.pow(2))?,
        ),
        Family::ApostolBernoulli => (
            unit,
            RatFun::from_poly(one_plus_t.scale(&gamma_p)),
            rf(t.mul(&one_plus_t).neg(), xt_m_t_m_1.pow(2))?,
        ),
        Family::Imschenetsky => (
            unit,
            RatFun::from_poly(one_plus_t.clone()),
            rf(
                t.mul(&t)
                    .scale(&x())
                    .mul(&Poly::from_coeffs(vec![
                        Param::from_i64(-2),
                        x().sub(&Param::from_i64(2)),
                    ])),
                one_plus_t.mul(&xt_m_t_m_1.pow(2)),
            )?,
        ),
        Family::Euler => (
            unit,
            RatFun::from_poly(one_plus_t.clone()).neg(),
            rf(one_plus_t.scale(&Param::from_i64(2)), one_p_t_m_xt.clone())?,
        ),
        Family::Genocchi => (
            unit,
            RatFun::from_poly(one_plus_t.clone()).neg(),
            rf(
                t.mul(&one_plus_t).scale(&Param::from_i64(2)),
                one_p_t_m_xt.pow(2),
            )?,
        ),
        Family::Carlitz => (
            unit,
            RatFun::from_poly(one_plus_t.scale(&gamma_p)),
            rf(
                one_plus_t.scale(&one.sub(&gamma_p)),
                one_p_t_m_xt.clone(),
            )?,
        ),
        Family::Fubini => {
            let x_plus_1 = x().add(&one);
            (
                unit,
                rf(one_plus_t.scale(&x()), Poly::constant(x_plus_1.clone()))?,
                rf(Poly::one(), Poly::constant(x_plus_1))?,
            )
        }
        Family::BellTouchard => (
            unit,
            RatFun::from_poly(t.scale(&x())),
            RatFun::one(),
        ),
        Family::Mahler => (
            unit,
            rf(t.mul(&one_plus_t).scale(&x()), xt_m_t_m_1.clone())?,
            rf(one_plus_t.clone(), one_p_t_m_xt.clone())?,
        ),
        Family::Toscano => {
            // gt - t - 1 and 1 + t - gt
            let gt_m_t_m_1 =
                Poly::from_coeffs(vec![one.neg(), gamma_p.sub(&one)]);
            let one_p_t_m_gt =
                Poly::from_coeffs(vec![one.clone(), one.sub(&gamma_p)]);
            (
                unit,
                rf(t.mul(&one_plus_t).scale(&x()), gt_m_t_m_1)?,
                rf(one_plus_t.clone(), one_p_t_m_gt)?,
            )
        }
        Family::Tangent => {
            // F(t/(1+2it)) = -(1+2it) F(t) + 2t
            let shift = MoebiusShift::new(two_i())?;
            let r = RatFun::from_poly(Poly::from_coeffs(vec![
                one.clone(),
                c(two_i()),
            ]))
            .neg();
            let s = RatFun::from_poly(t.scale(&Param::from_i64(2)));
            (shift, r, s)
        }
        Family::Alternating => {
            // A(t/(1+it)) = (t - i) A(t) + 1 + i + it
            let shift = MoebiusShift::new(GaussRat::i())?;
            let r = RatFun::from_poly(Poly::from_coeffs(vec![
                c(-&GaussRat::i()),
                one.clone(),
            ]));
            let s = RatFun::from_poly(Poly::from_coeffs(vec![
                c(g(1).add(&GaussRat::i())),
                c(GaussRat::i()),
            ]));
            (shift, r, s)
        }
        Family::Springer => {
            // S(t/(1+2it)) = (2t - i) S(t) + (1+i)(2t-i)/(t-i)
            let shift = MoebiusShift::new(two_i())?;
            let two_t_m_i = Poly::from_coeffs(vec![c(-&GaussRat::i()), Param::from_i64(2)]);
            let r = RatFun::from_poly(two_t_m_i.clone());
            let s = rf(
                two_t_m_i.scale(&c(g(1).add(&GaussRat::i()))),
                Poly::from_coeffs(vec![c(-&GaussRat::i()), one.clone()]),
            )?;
            (shift, r, s)
        }
        Family::GraphA060311 => {
            // tau^2(y) + (t/(1+t)) tau(y) - t y = 1
            let coeffs = vec![
                RatFun::from_poly(t.clone()).neg(),
                rf(t.clone(), one_plus_t.clone())?,
                RatFun::one(),
            ];
            return TauEquation::new(unit, coeffs, RatFun::one());
        }
        Family::BernoulliNumbers => (
            unit,
            RatFun::from_poly(one_plus_t.clone()),
            rf(t.neg(), one_plus_t.clone())?,
        ),
    };
    TauEquation::first_order(shift, &r, &s)
}

/// The stored equation at a concrete parameter point, over Q(i).
pub fn equation_at(family: Family, params: &EntryParams) -> Result<TauEquation<GaussRat>> {
    check_singular(family, params)?;
    let template = equation(family, params.gamma.as_ref())?;
    let x = match &params.x {
        XValue::At(x) => x.clone(),
        XValue::Symbolic => g(0),
    };
    specialize_equation(&template, &x)
}

// ---- EGF differential equations for the compiler ----

/// The differential equation with exponential coefficients satisfied by the
/// family's EGF, for the thirteen families in the compiler's class.
pub fn egf_equation(family: Family, gamma: Option<&GaussRat>) -> Result<Option<EgfEquation>> {
    let info = entry_info(family);
    if !info.compilable {
        return Ok(None);
    }
    if info.uses_gamma && gamma.is_none() {
        return Err(Error::Precondition(format!("{} needs gamma", info.name)));
    }
    let gamma_p = gamma.map(|gv| Param::constant(gv.clone())).unwrap_or_else(Param::zero);
    let one = Param::one();
    let lam = GaussRat::from_int(1);
    let x_rate = ExpMonomial {
        power: 1,
        rate: Param::x(),
        coeff: one.clone(),
    };

    let eq = match family {
        // (u - 1) f = t e^(xt)
        Family::Bernoulli => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.neg(), one.clone()])],
            rhs: vec![x_rate],
            init: vec![],
        },
        // (u + 1) f = t e^(xt)
        Family::Glaisher => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.clone(), one.clone()])],
            rhs: vec![x_rate],
            init: vec![],
        },
        // (g u - 1) f = t e^(xt)
        Family::ApostolBernoulli => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.neg(), gamma_p.clone()])],
            rhs: vec![x_rate],
            init: vec![],
        },
        // (u - 1) f = t e^(xt) - t
        Family::Imschenetsky => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.neg(), one.clone()])],
            rhs: vec![
                x_rate,
                ExpMonomial {
                    power: 1,
                    rate: Param::zero(),
                    coeff: one.neg(),
                },
            ],
            init: vec![],
        },
        // (u + 1) f = 2 e^(xt)
        Family::Euler => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.clone(), one.clone()])],
            rhs: vec![ExpMonomial {
                power: 0,
                rate: Param::x(),
                coeff: Param::from_i64(2),
            }],
            init: vec![],
        },
        // (u + 1) f = 2 t e^(xt)
        Family::Genocchi => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.clone(), one.clone()])],
            rhs: vec![ExpMonomial {
                power: 1,
                rate: Param::x(),
                coeff: Param::from_i64(2),
            }],
            init: vec![],
        },
        // (1 - g u) f = (1 - g) e^(xt)
        Family::Carlitz => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.clone(), gamma_p.neg()])],
            rhs: vec![ExpMonomial {
                power: 0,
                rate: Param::x(),
                coeff: one.sub(&gamma_p),
            }],
            init: vec![],
        },
        // (1 + x - x u) f = 1
        Family::Fubini => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![
                one.add(&Param::x()),
                Param::x().neg(),
            ])],
            rhs: vec![ExpMonomial {
                power: 0,
                rate: Param::zero(),
                coeff: one.clone(),
            }],
            init: vec![],
        },
        // D(f) - x u f = 0, f(0) = 1
        Family::BellTouchard => EgfEquation {
            lambda: lam,
            lhs: vec![
                Poly::from_coeffs(vec![Param::zero(), Param::x().neg()]),
                Poly::constant(one.clone()),
            ],
            rhs: vec![],
            init: vec![one.clone()],
        },
        // D(f) - x(1 - u) f = 0, f(0) = 1
        Family::Mahler => EgfEquation {
            lambda: lam,
            lhs: vec![
                Poly::from_coeffs(vec![Param::x().neg(), Param::x()]),
                Poly::constant(one.clone()),
            ],
            rhs: vec![],
            init: vec![one.clone()],
        },
        // D(f) + (x u - g) f = 0, f(0) = 1
        Family::Toscano => EgfEquation {
            lambda: lam,
            lhs: vec![
                Poly::from_coeffs(vec![gamma_p.neg(), Param::x()]),
                Poly::constant(one.clone()),
            ],
            rhs: vec![],
            init: vec![one.clone()],
        },
        // D(f) - (u^2 - u) f = 0, f(0) = 1
        Family::GraphA060311 => EgfEquation {
            lambda: lam,
            lhs: vec![
                Poly::from_coeffs(vec![Param::zero(), one.clone(), one.neg()]),
                Poly::constant(one.clone()),
            ],
            rhs: vec![],
            init: vec![one.clone()],
        },
        // (u - 1) f = t
        Family::BernoulliNumbers => EgfEquation {
            lambda: lam,
            lhs: vec![Poly::from_coeffs(vec![one.neg(), one.clone()])],
            rhs: vec![ExpMonomial {
                power: 1,
                rate: Param::zero(),
                coeff: one.clone(),
            }],
            init: vec![],
        },
        Family::Tangent | Family::Alternating | Family::Springer => unreachable!(),
    };
    Ok(Some(eq))
}

/// Substitute the entry's OGF into its stored equation and report how far
/// the residual vanishes.
pub fn verify_entry(family: Family, params: &EntryParams, n: usize) -> Result<ResidualReport> {
    check_singular(family, params)?;
    let info = entry_info(family);
    match &params.x {
        XValue::Symbolic if info.uses_x => {
            if !info.symbolic_equation {
                return Err(Error::Precondition(format!(
                    "{} has no symbolic-x equation",
                    info.name
                )));
            }
            let eq = equation(family, params.gamma.as_ref())?;
            let ogf = build_ogf_symbolic(family, params.gamma.as_ref(), n + 8)?;
            Ok(eq.series_residual(&ogf))
        }
        XValue::Symbolic => {
            let eq = equation(family, params.gamma.as_ref())?;
            let ogf = build_ogf_symbolic(family, params.gamma.as_ref(), n + 8)?;
            Ok(eq.series_residual(&ogf))
        }
        XValue::At(x) => {
            let eq = equation_at(family, params)?;
            let ogf_sym = build_ogf_symbolic(
                family,
                params.gamma.as_ref(),
                n + 8,
            )?;
            let ogf = specialize_series(&ogf_sym, x)?;
            Ok(eq.series_residual(&ogf))
        }
    }
}

/// Reference coefficient prefixes, exactly as printed in the sources.
pub fn reference_terms(family: Family) -> Vec<ReferenceTerms> {
    let ints = |v: &[i64]| -> Vec<GaussRat> { v.iter().map(|&n| g(n)).collect() };
    match family {
        Family::BellTouchard => vec![
            ReferenceTerms {
                label: "Bell numbers (A000110)",
                x: Some(g(1)),
                gamma: None,
                terms: ints(&[1, 1, 2, 5, 15, 52, 203]),
            },
            ReferenceTerms {
                label: "Uppuluri-Carpenter numbers (A000587)",
                x: Some(g(-1)),
                gamma: None,
                terms: ints(&[1, -1, 0, 1, 1, -2, -9, -9, 50]),
            },
            ReferenceTerms {
                label: "bicolored set partitions (A001861)",
                x: Some(g(2)),
                gamma: None,
                terms: ints(&[1, 2, 6, 22, 94, 454]),
            },
        ],
        Family::Mahler => vec![ReferenceTerms {
            label: "set partitions without singletons (A000296)",
            x: Some(g(-1)),
            gamma: None,
            terms: ints(&[1, 0, 1, 1, 4, 11, 41, 162, 715]),
        }],
        Family::Genocchi => vec![ReferenceTerms {
            label: "Genocchi numbers (A001469)",
            x: Some(g(1)),
            gamma: None,
            terms: ints(&[0, 1, 1, 0, -1, 0, 3, 0, -17, 0, 155]),
        }],
        Family::Fubini => vec![ReferenceTerms {
            label: "surjection numbers (A000670)",
            x: Some(g(1)),
            gamma: None,
            terms: ints(&[1, 1, 3, 13, 75, 541]),
        }],
        Family::Tangent => vec![ReferenceTerms {
            label: "tangent numbers, interleaved (A000182)",
            x: None,
            gamma: None,
            terms: ints(&[0, 1, 0, 2, 0, 16, 0, 272, 0, 7936, 0, 353792]),
        }],
        Family::Alternating => vec![ReferenceTerms {
            label: "alternating permutations (A000111)",
            x: None,
            gamma: None,
            terms: ints(&[1, 1, 1, 2, 5, 16, 61, 272]),
        }],
        Family::Springer => vec![ReferenceTerms {
            label: "Springer numbers (A001586)",
            x: None,
            gamma: None,
            terms: ints(&[1, 1, 3, 11, 57, 361, 2763]),
        }],
        Family::GraphA060311 => vec![ReferenceTerms {
            label: "complete-bipartite-component graphs (A060311)",
            x: None,
            gamma: None,
            terms: ints(&[1, 0, 1, 3, 10, 45]),
        }],
        Family::BernoulliNumbers => vec![ReferenceTerms {
            label: "Bernoulli numbers",
            x: None,
            gamma: None,
            terms: vec![
                g(1),
                gr(-1, 2),
                gr(1, 6),
                g(0),
                gr(-1, 30),
                g(0),
                gr(1, 42),
                g(0),
                gr(-1, 30),
            ],
        }],
        _ => vec![],
    }
}
