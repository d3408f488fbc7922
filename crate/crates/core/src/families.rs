//! Catalog of named Sheffer pairs and family-specific constructions.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::iterated::{
    expand_columns, gf_2isp, iterated_sequence, CompositionOrder, IteratedSpec, Mode,
};
use crate::monomiality::{raising_2isp, raising_2isp_outer_factor, DiffOperator, OperatorAudit};
use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
use crate::rational::{
    binomial, factorial, frac, int, is_integer, parse_rational, pow, to_i64, Rational,
};
use crate::riordan::{RiordanArray, Triangle};
use crate::sheffer::{Normalization, PolynomialSequence, ShefferPair};
use crate::specparse::{parse_and_evaluate, Bindings};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reference {
    Exponential,
    Classical,
    /// `c_n = 1 / C(-lambda, n)`.
    NegBinomialLambda,
}

type Builder = fn(&Bindings, usize) -> Result<(FormalPowerSeries, FormalPowerSeries)>;

/// Static description of a catalog entry.
#[derive(Clone, Copy)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub title: &'static str,
    pub params: &'static [ParamSpec],
    /// `g(t)` in the expression syntax of [`crate::specparse`].
    pub g_text: &'static str,
    pub f_text: &'static str,
    pub normalization: Normalization,
    pub notes: &'static str,
    reference: Reference,
    build: Builder,
}

impl fmt::Debug for FamilyInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilyInfo")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

const fn p(name: &'static str, default: &'static str) -> ParamSpec {
    ParamSpec { name, default }
}

static FAMILIES: &[FamilyInfo] = &[
    FamilyInfo {
        name: "hermite",
        title: "Hermite polynomials H_n",
        params: &[],
        g_text: "exp(t^2/4)",
        f_text: "t/2",
        normalization: Normalization::Unit,
        notes: "exp(2xt - t^2) = sum H_n t^n / n!",
        reference: Reference::Exponential,
        build: build_hermite,
    },
    FamilyInfo {
        name: "generalized-hermite",
        title: "generalized Hermite polynomials H_{n,m,nu}",
        params: &[p("m", "2"), p("nu", "2")],
        g_text: "exp((t/nu)^m)",
        f_text: "t/nu",
        normalization: Normalization::Unit,
        notes: "exp(nu x t - t^m); m a positive integer, nu nonzero",
        reference: Reference::Exponential,
        build: build_generalized_hermite,
    },
    FamilyInfo {
        name: "laguerre",
        title: "Laguerre polynomials L_n^(alpha)",
        params: &[p("alpha", "0")],
        g_text: "(1-t)^(-alpha-1)",
        f_text: "t/(t-1)",
        normalization: Normalization::DivideByReference,
        notes: "the Sheffer sequence is n! L_n^(alpha)",
        reference: Reference::Exponential,
        build: build_laguerre,
    },
    FamilyInfo {
        name: "pidduck",
        title: "Pidduck polynomials P_n",
        params: &[],
        g_text: "2/(exp(t)+1)",
        f_text: "(exp(t)-1)/(exp(t)+1)",
        normalization: Normalization::Unit,
        notes: "(1-t)^(-1) ((1+t)/(1-t))^x = sum P_n t^n / n!",
        reference: Reference::Exponential,
        build: build_pidduck,
    },
    FamilyInfo {
        name: "actuarial",
        title: "actuarial polynomials a_n^(beta)",
        params: &[p("beta", "1")],
        g_text: "(1-t)^(-beta)",
        f_text: "log(1-t)",
        normalization: Normalization::Unit,
        notes: "exp(beta t + x (1 - e^t))",
        reference: Reference::Exponential,
        build: build_actuarial,
    },
    FamilyInfo {
        name: "poisson-charlier",
        title: "Poisson-Charlier polynomials c_n(x; a)",
        params: &[p("a", "1")],
        g_text: "exp(a*(exp(t)-1))",
        f_text: "a*(exp(t)-1)",
        normalization: Normalization::Unit,
        notes: "e^(-t) (1 + t/a)^x; a nonzero",
        reference: Reference::Exponential,
        build: build_poisson_charlier,
    },
    FamilyInfo {
        name: "peters",
        title: "Peters polynomials s_n(x; lambda, mu)",
        params: &[p("lambda", "1"), p("mu", "1")],
        g_text: "(1+exp(lambda*t))^mu",
        f_text: "exp(t)-1",
        normalization: Normalization::Unit,
        notes: "(1 + (1+t)^lambda)^(-mu) (1+t)^x; mu an integer",
        reference: Reference::Exponential,
        build: build_peters,
    },
    FamilyInfo {
        name: "bernoulli-second-kind",
        title: "Bernoulli polynomials of the second kind b_n",
        params: &[],
        g_text: "t/(exp(t)-1)",
        f_text: "exp(t)-1",
        normalization: Normalization::Unit,
        notes: "t / log(1+t) (1+t)^x",
        reference: Reference::Exponential,
        build: build_bernoulli2,
    },
    FamilyInfo {
        name: "related",
        title: "related polynomials r_n",
        params: &[],
        g_text: "(1+exp(t))/2",
        f_text: "exp(t)-1",
        normalization: Normalization::Unit,
        notes: "2/(2+t) (1+t)^x",
        reference: Reference::Exponential,
        build: build_related,
    },
    FamilyInfo {
        name: "hahn",
        title: "Hahn polynomials R_n",
        params: &[],
        g_text: "1/cos(t)",
        f_text: "sin(t)/cos(t)",
        normalization: Normalization::Unit,
        notes: "(1+t^2)^(-1/2) exp(x arctan t)",
        reference: Reference::Exponential,
        build: build_hahn,
    },
    FamilyInfo {
        name: "shively",
        title: "Shively pseudo-Laguerre polynomials R_n(a, x)",
        params: &[p("a", "1")],
        g_text: "(1+t)/(1-t)^a",
        f_text: "1/4-1/4*((1+t)/(1-t))^2",
        normalization: Normalization::Unit,
        notes: "classical reference sequence c_n = 1",
        reference: Reference::Classical,
        build: build_shively,
    },
    FamilyInfo {
        name: "jacobi-case",
        title: "polynomials of the Jacobi case J_n",
        params: &[p("alpha", "0"), p("beta", "0")],
        g_text: "(2/(1+sqrt(1+2*t)))^(1+alpha+beta)",
        f_text: "t/(1+t+sqrt(1+2*t))",
        normalization: Normalization::Unit,
        notes: "classical reference sequence c_n = 1",
        reference: Reference::Classical,
        build: build_jacobi,
    },
    FamilyInfo {
        name: "chebyshev-case",
        title: "polynomials of the Chebyshev case t_n",
        params: &[],
        g_text: "1/sqrt(1-t^2)",
        f_text: "(-t)/(1+sqrt(1-t^2))",
        normalization: Normalization::AlternatingSign,
        notes: "(1-t^2)/(1-2xt+t^2) = sum t_n t^n; classical reference sequence",
        reference: Reference::Classical,
        build: build_chebyshev,
    },
    FamilyInfo {
        name: "gegenbauer-case",
        title: "polynomials of the Gegenbauer case C(-lambda, n) s_n",
        params: &[p("lambda", "1"), p("lambda0", "1")],
        g_text: "(2/(1+sqrt(1-t^2)))^lambda0",
        f_text: "(-t)/(1+sqrt(1-t^2))",
        normalization: Normalization::DivideByReference,
        notes: "c_n = 1/C(-lambda, n); lambda0 = lambda gives the Gegenbauer polynomials",
        reference: Reference::NegBinomialLambda,
        build: build_gegenbauer,
    },
    FamilyInfo {
        name: "falling-factorial",
        title: "falling factorials (x/a)_n",
        params: &[p("a", "1")],
        g_text: "1",
        f_text: "exp(a*t)-1",
        normalization: Normalization::Unit,
        notes: "associated sequence; a nonzero",
        reference: Reference::Exponential,
        build: build_falling_factorial,
    },
    FamilyInfo {
        name: "exponential",
        title: "exponential (Touchard) polynomials phi_n",
        params: &[],
        g_text: "1",
        f_text: "log(1+t)",
        normalization: Normalization::Unit,
        notes: "associated sequence; coefficients are Stirling numbers of the second kind",
        reference: Reference::Exponential,
        build: build_exponential,
    },
];

pub fn families() -> &'static [FamilyInfo] {
    FAMILIES
}

pub fn family_info(name: &str) -> Result<&'static FamilyInfo> {
    FAMILIES
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFamily(name.to_string()))
}

/// A catalog family instantiated with parameters at a truncation order.
#[derive(Clone, Debug)]
pub struct FamilyDescriptor {
    pub info: &'static FamilyInfo,
    pub params: Bindings,
    pub pair: ShefferPair,
}

impl FamilyDescriptor {
    pub fn name(&self) -> &'static str {
        self.info.name
    }

    pub fn normalization(&self) -> Normalization {
        self.info.normalization
    }

    /// `catalog_n / s_n`.
    pub fn normalization_factor(&self, n: usize) -> Result<Rational> {
        self.info.normalization.factor(n, self.pair.reference())
    }

    /// Evaluates the textual `g` and `f` with the descriptor's parameters.
    pub fn parsed_pair(&self, order: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
        let g = parse_and_evaluate(self.info.g_text, &self.params, order)?;
        let f = parse_and_evaluate(self.info.f_text, &self.params, order)?;
        Ok((g, f))
    }

    /// The same pair with `c_n = n!`, the frame in which the derivative
    /// operators act.
    pub fn exponential_pair(&self) -> ShefferPair {
        self.pair.with_reference(ReferenceSequence::Exponential)
    }
}

fn resolve_params(info: &FamilyInfo, given: &Bindings) -> Result<Bindings> {
    if let Some(unknown) = given
        .keys()
        .find(|k| !info.params.iter().any(|p| p.name == k.as_str()))
    {
        return Err(Error::InvalidParameter(format!(
            "family `{}` has no parameter `{unknown}`",
            info.name
        )));
    }
    let mut out = Bindings::new();
    for spec in info.params {
        let value = match given.get(spec.name) {
            Some(v) => v.clone(),
            None => parse_rational(spec.default).expect("catalog defaults are valid rationals"),
        };
        out.insert(spec.name.to_string(), value);
    }
    Ok(out)
}

/// Instantiates `name` at truncation order `order`.
pub fn catalog(name: &str, params: &Bindings, order: usize) -> Result<FamilyDescriptor> {
    let info = family_info(name)?;
    let params = resolve_params(info, params)?;
    let (g, f) = (info.build)(&params, order)?;
    let c = match info.reference {
        Reference::Exponential => ReferenceSequence::Exponential,
        Reference::Classical => ReferenceSequence::Classical,
        Reference::NegBinomialLambda => {
            let lambda = param(&params, "lambda");
            let c = ReferenceSequence::InverseBinomial(-lambda.clone());
            if let Some(n) = (0..=order).find(|&n| c.value(n).is_err()) {
                return Err(Error::InvalidParameter(format!(
                    "lambda = {lambda} makes c_{n} = 1/C(-lambda, {n}) undefined"
                )));
            }
            c
        }
    };
    let pair = ShefferPair::new(g, f, c).map_err(|e| {
        Error::InvalidParameter(format!(
            "family `{name}` with these parameters is not a Sheffer pair: {e}"
        ))
    })?;
    Ok(FamilyDescriptor { info, params, pair })
}

fn param(params: &Bindings, name: &str) -> Rational {
    params[name].clone()
}

fn one_minus_t(order: usize) -> FormalPowerSeries {
    FormalPowerSeries::new(vec![int(1), int(-1)], order)
}

fn expm1(order: usize) -> FormalPowerSeries {
    &FormalPowerSeries::t(order)
        .exp()
        .expect("t has zero constant term")
        - &FormalPowerSeries::one(order)
}

fn nonzero(params: &Bindings, name: &str) -> Result<Rational> {
    let v = param(params, name);
    if v.is_zero() {
        return Err(Error::InvalidParameter(format!("{name} must be nonzero")));
    }
    Ok(v)
}

/// `1 - sqrt(1 - t^2)` divided by `t`, i.e. `t/2 + t^3/8 + ...`.
fn half_chord(order: usize) -> Result<FormalPowerSeries> {
    let w = order + 1;
    let root = FormalPowerSeries::new(vec![int(1), int(0), int(-1)], w).sqrt()?;
    (&FormalPowerSeries::one(w) - &root).shift_down(1)
}

fn build_hermite(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let g = FormalPowerSeries::monomial(frac(1, 4), 2, n).exp()?;
    Ok((g, FormalPowerSeries::monomial(frac(1, 2), 1, n)))
}

fn build_generalized_hermite(
    params: &Bindings,
    n: usize,
) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let m = param(params, "m");
    let m = to_i64(&m)
        .filter(|&m| m >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("m = {m} must be a positive integer")))?
        as usize;
    let nu = nonzero(params, "nu")?;
    let inv = nu.recip();
    let g = FormalPowerSeries::monomial(pow(&inv, m), m, n).exp()?;
    Ok((g, FormalPowerSeries::monomial(inv, 1, n)))
}

fn build_laguerre(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let alpha = param(params, "alpha");
    let g = one_minus_t(n).pow(&(-alpha - int(1)))?;
    let f = FormalPowerSeries::from_fn(n, |k| if k == 0 { int(0) } else { int(-1) });
    Ok((g, f))
}

fn build_pidduck(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let e = FormalPowerSeries::t(n).exp()?;
    let one = FormalPowerSeries::one(n);
    let inv = (&e + &one).mul_inverse()?;
    Ok((inv.scale(&int(2)), &(&e - &one) * &inv))
}

fn build_actuarial(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let beta = param(params, "beta");
    Ok((one_minus_t(n).pow(&-beta)?, one_minus_t(n).log()?))
}

fn build_poisson_charlier(
    params: &Bindings,
    n: usize,
) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let a = nonzero(params, "a")?;
    let f = expm1(n).scale(&a);
    Ok((f.exp()?, f))
}

fn build_peters(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let lambda = param(params, "lambda");
    let mu = param(params, "mu");
    if !is_integer(&mu) {
        return Err(Error::InvalidParameter(format!(
            "mu = {mu} must be an integer (the constant term 2^mu has to be rational)"
        )));
    }
    let mu = to_i64(&mu).ok_or_else(|| Error::InvalidParameter("mu is too large".into()))?;
    let base = &FormalPowerSeries::one(n) + &FormalPowerSeries::monomial(lambda, 1, n).exp()?;
    Ok((base.powi(mu)?, expm1(n)))
}

fn build_bernoulli2(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let quotient = expm1(n + 1).shift_down(1)?;
    Ok((quotient.mul_inverse()?, expm1(n)))
}

fn build_related(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let e = FormalPowerSeries::t(n).exp()?;
    let g = (&FormalPowerSeries::one(n) + &e).scale(&frac(1, 2));
    Ok((g, expm1(n)))
}

fn build_hahn(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let t = FormalPowerSeries::t(n);
    let sec = t.cos()?.mul_inverse()?;
    let tan = &t.sin()? * &sec;
    Ok((sec, tan))
}

fn build_shively(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let a = param(params, "a");
    let one_plus_t = FormalPowerSeries::new(vec![int(1), int(1)], n);
    let g = &one_plus_t * &one_minus_t(n).pow(&-a)?;
    let ratio = &one_plus_t * &one_minus_t(n).mul_inverse()?;
    let f = (&FormalPowerSeries::one(n) - &ratio.pow_usize(2)).scale(&frac(1, 4));
    Ok((g, f))
}

fn build_jacobi(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let k = int(1) + param(params, "alpha") + param(params, "beta");
    let root = FormalPowerSeries::new(vec![int(1), int(2)], n).sqrt()?;
    let one = FormalPowerSeries::one(n);
    let half_sum = (&one + &root).scale(&frac(1, 2));
    let g = half_sum.pow(&-k)?;
    let t = FormalPowerSeries::t(n);
    let f = &t * &(&(&one + &t) + &root).mul_inverse()?;
    Ok((g, f))
}

fn build_chebyshev(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let g = FormalPowerSeries::new(vec![int(1), int(0), int(-1)], n).pow(&frac(-1, 2))?;
    Ok((g, -&half_chord(n)?))
}

fn build_gegenbauer(params: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let lambda0 = param(params, "lambda0");
    let root = FormalPowerSeries::new(vec![int(1), int(0), int(-1)], n).sqrt()?;
    let half_sum = (&FormalPowerSeries::one(n) + &root).scale(&frac(1, 2));
    Ok((half_sum.pow(&-lambda0)?, -&half_chord(n)?))
}

fn build_falling_factorial(
    params: &Bindings,
    n: usize,
) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let a = nonzero(params, "a")?;
    let f = &FormalPowerSeries::monomial(a, 1, n).exp()? - &FormalPowerSeries::one(n);
    Ok((FormalPowerSeries::one(n), f))
}

fn build_exponential(_: &Bindings, n: usize) -> Result<(FormalPowerSeries, FormalPowerSeries)> {
    let f = FormalPowerSeries::new(vec![int(1), int(1)], n).log()?;
    Ok((FormalPowerSeries::one(n), f))
}

fn check_stirling_index(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!(
            "Stirling number ({n}, {k}) needs k <= n"
        )));
    }
    Ok(())
}

/// Signed Stirling numbers of the first kind by `s(n+1, k) = s(n, k-1) - n s(n, k)`.
pub fn stirling_first_triangle(size: usize) -> Triangle {
    let mut rows: Vec<Vec<Rational>> = vec![vec![int(1)]];
    for n in 0..size {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    Rational::zero()
                };
                let right = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                left - right * int(n as i64)
            })
            .collect();
        rows.push(row);
    }
    Triangle::from_fn(size, |n, k| rows[n][k].clone())
}

/// Stirling numbers of the second kind by `S(n+1, k) = S(n, k-1) + k S(n, k)`.
pub fn stirling_second_triangle(size: usize) -> Triangle {
    let mut rows: Vec<Vec<Rational>> = vec![vec![int(1)]];
    for n in 0..size {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let left = if k >= 1 {
                    prev[k - 1].clone()
                } else {
                    Rational::zero()
                };
                let right = prev.get(k).cloned().unwrap_or_else(Rational::zero);
                left + right * int(k as i64)
            })
            .collect();
        rows.push(row);
    }
    Triangle::from_fn(size, |n, k| rows[n][k].clone())
}

pub fn stirling_first(n: usize, k: usize) -> Result<Rational> {
    check_stirling_index(n, k)?;
    Ok(stirling_first_triangle(n).get(n, k))
}

/// `S(n, k) = (1/k!) sum_j (-1)^(k-j) C(k, j) j^n`.
pub fn stirling_second(n: usize, k: usize) -> Result<Rational> {
    check_stirling_index(n, k)?;
    let mut acc = Rational::zero();
    for j in 0..=k {
        let term = binomial(&int(k as i64), j) * pow(&int(j as i64), n);
        if (k - j) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc / factorial(k))
}

/// Self-iterate of a catalog family.
pub fn iterate_family(
    name: &str,
    params: &Bindings,
    mode: Mode,
    order: CompositionOrder,
    size: usize,
) -> Result<PolynomialSequence> {
    let d = catalog(name, params, size)?;
    let spec = IteratedSpec::square(d.pair, d.info.normalization).with_order(order);
    iterated_sequence(&spec, mode, size)
}

/// The Gegenbauer-case descriptor and its array.
pub fn gegenbauer_case(
    lambda: &Rational,
    lambda0: &Rational,
    size: usize,
) -> Result<(FamilyDescriptor, RiordanArray)> {
    let mut params = Bindings::new();
    params.insert("lambda".into(), lambda.clone());
    params.insert("lambda0".into(), lambda0.clone());
    let d = catalog("gegenbauer-case", &params, size)?;
    let array = RiordanArray::build(d.pair.g(), d.pair.f(), d.pair.reference(), size)?;
    Ok((d, array))
}

/// Entries `(n, k)` with `n - k` odd that do not vanish.
pub fn parity_violations(array: &RiordanArray) -> Vec<(usize, usize)> {
    let size = array.size();
    (0..=size)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .filter(|&(n, k)| (n - k) % 2 == 1 && !array.get(n, k).is_zero())
        .collect()
}

/// Self-iterated Gegenbauer case compared with the closed form
/// `((1+t^2)/(1+6t^2+t^4))^lambda0 eps(4xt(1+t^2)/(1+6t^2+t^4))`.
#[derive(Clone, Debug)]
pub struct GegenbauerIterateReport {
    pub sequence: PolynomialSequence,
    /// Agreement with the reference sequence of the family.
    pub agrees_in_family_frame: bool,
    /// Agreement after switching both sides to `c_n = n!`.
    pub agrees_in_exponential_frame: bool,
}

pub const GEGENBAUER_ITERATE_H: &str = "((1+t^2)/(1+6*t^2+t^4))^lambda0";
pub const GEGENBAUER_ITERATE_K: &str = "4*t*(1+t^2)/(1+6*t^2+t^4)";

pub fn gegenbauer_2ipogc(
    lambda: &Rational,
    lambda0: &Rational,
    size: usize,
) -> Result<GegenbauerIterateReport> {
    let (d, _) = gegenbauer_case(lambda, lambda0, size)?;
    let h = parse_and_evaluate(GEGENBAUER_ITERATE_H, &d.params, size)?;
    let k = parse_and_evaluate(GEGENBAUER_ITERATE_K, &d.params, size)?;
    let compare = |pair: ShefferPair| -> Result<(PolynomialSequence, bool)> {
        let c = pair.reference().clone();
        let seq = gf_2isp(&IteratedSpec::square(pair, Normalization::Unit), size)?;
        let closed = expand_columns(&h, &k, &c, size)?;
        Ok((seq.clone(), seq.coefficient_triangle() == closed))
    };
    let (sequence, agrees_in_family_frame) = compare(d.pair.clone())?;
    let (_, agrees_in_exponential_frame) = compare(d.exponential_pair())?;
    Ok(GegenbauerIterateReport {
        sequence,
        agrees_in_family_frame,
        agrees_in_exponential_frame,
    })
}

/// Stated raising operator of the self-iterated Laguerre sequence:
/// `x - (alpha+1)(D-1)^3 - (alpha+1)/(D-1)`.
pub const LAGUERRE_ITERATE_RAISING_B: &str = "-(alpha+1)*(t-1)^3-(alpha+1)/(t-1)";

/// Compares the stated Laguerre-iterate raising operator with the derived
/// one and with the outer-factor reading of the general formula.
pub fn laguerre_operator_audit(alpha: &Rational, size: usize) -> Result<Vec<OperatorAudit>> {
    let mut params = Bindings::new();
    params.insert("alpha".into(), alpha.clone());
    let d = catalog("laguerre", &params, size + 1)?;
    let spec = IteratedSpec::square(d.pair, Normalization::Unit);
    let seq = gf_2isp(&spec, size)?;
    let derived = raising_2isp(&spec)?;
    let outer_factor = raising_2isp_outer_factor(&spec)?;
    let b = parse_and_evaluate(LAGUERRE_ITERATE_RAISING_B, &params, derived.order())?;
    let stated = DiffOperator::new(FormalPowerSeries::one(derived.order()), b);
    Ok(vec![
        OperatorAudit::new("derived vs stated", derived, stated.clone(), &seq)?,
        OperatorAudit::new("outer-factor reading vs stated", outer_factor, stated, &seq)?,
    ])
}
