//! 2-iterated Sheffer sequences.
//!
//! Two conventions for which pair acts first are kept side by side:
//!
//! * [`CompositionOrder::Gf21`]: the sequence whose generating function is
//!   `1/g1(fbar1) * 1/g2(fbar2(fbar1)) * eps_c(x fbar2(fbar1))`. It is the
//!   Sheffer sequence of `(g2 * g1(f2), f1(f2))`, and its coefficient matrix
//!   is `B1 * B2` (coefficient matrices of the single sequences).
//! * [`CompositionOrder::Theorem22`]: the Sheffer sequence of
//!   `(g1 * g2(f1), f2(f1))`, i.e. the same construction with the pairs
//!   swapped.
//!
//! In both, the coefficients of the "outer" pair are applied umbrally to the
//! polynomials of the "inner" pair. The orders coincide when the two pairs are
//! equal.

use std::fmt;

use num_traits::{One, Zero};

use crate::determinantal::{
    associated_solve, bordered_solve, sequence_by_det, AssociatedPrefactor,
};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
use crate::rational::Rational;
use crate::riordan::{inverse_pair, RiordanArray, Triangle};
use crate::sheffer::{
    functional_pair, sequence_from_array, sequence_from_gf, Normalization, PolynomialSequence,
    Route, ShefferPair,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CompositionOrder {
    Gf21,
    Theorem22,
}

impl CompositionOrder {
    pub const ALL: [CompositionOrder; 2] = [CompositionOrder::Gf21, CompositionOrder::Theorem22];

    pub fn name(self) -> &'static str {
        match self {
            CompositionOrder::Gf21 => "gf21",
            CompositionOrder::Theorem22 => "theorem22",
        }
    }
}

/// How an iterated sequence is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Gf,
    UmbralRiordan,
    UmbralLiteral,
    Determinantal,
    Conjugate,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Gf => "gf",
            Mode::UmbralRiordan => "umbral-riordan",
            Mode::UmbralLiteral => "umbral-literal",
            Mode::Determinantal => "det",
            Mode::Conjugate => "conjugate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedSpec {
    pair1: ShefferPair,
    pair2: ShefferPair,
    order: CompositionOrder,
    norm1: Normalization,
    norm2: Normalization,
}

struct Roles<'a> {
    outer: &'a ShefferPair,
    outer_norm: Normalization,
    inner: &'a ShefferPair,
    inner_norm: Normalization,
}

impl IteratedSpec {
    pub fn new(pair1: ShefferPair, pair2: ShefferPair, order: CompositionOrder) -> Result<Self> {
        if pair1.reference() != pair2.reference() {
            return Err(Error::MixedReferenceSequence);
        }
        Ok(Self {
            pair1,
            pair2,
            order,
            norm1: Normalization::Unit,
            norm2: Normalization::Unit,
        })
    }

    /// Both pairs equal.
    pub fn square(pair: ShefferPair, normalization: Normalization) -> Self {
        Self {
            pair1: pair.clone(),
            pair2: pair,
            order: CompositionOrder::Gf21,
            norm1: normalization,
            norm2: normalization,
        }
    }

    pub fn with_normalizations(mut self, norm1: Normalization, norm2: Normalization) -> Self {
        self.norm1 = norm1;
        self.norm2 = norm2;
        self
    }

    pub fn with_order(&self, order: CompositionOrder) -> Self {
        Self {
            order,
            ..self.clone()
        }
    }

    pub fn pair1(&self) -> &ShefferPair {
        &self.pair1
    }

    pub fn pair2(&self) -> &ShefferPair {
        &self.pair2
    }

    pub fn order(&self) -> CompositionOrder {
        self.order
    }

    pub fn reference(&self) -> &ReferenceSequence {
        self.pair1.reference()
    }

    pub fn size_limit(&self) -> usize {
        self.pair1.order().min(self.pair2.order())
    }

    fn roles(&self) -> Roles<'_> {
        match self.order {
            CompositionOrder::Gf21 => Roles {
                outer: &self.pair1,
                outer_norm: self.norm1,
                inner: &self.pair2,
                inner_norm: self.norm2,
            },
            CompositionOrder::Theorem22 => Roles {
                outer: &self.pair2,
                outer_norm: self.norm2,
                inner: &self.pair1,
                inner_norm: self.norm1,
            },
        }
    }

    /// The pair whose coefficients are applied umbrally.
    pub fn outer(&self) -> &ShefferPair {
        self.roles().outer
    }

    /// The pair whose polynomials are substituted for the powers of `x`.
    pub fn inner(&self) -> &ShefferPair {
        self.roles().inner
    }

    /// The Sheffer pair of the iterated sequence in this order.
    pub fn composite(&self) -> Result<ShefferPair> {
        let r = self.roles();
        compose_pairs(r.outer, r.inner)
    }

    pub fn is_associated(&self) -> bool {
        self.pair1.is_associated() && self.pair2.is_associated()
    }
}

/// `(g_i * g_o(f_i), f_o(f_i))`.
fn compose_pairs(outer: &ShefferPair, inner: &ShefferPair) -> Result<ShefferPair> {
    if outer.reference() != inner.reference() {
        return Err(Error::MixedReferenceSequence);
    }
    let g = inner.g() * &outer.g().compose(inner.f())?;
    let f = outer.f().compose(inner.f())?;
    ShefferPair::new(g, f, outer.reference().clone())
}

/// `(g1 * g2(f1), f2(f1))`.
pub fn composed_pair(pair1: &ShefferPair, pair2: &ShefferPair) -> Result<ShefferPair> {
    compose_pairs(pair2, pair1)
}

/// The composed pair for either order; `Gf21` gives `(g2 * g1(f2), f1(f2))`.
pub fn composed_pair_in(
    order: CompositionOrder,
    pair1: &ShefferPair,
    pair2: &ShefferPair,
) -> Result<ShefferPair> {
    match order {
        CompositionOrder::Gf21 => compose_pairs(pair1, pair2),
        CompositionOrder::Theorem22 => compose_pairs(pair2, pair1),
    }
}

fn require(spec: &IteratedSpec, size: usize) -> Result<()> {
    let available = spec.size_limit();
    if size > available {
        return Err(Error::TruncationTooShort {
            requested: size,
            available,
        });
    }
    Ok(())
}

/// Coefficient triangle of `H(t) eps_c(x K(t)) = sum_n s_n(x) t^n / c_n`.
pub fn expand_columns(
    h: &FormalPowerSeries,
    k: &FormalPowerSeries,
    c: &ReferenceSequence,
    size: usize,
) -> Result<Triangle> {
    let cs = c.values(size)?;
    let mut column = h.truncate(size);
    let k = k.truncate(size);
    let mut rows = vec![vec![Rational::zero(); size + 1]; size + 1];
    for j in 0..=size {
        for (n, row) in rows.iter_mut().enumerate().skip(j) {
            row[j] = &cs[n] * column.coeff(n) / &cs[j];
        }
        column = &column * &k;
    }
    Ok(Triangle::from_fn(size, |n, j| rows[n][j].clone()))
}

/// Expands `1/g_o(fbar_o) * 1/g_i(fbar_i(fbar_o)) * eps_c(x fbar_i(fbar_o))`.
pub fn gf_2isp(spec: &IteratedSpec, size: usize) -> Result<PolynomialSequence> {
    require(spec, size)?;
    let r = spec.roles();
    let (h_outer, fbar_outer) =
        inverse_pair(&r.outer.g().truncate(size), &r.outer.f().truncate(size))?;
    let fbar_inner = r.inner.f().truncate(size).comp_inverse()?;
    let k = fbar_inner.compose(&fbar_outer)?;
    let h = &h_outer * &r.inner.g().truncate(size).compose(&k)?.mul_inverse()?;
    let coeffs = expand_columns(&h, &k, spec.reference(), size)?;
    PolynomialSequence::from_triangle(&coeffs, Route::GeneratingFunction, spec.composite().ok())
}

/// Iterated associated sequence of `(1, f1)` and `(1, f2)` in the `Gf21`
/// order: `eps_c(x fbar2(fbar1(t)))`.
pub fn gf_2iasp(
    f1: &FormalPowerSeries,
    f2: &FormalPowerSeries,
    c: &ReferenceSequence,
    size: usize,
) -> Result<PolynomialSequence> {
    let spec = IteratedSpec::new(
        ShefferPair::associated(f1.clone(), c.clone())?,
        ShefferPair::associated(f2.clone(), c.clone())?,
        CompositionOrder::Gf21,
    )?;
    gf_2isp(&spec, size)
}

/// `result_n = sum_k d[n][k] inner_k`.
pub fn compose_umbral(outer: &Triangle, inner: &PolynomialSequence) -> Result<PolynomialSequence> {
    let size = outer.size();
    if inner.size() < size {
        return Err(Error::ShapeMismatch(format!(
            "outer coefficients have {} rows but only {} inner polynomials are given",
            size + 1,
            inner.size() + 1
        )));
    }
    if let Some(n) = (0..=size).find(|&n| outer.get(n, n).is_zero()) {
        return Err(Error::ShapeMismatch(format!(
            "outer coefficient d[{n}][{n}] vanishes"
        )));
    }
    let polys = (0..=size)
        .map(|n| {
            (0..=n).fold(Polynomial::zero(), |acc, k| {
                let d = outer.get(n, k);
                if d.is_zero() {
                    acc
                } else {
                    &acc + &inner.get(k).scale(&d)
                }
            })
        })
        .collect();
    PolynomialSequence::new(polys, Route::Supplied, None)
}

/// Coefficients of the outer Sheffer sequence applied to the inner Sheffer
/// sequence.
pub fn umbral_riordan(spec: &IteratedSpec, size: usize) -> Result<PolynomialSequence> {
    require(spec, size)?;
    let r = spec.roles();
    let outer = sequence_from_array(r.outer, size)?.coefficient_triangle();
    let inner = sequence_from_gf(r.inner, size)?;
    Ok(compose_umbral(&outer, &inner)?.with_route(Route::UmbralRiordan))
}

/// Coefficients of the catalog-normalized outer polynomials applied to the
/// catalog-normalized inner polynomials.
pub fn umbral_literal(spec: &IteratedSpec, size: usize) -> Result<PolynomialSequence> {
    require(spec, size)?;
    let r = spec.roles();
    let c = spec.reference();
    let outer = sequence_from_array(r.outer, size)?
        .normalized(r.outer_norm, c)?
        .coefficient_triangle();
    let inner = sequence_from_gf(r.inner, size)?.normalized(r.inner_norm, c)?;
    Ok(compose_umbral(&outer, &inner)?.with_route(Route::UmbralLiteral))
}

/// Bordered determinants with the outer array and the inner sequence as the
/// top row.
pub fn determinantal(spec: &IteratedSpec, size: usize) -> Result<PolynomialSequence> {
    require(spec, size)?;
    let r = spec.roles();
    let array = RiordanArray::build(r.outer.g(), r.outer.f(), spec.reference(), size)?;
    let inner = sequence_from_gf(r.inner, size)?;
    sequence_by_det(&array, inner.polys(), size)
}

/// `d[n][k] = <H K^k | x^n> / c_k` with `K` the compositional inverse of the
/// composed `f` and `H = 1 / G(K)`, composed with the monomial basis.
pub fn conjugate_representation(spec: &IteratedSpec, size: usize) -> Result<PolynomialSequence> {
    require(spec, size)?;
    let composite = spec.composite()?;
    let c = spec.reference();
    let f = composite.f().truncate(size);
    let k = f.comp_inverse()?;
    let h = composite.g().truncate(size).compose(&k)?.mul_inverse()?;
    let cs = c.values(size)?;
    let mut column = h;
    let mut d = vec![vec![Rational::zero(); size + 1]; size + 1];
    for j in 0..=size {
        for (n, row) in d.iter_mut().enumerate().skip(j) {
            let xn = Polynomial::monomial(Rational::one(), n);
            row[j] = functional_pair(&column, &xn, c)? / &cs[j];
        }
        column = &column * &k;
    }
    let d = Triangle::from_fn(size, |n, j| d[n][j].clone());
    Ok(compose_umbral(&d, &PolynomialSequence::monomials(size))?.with_route(Route::Conjugate))
}

/// Dispatches on `mode`.
pub fn iterated_sequence(
    spec: &IteratedSpec,
    mode: Mode,
    size: usize,
) -> Result<PolynomialSequence> {
    match mode {
        Mode::Gf => gf_2isp(spec, size),
        Mode::UmbralRiordan => umbral_riordan(spec, size),
        Mode::UmbralLiteral => umbral_literal(spec, size),
        Mode::Determinantal => determinantal(spec, size),
        Mode::Conjugate => conjugate_representation(spec, size),
    }
}

/// Routes audited by [`consistency_report`]. The last two are diagnostics of
/// alternative readings and are not expected to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuditRoute {
    Mode(Mode),
    /// Composed-pair array bordered by the inner sequence.
    DetComposite,
    /// Associated determinant with the unexpanded `(-1)^n / (a_00 ... a_nn)`
    /// prefactor.
    DetUnexpandedPrefactor,
}

impl AuditRoute {
    pub fn name(self) -> &'static str {
        match self {
            AuditRoute::Mode(m) => m.name(),
            AuditRoute::DetComposite => "det-composite",
            AuditRoute::DetUnexpandedPrefactor => "det-unexpanded-prefactor",
        }
    }

    pub fn is_diagnostic(self) -> bool {
        !matches!(
            self,
            AuditRoute::Mode(
                Mode::Gf | Mode::UmbralRiordan | Mode::Determinantal | Mode::Conjugate
            )
        )
    }
}

/// First position where two sequences differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub n: usize,
    pub degree: usize,
    pub left: Rational,
    pub right: Rational,
}

pub fn first_difference(a: &PolynomialSequence, b: &PolynomialSequence) -> Option<Difference> {
    let size = a.size().min(b.size());
    (0..=size).find_map(|n| {
        a.get(n)
            .first_difference(b.get(n))
            .map(|(degree, left, right)| Difference {
                n,
                degree,
                left,
                right,
            })
    })
}

#[derive(Clone, Debug)]
pub struct RouteOutcome {
    pub order: CompositionOrder,
    pub route: AuditRoute,
    pub result: std::result::Result<PolynomialSequence, Error>,
    /// Against the `gf` route of the same order; `None` when either failed.
    pub versus_gf: Option<Option<Difference>>,
}

impl RouteOutcome {
    pub fn agrees_with_gf(&self) -> bool {
        matches!(self.versus_gf, Some(None))
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub size: usize,
    pub outcomes: Vec<RouteOutcome>,
    /// `gf` route of `Gf21` against `gf` route of `Theorem22`.
    pub orders_agree: bool,
    /// For each order: does the Sheffer sequence of its composed pair equal
    /// the expansion of the `Gf21` generating function?
    pub order_detection: Vec<(CompositionOrder, bool)>,
}

impl ConsistencyReport {
    /// Every non-diagnostic route computed and matched `gf` in both orders.
    pub fn main_routes_agree(&self) -> bool {
        self.outcomes
            .iter()
            .filter(|o| !o.route.is_diagnostic())
            .all(RouteOutcome::agrees_with_gf)
    }

    pub fn outcome(&self, order: CompositionOrder, route: AuditRoute) -> Option<&RouteOutcome> {
        self.outcomes
            .iter()
            .find(|o| o.order == order && o.route == route)
    }

    /// Where the catalog-normalized composition departs from `gf`.
    pub fn literal_divergence(&self, order: CompositionOrder) -> Option<Difference> {
        self.outcome(order, AuditRoute::Mode(Mode::UmbralLiteral))
            .and_then(|o| o.versus_gf.clone())
            .flatten()
    }
}

impl fmt::Display for ConsistencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "consistency report, n <= {}", self.size)?;
        for o in &self.outcomes {
            let status = match (&o.result, &o.versus_gf) {
                (Err(e), _) => format!("error: {e}"),
                (Ok(_), Some(None)) => "agrees with gf".to_string(),
                (Ok(_), Some(Some(d))) => format!(
                    "differs from gf at n = {}, coefficient of x^{}: {} vs {}",
                    d.n, d.degree, d.left, d.right
                ),
                (Ok(_), None) => "gf unavailable".to_string(),
            };
            let tag = if o.route.is_diagnostic() {
                " (diagnostic)"
            } else {
                ""
            };
            writeln!(
                f,
                "  [{}] {}{}: {}",
                o.order.name(),
                o.route.name(),
                tag,
                status
            )?;
        }
        writeln!(
            f,
            "  gf21 and theorem22 generating functions {}",
            if self.orders_agree { "agree" } else { "differ" }
        )?;
        for (order, matches) in &self.order_detection {
            writeln!(
                f,
                "  composed pair of {} {} the gf21 generating function",
                order.name(),
                if *matches {
                    "reproduces"
                } else {
                    "does not reproduce"
                }
            )?;
        }
        Ok(())
    }
}

fn audit_route(spec: &IteratedSpec, route: AuditRoute, size: usize) -> Result<PolynomialSequence> {
    match route {
        AuditRoute::Mode(mode) => iterated_sequence(spec, mode, size),
        AuditRoute::DetComposite => {
            let composite = spec.composite()?;
            let array = RiordanArray::build(composite.g(), composite.f(), spec.reference(), size)?;
            let inner = sequence_from_gf(spec.inner(), size)?;
            let polys = (0..=size)
                .map(|n| bordered_solve(array.entries(), inner.polys(), n))
                .collect::<Result<Vec<_>>>()?;
            PolynomialSequence::new(polys, Route::Determinantal, None)
        }
        AuditRoute::DetUnexpandedPrefactor => {
            let outer = spec.outer();
            let array = RiordanArray::build(outer.g(), outer.f(), spec.reference(), size)?;
            let inner = sequence_from_gf(spec.inner(), size)?;
            let polys = (0..=size)
                .map(|n| {
                    associated_solve(
                        array.entries(),
                        inner.polys(),
                        n,
                        AssociatedPrefactor::Unexpanded,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            PolynomialSequence::new(polys, Route::Determinantal, None)
        }
    }
}

/// Evaluates every route in both orders and compares each against `gf`.
pub fn consistency_report(spec: &IteratedSpec, size: usize) -> ConsistencyReport {
    let mut routes = vec![
        AuditRoute::Mode(Mode::Gf),
        AuditRoute::Mode(Mode::UmbralRiordan),
        AuditRoute::Mode(Mode::Determinantal),
        AuditRoute::Mode(Mode::Conjugate),
        AuditRoute::Mode(Mode::UmbralLiteral),
        AuditRoute::DetComposite,
    ];
    if spec.is_associated() {
        routes.push(AuditRoute::DetUnexpandedPrefactor);
    }
    let mut outcomes = Vec::new();
    let mut gf_by_order = Vec::new();
    for order in CompositionOrder::ALL {
        let spec = spec.with_order(order);
        let gf = gf_2isp(&spec, size);
        for &route in &routes {
            let result = if route == AuditRoute::Mode(Mode::Gf) {
                gf.clone()
            } else {
                audit_route(&spec, route, size)
            };
            let versus_gf = match (&gf, &result) {
                (Ok(a), Ok(b)) => Some(first_difference(a, b)),
                _ => None,
            };
            outcomes.push(RouteOutcome {
                order,
                route,
                result,
                versus_gf,
            });
        }
        gf_by_order.push((order, gf));
    }
    let orders_agree = match (&gf_by_order[0].1, &gf_by_order[1].1) {
        (Ok(a), Ok(b)) => a.polys() == b.polys(),
        _ => false,
    };
    let order_detection = CompositionOrder::ALL
        .iter()
        .map(|&order| {
            let matches = match (
                &gf_by_order[0].1,
                composed_pair_in(order, &spec.pair1, &spec.pair2),
            ) {
                (Ok(gf), Ok(pair)) => {
                    sequence_from_gf(&pair, size).is_ok_and(|s| s.polys() == gf.polys())
                }
                _ => false,
            };
            (order, matches)
        })
        .collect();
    ConsistencyReport {
        size,
        outcomes,
        orders_agree,
        order_detection,
    }
}

/// True when `array` rows expand `top` in `seq`: `top_n = sum_k a[n][k] seq_k`.
pub fn expands(array: &Triangle, top: &[Polynomial], seq: &PolynomialSequence) -> bool {
    let size = array.size().min(seq.size());
    (0..=size).all(|n| {
        let sum = (0..=n).fold(Polynomial::zero(), |acc, k| {
            &acc + &seq.get(k).scale(&array.get(n, k))
        });
        top.get(n) == Some(&sum)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, frac, int};
    use crate::sheffer::sequence_from_gf;
    use proptest::prelude::*;

    const EXP: ReferenceSequence = ReferenceSequence::Exponential;

    fn log1p(order: usize) -> FormalPowerSeries {
        FormalPowerSeries::new(vec![int(1), int(1)], order)
            .log()
            .unwrap()
    }

    fn expm1(order: usize) -> FormalPowerSeries {
        &FormalPowerSeries::t(order).exp().unwrap() - &FormalPowerSeries::one(order)
    }

    fn laguerre(alpha: i64, order: usize) -> ShefferPair {
        let g = FormalPowerSeries::new(vec![int(1), int(-1)], order)
            .powi(-alpha - 1)
            .unwrap();
        let f = FormalPowerSeries::from_fn(order, |k| int(if k == 0 { 0 } else { -1 }));
        ShefferPair::new(g, f, EXP).unwrap()
    }

    fn iep(order: usize) -> IteratedSpec {
        IteratedSpec::square(
            ShefferPair::associated(log1p(order), EXP).unwrap(),
            Normalization::Unit,
        )
    }

    fn iff(order: usize) -> IteratedSpec {
        IteratedSpec::square(
            ShefferPair::associated(expm1(order), EXP).unwrap(),
            Normalization::Unit,
        )
    }

    #[test]
    fn table_values_for_associated_iterates() {
        let s = gf_2iasp(&expm1(4), &expm1(4), &EXP, 4).unwrap();
        assert_eq!(s.get(2), &Polynomial::from_ints(&[0, -2, 1]));
        assert_eq!(s.get(3), &Polynomial::from_ints(&[0, 7, -6, 1]));
        assert_eq!(s.get(4), &Polynomial::from_ints(&[0, -35, 40, -12, 1]));
        let s = gf_2iasp(&log1p(4), &log1p(4), &EXP, 4).unwrap();
        assert_eq!(s.get(3), &Polynomial::from_ints(&[0, 5, 6, 1]));
        assert_eq!(s.get(4), &Polynomial::from_ints(&[0, 15, 32, 12, 1]));
        let t = FormalPowerSeries::t(5);
        let s = gf_2iasp(&t, &t, &EXP, 5).unwrap();
        assert_eq!(s.polys(), PolynomialSequence::monomials(5).polys());
    }

    #[test]
    fn iep_gf_is_closed_form() {
        // exp(x (e^{e^t - 1} - 1)), brute-force column expansion
        let n = 7;
        let inner = expm1(n);
        let k = inner.compose(&inner).unwrap();
        let s = gf_2isp(&iep(n), n).unwrap();
        let mut power = FormalPowerSeries::one(n);
        for j in 0..=n {
            for m in j..=n {
                assert_eq!(
                    s.get(m).coeff(j),
                    power.coeff(m) * factorial(m) / factorial(j)
                );
            }
            power = &power * &k;
        }
    }

    #[test]
    fn all_routes_agree_for_associated_examples() {
        for spec in [iep(8), iff(8)] {
            let gf = gf_2isp(&spec, 8).unwrap();
            for mode in [
                Mode::UmbralRiordan,
                Mode::Determinantal,
                Mode::Conjugate,
                Mode::UmbralLiteral,
            ] {
                assert_eq!(
                    iterated_sequence(&spec, mode, 8).unwrap().polys(),
                    gf.polys(),
                    "{mode:?}"
                );
            }
            let report = consistency_report(&spec, 6);
            assert!(report.main_routes_agree(), "{report}");
            assert!(report.orders_agree);
            assert_eq!(report.literal_divergence(CompositionOrder::Gf21), None);
        }
    }

    #[test]
    fn laguerre_collapse_and_literal_split() {
        let spec = IteratedSpec::square(laguerre(0, 10), Normalization::DivideByReference);
        let gf = gf_2isp(&spec, 10).unwrap();
        assert_eq!(gf.polys(), PolynomialSequence::monomials(10).polys());
        let lit = umbral_literal(&spec, 4).unwrap();
        assert_eq!(
            lit.get(2),
            &Polynomial::new(vec![frac(-1, 2), int(1), frac(1, 4)])
        );
        let report = consistency_report(&spec, 6);
        assert!(report.main_routes_agree(), "{report}");
        let d = report.literal_divergence(CompositionOrder::Gf21).unwrap();
        assert_eq!(d.n, 2);
        // the printed composite-array determinant is not the iterate
        let dc = report
            .outcome(CompositionOrder::Gf21, AuditRoute::DetComposite)
            .unwrap();
        assert!(dc.result.is_ok());
    }

    #[test]
    fn composite_determinant_gives_third_iterate() {
        let spec = iep(4);
        let s = audit_route(&spec, AuditRoute::DetComposite, 2).unwrap();
        assert_eq!(s.get(2), &Polynomial::from_ints(&[0, 3, 1]));
    }

    #[test]
    fn unexpanded_prefactor_negates() {
        let spec = iff(5);
        let good = determinantal(&spec, 5).unwrap();
        let other = audit_route(&spec, AuditRoute::DetUnexpandedPrefactor, 5).unwrap();
        for n in 1..=5 {
            assert_eq!(other.get(n), &-good.get(n));
        }
    }

    #[test]
    fn composed_pairs() {
        let lag = laguerre(0, 8);
        let c = composed_pair(&lag, &lag).unwrap();
        assert_eq!(c.g(), &FormalPowerSeries::one(8));
        assert_eq!(c.f(), &FormalPowerSeries::t(8));
        let ff = ShefferPair::associated(expm1(8), EXP).unwrap();
        let c = composed_pair(&ff, &ff).unwrap();
        let oracle = &expm1(8).exp().unwrap() - &FormalPowerSeries::one(8);
        assert_eq!(c.f(), &oracle);
        let id = ShefferPair::new(FormalPowerSeries::one(8), FormalPowerSeries::t(8), EXP).unwrap();
        assert_eq!(composed_pair(&lag, &id).unwrap(), lag);
        let classical = ShefferPair::new(
            FormalPowerSeries::one(8),
            FormalPowerSeries::t(8),
            ReferenceSequence::Classical,
        )
        .unwrap();
        assert_eq!(
            composed_pair(&lag, &classical),
            Err(Error::MixedReferenceSequence)
        );
    }

    #[test]
    fn order_detection_with_distinct_pairs() {
        let lag = laguerre(0, 6);
        let ep = ShefferPair::associated(log1p(6), EXP).unwrap();
        let spec = IteratedSpec::new(lag.clone(), ep.clone(), CompositionOrder::Gf21).unwrap();
        let report = consistency_report(&spec, 6);
        assert!(report.main_routes_agree(), "{report}");
        assert!(!report.orders_agree);
        assert_eq!(
            report.order_detection,
            vec![
                (CompositionOrder::Gf21, true),
                (CompositionOrder::Theorem22, false)
            ]
        );
        // gf21 coefficient matrix is B1 * B2
        let b1 = sequence_from_gf(&lag, 6).unwrap().coefficient_triangle();
        let b2 = sequence_from_gf(&ep, 6).unwrap().coefficient_triangle();
        assert_eq!(
            gf_2isp(&spec, 6).unwrap().coefficient_triangle(),
            b1.matmul(&b2).unwrap()
        );
    }

    #[test]
    fn reconstruction_identities() {
        let spec = IteratedSpec::new(
            laguerre(3, 6),
            ShefferPair::associated(log1p(6), EXP).unwrap(),
            CompositionOrder::Gf21,
        )
        .unwrap();
        let s = gf_2isp(&spec, 6).unwrap();
        let outer = RiordanArray::build(spec.outer().g(), spec.outer().f(), &EXP, 6).unwrap();
        let inner = sequence_from_gf(spec.inner(), 6).unwrap();
        assert!(expands(outer.entries(), inner.polys(), &s));
        let comp = spec.composite().unwrap();
        let a = RiordanArray::build(comp.g(), comp.f(), &EXP, 6).unwrap();
        assert!(expands(
            a.entries(),
            PolynomialSequence::monomials(6).polys(),
            &s
        ));
    }

    #[test]
    fn compose_umbral_shapes() {
        let inner = sequence_from_gf(&laguerre(0, 4), 4).unwrap();
        let id = Triangle::identity(4);
        assert_eq!(compose_umbral(&id, &inner).unwrap().polys(), inner.polys());
        assert!(matches!(
            compose_umbral(&Triangle::identity(6), &inner),
            Err(Error::ShapeMismatch(_))
        ));
        let singular = Triangle::from_fn(2, |n, k| if n == 1 && k == 1 { int(0) } else { int(1) });
        assert!(matches!(
            compose_umbral(&singular, &inner),
            Err(Error::ShapeMismatch(_))
        ));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-3i64..=3, 1i64..=2).prop_map(|(p, q)| frac(p, q))
    }

    fn arb_pair(order: usize, associated: bool) -> impl Strategy<Value = ShefferPair> {
        (
            small().prop_filter("nonzero", |r| !r.is_zero()),
            proptest::collection::vec(small(), order),
            small().prop_filter("nonzero", |r| !r.is_zero()),
            proptest::collection::vec(small(), order - 1),
        )
            .prop_map(move |(g0, gs, f1, fs)| {
                let mut g = vec![g0];
                g.extend(gs);
                let mut f = vec![int(0), f1];
                f.extend(fs);
                let g = if associated {
                    FormalPowerSeries::one(order)
                } else {
                    FormalPowerSeries::new(g, order)
                };
                ShefferPair::new(g, FormalPowerSeries::new(f, order), EXP).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn random_pairs_all_routes(p1 in arb_pair(6, false), p2 in arb_pair(6, false)) {
            for order in CompositionOrder::ALL {
                let spec = IteratedSpec::new(p1.clone(), p2.clone(), order).unwrap();
                let gf = gf_2isp(&spec, 6).unwrap();
                for mode in [Mode::UmbralRiordan, Mode::Determinantal, Mode::Conjugate] {
                    prop_assert_eq!(iterated_sequence(&spec, mode, 6).unwrap().polys().to_vec(), gf.polys().to_vec());
                }
                let composite = sequence_from_gf(&spec.composite().unwrap(), 6).unwrap();
                prop_assert_eq!(composite.polys(), gf.polys());
            }
        }

        #[test]
        fn random_associated_pairs(p1 in arb_pair(8, true), p2 in arb_pair(8, true)) {
            let gf = gf_2iasp(p1.f(), p2.f(), &EXP, 8).unwrap();
            let spec = IteratedSpec::new(p1, p2, CompositionOrder::Gf21).unwrap();
            prop_assert_eq!(umbral_riordan(&spec, 8).unwrap().polys().to_vec(), gf.polys().to_vec());
            prop_assert_eq!(determinantal(&spec, 8).unwrap().polys().to_vec(), gf.polys().to_vec());
        }
    }
}
