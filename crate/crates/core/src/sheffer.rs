//! Sheffer pairs and their polynomial sequences.
//!
//! With the generalized exponential `eps_c(t) = sum t^n / c_n`, the Sheffer
//! sequence for `(g, f)` has generating function
//! `eps_c(x fbar(t)) / g(fbar(t)) = sum_n s_n(x) t^n / c_n`.
//! For `c_n = n!` this is the usual exponential generating function.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
use crate::rational::Rational;
use crate::riordan::{inverse_pair, RiordanArray, Triangle};

#[derive(Clone, PartialEq, Eq)]
pub struct ShefferPair {
    g: FormalPowerSeries,
    f: FormalPowerSeries,
    c: ReferenceSequence,
}

impl ShefferPair {
    pub fn new(g: FormalPowerSeries, f: FormalPowerSeries, c: ReferenceSequence) -> Result<Self> {
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if !f.is_delta() {
            return Err(Error::NotDelta);
        }
        Ok(Self { g, f, c })
    }

    /// The associated pair `(1, f)`.
    pub fn associated(f: FormalPowerSeries, c: ReferenceSequence) -> Result<Self> {
        Self::new(FormalPowerSeries::one(f.order()), f, c)
    }

    /// The Appell pair `(g, t)`.
    pub fn appell(g: FormalPowerSeries, c: ReferenceSequence) -> Result<Self> {
        let t = FormalPowerSeries::t(g.order());
        Self::new(g, t, c)
    }

    pub fn g(&self) -> &FormalPowerSeries {
        &self.g
    }

    pub fn f(&self) -> &FormalPowerSeries {
        &self.f
    }

    pub fn reference(&self) -> &ReferenceSequence {
        &self.c
    }

    /// Truncation order shared by both series.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    pub fn with_reference(&self, c: ReferenceSequence) -> Self {
        Self {
            g: self.g.clone(),
            f: self.f.clone(),
            c,
        }
    }

    pub fn is_associated(&self) -> bool {
        self.g == FormalPowerSeries::one(self.g.order())
    }

    fn require(&self, size: usize) -> Result<()> {
        if size > self.order() {
            return Err(Error::TruncationTooShort {
                requested: size,
                available: self.order(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for ShefferPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ShefferPair(g = {}, f = {}, c = {})",
            self.g,
            self.f,
            self.c.name()
        )
    }
}

/// How a polynomial sequence was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    GeneratingFunction,
    RiordanArray,
    Determinantal,
    ForwardSubstitution,
    UmbralRiordan,
    UmbralLiteral,
    Conjugate,
    Supplied,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::GeneratingFunction => "gf",
            Route::RiordanArray => "array",
            Route::Determinantal => "det",
            Route::ForwardSubstitution => "forward-substitution",
            Route::UmbralRiordan => "umbral-riordan",
            Route::UmbralLiteral => "umbral-literal",
            Route::Conjugate => "conjugate",
            Route::Supplied => "supplied",
        }
    }
}

/// Polynomials `s_0 ..= s_N` with `deg s_n = n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolynomialSequence {
    polys: Vec<Polynomial>,
    route: Route,
    pair: Option<ShefferPair>,
}

impl PolynomialSequence {
    pub fn new(polys: Vec<Polynomial>, route: Route, pair: Option<ShefferPair>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::ShapeMismatch("empty polynomial sequence".into()));
        }
        for (n, p) in polys.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::ShapeMismatch(format!(
                    "member {n} has degree {:?}, expected {n}",
                    p.degree()
                )));
            }
        }
        Ok(Self { polys, route, pair })
    }

    /// `x^0 ..= x^size`.
    pub fn monomials(size: usize) -> Self {
        Self {
            polys: (0..=size)
                .map(|k| Polynomial::monomial(Rational::one(), k))
                .collect(),
            route: Route::Supplied,
            pair: None,
        }
    }

    pub fn from_triangle(
        coeffs: &Triangle,
        route: Route,
        pair: Option<ShefferPair>,
    ) -> Result<Self> {
        let polys = coeffs
            .rows()
            .iter()
            .map(|row| Polynomial::new(row.clone()))
            .collect();
        Self::new(polys, route, pair)
    }

    pub fn size(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn pair(&self) -> Option<&ShefferPair> {
        self.pair.as_ref()
    }

    /// `b[n][k] = [x^k] s_n`.
    pub fn coefficient_triangle(&self) -> Triangle {
        Triangle::from_fn(self.size(), |n, k| self.polys[n].coeff(k))
    }

    pub fn truncate(&self, size: usize) -> Self {
        Self {
            polys: self.polys[..=size].to_vec(),
            route: self.route,
            pair: self.pair.clone(),
        }
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// Replaces member `n`, keeping the degree invariant.
    pub fn replace(&self, n: usize, p: Polynomial) -> Result<Self> {
        let mut polys = self.polys.clone();
        polys[n] = p;
        Self::new(polys, Route::Supplied, self.pair.clone())
    }

    /// Applies a normalization to every member.
    pub fn normalized(&self, normalization: Normalization, c: &ReferenceSequence) -> Result<Self> {
        let polys = self
            .polys
            .iter()
            .enumerate()
            .map(|(n, p)| Ok(p.scale(&normalization.factor(n, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(polys, self.route, self.pair.clone())
    }
}

impl fmt::Debug for PolynomialSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolynomialSequence via {}", self.route.name())?;
        for (n, p) in self.polys.iter().enumerate() {
            writeln!(f, "  s_{n}(x) = {p}")?;
        }
        Ok(())
    }
}

/// Relation between a catalog polynomial and the Sheffer-normalized member:
/// `catalog_n = factor(n) * s_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    Unit,
    /// `catalog_n = s_n / c_n`, e.g. `L_n = s_n / n!`.
    DivideByReference,
    /// `catalog_n = (-1)^n s_n`.
    AlternatingSign,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Unit => "unit",
            Normalization::DivideByReference => "divide-by-c_n",
            Normalization::AlternatingSign => "alternating-sign",
        }
    }

    pub fn factor(self, n: usize, c: &ReferenceSequence) -> Result<Rational> {
        match self {
            Normalization::Unit => Ok(Rational::one()),
            Normalization::DivideByReference => Ok(c.value(n)?.recip()),
            Normalization::AlternatingSign => Ok(if n % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }),
        }
    }
}

/// Expands the columns of `eps_c(x fbar) / g(fbar)`.
pub fn sequence_from_gf(pair: &ShefferPair, size: usize) -> Result<PolynomialSequence> {
    pair.require(size)?;
    let g = pair.g.truncate(size);
    let f = pair.f.truncate(size);
    let (h, fbar) = inverse_pair(&g, &f)?;
    let cs = pair.c.values(size)?;
    let mut coeffs = vec![vec![Rational::zero(); size + 1]; size + 1];
    let mut column = h;
    for k in 0..=size {
        let weight = cs[k].recip();
        for n in k..=size {
            coeffs[n][k] = &cs[n] * column.coeff(n) * &weight;
        }
        column = &column * &fbar;
    }
    let polys = coeffs.into_iter().map(Polynomial::new).collect();
    PolynomialSequence::new(polys, Route::GeneratingFunction, Some(pair.clone()))
}

/// Inverts the triangle of `(g, f)` by forward substitution; row `n` of the
/// inverse holds the coefficients of `s_n`.
pub fn sequence_from_array(pair: &ShefferPair, size: usize) -> Result<PolynomialSequence> {
    pair.require(size)?;
    let array = RiordanArray::build(&pair.g, &pair.f, &pair.c, size)?;
    let b = array.entries().inverse()?;
    PolynomialSequence::from_triangle(&b, Route::RiordanArray, Some(pair.clone()))
}

/// The array `a` with `x^n = sum_k a[n][k] s_k(x)`.
pub fn monomial_expansion(pair: &ShefferPair, size: usize) -> Result<RiordanArray> {
    pair.require(size)?;
    RiordanArray::build(&pair.g, &pair.f, &pair.c, size)
}

/// `<f | p>` with `<f | x^n> = c_n f_n`.
pub fn functional_pair(
    f: &FormalPowerSeries,
    p: &Polynomial,
    c: &ReferenceSequence,
) -> Result<Rational> {
    let Some(deg) = p.degree() else {
        return Ok(Rational::zero());
    };
    if deg > f.order() {
        return Err(Error::TruncationTooShort {
            requested: deg,
            available: f.order(),
        });
    }
    let mut acc = Rational::zero();
    for (n, pn) in p.coefficients().iter().enumerate() {
        if !pn.is_zero() && !f.coeff(n).is_zero() {
            acc += pn * c.value(n)? * f.coeff(n);
        }
    }
    Ok(acc)
}

/// `f(t) x^n = sum_k (c_n / c_{n-k}) f_k x^{n-k}`, extended linearly.
pub fn operator_action(
    f: &FormalPowerSeries,
    p: &Polynomial,
    c: &ReferenceSequence,
) -> Result<Polynomial> {
    let Some(deg) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    let cs = c.values(deg)?;
    let mut out = vec![Rational::zero(); deg + 1];
    for (n, pn) in p.coefficients().iter().enumerate() {
        if pn.is_zero() {
            continue;
        }
        for k in 0..=n.min(f.order()) {
            let a = f.coeff(k);
            if !a.is_zero() {
                out[n - k] += pn * &cs[n] / &cs[n - k] * a;
            }
        }
    }
    Ok(Polynomial::new(out))
}

/// Result of checking `<g f^k | s_n> = c_n delta_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiorthogonalityReport {
    pub checked: usize,
    pub violation: Option<BiorthogonalityViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiorthogonalityViolation {
    pub n: usize,
    pub k: usize,
    pub found: Rational,
    pub expected: Rational,
}

impl BiorthogonalityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks all `n, k <= size` and reports the first violation in row-major
/// order.
pub fn biorthogonality_check(
    pair: &ShefferPair,
    seq: &PolynomialSequence,
) -> Result<BiorthogonalityReport> {
    let size = seq.size();
    pair.require(size)?;
    let g = pair.g.truncate(size);
    let f = pair.f.truncate(size);
    let mut columns = Vec::with_capacity(size + 1);
    let mut column = g;
    for _ in 0..=size {
        let next = &column * &f;
        columns.push(column);
        column = next;
    }
    let mut checked = 0;
    for n in 0..=size {
        let cn = pair.c.value(n)?;
        for (k, col) in columns.iter().enumerate() {
            let found = functional_pair(col, seq.get(n), &pair.c)?;
            let expected = if n == k { cn.clone() } else { Rational::zero() };
            checked += 1;
            if found != expected {
                return Ok(BiorthogonalityReport {
                    checked,
                    violation: Some(BiorthogonalityViolation {
                        n,
                        k,
                        found,
                        expected,
                    }),
                });
            }
        }
    }
    Ok(BiorthogonalityReport {
        checked,
        violation: None,
    })
}

/// Substitutes the sequence into `x^n = sum_k a[n][k] s_k` and returns the
/// first `n` where the reconstruction fails.
pub fn monomial_reconstruction_failure(
    array: &RiordanArray,
    seq: &PolynomialSequence,
) -> Option<usize> {
    let size = array.size().min(seq.size());
    (0..=size).find(|&n| {
        let mut acc = Polynomial::zero();
        for k in 0..=n {
            acc = &acc + &seq.get(k).scale(&array.get(n, k));
        }
        acc != Polynomial::monomial(Rational::one(), n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, factorial, frac, int};
    use proptest::prelude::*;

    const EXP: ReferenceSequence = ReferenceSequence::Exponential;

    fn series(c: &[i64], order: usize) -> FormalPowerSeries {
        FormalPowerSeries::new(c.iter().map(|&v| int(v)).collect(), order)
    }

    fn exp_t(order: usize) -> FormalPowerSeries {
        FormalPowerSeries::t(order).exp().unwrap()
    }

    fn exponential_pair(order: usize) -> ShefferPair {
        ShefferPair::associated(series(&[1, 1], order).log().unwrap(), EXP).unwrap()
    }

    fn laguerre_pair(alpha: i64, order: usize) -> ShefferPair {
        let g = series(&[1, -1], order).pow(&int(-alpha - 1)).unwrap();
        let f = FormalPowerSeries::from_fn(order, |k| int(if k == 0 { 0 } else { -1 }));
        ShefferPair::new(g, f, EXP).unwrap()
    }

    #[test]
    fn appell_exp_gives_shifted_powers() {
        let pair = ShefferPair::appell(exp_t(6), EXP).unwrap();
        let seq = sequence_from_gf(&pair, 6).unwrap();
        let x_minus_one = Polynomial::from_ints(&[-1, 1]);
        let mut power = Polynomial::one();
        for n in 0..=6 {
            assert_eq!(seq.get(n), &power);
            power = &power * &x_minus_one;
        }
        assert_eq!(sequence_from_array(&pair, 6).unwrap().polys(), seq.polys());
        for n in 1..=6 {
            assert_eq!(
                seq.get(n).derivative(),
                seq.get(n - 1).scale(&int(n as i64))
            );
        }
    }

    #[test]
    fn exponential_polynomials() {
        let seq = sequence_from_gf(&exponential_pair(6), 6).unwrap();
        assert_eq!(seq.get(4), &Polynomial::from_ints(&[0, 1, 7, 6, 1]));
    }

    #[test]
    fn hermite_from_brute_force_expansion() {
        // oracle: e^{2xt - t^2} = sum_{j,m} (2x)^j t^j / j! * (-1)^m t^{2m} / m!
        let g = FormalPowerSeries::monomial(frac(1, 4), 2, 6).exp().unwrap();
        let f = FormalPowerSeries::monomial(frac(1, 2), 1, 6);
        let seq = sequence_from_gf(&ShefferPair::new(g, f, EXP).unwrap(), 6).unwrap();
        for n in 0..=6usize {
            let mut coeffs = vec![int(0); n + 1];
            for m in 0..=n / 2 {
                let j = n - 2 * m;
                let sign = if m % 2 == 0 { 1 } else { -1 };
                coeffs[j] +=
                    int(sign) * crate::rational::pow(&int(2), j) / factorial(j) / factorial(m)
                        * factorial(n);
            }
            assert_eq!(seq.get(n), &Polynomial::new(coeffs));
        }
        assert_eq!(seq.get(3), &Polynomial::from_ints(&[0, -12, 0, 8]));
    }

    #[test]
    fn falling_factorials_by_array() {
        let f = &exp_t(6) - &FormalPowerSeries::one(6);
        let seq = sequence_from_array(&ShefferPair::associated(f, EXP).unwrap(), 6).unwrap();
        assert_eq!(seq.get(4), &Polynomial::from_ints(&[0, -6, 11, -6, 1]));
    }

    #[test]
    fn laguerre_is_factorial_times_textbook() {
        let seq = sequence_from_array(&laguerre_pair(0, 6), 6).unwrap();
        assert_eq!(seq.get(2), &Polynomial::from_ints(&[2, -4, 1]));
        for alpha in [0i64, 3] {
            let seq = sequence_from_gf(&laguerre_pair(alpha, 6), 6).unwrap();
            for n in 0..=6usize {
                let textbook: Vec<Rational> = (0..=n)
                    .map(|k| {
                        int(if k % 2 == 0 { 1 } else { -1 }) / factorial(k)
                            * binomial(&int(n as i64 + alpha), n - k)
                    })
                    .collect();
                let normalized = seq
                    .normalized(Normalization::DivideByReference, &EXP)
                    .unwrap();
                assert_eq!(normalized.get(n), &Polynomial::new(textbook));
            }
        }
    }

    #[test]
    fn monomial_expansion_reconstructs_powers() {
        let pair = exponential_pair(6);
        let array = monomial_expansion(&pair, 6).unwrap();
        let seq = sequence_from_gf(&pair, 6).unwrap();
        assert_eq!(monomial_reconstruction_failure(&array, &seq), None);
        let id_pair =
            ShefferPair::new(FormalPowerSeries::one(4), FormalPowerSeries::t(4), EXP).unwrap();
        assert!(monomial_expansion(&id_pair, 4)
            .unwrap()
            .entries()
            .is_identity());
    }

    #[test]
    fn functional_and_operator() {
        let p = Polynomial::monomial(int(1), 3);
        let t3 = FormalPowerSeries::monomial(int(1), 3, 5);
        let t2 = FormalPowerSeries::monomial(int(1), 2, 5);
        assert_eq!(functional_pair(&t3, &p, &EXP).unwrap(), int(6));
        assert_eq!(functional_pair(&t2, &p, &EXP).unwrap(), int(0));
        let x2 = Polynomial::monomial(int(1), 2);
        assert_eq!(functional_pair(&exp_t(4), &x2, &EXP).unwrap(), int(1));

        let t = FormalPowerSeries::t(6);
        assert_eq!(
            operator_action(&t, &Polynomial::monomial(int(1), 5), &EXP).unwrap(),
            Polynomial::monomial(int(5), 4)
        );
        let q = Polynomial::from_ints(&[3, 1, 4]);
        assert_eq!(
            operator_action(&FormalPowerSeries::one(6), &q, &EXP).unwrap(),
            q
        );
        let x4 = Polynomial::monomial(int(1), 4);
        assert_eq!(
            operator_action(&t2, &x4, &EXP).unwrap(),
            Polynomial::monomial(int(12), 2)
        );
    }

    #[test]
    fn biorthogonality_and_negative_control() {
        let pair = ShefferPair::appell(exp_t(6), EXP).unwrap();
        let seq = sequence_from_gf(&pair, 6).unwrap();
        assert!(biorthogonality_check(&pair, &seq).unwrap().passed());

        let pair = exponential_pair(8);
        let seq = sequence_from_gf(&pair, 8).unwrap();
        assert!(biorthogonality_check(&pair, &seq).unwrap().passed());

        let bumped = seq.get(2).scale(&int(2));
        let perturbed = seq.replace(2, bumped).unwrap();
        let report = biorthogonality_check(&pair, &perturbed).unwrap();
        let v = report.violation.unwrap();
        assert_eq!((v.n, v.k), (2, 2));
        assert_eq!((v.found, v.expected), (int(4), int(2)));
        assert_eq!(report.checked, 2 * 9 + 3);
    }

    #[test]
    fn degree_invariant_enforced() {
        let polys = vec![Polynomial::one(), Polynomial::from_ints(&[1])];
        assert!(matches!(
            PolynomialSequence::new(polys, Route::Supplied, None),
            Err(Error::ShapeMismatch(_))
        ));
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-3i64..=3, 1i64..=3).prop_map(|(p, q)| frac(p, q))
    }

    fn nonzero() -> impl Strategy<Value = Rational> {
        small().prop_filter("nonzero", |r| !r.is_zero())
    }

    fn arb_pair(order: usize) -> impl Strategy<Value = ShefferPair> {
        (
            nonzero(),
            proptest::collection::vec(small(), order),
            nonzero(),
            proptest::collection::vec(small(), order - 1),
            prop_oneof![
                Just(ReferenceSequence::Exponential),
                Just(ReferenceSequence::Classical)
            ],
        )
            .prop_map(move |(g0, gs, f1, fs, c)| {
                let mut g = vec![g0];
                g.extend(gs);
                let mut f = vec![int(0), f1];
                f.extend(fs);
                ShefferPair::new(
                    FormalPowerSeries::new(g, order),
                    FormalPowerSeries::new(f, order),
                    c,
                )
                .unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn gf_route_equals_array_route(pair in arb_pair(8)) {
            let a = sequence_from_gf(&pair, 8).unwrap();
            let b = sequence_from_array(&pair, 8).unwrap();
            prop_assert_eq!(a.polys(), b.polys());
            prop_assert!(biorthogonality_check(&pair, &a).unwrap().passed());
        }

        #[test]
        fn reconstruction_identity(pair in arb_pair(6)) {
            let array = monomial_expansion(&pair, 6).unwrap();
            let seq = sequence_from_gf(&pair, 6).unwrap();
            prop_assert_eq!(monomial_reconstruction_failure(&array, &seq), None);
        }
    }
}
