//! Raising and lowering operators in `x` and `D = d/dx`.
//!
//! For the exponential reference sequence the Sheffer sequence of `(g, f)`
//! satisfies `M s_n = s_{n+1}` and `P s_n = n s_{n-1}` with `P = f(D)` and
//! `M = (x - g'(D)/g(D)) / f'(D)`. Operators are stored in the normal form
//! `x A(D) + B(D)`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::iterated::IteratedSpec;
use crate::polynomial::Polynomial;
use crate::powerseries::{FormalPowerSeries, ReferenceSequence};
use crate::rational::{int, Rational};
use crate::sheffer::{PolynomialSequence, ShefferPair};

/// `p -> x A(D) p + B(D) p`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator {
    a: FormalPowerSeries,
    b: FormalPowerSeries,
}

impl DiffOperator {
    pub fn new(a: FormalPowerSeries, b: FormalPowerSeries) -> Self {
        Self { a, b }
    }

    /// Multiplication by `x`.
    pub fn x(order: usize) -> Self {
        Self::new(
            FormalPowerSeries::one(order),
            FormalPowerSeries::zero(order),
        )
    }

    pub fn a_part(&self) -> &FormalPowerSeries {
        &self.a
    }

    pub fn b_part(&self) -> &FormalPowerSeries {
        &self.b
    }

    /// Highest degree of polynomial the operator can act on exactly.
    pub fn order(&self) -> usize {
        self.a.order().min(self.b.order())
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let ap = apply_series(&self.a, p)?;
        let bp = apply_series(&self.b, p)?;
        Ok(&ap.shift_up() + &bp)
    }

    /// First differing coefficient, as `("A" | "B", power of D, self, other)`.
    pub fn first_difference(
        &self,
        other: &Self,
    ) -> Option<(&'static str, usize, Rational, Rational)> {
        let n = self.order().min(other.order());
        for (label, x, y) in [("A", &self.a, &other.a), ("B", &self.b, &other.b)] {
            if let Some(k) = (0..=n).find(|&k| x.coeff(k) != y.coeff(k)) {
                return Some((label, k, x.coeff(k).clone(), y.coeff(k).clone()));
            }
        }
        None
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x * {} + {}", self.a, self.b)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `s(D) p = sum_k s_k D^k p`.
pub fn apply_series(s: &FormalPowerSeries, p: &Polynomial) -> Result<Polynomial> {
    let Some(deg) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    if deg > s.order() {
        return Err(Error::TruncationTooShort {
            requested: deg,
            available: s.order(),
        });
    }
    let mut acc = Polynomial::zero();
    let mut derivative = p.clone();
    for k in 0..=deg {
        let c = s.coeff(k);
        if !c.is_zero() {
            acc = &acc + &derivative.scale(c);
        }
        derivative = derivative.derivative();
    }
    Ok(acc)
}

fn require_exponential(c: &ReferenceSequence) -> Result<()> {
    if *c != ReferenceSequence::Exponential {
        return Err(Error::NeedsExponentialReference);
    }
    Ok(())
}

/// `g'/g`, known to one order less than `g`.
fn log_derivative(g: &FormalPowerSeries) -> Result<FormalPowerSeries> {
    let d = g.derivative();
    Ok(&d * &g.truncate(d.order()).mul_inverse()?)
}

pub fn raising_sheffer(pair: &ShefferPair) -> Result<DiffOperator> {
    require_exponential(pair.reference())?;
    let fp = pair.f().derivative();
    if !fp.is_invertible() {
        return Err(Error::NotDelta);
    }
    let a = fp.mul_inverse()?;
    let b = -&(&log_derivative(pair.g())? * &a);
    Ok(DiffOperator::new(a, b))
}

pub fn lowering_sheffer(pair: &ShefferPair) -> Result<FormalPowerSeries> {
    require_exponential(pair.reference())?;
    Ok(pair.f().clone())
}

/// Raising operator of the iterated sequence, assembled by composition in
/// `D`: with `o` the outer and `i` the inner pair,
/// `A = 1 / (f_o'(f_i) f_i')` and `B = -((g_o'/g_o)(f_i) f_i' + g_i'/g_i) A`.
pub fn raising_2isp(spec: &IteratedSpec) -> Result<DiffOperator> {
    raising_2isp_with(spec, false)
}

/// As [`raising_2isp`] but with `f_o'(f_i)` in place of `f_i'` in the first
/// term of `B`; kept for comparison with that reading of the operator.
pub fn raising_2isp_outer_factor(spec: &IteratedSpec) -> Result<DiffOperator> {
    raising_2isp_with(spec, true)
}

fn raising_2isp_with(spec: &IteratedSpec, outer_factor: bool) -> Result<DiffOperator> {
    require_exponential(spec.reference())?;
    let (o, i) = (spec.outer(), spec.inner());
    let fi = i.f();
    let fi_p = fi.derivative();
    let fo_p_at = o.f().derivative().compose(fi)?;
    let denom = &fo_p_at * &fi_p;
    if !denom.is_invertible() {
        return Err(Error::NotDelta);
    }
    let a = denom.mul_inverse()?;
    let chain = if outer_factor { &fo_p_at } else { &fi_p };
    let first = &log_derivative(o.g())?.compose(fi)? * chain;
    let b = -&(&(&first + &log_derivative(i.g())?) * &a);
    Ok(DiffOperator::new(a, b))
}

/// `f_o(f_i(D))`.
pub fn lowering_2isp(spec: &IteratedSpec) -> Result<FormalPowerSeries> {
    require_exponential(spec.reference())?;
    spec.outer().f().compose(spec.inner().f())
}

/// `(M P - n) s_n`.
pub fn diffeq_residual(
    raising: &DiffOperator,
    lowering: &FormalPowerSeries,
    s: &Polynomial,
    n: usize,
) -> Result<Polynomial> {
    let ps = apply_series(lowering, s)?;
    let mps = raising.apply(&ps)?;
    Ok(&mps - &s.scale(&int(n as i64)))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialityReport {
    pub size: usize,
    /// `n` with `M s_n != s_{n+1}`.
    pub raising_failures: Vec<usize>,
    /// `n` with `P s_n != n s_{n-1}` (`P s_0 != 0` for `n = 0`).
    pub lowering_failures: Vec<usize>,
    /// `n` with `(M P - n) s_n != 0`.
    pub diffeq_failures: Vec<usize>,
}

impl MonomialityReport {
    pub fn passed(&self) -> bool {
        self.raising_failures.is_empty()
            && self.lowering_failures.is_empty()
            && self.diffeq_failures.is_empty()
    }
}

/// Checks the three relations on `seq` for every index they make sense.
pub fn verify_monomiality(
    seq: &PolynomialSequence,
    raising: &DiffOperator,
    lowering: &FormalPowerSeries,
) -> Result<MonomialityReport> {
    let size = seq.size();
    let mut report = MonomialityReport {
        size,
        ..Default::default()
    };
    for n in 0..=size {
        let s = seq.get(n);
        if n < size && raising.apply(s)? != *seq.get(n + 1) {
            report.raising_failures.push(n);
        }
        let ps = apply_series(lowering, s)?;
        let expected = if n == 0 {
            Polynomial::zero()
        } else {
            seq.get(n - 1).scale(&int(n as i64))
        };
        if ps != expected {
            report.lowering_failures.push(n);
        }
        if !diffeq_residual(raising, lowering, s, n)?.is_zero() {
            report.diffeq_failures.push(n);
        }
    }
    Ok(report)
}

/// `[P, M] s_n = s_n` for every member whose images stay within range.
pub fn commutator_failures(
    seq: &PolynomialSequence,
    raising: &DiffOperator,
    lowering: &FormalPowerSeries,
) -> Result<Vec<usize>> {
    let mut failures = Vec::new();
    for n in 0..seq.size() {
        let s = seq.get(n);
        let pm = apply_series(lowering, &raising.apply(s)?)?;
        let mp = raising.apply(&apply_series(lowering, s)?)?;
        if &pm - &mp != *s {
            failures.push(n);
        }
    }
    Ok(failures)
}

/// Comparison of a derived operator with a stated closed form.
#[derive(Clone, Debug)]
pub struct OperatorAudit {
    pub label: String,
    pub derived: DiffOperator,
    pub stated: DiffOperator,
    pub first_difference: Option<(&'static str, usize, Rational, Rational)>,
    /// Members `n` where the stated operator fails `M s_n = s_{n+1}`.
    pub stated_raising_failures: Vec<usize>,
}

impl OperatorAudit {
    pub fn new(
        label: impl Into<String>,
        derived: DiffOperator,
        stated: DiffOperator,
        seq: &PolynomialSequence,
    ) -> Result<Self> {
        let first_difference = derived.first_difference(&stated);
        let mut failures = Vec::new();
        for n in 0..seq.size().min(stated.order()) {
            if stated.apply(seq.get(n))? != *seq.get(n + 1) {
                failures.push(n);
            }
        }
        Ok(Self {
            label: label.into(),
            derived,
            stated,
            first_difference,
            stated_raising_failures: failures,
        })
    }

    pub fn matches(&self) -> bool {
        self.first_difference.is_none()
    }
}

impl fmt::Display for OperatorAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_difference {
            None => writeln!(f, "{}: stated operator matches the derived one", self.label)?,
            Some((part, k, d, s)) => writeln!(
                f,
                "{}: {part}-part differs at D^{k}: derived {d}, stated {s}",
                self.label
            )?,
        }
        if self.stated_raising_failures.is_empty() {
            writeln!(f, "  stated operator raises every member checked")
        } else {
            writeln!(
                f,
                "  stated operator fails M s_n = s_(n+1) for n in {:?}",
                self.stated_raising_failures
            )
        }
    }
}
