//! Truncated formal power series over the rationals.
//!
//! A [`FormalPowerSeries`] of truncation order `N` stores the coefficients of
//! `t^0 ..= t^N`; everything from `t^(N+1)` on is unknown. Binary operations
//! truncate to the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{binomial, factorial, int, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalPowerSeries {
    coeffs: Vec<Rational>,
}

impl FormalPowerSeries {
    /// Builds a series of truncation order `order`, padding with zeros or
    /// dropping coefficients beyond `t^order`.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(Rational::one(), 1, order)
    }

    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Truncation order `N`: coefficients of `t^0 ..= t^N` are known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`.
    ///
    /// Panics when `n` lies beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &Rational {
        assert!(
            n <= self.order(),
            "coefficient of t^{n} requested from a series known to order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_invertible(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.order() >= 1 && !self.coeffs[1].is_zero()
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by `t^m`; the truncation order drops by `m`.
    pub fn shift_down(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::TruncationTooShort {
                requested: m,
                available: self.order(),
            });
        }
        if self.coeffs[..m].iter().any(|c| !c.is_zero()) {
            return Err(domain(
                "powerseries",
                format!("series is not divisible by t^{m}"),
            ));
        }
        Ok(Self {
            coeffs: self.coeffs[m..].to_vec(),
        })
    }

    /// Formal derivative. Known to order `N - 1` (order 0 stays 0).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_fn(n - 1, |k| &self.coeffs[k + 1] * int(k as i64 + 1))
    }

    /// Antiderivative with zero constant term, known to order `N + 1`.
    pub fn integral(&self) -> Self {
        let n = self.order();
        Self::from_fn(n + 1, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                &self.coeffs[k - 1] / int(k as i64)
            }
        })
    }

    pub fn pow_usize(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn mul_inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// `self(inner(t))` by Horner evaluation; `inner` needs zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::InnerNotDelta);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `g(f(t)) = t`, solved one coefficient at
    /// a time from the triangular system `[t^n] sum_j g_j f^j = [n == 1]`.
    pub fn comp_inverse(&self) -> Result<Self> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let n = self.order();
        let f1 = self.coeffs[1].clone();
        // powers[j] = f^j
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(Self::one(n));
        for j in 1..=n {
            let next = &powers[j - 1] * self;
            powers.push(next);
        }
        let mut g = vec![Rational::zero(); n + 1];
        let mut f1_pow = Rational::one();
        for m in 1..=n {
            f1_pow *= &f1;
            let mut acc = if m == 1 {
                Rational::one()
            } else {
                Rational::zero()
            };
            for (j, gj) in g.iter().enumerate().take(m).skip(1) {
                if !gj.is_zero() {
                    acc -= gj * powers[j].coeff(m);
                }
            }
            g[m] = acc / &f1_pow;
        }
        Ok(Self { coeffs: g })
    }

    /// `exp(self)`; needs zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(domain(
                "powerseries",
                "exp needs a series with zero constant term",
            ));
        }
        let n = self.order();
        // n E_n = sum_{k=1}^n k f_k E_{n-k}
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * int(k as i64) * &out[m - k];
                }
            }
            out.push(acc / int(m as i64));
        }
        Ok(Self { coeffs: out })
    }

    /// `log(self)`; needs constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(domain(
                "powerseries",
                "log needs a series with constant term 1",
            ));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = &self.derivative() * &self.truncate(n - 1).mul_inverse()?;
        Ok(quotient.integral())
    }

    /// `self^r = exp(r log self)`; needs constant term 1.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(domain(
                "powerseries",
                format!("power {r} needs a series with constant term 1"),
            ));
        }
        self.log()?.scale(r).exp()
    }

    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(domain(
                "powerseries",
                "sqrt needs a series with constant term 1",
            ));
        }
        self.pow(&Rational::new(1.into(), 2.into()))
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow_usize(e as usize))
        } else {
            Ok(self.mul_inverse()?.pow_usize(e.unsigned_abs() as usize))
        }
    }

    pub fn sin(&self) -> Result<Self> {
        self.trig(|k| if k % 2 == 1 { sign(k / 2) } else { None })
    }

    pub fn cos(&self) -> Result<Self> {
        self.trig(|k| if k % 2 == 0 { sign(k / 2) } else { None })
    }

    fn trig(&self, pattern: impl Fn(usize) -> Option<i64>) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(domain(
                "powerseries",
                "sin/cos need a series with zero constant term",
            ));
        }
        let n = self.order();
        let outer = Self::from_fn(n, |k| match pattern(k) {
            Some(s) => int(s) / factorial(k),
            None => Rational::zero(),
        });
        outer.compose(self)
    }
}

fn sign(half: usize) -> Option<i64> {
    Some(if half % 2 == 0 { 1 } else { -1 })
}

impl fmt::Debug for FormalPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(t^{})]", self.order() + 1)
    }
}

impl fmt::Display for FormalPowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn add(self, rhs: Self) -> FormalPowerSeries {
        let n = self.order().min(rhs.order());
        FormalPowerSeries::from_fn(n, |k| &self.coeffs[k] + &rhs.coeffs[k])
    }
}

impl Sub for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn sub(self, rhs: Self) -> FormalPowerSeries {
        let n = self.order().min(rhs.order());
        FormalPowerSeries::from_fn(n, |k| &self.coeffs[k] - &rhs.coeffs[k])
    }
}

impl Neg for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    fn neg(self) -> FormalPowerSeries {
        FormalPowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &FormalPowerSeries {
    type Output = FormalPowerSeries;

    /// Cauchy product truncated at the smaller order.
    fn mul(self, rhs: Self) -> FormalPowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        FormalPowerSeries { coeffs: out }
    }
}

/// The fixed sequence of nonzero constants `c_n` weighting the umbral
/// framework.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReferenceSequence {
    /// `c_n = 1`
    Classical,
    /// `c_n = n!`
    Exponential,
    /// `c_n = 1 / C(r, n)`, generalized binomial in `r`.
    InverseBinomial(Rational),
    Custom(Arc<[Rational]>),
}

impl ReferenceSequence {
    pub fn value(&self, n: usize) -> Result<Rational> {
        let v = match self {
            Self::Classical => Rational::one(),
            Self::Exponential => factorial(n),
            Self::InverseBinomial(r) => {
                let b = binomial(r, n);
                if b.is_zero() {
                    return Err(Error::ZeroReference(n));
                }
                b.recip()
            }
            Self::Custom(values) => values.get(n).cloned().ok_or(Error::ReferenceTooShort(n))?,
        };
        if v.is_zero() {
            return Err(Error::ZeroReference(n));
        }
        Ok(v)
    }

    /// `c_0 ..= c_order`, each checked nonzero.
    pub fn values(&self, order: usize) -> Result<Vec<Rational>> {
        (0..=order).map(|n| self.value(n)).collect()
    }

    /// The generalized exponential `sum_n t^n / c_n`.
    pub fn epsilon(&self, order: usize) -> Result<FormalPowerSeries> {
        let values = self.values(order)?;
        Ok(FormalPowerSeries::from_fn(order, |n| values[n].recip()))
    }

    pub fn name(&self) -> String {
        match self {
            Self::Classical => "classical".into(),
            Self::Exponential => "exponential".into(),
            Self::InverseBinomial(r) => format!("inverse-binomial({r})"),
            Self::Custom(_) => "custom".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn series(c: &[i64], order: usize) -> FormalPowerSeries {
        FormalPowerSeries::new(c.iter().map(|&v| int(v)).collect(), order)
    }

    #[test]
    fn difference_of_squares() {
        let a = series(&[1, 1], 6);
        let b = series(&[1, -1], 6);
        assert_eq!(&a * &b, series(&[1, 0, -1], 6));
    }

    #[test]
    fn derivative_of_cube() {
        assert_eq!(series(&[0, 0, 0, 1], 5).derivative(), series(&[0, 0, 3], 4));
    }

    #[test]
    fn exp_coefficient_three() {
        let e = FormalPowerSeries::t(8).exp().unwrap();
        assert_eq!(e.coeff(3), &frac(1, 6));
    }

    #[test]
    fn inverse_of_one_minus_t_is_geometric() {
        let inv = series(&[1, -1], 8).mul_inverse().unwrap();
        assert_eq!(inv, series(&[1; 9], 8));
        assert_eq!(
            FormalPowerSeries::one(4).mul_inverse().unwrap(),
            FormalPowerSeries::one(4)
        );
    }

    #[test]
    fn inverse_of_two_plus_t() {
        let inv = series(&[2, 1], 6).mul_inverse().unwrap();
        let expected = FormalPowerSeries::from_fn(6, |k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            frac(s, 1 << (k + 1))
        });
        assert_eq!(inv, expected);
        assert_eq!(&inv * &series(&[2, 1], 6), FormalPowerSeries::one(6));
    }

    #[test]
    fn non_invertible_is_rejected() {
        assert_eq!(series(&[0, 1], 4).mul_inverse(), Err(Error::NotInvertible));
    }

    fn laguerre_f(order: usize) -> FormalPowerSeries {
        // t/(t-1) = -t - t^2 - ...
        FormalPowerSeries::from_fn(order, |k| if k == 0 { int(0) } else { int(-1) })
    }

    #[test]
    fn composition_examples() {
        let f = series(&[3, 1, 4, 1, 5], 6);
        assert_eq!(f.compose(&FormalPowerSeries::t(6)).unwrap(), f);
        let l = laguerre_f(10);
        assert_eq!(l.compose(&l).unwrap(), FormalPowerSeries::t(10));
        let geo = series(&[1; 8], 7);
        let alt = FormalPowerSeries::from_fn(7, |k| int(if k % 2 == 0 { 1 } else { -1 }));
        assert_eq!(geo.compose(&series(&[0, -1], 7)).unwrap(), alt);
        assert_eq!(geo.compose(&series(&[1, 1], 7)), Err(Error::InnerNotDelta));
    }

    #[test]
    fn comp_inverse_examples() {
        let expm1 = &FormalPowerSeries::t(9).exp().unwrap() - &FormalPowerSeries::one(9);
        let inv = expm1.comp_inverse().unwrap();
        let log1p = FormalPowerSeries::from_fn(9, |k| {
            if k == 0 {
                int(0)
            } else {
                frac(if k % 2 == 1 { 1 } else { -1 }, k as i64)
            }
        });
        assert_eq!(inv, log1p);
        assert_eq!(expm1.compose(&inv).unwrap(), FormalPowerSeries::t(9));
        let t = FormalPowerSeries::t(5);
        assert_eq!(t.comp_inverse().unwrap(), t);
        let l = laguerre_f(8);
        assert_eq!(l.comp_inverse().unwrap(), l);
        assert_eq!(series(&[0, 0, 1], 4).comp_inverse(), Err(Error::NotDelta));
        assert_eq!(series(&[1, 1], 4).comp_inverse(), Err(Error::NotDelta));
    }

    #[test]
    fn elementary_functions() {
        let log1p = series(&[1, 1], 6).log().unwrap();
        assert_eq!(log1p.coeff(3), &frac(1, 3));
        assert_eq!(log1p.coeff(4), &frac(-1, 4));

        // (1-t)^(-4): [t^2] = C(5,2) = 10; oracle: repeated multiplication
        let base = series(&[1, -1], 8);
        let by_pow = base.pow(&int(-4)).unwrap();
        let by_mul = base.mul_inverse().unwrap().pow_usize(4);
        assert_eq!(by_pow, by_mul);
        assert_eq!(by_pow.coeff(2), &int(10));

        // exp(t^2/4) against the termwise oracle sum (t^2/4)^k / k!
        let e = FormalPowerSeries::monomial(frac(1, 4), 2, 8).exp().unwrap();
        let oracle = FormalPowerSeries::from_fn(8, |k| {
            if k % 2 == 1 {
                int(0)
            } else {
                let m = k / 2;
                crate::rational::pow(&frac(1, 4), m) / factorial(m)
            }
        });
        assert_eq!(e, oracle);
        assert_eq!(e.coeff(4), &frac(1, 32));
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(
            series(&[1, 1], 4).exp(),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            series(&[2, 1], 4).log(),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            series(&[2, 1], 4).pow(&frac(1, 2)),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn trig_identity() {
        let t = FormalPowerSeries::t(10);
        let s = t.sin().unwrap();
        let c = t.cos().unwrap();
        assert_eq!(&(&s * &s) + &(&c * &c), FormalPowerSeries::one(10));
        assert_eq!(s.coeff(3), &frac(-1, 6));
    }

    #[test]
    fn reference_sequences() {
        assert_eq!(ReferenceSequence::Exponential.value(4).unwrap(), int(24));
        assert_eq!(ReferenceSequence::Classical.value(4).unwrap(), int(1));
        // c_n = 1/C(-1, n) = (-1)^n
        let c = ReferenceSequence::InverseBinomial(int(-1));
        assert_eq!(c.value(3).unwrap(), int(-1));
        assert_eq!(
            ReferenceSequence::InverseBinomial(int(2)).value(3),
            Err(Error::ZeroReference(3))
        );
        let custom = ReferenceSequence::Custom(vec![int(1), int(2)].into());
        assert_eq!(custom.value(2), Err(Error::ReferenceTooShort(2)));
        assert_eq!(
            ReferenceSequence::Exponential.epsilon(3).unwrap().coeff(3),
            &frac(1, 6)
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
    }

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        small_rational().prop_filter("nonzero", |r| !r.is_zero())
    }

    fn arb_series(order: usize) -> impl Strategy<Value = FormalPowerSeries> {
        proptest::collection::vec(small_rational(), order + 1)
            .prop_map(move |c| FormalPowerSeries::new(c, order))
    }

    fn arb_invertible(order: usize) -> impl Strategy<Value = FormalPowerSeries> {
        (
            nonzero_rational(),
            proptest::collection::vec(small_rational(), order),
        )
            .prop_map(move |(c0, rest)| {
                let mut c = vec![c0];
                c.extend(rest);
                FormalPowerSeries::new(c, order)
            })
    }

    fn arb_delta(order: usize) -> impl Strategy<Value = FormalPowerSeries> {
        (
            nonzero_rational(),
            proptest::collection::vec(small_rational(), order - 1),
        )
            .prop_map(move |(c1, rest)| {
                let mut c = vec![int(0), c1];
                c.extend(rest);
                FormalPowerSeries::new(c, order)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn inverse_law(f in arb_invertible(8)) {
            prop_assert_eq!(&f * &f.mul_inverse().unwrap(), FormalPowerSeries::one(8));
        }

        #[test]
        fn composition_inverse_law(f in arb_delta(7)) {
            let g = f.comp_inverse().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), FormalPowerSeries::t(7));
            prop_assert_eq!(g.compose(&f).unwrap(), FormalPowerSeries::t(7));
        }

        #[test]
        fn exp_log_round_trip(f in arb_delta(12)) {
            let e = f.exp().unwrap();
            prop_assert_eq!(e.log().unwrap(), f.clone());
            prop_assert_eq!(&e * &(-&f).exp().unwrap(), FormalPowerSeries::one(12));
        }

        #[test]
        fn pow_additivity(tail in proptest::collection::vec(small_rational(), 8)) {
            let mut c = vec![int(1)];
            c.extend(tail);
            let f = FormalPowerSeries::new(c, 8);
            let prod = &f.pow(&frac(2, 3)).unwrap() * &f.pow(&frac(1, 3)).unwrap();
            prop_assert_eq!(prod, f.clone());
            let p = f.pow(&frac(-3, 2)).unwrap();
            let q = f.pow(&frac(5, 4)).unwrap();
            prop_assert_eq!(&p * &q, f.pow(&frac(-1, 4)).unwrap());
        }

        #[test]
        fn derivative_is_a_derivation(f in arb_series(8), g in arb_series(8)) {
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g.truncate(7)) + &(&f.truncate(7) * &g.derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
