use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{parse, BinaryOp, Function, SeriesExpr};
use crate::error::{domain, Error, Result};
use crate::powerseries::FormalPowerSeries;
use crate::rational::{is_integer, pow, to_i64, Rational};

pub type Bindings = BTreeMap<String, Rational>;

const MAX_EXPONENT: i64 = 4096;
const MAX_SLACK: usize = 256;

/// Evaluates `expr` to an exact series of order `order`.
///
/// Division by a series with zero constant term cancels the common power of
/// `t` first, which costs precision; evaluation runs at a higher working
/// order and retries with more slack when that is not enough.
pub fn evaluate(expr: &SeriesExpr, bindings: &Bindings, order: usize) -> Result<FormalPowerSeries> {
    if let Some(name) = expr
        .parameters()
        .into_iter()
        .find(|p| !bindings.contains_key(p))
    {
        return Err(Error::UnboundParameter(name));
    }
    let mut slack = 8;
    loop {
        let mut ev = Evaluator {
            bindings,
            work: order + slack,
        };
        match ev.eval(expr) {
            Ok(v) => {
                let s = v.into_series(order + slack);
                if s.order() >= order {
                    return Ok(s.truncate(order));
                }
            }
            Err(Retry::Precision) => {}
            Err(Retry::Fatal(e)) => return Err(e),
        }
        if slack >= MAX_SLACK {
            return Err(domain(
                "specparse",
                "division needs more cancellation than the working precision allows",
            ));
        }
        slack *= 2;
    }
}

pub fn parse_and_evaluate(
    input: &str,
    bindings: &Bindings,
    order: usize,
) -> Result<FormalPowerSeries> {
    let expr = parse(input)?;
    evaluate(&expr, bindings, order)
}

enum Retry {
    Precision,
    Fatal(Error),
}

impl From<Error> for Retry {
    fn from(e: Error) -> Self {
        Retry::Fatal(e)
    }
}

#[derive(Clone)]
enum Value {
    Const(Rational),
    Series(FormalPowerSeries),
}

impl Value {
    fn into_series(self, order: usize) -> FormalPowerSeries {
        match self {
            Value::Const(c) => FormalPowerSeries::constant(c, order),
            Value::Series(s) => s,
        }
    }

    /// A series whose nonconstant coefficients all vanish counts as a
    /// constant.
    fn as_const(&self) -> Option<Rational> {
        match self {
            Value::Const(c) => Some(c.clone()),
            Value::Series(s) => s.coefficients()[1..]
                .iter()
                .all(Zero::is_zero)
                .then(|| s.coeff(0).clone()),
        }
    }
}

struct Evaluator<'a> {
    bindings: &'a Bindings,
    work: usize,
}

type EvalResult = std::result::Result<Value, Retry>;

impl Evaluator<'_> {
    fn series(&self, v: Value) -> FormalPowerSeries {
        v.into_series(self.work)
    }

    fn eval(&mut self, expr: &SeriesExpr) -> EvalResult {
        match expr {
            SeriesExpr::Number(r) => Ok(Value::Const(r.clone())),
            SeriesExpr::Param(name) => self
                .bindings
                .get(name)
                .cloned()
                .map(Value::Const)
                .ok_or_else(|| Retry::Fatal(Error::UnboundParameter(name.clone()))),
            SeriesExpr::Var => Ok(Value::Series(FormalPowerSeries::t(self.work))),
            SeriesExpr::Neg(e) => Ok(match self.eval(e)? {
                Value::Const(c) => Value::Const(-c),
                Value::Series(s) => Value::Series(-&s),
            }),
            SeriesExpr::Binary(op, a, b) => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                self.binary(*op, a, b)
            }
            SeriesExpr::Call(func, e) => {
                let arg = self.eval(e)?;
                self.call(*func, arg)
            }
        }
    }

    fn binary(&self, op: BinaryOp, a: Value, b: Value) -> EvalResult {
        if let (Value::Const(x), Value::Const(y)) = (&a, &b) {
            return match op {
                BinaryOp::Add => Ok(Value::Const(x + y)),
                BinaryOp::Sub => Ok(Value::Const(x - y)),
                BinaryOp::Mul => Ok(Value::Const(x * y)),
                BinaryOp::Div => {
                    if y.is_zero() {
                        Err(domain("specparse", "division by zero").into())
                    } else {
                        Ok(Value::Const(x / y))
                    }
                }
                BinaryOp::Pow => const_pow(x, y).map(Value::Const),
            };
        }
        match op {
            BinaryOp::Add => Ok(Value::Series(&self.series(a) + &self.series(b))),
            BinaryOp::Sub => Ok(Value::Series(&self.series(a) - &self.series(b))),
            BinaryOp::Mul => Ok(Value::Series(&self.series(a) * &self.series(b))),
            BinaryOp::Div => self.divide(self.series(a), self.series(b)),
            BinaryOp::Pow => {
                let Some(e) = b.as_const() else {
                    return Err(domain("specparse", "exponent must not depend on t").into());
                };
                if let Some(x) = a.as_const() {
                    if matches!(a, Value::Const(_)) {
                        return const_pow(&x, &e).map(Value::Const);
                    }
                }
                self.series_pow(self.series(a), &e)
            }
        }
    }

    fn divide(&self, num: FormalPowerSeries, den: FormalPowerSeries) -> EvalResult {
        if den.is_invertible() {
            return Ok(Value::Series(&num * &den.mul_inverse()?));
        }
        let Some(m) = den.valuation() else {
            // the denominator vanishes to working precision
            return Err(Retry::Precision);
        };
        match num.valuation() {
            Some(v) if v < m => Err(domain(
                "specparse",
                format!("division by a series of order t^{m} that does not divide the numerator"),
            )
            .into()),
            None if num.order() < m => Err(Retry::Precision),
            _ => {
                let num = num.shift_down(m)?;
                let den = den.shift_down(m)?;
                Ok(Value::Series(&num * &den.mul_inverse()?))
            }
        }
    }

    fn series_pow(&self, base: FormalPowerSeries, e: &Rational) -> EvalResult {
        if is_integer(e) {
            let k = bounded_exponent(e)?;
            if k < 0 && !base.is_invertible() {
                return Err(domain(
                    "specparse",
                    "negative power of a series with zero constant term",
                )
                .into());
            }
            return Ok(Value::Series(base.powi(k)?));
        }
        if !base.coeff(0).is_one() {
            return Err(domain(
                "specparse",
                format!("power {e} needs a base with constant term 1"),
            )
            .into());
        }
        Ok(Value::Series(base.pow(e)?))
    }

    fn call(&self, func: Function, arg: Value) -> EvalResult {
        let s = self.series(arg);
        let out = match func {
            Function::Exp => s.exp()?,
            Function::Log => s.log()?,
            Function::Sqrt => s.sqrt()?,
            Function::Sin => s.sin()?,
            Function::Cos => s.cos()?,
        };
        Ok(Value::Series(out))
    }
}

fn bounded_exponent(e: &Rational) -> std::result::Result<i64, Retry> {
    match to_i64(e) {
        Some(k) if k.abs() <= MAX_EXPONENT => Ok(k),
        _ => Err(domain("specparse", format!("exponent {e} is too large")).into()),
    }
}

fn const_pow(x: &Rational, e: &Rational) -> std::result::Result<Rational, Retry> {
    if !is_integer(e) {
        if x.is_one() {
            return Ok(Rational::one());
        }
        return Err(domain("specparse", format!("{x}^{e} is not rational")).into());
    }
    let k = bounded_exponent(e)?;
    if k >= 0 {
        Ok(pow(x, k as usize))
    } else if x.is_zero() {
        Err(domain("specparse", "division by zero").into())
    } else {
        Ok(pow(&x.recip(), k.unsigned_abs() as usize))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn eval(src: &str, order: usize) -> Result<FormalPowerSeries> {
        parse_and_evaluate(src, &Bindings::new(), order)
    }

    #[test]
    fn geometric_quotient() {
        let s = eval("t/(t-1)", 10).unwrap();
        let expected = FormalPowerSeries::from_fn(10, |k| if k == 0 { int(0) } else { int(-1) });
        assert_eq!(s, expected);
    }

    #[test]
    fn parameterized_power() {
        let mut b = Bindings::new();
        b.insert("alpha".into(), int(3));
        let s = parse_and_evaluate("1/(1-t)^(alpha+1)", &b, 16).unwrap();
        let base = FormalPowerSeries::new(vec![int(1), int(-1)], 16);
        assert_eq!(s, base.powi(-4).unwrap());
        assert_eq!(
            parse_and_evaluate("alpha*t", &Bindings::new(), 4),
            Err(Error::UnboundParameter("alpha".into()))
        );
    }

    #[test]
    fn functions_and_domains() {
        let s = eval("exp(t)-1", 6).unwrap();
        assert!(s.is_delta());
        assert_eq!(s.coeff(3), &frac(1, 6));
        assert!(matches!(
            eval("log(2+t)", 6),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(eval("1/t", 6), Err(Error::DomainViolation { .. })));
        assert!(matches!(
            eval("(2+t)^(1/2)", 6),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(eval("t^t", 6), Err(Error::DomainViolation { .. })));
        assert!(matches!(
            eval("exp(1)", 6),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            eval("t^(-1)", 6),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn gegenbauer_case_f() {
        // -t/(1+sqrt(1-t^2)) = -(1 - sqrt(1-t^2))/t = -(t/2 + t^3/8 + t^5/16 + ...)
        let s = eval("(-t)/(1+sqrt(1-t^2))", 8).unwrap();
        let half = FormalPowerSeries::new(vec![int(1), int(0), int(-1)], 10)
            .sqrt()
            .unwrap();
        let oracle = (&FormalPowerSeries::one(10) - &half).shift_down(1).unwrap();
        assert_eq!(s, (-&oracle).truncate(8));
        assert_eq!(s.coeff(1), &frac(-1, 2));
    }

    #[test]
    fn constant_arithmetic() {
        assert_eq!(eval("2^3^2", 2).unwrap().coeff(0), &int(512));
        assert_eq!(eval("(2^3)^2", 2).unwrap().coeff(0), &int(64));
        assert_eq!(eval("-2^2", 2).unwrap().coeff(0), &int(-4));
        assert_eq!(eval("2^-1", 2).unwrap().coeff(0), &frac(1, 2));
        assert_eq!(eval("1^(1/2)", 2).unwrap().coeff(0), &int(1));
        assert!(matches!(
            eval("2^(1/2)", 2),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(
            eval("2^99999", 2),
            Err(Error::DomainViolation { .. })
        ));
    }

    #[test]
    fn deep_cancellation() {
        let s = eval("t^20/(t^20 + t^21)", 4).unwrap();
        assert_eq!(s, eval("1/(1+t)", 4).unwrap());
        assert!(matches!(
            eval("t/(t-t)", 4),
            Err(Error::DomainViolation { .. })
        ));
    }
}
