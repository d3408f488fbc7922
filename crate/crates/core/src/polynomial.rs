//! Dense univariate polynomials in `x` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

/// Coefficients in ascending degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty coefficient list).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Multiplication by `x`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// First degree where `self` and `other` differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Rational, Rational)> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then_some((k, a, b))
        })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Self) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: Self) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Self) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Descending degree, e.g. `x^4 + 6x^3 + 7x^2 + x` or `1/4 x^2 + x - 1/2`.
/// Integer coefficients are written flush against `x`, fractions are
/// separated by a space.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let power = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{power}")?;
            } else if a.denom().is_one() {
                write!(f, "{a}{power}")?;
            } else {
                write!(f, "{a} {power}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn rendering() {
        assert_eq!(
            Polynomial::from_ints(&[0, 1, 7, 6, 1]).to_string(),
            "x^4 + 6x^3 + 7x^2 + x"
        );
        let p = Polynomial::new(vec![frac(-1, 2), int(1), frac(1, 4)]);
        assert_eq!(p.to_string(), "1/4 x^2 + x - 1/2");
        assert_eq!(Polynomial::from_ints(&[-1, 0, -3]).to_string(), "-3x^2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::new(vec![frac(-5, 2)]).to_string(), "-5/2");
    }

    #[test]
    fn arithmetic() {
        let a = Polynomial::from_ints(&[1, 1]);
        let b = Polynomial::from_ints(&[-1, 1]);
        assert_eq!(&a * &b, Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(&a - &a, Polynomial::zero());
        assert_eq!(
            Polynomial::from_ints(&[5, 0, 0, 2]).derivative(),
            Polynomial::from_ints(&[0, 0, 6])
        );
        assert_eq!(Polynomial::from_ints(&[1, 2, 3]).eval(&int(2)), int(17));
        assert_eq!(a.degree(), Some(1));
        assert_eq!(Polynomial::zero().degree(), None);
    }
}
