//! Exact rational scalars and the small combinatorial helpers built on them.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Generalized binomial coefficient `r (r-1) ... (r-k+1) / k!` for rational `r`.
pub fn binomial(r: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= r - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

pub fn pow(r: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Parses `"3"`, `"-1/2"` or a terminating decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((whole, fracpart)) = s.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{whole_digits}{fracpart}");
        let mut num: BigInt = digits.parse().ok()?;
        if negative {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(fracpart.len() as u32);
        return Some(Rational::new(num, den));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Renders `r` in plain decimal notation rounded (half away from zero) to
/// `significant` significant digits. Trailing fractional zeros are dropped.
pub fn to_decimal(r: &Rational, significant: usize) -> String {
    assert!(significant > 0);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let ten = int(10);
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            pow(&ten, k as usize)
        } else {
            pow(&ten, (-k) as usize).recip()
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    // scaled = a * 10^(significant - 1 - e), rounded to an integer
    let shift = significant as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = q;
    if rem * 2 >= *scaled.denom() {
        digits += 1;
    }
    let mut text = digits.to_string();
    let mut shift = shift;
    // rounding may carry into a new leading digit
    if text.len() > significant {
        text.pop();
        shift -= 1;
    }
    let rendered = if shift <= 0 {
        let mut s = text;
        s.extend(std::iter::repeat_n('0', (-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        let s = if text.len() <= shift {
            let mut padded = "0.".to_string();
            padded.extend(std::iter::repeat_n('0', shift - text.len()));
            padded.push_str(&text);
            padded
        } else {
            let (int_part, frac_part) = text.split_at(text.len() - shift);
            format!("{int_part}.{frac_part}")
        };
        let s = s.trim_end_matches('0');
        s.trim_end_matches('.').to_string()
    };
    if negative {
        format!("-{rendered}")
    } else {
        rendered
    }
}

pub fn to_usize(r: &Rational) -> Option<usize> {
    if !is_integer(r) || r.numer().sign() == Sign::Minus {
        return None;
    }
    r.numer().to_usize()
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    r.numer().to_i64()
}
