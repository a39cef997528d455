//! Exact rational coefficients and their text syntax.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field used everywhere in the crate.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` with an optional leading minus sign.
///
/// The result is always in lowest terms with a positive denominator.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (negative, body) = match s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |part: &str| -> Result<BigInt> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid rational {text:?}")));
        }
        part.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("invalid rational {text:?}: {e}")))
    };
    let mut n = digits(num)?;
    let d = match den {
        Some(d) => digits(d)?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    if negative {
        n = -n;
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` or `"p"` rendering.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
