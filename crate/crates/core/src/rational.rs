//! Exact rational arithmetic used for every threshold comparison.
//!
//! Decimal constants are turned into fractions digit-for-digit (`"6.291"`
//! becomes `6291/1000`), so comparisons at the boundary behave the same on
//! every platform.

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed decimal literal `{0}`")]
pub struct DecimalError(pub String);

/// Parses a plain decimal literal (`-3.4641`, `7`, `0.00001`) into an exact fraction.
pub fn parse_decimal(text: &str) -> Result<Rational, DecimalError> {
    let err = || DecimalError(text.to_string());
    let s = text.trim();
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    if frac_part.len() > 15 {
        return Err(err());
    }
    let mut numer: i64 = 0;
    for c in int_part.chars().chain(frac_part.chars()) {
        numer = numer
            .checked_mul(10)
            .and_then(|x| x.checked_add(c as i64 - '0' as i64))
            .ok_or_else(err)?;
    }
    let denom = 10i64.pow(frac_part.len() as u32);
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Decimal literal that is known to be well formed (internal constants).
pub fn dec(text: &str) -> Rational {
    parse_decimal(text).unwrap_or_else(|e| panic!("{e}"))
}

/// Exact fraction of the shortest decimal representation of `x`.
///
/// `3.4641_f64` maps to `34641/10000`, not to the binary expansion.
pub fn from_f64_decimal(x: f64) -> Result<Rational, DecimalError> {
    if !x.is_finite() {
        return Err(DecimalError(format!("{x}")));
    }
    parse_decimal(&format!("{x}"))
}

pub fn ceil(x: Rational) -> i64 {
    x.ceil().to_integer()
}

pub fn floor(x: Rational) -> i64 {
    x.floor().to_integer()
}

pub fn to_f64(x: Rational) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// `n/d` written the way reports print it: `43746/1000` reduced, `4` for integers.
pub fn format(x: Rational) -> String {
    if *x.denom() == 1 {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a/b`, an integer, or a decimal literal.
pub fn parse_fraction_or_decimal(text: &str) -> Result<Rational, DecimalError> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| DecimalError(text.into()))?;
            let d: i64 = d.trim().parse().map_err(|_| DecimalError(text.into()))?;
            if d.is_zero() {
                return Err(DecimalError(text.into()));
            }
            Ok(Rational::new(n, d))
        }
        None => parse_decimal(text),
    }
}

/// Smallest integer `k` with `k >= x`, clamped at zero for non-positive `x`.
pub fn ceil_nonneg(x: Rational) -> usize {
    if x.is_negative() {
        0
    } else {
        ceil(x) as usize
    }
}
