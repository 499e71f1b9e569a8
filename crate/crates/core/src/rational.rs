//! Exact rational values.

use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Measurement values are exact rationals kept in lowest terms with a
/// positive denominator.
pub type Rational = Ratio<i64>;

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"-.5"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = i64::from_str(num.trim()).map_err(|_| bad())?;
        let d = i64::from_str(den.trim()).map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let (negative, int) = match int.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, int.strip_prefix('+').unwrap_or(int)),
        };
        if frac.is_empty() && int.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(bad());
        }
        let whole = if int.is_empty() { 0 } else { i64::from_str(int).map_err(|_| bad())? };
        let scale = 10i64.pow(frac.len() as u32);
        let part = if frac.is_empty() { 0 } else { i64::from_str(frac).map_err(|_| bad())? };
        let magnitude = whole
            .checked_mul(scale)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(bad)?;
        let value = Ratio::new(magnitude, scale);
        return Ok(if negative { -value } else { value });
    }
    i64::from_str(t).map(Ratio::from_integer).map_err(|_| bad())
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// `|a - b|`
pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

/// Largest element of a non-empty iterator, zero for an empty one.
pub fn max_or_zero<I: IntoIterator<Item = Rational>>(values: I) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| if v > acc { v } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("3").unwrap(), r(3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("4/-6").unwrap(), r(-2, 3));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("-2.5").unwrap(), r(-5, 2));
        assert_eq!(parse_rational("7.").unwrap(), r(7, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", ".", "--1", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&r(2, 4)), "1/2");
        assert_eq!(format_rational(&r(-6, 3)), "-2");
        assert_eq!(format_rational(&parse_rational(&format_rational(&r(-7, 3))).unwrap()), "-7/3");
    }
}
