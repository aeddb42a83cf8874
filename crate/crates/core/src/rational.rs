//! Exact rational scalars and conversions.
//!
//! All coefficient and matrix arithmetic in this crate runs over `Rational`
//! (arbitrary-precision, always in lowest terms, positive denominator).
//! Floats are produced only for display.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always normalized.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse a rational from `"p/q"`, an integer string, or a decimal string.
///
/// Decimals convert exactly: `"0.5"` becomes `1/2`, `"-1.25"` becomes `-5/4`.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {:?}", s))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {:?}", s))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {:?}", s));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole = if whole == "-" || whole.is_empty() { "0" } else { whole };
        let whole: BigInt = whole
            .parse()
            .map_err(|_| format!("bad decimal in {:?}", s))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal in {:?}", s));
        }
        let frac_digits = frac.len() as u32;
        let frac_value: BigInt = frac.parse().map_err(|_| format!("bad decimal in {:?}", s))?;
        let scale = BigInt::from(10).pow(frac_digits);
        let mut numer = whole.abs() * &scale + frac_value;
        if negative {
            numer = -numer;
        }
        return Ok(Rational::new(numer, scale));
    }
    s.parse::<BigInt>()
        .map(Rational::from_integer)
        .map_err(|_| format!("cannot parse rational from {:?}", s))
}

/// Render a rational as a double. Exact inputs of plotting scale convert
/// within normal floating-point rounding.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// `sqrt` of a nonnegative rational, as a double. Used for kappa renderings.
pub fn sqrt_f64(value: &Rational) -> f64 {
    to_f64(value).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn display_round_trips() {
        for value in [rat(-3, 2), rat_int(7), rat(5, 1), rat(22, 7)] {
            assert_eq!(parse_rational(&value.to_string()).unwrap(), value);
        }
    }
}
