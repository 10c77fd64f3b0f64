//! Scalar abstraction: the numeric type expectations are evaluated in.
//!
//! Exact results use [`Rational`]; fast paths use f64 (or f32). Everything
//! downstream of the density — kernels, piecewise polynomials, closed forms —
//! is generic over this trait, so the same code path serves both the exact
//! oracle comparisons and the floating-point optimizers.

use num::{BigInt, BigRational};
use num_traits::{Num, Signed, ToPrimitive};

use crate::{Error, Rational, Result};

/// Numeric scalar usable for expectation arithmetic.
pub trait Scalar: Num + Signed + Clone + PartialOrd {
    /// Convert an exact rational into this scalar (rounding if lossy).
    fn from_rational(r: &Rational) -> Self;

    /// Exact embedding of this scalar into the rationals.
    ///
    /// For floats this is the exact binary value; NaN/infinity panic, which
    /// is acceptable since no finite computation here produces them.
    fn to_rational(&self) -> Rational;

    /// Small rational constant.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&crate::rat(num, den))
    }

    /// Lossy view as f64 (used only for reporting).
    fn as_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().expect("rational out of f64 range")
    }

    fn to_rational(&self) -> Rational {
        BigRational::from_float(*self).expect("non-finite float has no rational value")
    }

    fn as_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().expect("rational out of f32 range")
    }

    fn to_rational(&self) -> Rational {
        BigRational::from_float(*self as f64).expect("non-finite float has no rational value")
    }

    fn as_f64(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().expect("rational out of f64 range")
    }
}

/// Parse a rational from `p/q`, integer, or decimal notation.
///
/// All three forms convert exactly: `0.25` becomes 1/4, not a float.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        if den == BigInt::from(0) {
            return Err(Error::ParseRational(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            "0"
        } else {
            int_part
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit()) || frac_part.is_empty() {
            return Err(Error::ParseRational(s.to_string()));
        }
        let int: BigInt = int_part
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        let num: BigInt = frac_part
            .parse()
            .map_err(|_| Error::ParseRational(s.to_string()))?;
        let den = BigInt::from(10).pow(frac_part.len() as u32);
        let frac = Rational::new(num, den);
        let whole = Rational::from_integer(int);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let int: BigInt = s.parse().map_err(|_| Error::ParseRational(s.to_string()))?;
    Ok(Rational::from_integer(int))
}

/// Format `x` with 12 significant digits, plain notation where reasonable.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parses_fraction_integer_decimal() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 1/3 ").unwrap(), rat(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "1/", "0x3", "."] {
            assert!(parse_rational(bad).is_err(), "should reject {bad:?}");
        }
    }

    #[test]
    fn float_round_trips_are_exact() {
        let x = 0.1f64;
        let r = x.to_rational();
        assert_eq!(f64::from_rational(&r), x);
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(413.0 / 960.0), "0.430208333333");
        assert_eq!(format_sig12(-0.5), "-0.5");
        assert_eq!(format_sig12(1.0e-9), "1e-9");
    }
}
