use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always reduced, denominator positive.
///
/// Backed by `num_rational::BigRational`, which maintains both invariants on
/// every operation. All arithmetic in this crate goes through this type; no
/// floating point is used anywhere.
pub type Rational = num_rational::BigRational;

/// Errors from exact arithmetic: parsing, domain violations, and shape or
/// solvability failures in the matrix layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse {0:?} as an exact rational")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("negative input {0} where a non-negative integer is required")]
    NegativeInput(BigInt),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
}

pub fn rational_from_integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a bare integer `"p"`. Whitespace around the string and
/// around the slash is accepted; anything else (in particular decimal points
/// and exponents) is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ExactError::Parse(text.to_owned()));
    }
    let parse_int = |part: &str| -> Result<BigInt, ExactError> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| ExactError::Parse(text.to_owned()))
    };
    match trimmed.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(trimmed)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(ExactError::ZeroDenominator(text.to_owned()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Renders a rational exactly: integers as `"p"`, everything else as `"p/q"`
/// with `q > 1`.
pub fn rational_to_string(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when the value is an integer (denominator 1 after reduction).
pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Signum as an integer in {-1, 0, 1}, for ordering and certificates.
pub fn sign(value: &Rational) -> i32 {
    if value.is_zero() {
        0
    } else if value.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("18").unwrap(), rational_from_integer(18));
        assert_eq!(
            parse_rational("-8/9").unwrap(),
            Rational::new(BigInt::from(-8), BigInt::from(9))
        );
        // Reduction and denominator sign are normalized on construction.
        let q = parse_rational("4/-6").unwrap();
        assert_eq!(rational_to_string(&q), "-2/3");
    }

    #[test]
    fn rejects_junk() {
        for bad in ["", "  ", "1.5", "1e3", "a/b", "3/0", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn string_round_trip_is_exact() {
        for text in ["0", "-7", "8/9", "-123456789123456789/2", "4/3"] {
            let q = parse_rational(text).unwrap();
            assert_eq!(rational_to_string(&q), text);
        }
    }

    #[test]
    fn integer_detection() {
        assert!(is_integer(&parse_rational("36/4").unwrap()));
        assert!(!is_integer(&parse_rational("8/9").unwrap()));
    }
}
