use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `p/q`, or just `p` when the denominator is 1.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p` or `p/q`. Rejects zero denominators, non-reduced fractions and
/// negative denominators, so every accepted string is already canonical.
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let err = || PolyError::Parse {
        what: "rational",
        input: text.to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() || den.is_negative() {
        return Err(err());
    }
    let value = Rational::new(num.clone(), den.clone());
    if value.numer() != &num || value.denom() != &den {
        return Err(err());
    }
    Ok(value)
}
