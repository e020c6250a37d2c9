//! Exact rational scalars.
//!
//! Every number in the toolkit is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. There is no
//! floating point anywhere; all identities asserted by the test suites are
//! exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics on a zero denominator; intended for literals.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator in rational literal");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow_u(base: &Rational, exp: u32) -> Rational {
    let mut acc = int(1);
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::from(1);
    for k in 2..=i64::from(n) {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Parses `"p/q"` or `"p"` with optional surrounding whitespace.
///
/// The denominator must be nonzero; the result is reduced and normalized
/// so the denominator is positive.
pub fn parse_ratio(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("invalid rational '{s}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num_s, den_s) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num_s.parse().map_err(|_| bad())?;
    let den: BigInt = match den_s {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `"p/q"` (or `"p"` when the denominator is 1).
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// True if `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom() == &BigInt::from(1)
}

/// Non-negative gcd of the numerators of a list of integral rationals.
pub fn gcd_of_integers(values: &[Rational]) -> Result<BigInt> {
    use num_integer::Integer;
    let mut acc = BigInt::zero();
    for v in values {
        if !is_integer(v) {
            return Err(Error::InvalidInput(format!(
                "expected an integer, found {}",
                render(v)
            )));
        }
        acc = acc.gcd(v.numer());
    }
    Ok(acc.abs())
}
