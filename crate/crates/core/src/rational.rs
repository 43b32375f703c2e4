//! Exact rational numbers and the canonical text form used by the instance
//! format and the CLI.
//!
//! Values are arbitrary-precision, always reduced, with a positive denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `<int>` or `<int>/<posint>`.
pub fn parse(token: &str) -> Option<Rational> {
    fn parse_int(s: &str) -> Option<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match token.split_once('/') {
        None => parse_int(token).map(Rational::from_integer),
        Some((n, d)) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let denom: BigInt = d.parse().ok()?;
            if denom.is_zero() {
                return None;
            }
            Some(Rational::new(parse_int(n)?, denom))
        }
    }
}

/// `p/q` in lowest terms, integers without `/1`.
pub fn format(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn format_list(values: &[Rational]) -> String {
    values.iter().map(format).collect::<Vec<_>>().join(",")
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a vector by a positive factor so that it becomes a primitive integer
/// vector (gcd of the entries is one). The zero vector is returned unchanged.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<Rational> {
    let denom = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(denom.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return values.to_vec();
    }
    ints.into_iter()
        .map(|v| Rational::from_integer(v / &g))
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales `value` by `scale` and converts to `i128` if the result is integral
/// and fits.
pub(crate) fn scaled_to_i128(value: &Rational, scale: &BigInt) -> Option<i128> {
    let scaled = value * Rational::from_integer(scale.clone());
    if !scaled.is_integer() {
        return None;
    }
    scaled.to_integer().to_i128()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse("5/2"), Some(ratio(5, 2)));
        assert_eq!(parse("-3"), Some(int(-3)));
        assert_eq!(parse("4/8"), Some(ratio(1, 2)));
        assert_eq!(parse("-1/8"), Some(ratio(-1, 8)));
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "/", "1/", "/2", "1/0", "1/-2", "a", "1.5", "1/2/3", "--1"] {
            assert_eq!(parse(bad), None, "{bad:?}");
        }
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format(&ratio(10, 4)), "5/2");
        assert_eq!(format(&ratio(-6, 3)), "-2");
        assert_eq!(format(&int(0)), "0");
        assert_eq!(format(&ratio(1, -8)), "-1/8");
    }

    #[test]
    fn primitive_vector_reduces() {
        let v = vec![ratio(1, 2), ratio(1, 2), int(0)];
        assert_eq!(primitive_integer_vector(&v), vec![int(1), int(1), int(0)]);
        let w = vec![ratio(2, 3), ratio(4, 9)];
        assert_eq!(primitive_integer_vector(&w), vec![int(3), int(2)]);
    }
}
