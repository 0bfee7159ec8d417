//! Arbitrary-precision rational numbers.
//!
//! All exact bound values and character-degree averages in this crate are
//! rationals. We use `num`'s `BigRational`, which already stores values in
//! lowest terms with a positive denominator, and add the few constructors
//! and renderings the rest of the crate needs.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

pub use num::rational::BigRational as Rational;

/// Rational from a machine-integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from an unsigned machine integer.
pub fn uint(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Whether the value is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Renders `num/den` with the denominator always written out, so that
/// machine-readable outputs (CSV, JSON) stay unambiguous: `9/5`, `3/1`.
pub fn render(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `num/den` form produced by [`render`]; a bare integer is
/// also accepted.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

/// Floor of a nonnegative rational as u64.
pub fn floor_u64(r: &Rational) -> u64 {
    assert!(!r.is_negative());
    let f = r.floor();
    let (_, digits) = f.numer().to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => panic!("rational floor does not fit in u64"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r, rat(-3, 2));
        assert_eq!(render(&r), "-3/2");
    }

    #[test]
    fn render_parse_round_trip() {
        for r in [rat(9, 5), rat(182, 61), int(3), rat(-7, 3), Rational::zero()] {
            assert_eq!(parse(&render(&r)).unwrap(), r);
        }
        assert_eq!(parse("13/5").unwrap(), rat(13, 5));
        assert_eq!(parse("4").unwrap(), int(4));
        assert!(parse("1/0").is_none());
    }
}
