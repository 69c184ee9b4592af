//! Exact scalars: the cyclotomic field ℚ(ζ₈) and the real subfield ℚ(√2).
//!
//! Every amplitude in the crate lives in [`Cyclotomic8`]. Squared magnitudes
//! land in [`RealQuadratic`], which supports exact sign decisions so that
//! comparisons like `|a| ≥ 2|b|` never go through floating point.

mod cyclotomic;
mod literal;
mod quadratic;

pub use cyclotomic::Cyclotomic8;
pub use literal::ParseScalarError;
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use quadratic::RealQuadratic;

use std::cmp::Ordering;

/// Product in ℚ(ζ₈).
pub fn cyc_mul(a: &Cyclotomic8, b: &Cyclotomic8) -> Cyclotomic8 {
    a * b
}

/// `a · conj(a)` as an element of ℚ(√2).
pub fn magnitude_sq(a: &Cyclotomic8) -> RealQuadratic {
    a.magnitude_sq()
}

/// Exact sign of `a - b`.
pub fn rq_compare(a: &RealQuadratic, b: &RealQuadratic) -> Ordering {
    a.cmp(b)
}

/// Parses `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Formats a rational as `"p/q"` in lowest terms (denominator always shown).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Out of f64 range: fall back to a scaled ratio of the leading bits.
        let n = r.numer();
        let d = r.denom();
        let shift = n.bits() as i64 - d.bits() as i64;
        let scaled = if shift >= 0 {
            BigRational::new(n.clone(), d.clone() << shift as usize)
        } else {
            BigRational::new(n.clone() << (-shift) as usize, d.clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = BigRational::from_integer(BigInt::from(1) << 2000usize);
        let r = big.clone() / (big * BigRational::from_integer(BigInt::from(3)));
        assert!((rational_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
    }
}
