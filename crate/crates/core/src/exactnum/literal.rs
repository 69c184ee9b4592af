//! Text literals for exact scalars.
//!
//! A literal is a signed sum of terms `[rational][unit]`, where the unit is
//! one of `i`, `z` (ζ = e^{iπ/4}), `z2`, `z3`, or empty. Examples: `"3"`,
//! `"1/2-3/4i"`, `"1+z"`, `"-i"`. Gaussian rationals `a+bi` are the common case.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{parse_rational, Cyclotomic8};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar literal {literal:?}: {reason}")]
pub struct ParseScalarError {
    pub literal: String,
    pub reason: String,
}

impl FromStr for Cyclotomic8 {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseScalarError { literal: s.to_string(), reason: reason.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > start {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Cyclotomic8::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let split = body.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(body.len());
            let (num, unit) = body.split_at(split);
            let coeff = if num.is_empty() {
                if unit.is_empty() {
                    return Err(err("dangling sign"));
                }
                BigRational::from_integer(BigInt::from(1))
            } else {
                parse_rational(num).ok_or_else(|| err("bad rational coefficient"))?
            };
            let power = match unit {
                "" => 0,
                "z" => 1,
                "i" | "z2" => 2,
                "z3" => 3,
                _ => return Err(err("unknown unit (expected i, z, z2, z3)")),
            };
            let mut t = Cyclotomic8::zeta_pow(power).scale(&coeff);
            if negative {
                t = -t;
            }
            acc += &t;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gaussian_literals() {
        assert_eq!("2".parse::<Cyclotomic8>().unwrap(), Cyclotomic8::from_int(2));
        assert_eq!("-i".parse::<Cyclotomic8>().unwrap(), -Cyclotomic8::i());
        assert_eq!(
            "1/2 - 3/4i".parse::<Cyclotomic8>().unwrap(),
            Cyclotomic8::from_gaussian(q(1, 2), q(-3, 4))
        );
        assert_eq!("1+z".parse::<Cyclotomic8>().unwrap(), Cyclotomic8::from_ints([1, 1, 0, 0]));
        assert_eq!("z-z3".parse::<Cyclotomic8>().unwrap(), Cyclotomic8::sqrt2());
    }

    #[test]
    fn rejects_garbage() {
        assert!("".parse::<Cyclotomic8>().is_err());
        assert!("1+".parse::<Cyclotomic8>().is_err());
        assert!("2q".parse::<Cyclotomic8>().is_err());
        assert!("1/0".parse::<Cyclotomic8>().is_err());
    }
}
