//! Linear algebra over 𝔽₂: bit vectors, affine subspaces in canonical form,
//! forms on subspace coordinates, and Gaussian binomial coefficients.
//!
//! Bit-string convention: qubit 1 is the leftmost character and the most
//! significant bit of the packed word, so the packed word of `x` is also the
//! index of `e_x` in a dense state vector.

mod forms;
mod subspace;

pub use forms::{LinearFormF2, QuadraticFormF2};
pub use subspace::{enumerate_affine_subspaces, AffineSubspace};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_BITS: usize = 20;
pub const MAX_ENUMERATION_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("bit-vector length {0} out of range 1..={MAX_BITS}")]
    LengthOutOfRange(usize),
    #[error("ambient dimension {0} out of range 1..={MAX_ENUMERATION_N} for exhaustive enumeration")]
    EnumerationOutOfRange(usize),
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },
    #[error("invalid bit string {0:?}")]
    BadBitString(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("vectors are not linearly independent")]
    Dependent,
}

/// A vector in 𝔽₂ⁿ, `n ≤ 20`, packed MSB-first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: u8,
    bits: u32,
}

impl BitVector {
    pub fn new(len: usize, bits: u32) -> Result<Self, F2Error> {
        if len == 0 || len > MAX_BITS {
            return Err(F2Error::LengthOutOfRange(len));
        }
        Ok(BitVector { len: len as u8, bits: bits & mask(len) })
    }

    pub fn zeros(len: usize) -> Result<Self, F2Error> {
        Self::new(len, 0)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The packed word; equals the dense-vector index of `e_x`.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bit for qubit `q` (0-based from the left).
    pub fn get(&self, q: usize) -> bool {
        debug_assert!(q < self.len());
        (self.bits >> (self.len() - 1 - q)) & 1 == 1
    }

    pub fn set(&mut self, q: usize, value: bool) {
        let b = 1 << (self.len() - 1 - q);
        if value {
            self.bits |= b;
        } else {
            self.bits &= !b;
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.len, other.len);
        BitVector { len: self.len, bits: self.bits ^ other.bits }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", bits_to_string(self.bits, self.len()))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = F2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = parse_bits(s)?;
        BitVector::new(s.len(), bits)
    }
}

impl Serialize for BitVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

/// MSB-first rendering of the low `len` bits of `bits`.
pub fn bits_to_string(bits: u32, len: usize) -> String {
    (0..len).map(|q| if (bits >> (len - 1 - q)) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a 0/1 string (possibly empty) into a packed word.
pub fn parse_bits(s: &str) -> Result<u32, F2Error> {
    if s.len() > 32 {
        return Err(F2Error::BadBitString(s.to_string()));
    }
    s.chars().try_fold(0u32, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(F2Error::BadBitString(s.to_string())),
    })
}

/// The Gaussian binomial coefficient `binom(n, k)₂`: the number of
/// `k`-dimensional subspaces of 𝔽₂ⁿ.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<BigUint, F2Error> {
    if k > n {
        return Err(F2Error::KExceedsN { n, k });
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= (BigUint::one() << (n - i)) - &one;
        den *= (BigUint::one() << (k - i)) - &one;
    }
    Ok(num / den)
}

/// Number of affine subspaces of 𝔽₂ⁿ of every dimension.
pub fn count_affine_subspaces(n: usize) -> BigUint {
    (0..=n).map(|k| gaussian_binomial(n, k).unwrap() << (n - k)).sum()
}
