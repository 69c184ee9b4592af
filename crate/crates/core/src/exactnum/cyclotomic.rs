use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, rational_to_f64, RealQuadratic};

/// An element `c0 + c1·ζ + c2·ζ² + c3·ζ³` of ℚ(ζ₈), `ζ = e^{iπ/4}`.
///
/// The power basis is a ℚ-basis, so equality and hashing on the coefficient
/// array are equality and hashing of field elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic8 {
    c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic8 {
    pub fn new(c0: BigRational, c1: BigRational, c2: BigRational, c3: BigRational) -> Self {
        Cyclotomic8 { c: [c0, c1, c2, c3] }
    }

    pub fn from_coeffs(c: [BigRational; 4]) -> Self {
        Cyclotomic8 { c }
    }

    /// Integer coefficients, convenient in tests and constants.
    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclotomic8 { c: c.map(rat) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic8 { c: [r, BigRational::zero(), BigRational::zero(), BigRational::zero()] }
    }

    /// `re + im·i` for rational parts.
    pub fn from_gaussian(re: BigRational, im: BigRational) -> Self {
        Cyclotomic8 { c: [re, BigRational::zero(), im, BigRational::zero()] }
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        Self::one().mul_zeta_pow(k)
    }

    pub fn i() -> Self {
        Self::from_ints([0, 0, 1, 0])
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Self {
        Self::zeta_pow(2 * k)
    }

    /// `√2 = ζ − ζ³`.
    pub fn sqrt2() -> Self {
        Self::from_ints([0, 1, 0, -1])
    }

    /// `1/√2 = (ζ − ζ³)/2`.
    pub fn inv_sqrt2() -> Self {
        let h = BigRational::new(BigInt::from(1), BigInt::from(2));
        Cyclotomic8 { c: [BigRational::zero(), h.clone(), BigRational::zero(), -h] }
    }

    /// `(√2)^k` for any integer `k`.
    pub fn sqrt2_pow(k: i64) -> Self {
        let base = if k >= 0 { Self::sqrt2() } else { Self::inv_sqrt2() };
        let mut acc = if k.rem_euclid(2) == 0 { Self::one() } else { base };
        let half = BigRational::from_integer(BigInt::from(2)).pow((k / 2) as i32);
        acc.scale_assign(&half);
        acc
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Multiplication by `ζ^k`: a signed rotation of the coefficients.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut out: [BigRational; 4] = Default::default();
        for (j, cj) in self.c.iter().enumerate() {
            let e = j + k;
            let (slot, negate) = ((e % 4), (e / 4) % 2 == 1);
            out[slot] = if negate { -cj.clone() } else { cj.clone() };
        }
        Cyclotomic8 { c: out }
    }

    /// Multiplication by `√2`, done with additions only.
    pub fn mul_sqrt2(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclotomic8 { c: [c1 - c3, c0 + c2, c1 + c3, c2 - c0] }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = self.clone();
        out.scale_assign(r);
        out
    }

    pub fn scale_assign(&mut self, r: &BigRational) {
        for c in &mut self.c {
            *c *= r;
        }
    }

    /// The Galois automorphism `ζ ↦ ζ^j` for odd `j`.
    pub fn galois(&self, j: usize) -> Self {
        debug_assert!(j % 2 == 1);
        let mut out: [BigRational; 4] = Default::default();
        for (m, cm) in self.c.iter().enumerate() {
            if cm.is_zero() {
                continue;
            }
            let e = (j * m) % 8;
            let (slot, negate) = (e % 4, e >= 4);
            if negate {
                out[slot] -= cm;
            } else {
                out[slot] += cm;
            }
        }
        Cyclotomic8 { c: out }
    }

    /// Complex conjugation (`ζ ↦ ζ⁷ = −ζ³`).
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclotomic8 { c: [c0.clone(), -c3.clone(), -c2.clone(), -c1.clone()] }
    }

    /// Field norm down to ℚ: the product of all four conjugates.
    pub fn norm(&self) -> BigRational {
        let p = self.magnitude_sq();
        // N = |a|²·σ₃(|a|²) and σ₃ acts on ℚ(√2) as √2 ↦ −√2.
        p.u.clone() * p.u.clone() - BigRational::from_integer(BigInt::from(2)) * p.v.clone() * p.v
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let cof = &(&self.galois(3) * &self.galois(5)) * &self.galois(7);
        let n = self.norm();
        Some(cof.scale(&n.recip()))
    }

    /// `a / b`, `None` when `b = 0`.
    pub fn checked_div(&self, b: &Self) -> Option<Self> {
        b.inv().map(|bi| self * &bi)
    }

    pub fn magnitude_sq(&self) -> RealQuadratic {
        let p = self * &self.conj();
        debug_assert!(p.c[2].is_zero() && (&p.c[1] + &p.c[3]).is_zero());
        let [u, v, _, _] = p.c;
        RealQuadratic::new(u, v)
    }

    pub fn is_real(&self) -> bool {
        self.c[2].is_zero() && (&self.c[1] + &self.c[3]).is_zero()
    }

    /// Real part, as an element of ℚ(√2) ⊂ ℚ(ζ₈).
    pub fn re(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        (self + &self.conj()).scale(&half)
    }

    /// Imaginary part, as an element of ℚ(√2) ⊂ ℚ(ζ₈).
    pub fn im(&self) -> Self {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        (self - &self.conj()).mul_zeta_pow(-2).scale(&half)
    }

    /// `Some(k)` when the value is exactly `i^k`.
    pub fn as_i_power(&self) -> Option<u8> {
        (0..4u8).find(|&k| *self == Self::i_pow(k as i64))
    }

    /// Gaussian-rational view `(re, im)` when the ζ and ζ³ parts vanish.
    pub fn as_gaussian(&self) -> Option<(BigRational, BigRational)> {
        if self.c[1].is_zero() && self.c[3].is_zero() {
            Some((self.c[0].clone(), self.c[2].clone()))
        } else {
            None
        }
    }

    /// Floating-point mirror, evaluated coefficient-wise.
    pub fn to_complex(&self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let [c0, c1, c2, c3] = self.c.each_ref().map(rational_to_f64);
        Complex64::new(c0 + s * (c1 - c3), s * (c1 + c3) + c2)
    }

    /// `["p/q", "p/q", "p/q", "p/q"]`.
    pub fn to_strings(&self) -> [String; 4] {
        self.c.each_ref().map(format_rational)
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Option<Self> {
        if parts.len() != 4 {
            return None;
        }
        let mut c: [BigRational; 4] = Default::default();
        for (slot, p) in c.iter_mut().zip(parts) {
            *slot = parse_rational(p.as_ref())?;
        }
        Some(Cyclotomic8 { c })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl fmt::Debug for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "ζ", "ζ²", "ζ³"];
        let mut first = true;
        for (c, unit) in self.c.iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if unit.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{unit}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic8 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic8 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        Cyclotomic8::from_strings(&parts)
            .ok_or_else(|| D::Error::custom("expected 4 rational strings \"p/q\""))
    }
}

impl From<i64> for Cyclotomic8 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for Cyclotomic8 {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn add(self, rhs: &Cyclotomic8) -> Cyclotomic8 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Cyclotomic8 {
    type Output = Cyclotomic8;
    fn add(mut self, rhs: Cyclotomic8) -> Cyclotomic8 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Cyclotomic8> for Cyclotomic8 {
    fn add_assign(&mut self, rhs: &Cyclotomic8) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn sub(self, rhs: &Cyclotomic8) -> Cyclotomic8 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Cyclotomic8 {
    type Output = Cyclotomic8;
    fn sub(mut self, rhs: Cyclotomic8) -> Cyclotomic8 {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Cyclotomic8> for Cyclotomic8 {
    fn sub_assign(&mut self, rhs: &Cyclotomic8) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
    }
}

impl Neg for Cyclotomic8 {
    type Output = Cyclotomic8;
    fn neg(self) -> Cyclotomic8 {
        Cyclotomic8 { c: self.c.map(|x| -x) }
    }
}

impl Neg for &Cyclotomic8 {
    type Output = Cyclotomic8;
    fn neg(self) -> Cyclotomic8 {
        -self.clone()
    }
}

impl<'a> Mul<&'a Cyclotomic8> for &'a Cyclotomic8 {
    type Output = Cyclotomic8;
    fn mul(self, rhs: &Cyclotomic8) -> Cyclotomic8 {
        // ζ⁴ = −1 folds degree 4..6 terms back with a sign flip.
        let mut out: [BigRational; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let e = i + j;
                if e < 4 {
                    out[e] += p;
                } else {
                    out[e - 4] -= p;
                }
            }
        }
        Cyclotomic8 { c: out }
    }
}

impl Mul for Cyclotomic8 {
    type Output = Cyclotomic8;
    fn mul(self, rhs: Cyclotomic8) -> Cyclotomic8 {
        &self * &rhs
    }
}

impl MulAssign<&Cyclotomic8> for Cyclotomic8 {
    fn mul_assign(&mut self, rhs: &Cyclotomic8) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Cyclotomic8 {
    fn sum<I: Iterator<Item = Cyclotomic8>>(iter: I) -> Self {
        iter.fold(Cyclotomic8::zero(), |acc, x| acc + x)
    }
}
