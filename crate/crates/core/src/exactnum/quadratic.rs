use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{format_rational, rational_to_f64};

/// `u + v·√2` with rational `u`, `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RealQuadratic {
    pub u: BigRational,
    pub v: BigRational,
}

impl RealQuadratic {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        RealQuadratic { u, v }
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        RealQuadratic {
            u: BigRational::from_integer(BigInt::from(u)),
            v: BigRational::from_integer(BigInt::from(v)),
        }
    }

    pub fn from_rational(u: BigRational) -> Self {
        RealQuadratic { u, v: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Exact sign, decided with rational arithmetic only.
    pub fn signum(&self) -> Ordering {
        let su = self.u.cmp(&BigRational::zero());
        let sv = self.v.cmp(&BigRational::zero());
        match (su, sv) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            // Mixed signs: compare u² against 2v².
            (su, _) => {
                let u2 = &self.u * &self.u;
                let v2 = &self.v * &self.v * BigRational::from_integer(BigInt::from(2));
                match u2.cmp(&v2) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => su,
                    Ordering::Less => su.reverse(),
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RealQuadratic::from_ints(1, 0);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.u) + std::f64::consts::SQRT_2 * rational_to_f64(&self.v)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn u_string(&self) -> String {
        format_rational(&self.u)
    }

    pub fn v_string(&self) -> String {
        format_rational(&self.v)
    }
}

impl Ord for RealQuadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for RealQuadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RealQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "{}√2", self.v)
        } else {
            write!(f, "{} + {}√2", self.u, self.v)
        }
    }
}

impl<'a> Add<&'a RealQuadratic> for &'a RealQuadratic {
    type Output = RealQuadratic;
    fn add(self, rhs: &RealQuadratic) -> RealQuadratic {
        RealQuadratic { u: &self.u + &rhs.u, v: &self.v + &rhs.v }
    }
}

impl<'a> Sub<&'a RealQuadratic> for &'a RealQuadratic {
    type Output = RealQuadratic;
    fn sub(self, rhs: &RealQuadratic) -> RealQuadratic {
        RealQuadratic { u: &self.u - &rhs.u, v: &self.v - &rhs.v }
    }
}

impl<'a> Mul<&'a RealQuadratic> for &'a RealQuadratic {
    type Output = RealQuadratic;
    fn mul(self, rhs: &RealQuadratic) -> RealQuadratic {
        let two = BigRational::from_integer(BigInt::from(2));
        RealQuadratic {
            u: &self.u * &rhs.u + two * &self.v * &rhs.v,
            v: &self.u * &rhs.v + &self.v * &rhs.u,
        }
    }
}

impl Add for RealQuadratic {
    type Output = RealQuadratic;
    fn add(self, rhs: RealQuadratic) -> RealQuadratic {
        &self + &rhs
    }
}

impl Mul for RealQuadratic {
    type Output = RealQuadratic;
    fn mul(self, rhs: RealQuadratic) -> RealQuadratic {
        &self * &rhs
    }
}

impl Neg for RealQuadratic {
    type Output = RealQuadratic;
    fn neg(self) -> RealQuadratic {
        RealQuadratic { u: -self.u, v: -self.v }
    }
}

impl std::iter::Sum for RealQuadratic {
    fn sum<I: Iterator<Item = RealQuadratic>>(iter: I) -> Self {
        iter.fold(RealQuadratic::zero(), |a, b| &a + &b)
    }
}
