use serde::{Deserialize, Serialize};

use super::{out_of_range, BoundError};
use crate::exactnum::{Cyclotomic8, RealQuadratic};

/// Parameters of the approximate-rank lower bound for `(e₀ + αe₁)^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxBoundParams {
    pub alpha: Cyclotomic8,
    /// Least `k` with `|α|^k > 2`.
    pub k: u64,
    /// `2/|α|^k`, in `(0, 1)`.
    pub lambda: f64,
    /// `1/√(1+|α|²)`.
    pub beta: f64,
    /// `|α|/√(1+|α|²)`.
    pub gamma: f64,
}

impl ApproxBoundParams {
    pub fn new(alpha: &Cyclotomic8) -> Result<Self, BoundError> {
        let m = alpha.magnitude_sq();
        if m <= RealQuadratic::from_ints(1, 0) {
            return Err(BoundError::AlphaTooSmall);
        }
        let four = RealQuadratic::from_ints(4, 0);
        let mut k = 1u64;
        let mut pow = m.clone();
        while pow <= four {
            pow = &pow * &m;
            k += 1;
        }
        let mag = m.to_f64().sqrt();
        let norm = (1.0 + m.to_f64()).sqrt();
        Ok(ApproxBoundParams {
            alpha: alpha.clone(),
            k,
            lambda: 2.0 / mag.powi(k as i32),
            beta: 1.0 / norm,
            gamma: mag / norm,
        })
    }
}

/// `√n / (2 log₂ n)`.
pub fn approx_lower_bound_value(n: u64) -> Result<f64, BoundError> {
    if n < 2 {
        return Err(out_of_range("n", "n ≥ 2", n));
    }
    let x = n as f64;
    Ok(x.sqrt() / (2.0 * x.log2()))
}
