use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{out_of_range, BoundError};
use crate::exactnum::{Cyclotomic8, RealQuadratic};
use crate::stabset::is_stabilizer;

/// Coordinates `i₁, …, i_p` with `|α_{i_{j+1}}| ≥ 2|α_{i_j}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpSubseqCertificate {
    pub indices: Vec<usize>,
    pub p: usize,
}

impl ExpSubseqCertificate {
    /// Re-checks the chain in squared form, `|α_{next}|² ≥ 4|α_{prev}|²`.
    pub fn verify(&self, coords: &[Cyclotomic8]) -> bool {
        let mags: Option<Vec<RealQuadratic>> =
            self.indices.iter().map(|&i| coords.get(i).filter(|c| !c.is_zero()).map(|c| c.magnitude_sq())).collect();
        let Some(mags) = mags else { return false };
        self.p == self.indices.len() && mags.windows(2).all(|w| w[1] >= four_times(&w[0]))
    }
}

fn four_times(m: &RealQuadratic) -> RealQuadratic {
    m * &RealQuadratic::from_ints(4, 0)
}

/// Longest chain, treating the coordinates as a multiset.
pub fn longest_exp_subsequence(coords: &[Cyclotomic8]) -> Result<ExpSubseqCertificate, BoundError> {
    if coords.is_empty() {
        return Err(BoundError::Empty);
    }
    longest_exp_subsequence_stream(coords.iter().enumerate().map(|(i, c)| (i, c.magnitude_sq())))
}

/// Same as [`longest_exp_subsequence`] over `(index, |αᵢ|²)` pairs, for
/// inputs too large to hold as a vector. Greedy over distinct magnitudes,
/// smallest first; each step takes the least magnitude at least 4× the last.
pub fn longest_exp_subsequence_stream(
    mags: impl IntoIterator<Item = (usize, RealQuadratic)>,
) -> Result<ExpSubseqCertificate, BoundError> {
    let mut first: BTreeMap<RealQuadratic, usize> = BTreeMap::new();
    for (i, m) in mags {
        if !m.is_zero() {
            first.entry(m).or_insert(i);
        }
    }
    let mut indices = Vec::new();
    let mut floor: Option<RealQuadratic> = None;
    for (m, &i) in &first {
        if floor.as_ref().is_none_or(|f| *m >= *f) {
            indices.push(i);
            floor = Some(four_times(m));
        }
    }
    if indices.is_empty() {
        return Err(BoundError::ZeroVector);
    }
    Ok(ExpSubseqCertificate { p: indices.len(), indices })
}

/// `p/(4 log₂ p)` with its exact ceiling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub p: u64,
    pub value: f64,
    pub ceil: u64,
}

impl LowerBound {
    /// `p = 1` gives the trivial bound 1.
    pub fn from_p(p: u64) -> LowerBound {
        if p <= 1 {
            return LowerBound { p, value: 1.0, ceil: 1 };
        }
        let value = p as f64 / (4.0 * (p as f64).log2());
        LowerBound { p, value, ceil: exact_ceil(p) }
    }
}

/// Least `m` with `m ≥ p/(4 log₂ p)`, i.e. `p^{4m} ≥ 2^p`.
fn exact_ceil(p: u64) -> u64 {
    let holds = |m: u64| BigUint::from(p).pow((4 * m) as u32) >= BigUint::one() << p;
    let guess = (p as f64 / (4.0 * (p as f64).log2())).ceil().max(1.0) as u64;
    let mut m = guess.saturating_sub(1).max(1);
    while !holds(m) {
        m += 1;
    }
    while m > 1 && holds(m - 1) {
        m -= 1;
    }
    m
}

pub fn rank_lower_bound(psi: &[Cyclotomic8]) -> Result<LowerBound, BoundError> {
    let cert = longest_exp_subsequence(psi)?;
    Ok(LowerBound::from_p(cert.p as u64))
}

/// Bound for `T^{⊗n}`, whose coordinates give a chain of length `n + 1`.
pub fn t_power_lower_bound(n: u64) -> Result<LowerBound, BoundError> {
    if n == 0 {
        return Err(out_of_range("n", "n ≥ 1", n));
    }
    Ok(LowerBound::from_p(n + 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitPowerBound {
    /// Which of `I, X, H, XH` produced `tau`.
    pub transform: String,
    /// `tau = e₀ + α e₁`.
    pub tau: [Cyclotomic8; 2],
    pub alpha: Cyclotomic8,
    /// Least `k` with `|α|^k ≥ 2`.
    pub k: u64,
    /// Bound with `p = ⌊n/k⌋ + 1`.
    pub bound: LowerBound,
}

/// Normalizes a non-stabilizer qubit to `e₀ + αe₁` with `|α| > 1` by the
/// first of `I, X, H, XH` that works, then bounds `χ(ψ^{⊗n})`.
pub fn qubit_power_lower_bound(psi: &[Cyclotomic8], n: u64) -> Result<QubitPowerBound, BoundError> {
    if psi.len() != 2 {
        return Err(BoundError::NotAQubit(psi.len()));
    }
    if n == 0 {
        return Err(out_of_range("n", "n ≥ 1", n));
    }
    if psi.iter().all(Cyclotomic8::is_zero) {
        return Err(BoundError::ZeroVector);
    }
    if is_stabilizer(psi)?.is_some() {
        return Err(BoundError::StabilizerInput);
    }
    let (a, b) = (&psi[0], &psi[1]);
    // H up to the irrelevant 1/√2.
    let (ha, hb) = (a + b, a - b);
    let candidates = [("I", a.clone(), b.clone()), ("X", b.clone(), a.clone()), ("H", ha.clone(), hb.clone()), ("XH", hb, ha)];
    let one = RealQuadratic::from_ints(1, 0);
    for (name, t0, t1) in candidates {
        let Some(alpha) = t1.checked_div(&t0) else { continue };
        let m = alpha.magnitude_sq();
        if m > one {
            let four = RealQuadratic::from_ints(4, 0);
            let mut k = 1u64;
            let mut pow = m.clone();
            while pow < four {
                pow = &pow * &m;
                k += 1;
            }
            let bound = LowerBound::from_p(n / k + 1);
            let tau = [Cyclotomic8::one(), alpha.clone()];
            return Ok(QubitPowerBound { transform: name.to_string(), tau, alpha, k, bound });
        }
    }
    Err(BoundError::NoNormalization)
}

/// Certificate for `(c₀e₀ + c₁e₁)^{⊗n}` without building the vector:
/// coordinate `x` has magnitude `|c₀|^{2(n−w)}|c₁|^{2w}`, `w = |x|`.
pub fn qubit_power_certificate(c0: &Cyclotomic8, c1: &Cyclotomic8, n: usize) -> Result<ExpSubseqCertificate, BoundError> {
    if n == 0 || n > super::MAX_HARD_N {
        return Err(out_of_range("n", format!("1 ≤ n ≤ {}", super::MAX_HARD_N), n));
    }
    let (m0, m1) = (c0.magnitude_sq(), c1.magnitude_sq());
    let by_weight: Vec<RealQuadratic> = (0..=n as u32).map(|w| &m0.pow(n as u32 - w) * &m1.pow(w)).collect();
    longest_exp_subsequence_stream((0..1usize << n).map(|x| (x, by_weight[x.count_ones() as usize].clone())))
}
