use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{out_of_range, BoundError};
use crate::exactnum::Cyclotomic8;

pub const MAX_SUBSET_TERMS: usize = 24;

/// `subsets[i]` lists the (0-based) `β` indices summing to `α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumWitness {
    pub q: usize,
    pub r: usize,
    pub subsets: Vec<Vec<usize>>,
}

/// Finds, for every `α_i`, a subset of `β` summing to it exactly.
pub fn verify_subset_sum(alpha: &[Cyclotomic8], beta: &[Cyclotomic8]) -> Result<Option<SubsetSumWitness>, BoundError> {
    let r = beta.len();
    if r > MAX_SUBSET_TERMS {
        return Err(BoundError::TooManyTerms { got: r, max: MAX_SUBSET_TERMS });
    }
    let mut subsets = Vec::with_capacity(alpha.len());
    for a in alpha {
        match find_subset(a, beta) {
            Some(mask) => subsets.push((0..r).filter(|j| mask >> j & 1 == 1).collect()),
            None => return Ok(None),
        }
    }
    Ok(Some(SubsetSumWitness { q: alpha.len(), r, subsets }))
}

/// Gray-code walk over all subsets: one addition or subtraction per step.
fn find_subset(target: &Cyclotomic8, beta: &[Cyclotomic8]) -> Option<u32> {
    let mut sum = Cyclotomic8::zero();
    let mut mask = 0u32;
    if sum == *target {
        return Some(0);
    }
    for step in 1u32..1 << beta.len() {
        let j = step.trailing_zeros() as usize;
        mask ^= 1 << j;
        if mask >> j & 1 == 1 {
            sum += &beta[j];
        } else {
            sum -= &beta[j];
        }
        if sum == *target {
            return Some(mask);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoultonReport {
    pub p: usize,
    pub trials: usize,
    pub seed: u64,
    /// Longest `β` tried: the largest `r < p/log₂ p`.
    pub max_len: usize,
    /// Trials whose `β` represented `(1, 2, …, 2^{p−1})`; expected empty.
    pub counterexamples: Vec<Vec<Cyclotomic8>>,
}

/// Random attempts to represent `(1, 2, …, 2^{p−1})` as subset sums of a
/// shorter tuple. Half the trials draw Gaussian rationals, half draw
/// adversarial dyadic entries (sums of random target powers).
pub fn moulton_trials(p: usize, trials: usize, seed: u64) -> Result<MoultonReport, BoundError> {
    if !(2..=MAX_SUBSET_TERMS).contains(&p) {
        return Err(out_of_range("p", format!("2 ≤ p ≤ {MAX_SUBSET_TERMS}"), p));
    }
    let limit = p as f64 / (p as f64).log2();
    let max_len = (1..p).take_while(|&r| (r as f64) < limit).last().unwrap_or(0);
    let alpha: Vec<Cyclotomic8> = (0..p).map(|i| Cyclotomic8::from_int(1 << i)).collect();
    let counterexamples: Vec<Vec<Cyclotomic8>> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let len = rng.gen_range(1..=max_len.max(1));
            let beta: Vec<Cyclotomic8> =
                (0..len).map(|_| if t % 2 == 0 { random_gaussian(&mut rng) } else { random_dyadic(&mut rng, p) }).collect();
            verify_subset_sum(&alpha, &beta).unwrap().map(|_| beta)
        })
        .collect();
    Ok(MoultonReport { p, trials, seed, max_len, counterexamples })
}

fn random_gaussian(rng: &mut ChaCha8Rng) -> Cyclotomic8 {
    let mut part = || {
        BigRational::new(BigInt::from(rng.gen_range(-40i64..=40)), BigInt::from(rng.gen_range(1i64..=4)))
    };
    let (re, im) = (part(), part());
    let im = if rng.gen_bool(0.5) { im } else { BigRational::from_integer(0.into()) };
    Cyclotomic8::from_gaussian(re, im)
}

fn random_dyadic(rng: &mut ChaCha8Rng, p: usize) -> Cyclotomic8 {
    let mut v = 0i64;
    while v == 0 {
        v = (0..p).filter(|_| rng.gen_bool(0.3)).map(|i| 1i64 << i).sum();
    }
    if rng.gen_bool(0.1) {
        v = -v;
    }
    Cyclotomic8::from_int(v)
}
