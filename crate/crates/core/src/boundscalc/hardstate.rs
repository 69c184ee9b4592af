use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use super::{longest_exp_subsequence, out_of_range, BoundError, ExpSubseqCertificate};
use crate::chform::reverse_bits;
use crate::exactnum::{rational_to_f64, Cyclotomic8};

/// Largest `n` for the streamed hard state and truncation formulas.
pub const MAX_HARD_N: usize = 20;
/// Largest `n` for which the dense hard state is materialized.
pub const MAX_DENSE_HARD_N: usize = 12;

/// `⊗_{i=1}^{n} (e₀ + 2^{2^{i−1}} e₁)` with qubit 1 leftmost: coordinate `x`
/// equals `2^{e(x)}` where `e(x)` is `x` with its `n` bits reversed.
pub fn hard_state_exponents(n: usize) -> Result<impl Iterator<Item = (usize, u64)>, BoundError> {
    if n == 0 || n > MAX_HARD_N {
        return Err(out_of_range("n", format!("1 ≤ n ≤ {MAX_HARD_N}"), n));
    }
    Ok((0..1usize << n).map(move |x| (x, reverse_bits(x as u64, n))))
}

/// Dense hard state as exact integers, `n ≤ 12`.
pub fn hard_state(n: usize) -> Result<Vec<Cyclotomic8>, BoundError> {
    if n == 0 || n > MAX_DENSE_HARD_N {
        return Err(out_of_range("n", format!("1 ≤ n ≤ {MAX_DENSE_HARD_N}"), n));
    }
    Ok(hard_state_exponents(n)?
        .map(|(_, e)| Cyclotomic8::from_rational(BigRational::from_integer(BigInt::from(BigUint::one() << e))))
        .collect())
}

/// Longest chain for the hard state. Exact over the dense vector for
/// `n ≤ 12`; beyond that from the exponents, since `|2^a| ≥ 2·|2^b|` iff
/// `a ≥ b + 1`.
pub fn hard_state_certificate(n: usize) -> Result<ExpSubseqCertificate, BoundError> {
    if n <= MAX_DENSE_HARD_N {
        return longest_exp_subsequence(&hard_state(n)?);
    }
    let mut by_exp: Vec<(u64, usize)> = hard_state_exponents(n)?.map(|(x, e)| (e, x)).collect();
    by_exp.sort_unstable();
    let mut indices = Vec::new();
    let mut next = 0u64;
    for (e, x) in by_exp {
        if e >= next {
            indices.push(x);
            next = e + 1;
        }
    }
    Ok(ExpSubseqCertificate { p: indices.len(), indices })
}

/// The `k` largest coordinates of the hard state as `(index, exponent)`,
/// largest first; every other coordinate is zero.
pub fn truncation_state(n: usize, k: usize) -> Result<Vec<(usize, u64)>, BoundError> {
    check_nk(n, k)?;
    let total = 1u64 << n;
    Ok((0..k as u64).map(|j| {
        let e = total - 1 - j;
        (reverse_bits(e, n) as usize, e)
    })
    .collect())
}

fn check_nk(n: usize, k: usize) -> Result<(), BoundError> {
    if n == 0 || n > MAX_HARD_N {
        return Err(out_of_range("n", format!("1 ≤ n ≤ {MAX_HARD_N}"), n));
    }
    if k == 0 || k > 1 << n {
        return Err(out_of_range("k", format!("1 ≤ k ≤ {}", 1u64 << n), k));
    }
    Ok(())
}

/// `c_i = Σ_{j=0}^{i} 4^j = (4^{i+1} − 1)/3`, with `c_{−1} = 0`.
fn partial_sum(i: i64) -> BigUint {
    if i < 0 {
        return BigUint::default();
    }
    ((BigUint::one() << (2 * (i as usize + 1))) - 1u32) / 3u32
}

/// Distance between the normalized hard state and its normalized `k`-term
/// truncation. With tail weight `t = c_{N−k−1}/c_{N−1}` (`N = 2ⁿ`), the
/// squared distance is `t + (1 − √(1−t))²`; the second term is evaluated as
/// `(t/(1+√(1−t)))²` to avoid cancellation.
pub fn truncation_distance(n: usize, k: usize) -> Result<f64, BoundError> {
    check_nk(n, k)?;
    let total = 1i64 << n;
    let tail = BigRational::new(partial_sum(total - k as i64 - 1).into(), partial_sum(total - 1).into());
    let t = rational_to_f64(&tail);
    let s = t / (1.0 + (1.0 - t).sqrt());
    Ok((t + s * s).sqrt())
}

/// The same distance from the two normalized vectors directly (coordinates
/// rescaled by the largest one, `n ≤ 10`).
pub fn truncation_distance_direct(n: usize, k: usize) -> Result<f64, BoundError> {
    check_nk(n, k)?;
    if n > 10 {
        return Err(out_of_range("n", "1 ≤ n ≤ 10", n));
    }
    let total = 1i32 << n;
    // Coordinates 2^{e − (N−1)}, sorted so the kept ones come last.
    let coords: Vec<f64> = (0..total).map(|e| 2f64.powi(e - (total - 1))).collect();
    let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
    let kept = &coords[(total as usize - k)..];
    let knorm = kept.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut d2 = 0.0;
    for (e, c) in coords.iter().enumerate() {
        let a = c / norm;
        let b = if e >= total as usize - k { c / knorm } else { 0.0 };
        d2 += (a - b) * (a - b);
    }
    Ok(d2.sqrt())
}

/// Least `k` whose truncation is within `delta`; the truncation is a sum
/// of `k` basis states, so it bounds the `delta`-approximate rank.
pub fn approx_rank_upper(n: usize, delta: f64) -> Result<usize, BoundError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(out_of_range("delta", "delta > 0", delta));
    }
    check_nk(n, 1)?;
    for k in 1..=1usize << n {
        if truncation_distance(n, k)? < delta {
            return Ok(k);
        }
    }
    Ok(1 << n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_hard_states() {
        assert_eq!(hard_state(1).unwrap(), vec![Cyclotomic8::from_int(1), Cyclotomic8::from_int(2)]);
        let mut e: Vec<u64> = hard_state_exponents(3).unwrap().map(|(_, e)| e).collect();
        e.sort_unstable();
        assert_eq!(e, (0..8).collect::<Vec<_>>());
        // Qubit 1 carries 2, qubit 2 carries 4, qubit 3 carries 16.
        let h = hard_state(3).unwrap();
        assert_eq!(h[0b100], Cyclotomic8::from_int(2));
        assert_eq!(h[0b010], Cyclotomic8::from_int(4));
        assert_eq!(h[0b001], Cyclotomic8::from_int(16));
        assert!(hard_state(13).is_err());
        assert_eq!(hard_state_certificate(3).unwrap().p, 8);
        assert_eq!(hard_state_certificate(14).unwrap().p, 1 << 14);
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncation_distance(4, 16).unwrap(), 0.0);
        assert!((truncation_distance(4, 1).unwrap() - 0.5176).abs() < 1e-4);
        assert!((truncation_distance(4, 2).unwrap() - 0.2520).abs() < 1e-4);
        assert_eq!(approx_rank_upper(4, 0.6).unwrap(), 1);
        assert_eq!(approx_rank_upper(4, 0.3).unwrap(), 2);
        assert_eq!(approx_rank_upper(7, 2f64.sqrt()).unwrap(), 1);
        assert!(approx_rank_upper(4, 0.0).is_err());
        assert!(truncation_distance(4, 17).is_err());
        let t = truncation_state(3, 2).unwrap();
        assert_eq!(t, vec![(7, 7), (0b011, 6)]);
    }
}
