//! Unpruned reference search: every `r`-subset in lexicographic order.

use num_complex::Complex64;

use super::{dimension_of, in_span, Decomposition, RankError, RankResult};
use crate::exactnum::Cyclotomic8;
use crate::stabset::StabDictionary;

const RESIDUAL_TOL: f64 = 1e-6;

/// Same contract as [`super::search_rank`] without pruning or exchange
/// tricks; the float filter is a plain least-squares residual. Only the
/// result is reported, `levels` stays empty.
pub fn naive_rank(dict: &StabDictionary, psi: &[Cyclotomic8], max_r: Option<usize>) -> Result<RankResult, RankError> {
    let n = dimension_of(psi)?;
    if n != dict.n() {
        return Err(RankError::DimensionMismatch { expected: 1 << dict.n(), got: psi.len() });
    }
    let dim = 1usize << n;
    let max_r = max_r.unwrap_or(dim).max(1);
    let target: Vec<Complex64> = psi.iter().map(|c| c.to_complex()).collect();
    let tnorm = target.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let cols: Vec<Vec<Complex64>> = (0..dict.len())
        .map(|i| dict.amplitudes(i).iter().map(|c| c.to_complex()).collect())
        .collect();
    for r in 1..=max_r.min(dict.len()) {
        let mut idx: Vec<usize> = (0..r).collect();
        loop {
            if residual(&target, &idx, &cols) <= RESIDUAL_TOL * tnorm {
                if let Some(c) = in_span(psi, dict, &idx) {
                    if c.iter().all(|x| !x.is_zero()) {
                        let w = Decomposition::from_indices(dict, &idx, c);
                        return Ok(RankResult { rank: Some(r), lower_bound: r, witness: Some(w), levels: vec![] });
                    }
                }
            }
            if !next_combination(&mut idx, dict.len()) {
                break;
            }
        }
    }
    Ok(RankResult { rank: None, lower_bound: max_r + 1, witness: None, levels: vec![] })
}

/// Distance from `target` to the span of the chosen columns, by modified
/// Gram–Schmidt.
fn residual(target: &[Complex64], idx: &[usize], cols: &[Vec<Complex64>]) -> f64 {
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(idx.len());
    for &i in idx {
        let mut v = cols[i].clone();
        for b in &q {
            let d: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= d * y;
            }
        }
        let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nv > 1e-9 {
            q.push(v.into_iter().map(|z| z / nv).collect());
        }
    }
    let mut t = target.to_vec();
    for b in &q {
        let d: Complex64 = b.iter().zip(&t).map(|(x, y)| x.conj() * y).sum();
        for (x, y) in t.iter_mut().zip(b) {
            *x -= d * y;
        }
    }
    t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else { return false };
    idx[i] += 1;
    for j in i + 1..r {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }
}
