//! Smallest stabilizer sets whose span contains the symmetric subspace.

use serde::{Deserialize, Serialize};

use super::{exact_rank, in_span, RankError};
use crate::exactnum::Cyclotomic8;
use crate::stabset::{shared_dictionary, StabilizerState};

/// `Σ_{|x|=k} e_x` for `k = 0..=n`.
pub fn symmetric_basis_vectors(n: usize) -> Vec<Vec<Cyclotomic8>> {
    (0..=n)
        .map(|k| {
            (0..1usize << n)
                .map(|x| if x.count_ones() as usize == k { Cyclotomic8::one() } else { Cyclotomic8::zero() })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricSpanResult {
    pub n: usize,
    /// Size of the witness set.
    pub value: usize,
    /// `n + 1`, the dimension of the symmetric subspace.
    pub lower_bound: usize,
    /// True when `value == lower_bound`, so the witness is optimal.
    pub exact: bool,
    pub witness: Vec<usize>,
    pub states: Vec<StabilizerState>,
}

/// Permutation-invariant stabilizer states lie in the symmetric subspace,
/// so `n + 1` independent ones span it and meet the dimension bound.
/// Otherwise the set is grown greedily until every symmetric basis vector
/// is in its span, and only the bound `n + 1` is certified.
pub fn min_spanning_symmetric(n: usize) -> Result<SymmetricSpanResult, RankError> {
    let dict = shared_dictionary(n, false)?;
    let targets = symmetric_basis_vectors(n);
    let mut chosen: Vec<usize> = Vec::new();
    let mut vecs: Vec<Vec<Cyclotomic8>> = Vec::new();
    for i in 0..dict.len() {
        if chosen.len() == n + 1 {
            break;
        }
        let codes = dict.codes(i);
        let symmetric = (0..codes.len()).all(|x| {
            let w = x.count_ones();
            let canon = (1usize << w) - 1;
            codes[x] == codes[canon]
        });
        if !symmetric {
            continue;
        }
        vecs.push(dict.amplitudes(i));
        if exact_rank(&vecs) == vecs.len() {
            chosen.push(i);
        } else {
            vecs.pop();
        }
    }
    let spans = |set: &[usize]| targets.iter().all(|t| in_span(t, dict, set).is_some());
    if !spans(&chosen) {
        for i in 0..dict.len() {
            if spans(&chosen) {
                break;
            }
            if chosen.contains(&i) {
                continue;
            }
            vecs.push(dict.amplitudes(i));
            if exact_rank(&vecs) == vecs.len() {
                chosen.push(i);
            } else {
                vecs.pop();
            }
        }
        chosen.sort_unstable();
    }
    let states = chosen.iter().map(|&i| dict.get(i).clone()).collect();
    Ok(SymmetricSpanResult {
        n,
        value: chosen.len(),
        lower_bound: n + 1,
        exact: chosen.len() == n + 1,
        witness: chosen,
        states,
    })
}
