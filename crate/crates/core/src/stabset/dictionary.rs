use std::collections::HashMap;
use std::ops::Range;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{code_to_value, StabError, StabilizerState};
use crate::exactnum::Cyclotomic8;
use crate::f2alg::{enumerate_affine_subspaces, gaussian_binomial, LinearFormF2, QuadraticFormF2};

pub const MAX_COMPLEX_N: usize = 4;
pub const MAX_REAL_N: usize = 5;

/// All stabilizer states of `n` qubits (or all real ones), in canonical
/// order: by subspace, then linear form, then quadratic form. States with a
/// common support are contiguous.
#[derive(Clone, Debug)]
pub struct StabDictionary {
    n: usize,
    real_only: bool,
    states: Vec<StabilizerState>,
    codes: Vec<u8>,
    support_masks: Vec<u64>,
    block_of: Vec<u32>,
    blocks: Vec<Range<usize>>,
    by_key: HashMap<u128, u32>,
}

/// Enumerates the dictionary for `n ≤ 4` (complex) or `n ≤ 5` (real).
pub fn enumerate_stabilizers(n: usize, real_only: bool) -> Result<StabDictionary, StabError> {
    let max = if real_only { MAX_REAL_N } else { MAX_COMPLEX_N };
    if n == 0 || n > max {
        return Err(StabError::NOutOfRange { n, max, what: "stabilizer enumeration" });
    }
    let subspaces = enumerate_affine_subspaces(n)?;
    let per_block: Vec<Vec<StabilizerState>> = subspaces
        .into_par_iter()
        .map(|a| {
            let k = a.dim();
            let linears: Vec<LinearFormF2> =
                if real_only { vec![LinearFormF2::zero(k)] } else { LinearFormF2::all(k).collect() };
            let mut block = Vec::with_capacity(linears.len() << QuadraticFormF2::entry_count(k));
            for l in &linears {
                for q in QuadraticFormF2::all(k) {
                    block.push(StabilizerState { subspace: a.clone(), linear: *l, quadratic: q });
                }
            }
            block.sort();
            block
        })
        .collect();

    let mut states = Vec::new();
    let mut blocks = Vec::with_capacity(per_block.len());
    let mut block_of = Vec::new();
    for (b, block) in per_block.into_iter().enumerate() {
        let start = states.len();
        block_of.extend(std::iter::repeat_n(b as u32, block.len()));
        states.extend(block);
        blocks.push(start..states.len());
    }
    let dim = 1usize << n;
    let codes: Vec<u8> = states.par_iter().flat_map_iter(|s| s.amplitude_codes()).collect();
    let support_masks: Vec<u64> = codes
        .chunks(dim)
        .map(|c| c.iter().enumerate().fold(0u64, |m, (x, &v)| if v != 0 { m | (1 << x) } else { m }))
        .collect();
    let by_key = codes.chunks(dim).enumerate().map(|(i, c)| (pack_key(c), i as u32)).collect();
    Ok(StabDictionary { n, real_only, states, codes, support_masks, block_of, blocks, by_key })
}

/// Process-wide cached dictionary; built on first use.
pub fn shared_dictionary(n: usize, real_only: bool) -> Result<&'static StabDictionary, StabError> {
    static COMPLEX: [OnceLock<StabDictionary>; MAX_COMPLEX_N] = [const { OnceLock::new() }; MAX_COMPLEX_N];
    static REAL: [OnceLock<StabDictionary>; MAX_REAL_N] = [const { OnceLock::new() }; MAX_REAL_N];
    let max = if real_only { MAX_REAL_N } else { MAX_COMPLEX_N };
    if n == 0 || n > max {
        return Err(StabError::NOutOfRange { n, max, what: "stabilizer enumeration" });
    }
    let cell = if real_only { &REAL[n - 1] } else { &COMPLEX[n - 1] };
    if let Some(d) = cell.get() {
        return Ok(d);
    }
    let d = enumerate_stabilizers(n, real_only)?;
    Ok(cell.get_or_init(|| d))
}

/// Packs compact amplitude codes, 3 bits each, into a lookup key.
pub(crate) fn pack_key(codes: &[u8]) -> u128 {
    debug_assert!(codes.len() <= 42);
    codes.iter().fold(0u128, |k, &c| (k << 3) | c as u128)
}

impl StabDictionary {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_real_only(&self) -> bool {
        self.real_only
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn get(&self, i: usize) -> &StabilizerState {
        &self.states[i]
    }

    pub fn states(&self) -> &[StabilizerState] {
        &self.states
    }

    /// Compact amplitude codes of state `i` (see [`StabilizerState::amplitude_code`]).
    pub fn codes(&self, i: usize) -> &[u8] {
        let d = 1 << self.n;
        &self.codes[i * d..(i + 1) * d]
    }

    pub fn amplitudes(&self, i: usize) -> Vec<Cyclotomic8> {
        self.codes(i).iter().map(|&c| code_to_value(c)).collect()
    }

    /// Bit `x` is set iff state `i` has a nonzero amplitude at `x`.
    pub fn support_mask(&self, i: usize) -> u64 {
        self.support_masks[i]
    }

    /// Index of the support block containing state `i`.
    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i] as usize
    }

    /// Index ranges of states sharing one support, in dictionary order.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// Finds the state with the given normalized codes (offset amplitude 1).
    pub fn lookup_codes(&self, codes: &[u8]) -> Option<usize> {
        if codes.len() != 1 << self.n {
            return None;
        }
        self.by_key.get(&pack_key(codes)).map(|&i| i as usize)
    }

    pub fn index_of(&self, s: &StabilizerState) -> Option<usize> {
        self.states.binary_search(s).ok()
    }
}

/// `|Stab_n|` (complex) or the number of real stabilizer states.
///
/// Complex: `2ⁿ ∏_{k=1}^{n} (2ᵏ+1)`. Real: `2ⁿ ∏_{k=1}^{n} (2^{k−1}+1)`,
/// which equals `Σ_k binom(n,k)₂ 2^{n−k} 2^{k(k+1)/2}` (all sign patterns
/// `(−1)^{q}` on every affine subspace).
pub fn count_stabilizers(n: usize, real_only: bool) -> BigUint {
    let shift = if real_only { 1 } else { 0 };
    (1..=n).fold(BigUint::one() << n, |acc, k| acc * ((BigUint::one() << (k - shift)) + 1u32))
}

/// `2ⁿ Σ_{k=0}^{n} binom(n,k)₂`. This counts only the diagonal sign
/// patterns per subspace and undercounts real stabilizer states for n ≥ 2.
pub fn real_count_gaussian_sum(n: usize) -> BigUint {
    (0..=n).map(|k| gaussian_binomial(n, k).unwrap()).sum::<BigUint>() << n
}
