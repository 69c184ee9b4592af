//! Exact stabilizer rank by exhaustive search over the stabilizer dictionary.
//!
//! Levels `r = 1, 2, …` are searched in order, so a hit at level `r` is a
//! minimum-size decomposition. Within a level, the engine walks
//! `(r−1)`-prefixes in lexicographic order; for each prefix `P` it finds the
//! dictionary states lying in `span(ψ, P)` with a nonzero `ψ` component.
//! Those are exactly the completions `σ` with `ψ ∈ span(P ∪ {σ})`. The first
//! hit is therefore the lexicographically least witness. Floating point
//! proposes candidates; every reported witness is confirmed over ℚ(ζ₈).

mod checkpoint;
mod engine;
mod exact;
mod multiplicativity;
mod naive;
mod symmetric;

pub use engine::{search_rank, SearchOptions};
pub use exact::{exact_rank, solve_exact};
pub use multiplicativity::{multiplicativity_check, psi_alpha, MultiplicativityReport, Stage};
pub use naive::naive_rank;
pub use symmetric::{min_spanning_symmetric, symmetric_basis_vectors, SymmetricSpanResult};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Cyclotomic8;
use crate::stabset::{shared_dictionary, StabDictionary, StabError, StabilizerState};

#[derive(Debug, Error)]
pub enum RankError {
    #[error("target is the zero vector")]
    ZeroVector,
    #[error("target length {got} does not match the {expected}-entry dictionary vectors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dictionary is empty")]
    EmptyDictionary,
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Stab(#[from] StabError),
}

/// One term `c·σ` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Cyclotomic8,
    pub stabilizer: StabilizerState,
    #[serde(skip)]
    pub index: Option<usize>,
}

/// `Σ cᵢ σᵢ`, terms ordered by dictionary index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// Builds from dictionary indices and coefficients, sorted by index.
    pub fn from_indices(dict: &StabDictionary, indices: &[usize], coeffs: Vec<Cyclotomic8>) -> Self {
        let mut terms: Vec<Term> = indices
            .iter()
            .zip(coeffs)
            .map(|(&i, c)| Term { coeff: c, stabilizer: dict.get(i).clone(), index: Some(i) })
            .collect();
        terms.sort_by_key(|t| t.index);
        Decomposition { n: dict.n(), terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn indices(&self) -> Vec<Option<usize>> {
        self.terms.iter().map(|t| t.index).collect()
    }

    /// The dense vector `Σ cᵢ σᵢ`.
    pub fn resum(&self) -> Vec<Cyclotomic8> {
        let mut out = vec![Cyclotomic8::zero(); 1 << self.n];
        for t in &self.terms {
            for (x, code) in t.stabilizer.amplitude_codes().into_iter().enumerate() {
                if code != 0 {
                    out[x] += &t.coeff.mul_zeta_pow(2 * (code as i64 - 1));
                }
            }
        }
        out
    }

    /// Exact re-summation check plus the structural invariants.
    pub fn verify(&self, target: &[Cyclotomic8]) -> bool {
        let nonzero = self.terms.iter().all(|t| !t.coeff.is_zero());
        let increasing = self.terms.windows(2).all(|w| match (w[0].index, w[1].index) {
            (Some(a), Some(b)) => a < b,
            _ => w[0].stabilizer < w[1].stabilizer,
        });
        nonzero && increasing && self.resum() == target
    }

    /// Term-wise tensor product; terms re-sorted by dictionary index when
    /// `dict` is given.
    pub fn tensor(&self, other: &Decomposition, dict: Option<&StabDictionary>) -> Result<Decomposition, StabError> {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let s = a.stabilizer.tensor(&b.stabilizer)?;
                let index = dict.and_then(|d| d.index_of(&s));
                terms.push(Term { coeff: &a.coeff * &b.coeff, stabilizer: s, index });
            }
        }
        terms.sort_by(|x, y| x.index.cmp(&y.index).then_with(|| x.stabilizer.cmp(&y.stabilizer)));
        Ok(Decomposition { n: self.n + other.n, terms })
    }
}

/// Counters for one search level.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    pub r: usize,
    /// Full `(r−1)`-prefixes examined (including ones rejected as dependent).
    pub searched: u64,
    /// Full prefixes skipped by the support-cover rule.
    pub pruned: u64,
    /// Full prefixes skipped by the symmetry rule.
    pub symmetry_skipped: u64,
    /// Float candidates that reached exact confirmation.
    pub exact_checks: u64,
    /// True when the level ran to the end without a hit.
    pub complete: bool,
}

impl LevelStats {
    /// For a level searched to the end, every `(r−1)`-subset of the
    /// dictionary must be accounted for exactly once.
    pub fn recount_ok(&self, dict_len: usize) -> bool {
        !self.complete
            || num_integer::binomial(dict_len as u128, (self.r - 1) as u128)
                == (self.searched + self.pruned + self.symmetry_skipped) as u128
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    /// The rank if it is at most the searched maximum.
    pub rank: Option<usize>,
    /// Certified lower bound: `rank`, or `max_r + 1` when nothing was found.
    pub lower_bound: usize,
    pub witness: Option<Decomposition>,
    pub levels: Vec<LevelStats>,
}

/// Support-cover rule: if `psi = Σ cᵢσᵢ` with every `cᵢ ≠ 0`, the supports
/// cover `supp(psi)`, and no point outside it is covered exactly once (that
/// point would carry a single nonzero term).
pub fn cover_admissible(support: u64, masks: impl IntoIterator<Item = u64>) -> bool {
    let (c1, c2) = masks.into_iter().fold((0u64, 0u64), |(c1, c2), m| (c1 | m, c2 | (c1 & m)));
    support & !c1 == 0 && c1 & !c2 & !support == 0
}

/// Exact coefficients of `psi` in `span{σᵢ : i ∈ subset}`, if it lies there.
pub fn in_span(psi: &[Cyclotomic8], dict: &StabDictionary, subset: &[usize]) -> Option<Vec<Cyclotomic8>> {
    let cols: Vec<Vec<Cyclotomic8>> = subset.iter().map(|&i| dict.amplitudes(i)).collect();
    solve_exact(psi, &cols)
}

/// Stabilizer rank of `psi` over the complex or real dictionary, searching
/// sizes up to `max_r` (default `2ⁿ`).
pub fn stabilizer_rank(psi: &[Cyclotomic8], real_only: bool, max_r: Option<usize>) -> Result<RankResult, RankError> {
    let n = dimension_of(psi)?;
    let dict = shared_dictionary(n, real_only)?;
    let opts = SearchOptions { max_r, ..SearchOptions::default() };
    search_rank(dict, psi, &opts)
}

pub(crate) fn dimension_of(psi: &[Cyclotomic8]) -> Result<usize, RankError> {
    if !psi.len().is_power_of_two() || psi.len() < 2 {
        return Err(RankError::Stab(StabError::BadLength(psi.len())));
    }
    if psi.iter().all(Cyclotomic8::is_zero) {
        return Err(RankError::ZeroVector);
    }
    Ok(psi.len().trailing_zeros() as usize)
}
