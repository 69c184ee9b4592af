//! Rank of `ψ_α ⊗ ψ_α` for `ψ_α = e₀₀ + α(e₀₁ + e₁₀)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{search_rank, Decomposition, LevelStats, RankError, SearchOptions};
use crate::exactnum::Cyclotomic8;
use crate::stabset::shared_dictionary;

/// How far the lower-bound search goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    /// `χ(ψ_α) = 2` over the two-qubit dictionary.
    Rank1,
    /// Additionally exclude decompositions of `ψ_α^{⊗2}` with ≤ 2 terms.
    Pairs,
    /// Additionally exclude ≤ 3 terms (long running).
    Triples,
}

impl FromStr for Stage {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rank1" => Ok(Stage::Rank1),
            "pairs" => Ok(Stage::Pairs),
            "triples" => Ok(Stage::Triples),
            _ => Err(format!("unknown stage `{s}` (rank1, pairs, triples)")),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Rank1 => "rank1",
            Stage::Pairs => "pairs",
            Stage::Triples => "triples",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativityReport {
    pub alpha: Cyclotomic8,
    pub stage: Stage,
    /// `χ(ψ_α)` and its witness.
    pub single_rank: usize,
    pub single_witness: Decomposition,
    /// Certified bounds on `χ(ψ_α^{⊗2})`.
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// Product of the single-copy witness with itself.
    pub upper_witness: Decomposition,
    /// A decomposition of `ψ_α^{⊗2}` with fewer than 4 terms, if the
    /// search found one.
    pub small_witness: Option<Decomposition>,
    pub levels: Vec<LevelStats>,
}

impl MultiplicativityReport {
    /// Rank of the two-copy state, when the bounds meet.
    pub fn pair_rank(&self) -> Option<usize> {
        (self.lower_bound == self.upper_bound).then_some(self.lower_bound)
    }
}

/// `e₀₀ + α(e₀₁ + e₁₀)` in index order `00, 01, 10, 11`.
pub fn psi_alpha(alpha: &Cyclotomic8) -> Vec<Cyclotomic8> {
    vec![Cyclotomic8::one(), alpha.clone(), alpha.clone(), Cyclotomic8::zero()]
}

pub fn multiplicativity_check(alpha: &Cyclotomic8, stage: Stage, opts: &SearchOptions) -> Result<MultiplicativityReport, RankError> {
    if alpha.is_zero() {
        return Err(RankError::ZeroAlpha);
    }
    let psi = psi_alpha(alpha);
    let d2 = shared_dictionary(2, false)?;
    let single = search_rank(d2, &psi, &SearchOptions { max_r: Some(2), checkpoint: None, ..opts.clone() })?;
    let (Some(single_rank), Some(single_witness)) = (single.rank, single.witness) else {
        unreachable!("every two-qubit state has rank at most 2 over its support");
    };
    let d4 = shared_dictionary(4, false)?;
    let upper_witness = single_witness.tensor(&single_witness, Some(d4))?;
    let mut report = MultiplicativityReport {
        alpha: alpha.clone(),
        stage,
        single_rank,
        single_witness,
        lower_bound: 1,
        upper_bound: upper_witness.len(),
        upper_witness,
        small_witness: None,
        levels: vec![],
    };
    let max_r = match stage {
        Stage::Rank1 => return Ok(report),
        Stage::Pairs => 2,
        Stage::Triples => 3,
    };
    let two = report.single_witness.tensor(&report.single_witness, None)?.resum();
    let res = search_rank(d4, &two, &SearchOptions { max_r: Some(max_r), ..opts.clone() })?;
    report.levels = res.levels;
    match (res.rank, res.witness) {
        (Some(r), Some(w)) => {
            report.lower_bound = r;
            report.upper_bound = r;
            report.small_witness = Some(w);
        }
        _ => report.lower_bound = res.lower_bound,
    }
    Ok(report)
}
