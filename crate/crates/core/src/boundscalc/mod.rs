//! Rank lower bounds from exponentially increasing coordinates, the
//! subset-sum (Moulton) property behind them, explicit hard states, and
//! truncation-based approximate-rank upper bounds.

mod approx;
mod expseq;
mod hardstate;
mod moulton;

pub use approx::{approx_lower_bound_value, ApproxBoundParams};
pub use expseq::{
    longest_exp_subsequence, longest_exp_subsequence_stream, qubit_power_certificate, qubit_power_lower_bound,
    rank_lower_bound, t_power_lower_bound, ExpSubseqCertificate, LowerBound, QubitPowerBound,
};
pub use hardstate::{
    approx_rank_upper, hard_state, hard_state_certificate, hard_state_exponents, truncation_distance, truncation_distance_direct,
    truncation_state, MAX_DENSE_HARD_N, MAX_HARD_N,
};
pub use moulton::{moulton_trials, verify_subset_sum, MoultonReport, SubsetSumWitness, MAX_SUBSET_TERMS};

use thiserror::Error;

use crate::stabset::StabError;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("input has no nonzero coordinate")]
    ZeroVector,
    #[error("input list is empty")]
    Empty,
    #[error("state is a stabilizer state; the bound needs a non-stabilizer qubit")]
    StabilizerInput,
    #[error("expected a single-qubit state (2 amplitudes), got {0}")]
    NotAQubit(usize),
    #[error("no normalization with |alpha| > 1 found")]
    NoNormalization,
    #[error("|alpha| must exceed 1")]
    AlphaTooSmall,
    #[error("{what} must satisfy {range}, got {got}")]
    OutOfRange { what: &'static str, range: String, got: String },
    #[error("subset-sum scan limited to {max} terms, got {got}")]
    TooManyTerms { got: usize, max: usize },
    #[error(transparent)]
    Stab(#[from] StabError),
}

pub(crate) fn out_of_range(what: &'static str, range: impl Into<String>, got: impl ToString) -> BoundError {
    BoundError::OutOfRange { what, range: range.into(), got: got.to_string() }
}
