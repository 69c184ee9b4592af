//! Exact stabilizer-rank toolkit: ℚ(ζ₈) arithmetic, stabilizer-state
//! enumeration, CH-form simulation, rank search, and rank bounds.

pub mod exactnum;
pub mod f2alg;
pub mod chform;
pub mod stabset;
pub mod ranksearch;
pub mod boundscalc;
pub mod genericrank;
pub mod tsim;

/// Worker count: `STABRANK_THREADS` if set to a positive integer, else the
/// available parallelism.
pub fn default_threads() -> usize {
    std::env::var("STABRANK_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
