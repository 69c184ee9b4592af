use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabrank::boundscalc::{
    hard_state, hard_state_certificate, longest_exp_subsequence, moulton_trials, qubit_power_certificate, rank_lower_bound,
    truncation_distance, truncation_distance_direct, verify_subset_sum,
};
use stabrank::exactnum::Cyclotomic8;
use stabrank::ranksearch::{search_rank, SearchOptions};
use stabrank::stabset::shared_dictionary;

fn gaussian(re: i64, im: i64) -> Cyclotomic8 {
    Cyclotomic8::from_ints([re, 0, im, 0])
}

/// O(m²) longest chain over the sorted distinct squared magnitudes, each at
/// least 4× the previous.
fn dp_longest(mags: &[i64]) -> usize {
    let mut v: Vec<i64> = mags.iter().copied().filter(|&m| m > 0).collect();
    v.sort_unstable();
    v.dedup();
    let mut best = vec![1usize; v.len()];
    for i in 0..v.len() {
        for j in 0..i {
            if v[i] >= 4 * v[j] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn greedy_chain_matches_dp(entries in prop::collection::vec((-40i64..=40, -40i64..=40), 1..=50)) {
        prop_assume!(entries.iter().any(|&(a, b)| a != 0 || b != 0));
        let coords: Vec<Cyclotomic8> = entries.iter().map(|&(a, b)| gaussian(a, b)).collect();
        let mags: Vec<i64> = entries.iter().map(|&(a, b)| a * a + b * b).collect();
        let cert = longest_exp_subsequence(&coords).unwrap();
        prop_assert!(cert.verify(&coords));
        prop_assert_eq!(cert.p, dp_longest(&mags));
    }
}

#[test]
fn moulton_suite() {
    for p in [4, 8, 16] {
        let report = moulton_trials(p, 10_000, 42).unwrap();
        assert_eq!(report.trials, 10_000);
        assert!(report.counterexamples.is_empty(), "p = {p}: {:?}", report.counterexamples.first());
        assert!((report.max_len as f64) < p as f64 / (p as f64).log2());
    }
}

#[test]
fn subset_sum_examples() {
    let ints = |xs: &[i64]| xs.iter().map(|&x| Cyclotomic8::from_int(x)).collect::<Vec<_>>();
    let w = verify_subset_sum(&ints(&[1, 2, 3]), &ints(&[1, 2])).unwrap().unwrap();
    assert_eq!(w.subsets[2], vec![0, 1]);
    assert!(verify_subset_sum(&ints(&[1, 2, 4]), &ints(&[1, 2])).unwrap().is_none());
    // Length exactly log₂-sized representation succeeds: (1,2,4) from itself.
    assert!(verify_subset_sum(&ints(&[1, 2, 4, 7]), &ints(&[1, 2, 4])).unwrap().is_some());
    assert!(verify_subset_sum(&ints(&[1]), &ints(&[1; 25])).is_err());
}

#[test]
fn truncation_formula_matches_direct_norm() {
    for n in 1..=10 {
        for k in 1..=1usize << n {
            let f = truncation_distance(n, k).unwrap();
            let d = truncation_distance_direct(n, k).unwrap();
            assert!((f - d).abs() <= 1e-12, "n = {n}, k = {k}: {f} vs {d}");
        }
    }
}

#[test]
fn certificates_verify_independently() {
    for n in 1..=8 {
        let psi = hard_state(n).unwrap();
        let cert = hard_state_certificate(n).unwrap();
        assert!(cert.verify(&psi));
        assert_eq!(cert.p, 1 << n);
    }
    let s = &Cyclotomic8::sqrt2() + &Cyclotomic8::one();
    for n in 1..=10 {
        let cert = qubit_power_certificate(&Cyclotomic8::one(), &s, n).unwrap();
        let psi: Vec<Cyclotomic8> = (0..1usize << n).map(|x| s.pow(x.count_ones())).collect();
        assert!(cert.verify(&psi));
        assert_eq!(cert.p, n + 1);
    }
}

fn exact_rank_of(psi: &[Cyclotomic8]) -> usize {
    let n = psi.len().trailing_zeros() as usize;
    let d = shared_dictionary(n, false).unwrap();
    search_rank(d, psi, &SearchOptions::default()).unwrap().rank.unwrap()
}

#[test]
fn lower_bound_never_exceeds_exact_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut targets: Vec<Vec<Cyclotomic8>> = Vec::new();
    for n in 1..=2 {
        for _ in 0..40 {
            let v: Vec<Cyclotomic8> = (0..1 << n).map(|_| gaussian(rng.gen_range(-9..=9), rng.gen_range(-9..=9))).collect();
            if v.iter().any(|c| !c.is_zero()) {
                targets.push(v);
            }
        }
        targets.push(hard_state(n).unwrap());
    }
    // Three qubits: sums of two dictionary states, and T^{⊗3}.
    let d3 = shared_dictionary(3, false).unwrap();
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(0..d3.len()), rng.gen_range(0..d3.len()));
        let c = gaussian(rng.gen_range(1..=9), rng.gen_range(-9..=9));
        let v: Vec<Cyclotomic8> = d3.amplitudes(a).iter().zip(d3.amplitudes(b)).map(|(x, y)| x + &(&c * &y)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            targets.push(v);
        }
    }
    targets.push((0..8usize).map(|x| Cyclotomic8::zeta_pow(x.count_ones() as i64)).collect());
    for psi in &targets {
        let lb = rank_lower_bound(psi).unwrap();
        assert!(lb.ceil as usize <= exact_rank_of(psi), "{psi:?}");
    }
}
