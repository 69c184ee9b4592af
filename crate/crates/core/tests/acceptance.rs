//! Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL
//! line each. Runs without the libtest harness so the lines are always
//! printed; the process exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabrank::boundscalc::{
    hard_state_certificate, moulton_trials, qubit_power_certificate, rank_lower_bound, t_power_lower_bound, truncation_distance,
    truncation_distance_direct, LowerBound,
};
use stabrank::chform::{ch_amplitude, ch_apply, ch_init, simulate_dense, CHForm, CliffordGate};
use stabrank::exactnum::{Cyclotomic8, RealQuadratic};
use stabrank::f2alg::BitVector;
use stabrank::genericrank::{realify, subgeneric_count_bound};
use stabrank::ranksearch::{
    min_spanning_symmetric, multiplicativity_check, naive_rank, psi_alpha, search_rank, Decomposition, SearchOptions, Stage,
    Term,
};
use stabrank::stabset::{count_stabilizers, enumerate_stabilizers, real_count_gaussian_sum, shared_dictionary};
use stabrank::tsim::{amplitude, amplitude_with, gadgetize, simulate_dense_circuit, t_decomposition, t_state, Circuit, Gate, Method};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.1?}, limit {limit:?}"))
}

fn random_clifford(rng: &mut ChaCha8Rng, k: usize, len: usize) -> Vec<CliffordGate> {
    (0..len)
        .map(|_| {
            let a = rng.gen_range(0..k);
            let b = if k > 1 { (a + rng.gen_range(1..k)) % k } else { a };
            match rng.gen_range(0..if k > 1 { 6 } else { 4 }) {
                0 => CliffordGate::H(a),
                1 => CliffordGate::S(a),
                2 => CliffordGate::X(a),
                3 => CliffordGate::Z(a),
                4 => CliffordGate::Cz(a, b),
                _ => CliffordGate::Cnot(a, b),
            }
        })
        .collect()
}

fn random_t_circuit(rng: &mut ChaCha8Rng) -> Circuit {
    let k = rng.gen_range(1..=4);
    let t_max = rng.gen_range(0..=4);
    let len = rng.gen_range(0..=20);
    let mut gates: Vec<Gate> = random_clifford(rng, k, len).into_iter().map(Gate::Clifford).collect();
    for _ in 0..t_max {
        let at = rng.gen_range(0..=gates.len());
        gates.insert(at, Gate::T(rng.gen_range(0..k)));
    }
    Circuit { k, gates }
}

fn rank_of(psi: &[Cyclotomic8], real: bool) -> Option<usize> {
    let n = psi.len().trailing_zeros() as usize;
    search_rank(shared_dictionary(n, real).ok()?, psi, &SearchOptions::default()).ok()?.rank
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let complex: Vec<usize> = (1..=3).map(|n| enumerate_stabilizers(n, false).map(|d| d.len()).unwrap_or(0)).collect();
    let elapsed = start.elapsed();
    let formula = |n: usize| (1..=n as u32).fold(1u64 << n, |acc, k| acc * ((1u64 << k) + 1));
    ensure(complex == [6, 60, 1080], || format!("complex enumeration {complex:?}, expected [6, 60, 1080]"))?;
    ensure((1..=3).all(|n| formula(n) == complex[n - 1] as u64), || "complex product formula disagrees".into())?;
    ensure(count_stabilizers(4, false).to_string() == "36720" && formula(4) == 36720, || "n = 4 count is not 36720".into())?;
    within(elapsed, Duration::from_secs(10), "n ≤ 3 enumeration")?;
    let real: Vec<usize> = (1..=3).map(|n| enumerate_stabilizers(n, true).map(|d| d.len()).unwrap_or(0)).collect();
    let stated: Vec<String> = (1..=3).map(|n| real_count_gaussian_sum(n).to_string()).collect();
    let matches = (0..3).all(|i| real[i].to_string() == stated[i]) && stated == ["4", "20", "128"];
    ensure(matches, || {
        format!(
            "complex 6/60/1080 and n = 4 formula 36720 hold; real enumeration gives {real:?} but the stated \
             Gaussian-binomial sum gives {stated:?}"
        )
    })?;
    Ok(format!("complex {complex:?}, real {real:?}, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut amplitudes = 0usize;
    for i in 0..1000 {
        let k = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=50);
        let gates = random_clifford(&mut rng, k, len);
        let dense = simulate_dense(k, &gates);
        let form = gates.iter().fold(ch_init(&BitVector::zeros(k).unwrap()), ch_apply);
        for x in 0..1u32 << k {
            let a = ch_amplitude(&form, &BitVector::new(k, x).unwrap());
            ensure(a == dense[x as usize], || format!("circuit {i}: amplitude {x} differs ({a} vs {})", dense[x as usize]))?;
            amplitudes += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60), "suite")?;
    Ok(format!("1000 circuits, {amplitudes} amplitudes exact, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let one = RealQuadratic::from_ints(1, 0);
    let mut max_t = 0;
    for i in 0..200 {
        let c = random_t_circuit(&mut rng);
        max_t = max_t.max(c.t_count());
        let dense = simulate_dense_circuit(&c).map_err(|e| e.to_string())?;
        let mut total = RealQuadratic::zero();
        for x in 0..1u32 << c.k {
            let bv = BitVector::new(c.k, x).unwrap();
            let a = amplitude(&c, &bv, Method::Decomposition).map_err(|e| e.to_string())?;
            ensure(a == dense[x as usize], || format!("circuit {i}:\n{c}amplitude {x} differs"))?;
            total = &total + &a.magnitude_sq();
        }
        ensure(total == one, || format!("circuit {i}: probabilities sum to {total}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300), "suite")?;
    Ok(format!("200 circuits (T-count ≤ {max_t}), amplitudes exact, probabilities sum to 1, {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    let t1 = rank_of(&t_state(1), false);
    let t2 = rank_of(&t_state(2), false);
    ensure(t1 == Some(2), || format!("χ(T) = {t1:?}"))?;
    ensure(t2 == Some(2), || format!("χ(T⊗T) = {t2:?}"))?;
    let start = Instant::now();
    let psi = t_state(3);
    let res = search_rank(shared_dictionary(3, false).unwrap(), &psi, &SearchOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let t3 = res.rank.ok_or("no decomposition of T^{⊗3} found")?;
    let w = res.witness.ok_or("missing witness")?;
    ensure(w.verify(&psi) && w.len() == t3, || "witness does not re-sum".into())?;
    ensure(res.levels.iter().all(|l| l.recount_ok(1080)), || "level accounting does not cover every subset".into())?;
    let lb = rank_lower_bound(&psi).map_err(|e| e.to_string())?;
    ensure(lb.ceil as usize <= t3, || format!("lower bound {} exceeds χ = {t3}", lb.ceil))?;
    ensure(t3 <= 2 * 2, || format!("χ(T^{{⊗3}}) = {t3} > χ(T⊗T)·χ(T) = 4"))?;
    within(elapsed, Duration::from_secs(2 * 3600), "χ(T^{⊗3}) search")?;
    Ok(format!("χ(T) = 2, χ(T⊗T) = 2, χ(T^{{⊗3}}) = {t3} (lower bound {}, ≤ 4), {elapsed:.2?}", lb.ceil))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for p in [4usize, 8, 16] {
        let r = moulton_trials(p, 10_000, 42).map_err(|e| e.to_string())?;
        ensure(r.trials == 10_000, || "wrong trial count".into())?;
        ensure((r.max_len as f64) < p as f64 / (p as f64).log2(), || "trial length not below p/log₂ p".into())?;
        ensure(r.counterexamples.is_empty(), || format!("p = {p}: {} counterexamples", r.counterexamples.len()))?;
        parts.push(format!("p = {p}: 0/10000 (len ≤ {})", r.max_len));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(120), "suite")?;
    Ok(format!("{}, {elapsed:.2?}", parts.join("; ")))
}

fn criterion_6() -> Outcome {
    let t = t_power_lower_bound(255).map_err(|e| e.to_string())?;
    ensure((t.value - 8.0).abs() < 1e-12 && t.ceil == 8, || format!("n = 255 gives {} (ceil {})", t.value, t.ceil))?;
    for n in 1..=12usize {
        let cert = hard_state_certificate(n).map_err(|e| e.to_string())?;
        ensure(cert.p == 1 << n, || format!("hard state n = {n}: p = {}", cert.p))?;
        // ceil(2ⁿ / 4n) in integers.
        let expect = (1u64 << n).div_ceil(4 * n as u64);
        let b = LowerBound::from_p(cert.p as u64);
        ensure(b.ceil == expect, || format!("hard state n = {n}: bound {} vs {expect}", b.ceil))?;
    }
    let s = &Cyclotomic8::sqrt2() + &Cyclotomic8::one();
    for n in 1..=20 {
        let cert = qubit_power_certificate(&Cyclotomic8::one(), &s, n).map_err(|e| e.to_string())?;
        ensure(cert.p == n + 1, || format!("(e₀+(√2+1)e₁)^{{⊗{n}}}: p = {}", cert.p))?;
    }
    Ok("T bound at 255 = 8.0; hard states p = 2ⁿ with ceil(2ⁿ/4n) for n ≤ 12; (√2+1) powers p = n+1 for n ≤ 20".into())
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        for k in 1..=1usize << n {
            let f = truncation_distance(n, k).map_err(|e| e.to_string())?;
            let d = truncation_distance_direct(n, k).map_err(|e| e.to_string())?;
            worst = worst.max((f - d).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("formula vs direct differ by {worst:e}"))?;
    let oracle = (0.25 + (3f64.sqrt() / 2.0 - 1.0).powi(2)).sqrt();
    let d20 = truncation_distance(20, 1).map_err(|e| e.to_string())?;
    ensure((d20 - oracle).abs() <= 1e-12, || format!("k = 1, n = 20 distance {d20} vs limit {oracle}"))?;
    Ok(format!("max |formula − direct| = {worst:.1e} over n ≤ 10; k = 1 limit {d20:.6} ≈ {oracle:.6}"))
}

fn criterion_8() -> Outcome {
    let alpha = Cyclotomic8::from_int(2);
    let threads = stabrank::default_threads();
    let opts = SearchOptions { threads: Some(threads), ..SearchOptions::default() };

    let start = Instant::now();
    let r1 = multiplicativity_check(&alpha, Stage::Rank1, &opts).map_err(|e| e.to_string())?;
    let t_rank1 = start.elapsed();
    ensure(r1.single_rank == 2 && r1.single_witness.verify(&psi_alpha(&alpha)), || "χ(ψ_2) is not 2".into())?;
    within(t_rank1, Duration::from_secs(1), "rank1 stage")?;

    // Pruning soundness: pruned and unpruned searches agree on every
    // two-qubit dictionary state and on ψ_α for several α.
    let d2 = shared_dictionary(2, false).unwrap();
    let mut targets: Vec<Vec<Cyclotomic8>> = (0..d2.len()).map(|i| d2.amplitudes(i)).collect();
    targets.extend([1, 2, 3, -1].map(|a| psi_alpha(&Cyclotomic8::from_int(a))));
    targets.push(t_state(2));
    for psi in &targets {
        let pruned = search_rank(d2, psi, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let plain = search_rank(d2, psi, &SearchOptions { prune: false, ..SearchOptions::default() }).map_err(|e| e.to_string())?;
        let naive = naive_rank(d2, psi, None).map_err(|e| e.to_string())?;
        ensure(pruned.rank == plain.rank && pruned.witness == plain.witness && plain.rank == naive.rank, || {
            format!("pruned/unpruned disagree on {psi:?}")
        })?;
    }

    let start = Instant::now();
    let pairs = multiplicativity_check(&alpha, Stage::Pairs, &opts).map_err(|e| e.to_string())?;
    let t_pairs = start.elapsed();
    ensure(pairs.lower_bound >= 3, || format!("pairs stage lower bound {}", pairs.lower_bound))?;
    within(t_pairs, Duration::from_secs(2 * 3600), "pairs stage")?;

    let start = Instant::now();
    let triples = multiplicativity_check(&alpha, Stage::Triples, &opts).map_err(|e| e.to_string())?;
    let t_triples = start.elapsed();
    ensure(triples.levels.iter().all(|l| l.recount_ok(36720)), || "triples level accounting incomplete".into())?;
    ensure(triples.pair_rank() == Some(4), || {
        format!("χ(ψ_2^{{⊗2}}) bounds [{}, {}]", triples.lower_bound, triples.upper_bound)
    })?;
    within(t_triples, Duration::from_secs(8 * 3600), "triples stage")?;
    Ok(format!(
        "α = 2: χ(ψ) = 2 in {t_rank1:.2?}; pairs ≥ {} in {t_pairs:.2?}; triples χ(ψ^{{⊗2}}) = 4 in {t_triples:.1?} \
         ({threads} thread(s)); pruning sound on {} instances",
        pairs.lower_bound,
        targets.len()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let chi2 = min_spanning_symmetric(2).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(chi2.value == 3 && chi2.exact, || format!("χ₂ = {} (exact: {})", chi2.value, chi2.exact))?;
    within(elapsed, Duration::from_secs(60), "χ₂ computation")?;
    for n in 1..=3 {
        let r = min_spanning_symmetric(n).map_err(|e| e.to_string())?;
        ensure(r.value >= n + 1, || format!("χ_{n} = {} < n + 1", r.value))?;
    }

    let mut states = 0;
    for n in 1..=3 {
        for s in shared_dictionary(n, false).unwrap().states() {
            let amps = s.amplitudes().map_err(|e| e.to_string())?;
            let (re, rho) = realify(s);
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    let z = Cyclotomic8::from_ints([a, 0, b, 0]);
                    for x in 0..amps.len() {
                        let want = Cyclotomic8::from_int((a - b) * re[x] + b * rho[x]);
                        ensure((&z * &amps[x]).re() == want, || format!("realification fails on {s:?}"))?;
                    }
                }
            }
            states += 1;
        }
    }

    let d2 = shared_dictionary(2, false).unwrap();
    for i in 0..d2.len() {
        let psi = d2.amplitudes(i);
        let (c, r) = (rank_of(&psi, false), rank_of(&psi, true));
        let (Some(c), Some(r)) = (c, r) else { return Err(format!("rank missing for state {i}")) };
        ensure(c <= r && r <= 2 * c, || format!("state {i}: χ = {c}, χ^ℝ = {r}"))?;
    }

    let bound = subgeneric_count_bound(2, 3, false).map_err(|e| e.to_string())?;
    ensure(bound.to_string() == "3540", || format!("subgeneric bound {bound}"))?;
    Ok(format!(
        "χ₂ = 3 in {elapsed:.2?}; realification exact on {states} states; doubling on 60 states; subgeneric bound 3540"
    ))
}

fn criterion_10() -> Outcome {
    // Amplitude queries on random CH-forms of k qubits.
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut points = Vec::new();
    for k in (8..=64).step_by(8) {
        let mut form = CHForm::basis(k, 0);
        for g in random_clifford(&mut rng, k, 20 * k) {
            form.apply(&g);
        }
        let words: Vec<u64> = (0..4096).map(|_| rng.gen::<u64>() & (u64::MAX >> (64 - k))).collect();
        let mut best = f64::INFINITY;
        for _ in 0..5 {
            let start = Instant::now();
            let mut nonzero = 0usize;
            for _ in 0..4 {
                for &w in &words {
                    nonzero += !std::hint::black_box(form.amplitude_word(w)).is_zero() as usize;
                }
            }
            std::hint::black_box(nonzero);
            best = best.min(start.elapsed().as_secs_f64());
        }
        points.push((k as f64, best));
    }
    let slope = log_log_slope(&points);
    ensure(slope <= 2.5, || format!("amplitude query time exponent {slope:.2} > 2.5"))?;

    // Decomposition method at a fixed circuit: each term of an optimal
    // decomposition split into j equal parts, so the value is unchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut gates: Vec<Gate> = random_clifford(&mut rng, 6, 60).into_iter().map(Gate::Clifford).collect();
    for (i, q) in [(5, 0), (15, 2), (30, 4), (45, 1)] {
        gates.insert(i, Gate::T(q));
    }
    let c = Circuit { k: 6, gates };
    let g = gadgetize(&c);
    let base = t_decomposition(g.n).map_err(|e| e.to_string())?;
    let dense = simulate_dense_circuit(&c).map_err(|e| e.to_string())?;
    let outcomes: Vec<BitVector> = (0..64).map(|x| BitVector::new(6, x).unwrap()).collect();
    let mut timings = Vec::new();
    for j in [1usize, 2, 4, 8, 16, 32] {
        let inv = Cyclotomic8::from_int(j as i64).inv().unwrap();
        let terms: Vec<Term> = base
            .terms
            .iter()
            .flat_map(|t| std::iter::repeat_n(Term { coeff: &t.coeff * &inv, ..t.clone() }, j))
            .collect();
        let d = Decomposition { n: base.n, terms };
        let mut best = f64::INFINITY;
        for _ in 0..3 {
            let start = Instant::now();
            for x in &outcomes {
                let a = amplitude_with(&g, x, &d);
                ensure(a == dense[x.bits() as usize], || format!("split decomposition (×{j}) changes amplitude"))?;
            }
            best = best.min(start.elapsed().as_secs_f64());
        }
        timings.push((d.len() as f64, best));
    }
    // Fit t = a·m through the origin, then check each point within ±30%.
    let a = timings.iter().map(|(m, t)| m * t).sum::<f64>() / timings.iter().map(|(m, _)| m * m).sum::<f64>();
    let worst = timings.iter().map(|(m, t)| (t / (a * m) - 1.0).abs()).fold(0.0, f64::max);
    ensure(worst <= 0.30, || {
        let ratios: Vec<String> = timings.iter().map(|(m, t)| format!("{m}:{:.2}", t / (a * m))).collect();
        format!("decomposition time not linear in terms, ratios {}", ratios.join(" "))
    })?;
    Ok(format!("query exponent {slope:.2} over k = 8..64; decomposition time linear within {:.0}% over {}–{} terms",
        worst * 100.0,
        timings[0].0,
        timings[timings.len() - 1].0))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("counting", criterion_1),
        ("CH-form oracle equivalence", criterion_2),
        ("Clifford+T strong simulation", criterion_3),
        ("rank oracles", criterion_4),
        ("Moulton property suite", criterion_5),
        ("lower-bound formulas", criterion_6),
        ("truncation distance", criterion_7),
        ("multiplicativity α = 2", criterion_8),
        ("generic rank", criterion_9),
        ("scaling", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({:.1?})", i + 1, start.elapsed()),
            Err(why) => {
                println!("FAIL [{}] {name}: {why} ({:.1?})", i + 1, start.elapsed());
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: {} of {} criteria failed: {failed:?}", failed.len(), criteria.len());
        std::process::exit(1);
    }
}
