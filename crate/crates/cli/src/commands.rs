use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use stabrank::boundscalc::{
    approx_rank_upper, hard_state_certificate, longest_exp_subsequence, moulton_trials, qubit_power_lower_bound,
    t_power_lower_bound, truncation_distance, LowerBound,
};
use stabrank::exactnum::Cyclotomic8;
use stabrank::f2alg::BitVector;
use stabrank::genericrank::realify_decomposition;
use stabrank::ranksearch::{min_spanning_symmetric, multiplicativity_check, search_rank, Decomposition, SearchOptions, Stage};
use stabrank::stabset::{count_stabilizers, enumerate_stabilizers, shared_dictionary};
use stabrank::tsim::{parse_circuit, simulate, Method};

use crate::args::{Command, Format};

pub struct Ctx {
    pub threads: usize,
    pub seed: u64,
    pub format: Format,
    pub out: Option<std::path::PathBuf>,
}

/// Dense state files: a JSON list whose entries are either exact
/// quadruples of rational strings or scalar literals such as "1/2+i".
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Exact(Box<Cyclotomic8>),
    Literal(String),
}

fn read_state(path: &Path) -> Result<Vec<Cyclotomic8>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let entries: Vec<Entry> = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    entries
        .into_iter()
        .enumerate()
        .map(|(i, e)| match e {
            Entry::Exact(c) => Ok(*c),
            Entry::Literal(s) => s.parse::<Cyclotomic8>().with_context(|| format!("entry {i} of {}", path.display())),
        })
        .collect()
}

fn parse_scalar(s: &str) -> Result<Cyclotomic8> {
    s.trim().parse::<Cyclotomic8>().with_context(|| format!("invalid scalar `{s}`"))
}

fn options(ctx: &Ctx) -> SearchOptions {
    SearchOptions { threads: Some(ctx.threads), progress: true, ..SearchOptions::default() }
}

fn bound_json(b: &LowerBound) -> Value {
    json!({ "p": b.p, "bound": b.value, "ceil": b.ceil })
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Result<Value> {
    Ok(match cmd {
        Command::Count { n, real } => {
            if *n == 0 {
                bail!("n must be at least 1");
            }
            let c = count_stabilizers(*n, *real);
            let count = match u64::try_from(&c) {
                Ok(v) => json!(v),
                Err(_) => json!(c.to_string()),
            };
            json!({ "n": n, "real": real, "count": count })
        }
        Command::Enumerate { n, real } => {
            let Some(out) = &ctx.out else { bail!("enumerate needs --out FILE") };
            let d = enumerate_stabilizers(*n, *real)?;
            let body = match ctx.format {
                Format::Json => serde_json::to_string_pretty(d.states())? + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "state"])?;
                    for (i, s) in d.states().iter().enumerate() {
                        w.write_record([i.to_string(), serde_json::to_string(s)?])?;
                    }
                    String::from_utf8(w.into_inner()?)?
                }
            };
            std::fs::write(out, body).with_context(|| format!("writing {}", out.display()))?;
            // The summary goes to stdout; `--out` already holds the states.
            return Ok(json!({ "n": n, "real": real, "count": d.len(), "out": out.display().to_string() }));
        }
        Command::Rank { state, real, max_r, no_prune, symmetry, checkpoint } => {
            let psi = read_state(state)?;
            if !psi.len().is_power_of_two() || psi.len() < 2 {
                bail!("state has {} entries; expected a power of two ≥ 2", psi.len());
            }
            let n = psi.len().trailing_zeros() as usize;
            let dict = shared_dictionary(n, *real)?;
            let opts = SearchOptions {
                max_r: *max_r,
                prune: !no_prune,
                symmetry: *symmetry,
                checkpoint: checkpoint.clone(),
                ..options(ctx)
            };
            serde_json::to_value(search_rank(dict, &psi, &opts)?)?
        }
        Command::ChiN { n } => serde_json::to_value(min_spanning_symmetric(*n)?)?,
        Command::LowerBound { state, t_power, qubit, power } => {
            if let Some(path) = state {
                let psi = read_state(path)?;
                let cert = longest_exp_subsequence(&psi)?;
                let b = LowerBound::from_p(cert.p as u64);
                json!({ "bound": bound_json(&b), "certificate": cert })
            } else if let Some(n) = t_power {
                json!({ "t_power": n, "bound": bound_json(&t_power_lower_bound(*n)?) })
            } else {
                let text = qubit.as_deref().unwrap_or_default();
                let Some((a, b)) = text.split_once(',') else { bail!("--qubit expects \"c0,c1\", got `{text}`") };
                let psi = [parse_scalar(a)?, parse_scalar(b)?];
                let r = qubit_power_lower_bound(&psi, power.unwrap_or(1))?;
                json!({
                    "power": power,
                    "transform": r.transform,
                    "tau": r.tau,
                    "alpha": r.alpha,
                    "k": r.k,
                    "bound": bound_json(&r.bound),
                })
            }
        }
        Command::HardState { n, delta } => {
            let cert = hard_state_certificate(*n)?;
            let b = LowerBound::from_p(cert.p as u64);
            let mut v = json!({ "n": n, "bound": bound_json(&b) });
            if let Some(d) = delta {
                let k = approx_rank_upper(*n, *d)?;
                v["truncation"] = json!({ "delta": d, "k": k, "distance": truncation_distance(*n, k)? });
            }
            v
        }
        Command::MoultonCheck { p, trials } => {
            let r = moulton_trials(*p, *trials, ctx.seed)?;
            json!({
                "p": r.p,
                "trials": r.trials,
                "seed": r.seed,
                "max_len": r.max_len,
                "counterexamples": r.counterexamples.len(),
                "examples": r.counterexamples,
            })
        }
        Command::Multiplicativity { alpha, stage, checkpoint } => {
            let a = parse_scalar(alpha)?;
            if a.as_gaussian().is_none() {
                bail!("alpha must be a Gaussian rational (a+bi with rational a, b)");
            }
            let stage: Stage = stage.parse().map_err(anyhow::Error::msg)?;
            let opts = SearchOptions { checkpoint: checkpoint.clone(), ..options(ctx) };
            let r = multiplicativity_check(&a, stage, &opts)?;
            let mut v = serde_json::to_value(&r)?;
            v["pair_rank"] = json!(r.pair_rank());
            if r.small_witness.is_some() {
                v["finding"] = json!("two copies have rank below 4 for this alpha");
            }
            v
        }
        Command::Simulate { circuit, outcome, method } => {
            let text = std::fs::read_to_string(circuit).with_context(|| format!("reading {}", circuit.display()))?;
            let c = parse_circuit(&text).with_context(|| circuit.display().to_string())?;
            let x: BitVector = outcome.parse().with_context(|| format!("invalid outcome `{outcome}`"))?;
            let m: Method = method.parse().map_err(anyhow::Error::msg)?;
            serde_json::to_value(simulate(&c, &x, m)?)?
        }
        Command::Realify { decomposition } => {
            let text = std::fs::read_to_string(decomposition).with_context(|| format!("reading {}", decomposition.display()))?;
            let d: Decomposition = serde_json::from_str(&text).with_context(|| format!("parsing {}", decomposition.display()))?;
            serde_json::to_value(realify_decomposition(&d)?)?
        }
    })
}
