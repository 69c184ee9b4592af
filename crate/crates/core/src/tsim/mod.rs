//! Strong simulation of Clifford+T circuits: each T gate is replaced by a
//! CNOT onto a fresh ancilla holding a T-state (postselected on outcome 0),
//! the ancilla register is expanded into stabilizer states, and every term
//! runs through the CH-form simulator.

mod parse;

pub use parse::{parse_circuit, ParseError};

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chform::{apply_gate_dense, reverse_bits, CHForm, CliffordGate};
use crate::exactnum::{Cyclotomic8, RealQuadratic};
use crate::f2alg::BitVector;
use crate::ranksearch::{stabilizer_rank, Decomposition, RankError};
use crate::stabset::StabError;

/// Limit on original plus ancilla qubits for the decomposition method.
pub const MAX_GADGET_QUBITS: usize = 20;
/// Limit on qubits for the dense method.
pub const MAX_DENSE_QUBITS: usize = 10;

#[derive(Debug, Error)]
pub enum TsimError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{k} qubits plus {t} T gates exceeds the budget of {max} qubits")]
    Budget { k: usize, t: usize, max: usize },
    #[error("dense simulation is limited to {max} qubits, circuit has {k}")]
    DenseTooLarge { k: usize, max: usize },
    #[error("outcome has {got} bits, circuit has {expected} qubits")]
    OutcomeLength { expected: usize, got: usize },
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Stab(#[from] StabError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Clifford(CliffordGate),
    T(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub k: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::T(_))).count()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.k)?;
        for g in &self.gates {
            match g {
                Gate::Clifford(c) => writeln!(f, "{c}")?,
                Gate::T(q) => writeln!(f, "T {q}")?,
            }
        }
        Ok(())
    }
}

/// Clifford circuit on `k + n` qubits; ancilla `k + j` replaces the `j`-th
/// T gate, which sat at `t_positions[j]` in the original gate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetizedCircuit {
    pub k: usize,
    pub n: usize,
    pub gates: Vec<CliffordGate>,
    pub t_positions: Vec<usize>,
}

pub fn gadgetize(c: &Circuit) -> GadgetizedCircuit {
    let mut gates = Vec::with_capacity(c.gates.len());
    let mut t_positions = Vec::new();
    for (pos, g) in c.gates.iter().enumerate() {
        match *g {
            Gate::Clifford(cg) => gates.push(cg),
            Gate::T(q) => {
                gates.push(CliffordGate::Cnot(q, c.k + t_positions.len()));
                t_positions.push(pos);
            }
        }
    }
    GadgetizedCircuit { k: c.k, n: t_positions.len(), gates, t_positions }
}

/// `(e₀ + ζe₁)^{⊗n}` as a dense vector.
pub fn t_state(n: usize) -> Vec<Cyclotomic8> {
    (0..1usize << n).map(|x| Cyclotomic8::zeta_pow(x.count_ones() as i64)).collect()
}

/// Decomposition of the unnormalized `(e₀ + ζe₁)^{⊗n}`: optimal for
/// `n ≤ 3`, otherwise a product of optimal two-qubit blocks (and one
/// single-qubit block for odd `n`).
pub fn t_decomposition(n: usize) -> Result<Decomposition, TsimError> {
    static OPTIMAL: [OnceLock<Decomposition>; 3] = [const { OnceLock::new() }; 3];
    if n == 0 {
        return Err(TsimError::Stab(StabError::BadLength(1)));
    }
    if n <= 3 {
        if let Some(d) = OPTIMAL[n - 1].get() {
            return Ok(d.clone());
        }
        let d = stabilizer_rank(&t_state(n), false, None)?.witness.expect("rank ≤ 2ⁿ always has a witness");
        return Ok(OPTIMAL[n - 1].get_or_init(|| d).clone());
    }
    let two = t_decomposition(2)?;
    let mut acc = if n % 2 == 1 { t_decomposition(1)? } else { two.clone() };
    let blocks = if n % 2 == 1 { n / 2 } else { n / 2 - 1 };
    for _ in 0..blocks {
        acc = acc.tensor(&two, None)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Decomposition,
    Dense,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "decomposition" => Ok(Method::Decomposition),
            "dense" => Ok(Method::Dense),
            _ => Err(format!("unknown method `{s}` (decomposition, dense)")),
        }
    }
}

/// Final dense state `V e₀^{⊗k}`, for `k ≤ 10`.
pub fn simulate_dense_circuit(c: &Circuit) -> Result<Vec<Cyclotomic8>, TsimError> {
    if c.k > MAX_DENSE_QUBITS {
        return Err(TsimError::DenseTooLarge { k: c.k, max: MAX_DENSE_QUBITS });
    }
    let mut state = vec![Cyclotomic8::zero(); 1 << c.k];
    state[0] = Cyclotomic8::one();
    let zeta = Cyclotomic8::zeta();
    for g in &c.gates {
        match g {
            Gate::Clifford(cg) => apply_gate_dense(&mut state, c.k, cg),
            Gate::T(q) => {
                let bit = 1usize << (c.k - 1 - q);
                for (x, a) in state.iter_mut().enumerate() {
                    if x & bit != 0 && !a.is_zero() {
                        *a = &*a * &zeta;
                    }
                }
            }
        }
    }
    Ok(state)
}

fn check_outcome(c: &Circuit, x: &BitVector) -> Result<(), TsimError> {
    if x.len() != c.k {
        return Err(TsimError::OutcomeLength { expected: c.k, got: x.len() });
    }
    Ok(())
}

/// Exact `⟨e_x, V e₀^{⊗k}⟩`.
pub fn amplitude(c: &Circuit, x: &BitVector, method: Method) -> Result<Cyclotomic8, TsimError> {
    check_outcome(c, x)?;
    match method {
        Method::Dense => Ok(simulate_dense_circuit(c)?[x.bits() as usize].clone()),
        Method::Decomposition => {
            let g = gadgetize(c);
            if g.k + g.n > MAX_GADGET_QUBITS {
                return Err(TsimError::Budget { k: g.k, t: g.n, max: MAX_GADGET_QUBITS });
            }
            if g.n == 0 {
                let mut form = CHForm::basis(g.k, 0);
                for cg in &g.gates {
                    form.apply(cg);
                }
                return Ok(form.amplitude_word(reverse_bits(x.bits() as u64, g.k)));
            }
            let d = t_decomposition(g.n)?;
            Ok(amplitude_with(&g, x, &d))
        }
    }
}

/// `(√2)ⁿ Σᵢ cᵢ ⟨x, 0ⁿ| U |0ᵏ ⊗ σᵢ⟩` where `Σ cᵢσᵢ` is the normalized
/// `T^{⊗n}`. `d` decomposes the unnormalized `(e₀ + ζe₁)^{⊗n}`, whose
/// coefficients already carry the `(√2)ⁿ`, so the terms are summed as is.
pub fn amplitude_with(g: &GadgetizedCircuit, x: &BitVector, d: &Decomposition) -> Cyclotomic8 {
    let total = g.k + g.n;
    // Original qubits in bits 0..k (qubit q at bit q); ancillas read 0.
    let word = reverse_bits(x.bits() as u64, g.k);
    d
        .terms
        .par_iter()
        .map(|t| {
            let mut form = CHForm::basis(total, 0);
            for pg in t.stabilizer.preparation_circuit() {
                form.apply(&shift(&pg, g.k));
            }
            for cg in &g.gates {
                form.apply(cg);
            }
            // The preparation circuit yields 2^{-dim/2} times the state.
            let amp = form.amplitude_word(word);
            &(&amp * &t.coeff) * &Cyclotomic8::sqrt2_pow(t.stabilizer.dim() as i64)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}

fn shift(g: &CliffordGate, by: usize) -> CliffordGate {
    match *g {
        CliffordGate::H(q) => CliffordGate::H(q + by),
        CliffordGate::S(q) => CliffordGate::S(q + by),
        CliffordGate::X(q) => CliffordGate::X(q + by),
        CliffordGate::Z(q) => CliffordGate::Z(q + by),
        CliffordGate::Cz(a, b) => CliffordGate::Cz(a + by, b + by),
        CliffordGate::Cnot(a, b) => CliffordGate::Cnot(a + by, b + by),
    }
}

/// `|amplitude|²` exactly and as a float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Probability {
    pub u: String,
    pub v: String,
    pub float: f64,
}

impl From<&RealQuadratic> for Probability {
    fn from(p: &RealQuadratic) -> Self {
        Probability { u: p.u_string(), v: p.v_string(), float: p.to_f64() }
    }
}

pub fn outcome_probability(c: &Circuit, x: &BitVector, method: Method) -> Result<RealQuadratic, TsimError> {
    Ok(amplitude(c, x, method)?.magnitude_sq())
}

/// One simulated outcome, in the published JSON layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub outcome: BitVector,
    pub amplitude: Cyclotomic8,
    pub probability: Probability,
}

pub fn simulate(c: &Circuit, x: &BitVector, method: Method) -> Result<SimulationResult, TsimError> {
    let amplitude = amplitude(c, x, method)?;
    let probability = Probability::from(&amplitude.magnitude_sq());
    Ok(SimulationResult { outcome: *x, amplitude, probability })
}
