use std::fmt;

use crate::exactnum::Cyclotomic8;

/// A Clifford gate on 0-based qubit indices. `Cnot` is (control, target).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    X(usize),
    Z(usize),
    Cz(usize, usize),
    Cnot(usize, usize),
}

impl CliffordGate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            CliffordGate::H(q) | CliffordGate::S(q) | CliffordGate::X(q) | CliffordGate::Z(q) => vec![q],
            CliffordGate::Cz(a, b) | CliffordGate::Cnot(a, b) => vec![a, b],
        }
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap()
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGate::H(q) => write!(f, "H {q}"),
            CliffordGate::S(q) => write!(f, "S {q}"),
            CliffordGate::X(q) => write!(f, "X {q}"),
            CliffordGate::Z(q) => write!(f, "Z {q}"),
            CliffordGate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            CliffordGate::Cnot(a, b) => write!(f, "CNOT {a} {b}"),
        }
    }
}

/// Applies `g` to a dense `n`-qubit vector; qubit 0 is the most significant
/// index bit.
pub fn apply_gate_dense(state: &mut [Cyclotomic8], n: usize, g: &CliffordGate) {
    debug_assert_eq!(state.len(), 1 << n);
    let bit = |q: usize| 1usize << (n - 1 - q);
    match *g {
        CliffordGate::H(q) => {
            let b = bit(q);
            let s = Cyclotomic8::inv_sqrt2();
            for x in 0..state.len() {
                if x & b == 0 {
                    let a0 = state[x].clone();
                    let a1 = state[x | b].clone();
                    state[x] = &(&a0 + &a1) * &s;
                    state[x | b] = &(&a0 - &a1) * &s;
                }
            }
        }
        CliffordGate::S(q) => {
            let b = bit(q);
            for (x, a) in state.iter_mut().enumerate() {
                if x & b != 0 {
                    *a = a.mul_zeta_pow(2);
                }
            }
        }
        CliffordGate::Z(q) => {
            let b = bit(q);
            for (x, a) in state.iter_mut().enumerate() {
                if x & b != 0 {
                    *a = -std::mem::take(a);
                }
            }
        }
        CliffordGate::X(q) => {
            let b = bit(q);
            for x in 0..state.len() {
                if x & b == 0 {
                    state.swap(x, x | b);
                }
            }
        }
        CliffordGate::Cz(p, q) => {
            let m = bit(p) | bit(q);
            for (x, a) in state.iter_mut().enumerate() {
                if x & m == m {
                    *a = -std::mem::take(a);
                }
            }
        }
        CliffordGate::Cnot(c, t) => {
            let (bc, bt) = (bit(c), bit(t));
            for x in 0..state.len() {
                if x & bc != 0 && x & bt == 0 {
                    state.swap(x, x | bt);
                }
            }
        }
    }
}

/// Dense simulation of `gates` on `e_0^{⊗n}`.
pub fn simulate_dense(n: usize, gates: &[CliffordGate]) -> Vec<Cyclotomic8> {
    let mut state = vec![Cyclotomic8::zero(); 1 << n];
    state[0] = Cyclotomic8::one();
    for g in gates {
        apply_gate_dense(&mut state, n, g);
    }
    state
}
