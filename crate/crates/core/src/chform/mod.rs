//! CH-form stabilizer states `ω · U_C · U_H · e_s` with exact global phase.
//!
//! `U_C` is a product of CNOT, CZ and S gates (so `U_C e_0 = e_0`), stored by
//! its action on Paulis:
//!
//! * `U_C⁻¹ Z_p U_C = Π_j Z_j^{G_pj}`
//! * `U_C⁻¹ X_p U_C = i^{γ_p} Π_j X_j^{F_pj} Π_j Z_j^{M_pj}`
//!
//! `U_H = ⊗ H^{h_j}`. Internally qubit `q` is bit `q` of every row word, so
//! up to 64 qubits fit. Public functions taking a [`BitVector`] use its
//! MSB-first convention instead.

mod gate;

pub use gate::{apply_gate_dense, simulate_dense, CliffordGate};

use crate::exactnum::Cyclotomic8;
use crate::f2alg::BitVector;
use crate::stabset::StabilizerState;

pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CHForm {
    k: usize,
    f: Vec<u64>,
    g: Vec<u64>,
    m: Vec<u64>,
    gamma: Vec<u8>,
    h: u64,
    s: u64,
    omega: Cyclotomic8,
}

impl CHForm {
    /// `e_s` for `s` given as a word with qubit `q` at bit `q`.
    pub fn basis(k: usize, s: u64) -> Self {
        assert!((1..=MAX_QUBITS).contains(&k), "CH-form supports 1..=64 qubits");
        let id: Vec<u64> = (0..k).map(|p| 1u64 << p).collect();
        CHForm {
            k,
            f: id.clone(),
            g: id,
            m: vec![0; k],
            gamma: vec![0; k],
            h: 0,
            s: s & word_mask(k),
            omega: Cyclotomic8::one(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn omega(&self) -> &Cyclotomic8 {
        &self.omega
    }

    /// Multiplies the represented vector by `c`.
    pub fn scale(&mut self, c: &Cyclotomic8) {
        self.omega = &self.omega * c;
    }

    pub fn apply(&mut self, gate: &CliffordGate) {
        assert!(gate.max_qubit() < self.k, "gate {gate} out of range for {} qubits", self.k);
        match *gate {
            CliffordGate::S(q) => {
                self.m[q] ^= self.g[q];
                self.gamma[q] = (self.gamma[q] + 3) & 3;
            }
            CliffordGate::Cz(q, r) => {
                self.m[q] ^= self.g[r];
                self.m[r] ^= self.g[q];
            }
            CliffordGate::Cnot(c, t) => {
                let cross = (self.m[c] & self.f[t]).count_ones() as u8;
                self.gamma[c] = (self.gamma[c] + self.gamma[t] + 2 * cross) & 3;
                self.g[t] ^= self.g[c];
                self.f[c] ^= self.f[t];
                self.m[c] ^= self.m[t];
            }
            CliffordGate::Z(q) => {
                let (e, s) = self.pauli_on_basis(0, 0, self.g[q]);
                self.s = s;
                self.omega = self.omega.mul_zeta_pow(2 * e as i64);
            }
            CliffordGate::X(q) => {
                let (e, s) = self.pauli_on_basis(self.gamma[q], self.f[q], self.m[q]);
                self.s = s;
                self.omega = self.omega.mul_zeta_pow(2 * e as i64);
            }
            CliffordGate::H(q) => self.apply_h(q),
        }
    }

    /// `i^phase X^f Z^m U_H e_s = i^e U_H e_{s'}`; returns `(e, s')`.
    fn pauli_on_basis(&self, phase: u8, f: u64, m: u64) -> (u8, u64) {
        let (h, s) = (self.h, self.s);
        let signs = (m & s & !h).count_ones() + (f & (s ^ m) & h).count_ones();
        let e = (phase as u32 + 2 * (signs & 1)) as u8 & 3;
        (e, s ^ (f & !h) ^ (m & h))
    }

    fn apply_h(&mut self, q: usize) {
        // H_q = (X_q + Z_q)/√2, both conjugated through U_C.
        let (ea, t) = self.pauli_on_basis(self.gamma[q], self.f[q], self.m[q]);
        let (eb, u) = self.pauli_on_basis(0, 0, self.g[q]);
        let a = Cyclotomic8::i_pow(ea as i64);
        let delta = (eb + 4 - ea) & 3;
        if t == u {
            // (a + b)/√2 with b = a·i^δ; δ = 2 cannot occur for a unitary.
            self.omega = &self.omega
                * &match delta {
                    0 => a.mul_sqrt2(),
                    1 => a.mul_zeta_pow(1),
                    3 => a.mul_zeta_pow(-1),
                    _ => unreachable!("H produced a zero vector"),
                };
            self.s = t;
            return;
        }
        let diff = t ^ u;
        let d0 = diff & !self.h;
        let (pivot, rest) = if d0 != 0 {
            let p = d0.trailing_zeros() as usize;
            (p, diff & !(1u64 << p))
        } else {
            let p = diff.trailing_zeros() as usize;
            (p, diff & !(1u64 << p))
        };
        let pbit = 1u64 << pivot;
        // Choose y, z = y ⊕ e_pivot with W U_H(e_y + c e_z) = U_H(e_t + c e_u).
        let y = if t & pbit == 0 { t } else { t ^ rest };
        let mut d = delta;
        let mut extra = Cyclotomic8::one();
        if y & pbit != 0 {
            extra = Cyclotomic8::i_pow(delta as i64);
            d = (4 - delta) & 3;
        }
        let hq = self.h & pbit != 0;
        let (factor, e, new_h, new_s) = single_qubit_split(hq, d);

        if d0 != 0 {
            let mut r = rest;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                if self.h & (1u64 << j) == 0 {
                    self.right_cnot(pivot, j);
                } else {
                    self.right_cz(pivot, j);
                }
            }
        } else {
            let mut r = rest;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                r &= r - 1;
                self.right_cnot(j, pivot);
            }
        }
        if e {
            self.right_s(pivot);
        }
        self.h = if new_h { self.h | pbit } else { self.h & !pbit };
        self.s = if new_s { y | pbit } else { y & !pbit };
        let scalar = &(&(&a * &extra) * &factor) * &Cyclotomic8::inv_sqrt2();
        self.omega *= &scalar;
    }

    fn right_cnot(&mut self, c: usize, t: usize) {
        for p in 0..self.k {
            self.g[p] ^= ((self.g[p] >> t) & 1) << c;
            self.f[p] ^= ((self.f[p] >> c) & 1) << t;
            self.m[p] ^= ((self.m[p] >> t) & 1) << c;
        }
    }

    fn right_cz(&mut self, q: usize, r: usize) {
        for p in 0..self.k {
            let fq = (self.f[p] >> q) & 1;
            let fr = (self.f[p] >> r) & 1;
            self.m[p] ^= (fr << q) | (fq << r);
            self.gamma[p] = (self.gamma[p] + 2 * (fq & fr) as u8) & 3;
        }
    }

    fn right_s(&mut self, q: usize) {
        for p in 0..self.k {
            if (self.f[p] >> q) & 1 == 1 {
                self.m[p] ^= 1 << q;
                self.gamma[p] = (self.gamma[p] + 3) & 3;
            }
        }
    }

    /// `⟨e_x, ·⟩` for `x` with qubit `q` at bit `q`.
    pub fn amplitude_word(&self, x: u64) -> Cyclotomic8 {
        let (mut gamma, mut f, mut m) = (0u32, 0u64, 0u64);
        let mut rest = x & word_mask(self.k);
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            gamma += self.gamma[p] as u32 + 2 * ((m & self.f[p]).count_ones() & 1);
            f ^= self.f[p];
            m ^= self.m[p];
        }
        if (f ^ self.s) & !self.h != 0 {
            return Cyclotomic8::zero();
        }
        let sign = (m & f).count_ones() + (f & self.s & self.h).count_ones();
        let e = (gamma + 2 * (sign & 1)) as i64;
        self.omega.mul_zeta_pow(2 * e) * Cyclotomic8::sqrt2_pow(-(self.h.count_ones() as i64))
    }

    /// Dense vector in MSB-first index order (`k ≤ 12`).
    pub fn to_dense(&self) -> Vec<Cyclotomic8> {
        assert!(self.k <= 12, "dense expansion limited to 12 qubits");
        (0..1u64 << self.k).map(|x| self.amplitude_word(reverse_bits(x, self.k))).collect()
    }
}

/// `H^h (e_0 + i^d e_1) = factor · S^e H^{h'} e_{s'}`; returns
/// `(factor, e, h', s')`.
pub(crate) fn single_qubit_split(h: bool, d: u8) -> (Cyclotomic8, bool, bool, bool) {
    match (h, d & 3) {
        (false, d) => (Cyclotomic8::sqrt2(), d & 1 == 1, true, d >= 2),
        (true, 0) => (Cyclotomic8::sqrt2(), false, false, false),
        (true, 2) => (Cyclotomic8::sqrt2(), false, false, true),
        (true, 1) => (Cyclotomic8::from_ints([1, 0, 1, 0]), true, true, true),
        (true, _) => (Cyclotomic8::from_ints([1, 0, -1, 0]), true, true, false),
    }
}

fn word_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Converts between MSB-first indices and qubit-`q`-at-bit-`q` words.
pub(crate) fn reverse_bits(x: u64, k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - k)
    }
}

/// `e_s`.
pub fn ch_init(s: &BitVector) -> CHForm {
    CHForm::basis(s.len(), reverse_bits(s.bits() as u64, s.len()))
}

/// The form after applying `g`.
pub fn ch_apply(mut c: CHForm, g: &CliffordGate) -> CHForm {
    c.apply(g);
    c
}

/// Exact amplitude `⟨e_x, σ⟩`, with `x` MSB-first.
pub fn ch_amplitude(c: &CHForm, x: &BitVector) -> Cyclotomic8 {
    assert_eq!(x.len(), c.k(), "outcome length does not match qubit count");
    c.amplitude_word(reverse_bits(x.bits() as u64, x.len()))
}

/// Replays the preparation circuit of `s` from `e_0`. The returned form
/// equals `scale · amplitudes(s)`, with `scale = 2^{−k/2}`.
pub fn ch_from_stabilizer(s: &StabilizerState) -> (CHForm, Cyclotomic8) {
    let mut c = CHForm::basis(s.n(), 0);
    for g in s.preparation_circuit() {
        c.apply(&g);
    }
    (c, Cyclotomic8::sqrt2_pow(-(s.dim() as i64)))
}
