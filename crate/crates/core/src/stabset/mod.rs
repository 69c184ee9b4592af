//! Stabilizer states in normal form.
//!
//! A state is a triple `(A, l, q)`: an affine subspace `A` and forms `l`, `q`
//! on its coordinates. Its amplitude at `x = offset + Σ xᵢbᵢ` is
//! `i^{l(x)}·(−1)^{q(x)}`, and zero off `A`. The offset amplitude is always 1,
//! so each projective class has exactly one triple.

mod dictionary;

pub use dictionary::{
    count_stabilizers, enumerate_stabilizers, real_count_gaussian_sum, shared_dictionary, StabDictionary, MAX_COMPLEX_N,
    MAX_REAL_N,
};

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::chform::CliffordGate;
use crate::exactnum::Cyclotomic8;
use crate::f2alg::{bits_to_string, parse_bits, AffineSubspace, F2Error, LinearFormF2, QuadraticFormF2};

pub const MAX_DENSE_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabError {
    #[error("n = {n} out of range for {what} (max {max})")]
    NOutOfRange { n: usize, max: usize, what: &'static str },
    #[error("form dimension {got} does not match subspace dimension {expected}")]
    FormMismatch { expected: usize, got: usize },
    #[error("vector length {0} is not a power of two")]
    BadLength(usize),
    #[error("zero vector")]
    ZeroVector,
    #[error(transparent)]
    F2(#[from] F2Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilizerState {
    subspace: AffineSubspace,
    linear: LinearFormF2,
    quadratic: QuadraticFormF2,
}

impl StabilizerState {
    pub fn new(subspace: AffineSubspace, linear: LinearFormF2, quadratic: QuadraticFormF2) -> Result<Self, StabError> {
        let k = subspace.dim();
        for got in [linear.k(), quadratic.k()] {
            if got != k {
                return Err(StabError::FormMismatch { expected: k, got });
            }
        }
        Ok(StabilizerState { subspace, linear, quadratic })
    }

    /// The computational basis state `e_x`.
    pub fn basis_state(n: usize, x: u32) -> Result<Self, StabError> {
        let v = crate::f2alg::BitVector::new(n, x)?;
        Ok(StabilizerState {
            subspace: AffineSubspace::point(v),
            linear: LinearFormF2::zero(0),
            quadratic: QuadraticFormF2::zero(0),
        })
    }

    pub fn n(&self) -> usize {
        self.subspace.n()
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn subspace(&self) -> &AffineSubspace {
        &self.subspace
    }

    pub fn linear(&self) -> &LinearFormF2 {
        &self.linear
    }

    pub fn quadratic(&self) -> &QuadraticFormF2 {
        &self.quadratic
    }

    pub fn is_real(&self) -> bool {
        self.linear.is_zero()
    }

    /// Power of `i` of the amplitude at coordinate word `c`.
    pub fn phase_at_coords(&self, c: u32) -> u8 {
        (self.linear.eval(c) + 2 * self.quadratic.eval(c)) as u8 & 3
    }

    /// Compact amplitude at packed point `x`: 0 for zero, `1 + e` for `i^e`.
    pub fn amplitude_code(&self, x: u32) -> u8 {
        match self.subspace.coordinates_of(x) {
            Some(c) => 1 + self.phase_at_coords(c),
            None => 0,
        }
    }

    /// Compact codes for the whole dense vector.
    pub fn amplitude_codes(&self) -> Vec<u8> {
        let mut out = vec![0u8; 1 << self.n()];
        for c in 0..1u32 << self.dim() {
            out[self.subspace.point_at(c) as usize] = 1 + self.phase_at_coords(c);
        }
        out
    }

    pub fn amplitude(&self, x: u32) -> Cyclotomic8 {
        code_to_value(self.amplitude_code(x))
    }

    /// Dense amplitude vector of length `2ⁿ`.
    pub fn amplitudes(&self) -> Result<Vec<Cyclotomic8>, StabError> {
        if self.n() > MAX_DENSE_N {
            return Err(StabError::NOutOfRange { n: self.n(), max: MAX_DENSE_N, what: "dense amplitudes" });
        }
        Ok(self.amplitude_codes().into_iter().map(code_to_value).collect())
    }

    pub fn complex_amplitudes(&self) -> Vec<Complex64> {
        self.amplitude_codes().into_iter().map(code_to_complex).collect()
    }

    /// The product state `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &StabilizerState) -> Result<Self, StabError> {
        let (n1, n2) = (self.n(), other.n());
        let n = n1 + n2;
        if n > crate::f2alg::MAX_BITS {
            return Err(StabError::NOutOfRange { n, max: crate::f2alg::MAX_BITS, what: "tensor product" });
        }
        let (k1, k2) = (self.dim(), other.dim());
        let mut basis: Vec<u32> = self.subspace.basis_words().iter().map(|b| b << n2).collect();
        basis.extend_from_slice(other.subspace.basis_words());
        let offset = (self.subspace.offset_word() << n2) | other.subspace.offset_word();
        let subspace = AffineSubspace::from_words(n, &basis, offset)?;
        debug_assert_eq!(subspace.basis_words(), &basis[..]);
        let linear = LinearFormF2::new(k1 + k2, self.linear.bits() | (other.linear.bits() << k1));
        // i^{a}·i^{b} = i^{a⊕b}·(−1)^{ab} for bits a, b: the product of the
        // two linear forms becomes a cross-block quadratic term.
        let cross = other.linear.bits() << k1;
        let mut rows: Vec<u32> = (0..k1)
            .map(|i| self.quadratic.rows()[i] | if self.linear.coeff(i) { cross } else { 0 })
            .collect();
        rows.extend(other.quadratic.rows().iter().map(|r| r << k1));
        let quadratic = QuadraticFormF2::from_rows(k1 + k2, rows)?;
        StabilizerState::new(subspace, linear, quadratic)
    }

    /// A Clifford circuit `U` with `U e_0 = 2^{−k/2}·amplitudes(self)`.
    ///
    /// The phases `i^{Σ lⱼxⱼ}` produced by S gates differ from `i^{l(x)}` by
    /// `(−1)^{Σ_{j<j'} lⱼlⱼ' xⱼxⱼ'}`, so each pair of pivots in the support
    /// of `l` gets an extra CZ, merged with the CZs from `q`.
    pub fn preparation_circuit(&self) -> Vec<CliffordGate> {
        let n = self.n();
        let pos = |bit: u32| n - 1 - bit.trailing_zeros() as usize;
        let pivots = self.subspace.pivots();
        let basis = self.subspace.basis_words();
        let mut gates = Vec::new();
        let offset = self.subspace.offset_word();
        for q in 0..n {
            if (offset >> (n - 1 - q)) & 1 == 1 {
                gates.push(CliffordGate::X(q));
            }
        }
        for &p in &pivots {
            gates.push(CliffordGate::H(p));
        }
        for (j, &p) in pivots.iter().enumerate() {
            let mut rest = basis[j] & !(1u32 << (n - 1 - p));
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                gates.push(CliffordGate::Cnot(p, pos(low)));
                rest ^= low;
            }
        }
        let k = pivots.len();
        for (j, &p) in pivots.iter().enumerate() {
            if self.linear.coeff(j) {
                gates.push(CliffordGate::S(p));
            }
        }
        for (j, &p) in pivots.iter().enumerate() {
            if self.quadratic.entry(j, j) {
                gates.push(CliffordGate::Z(p));
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                let cz = self.quadratic.entry(a, b) ^ (self.linear.coeff(a) && self.linear.coeff(b));
                if cz {
                    gates.push(CliffordGate::Cz(pivots[a], pivots[b]));
                }
            }
        }
        gates
    }
}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}; l={}; q=[{}]", self.subspace, self.linear.encode(), self.quadratic.encode().join(","))
    }
}

pub(crate) fn code_to_value(code: u8) -> Cyclotomic8 {
    match code {
        0 => Cyclotomic8::zero(),
        c => Cyclotomic8::i_pow((c - 1) as i64),
    }
}

pub(crate) fn code_to_complex(code: u8) -> Complex64 {
    match code {
        0 => Complex64::new(0.0, 0.0),
        1 => Complex64::new(1.0, 0.0),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Returns the normal-form state proportional to `psi`, if there is one.
pub fn is_stabilizer(psi: &[Cyclotomic8]) -> Result<Option<StabilizerState>, StabError> {
    let len = psi.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(StabError::BadLength(len));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_DENSE_N {
        return Err(StabError::NOutOfRange { n, max: MAX_DENSE_N, what: "stabilizer recognition" });
    }
    let first = psi.iter().position(|a| !a.is_zero()).ok_or(StabError::ZeroVector)?;
    let inv = psi[first].inv().expect("nonzero");
    let mut codes = Vec::with_capacity(len);
    for a in psi {
        if a.is_zero() {
            codes.push(0u8);
        } else {
            match (a * &inv).as_i_power() {
                Some(e) => codes.push(1 + e),
                None => return Ok(None),
            }
        }
    }
    Ok(state_from_codes(n, &codes))
}

/// Recovers `(A, l, q)` from normalized compact codes, if they describe a
/// stabilizer state.
pub(crate) fn state_from_codes(n: usize, codes: &[u8]) -> Option<StabilizerState> {
    let support: Vec<u32> = (0..codes.len() as u32).filter(|&x| codes[x as usize] != 0).collect();
    if !support.len().is_power_of_two() {
        return None;
    }
    let offset = support[0];
    if codes[offset as usize] != 1 {
        return None;
    }
    // Grow a basis from the support until it spans it.
    let mut basis: Vec<u32> = Vec::new();
    let mut span: Vec<u32> = vec![0];
    for &x in &support {
        let d = x ^ offset;
        if !span.contains(&d) {
            basis.push(d);
            let ext: Vec<u32> = span.iter().map(|s| s ^ d).collect();
            span.extend(ext);
        }
    }
    if span.len() != support.len() {
        return None;
    }
    let subspace = AffineSubspace::from_words(n, &basis, offset).ok()?;
    let k = subspace.dim();
    let phase = |c: u32| codes[subspace.point_at(c) as usize].checked_sub(1);
    let mut lbits = 0u32;
    let mut rows = vec![0u32; k];
    for i in 0..k {
        let e = phase(1 << i)?;
        if e & 1 == 1 {
            lbits |= 1 << i;
        }
        if (e >> 1) & 1 == 1 {
            rows[i] |= 1 << i;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let e = phase((1 << i) | (1 << j))?;
            let l = ((lbits >> i) ^ (lbits >> j)) & 1;
            let base = l as u8 + 2 * ((((rows[i] >> i) ^ (rows[j] >> j)) & 1) as u8);
            if (e + 4 - base) & 3 == 2 {
                rows[i] |= 1 << j;
            } else if (e + 4 - base) & 3 != 0 {
                return None;
            }
        }
    }
    let state = StabilizerState::new(
        subspace,
        LinearFormF2::new(k, lbits),
        QuadraticFormF2::from_rows(k, rows).ok()?,
    )
    .ok()?;
    (state.amplitude_codes() == codes).then_some(state)
}

#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    offset: String,
    basis: Vec<String>,
    linear: String,
    quadratic: Vec<String>,
}

impl Serialize for StabilizerState {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.n();
        StateJson {
            n,
            offset: bits_to_string(self.subspace.offset_word(), n),
            basis: self.subspace.basis_words().iter().map(|&b| bits_to_string(b, n)).collect(),
            linear: self.linear.encode(),
            quadratic: self.quadratic.encode(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for StabilizerState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = StateJson::deserialize(d)?;
        let word = |s: &str| {
            if s.len() != j.n {
                return Err(D::Error::custom(format!("bit string {s:?} does not have length {}", j.n)));
            }
            parse_bits(s).map_err(D::Error::custom)
        };
        let basis = j.basis.iter().map(|b| word(b)).collect::<Result<Vec<_>, _>>()?;
        let offset = word(&j.offset)?;
        let subspace = AffineSubspace::from_words(j.n, &basis, offset).map_err(D::Error::custom)?;
        if subspace.basis_words() != &basis[..] || subspace.offset_word() != offset {
            return Err(D::Error::custom("subspace is not in canonical form"));
        }
        let linear = LinearFormF2::decode(&j.linear).map_err(D::Error::custom)?;
        let quadratic = QuadraticFormF2::decode(&j.quadratic).map_err(D::Error::custom)?;
        StabilizerState::new(subspace, linear, quadratic).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chform::simulate_dense;
    use crate::f2alg::BitVector;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn c(a: i64) -> Cyclotomic8 {
        Cyclotomic8::from_int(a)
    }

    #[test]
    fn amplitude_examples() {
        let e0 = StabilizerState::basis_state(3, 0).unwrap();
        let mut expect = vec![c(0); 8];
        expect[0] = c(1);
        assert_eq!(e0.amplitudes().unwrap(), expect);

        let plus_i = StabilizerState::new(
            AffineSubspace::full(1).unwrap(),
            LinearFormF2::new(1, 1),
            QuadraticFormF2::zero(1),
        )
        .unwrap();
        assert_eq!(plus_i.amplitudes().unwrap(), vec![c(1), Cyclotomic8::i()]);

        let anti = StabilizerState::new(
            AffineSubspace::new(2, &[bv("11")], bv("01")).unwrap(),
            LinearFormF2::zero(1),
            QuadraticFormF2::from_rows(1, vec![1]).unwrap(),
        )
        .unwrap();
        assert_eq!(anti.amplitudes().unwrap(), vec![c(0), c(1), c(-1), c(0)]);
    }

    #[test]
    fn recognition() {
        let e0 = vec![c(1), c(0)];
        assert_eq!(is_stabilizer(&e0).unwrap(), Some(StabilizerState::basis_state(1, 0).unwrap()));
        let t = vec![c(1), Cyclotomic8::zeta()];
        assert_eq!(is_stabilizer(&t).unwrap(), None);
        let r = vec![c(1), &Cyclotomic8::sqrt2() + &c(1)];
        assert_eq!(is_stabilizer(&r).unwrap(), None);
        assert_eq!(is_stabilizer(&[c(0), c(0)]), Err(StabError::ZeroVector));
        assert!(is_stabilizer(&[c(1), c(0), c(0)]).is_err());
        // Scaled stabilizer vectors are recognized.
        let scaled = vec![c(0), Cyclotomic8::i().mul_sqrt2(), c(0), Cyclotomic8::sqrt2()];
        let s = is_stabilizer(&scaled).unwrap().unwrap();
        assert_eq!(s.amplitudes().unwrap(), vec![c(0), c(1), c(0), -Cyclotomic8::i()]);
    }

    #[test]
    fn recognition_inverts_amplitudes() {
        for n in 1..=3 {
            for s in enumerate_stabilizers(n, false).unwrap().states() {
                assert_eq!(is_stabilizer(&s.amplitudes().unwrap()).unwrap().as_ref(), Some(s));
            }
        }
    }

    #[test]
    fn preparation_circuit_examples() {
        assert!(StabilizerState::basis_state(2, 0).unwrap().preparation_circuit().is_empty());
        let plus = StabilizerState::new(
            AffineSubspace::full(1).unwrap(),
            LinearFormF2::zero(1),
            QuadraticFormF2::zero(1),
        )
        .unwrap();
        assert_eq!(plus.preparation_circuit(), vec![CliffordGate::H(0)]);
    }

    fn check_circuit(s: &StabilizerState) {
        let dense = simulate_dense(s.n(), &s.preparation_circuit());
        let scale = Cyclotomic8::sqrt2_pow(-(s.dim() as i64));
        let want: Vec<Cyclotomic8> = s.amplitudes().unwrap().iter().map(|a| a * &scale).collect();
        assert_eq!(dense, want, "{s}");
    }

    #[test]
    fn preparation_circuits_reproduce_small_states() {
        for n in 1..=2 {
            for s in enumerate_stabilizers(n, false).unwrap().states() {
                check_circuit(s);
            }
        }
    }

    #[test]
    fn preparation_circuits_reproduce_sampled_three_qubit_states() {
        use rand::{Rng, SeedableRng};
        let dict = enumerate_stabilizers(3, false).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            check_circuit(dict.get(rng.gen_range(0..dict.len())));
        }
    }

    #[test]
    fn tensor_products_multiply_amplitudes() {
        let d1 = enumerate_stabilizers(1, false).unwrap();
        let d2 = enumerate_stabilizers(2, false).unwrap();
        let d3 = enumerate_stabilizers(3, false).unwrap();
        for a in d1.states() {
            for b in d2.states() {
                let t = a.tensor(b).unwrap();
                let (va, vb) = (a.amplitudes().unwrap(), b.amplitudes().unwrap());
                let want: Vec<Cyclotomic8> =
                    va.iter().flat_map(|x| vb.iter().map(move |y| x * y)).collect();
                assert_eq!(t.amplitudes().unwrap(), want);
                assert!(d3.index_of(&t).is_some());
            }
        }
    }

    #[test]
    fn json_schema() {
        let s = StabilizerState::new(
            AffineSubspace::new(3, &[bv("110"), bv("001")], bv("010")).unwrap(),
            LinearFormF2::new(2, 0b01),
            QuadraticFormF2::from_rows(2, vec![0b10, 0b10]).unwrap(),
        )
        .unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"n":3,"offset":"010","basis":["110","001"],"linear":"10","quadratic":["01","01"]}"#
        );
        assert_eq!(serde_json::from_str::<StabilizerState>(&j).unwrap(), s);
        let bad = r#"{"n":3,"offset":"110","basis":["110","001"],"linear":"10","quadratic":["01","01"]}"#;
        assert!(serde_json::from_str::<StabilizerState>(bad).is_err());
    }
}
