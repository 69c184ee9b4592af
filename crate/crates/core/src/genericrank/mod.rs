//! Generic-rank tooling: realification of complex decompositions, counting
//! bounds, and the symmetric-subspace basis.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::Cyclotomic8;
use crate::ranksearch::{Decomposition, Term};
use crate::stabset::{count_stabilizers, is_stabilizer, shared_dictionary, StabError, StabilizerState, MAX_REAL_N};

#[derive(Debug, Error)]
pub enum GenericError {
    #[error("decomposition target is not a real vector")]
    NotReal,
    #[error("chi must be at least 2, got {0}")]
    ChiTooSmall(usize),
    #[error("r must be at least 1")]
    ZeroTerms,
    #[error(transparent)]
    Stab(#[from] StabError),
}

/// `(Re σ, ρ)` with `ρ = Σ_{x∈A} (−1)^{q(x)+l(x)} e_x`, so that
/// `Re((a+ib)σ) = (a−b) Re σ + b ρ` for real `a`, `b`.
pub fn realify(s: &StabilizerState) -> (Vec<i64>, Vec<i64>) {
    let len = 1usize << s.n();
    let mut re = vec![0i64; len];
    let mut rho = vec![0i64; len];
    let a = s.subspace();
    for c in 0..1u32 << a.dim() {
        let x = a.point_at(c) as usize;
        let l = s.linear().eval(c);
        let q = s.quadratic().eval(c);
        if l == 0 {
            re[x] = if q == 0 { 1 } else { -1 };
        }
        rho[x] = if (q + l).is_multiple_of(2) { 1 } else { -1 };
    }
    (re, rho)
}

fn int_vector(v: &[i64]) -> Vec<Cyclotomic8> {
    v.iter().map(|&x| Cyclotomic8::from_int(x)).collect()
}

/// Rewrites a decomposition of a real vector over real stabilizer states,
/// with at most twice as many terms. Equal states are merged; zero vectors
/// and zero coefficients are dropped.
pub fn realify_decomposition(d: &Decomposition) -> Result<Decomposition, GenericError> {
    if !d.resum().iter().all(Cyclotomic8::is_real) {
        return Err(GenericError::NotReal);
    }
    let mut parts: Vec<(StabilizerState, Cyclotomic8)> = Vec::new();
    let mut push = |v: Vec<i64>, coeff: Cyclotomic8| -> Result<(), GenericError> {
        if coeff.is_zero() || v.iter().all(|&x| x == 0) {
            return Ok(());
        }
        let state = is_stabilizer(&int_vector(&v))?.expect("real part of a stabilizer state is a stabilizer state");
        match parts.iter_mut().find(|(s, _)| *s == state) {
            Some((_, c)) => *c += &coeff,
            None => parts.push((state, coeff)),
        }
        Ok(())
    };
    for t in &d.terms {
        let (a, b) = (t.coeff.re(), t.coeff.im());
        let (re, rho) = realify(&t.stabilizer);
        push(re, &a - &b)?;
        push(rho, b)?;
    }
    let dict = if d.n <= MAX_REAL_N { Some(shared_dictionary(d.n, true)?) } else { None };
    let mut terms: Vec<Term> = parts
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| Term { index: dict.and_then(|dd| dd.index_of(&s)), coeff: c, stabilizer: s })
        .collect();
    terms.sort_by(|x, y| x.stabilizer.cmp(&y.stabilizer));
    Ok(Decomposition { n: d.n, terms })
}

/// `n · C(|Stab_n|, χ − 1)` (or with the real count).
pub fn subgeneric_count_bound(n: usize, chi: usize, real: bool) -> Result<BigUint, GenericError> {
    if chi < 2 {
        return Err(GenericError::ChiTooSmall(chi));
    }
    let total = count_stabilizers(n, real);
    Ok(BigUint::from(n) * big_binomial(&total, chi - 1))
}

fn big_binomial(a: &BigUint, b: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..b {
        if *a < BigUint::from(i + 1) {
            return BigUint::default();
        }
        acc = acc * (a - BigUint::from(i)) / BigUint::from(i + 1);
    }
    acc
}

/// `χ_n ≤ r(n+1)`, given `n + 1` distinct states of the form `φ^{⊗n}` with
/// rank at most `r`.
pub fn combine_upper_bound(r: u64, n: u64) -> Result<u64, GenericError> {
    if r == 0 {
        return Err(GenericError::ZeroTerms);
    }
    Ok(r * (n + 1))
}

/// The vectors `v_k = Σ_{|x|=k} e_x`, `k = 0..=n`, stored as index lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricBasis {
    pub n: usize,
    pub supports: Vec<Vec<usize>>,
}

impl SymmetricBasis {
    pub fn new(n: usize) -> Self {
        let mut supports = vec![Vec::new(); n + 1];
        for x in 0..1usize << n {
            supports[x.count_ones() as usize].push(x);
        }
        SymmetricBasis { n, supports }
    }

    pub fn dense(&self, k: usize) -> Vec<Cyclotomic8> {
        let mut v = vec![Cyclotomic8::zero(); 1 << self.n];
        for &x in &self.supports[k] {
            v[x] = Cyclotomic8::one();
        }
        v
    }

    /// `⟨v_j, v_k⟩`; diagonal with entries `C(n, k)` since supports are
    /// disjoint.
    pub fn gram(&self) -> Vec<Vec<usize>> {
        self.supports
            .iter()
            .map(|a| self.supports.iter().map(|b| a.iter().filter(|x| b.contains(x)).count()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranksearch::stabilizer_rank;

    #[test]
    fn realify_examples() {
        let d = shared_dictionary(1, false).unwrap();
        // e₀ + i e₁
        let s = d.get(d.lookup_codes(&[1, 2]).unwrap());
        let (re, rho) = realify(s);
        assert_eq!(re, vec![1, 0]);
        assert_eq!(rho, vec![1, -1]);
        let real = d.get(d.lookup_codes(&[1, 3]).unwrap());
        let (re, rho) = realify(real);
        assert_eq!(re, vec![1, -1]);
        assert_eq!(rho, re);
    }

    #[test]
    fn realify_identity_on_dictionaries() {
        for n in 1..=3 {
            let d = shared_dictionary(n, false).unwrap();
            for s in d.states() {
                let amps = s.amplitudes().unwrap();
                let (re, rho) = realify(s);
                for a in -2..=2i64 {
                    for b in -2..=2i64 {
                        let c = Cyclotomic8::from_ints([a, 0, b, 0]);
                        for x in 0..amps.len() {
                            let lhs = (&c * &amps[x]).re();
                            let rhs = Cyclotomic8::from_int((a - b) * re[x] + b * rho[x]);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn realify_decompositions() {
        let plus2: Vec<Cyclotomic8> = vec![Cyclotomic8::one(); 4];
        let d2 = shared_dictionary(2, false).unwrap();
        let ip = d2.lookup_codes(&[1, 2, 2, 3]).unwrap();
        let im = d2.lookup_codes(&[1, 4, 4, 3]).unwrap();
        // ½(e₀+ie₁)^{⊗2} + ½(e₀−ie₁)^{⊗2} = e₀₀ − e₁₁, real from complex terms.
        let half: Cyclotomic8 = "1/2".parse().unwrap();
        let w = Decomposition::from_indices(d2, &[ip, im], vec![half.clone(), half]);
        let target = w.resum();
        assert!(target.iter().all(Cyclotomic8::is_real));
        let r = realify_decomposition(&w).unwrap();
        assert!(r.len() <= 2 * w.len());
        assert!(r.terms.iter().all(|t| t.stabilizer.is_real() && t.index.is_some()));
        assert_eq!(r.resum(), target);
        let t = stabilizer_rank(&plus2, false, None).unwrap().witness.unwrap();
        let rt = realify_decomposition(&t).unwrap();
        assert_eq!((rt.len(), rt.resum()), (1, plus2.clone()));
        let tt: Vec<Cyclotomic8> = (0..4usize).map(|x| Cyclotomic8::zeta_pow(x.count_ones() as i64)).collect();
        let ttw = stabilizer_rank(&tt, false, None).unwrap().witness.unwrap();
        assert!(matches!(realify_decomposition(&ttw), Err(GenericError::NotReal)));
    }

    #[test]
    fn counting_bounds() {
        assert_eq!(subgeneric_count_bound(2, 3, false).unwrap(), BigUint::from(3540u32));
        assert_eq!(subgeneric_count_bound(1, 2, false).unwrap(), BigUint::from(6u32));
        let c1080_3 = 1080u64 * 1079 * 1078 / 6;
        assert_eq!(subgeneric_count_bound(3, 4, false).unwrap(), BigUint::from(3 * c1080_3));
        assert_eq!(subgeneric_count_bound(2, 3, true).unwrap(), BigUint::from(2 * 276u32));
        assert!(subgeneric_count_bound(2, 1, false).is_err());
        assert_eq!(combine_upper_bound(1, 1).unwrap(), 2);
        assert_eq!(combine_upper_bound(2, 2).unwrap(), 6);
        assert_eq!(combine_upper_bound(3, 3).unwrap(), 12);
    }

    #[test]
    fn symmetric_basis() {
        let b = SymmetricBasis::new(4);
        let g = b.gram();
        for j in 0..=4 {
            for k in 0..=4 {
                let want = if j == k { num_integer::binomial(4, k) } else { 0 };
                assert_eq!(g[j][k], want);
            }
        }
    }
}
