use std::cmp::Ordering;
use std::fmt;

use super::{bits_to_string, mask, BitVector, F2Error, MAX_BITS, MAX_ENUMERATION_N};

/// An affine subspace `offset + span(basis)` of 𝔽₂ⁿ in canonical form.
///
/// The basis is in reduced row echelon form with each vector's pivot at its
/// leftmost 1; pivots move strictly rightwards through the basis. The offset
/// is zero at every pivot. Equal point sets therefore give equal records.
///
/// Coordinates `x ∈ 𝔽₂ᵏ` are packed LSB-first: bit `i` selects `basis[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    n: usize,
    basis: Vec<u32>,
    offset: u32,
}

impl AffineSubspace {
    /// Canonicalizes `offset + span(vectors)`; the vectors must be independent.
    pub fn new(n: usize, vectors: &[BitVector], offset: BitVector) -> Result<Self, F2Error> {
        if n == 0 || n > MAX_BITS {
            return Err(F2Error::LengthOutOfRange(n));
        }
        for v in vectors.iter().chain(std::iter::once(&offset)) {
            if v.len() != n {
                return Err(F2Error::LengthMismatch { expected: n, got: v.len() });
            }
        }
        let words: Vec<u32> = vectors.iter().map(|v| v.bits()).collect();
        Self::from_words(n, &words, offset.bits())
    }

    pub(crate) fn from_words(n: usize, vectors: &[u32], offset: u32) -> Result<Self, F2Error> {
        let mut rows: Vec<u32> = Vec::with_capacity(vectors.len());
        for &v in vectors {
            let mut v = v & mask(n);
            for &r in &rows {
                if v & top_bit(r) != 0 {
                    v ^= r;
                }
            }
            if v == 0 {
                return Err(F2Error::Dependent);
            }
            let p = top_bit(v);
            for r in rows.iter_mut() {
                if *r & p != 0 {
                    *r ^= v;
                }
            }
            rows.push(v);
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let mut offset = offset & mask(n);
        for &r in &rows {
            if offset & top_bit(r) != 0 {
                offset ^= r;
            }
        }
        Ok(AffineSubspace { n, basis: rows, offset })
    }

    /// The single point `{x}`.
    pub fn point(x: BitVector) -> Self {
        AffineSubspace { n: x.len(), basis: Vec::new(), offset: x.bits() }
    }

    /// All of 𝔽₂ⁿ.
    pub fn full(n: usize) -> Result<Self, F2Error> {
        if n == 0 || n > MAX_BITS {
            return Err(F2Error::LengthOutOfRange(n));
        }
        Ok(AffineSubspace { n, basis: (0..n).rev().map(|b| 1u32 << b).collect(), offset: 0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<BitVector> {
        self.basis.iter().map(|&b| BitVector::new(self.n, b).unwrap()).collect()
    }

    pub fn basis_words(&self) -> &[u32] {
        &self.basis
    }

    pub fn offset(&self) -> BitVector {
        BitVector::new(self.n, self.offset).unwrap()
    }

    pub fn offset_word(&self) -> u32 {
        self.offset
    }

    /// Pivot positions as qubit indices (0 = leftmost), strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|&b| self.n - 1 - top_bit(b).trailing_zeros() as usize).collect()
    }

    /// The point with coordinate word `coords`.
    pub fn point_at(&self, coords: u32) -> u32 {
        let mut p = self.offset;
        for (i, &b) in self.basis.iter().enumerate() {
            if (coords >> i) & 1 == 1 {
                p ^= b;
            }
        }
        p
    }

    /// All `2ᵏ` points, indexed by coordinate word.
    pub fn points(&self) -> Vec<u32> {
        (0..1u32 << self.dim()).map(|c| self.point_at(c)).collect()
    }

    /// Coordinates of the packed point `x` if it lies in the subspace.
    pub fn coordinates_of(&self, x: u32) -> Option<u32> {
        let mut r = x ^ self.offset;
        let mut coords = 0;
        for (i, &b) in self.basis.iter().enumerate() {
            if r & top_bit(b) != 0 {
                r ^= b;
                coords |= 1 << i;
            }
        }
        (r == 0).then_some(coords)
    }

    /// Membership test; on success the unique coordinate word.
    pub fn membership(&self, x: &BitVector) -> Result<Option<u32>, F2Error> {
        if x.len() != self.n {
            return Err(F2Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(self.coordinates_of(x.bits()))
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        matches!(self.membership(x), Ok(Some(_)))
    }

    /// Indicator of the point set as a 64-bit mask (`n ≤ 6`).
    pub fn point_mask(&self) -> u64 {
        debug_assert!(self.n <= 6);
        self.points().into_iter().fold(0u64, |m, p| m | (1u64 << p))
    }
}

fn top_bit(x: u32) -> u32 {
    debug_assert!(x != 0);
    1u32 << (31 - x.leading_zeros())
}

impl Ord for AffineSubspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.dim(), &self.basis, self.offset).cmp(&(other.n, other.dim(), &other.basis, other.offset))
    }
}

impl PartialOrd for AffineSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self.basis.iter().map(|&b| bits_to_string(b, self.n)).collect();
        write!(f, "{} + span{{{}}}", bits_to_string(self.offset, self.n), basis.join(", "))
    }
}

/// Every affine subspace of 𝔽₂ⁿ, each once, sorted by dimension then
/// canonical basis then offset.
pub fn enumerate_affine_subspaces(n: usize) -> Result<Vec<AffineSubspace>, F2Error> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(F2Error::EnumerationOutOfRange(n));
    }
    let mut out = Vec::new();
    for pivot_set in 0u32..1 << n {
        let pivots: Vec<u32> = (0..n as u32).rev().filter(|b| (pivot_set >> b) & 1 == 1).collect();
        // Free positions of each basis vector: non-pivot bits right of its pivot.
        let free: Vec<Vec<u32>> = pivots
            .iter()
            .map(|&p| (0..p).filter(|b| (pivot_set >> b) & 1 == 0).collect())
            .collect();
        let offset_free: Vec<u32> = (0..n as u32).filter(|b| (pivot_set >> b) & 1 == 0).collect();
        let total_free: usize = free.iter().map(Vec::len).sum();
        for fill in 0u64..1 << total_free {
            let mut basis = Vec::with_capacity(pivots.len());
            let mut cursor = 0;
            for (j, &p) in pivots.iter().enumerate() {
                let mut b = 1u32 << p;
                for &f in &free[j] {
                    if (fill >> cursor) & 1 == 1 {
                        b |= 1 << f;
                    }
                    cursor += 1;
                }
                basis.push(b);
            }
            for off in 0u32..1 << offset_free.len() {
                let offset = offset_free
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (i, &f)| if (off >> i) & 1 == 1 { acc | (1 << f) } else { acc });
                out.push(AffineSubspace { n, basis: basis.clone(), offset });
            }
        }
    }
    out.sort();
    Ok(out)
}
