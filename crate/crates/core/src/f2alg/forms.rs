//! Linear and quadratic forms on the coordinate space 𝔽₂ᵏ of a subspace.
//!
//! Coordinate words are LSB-first: bit `i` of a word is coordinate `x_i`.
//! String encodings put coordinate 0 leftmost.

use super::F2Error;

/// `l(x) = Σ l_i x_i mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearFormF2 {
    k: usize,
    bits: u32,
}

impl LinearFormF2 {
    pub fn new(k: usize, bits: u32) -> Self {
        LinearFormF2 { k, bits: bits & low_mask(k) }
    }

    pub fn zero(k: usize) -> Self {
        LinearFormF2 { k, bits: 0 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn coeff(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn eval(&self, x: u32) -> u32 {
        (self.bits & x).count_ones() & 1
    }

    pub fn all(k: usize) -> impl Iterator<Item = LinearFormF2> {
        (0..1u32 << k).map(move |b| LinearFormF2 { k, bits: b })
    }

    pub fn encode(&self) -> String {
        coord_string(self.bits, self.k)
    }

    pub fn decode(s: &str) -> Result<Self, F2Error> {
        Ok(LinearFormF2 { k: s.len(), bits: parse_coord_string(s)? })
    }
}

/// `q(x) = Σ_{i≤j} Q_ij x_i x_j mod 2`, stored as upper-triangular rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadraticFormF2 {
    k: usize,
    rows: Vec<u32>,
}

impl QuadraticFormF2 {
    pub fn zero(k: usize) -> Self {
        QuadraticFormF2 { k, rows: vec![0; k] }
    }

    /// Builds from rows, clearing anything below the diagonal.
    pub fn from_rows(k: usize, rows: Vec<u32>) -> Result<Self, F2Error> {
        if rows.len() != k {
            return Err(F2Error::LengthMismatch { expected: k, got: rows.len() });
        }
        let rows = rows.into_iter().enumerate().map(|(i, r)| r & low_mask(k) & !low_mask(i)).collect();
        Ok(QuadraticFormF2 { k, rows })
    }

    /// Number of free entries, `k(k+1)/2`.
    pub fn entry_count(k: usize) -> usize {
        k * (k + 1) / 2
    }

    /// The form whose upper-triangular entries, read row by row, are the
    /// bits of `index` (LSB first).
    pub fn from_index(k: usize, index: u64) -> Self {
        let mut rows = vec![0u32; k];
        let mut bit = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            for j in i..k {
                if (index >> bit) & 1 == 1 {
                    *row |= 1 << j;
                }
                bit += 1;
            }
        }
        QuadraticFormF2 { k, rows }
    }

    pub fn all(k: usize) -> impl Iterator<Item = QuadraticFormF2> {
        (0..1u64 << Self::entry_count(k)).map(move |i| Self::from_index(k, i))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        i <= j && (self.rows[i] >> j) & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let mut acc = 0;
        for (i, &r) in self.rows.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                acc ^= (r & x).count_ones() & 1;
            }
        }
        acc
    }

    pub fn encode(&self) -> Vec<String> {
        self.rows.iter().map(|&r| coord_string(r, self.k)).collect()
    }

    pub fn decode(rows: &[String]) -> Result<Self, F2Error> {
        let k = rows.len();
        let mut out = Vec::with_capacity(k);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != k {
                return Err(F2Error::LengthMismatch { expected: k, got: r.len() });
            }
            let w = parse_coord_string(r)?;
            if w & low_mask(i) != 0 {
                return Err(F2Error::BadBitString(r.clone()));
            }
            out.push(w);
        }
        Ok(QuadraticFormF2 { k, rows: out })
    }
}

fn low_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

fn coord_string(bits: u32, k: usize) -> String {
    (0..k).map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_coord_string(s: &str) -> Result<u32, F2Error> {
    if s.len() > 32 {
        return Err(F2Error::BadBitString(s.to_string()));
    }
    s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << i)),
        _ => Err(F2Error::BadBitString(s.to_string())),
    })
}
