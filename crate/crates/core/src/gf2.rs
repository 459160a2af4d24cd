//! Dense GF(2) vectors and matrices.
//!
//! Bit order is fixed across the crate: index 0 is the leftmost character in
//! every textual rendering and the most significant bit whenever a vector is
//! read as an integer. Bits are packed 64 per word with index 0 in the top bit
//! of word 0, so comparing word slices compares vectors lexicographically.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (WORD - 1 - i % WORD)
}

/// A vector over GF(2).
///
/// Ordering is by length, then lexicographic on the bits (index 0 first), which
/// for equal lengths coincides with the integer order of the MSB-first value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_tail();
        v
    }

    /// The unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from the low `len` bits of `value`, most significant first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_u64 supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value << (WORD - len);
            v.clear_tail();
        }
        v
    }

    pub(crate) fn from_words(len: usize, words: &[u64]) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        Self {
            len,
            words: words.to_vec(),
        }
    }

    /// MSB-first integer value; requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "to_u64 supports at most 64 bits");
        if self.len == 0 {
            0
        } else {
            self.words[0] >> (WORD - self.len)
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        if bit {
            self.words[i / WORD] |= mask(i);
        } else {
            self.words[i / WORD] &= !mask(i);
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= mask(i);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of 1 bits.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// In-place xor. Panics on length mismatch; use [`BitVector::try_xor`] for a checked form.
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn try_xor(&self, other: &BitVector) -> Result<BitVector> {
        check_len(self.len, other.len)?;
        Ok(self ^ other)
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the 1 bits in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let lead = w.leading_zeros() as usize;
                w &= !(1u64 << (WORD - 1 - lead));
                Some(wi * WORD + lead)
            })
        })
    }

    pub fn complement(&self) -> BitVector {
        let mut v = self.clone();
        for w in &mut v.words {
            *w = !*w;
        }
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX << (WORD - rem);
            }
        }
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty bit string".into()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector::from_bits)
    }
}

/// Hamming distance `weight(x ^ y)`.
pub fn hamming_distance(x: &BitVector, y: &BitVector) -> Result<usize> {
    check_len(x.len, y.len)?;
    Ok(x.words
        .iter()
        .zip(&y.words)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum())
}

/// A dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Output of [`BitMatrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(Self { cols, rows })
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.rows[r].set(c, bit)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn column(&self, c: usize) -> BitVector {
        BitVector::from_bits(self.rows.iter().map(|r| r.get(c)))
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols).map(|c| self.column(c)).collect();
        BitMatrix {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.cols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    /// Row-vector product `coeffs · self`: the xor of the rows selected by `coeffs`.
    pub fn combine(&self, coeffs: &BitVector) -> Result<BitVector> {
        check_len(self.rows.len(), coeffs.len())?;
        let mut out = BitVector::zeros(self.cols);
        for i in coeffs.support() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `v · selfᵀ`: one inner product per row. With `self = H` this is the syndrome.
    pub fn mul_transposed(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.cols, v.len())?;
        Ok(BitVector::from_bits(self.rows.iter().map(|r| r.dot(v))))
    }

    pub fn mat_mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.rows.len())?;
        let rows = self
            .rows
            .iter()
            .map(|r| other.combine(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix {
            cols: other.cols,
            rows,
        })
    }

    /// Reduced row-echelon form. Pivots are chosen scanning columns left to
    /// right; zero rows are kept at the bottom so the shape is unchanged.
    pub fn rref(&self) -> Rref {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.len() {
                break;
            }
            let Some(p) = (rank..m.len()).find(|&r| m[r].get(c)) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        Rref {
            reduced: BitMatrix {
                cols: self.cols,
                rows: m,
            },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{v : self · vᵀ = 0}`, one row per free column in increasing
    /// column order.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.cols)?;
        write!(f, "{self}")
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    /// Newline-separated rows of equal length. Blank lines are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse::<BitVector>)
            .collect::<Result<Vec<_>>>()?;
        let cols = rows
            .first()
            .map(BitVector::len)
            .ok_or_else(|| Error::Parse("matrix has no rows".into()))?;
        BitMatrix::from_rows(cols, rows)
    }
}
