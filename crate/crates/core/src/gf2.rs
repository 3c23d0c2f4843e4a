//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits per word, bit `i` living in word `i / 64` at
//! position `i % 64`. Bits past `len` in the last word are always zero, so
//! word-wise comparisons and popcounts need no masking.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2) with bit-packed storage.
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

    /// Unit vector with a single 1 at `bit`.
    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at the given positions.
    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in support {
            if i >= len {
                return Err(Error::OutOfRange { index: i, len });
            }
            v.set(i, true);
        }
        Ok(v)
    }

    /// Parses a string of `0`/`1` characters, first character is coordinate 0.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::InvalidBitString(format!(
                        "unexpected character {other:?} at position {pos}"
                    )))
                }
            }
        }
        Ok(Self::from_bits(&bits))
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// # Panics
    /// Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn try_get(&self, i: usize) -> Result<bool> {
        if i >= self.len {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(self.get(i))
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming distance. Both vectors must have the same length.
    pub fn distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "distance between vectors of unequal length");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors of unequal length");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors of unequal length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// True when `self` has a 1 only where `mask` does.
    pub fn is_subset_of(&self, mask: &Self) -> bool {
        assert_eq!(self.len, mask.len);
        self.words.iter().zip(&mask.words).all(|(a, m)| a & !m == 0)
    }

    /// Iterates over the positions of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    /// Lowest set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * WORD + w.trailing_zeros() as usize)
    }

    /// Copies `len` bits starting at `start`.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = Self::zeros(len);
        let shift = start % WORD;
        let base = start / WORD;
        for (k, w) in out.words.iter_mut().enumerate() {
            let lo = self.words.get(base + k).copied().unwrap_or(0) >> shift;
            let hi = if shift == 0 {
                0
            } else {
                self.words.get(base + k + 1).copied().unwrap_or(0) << (WORD - shift)
            };
            *w = lo | hi;
        }
        out.clear_tail();
        out
    }

    /// XORs `src` into `self` starting at bit offset `start`.
    pub fn xor_at(&mut self, start: usize, src: &Self) {
        assert!(start + src.len <= self.len, "xor_at out of range");
        let shift = start % WORD;
        let base = start / WORD;
        for (k, &w) in src.words.iter().enumerate() {
            self.words[base + k] ^= w << shift;
            if shift != 0 {
                let carry = w >> (WORD - shift);
                if carry != 0 {
                    self.words[base + k + 1] ^= carry;
                }
            }
        }
    }

    /// Concatenation `(parts[0] | parts[1] | ...)`.
    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a BitVector>) -> Self {
        let parts: Vec<&BitVector> = parts.into_iter().collect();
        let total = parts.iter().map(|p| p.len).sum();
        let mut out = Self::zeros(total);
        let mut offset = 0;
        for p in parts {
            out.xor_at(offset, p);
            offset += p.len;
        }
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bitstring())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

/// A dense GF(2) matrix stored as a list of packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    /// A matrix with no rows and `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows given as bit strings; all rows must have equal length.
    pub fn from_bitstrings(rows: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|s| BitVector::from_bitstring(s))
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(parsed, cols)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value)
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self { cols: self.cols, rows })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                out.rows[c].set(r, true);
            }
        }
        out
    }

    /// `message · M`, the GF(2) combination of rows selected by `message`.
    pub fn left_mul(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.rows.len() {
            return Err(Error::LengthMismatch {
                expected: self.rows.len(),
                actual: message.len(),
            });
        }
        let mut out = BitVector::zeros(self.cols);
        for i in message.iter_ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `M · vᵀ`, one syndrome bit per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(BitVector::from_bits(
            &self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>(),
        ))
    }

    /// `A · Bᵀ`; zero exactly when every row of `A` is orthogonal to every row of `B`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "A has {} columns, B has {}",
                self.cols, other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bits(&other.rows.iter().map(|b| a.dot(b)).collect::<Vec<_>>()))
            .collect();
        Ok(Self {
            cols: other.rows.len(),
            rows,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Result<Self> {
        if let Some(&bad) = columns.iter().find(|&&c| c >= self.cols) {
            return Err(Error::OutOfRange {
                index: bad,
                len: self.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| BitVector::from_bits(&columns.iter().map(|&c| row.get(c)).collect::<Vec<_>>()))
            .collect();
        Ok(Self {
            cols: columns.len(),
            rows,
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Reduced row-echelon form.
    ///
    /// Columns are scanned left to right and the topmost remaining row with a
    /// 1 in the current column becomes its pivot, so the output is the unique
    /// RREF of the row space. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (usize, BitMatrix) {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot, rest) = tail.split_first_mut().expect("pivot row exists");
            for row in head.iter_mut().chain(rest.iter_mut()) {
                if row.get(col) {
                    row.xor_assign(pivot);
                }
            }
            rank += 1;
        }
        (rank, BitMatrix { cols: self.cols, rows })
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self) -> BitMatrix {
        let (rank, mut r) = self.rref();
        r.rows.truncate(rank);
        r
    }

    /// Pivot column of every nonzero RREF row.
    fn pivots(reduced: &BitMatrix, rank: usize) -> Vec<usize> {
        reduced.rows[..rank]
            .iter()
            .map(|row| row.first_one().expect("nonzero rref row"))
            .collect()
    }

    /// Basis (as rows) of `{x : M·xᵀ = 0}`.
    pub fn null_space(&self) -> BitMatrix {
        let (rank, reduced) = self.rref();
        let pivots = Self::pivots(&reduced, rank);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVector::unit(self.cols, free);
                for (s, &p) in pivots.iter().enumerate() {
                    if reduced.rows[s].get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        BitMatrix { cols: self.cols, rows }
    }

    /// True iff both matrices span the same row space.
    pub fn row_space_equal(&self, other: &Self) -> Result<bool> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "row spaces of length {} and {} are incomparable",
                self.cols, other.cols
            )));
        }
        Ok(self.row_basis() == other.row_basis())
    }

    /// True iff `v` lies in the row space.
    pub fn spans(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let (rank, reduced) = self.rref();
        let mut residual = v.clone();
        for row in &reduced.rows[..rank] {
            let p = row.first_one().expect("nonzero rref row");
            if residual.get(p) {
                residual.xor_assign(row);
            }
        }
        Ok(residual.is_zero())
    }

    /// Kronecker product `self ⊗ other`.
    ///
    /// Row `(a, b)` maps to `a * other.rows + b`, so the right factor varies
    /// fastest. With `A_m = A_1 ⊗ A_{m-1}` this puts the last tuple entry in
    /// the most significant position, which is the colexicographic order.
    pub fn kronecker(&self, other: &Self) -> Self {
        let (r2, c2) = (other.num_rows(), other.cols);
        let mut out = Self::zeros(self.num_rows() * r2, self.cols * c2);
        for (a, arow) in self.rows.iter().enumerate() {
            for ca in arow.iter_ones() {
                for (b, brow) in other.rows.iter().enumerate() {
                    out.rows[a * r2 + b].xor_at(ca * c2, brow);
                }
            }
        }
        out
    }

    /// The `m`-fold Kronecker power.
    pub fn kronecker_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameters("Kronecker power requires m >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = self.kronecker(&acc);
        }
        Ok(acc)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}
