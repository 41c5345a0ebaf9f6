//! Dense GF(2) linear algebra on bit-packed words.
//!
//! Matrices pack each row into `u64` words so rank computations at
//! block length 2^14 stay cheap. Only logical (row, col) semantics are
//! exposed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::Result;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Fixed-length binary word. Carrier for messages, codewords and
/// channel inputs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `value` (bit 0 first).
    pub fn from_uint(value: u64, len: usize) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len.min(64) {
            v.set(i, (value >> i) & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if bit {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of unequal-length vectors");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// Dense binary matrix with row-packed storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        Gf2Matrix {
            rows,
            cols,
            wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given equal-length vectors.
    pub fn from_rows(rows: &[BitVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            m.row_mut(r).copy_from_slice(row.words());
        }
        Ok(m)
    }

    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Gf2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                m.set(r, c, b != 0);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.wpr + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.data[r * self.wpr + c / WORD_BITS];
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.wpr..(r + 1) * self.wpr]
    }

    pub fn row_bits(&self, r: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        for c in 0..self.cols {
            if self.get(r, c) {
                v.set(c, true);
            }
        }
        v
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.wpr {
            self.data.swap(a * self.wpr + w, b * self.wpr + w);
        }
    }

    /// dst ^= src, rowwise.
    fn xor_rows(&mut self, dst: usize, src: usize) {
        let wpr = self.wpr;
        let (lo, hi, flip) = if dst < src {
            (dst, src, false)
        } else {
            (src, dst, true)
        };
        let (a, b) = self.data.split_at_mut(hi * wpr);
        let first = &mut a[lo * wpr..lo * wpr + wpr];
        let second = &mut b[..wpr];
        if flip {
            for (d, s) in second.iter_mut().zip(first.iter()) {
                *d ^= s;
            }
        } else {
            for (d, s) in first.iter_mut().zip(second.iter()) {
                *d ^= s;
            }
        }
    }

    /// Reduced row echelon form over GF(2) and the pivot columns, in
    /// strictly increasing order.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, piv);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// GF(2) row rank. Empty matrices have rank 0.
    pub fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.rows).collect();
        self.rank_of_rows(&all)
    }

    /// Rank of the submatrix formed by the given rows, without
    /// materializing it. Independent basis rows are accumulated keyed
    /// by their leading column.
    pub fn rank_of_rows(&self, rows: &[usize]) -> usize {
        let mut basis: Vec<Option<Vec<u64>>> = vec![None; self.cols];
        let mut rank = 0;
        let mut tmp = vec![0u64; self.wpr];
        for &r in rows {
            tmp.copy_from_slice(self.row(r));
            while let Some(lead) = leading_bit(&tmp) {
                match &basis[lead] {
                    Some(b) => {
                        for (t, w) in tmp.iter_mut().zip(b.iter()) {
                            *t ^= w;
                        }
                    }
                    None => {
                        basis[lead] = Some(tmp.clone());
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    /// Basis of the right null space of the row space: an H with
    /// `cols(H) = cols(self)` and `rows(H) = cols - rank`, such that
    /// every row of `self` is orthogonal to every row of H.
    pub fn parity_check_from_generator(&self) -> Gf2Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut h = Gf2Matrix::zeros(self.cols - pivots.len(), self.cols);
        let free_cols = is_pivot.iter().enumerate().filter(|(_, &p)| !p);
        for (hr, (free, _)) in free_cols.enumerate() {
            h.set(hr, free, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, free) {
                    h.set(hr, p, true);
                }
            }
        }
        h
    }

    /// Matrix of the selected columns, in the given order.
    pub fn column_submatrix(&self, index_set: &[usize]) -> Result<Gf2Matrix> {
        for &c in index_set {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    limit: self.cols,
                });
            }
        }
        let mut m = Gf2Matrix::zeros(self.rows, index_set.len());
        for r in 0..self.rows {
            for (j, &c) in index_set.iter().enumerate() {
                if self.get(r, c) {
                    m.set(r, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn transposed(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let c = w * WORD_BITS + bits.trailing_zeros() as usize;
                    t.set(c, r, true);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    /// Row r of `self` times column vector `v` over GF(2).
    pub fn row_dot(&self, r: usize, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut acc = 0u64;
        for (a, b) in self.row(r).iter().zip(v.words()) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }
}

fn leading_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * WORD_BITS + w.trailing_zeros() as usize);
        }
    }
    None
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_bits(r))?;
        }
        Ok(())
    }
}
