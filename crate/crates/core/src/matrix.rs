//! Sign-valued and bit-packed matrix kernels.
//!
//! [`SignMatrix`] carries square ±1 arrays (Hadamard matrices and the signed
//! Kronecker cells). [`BitMatrix`] carries 0/1 incidence matrices with each row
//! packed into `u64` words, most significant bit first, so that comparing the
//! word slices of two rows lexicographically is the same as comparing the rows
//! as binary numbers. Pad bits at the tail of a row are always zero.
//!
//! Both types share a plain text format: a `rows cols` header line followed by
//! one line per row, written with `0`/`1` for bits and `+`/`-` for signs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD_BITS)
}

#[inline]
fn mask(col: usize) -> u64 {
    1u64 << (WORD_BITS - 1 - col % WORD_BITS)
}

/// Square matrix with entries in {+1, −1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Builds a matrix from row-major entries, rejecting anything that is not ±1.
    pub fn new(order: usize, entries: Vec<i8>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Shape("sign matrix order must be at least 1".into()));
        }
        if entries.len() != order * order {
            return Err(Error::Shape(format!(
                "{} entries for a matrix of order {order}",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&e| e != 1 && e != -1) {
            return Err(Error::NotSign {
                row: pos / order,
                col: pos % order,
                value: entries[pos] as i64,
            });
        }
        Ok(Self { order, entries })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let order = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {order} rows",
                r.len()
            )));
        }
        Self::new(order, rows.concat())
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i8) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                entries.push(f(r, c));
            }
        }
        Self::new(order, entries)
    }

    pub fn ones(order: usize) -> Result<Self> {
        Self::new(order, vec![1; order * order])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn column(&self, j: usize) -> Vec<i8> {
        (0..self.order).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order)
    }

    pub fn negate_row(&mut self, i: usize) {
        for e in &mut self.entries[i * self.order..(i + 1) * self.order] {
            *e = -*e;
        }
    }

    pub fn negate_column(&mut self, j: usize) {
        for i in 0..self.order {
            self.entries[i * self.order + j] *= -1;
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        Self {
            order: n,
            entries: (0..n * n).map(|p| self.get(p % n, p / n)).collect(),
        }
    }

    /// Integer inner product of rows `a` and `b`.
    pub fn row_dot(&self, a: usize, b: usize) -> i64 {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(&x, &y)| (x * y) as i64)
            .sum()
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix({})", self.order)?;
        for row in self.rows() {
            let s: String = row.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.order, self.order)?;
        for row in self.rows() {
            let s: String = row.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols, body) = parse_header(s)?;
        if rows != cols {
            return Err(Error::Parse {
                line: 1,
                message: format!("sign matrix must be square, header says {rows}x{cols}"),
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (idx, line) in body.enumerate() {
            let line_no = idx + 2;
            if line.chars().count() != cols {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {cols} symbols, found {}", line.chars().count()),
                });
            }
            for ch in line.chars() {
                entries.push(match ch {
                    '+' => 1,
                    '-' => -1,
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("unexpected symbol {other:?}"),
                        })
                    }
                });
            }
        }
        if entries.len() != rows * cols {
            return Err(Error::Parse {
                line: entries.len() / cols.max(1) + 2,
                message: format!("expected {rows} rows"),
            });
        }
        Self::new(rows, entries)
    }
}

fn parse_header(s: &str) -> Result<(usize, usize, impl Iterator<Item = &str>)> {
    let mut lines = s.lines();
    let header = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        message: "missing header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: 1,
            message: format!("bad header {header:?}: {e}"),
        })?;
    let [rows, cols] = dims[..] else {
        return Err(Error::Parse {
            line: 1,
            message: format!("header must be \"rows cols\", got {header:?}"),
        });
    };
    let body = lines.filter(|l| !l.is_empty());
    Ok((rows, cols, body))
}

/// Kronecker product of two sign matrices; the result has order `a.order() * b.order()`.
pub fn kronecker(a: &SignMatrix, b: &SignMatrix) -> SignMatrix {
    let (n, m) = (a.order(), b.order());
    let order = n * m;
    let mut entries = Vec::with_capacity(order * order);
    for r in 0..order {
        for c in 0..order {
            entries.push(a.get(r / m, c / m) * b.get(r % m, c % m));
        }
    }
    SignMatrix { order, entries }
}

/// Kronecker product of a row vector with a column vector: entry `(j, k)` is
/// `row[k] * col[j]`.
pub fn outer(row: &[i8], col: &[i8]) -> Result<SignMatrix> {
    if row.len() != col.len() {
        return Err(Error::Shape(format!(
            "row vector of length {} against column vector of length {}",
            row.len(),
            col.len()
        )));
    }
    SignMatrix::from_fn(row.len(), |j, k| row[k] * col[j])
}

/// Entrywise map +1 ↦ 0, −1 ↦ 1.
pub fn sign_to_bit(m: &SignMatrix) -> BitMatrix {
    let n = m.order();
    let mut out = BitMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if m.get(r, c) < 0 {
                out.set(r, c, true);
            }
        }
    }
    out
}

/// A `rows × cols` 0/1 matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols).complement()
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn from_bool_rows(cols: usize, rows: &[Vec<bool>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(Self::from_fn(rows.len(), cols, |r, c| rows[r][c]))
    }

    /// Stacks packed rows. Each slice must have the packed width for `cols`
    /// with zero pad bits.
    pub(crate) fn from_packed_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [u64]>) -> Self {
        let stride = words_for(cols);
        let mut data = Vec::new();
        let mut count = 0;
        for r in rows {
            debug_assert_eq!(r.len(), stride);
            data.extend_from_slice(r);
            count += 1;
        }
        Self {
            rows: count,
            cols,
            stride,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row * self.stride + col / WORD_BITS] & mask(col) != 0
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let w = &mut self.data[row * self.stride + col / WORD_BITS];
        if value {
            *w |= mask(col);
        } else {
            *w &= !mask(col);
        }
    }

    /// Packed words of row `i`.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_bits(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|c| self.get(i, c)).collect()
    }

    pub fn row_string(&self, i: usize) -> String {
        (0..self.cols)
            .map(|c| if self.get(i, c) { '1' } else { '0' })
            .collect()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rows {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.rows,
            })
        } else {
            Ok(())
        }
    }

    pub fn row_weight(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        Ok(self.weight_unchecked(i))
    }

    pub fn pair_intersection(&self, i: usize, j: usize) -> Result<usize> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::RepeatedIndex(i));
        }
        Ok(self.pair_unchecked(i, j))
    }

    pub fn triple_intersection(&self, i: usize, j: usize, k: usize) -> Result<usize> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        if i == j || i == k {
            return Err(Error::RepeatedIndex(i));
        }
        if j == k {
            return Err(Error::RepeatedIndex(j));
        }
        Ok(self.triple_unchecked(i, j, k))
    }

    #[inline]
    pub(crate) fn weight_unchecked(&self, i: usize) -> usize {
        popcount(self.row_words(i))
    }

    #[inline]
    pub(crate) fn pair_unchecked(&self, i: usize, j: usize) -> usize {
        and_count(self.row_words(i), self.row_words(j))
    }

    #[inline]
    pub(crate) fn triple_unchecked(&self, i: usize, j: usize, k: usize) -> usize {
        self.row_words(i)
            .iter()
            .zip(self.row_words(j))
            .zip(self.row_words(k))
            .map(|((a, b), c)| (a & b & c).count_ones() as usize)
            .sum()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.data {
            *w = !*w;
        }
        out.clear_padding();
        out
    }

    fn clear_padding(&mut self) {
        let tail = self.cols % WORD_BITS;
        if tail == 0 || self.stride == 0 {
            return;
        }
        let keep = !0u64 << (WORD_BITS - tail);
        for r in 0..self.rows {
            self.data[(r + 1) * self.stride - 1] &= keep;
        }
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut weights = vec![0; self.cols];
        for r in 0..self.rows {
            for (c, w) in weights.iter_mut().enumerate() {
                if self.get(r, c) {
                    *w += 1;
                }
            }
        }
        weights
    }

    /// Copies `block` into this matrix with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &BitMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(row + r, col + c, block.get(r, c));
            }
        }
    }

    /// Keeps the rows listed in `rows` and the columns listed in `cols`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (nr, &r) in rows.iter().enumerate() {
            for (nc, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(nr, nc, true);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub(crate) fn xor_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row_string(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{}", self.row_string(r))?;
        }
        Ok(())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, cols, body) = parse_header(s)?;
        let mut m = Self::zeros(rows, cols);
        let mut seen = 0;
        for (idx, line) in body.enumerate() {
            let line_no = idx + 2;
            if idx >= rows {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("more than {rows} rows"),
                });
            }
            if line.len() != cols {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected {cols} bits, found {}", line.len()),
                });
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(idx, c, true),
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("unexpected symbol {other:?}"),
                        })
                    }
                }
            }
            seen += 1;
        }
        if seen != rows {
            return Err(Error::Parse {
                line: seen + 2,
                message: format!("expected {rows} rows, found {seen}"),
            });
        }
        Ok(m)
    }
}
