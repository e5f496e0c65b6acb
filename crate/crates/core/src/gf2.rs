//! Bit-packed binary vectors, matrices and linear codes.
//!
//! A vector of length `n` lives in the low `n` bits of a `u64`; coordinate
//! `i` (0-based) is bit `i`. The same integer is the vertex index of the
//! word in the hypercube, so translating by a word is an XOR.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Guard, Result};

pub const MAX_LENGTH: usize = 64;
/// Largest dimension whose codewords are enumerated without `Guard::Override`.
pub const MAX_ENUM_DIMENSION: usize = 28;
/// Largest ambient length whose cosets are materialized without `Guard::Override`.
pub const MAX_COSET_LENGTH: usize = 24;

#[inline]
pub fn length_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: u8,
    bits: u64,
}

impl BitVector {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_LENGTH {
            return Err(Error::usage(format!("vector length {len} outside 1..=64")));
        }
        if bits & !length_mask(len) != 0 {
            return Err(Error::usage(format!(
                "bits {bits:#x} set beyond length {len}"
            )));
        }
        Ok(BitVector {
            len: len as u8,
            bits,
        })
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(len, 0)
    }

    /// The `i`-th unit vector (0-based).
    pub fn unit(len: usize, i: usize) -> Result<Self> {
        if i >= len {
            return Err(Error::usage(format!("unit index {i} >= length {len}")));
        }
        Self::new(len, 1 << i)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        i < self.len() && (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        check_len(self.len(), other.len())?;
        Ok(BitVector {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// `(self, tail)`: the coordinates of `tail` follow those of `self`.
    pub fn concat(&self, tail: &BitVector) -> Result<BitVector> {
        let len = self.len() + tail.len();
        if len > MAX_LENGTH {
            return Err(Error::usage(format!("concatenated length {len} exceeds 64")));
        }
        BitVector::new(len, self.bits | (tail.bits << self.len()))
    }

    /// Parses a `0`/`1` string, first character = first coordinate.
    pub fn parse(s: &str) -> Result<BitVector> {
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < 64 => bits |= 1 << i,
                '1' => {}
                _ => return Err(Error::usage(format!("invalid bit character {ch:?}"))),
            }
        }
        BitVector::new(s.chars().count(), bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&bits_to_string(self.bits, self.len()))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

pub(crate) fn bits_to_string(bits: u64, len: usize) -> String {
    (0..len)
        .map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}

pub fn hamming_distance(a: &BitVector, b: &BitVector) -> Result<u32> {
    check_len(a.len(), b.len())?;
    Ok((a.bits ^ b.bits).count_ones())
}

/// Matrix over GF(2) stored as one packed word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<u64>,
}

impl BinaryMatrix {
    pub fn new(cols: usize, rows: &[BitVector]) -> Result<Self> {
        for r in rows {
            check_len(r.len(), cols)?;
        }
        Ok(BinaryMatrix {
            cols,
            rows: rows.iter().map(|r| r.bits).collect(),
        })
    }

    pub fn from_words(cols: usize, rows: Vec<u64>) -> Result<Self> {
        if cols == 0 || cols > MAX_LENGTH {
            return Err(Error::usage(format!("column count {cols} outside 1..=64")));
        }
        if let Some(r) = rows.iter().find(|r| **r & !length_mask(cols) != 0) {
            return Err(Error::usage(format!("row {r:#x} wider than {cols} columns")));
        }
        Ok(BinaryMatrix { cols, rows })
    }

    /// Builds an `m x n` matrix from its columns; bit `i` of a column is row `i`.
    pub fn from_columns(m: usize, columns: &[u64]) -> Result<Self> {
        if m > MAX_LENGTH {
            return Err(Error::usage(format!("row count {m} exceeds 64")));
        }
        let mut rows = vec![0u64; m];
        for (j, &col) in columns.iter().enumerate() {
            if col & !length_mask(m) != 0 {
                return Err(Error::usage(format!("column {j} wider than {m} rows")));
            }
            for (i, row) in rows.iter_mut().enumerate() {
                *row |= ((col >> i) & 1) << j;
            }
        }
        Self::from_words(columns.len(), rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_words(n, (0..n).map(|i| 1u64 << i).collect())
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn words(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.cols as u8,
            bits: self.rows[i],
        }
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = BitVector> + '_ {
        (0..self.rows.len()).map(move |i| self.row(i))
    }

    /// Column `j` packed with row `i` at bit `i`.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r >> j) & 1) << i))
    }

    /// `H v^T`, packed with row `i` at bit `i`.
    pub fn syndrome(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((((r & v).count_ones()) as u64 & 1) << i))
    }

    /// Reduced row-echelon form (pivots on the earliest coordinate) and rank.
    /// Zero rows are dropped.
    pub fn rref(&self) -> (BinaryMatrix, usize) {
        let (rows, _) = echelon(&self.rows, self.cols, PivotOrder::Lowest);
        let rank = rows.len();
        (
            BinaryMatrix {
                cols: self.cols,
                rows,
            },
            rank,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{c : H c^T = 0}`.
    pub fn kernel(&self) -> BinaryMatrix {
        let (rows, pivots) = echelon(&self.rows, self.cols, PivotOrder::Lowest);
        let pivot_mask = pivots.iter().fold(0u64, |m, p| m | (1 << p));
        let mut basis = Vec::with_capacity(self.cols - rows.len());
        for free in (0..self.cols).filter(|c| pivot_mask & (1 << c) == 0) {
            let mut v = 1u64 << free;
            for (row, &p) in rows.iter().zip(&pivots) {
                if (row >> free) & 1 == 1 {
                    v |= 1 << p;
                }
            }
            basis.push(v);
        }
        BinaryMatrix {
            cols: self.cols,
            rows: basis,
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| bits_to_string(*r, self.cols))
            .collect();
        f.debug_struct("BinaryMatrix")
            .field("cols", &self.cols)
            .field("rows", &rows)
            .finish()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum PivotOrder {
    /// Pivot on the lowest set bit (first coordinate), classic RREF.
    Lowest,
    /// Pivot on the highest set bit; the reduced representative of a coset is
    /// then its minimum vertex index.
    Highest,
}

/// Fully reduced echelon form. Returns nonzero rows and their pivot columns.
pub(crate) fn echelon(rows: &[u64], cols: usize, order: PivotOrder) -> (Vec<u64>, Vec<usize>) {
    let mut work: Vec<u64> = rows.iter().copied().filter(|r| *r != 0).collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    let columns: Box<dyn Iterator<Item = usize>> = match order {
        PivotOrder::Lowest => Box::new(0..cols),
        PivotOrder::Highest => Box::new((0..cols).rev()),
    };
    for c in columns {
        let bit = 1u64 << c;
        let Some(found) = (next..work.len()).find(|&i| work[i] & bit != 0) else {
            continue;
        };
        work.swap(next, found);
        let pivot_row = work[next];
        for (i, row) in work.iter_mut().enumerate() {
            if i != next && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(c);
        next += 1;
        if next == work.len() {
            break;
        }
    }
    work.truncate(next);
    (work, pivots)
}

/// Folds over every word of the span of `rows` (which must be independent),
/// splitting the enumeration across rayon workers.
pub(crate) fn par_fold_span<A, I, F, R>(rows: &[u64], identity: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    let k = rows.len();
    let high = k.min(10);
    let low = k - high;
    let (low_rows, high_rows) = rows.split_at(low);
    (0u64..1 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut word = high_rows
                .iter()
                .enumerate()
                .filter(|(i, _)| (prefix >> i) & 1 == 1)
                .fold(0u64, |acc, (_, r)| acc ^ r);
            let mut acc = fold(identity(), word);
            for step in 1u64..1 << low {
                word ^= low_rows[step.trailing_zeros() as usize];
                acc = fold(acc, word);
            }
            acc
        })
        .reduce(&identity, &reduce)
}

/// Binary `[n, k]` linear code held by a reduced generator matrix.
#[derive(Clone)]
pub struct BinaryLinearCode {
    generator: BinaryMatrix,
    min_weight: OnceLock<Option<u32>>,
}

impl PartialEq for BinaryLinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl Eq for BinaryLinearCode {}

impl fmt::Debug for BinaryLinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BinaryLinearCode")
            .field("n", &self.length())
            .field("k", &self.dimension())
            .field("generator", &self.generator)
            .finish()
    }
}

impl BinaryLinearCode {
    /// The row space of `m`; dependent rows are discarded.
    pub fn from_generator(m: &BinaryMatrix) -> Self {
        BinaryLinearCode {
            generator: m.rref().0,
            min_weight: OnceLock::new(),
        }
    }

    pub fn from_parity_check(h: &BinaryMatrix) -> Self {
        Self::from_generator(&h.kernel())
    }

    pub fn full_space(n: usize) -> Result<Self> {
        Ok(Self::from_generator(&BinaryMatrix::identity(n)?))
    }

    pub fn zero_code(n: usize) -> Result<Self> {
        Ok(Self::from_generator(&BinaryMatrix::from_words(n, vec![])?))
    }

    pub fn repetition(n: usize) -> Result<Self> {
        Ok(Self::from_generator(&BinaryMatrix::from_words(
            n,
            vec![length_mask(n)],
        )?))
    }

    /// Hamming code of length `2^r - 1`: parity-check columns are 1..2^r.
    pub fn hamming(r: usize) -> Result<Self> {
        if !(2..=6).contains(&r) {
            return Err(Error::usage(format!("hamming redundancy {r} outside 2..=6")));
        }
        let columns: Vec<u64> = (1..1u64 << r).collect();
        Ok(Self::from_parity_check(&BinaryMatrix::from_columns(r, &columns)?))
    }

    /// The `[23, 12, 7]` Golay code, cyclic with generator
    /// `x^11 + x^9 + x^7 + x^6 + x^5 + x + 1`.
    pub fn golay23() -> Self {
        const GENERATOR: u64 = 0xAE3;
        let rows: Vec<u64> = (0..12).map(|s| GENERATOR << s).collect();
        Self::from_generator(&BinaryMatrix::from_words(23, rows).expect("golay rows fit"))
    }

    pub fn length(&self) -> usize {
        self.generator.col_count()
    }

    pub fn dimension(&self) -> usize {
        self.generator.row_count()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn contains(&self, word: u64) -> bool {
        let (_, pivots) = echelon(self.generator.words(), self.length(), PivotOrder::Lowest);
        let mut w = word;
        for (row, p) in self.generator.words().iter().zip(pivots) {
            if (w >> p) & 1 == 1 {
                w ^= row;
            }
        }
        w == 0
    }

    fn enum_guard(&self, guard: Guard) -> Result<()> {
        guard.check(
            "codeword enumeration (dimension)",
            self.dimension() as u64,
            MAX_ENUM_DIMENSION as u64,
        )
    }

    /// All `2^k` codewords in Gray-code enumeration order.
    pub fn codewords(&self, guard: Guard) -> Result<Vec<u64>> {
        self.enum_guard(guard)?;
        let rows = self.generator.words();
        let mut out = Vec::with_capacity(1 << rows.len());
        let mut word = 0u64;
        out.push(word);
        for step in 1u64..1 << rows.len() {
            word ^= rows[step.trailing_zeros() as usize];
            out.push(word);
        }
        Ok(out)
    }

    /// Minimum Hamming weight of a nonzero codeword; `None` for the zero code.
    pub fn min_hamming_weight(&self, guard: Guard) -> Result<Option<u32>> {
        if let Some(w) = self.min_weight.get() {
            return Ok(*w);
        }
        let w = self.lightest_codeword(guard)?.map(|c| c.count_ones());
        let _ = self.min_weight.set(w);
        Ok(w)
    }

    /// A nonzero codeword of minimum weight (smallest index among ties).
    pub fn lightest_codeword(&self, guard: Guard) -> Result<Option<u64>> {
        self.enum_guard(guard)?;
        let key = |c: u64| (c.count_ones(), c);
        let best = par_fold_span(
            self.generator.words(),
            || None::<u64>,
            |acc, c| match acc {
                _ if c == 0 => acc,
                Some(b) if key(b) <= key(c) => acc,
                _ => Some(c),
            },
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if key(x) <= key(y) { x } else { y }),
                (x, None) => x,
                (None, y) => y,
            },
        );
        Ok(best)
    }

    /// The smallest codeword of exactly `weight`, if any.
    pub fn find_codeword_of_weight(&self, weight: u32, guard: Guard) -> Result<Option<u64>> {
        self.enum_guard(guard)?;
        Ok(par_fold_span(
            self.generator.words(),
            || None::<u64>,
            |acc, c| {
                if c.count_ones() == weight && acc.is_none_or(|a| c < a) {
                    Some(c)
                } else {
                    acc
                }
            },
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            },
        ))
    }

    /// Count of codewords per weight, index = weight.
    pub fn weight_distribution(&self, guard: Guard) -> Result<Vec<u64>> {
        self.enum_guard(guard)?;
        let n = self.length();
        Ok(par_fold_span(
            self.generator.words(),
            || vec![0u64; n + 1],
            |mut acc, c| {
                acc[c.count_ones() as usize] += 1;
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
    }

    /// Index of the coset containing `v`. Cosets are numbered in increasing
    /// order of their minimum vertex index.
    pub fn coset_index(&self, v: u64) -> u64 {
        CosetMap::new(self).index(v)
    }

    /// The cosets of the code as sorted vertex lists; block 0 is the code,
    /// and blocks are ordered by their minimum vertex (the canonical
    /// representative).
    pub fn enumerate_cosets(&self, guard: Guard) -> Result<Vec<Vec<u64>>> {
        let n = self.length();
        guard.check("coset materialization (length)", n as u64, MAX_COSET_LENGTH as u64)?;
        let map = CosetMap::new(self);
        let count = 1usize << (n - self.dimension());
        let size = 1usize << self.dimension();
        let mut blocks: Vec<Vec<u64>> = (0..count).map(|_| Vec::with_capacity(size)).collect();
        for v in 0..1u64 << n {
            blocks[map.index(v) as usize].push(v);
        }
        Ok(blocks)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("code n={} k={}", self.length(), self.dimension());
        for row in self.generator.rows() {
            s.push('\n');
            s.push_str(&row.to_string());
        }
        s.push('\n');
        s
    }

    /// Parses the `code n=<n> k=<k>` format. Rows must be independent.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (code, rest) = parse_code_lines(&mut lines)?;
        if let Some((line, _)) = rest {
            return Err(Error::parse(line, "unexpected trailing content"));
        }
        Ok(code)
    }

    /// Applies a coordinate embedding: coordinate `i` of this code goes to
    /// coordinate `i + offset` of a length-`total` code.
    pub(crate) fn shifted_rows(&self, offset: usize) -> Vec<u64> {
        self.generator.words().iter().map(|r| r << offset).collect()
    }
}

/// Parses a code block and returns the first non-empty line after it.
pub(crate) fn parse_code_lines<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(BinaryLinearCode, Option<(usize, &'a str)>)> {
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty code file"))?;
    let fields = parse_header(hline, header, "code", &["n", "k"])?;
    let (n, k) = (fields[0] as usize, fields[1] as usize);
    if n == 0 || n > MAX_LENGTH || k > n {
        return Err(Error::parse(hline, format!("invalid parameters n={n} k={k}")));
    }
    let mut rows = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, text) = lines
            .next()
            .ok_or_else(|| Error::parse(hline + rows.len() + 1, "missing generator row"))?;
        if text.len() != n || !text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::parse(line, format!("expected {n} characters of 0/1")));
        }
        rows.push(BitVector::parse(text).map_err(|e| Error::parse(line, e.to_string()))?);
    }
    let m = BinaryMatrix::new(n, &rows).map_err(|e| Error::parse(hline, e.to_string()))?;
    let code = BinaryLinearCode::from_generator(&m);
    if code.dimension() != k {
        return Err(Error::parse(
            hline,
            format!("generator rows have rank {} but k={k}", code.dimension()),
        ));
    }
    let rest = lines.find(|(_, l)| !l.trim().is_empty());
    Ok((code, rest))
}

/// Parses `<tag> key=value ...` with the given integer keys in order.
pub(crate) fn parse_header(line: usize, text: &str, tag: &str, keys: &[&str]) -> Result<Vec<u64>> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::parse(line, format!("expected header starting with `{tag}`")));
    }
    let mut values = Vec::with_capacity(keys.len());
    for key in keys {
        let part = parts
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing `{key}=`")))?;
        let value = part
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| Error::parse(line, format!("expected `{key}=`, found `{part}`")))?;
        values.push(
            value
                .parse()
                .map_err(|_| Error::parse(line, format!("bad integer `{value}`")))?,
        );
    }
    if let Some(extra) = parts.next() {
        return Err(Error::parse(line, format!("unexpected field `{extra}`")));
    }
    Ok(values)
}

/// Maps a vertex to the index of its coset.
pub(crate) struct CosetMap {
    rows: Vec<u64>,
    pivots: Vec<usize>,
    free_mask: u64,
}

impl CosetMap {
    pub(crate) fn new(code: &BinaryLinearCode) -> Self {
        let n = code.length();
        let (rows, pivots) = echelon(code.generator.words(), n, PivotOrder::Highest);
        let pivot_mask = pivots.iter().fold(0u64, |m, p| m | (1 << p));
        CosetMap {
            rows,
            pivots,
            free_mask: length_mask(n) & !pivot_mask,
        }
    }

    /// Minimum vertex of the coset of `v`.
    pub(crate) fn leader(&self, v: u64) -> u64 {
        let mut w = v;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if (w >> p) & 1 == 1 {
                w ^= row;
            }
        }
        w
    }

    pub(crate) fn index(&self, v: u64) -> u64 {
        pext(self.leader(v), self.free_mask)
    }
}

/// Gathers the bits of `v` selected by `mask` into the low bits.
fn pext(v: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let bit = m.trailing_zeros();
        out |= ((v >> bit) & 1) << k;
        k += 1;
        m &= m - 1;
    }
    out
}

/// Deletes the last coordinate (bit `n - 1`) of each word.
///
/// Fails if two words collide, which happens exactly when the block has
/// two words at distance 1 differing in that coordinate.
pub fn puncture_last(block: &[u64], n: usize) -> Result<Vec<u64>> {
    if !(2..=MAX_LENGTH).contains(&n) {
        return Err(Error::usage(format!("cannot puncture length {n}")));
    }
    let mask = length_mask(n - 1);
    let mut out: Vec<u64> = block.iter().map(|w| w & mask).collect();
    out.sort_unstable();
    if let Some(pair) = out.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::Integrity(format!(
            "puncturing merges two words onto {}",
            bits_to_string(pair[0], n - 1)
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    fn hamming7() -> BinaryLinearCode {
        BinaryLinearCode::hamming(3).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(hamming_distance(&bv("0000"), &bv("0000")).unwrap(), 0);
        assert_eq!(hamming_distance(&bv("101"), &bv("011")).unwrap(), 2);
        assert_eq!(
            hamming_distance(&bv("1111111111111111"), &bv("0000000000000000")).unwrap(),
            16
        );
        assert!(matches!(
            hamming_distance(&bv("10"), &bv("101")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn bitvector_layout() {
        let v = bv("1101");
        assert_eq!(v.bits(), 0b1011);
        assert_eq!(v.to_string(), "1101");
        assert!(BitVector::new(3, 0b1000).is_err());
        assert!(BitVector::new(65, 0).is_err());
        assert_eq!(bv("10").concat(&bv("011")).unwrap().to_string(), "10011");
    }

    #[test]
    fn rref_examples() {
        let dup = BinaryMatrix::new(2, &[bv("11"), bv("11")]).unwrap();
        assert_eq!(dup.rref().1, 1);
        let id = BinaryMatrix::new(2, &[bv("10"), bv("01")]).unwrap();
        let (r, rank) = id.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, id);
        // systematic [7,4] Hamming generator
        let g = BinaryMatrix::new(
            7,
            &[bv("1000110"), bv("0100101"), bv("0010011"), bv("0001111")],
        )
        .unwrap();
        assert_eq!(g.rref().1, 4);
    }

    #[test]
    fn min_weight_examples() {
        assert_eq!(
            BinaryLinearCode::repetition(3).unwrap().min_hamming_weight(Guard::Enforce).unwrap(),
            Some(3)
        );
        assert_eq!(hamming7().dimension(), 4);
        assert_eq!(hamming7().min_hamming_weight(Guard::Enforce).unwrap(), Some(3));
        let golay = BinaryLinearCode::golay23();
        assert_eq!(golay.dimension(), 12);
        assert_eq!(golay.min_hamming_weight(Guard::Enforce).unwrap(), Some(7));
        assert_eq!(BinaryLinearCode::zero_code(4).unwrap().min_hamming_weight(Guard::Enforce).unwrap(), None);
    }

    #[test]
    fn golay_weight_distribution() {
        let wd = BinaryLinearCode::golay23().weight_distribution(Guard::Enforce).unwrap();
        let nonzero: Vec<(usize, u64)> = wd.iter().copied().enumerate().filter(|(_, c)| *c > 0).collect();
        assert_eq!(
            nonzero,
            vec![(0, 1), (7, 253), (8, 506), (11, 1288), (12, 1288), (15, 506), (16, 253), (23, 1)]
        );
    }

    #[test]
    fn min_weight_guard() {
        let big = BinaryLinearCode::full_space(30).unwrap();
        assert!(matches!(
            big.min_hamming_weight(Guard::Enforce),
            Err(Error::ExhaustiveLimit { .. })
        ));
        assert_eq!(big.min_hamming_weight(Guard::Override).unwrap(), Some(1));
    }

    #[test]
    fn coset_examples() {
        let rep = BinaryLinearCode::repetition(3).unwrap();
        let cosets = rep.enumerate_cosets(Guard::Enforce).unwrap();
        assert_eq!(cosets, vec![vec![0, 7], vec![1, 6], vec![2, 5], vec![3, 4]]);

        let h = hamming7().enumerate_cosets(Guard::Enforce).unwrap();
        assert_eq!(h.len(), 8);
        assert!(h.iter().all(|b| b.len() == 16));
        assert_eq!(h[0], hamming7().codewords(Guard::Enforce).unwrap().into_iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect::<Vec<_>>());

        let full = BinaryLinearCode::full_space(2).unwrap();
        assert_eq!(full.enumerate_cosets(Guard::Enforce).unwrap().len(), 1);

        let big = BinaryLinearCode::zero_code(25).unwrap();
        assert!(big.enumerate_cosets(Guard::Enforce).is_err());
    }

    #[test]
    fn hamming_cosets_match_syndromes() {
        // The syndrome under the defining parity check is a complete coset invariant.
        let h = BinaryMatrix::from_columns(3, &(1..8).collect::<Vec<_>>()).unwrap();
        let code = hamming7();
        for block in code.enumerate_cosets(Guard::Enforce).unwrap() {
            let s = h.syndrome(block[0]);
            assert!(block.iter().all(|v| h.syndrome(*v) == s));
        }
    }

    #[test]
    fn puncture_examples() {
        assert_eq!(puncture_last(&[0b000, 0b111], 3).unwrap(), vec![0b00, 0b11]);
        // 0000 and 0001 (last coordinate set) collide
        assert!(matches!(
            puncture_last(&[0b0000, 0b1000], 4),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn kernel_is_annihilated() {
        let h = BinaryMatrix::from_columns(3, &[1, 2, 4, 3, 5, 6, 7, 0]).unwrap();
        let k = h.kernel();
        assert_eq!(k.row_count(), 8 - 3);
        assert!(k.words().iter().all(|c| h.syndrome(*c) == 0));
    }

    #[test]
    fn code_text_round_trip() {
        let code = BinaryLinearCode::golay23();
        let text = code.to_text();
        assert!(text.starts_with("code n=23 k=12\n"));
        assert!(text.lines().all(|l| l == l.trim_end()));
        assert_eq!(BinaryLinearCode::from_text(&text).unwrap(), code);
        assert!(BinaryLinearCode::from_text("code n=3 k=2\n111\n111\n").is_err());
        assert!(BinaryLinearCode::from_text("code n=3 k=2\n111\n").is_err());
        assert!(BinaryLinearCode::from_text("code n=3 k=1\n1121\n").is_err());
    }

    fn brute_min_distance(words: &[u64]) -> u32 {
        let mut best = u32::MAX;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                best = best.min((a ^ b).count_ones());
            }
        }
        best
    }

    fn arb_code() -> impl Strategy<Value = BinaryLinearCode> {
        (2usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(0..(1u64 << n), 1..=n.min(8)).prop_map(move |rows| {
                BinaryLinearCode::from_generator(&BinaryMatrix::from_words(n, rows).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn triangle_inequality(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (BitVector::new(64, a).unwrap(), BitVector::new(64, b).unwrap(), BitVector::new(64, c).unwrap());
            prop_assert!(hamming_distance(&a, &b).unwrap() + hamming_distance(&b, &c).unwrap() >= hamming_distance(&a, &c).unwrap());
        }

        #[test]
        fn cosets_tile_the_cube(code in arb_code()) {
            let n = code.length();
            let blocks = code.enumerate_cosets(Guard::Enforce).unwrap();
            prop_assert_eq!(blocks.len(), 1 << (n - code.dimension()));
            let mut seen = vec![false; 1 << n];
            for block in &blocks {
                prop_assert_eq!(block.len(), 1 << code.dimension());
                let shift = block[0];
                let mut translate: Vec<u64> = blocks[0].iter().map(|c| c ^ shift).collect();
                translate.sort_unstable();
                prop_assert_eq!(&translate, block);
                for v in block {
                    prop_assert!(!seen[*v as usize]);
                    seen[*v as usize] = true;
                }
            }
            prop_assert!(seen.iter().all(|s| *s));
            // representatives are increasing minima
            prop_assert!(blocks.windows(2).all(|w| w[0][0] < w[1][0]));
        }

        #[test]
        fn min_weight_matches_pairwise(code in arb_code()) {
            let words = code.codewords(Guard::Enforce).unwrap();
            let mw = code.min_hamming_weight(Guard::Enforce).unwrap();
            if words.len() > 1 {
                prop_assert_eq!(mw, Some(brute_min_distance(&words)));
            } else {
                prop_assert_eq!(mw, None);
            }
        }

        #[test]
        fn rref_idempotent_and_row_space_preserving(n in 2usize..=16, rows in proptest::collection::vec(any::<u64>(), 0..10)) {
            let rows: Vec<u64> = rows.into_iter().map(|r| r & length_mask(n)).collect();
            let m = BinaryMatrix::from_words(n, rows.clone()).unwrap();
            let (r, rank) = m.rref();
            prop_assert_eq!(r.rref().0, r.clone());
            let code = BinaryLinearCode::from_generator(&m);
            prop_assert_eq!(code.dimension(), rank);
            for row in rows {
                prop_assert!(code.contains(row));
            }
        }
    }
}
