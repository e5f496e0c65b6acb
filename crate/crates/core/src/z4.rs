//! Vectors, polynomials and linear codes over the integers mod 4.
//!
//! Entry `i` of a [`Z4Vector`] occupies bits `2i` (low) and `2i + 1` (high)
//! of a `u64`, which lets addition, negation and the Gray map run as a
//! handful of word operations.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Guard, Result};
use crate::gf2::BitVector;

pub const MAX_LENGTH: usize = 32;
/// Codes with `2*k1 + k2` above this are not enumerated without `Guard::Override`.
pub const MAX_ENUM_LOG2_SIZE: usize = 24;

const LOW: u64 = 0x5555_5555_5555_5555;

#[inline]
fn entry_mask(len: usize) -> u64 {
    if len >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * len)) - 1
    }
}

#[inline]
fn split(p: u64) -> (u64, u64) {
    (p & LOW, (p >> 1) & LOW)
}

#[inline]
fn join(lo: u64, hi: u64) -> u64 {
    lo | (hi << 1)
}

#[inline]
fn packed_add(a: u64, b: u64) -> u64 {
    let (al, ah) = split(a);
    let (bl, bh) = split(b);
    join(al ^ bl, ah ^ bh ^ (al & bl))
}

#[inline]
fn packed_neg(a: u64) -> u64 {
    let (l, h) = split(a);
    join(l, h ^ l)
}

#[inline]
fn packed_scale(a: u64, s: u8) -> u64 {
    match s & 3 {
        0 => 0,
        1 => a,
        2 => split(a).0 << 1,
        _ => packed_neg(a),
    }
}

#[inline]
fn packed_gray(a: u64) -> u64 {
    let (l, h) = split(a);
    h | ((h ^ l) << 1)
}

#[inline]
fn packed_lee_weight(a: u64) -> u32 {
    packed_gray(a).count_ones()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Vector {
    len: u8,
    packed: u64,
}

impl Z4Vector {
    pub fn new(entries: &[u8]) -> Result<Self> {
        if entries.is_empty() || entries.len() > MAX_LENGTH {
            return Err(Error::usage(format!(
                "Z4 vector length {} outside 1..=32",
                entries.len()
            )));
        }
        let mut packed = 0u64;
        for (i, &e) in entries.iter().enumerate() {
            if e > 3 {
                return Err(Error::usage(format!("entry {e} is not in Z4")));
            }
            packed |= (e as u64) << (2 * i);
        }
        Ok(Z4Vector {
            len: entries.len() as u8,
            packed,
        })
    }

    pub fn zero(len: usize) -> Result<Self> {
        Self::new(&vec![0; len])
    }

    pub fn from_packed(len: usize, packed: u64) -> Result<Self> {
        if len == 0 || len > MAX_LENGTH || packed & !entry_mask(len) != 0 {
            return Err(Error::usage(format!("invalid packed Z4 vector of length {len}")));
        }
        Ok(Z4Vector {
            len: len as u8,
            packed,
        })
    }

    /// Unit-like vector with value `s` at coordinate `i`.
    pub fn single(len: usize, i: usize, s: u8) -> Result<Self> {
        let mut e = vec![0u8; len];
        if i >= len {
            return Err(Error::usage(format!("coordinate {i} >= length {len}")));
        }
        e[i] = s & 3;
        Self::new(&e)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let entries: Option<Vec<u8>> = s
            .chars()
            .map(|c| c.to_digit(4).map(|d| d as u8))
            .collect();
        Self::new(&entries.ok_or_else(|| Error::usage(format!("`{s}` is not a Z4 word")))?)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn packed(&self) -> u64 {
        self.packed
    }

    pub fn get(&self, i: usize) -> u8 {
        ((self.packed >> (2 * i)) & 3) as u8
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.packed == 0
    }

    fn same_len(&self, other: &Z4Vector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Z4Vector) -> Result<Z4Vector> {
        self.same_len(other)?;
        Ok(Z4Vector {
            len: self.len,
            packed: packed_add(self.packed, other.packed),
        })
    }

    pub fn sub(&self, other: &Z4Vector) -> Result<Z4Vector> {
        self.same_len(other)?;
        Ok(Z4Vector {
            len: self.len,
            packed: packed_add(self.packed, packed_neg(other.packed)),
        })
    }

    pub fn neg(&self) -> Z4Vector {
        Z4Vector {
            len: self.len,
            packed: packed_neg(self.packed),
        }
    }

    pub fn scale(&self, s: u8) -> Z4Vector {
        Z4Vector {
            len: self.len,
            packed: packed_scale(self.packed, s),
        }
    }

    /// Euclidean inner product mod 4.
    pub fn inner(&self, other: &Z4Vector) -> Result<u8> {
        self.same_len(other)?;
        let s: u32 = (0..self.len())
            .map(|i| self.get(i) as u32 * other.get(i) as u32)
            .sum();
        Ok((s % 4) as u8)
    }

    pub fn lee_weight(&self) -> u32 {
        packed_lee_weight(self.packed)
    }
}

impl fmt::Display for Z4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z4Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z4Vector({self})")
    }
}

pub fn lee_weight(x: &Z4Vector) -> u32 {
    x.lee_weight()
}

pub fn lee_distance(x: &Z4Vector, y: &Z4Vector) -> Result<u32> {
    Ok(x.sub(y)?.lee_weight())
}

/// Gray map `0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10`, concatenated in entry order.
pub fn gray_map(x: &Z4Vector) -> BitVector {
    BitVector::new(2 * x.len(), packed_gray(x.packed)).expect("gray image fits 64 bits")
}

pub fn gray_inverse(v: &BitVector) -> Result<Z4Vector> {
    if !v.len().is_multiple_of(2) {
        return Err(Error::usage(format!(
            "Gray preimage needs even length, got {}",
            v.len()
        )));
    }
    Z4Vector::from_packed(v.len() / 2, gray_inverse_bits(v.bits()))
}

#[inline]
pub(crate) fn gray_inverse_bits(bits: u64) -> u64 {
    let first = bits & LOW;
    let second = (bits >> 1) & LOW;
    join(first ^ second, first)
}

#[inline]
pub(crate) fn gray_bits(packed: u64) -> u64 {
    packed_gray(packed)
}

#[inline]
pub(crate) fn add_packed(a: u64, b: u64) -> u64 {
    packed_add(a, b)
}

/// Componentwise reduction mod 2.
pub fn alpha_map(x: &Z4Vector) -> BitVector {
    let bits = (0..x.len()).fold(0u64, |acc, i| acc | (((x.packed >> (2 * i)) & 1) << i));
    BitVector::new(x.len(), bits).expect("alpha image fits")
}

/// Lifts a binary vector into Z4 with entries 0/1.
pub fn lift_binary(v: &BitVector) -> Result<Z4Vector> {
    if v.len() > MAX_LENGTH {
        return Err(Error::usage("binary vector too long to lift into Z4"));
    }
    let packed = (0..v.len()).fold(0u64, |acc, i| acc | (((v.bits() >> i) & 1) << (2 * i)));
    Z4Vector::from_packed(v.len(), packed)
}

/// Polynomial over Z4, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z4Polynomial {
    coeffs: Vec<u8>,
}

impl Z4Polynomial {
    pub fn new(coeffs: &[u8]) -> Self {
        let mut coeffs: Vec<u8> = coeffs.iter().map(|c| c & 3).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Z4Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Z4Polynomial { coeffs: vec![] }
    }

    /// `x^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut c = vec![0u8; m + 1];
        c[0] = 3;
        c[m] = 1;
        Self::new(&c)
    }

    /// From a GF(2) polynomial with bit `i` = coefficient of `x^i`.
    pub fn from_binary(bits: u64) -> Self {
        let c: Vec<u8> = (0..64).map(|i| ((bits >> i) & 1) as u8).collect();
        Self::new(&c)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Reduction mod 2 as a GF(2) bit polynomial.
    pub fn to_binary(&self) -> u64 {
        self.coeffs
            .iter()
            .enumerate()
            .take(64)
            .fold(0, |acc, (i, c)| acc | (((c & 1) as u64) << i))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let c: Vec<u8> = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(&c)
    }

    pub fn neg(&self) -> Self {
        let c: Vec<u8> = self.coeffs.iter().map(|x| 4 - x).collect();
        Self::new(&c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += (*a as u32) * (*b as u32);
            }
        }
        Self::new(&c.iter().map(|x| (x % 4) as u8).collect::<Vec<_>>())
    }

    /// Division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !divisor.is_monic() {
            return Err(Error::usage("divisor must be monic"));
        }
        let dd = divisor.degree().expect("monic is nonzero");
        let mut rem: Vec<u8> = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u8; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let f = rem[top];
            if f == 0 {
                continue;
            }
            quot[top - dd] = f;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = (rem[idx] + 4 * 4 - f * dc) % 4;
            }
        }
        Ok((Self::new(&quot), Self::new(&rem)))
    }

    pub fn eval_coeff_vector(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.coeff(i)).collect()
    }
}

impl fmt::Display for Z4Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "x^{i}")?,
                (_, 1) => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Z4Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z4Polynomial({self})")
    }
}

fn gf2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = gf2_degree(b);
    while a != 0 && gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

fn gf2_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = gf2_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Hensel lift of a binary polynomial to Z4 by one Graeffe step:
/// `h(x^2) = ±f(x) f(-x)` with the sign chosen to make `h` monic.
///
/// Only `f mod 2` matters. It must be square-free with nonzero constant
/// term, so that it divides `x^m - 1` for some odd `m`; the lift then
/// divides `x^m - 1` over Z4 as well.
pub fn hensel_lift(f: &Z4Polynomial) -> Result<Z4Polynomial> {
    let bin = f.to_binary();
    if bin == 0 || gf2_degree(bin) < 1 {
        return Err(Error::Construction(format!("cannot lift constant polynomial {f}")));
    }
    if bin & 1 == 0 {
        return Err(Error::Construction(format!(
            "{f} is divisible by x mod 2 and divides no x^m - 1"
        )));
    }
    let derivative = (bin >> 1) & 0x5555_5555_5555_5555;
    if gf2_gcd(bin, derivative) != 1 {
        return Err(Error::Construction(format!("{f} is not square-free mod 2")));
    }
    let deg = gf2_degree(bin) as usize;
    let binary = Z4Polynomial::from_binary(bin);
    let even: Vec<u8> = (0..=deg).map(|i| if i % 2 == 0 { binary.coeff(i) } else { 0 }).collect();
    let odd: Vec<u8> = (0..=deg).map(|i| if i % 2 == 1 { binary.coeff(i) } else { 0 }).collect();
    let (even, odd) = (Z4Polynomial::new(&even), Z4Polynomial::new(&odd));
    let mut product = even.mul(&even).sub(&odd.mul(&odd));
    if !product.is_monic() {
        product = product.neg();
    }
    debug_assert_eq!(product.degree(), Some(2 * deg));
    let halved: Vec<u8> = (0..=deg).map(|i| product.coeff(2 * i)).collect();
    if (0..product.coeffs.len()).any(|i| i % 2 == 1 && product.coeff(i) != 0) {
        return Err(Error::Integrity("Graeffe product has odd-degree terms".into()));
    }
    Ok(Z4Polynomial::new(&halved))
}

/// Primitive binary polynomial used for the Kerdock code of a given `r`.
pub fn primitive_polynomial(r: u32) -> Option<u64> {
    match r {
        3 => Some(0b1011),
        5 => Some(0b100101),
        7 => Some((1 << 7) | 0b11),
        _ => None,
    }
}

/// Additive subgroup of Z4^n kept in standard form.
///
/// `standard` holds the generator rows `(I A B)` then `(0 2I 2C)` in
/// permuted coordinates: standard column `j` is original coordinate
/// `column_order[j]`. `rows` are the same generators in original
/// coordinates.
#[derive(Clone)]
pub struct Z4LinearCode {
    length: usize,
    k1: usize,
    k2: usize,
    standard: Vec<Vec<u8>>,
    column_order: Vec<usize>,
    rows: Vec<Z4Vector>,
    min_lee: OnceLock<Option<u32>>,
}

impl fmt::Debug for Z4LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Z4LinearCode")
            .field("n", &self.length)
            .field("k1", &self.k1)
            .field("k2", &self.k2)
            .field("rows", &self.rows)
            .finish()
    }
}

fn row_sub_scaled(target: &mut [u8], src: &[u8], f: u8) {
    for (t, s) in target.iter_mut().zip(src) {
        *t = (*t + 4 * 4 - f * s) % 4;
    }
}

fn swap_columns(m: &mut [Vec<u8>], perm: &mut [usize], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    perm.swap(a, b);
}

/// Gaussian elimination over Z4 into the `(I A B / 0 2I 2C)` block form.
pub fn standard_form(n: usize, rows: &[Z4Vector]) -> Result<Z4LinearCode> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::usage(format!("Z4 code length {n} outside 1..=32")));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::LengthMismatch {
            left: r.len(),
            right: n,
        });
    }
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.entries()).collect();
    let mut perm: Vec<usize> = (0..n).collect();

    let mut k1 = 0;
    loop {
        let found = (k1..n).find_map(|c| (k1..m.len()).find(|&r| m[r][c] % 2 == 1).map(|r| (r, c)));
        let Some((r, c)) = found else { break };
        m.swap(k1, r);
        swap_columns(&mut m, &mut perm, k1, c);
        if m[k1][k1] == 3 {
            m[k1].iter_mut().for_each(|x| *x = (4 - *x) % 4);
        }
        let pivot = m[k1].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != k1 && row[k1] != 0 {
                let f = row[k1];
                row_sub_scaled(row, &pivot, f);
            }
        }
        k1 += 1;
    }

    let mut k2 = 0;
    loop {
        let p = k1 + k2;
        let found = (p..n).find_map(|c| (p..m.len()).find(|&r| m[r][c] == 2).map(|r| (r, c)));
        let Some((r, c)) = found else { break };
        m.swap(p, r);
        swap_columns(&mut m, &mut perm, p, c);
        let pivot = m[p].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let clear = if i < k1 { row[p] >= 2 } else { i != p && row[p] == 2 };
            if clear {
                row_sub_scaled(row, &pivot, 1);
            }
        }
        k2 += 1;
    }
    debug_assert!(m[k1 + k2..].iter().all(|r| r.iter().all(|x| *x == 0)));
    m.truncate(k1 + k2);

    let rows = m
        .iter()
        .map(|srow| {
            let mut orig = vec![0u8; n];
            for (j, &v) in srow.iter().enumerate() {
                orig[perm[j]] = v;
            }
            Z4Vector::new(&orig)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Z4LinearCode {
        length: n,
        k1,
        k2,
        standard: m,
        column_order: perm,
        rows,
        min_lee: OnceLock::new(),
    })
}

impl Z4LinearCode {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// `log2 |C| = 2 k1 + k2`.
    pub fn log2_size(&self) -> usize {
        2 * self.k1 + self.k2
    }

    /// Generators in original coordinates: `k1` of order 4 then `k2` of order 2.
    pub fn generators(&self) -> &[Z4Vector] {
        &self.rows
    }

    pub fn standard_rows(&self) -> &[Vec<u8>] {
        &self.standard
    }

    pub fn column_order(&self) -> &[usize] {
        &self.column_order
    }

    pub fn contains(&self, x: &Z4Vector) -> bool {
        if x.len() != self.length {
            return false;
        }
        let mut v: Vec<u8> = self.column_order.iter().map(|&c| x.get(c)).collect();
        for (i, row) in self.standard.iter().enumerate().take(self.k1) {
            let f = v[i];
            if f != 0 {
                row_sub_scaled(&mut v, row, f);
            }
        }
        for (j, row) in self.standard.iter().enumerate().skip(self.k1) {
            match v[j] {
                0 => {}
                2 => row_sub_scaled(&mut v, row, 1),
                _ => return false,
            }
        }
        v.iter().all(|x| *x == 0)
    }

    fn enum_guard(&self, guard: Guard) -> Result<()> {
        guard.check(
            "Z4 codeword enumeration (2k1+k2)",
            self.log2_size() as u64,
            MAX_ENUM_LOG2_SIZE as u64,
        )
    }

    /// Codeword number `index`: bits `2t, 2t+1` give the coefficient of
    /// order-4 generator `t`, bit `2 k1 + s` that of order-2 generator `s`.
    fn digits(&self) -> Vec<(u64, u32)> {
        let mut d = Vec::with_capacity(self.log2_size());
        for (t, row) in self.rows.iter().enumerate() {
            if t < self.k1 {
                d.push((row.packed, 2));
            } else {
                d.push((row.packed, 1));
            }
        }
        d
    }

    fn par_fold_codewords<A, I, F, R>(&self, identity: I, fold: F, reduce: R) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, u64) -> A + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        let digits = self.digits();
        let combine = |index: u64, ds: &[(u64, u32)]| {
            let mut shift = 0;
            let mut acc = 0u64;
            for &(row, width) in ds {
                let coef = ((index >> shift) & ((1 << width) - 1)) as u8;
                acc = packed_add(acc, packed_scale(row, coef));
                shift += width;
            }
            acc
        };
        // split the digit list so the low part becomes a lookup table
        let mut low_bits = 0;
        let mut low_count = 0;
        for &(_, w) in &digits {
            if low_bits + w > 12 {
                break;
            }
            low_bits += w;
            low_count += 1;
        }
        let (low, high) = digits.split_at(low_count);
        let table: Vec<u64> = (0..1u64 << low_bits).map(|i| combine(i, low)).collect();
        let high_bits: u32 = high.iter().map(|d| d.1).sum();
        (0..1u64 << high_bits)
            .into_par_iter()
            .map(|h| {
                let base = combine(h, high);
                table
                    .iter()
                    .fold(identity(), |acc, t| fold(acc, packed_add(base, *t)))
            })
            .reduce(&identity, &reduce)
    }

    /// Every codeword, in enumeration order.
    pub fn codewords(&self, guard: Guard) -> Result<Vec<Z4Vector>> {
        self.enum_guard(guard)?;
        let n = self.length;
        let mut out = self.par_fold_codewords(
            Vec::new,
            |mut v, c| {
                v.push(c);
                v
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        );
        out.sort_unstable();
        Ok(out
            .into_iter()
            .map(|p| Z4Vector { len: n as u8, packed: p })
            .collect())
    }

    /// Packed codewords, unsorted.
    pub(crate) fn packed_codewords(&self, guard: Guard) -> Result<Vec<u64>> {
        self.enum_guard(guard)?;
        Ok(self.par_fold_codewords(
            Vec::new,
            |mut v, c| {
                v.push(c);
                v
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        ))
    }

    /// Minimum Lee weight of a nonzero codeword; `None` for the zero code.
    pub fn min_lee_weight(&self, guard: Guard) -> Result<Option<u32>> {
        if let Some(w) = self.min_lee.get() {
            return Ok(*w);
        }
        self.enum_guard(guard)?;
        let w = self.par_fold_codewords(
            || None::<u32>,
            |acc, c| {
                if c == 0 {
                    return acc;
                }
                let w = packed_lee_weight(c);
                Some(acc.map_or(w, |a| a.min(w)))
            },
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            },
        );
        let _ = self.min_lee.set(w);
        Ok(w)
    }

    /// Count of codewords per Lee weight; equals the Hamming weight
    /// distribution of the Gray image.
    pub fn lee_weight_distribution(&self, guard: Guard) -> Result<Vec<u64>> {
        self.enum_guard(guard)?;
        let n = 2 * self.length;
        Ok(self.par_fold_codewords(
            || vec![0u64; n + 1],
            |mut acc, c| {
                acc[packed_lee_weight(c) as usize] += 1;
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        ))
    }

    /// The dual code, built from the block formula on the standard form and
    /// then checked against every generator of `self`.
    pub fn dual(&self) -> Result<Z4LinearCode> {
        let (n, k1, k2) = (self.length, self.k1, self.k2);
        let k3 = n - k1 - k2;
        let a = |i: usize, j: usize| self.standard[i][k1 + j];
        let b = |i: usize, t: usize| self.standard[i][k1 + k2 + t];
        let c = |j: usize, t: usize| self.standard[k1 + j][k1 + k2 + t] / 2;

        let mut std_rows: Vec<Vec<u8>> = Vec::with_capacity(k3 + k2);
        for t in 0..k3 {
            let mut row = vec![0u8; n];
            for (i, cell) in row.iter_mut().enumerate().take(k1) {
                let s: u32 = b(i, t) as u32 + (0..k2).map(|j| (c(j, t) * a(i, j)) as u32).sum::<u32>();
                *cell = ((4 - s % 4) % 4) as u8;
            }
            for j in 0..k2 {
                row[k1 + j] = c(j, t);
            }
            row[k1 + k2 + t] = 1;
            std_rows.push(row);
        }
        for j in 0..k2 {
            let mut row = vec![0u8; n];
            for (i, cell) in row.iter_mut().enumerate().take(k1) {
                *cell = 2 * a(i, j) % 4;
            }
            row[k1 + j] = 2;
            std_rows.push(row);
        }
        let rows = std_rows
            .iter()
            .map(|srow| {
                let mut orig = vec![0u8; n];
                for (j, &v) in srow.iter().enumerate() {
                    orig[self.column_order[j]] = v;
                }
                Z4Vector::new(&orig)
            })
            .collect::<Result<Vec<_>>>()?;
        let dual = if rows.is_empty() {
            Z4LinearCode::zero_code(n)?
        } else {
            standard_form(n, &rows)?
        };
        for x in &self.rows {
            for y in &dual.rows {
                if x.inner(y)? != 0 {
                    return Err(Error::Integrity(format!(
                        "dual generator {y} is not orthogonal to {x}"
                    )));
                }
            }
        }
        if self.log2_size() + dual.log2_size() != 2 * n {
            return Err(Error::Integrity(format!(
                "dual sizes 2^{} * 2^{} != 4^{n}",
                self.log2_size(),
                dual.log2_size()
            )));
        }
        Ok(dual)
    }

    pub fn zero_code(n: usize) -> Result<Z4LinearCode> {
        standard_form(n, &[])
    }

    pub fn full_space(n: usize) -> Result<Z4LinearCode> {
        let rows = (0..n)
            .map(|i| Z4Vector::single(n, i, 1))
            .collect::<Result<Vec<_>>>()?;
        standard_form(n, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("z4code n={} k1={} k2={}", self.length, self.k1, self.k2);
        for row in &self.rows {
            s.push('\n');
            s.push_str(&row.to_string());
        }
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Z4LinearCode> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty Z4 code file"))?;
        let f = crate::gf2::parse_header(hline, header, "z4code", &["n", "k1", "k2"])?;
        let (n, k1, k2) = (f[0] as usize, f[1] as usize, f[2] as usize);
        if n == 0 || n > MAX_LENGTH || k1 + k2 > n {
            return Err(Error::parse(hline, format!("invalid parameters n={n} k1={k1} k2={k2}")));
        }
        let mut rows = Vec::with_capacity(k1 + k2);
        for i in 0..k1 + k2 {
            let (line, t) = lines
                .next()
                .ok_or_else(|| Error::parse(hline + i + 1, "missing generator row"))?;
            if t.len() != n {
                return Err(Error::parse(line, format!("expected {n} digits")));
            }
            rows.push(Z4Vector::parse(t).map_err(|e| Error::parse(line, e.to_string()))?);
        }
        if let Some((line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(line, "unexpected trailing content"));
        }
        let code = standard_form(n, &rows)?;
        if code.k1 != k1 || code.k2 != k2 {
            return Err(Error::parse(
                hline,
                format!("rows generate type 4^{} 2^{}, header says 4^{k1} 2^{k2}", code.k1, code.k2),
            ));
        }
        Ok(code)
    }
}

fn check_kerdock_r(r: u32) -> Result<u64> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::usage(format!("r must be odd and at least 3, got {r}")));
    }
    let poly = primitive_polynomial(r)
        .ok_or_else(|| Error::usage(format!("no primitive polynomial tabulated for r={r}")))?;
    if (1usize << r) > MAX_LENGTH {
        return Err(Error::usage(format!(
            "r={r} gives length {} beyond the Z4 vector limit of {MAX_LENGTH}",
            1usize << r
        )));
    }
    Ok(poly)
}

/// Quaternary Kerdock code of length `2^r`, type `4^(r+1)`.
///
/// The cyclic code of length `2^r - 1` whose check polynomial is the Hensel
/// lift of a primitive polynomial, plus the all-ones word, extended by a
/// zero-sum coordinate placed last.
pub fn kerdock_code(r: u32) -> Result<Z4LinearCode> {
    let poly = check_kerdock_r(r)?;
    let m = (1usize << r) - 1;
    let h = hensel_lift(&Z4Polynomial::from_binary(poly))?;
    let (g, rem) = Z4Polynomial::x_pow_minus_one(m).div_rem_monic(&h)?;
    if !rem.is_zero() {
        return Err(Error::Integrity(format!("{h} does not divide x^{m} - 1")));
    }
    let extend = |mut word: Vec<u8>| {
        let sum: u32 = word.iter().map(|x| *x as u32).sum();
        word.push(((4 - sum % 4) % 4) as u8);
        Z4Vector::new(&word)
    };
    let mut rows = Vec::with_capacity(r as usize + 1);
    for shift in 0..r as usize {
        let mut word = vec![0u8; m];
        for (i, c) in g.coeffs().iter().enumerate() {
            word[(i + shift) % m] = *c;
        }
        rows.push(extend(word)?);
    }
    rows.push(extend(vec![1u8; m])?);
    let code = standard_form(m + 1, &rows)?;
    if code.k1 != r as usize + 1 || code.k2 != 0 {
        return Err(Error::Integrity(format!(
            "Kerdock code has type 4^{} 2^{}, expected 4^{}",
            code.k1,
            code.k2,
            r + 1
        )));
    }
    Ok(code)
}

/// Quaternary Preparata code: the dual of [`kerdock_code`], type
/// `4^(2^r - r - 1)`. Its last coordinate is the extended one.
pub fn preparata_code(r: u32) -> Result<Z4LinearCode> {
    let dual = kerdock_code(r)?.dual()?;
    let expected = (1usize << r) - r as usize - 1;
    if dual.k1 != expected || dual.k2 != 0 {
        return Err(Error::Integrity(format!(
            "Preparata code has type 4^{} 2^{}, expected 4^{expected}",
            dual.k1, dual.k2
        )));
    }
    Ok(dual)
}
