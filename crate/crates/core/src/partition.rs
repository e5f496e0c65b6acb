//! Partitions of the hypercube into distance-constrained blocks, and the
//! colorings they induce.
//!
//! Every public constructor here runs [`verify_partition`] on its output
//! and fails with [`Error::Integrity`] rather than return an unverified
//! object.

use std::fmt;

use crate::error::{Error, Guard, Result};
use crate::gf2::{self, bits_to_string, BinaryLinearCode, MAX_COSET_LENGTH};
use crate::verify::{verify_partition, Strategy};
use crate::z4::{self, Z4LinearCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    /// Every block has pairwise distance at least the given value.
    MinDistanceAtLeast(u32),
    /// No block contains two words at exactly the given distance.
    ForbiddenDistance(u32),
}

impl fmt::Display for PartitionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionMode::MinDistanceAtLeast(d) => write!(f, "min-distance>={d}"),
            PartitionMode::ForbiddenDistance(d) => write!(f, "forbidden-distance={d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubePartition {
    n: usize,
    mode: PartitionMode,
    blocks: Vec<Vec<u64>>,
    provenance: String,
}

impl HypercubePartition {
    /// Builds and verifies a partition.
    pub fn new(
        n: usize,
        mode: PartitionMode,
        blocks: Vec<Vec<u64>>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let p = Self::unverified(n, mode, blocks, provenance)?;
        let report = verify_partition(&p, Strategy::Auto, Guard::Enforce)?;
        if !report.passed {
            return Err(Error::Integrity(format!(
                "{} failed verification: {}",
                p.provenance,
                report.summary()
            )));
        }
        Ok(p)
    }

    /// Wraps blocks without checking them; use [`verify_partition`] before
    /// trusting the result.
    pub fn unverified(
        n: usize,
        mode: PartitionMode,
        mut blocks: Vec<Vec<u64>>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if n == 0 || n > gf2::MAX_LENGTH {
            return Err(Error::usage(format!("dimension {n} outside 1..=64")));
        }
        for b in &mut blocks {
            b.sort_unstable();
        }
        Ok(HypercubePartition {
            n,
            mode,
            blocks,
            provenance: provenance.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> PartitionMode {
        self.mode
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringMode {
    /// Vertices at distance 1..=d get different colors.
    AtMostD,
    /// Vertices at distance exactly d get different colors.
    ExactD,
}

impl ColoringMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ColoringMode::AtMostD => "atmost",
            ColoringMode::ExactD => "exact",
        }
    }
}

impl std::str::FromStr for ColoringMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atmost" => Ok(ColoringMode::AtMostD),
            "exact" => Ok(ColoringMode::ExactD),
            _ => Err(Error::usage(format!("unknown coloring mode `{s}`"))),
        }
    }
}

/// A full color assignment for the `2^n` vertices, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCertificate {
    n: usize,
    d: u32,
    mode: ColoringMode,
    colors: u32,
    assignment: Vec<u32>,
    provenance: String,
}

impl ColoringCertificate {
    /// Only the shape is checked here; color validity is the verifier's job.
    pub fn new(
        n: usize,
        d: u32,
        mode: ColoringMode,
        colors: u32,
        assignment: Vec<u32>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_COSET_LENGTH {
            return Err(Error::usage(format!(
                "certificate dimension {n} outside 1..={MAX_COSET_LENGTH}"
            )));
        }
        if assignment.len() != 1usize << n {
            return Err(Error::usage(format!(
                "assignment has {} entries, expected 2^{n}",
                assignment.len()
            )));
        }
        Ok(ColoringCertificate {
            n,
            d,
            mode,
            colors,
            assignment,
            provenance: provenance.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn mode(&self) -> ColoringMode {
        self.mode
    }

    pub fn color_count(&self) -> u32 {
        self.colors
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    pub fn color(&self, vertex: u64) -> u32 {
        self.assignment[vertex as usize]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// A copy with one vertex recolored.
    pub fn with_color(&self, vertex: u64, color: u32) -> Self {
        let mut c = self.clone();
        c.assignment[vertex as usize] = color;
        c
    }
}

/// Color `i` is block `i`.
pub fn partition_to_coloring(p: &HypercubePartition) -> Result<ColoringCertificate> {
    let mut assignment = vec![u32::MAX; 1usize << p.n];
    for (i, block) in p.blocks.iter().enumerate() {
        for &v in block {
            let slot = assignment
                .get_mut(v as usize)
                .ok_or_else(|| Error::usage(format!("vertex {v} outside V_{}", p.n)))?;
            *slot = i as u32;
        }
    }
    let (d, mode) = match p.mode {
        PartitionMode::MinDistanceAtLeast(delta) => (delta.saturating_sub(1), ColoringMode::AtMostD),
        PartitionMode::ForbiddenDistance(d) => (d, ColoringMode::ExactD),
    };
    ColoringCertificate::new(p.n, d, mode, p.blocks.len() as u32, assignment, p.provenance.clone())
}

/// Block `i` is the set of vertices of color `i`.
pub fn coloring_to_partition(c: &ColoringCertificate) -> Result<HypercubePartition> {
    let mut blocks = vec![Vec::new(); c.colors as usize];
    for (v, &color) in c.assignment.iter().enumerate() {
        blocks
            .get_mut(color as usize)
            .ok_or_else(|| Error::usage(format!("vertex {v} has color {color} >= {}", c.colors)))?
            .push(v as u64);
    }
    let mode = match c.mode {
        ColoringMode::AtMostD => PartitionMode::MinDistanceAtLeast(c.d + 1),
        ColoringMode::ExactD => PartitionMode::ForbiddenDistance(c.d),
    };
    HypercubePartition::unverified(c.n, mode, blocks, c.provenance.clone())
}

/// Cosets of a binary code with minimum distance at least `d + 1`; a
/// `d`-distance coloring with `2^(n-k)` colors.
pub fn from_binary_linear(code: &BinaryLinearCode, d: u32, guard: Guard) -> Result<HypercubePartition> {
    if let Some(c) = code.lightest_codeword(guard)? {
        if c.count_ones() <= d {
            return Err(Error::Construction(format!(
                "codeword {} has weight {} <= d={d}",
                bits_to_string(c, code.length()),
                c.count_ones()
            )));
        }
    }
    let blocks = code.enumerate_cosets(guard)?;
    HypercubePartition::new(
        code.length(),
        PartitionMode::MinDistanceAtLeast(d + 1),
        blocks,
        format!("linear-coset n={} k={} d={d}", code.length(), code.dimension()),
    )
}

/// Coset labels of a Z4 code, indexed by the Gray image of each word.
/// Labels increase with the minimum Gray vertex of the coset.
struct Z4Cosets {
    n: usize,
    labels: Vec<u32>,
    blocks: Vec<Vec<u64>>,
}

impl Z4Cosets {
    fn new(code: &Z4LinearCode, guard: Guard) -> Result<Self> {
        let n = code.length();
        guard.check("Z4 coset materialization (2n)", 2 * n as u64, MAX_COSET_LENGTH as u64)?;
        let words = code.packed_codewords(guard)?;
        let total = 1usize << (2 * n);
        let mut labels = vec![u32::MAX; total];
        let mut next = 0u32;
        for v in 0..total {
            if labels[v] != u32::MAX {
                continue;
            }
            let x = z4::gray_inverse_bits(v as u64);
            for &c in &words {
                labels[z4::gray_bits(z4::add_packed(x, c)) as usize] = next;
            }
            next += 1;
        }
        let size = words.len();
        let mut blocks: Vec<Vec<u64>> = (0..next).map(|_| Vec::with_capacity(size)).collect();
        for (v, &l) in labels.iter().enumerate() {
            blocks[l as usize].push(v as u64);
        }
        Ok(Z4Cosets { n, labels, blocks })
    }

    /// Label of the coset `B + (0, ..., 0, s)` where `B` has label `i`.
    fn shifted(&self, i: usize, s: u8) -> u32 {
        let x = z4::gray_inverse_bits(self.blocks[i][0]);
        let shift = (s as u64 & 3) << (2 * (self.n - 1));
        self.labels[z4::gray_bits(z4::add_packed(x, shift)) as usize]
    }
}

fn checked_lee_distance(code: &Z4LinearCode, guard: Guard) -> Result<u32> {
    match code.min_lee_weight(guard)? {
        Some(w) if w >= 3 => Ok(w),
        Some(w) => Err(Error::Construction(format!(
            "minimum Lee weight {w} is below 3"
        ))),
        // zero code: blocks are single words, no pair to constrain
        None => Ok(2 * code.length() as u32 + 1),
    }
}

/// Gray images of the cosets of a Z4-linear code with minimum Lee weight
/// `d_L >= 3`: `2^(2n - 2k1 - k2)` blocks of `V_2n` with distance `>= d_L`.
pub fn z4_coset_partition(code: &Z4LinearCode, guard: Guard) -> Result<HypercubePartition> {
    let dl = checked_lee_distance(code, guard)?;
    let cosets = Z4Cosets::new(code, guard)?;
    let expected = 1usize << (2 * code.length() - code.log2_size());
    if cosets.blocks.len() != expected {
        return Err(Error::Integrity(format!(
            "found {} cosets, expected {expected}",
            cosets.blocks.len()
        )));
    }
    HypercubePartition::new(
        2 * code.length(),
        PartitionMode::MinDistanceAtLeast(dl),
        cosets.blocks,
        format!("z4-coset n={} k1={} k2={}", code.length(), code.k1(), code.k2()),
    )
}

fn sorted_union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut u: Vec<u64> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u
}

/// Punctured construction on `V_(2n-1)` with `N/2` blocks and distance
/// `>= d_L - 1`.
///
/// Cosets are grouped into classes `{B, B + s e_n : s in Z4}` along the last
/// coordinate. Each class contributes its first coset `B` and `B + 2 e_n`,
/// both with the final binary coordinate deleted.
pub fn z4_punctured_partition(code: &Z4LinearCode, guard: Guard) -> Result<HypercubePartition> {
    let dl = checked_lee_distance(code, guard)?;
    let cosets = Z4Cosets::new(code, guard)?;
    let big_n = 2 * code.length();
    let count = cosets.blocks.len();
    let mut assigned = vec![false; count];
    let mut blocks = Vec::with_capacity(count / 2);
    for i in 0..count {
        if assigned[i] {
            continue;
        }
        let class: Vec<usize> = (0..4u8)
            .map(|s| if s == 0 { i } else { cosets.shifted(i, s) as usize })
            .collect();
        let mut distinct = class.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 4 {
            return Err(Error::Integrity(format!(
                "coset class of {i} has only {} members",
                distinct.len()
            )));
        }
        for &c in &class {
            if assigned[c] {
                return Err(Error::Integrity(format!("coset {c} appears in two classes")));
            }
            assigned[c] = true;
        }
        let punct = |c: usize| gf2::puncture_last(&cosets.blocks[c], big_n);
        let (b0, b1, b2, b3) = (punct(class[0])?, punct(class[1])?, punct(class[2])?, punct(class[3])?);
        if sorted_union(&b0, &b2) != sorted_union(&b1, &b3) {
            return Err(Error::Integrity(format!(
                "punctured class of coset {i}: B* + B2* differs from B1* + B3*"
            )));
        }
        blocks.push(b0);
        blocks.push(b2);
    }
    HypercubePartition::new(
        big_n - 1,
        PartitionMode::MinDistanceAtLeast(dl - 1),
        blocks,
        format!(
            "z4-punctured n={} k1={} k2={}",
            code.length(),
            code.k1(),
            code.k2()
        ),
    )
}

/// `B_i x E_j` for a distance-`(d+1)` partition `B` of `V_n1` and a
/// forbidden-`d` partition `E` of `V_n2`, `d` even. Block `(i, j)` has
/// index `i * |E| + j`, and the `V_n1` coordinates come first.
pub fn product_partition(
    first: &HypercubePartition,
    second: &HypercubePartition,
) -> Result<HypercubePartition> {
    let d = match second.mode {
        PartitionMode::ForbiddenDistance(d) => d,
        m => return Err(Error::usage(format!("second factor must forbid a distance, got {m}"))),
    };
    if d % 2 != 0 {
        return Err(Error::usage(format!("product construction needs even d, got {d}")));
    }
    match first.mode {
        PartitionMode::MinDistanceAtLeast(delta) if delta > d => {}
        m => {
            return Err(Error::usage(format!(
                "first factor needs min distance >= {}, got {m}",
                d + 1
            )))
        }
    }
    let n = first.n + second.n;
    if n > MAX_COSET_LENGTH {
        return Err(Error::ExhaustiveLimit {
            what: "product partition length",
            size: n as u64,
            limit: MAX_COSET_LENGTH as u64,
        });
    }
    let shift = first.n;
    let mut blocks = Vec::with_capacity(first.blocks.len() * second.blocks.len());
    for b in &first.blocks {
        for e in &second.blocks {
            let mut block: Vec<u64> = e
                .iter()
                .flat_map(|y| b.iter().map(move |x| x | (y << shift)))
                .collect();
            block.sort_unstable();
            blocks.push(block);
        }
    }
    HypercubePartition::new(
        n,
        PartitionMode::ForbiddenDistance(d),
        blocks,
        format!("product[{}]x[{}]", first.provenance, second.provenance),
    )
}

/// Two colors by weight parity; an exactly-`d` coloring for odd `d`.
pub fn parity_coloring(n: usize, d: u32) -> Result<ColoringCertificate> {
    if d.is_multiple_of(2) {
        return Err(Error::usage(format!("parity coloring needs odd d, got {d}")));
    }
    if d as usize > n {
        return Err(Error::usage(format!("d={d} exceeds n={n}")));
    }
    if n > MAX_COSET_LENGTH {
        return Err(Error::ExhaustiveLimit {
            what: "certificate length",
            size: n as u64,
            limit: MAX_COSET_LENGTH as u64,
        });
    }
    let assignment: Vec<u32> = (0..1u64 << n).map(|v| v.count_ones() & 1).collect();
    let blocks: Vec<Vec<u64>> = (0..2u32)
        .map(|c| (0..1u64 << n).filter(|v| v.count_ones() & 1 == c).collect())
        .collect();
    HypercubePartition::new(n, PartitionMode::ForbiddenDistance(d), blocks, "")?;
    ColoringCertificate::new(
        n,
        d,
        ColoringMode::ExactD,
        2,
        assignment,
        format!("parity n={n} d={d}"),
    )
}

/// Singletons of `V_n`; the trivially valid partition for any constraint.
pub fn singleton_partition(n: usize, mode: PartitionMode) -> Result<HypercubePartition> {
    if n > MAX_COSET_LENGTH {
        return Err(Error::usage(format!("dimension {n} too large for singletons")));
    }
    HypercubePartition::new(
        n,
        mode,
        (0..1u64 << n).map(|v| vec![v]).collect(),
        format!("singletons n={n}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z4::{preparata_code, standard_form, Z4Vector};

    #[test]
    fn hamming_cosets() {
        let code = BinaryLinearCode::hamming(3).unwrap();
        let p = from_binary_linear(&code, 2, Guard::Enforce).unwrap();
        assert_eq!(p.block_count(), 8);
        assert!(p.blocks().iter().all(|b| b.len() == 16));
        assert_eq!(p.mode(), PartitionMode::MinDistanceAtLeast(3));
        assert!(matches!(
            from_binary_linear(&code, 3, Guard::Enforce),
            Err(Error::Construction(msg)) if msg.contains("weight 3")
        ));
    }

    #[test]
    fn small_linear_examples() {
        let rep = BinaryLinearCode::repetition(3).unwrap();
        assert_eq!(from_binary_linear(&rep, 2, Guard::Enforce).unwrap().block_count(), 4);
        let full = BinaryLinearCode::full_space(3).unwrap();
        assert_eq!(from_binary_linear(&full, 0, Guard::Enforce).unwrap().block_count(), 1);
    }

    #[test]
    fn preparata_partitions() {
        let p = preparata_code(3).unwrap();
        let coset = z4_coset_partition(&p, Guard::Enforce).unwrap();
        assert_eq!(coset.n(), 16);
        assert_eq!(coset.block_count(), 256);
        assert!(coset.blocks().iter().all(|b| b.len() == 256));
        assert_eq!(coset.mode(), PartitionMode::MinDistanceAtLeast(6));

        let punct = z4_punctured_partition(&p, Guard::Enforce).unwrap();
        assert_eq!(punct.n(), 15);
        assert_eq!(punct.block_count(), 128);
        assert!(punct.blocks().iter().all(|b| b.len() == 256));
        assert_eq!(punct.mode(), PartitionMode::MinDistanceAtLeast(5));
        assert_eq!(128 * 256, 1 << 15);
    }

    #[test]
    fn z4_precondition_and_trivial() {
        let two = standard_form(1, &[Z4Vector::parse("2").unwrap()]).unwrap();
        assert!(matches!(
            z4_coset_partition(&two, Guard::Enforce),
            Err(Error::Construction(_))
        ));
        let zero = Z4LinearCode::zero_code(2).unwrap();
        let p = z4_coset_partition(&zero, Guard::Enforce).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.block_count(), 16);
        assert!(p.blocks().iter().all(|b| b.len() == 1));
        let q = z4_punctured_partition(&zero, Guard::Enforce).unwrap();
        assert_eq!(q.n(), 3);
        assert_eq!(q.block_count(), 8);
    }

    #[test]
    fn parity_examples() {
        let c = parity_coloring(3, 3).unwrap();
        assert_eq!(c.assignment(), &[0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(c.color_count(), 2);
        assert_eq!(parity_coloring(10, 5).unwrap().color_count(), 2);
        assert!(parity_coloring(4, 2).is_err());
    }

    #[test]
    fn product_rejections() {
        let ham = from_binary_linear(&BinaryLinearCode::hamming(3).unwrap(), 2, Guard::Enforce).unwrap();
        let odd = singleton_partition(2, PartitionMode::ForbiddenDistance(3)).unwrap();
        assert!(product_partition(&ham, &odd).is_err());
        assert!(product_partition(&ham, &ham).is_err());
        let single = singleton_partition(2, PartitionMode::ForbiddenDistance(2)).unwrap();
        let p = product_partition(&ham, &single).unwrap();
        assert_eq!(p.block_count(), 32);
        // with singletons the product blocks are translates of the B_i
        for (idx, block) in p.blocks().iter().enumerate() {
            let (i, j) = (idx / 4, idx % 4);
            let want: Vec<u64> = ham.blocks()[i].iter().map(|x| x | ((j as u64) << 7)).collect();
            assert_eq!(block, &want);
        }
    }

    #[test]
    fn conversions_round_trip() {
        let rep = BinaryLinearCode::repetition(3).unwrap();
        let p = from_binary_linear(&rep, 2, Guard::Enforce).unwrap();
        let c = partition_to_coloring(&p).unwrap();
        assert_eq!(c.color_count(), 4);
        assert_eq!((c.d(), c.mode()), (2, ColoringMode::AtMostD));
        let back = coloring_to_partition(&c).unwrap();
        assert_eq!(back.blocks(), p.blocks());
        assert_eq!(back.mode(), p.mode());

        let s = singleton_partition(2, PartitionMode::MinDistanceAtLeast(3)).unwrap();
        assert_eq!(partition_to_coloring(&s).unwrap().color_count(), 4);
    }
}
