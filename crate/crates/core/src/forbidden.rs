//! Linear codes with no codeword of one given weight `d`. Their cosets give
//! colorings of `V_n` in which no color class contains two words at
//! distance exactly `d`.

use num_bigint::BigUint;

use crate::error::{Error, Guard, Result};
use crate::gf2::{
    bits_to_string, parse_code_lines, parse_header, BinaryLinearCode, BinaryMatrix, MAX_LENGTH,
};
use crate::partition::{HypercubePartition, PartitionMode};

/// Largest redundancy the greedy search will scan.
pub const MAX_GREEDY_REDUNDANCY: u32 = 28;
/// Above this many `d`-subsets, column validation falls back to a codeword scan.
const SUBSET_SCAN_LIMIT: u64 = 10_000_000;
/// Bound on the total size of the tracked subset-sum sets.
const SUM_SET_LIMIT: u64 = 1 << 26;

/// A binary linear code together with the weight it avoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenLinearCode {
    code: BinaryLinearCode,
    d: u32,
    parity_check: Option<BinaryMatrix>,
}

impl ForbiddenLinearCode {
    /// Wraps `code` after scanning its codewords for weight `d`.
    pub fn new(code: BinaryLinearCode, d: u32, guard: Guard) -> Result<Self> {
        validate_forbidden(&code, d, guard)?;
        Ok(ForbiddenLinearCode {
            code,
            d,
            parity_check: None,
        })
    }

    /// `V_n` itself, valid whenever `n < d`.
    pub fn full_space(n: usize, d: u32) -> Result<Self> {
        if d as usize <= n {
            return Err(Error::usage(format!("V_{n} contains words of weight {d}")));
        }
        Ok(ForbiddenLinearCode {
            code: BinaryLinearCode::full_space(n)?,
            d,
            parity_check: None,
        })
    }

    pub fn code(&self) -> &BinaryLinearCode {
        &self.code
    }

    pub fn forbidden_distance(&self) -> u32 {
        self.d
    }

    pub fn parity_check(&self) -> Option<&BinaryMatrix> {
        self.parity_check.as_ref()
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    pub fn to_text(&self) -> String {
        format!("{}forbidden d={}\n", self.code.to_text(), self.d)
    }

    /// Parses a code file with a trailing `forbidden d=<d>` line and
    /// re-validates the claim.
    pub fn from_text(text: &str, guard: Guard) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (code, rest) = parse_code_lines(&mut lines)?;
        let (line, trailer) = rest.ok_or_else(|| Error::parse(text.lines().count() + 1, "missing `forbidden d=` line"))?;
        let d = parse_header(line, trailer, "forbidden", &["d"])?[0] as u32;
        if let Some((extra, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(extra, "unexpected trailing content"));
        }
        Self::new(code, d, guard)
    }
}

/// Fails with the smallest codeword of weight `d`, if there is one.
pub fn validate_forbidden(code: &BinaryLinearCode, d: u32, guard: Guard) -> Result<()> {
    if let Some(c) = code.find_codeword_of_weight(d, guard)? {
        return Err(Error::Construction(format!(
            "codeword {} has the forbidden weight {d}",
            bits_to_string(c, code.length())
        )));
    }
    Ok(())
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `ceil(log2(1 + C(n-1, d-1)))`: rows of a parity-check matrix the greedy
/// search is guaranteed to fill.
pub fn required_redundancy(n: u32, d: u32) -> u32 {
    if n == 0 || d == 0 {
        return 0;
    }
    let x: BigUint = binomial(n as u64 - 1, d as u64 - 1) + 1u32;
    // ceil(log2 x) = bit length of x - 1
    (x - 1u32).bits() as u32
}

/// Sets of sums of `k` distinct columns, `k = 0..d-1`.
struct SumSets {
    bitsets: Vec<Vec<u64>>,
    members: Vec<Vec<u64>>,
}

impl SumSets {
    fn new(levels: usize, m: u32) -> Self {
        let words = ((1u64 << m) as usize).div_ceil(64);
        let mut sets = SumSets {
            bitsets: vec![vec![0u64; words]; levels],
            members: vec![Vec::new(); levels],
        };
        sets.insert(0, 0);
        sets
    }

    fn contains(&self, k: usize, x: u64) -> bool {
        (self.bitsets[k][(x / 64) as usize] >> (x % 64)) & 1 == 1
    }

    fn insert(&mut self, k: usize, x: u64) {
        if !self.contains(k, x) {
            self.bitsets[k][(x / 64) as usize] |= 1 << (x % 64);
            self.members[k].push(x);
        }
    }

    /// Records `h` as a new column; levels are updated from the top so each
    /// sum uses `h` at most once.
    fn add_column(&mut self, h: u64) {
        for k in (1..self.members.len()).rev() {
            for i in 0..self.members[k - 1].len() {
                let s = self.members[k - 1][i] ^ h;
                self.insert(k, s);
            }
        }
    }
}

/// Greedy parity-check matrix with `n` columns in which no `d` distinct
/// columns sum to zero, so its kernel has no word of weight `d`.
///
/// Column `j` is the first candidate outside the set of sums of `d - 1`
/// earlier columns. Candidates run `0, 1, 2, ...`, except for `d <= 2` where
/// `0` is tried last: a zero column is a weight-1 codeword.
pub fn greedy_forbidden_matrix(n: usize, d: u32, guard: Guard) -> Result<BinaryMatrix> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::usage(format!("length {n} outside 1..=64")));
    }
    if d == 0 || d as usize > n {
        return Err(Error::usage(format!("forbidden distance {d} outside 1..={n}")));
    }
    let m = required_redundancy(n as u32, d);
    guard.check("greedy redundancy m", m as u64, MAX_GREEDY_REDUNDANCY as u64)?;
    if m > 40 {
        return Err(Error::ExhaustiveLimit {
            what: "greedy redundancy m",
            size: m as u64,
            limit: 40,
        });
    }
    let levels = d as usize;
    let tracked: BigUint = (0..levels as u64)
        .map(|k| binomial(n as u64, k).min(BigUint::from(1u64 << m)))
        .sum();
    let tracked = u64::try_from(tracked).unwrap_or(u64::MAX);
    guard.check("greedy subset-sum sets", tracked, SUM_SET_LIMIT)?;

    let space = 1u64 << m;
    let candidates = move || -> Box<dyn Iterator<Item = u64>> {
        if d <= 2 {
            Box::new((1..space).chain(std::iter::once(0)))
        } else {
            Box::new(0..space)
        }
    };
    let mut sums = SumSets::new(levels, m);
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let h = candidates()
            .find(|&h| !sums.contains(levels - 1, h))
            .ok_or_else(|| Error::Integrity(format!("no admissible column {j} in {m} bits")))?;
        columns.push(h);
        sums.add_column(h);
    }
    BinaryMatrix::from_columns(m as usize, &columns)
}

/// First set of `d` column indices whose columns sum to zero, in
/// lexicographic order.
fn zero_sum_subset(h: &BinaryMatrix, d: usize) -> Option<Vec<usize>> {
    fn go(cols: &[u64], start: usize, left: usize, acc: u64, picked: &mut Vec<usize>) -> bool {
        if left == 0 {
            return acc == 0;
        }
        for j in start..=cols.len() - left {
            picked.push(j);
            if go(cols, j + 1, left - 1, acc ^ cols[j], picked) {
                return true;
            }
            picked.pop();
        }
        false
    }
    let cols: Vec<u64> = (0..h.col_count()).map(|j| h.column(j)).collect();
    let mut picked = Vec::with_capacity(d);
    go(&cols, 0, d, 0, &mut picked).then_some(picked)
}

/// The kernel of `h`, checked to contain no word of weight `d`.
pub fn code_from_parity(h: &BinaryMatrix, d: u32, guard: Guard) -> Result<ForbiddenLinearCode> {
    let n = h.col_count();
    let code = BinaryLinearCode::from_parity_check(h);
    if d as usize > n {
        return Ok(ForbiddenLinearCode { code, d, parity_check: Some(h.clone()) });
    }
    let subsets = u64::try_from(binomial(n as u64, d as u64)).unwrap_or(u64::MAX);
    if d > 0 && subsets <= SUBSET_SCAN_LIMIT {
        if let Some(s) = zero_sum_subset(h, d as usize) {
            let word = s.iter().fold(0u64, |w, &j| w | (1 << j));
            return Err(Error::Construction(format!(
                "codeword {} has the forbidden weight {d}",
                bits_to_string(word, n)
            )));
        }
    } else {
        validate_forbidden(&code, d, guard)?;
    }
    Ok(ForbiddenLinearCode {
        code,
        d,
        parity_check: Some(h.clone()),
    })
}

/// `k = n - ceil(log2 n)`, the largest dimension of a length-`n` code with
/// no weight-2 word, with a witness built by the greedy search.
pub fn exact_k_d2(n: usize) -> Result<(usize, ForbiddenLinearCode)> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::usage(format!("length {n} outside 1..=64")));
    }
    let k = n - ceil_log2(n as u64) as usize;
    if n < 2 {
        return Ok((k, ForbiddenLinearCode::full_space(n, 2)?));
    }
    let h = greedy_forbidden_matrix(n, 2, Guard::Enforce)?;
    let code = code_from_parity(&h, 2, Guard::Enforce)?;
    if code.dimension() != k {
        return Err(Error::Integrity(format!(
            "greedy witness has dimension {}, expected {k}",
            code.dimension()
        )));
    }
    Ok((k, code))
}

pub(crate) fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `C1 (+) C2` on `n1 + n2` coordinates, `C1` first. Needs `d` even and
/// `C1` of minimum distance at least `d + 1`; the result also avoids
/// weight `d` and is checked by a codeword scan.
pub fn direct_sum(
    first: &BinaryLinearCode,
    second: &ForbiddenLinearCode,
    guard: Guard,
) -> Result<ForbiddenLinearCode> {
    let d = second.d;
    if !d.is_multiple_of(2) {
        return Err(Error::usage(format!("direct sum needs even d, got {d}")));
    }
    if let Some(c) = first.lightest_codeword(guard)? {
        if c.count_ones() <= d {
            return Err(Error::Construction(format!(
                "first code has codeword {} of weight {} <= d={d}",
                bits_to_string(c, first.length()),
                c.count_ones()
            )));
        }
    }
    let (n1, n2) = (first.length(), second.length());
    if n1 + n2 > MAX_LENGTH {
        return Err(Error::usage(format!("direct sum length {} exceeds 64", n1 + n2)));
    }
    let mut rows = first.generator().words().to_vec();
    rows.extend(second.code.shifted_rows(n1));
    let code = BinaryLinearCode::from_generator(&BinaryMatrix::from_words(n1 + n2, rows)?);
    ForbiddenLinearCode::new(code, d, guard)
}

/// The cosets of a forbidden-distance code as a partition of `V_n`.
pub fn forbidden_coset_partition(c: &ForbiddenLinearCode, guard: Guard) -> Result<HypercubePartition> {
    let blocks = c.code.enumerate_cosets(guard)?;
    HypercubePartition::new(
        c.length(),
        PartitionMode::ForbiddenDistance(c.d),
        blocks,
        format!("forbidden-coset n={} k={} d={}", c.length(), c.dimension(), c.d),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force_has_weight(code: &BinaryLinearCode, d: u32) -> bool {
        code.codewords(Guard::Enforce)
            .unwrap()
            .into_iter()
            .any(|c| c.count_ones() == d)
    }

    #[test]
    fn redundancy_values() {
        assert_eq!(required_redundancy(3, 2), 2);
        assert_eq!(required_redundancy(8, 2), 3);
        assert_eq!(required_redundancy(9, 2), 4);
        assert_eq!(required_redundancy(10, 4), 7);
        assert_eq!(required_redundancy(64, 1), 1);
    }

    #[test]
    fn greedy_n3_d2() {
        let h = greedy_forbidden_matrix(3, 2, Guard::Enforce).unwrap();
        assert_eq!(h.row_count(), 2);
        assert_eq!((0..3).map(|j| h.column(j)).collect::<Vec<_>>(), vec![1, 2, 3]);
        let code = code_from_parity(&h, 2, Guard::Enforce).unwrap();
        assert_eq!(code.code().codewords(Guard::Enforce).unwrap(), vec![0, 0b111]);
    }

    #[test]
    fn greedy_uses_zero_when_needed() {
        let h = greedy_forbidden_matrix(4, 2, Guard::Enforce).unwrap();
        assert_eq!((0..4).map(|j| h.column(j)).collect::<Vec<_>>(), vec![1, 2, 3, 0]);
        assert_eq!(code_from_parity(&h, 2, Guard::Enforce).unwrap().dimension(), 2);
    }

    #[test]
    fn exact_d2_family() {
        for n in 1..=40usize {
            let (k, code) = exact_k_d2(n).unwrap();
            assert_eq!(k, n - ceil_log2(n as u64) as usize, "n={n}");
            assert_eq!(code.dimension(), k);
            if code.dimension() <= 20 {
                assert!(!brute_force_has_weight(code.code(), 2));
            }
        }
        assert_eq!(exact_k_d2(9).unwrap().0, 5);
    }

    #[test]
    fn repeated_columns_rejected() {
        let h = BinaryMatrix::from_columns(2, &[1, 1, 2]).unwrap();
        let err = code_from_parity(&h, 2, Guard::Enforce).unwrap_err();
        assert!(err.to_string().contains("110"), "{err}");
    }

    #[test]
    fn direct_sum_of_golay_and_greedy() {
        let golay = BinaryLinearCode::golay23();
        let h = greedy_forbidden_matrix(10, 6, Guard::Enforce).unwrap();
        let c2 = code_from_parity(&h, 6, Guard::Enforce).unwrap();
        let sum = direct_sum(&golay, &c2, Guard::Enforce).unwrap();
        assert_eq!(sum.length(), 33);
        assert_eq!(sum.dimension(), 12 + c2.dimension());
        assert!(matches!(
            direct_sum(&BinaryLinearCode::hamming(3).unwrap(), &c2, Guard::Enforce),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let h = greedy_forbidden_matrix(8, 4, Guard::Enforce).unwrap();
        let c = code_from_parity(&h, 4, Guard::Enforce).unwrap();
        let back = ForbiddenLinearCode::from_text(&c.to_text(), Guard::Enforce).unwrap();
        assert_eq!(back.code(), c.code());
        assert_eq!(back.forbidden_distance(), 4);
        let lie = c.to_text().replace("forbidden d=4", "forbidden d=1");
        let lie_valid = !brute_force_has_weight(c.code(), 1);
        assert_eq!(ForbiddenLinearCode::from_text(&lie, Guard::Enforce).is_ok(), lie_valid);
        assert!(matches!(
            ForbiddenLinearCode::from_text(&c.code().to_text(), Guard::Enforce),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn coset_partition_forbids_distance() {
        let h = greedy_forbidden_matrix(6, 2, Guard::Enforce).unwrap();
        let c = code_from_parity(&h, 2, Guard::Enforce).unwrap();
        let p = forbidden_coset_partition(&c, Guard::Enforce).unwrap();
        assert_eq!(p.block_count(), 1 << (6 - c.dimension()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn greedy_kernel_avoids_d(n in 2usize..=14, d in 1u32..=6) {
            prop_assume!(d as usize <= n);
            let h = greedy_forbidden_matrix(n, d, Guard::Enforce).unwrap();
            let m = required_redundancy(n as u32, d) as usize;
            prop_assert_eq!(h.row_count(), m);
            let code = BinaryLinearCode::from_parity_check(&h);
            prop_assert!(code.dimension() >= n.saturating_sub(m));
            prop_assert!(!brute_force_has_weight(&code, d));
        }
    }
}
