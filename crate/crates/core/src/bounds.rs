//! Exact-integer evaluation of lower and upper bounds on the two distance
//! chromatic numbers, and tables comparing them.
//!
//! `ChiPrime` is the at-most-`d` number, `Chi` the exactly-`d` number.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Guard, Result};
use crate::forbidden::{
    binomial, ceil_log2, code_from_parity, forbidden_coset_partition, greedy_forbidden_matrix,
    required_redundancy,
};
use crate::gf2::BinaryLinearCode;
use crate::oracle;
use crate::partition::{self, ColoringMode};
use crate::z4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Exactly-`d` coloring.
    Chi,
    /// At-most-`d` coloring.
    ChiPrime,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Chi => "chi",
            Quantity::ChiPrime => "chi_prime",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chi" => Ok(Quantity::Chi),
            "chi_prime" | "chi-prime" => Ok(Quantity::ChiPrime),
            _ => Err(Error::usage(format!("unknown quantity `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KSource {
    Builtin,
    UserFile,
    GreedyWitness,
    ExactOracle,
}

impl KSource {
    pub fn as_str(self) -> &'static str {
        match self {
            KSource::Builtin => "builtin",
            KSource::UserFile => "user-file",
            KSource::GreedyWitness => "greedy-witness",
            KSource::ExactOracle => "exact-oracle",
        }
    }
}

#[derive(Debug, Clone)]
pub struct KEntry {
    pub k: u32,
    pub source: KSource,
    /// A code achieving `k`; present for witness and oracle entries.
    pub witness: Option<BinaryLinearCode>,
}

/// Known values of `k(n, d)`, the largest dimension of a binary linear code
/// of length `n` and minimum distance `d`.
#[derive(Debug, Clone, Default)]
pub struct KTable {
    entries: BTreeMap<(u32, u32), KEntry>,
}

impl KTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The three values needed by the direct-sum comparisons at
    /// `(13,4)`, `(14,4)`, `(28,6)`.
    pub fn builtin() -> Self {
        let mut t = Self::empty();
        for (n, d, k) in [(10, 5, 3), (11, 5, 4), (23, 7, 12)] {
            t.entries.insert(
                (n, d),
                KEntry {
                    k,
                    source: KSource::Builtin,
                    witness: None,
                },
            );
        }
        t
    }

    pub fn get(&self, n: u32, d: u32) -> Option<&KEntry> {
        self.entries.get(&(n, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), &KEntry)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Inserts an entry backed by a code, which is checked to have length
    /// `n`, dimension `k` and minimum distance at least `d`.
    pub fn insert_witness(
        &mut self,
        n: u32,
        d: u32,
        code: BinaryLinearCode,
        source: KSource,
        guard: Guard,
    ) -> Result<()> {
        if code.length() != n as usize {
            return Err(Error::usage(format!("witness has length {}, expected {n}", code.length())));
        }
        if let Some(w) = code.min_hamming_weight(guard)? {
            if w < d {
                return Err(Error::Construction(format!(
                    "witness for k({n},{d}) has minimum distance {w}"
                )));
            }
        }
        self.entries.insert(
            (n, d),
            KEntry {
                k: code.dimension() as u32,
                source,
                witness: Some(code),
            },
        );
        Ok(())
    }

    /// Adds entries from `n,d,k,source` CSV. Rows override existing
    /// entries. Witness-backed sources cannot be loaded from a file.
    pub fn merge_csv(&mut self, text: &str) -> Result<()> {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::parse(1, e.to_string()))?
            .clone();
        if headers.iter().collect::<Vec<_>>() != ["n", "d", "k", "source"] {
            return Err(Error::parse(1, "expected header `n,d,k,source`"));
        }
        for (i, record) in reader.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| Error::parse(line, e.to_string()))?;
            let num = |j: usize| -> Result<u32> {
                record[j]
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad integer `{}`", &record[j])))
            };
            let (n, d, k) = (num(0)?, num(1)?, num(2)?);
            if n == 0 || k > n {
                return Err(Error::parse(line, format!("invalid entry k({n},{d})={k}")));
            }
            let source = match &record[3] {
                "user-file" | "" => KSource::UserFile,
                "builtin" => KSource::Builtin,
                other => {
                    return Err(Error::parse(
                        line,
                        format!("source `{other}` needs a witness code and cannot come from a file"),
                    ))
                }
            };
            self.entries.insert((n, d), KEntry { k, source, witness: None });
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d,k,source\n");
        for ((n, d), e) in &self.entries {
            out.push_str(&format!("{n},{d},{},{}\n", e.k, e.source.as_str()));
        }
        out
    }

    /// Table value, or the exhaustive oracle for lengths it can handle.
    fn lookup(&mut self, n: u32, d: u32) -> Option<KEntry> {
        if let Some(e) = self.get(n, d) {
            return Some(e.clone());
        }
        if n as usize <= oracle::MAX_SUBSPACE_LENGTH {
            let (_, code) = oracle::exact_k_small(n as usize, d, Guard::Enforce).ok()?;
            self.insert_witness(n, d, code, KSource::ExactOracle, Guard::Enforce).ok()?;
            return self.get(n, d).cloned();
        }
        None
    }
}

pub(crate) fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    (a + b - 1u32) / b
}

fn check_even(d: u32) -> Result<()> {
    if !d.is_multiple_of(2) {
        return Err(Error::usage(format!("d must be even, got {d}")));
    }
    Ok(())
}

/// `ceil(2^n / A(n, d+1))`.
pub fn lower_chi_prime(n: u32, a_value: &BigUint) -> Result<BigUint> {
    if a_value.is_zero() {
        return Err(Error::usage("A(n, d+1) must be positive"));
    }
    Ok(ceil_div(&pow2(n as u64), a_value))
}

/// `ceil(2^n / Q(n, d-bar))`.
pub fn lower_chi(n: u32, q_value: &BigUint) -> Result<BigUint> {
    if q_value.is_zero() {
        return Err(Error::usage("Q(n, d) must be positive"));
    }
    Ok(ceil_div(&pow2(n as u64), q_value))
}

/// `2^ceil(log2(1 + C(n-1, d-1)))` for even `d`, from the greedy
/// forbidden-distance code.
pub fn greedy_upper(n: u32, d: u32) -> Result<BigUint> {
    check_even(d)?;
    if d == 0 || d > n {
        return Err(Error::usage(format!("need 1 <= d <= n, got n={n} d={d}")));
    }
    Ok(pow2(required_redundancy(n, d) as u64))
}

/// `2^(n - d + 1 - k(n-d+1, d+1))` for even `d` and `n >= 2d`, from the
/// direct sum of a distance-`(d+1)` code with `V_(d-1)`.
pub fn direct_sum_upper(n: u32, d: u32, kt: &KTable) -> Result<BigUint> {
    check_even(d)?;
    if d == 0 || n < 2 * d {
        return Err(Error::usage(format!("need n >= 2d, got n={n} d={d}")));
    }
    let base = n - d + 1;
    let e = kt
        .get(base, d + 1)
        .ok_or(Error::MissingTableEntry { n: base, d: d + 1 })?;
    Ok(pow2((base - e.k) as u64))
}

/// Kim-Du-Pardalos: `(d+1) * ((d+2)/2)^((d(d+2)/8) * ceil(log2 n))` for
/// even `d`.
pub fn kdp_upper(n: u32, d: u32) -> Result<BigUint> {
    check_even(d)?;
    if n < 2 || d == 0 {
        return Err(Error::usage(format!("need n >= 2 and d >= 2, got n={n} d={d}")));
    }
    let d64 = d as u64;
    let exp = (d64 * (d64 + 2) / 8) * ceil_log2(n as u64) as u64;
    let exp = u32::try_from(exp).map_err(|_| Error::usage("exponent too large"))?;
    Ok(BigUint::from(d64 + 1) * BigUint::from((d64 + 2) / 2).pow(exp))
}

/// For odd `r >= 3`: `(chi'_4(2^(r+1) - 1), chi'_5(2^(r+1)))
/// = (2^(2r+1), 4^(r+1))`.
pub fn preparata_values(r: u32) -> Result<(BigUint, BigUint)> {
    if r < 3 || r.is_multiple_of(2) {
        return Err(Error::usage(format!("r must be odd and at least 3, got {r}")));
    }
    Ok((pow2(2 * r as u64 + 1), pow2(2 * r as u64 + 2)))
}

/// `chi'_d(n1) * chi_d(n2)`, an upper bound on `chi_d(n1 + n2)`.
pub fn product_upper(chi_prime_n1: &BigUint, chi_n2: &BigUint, d: u32) -> Result<BigUint> {
    check_even(d)?;
    Ok(chi_prime_n1 * chi_n2)
}

/// Cited value of `A(n, d)` for the Preparata family, after mapping odd
/// `d` to `(n+1, d+1)`: `A(2^(r+1), 6) = 2^(2^(r+1) - 2r - 2)`, odd `r >= 3`.
pub fn reference_a(n: u32, d: u32) -> Option<BigUint> {
    let (n, d) = if d % 2 == 1 { (n + 1, d + 1) } else { (n, d) };
    if d != 6 || !n.is_power_of_two() || n < 16 {
        return None;
    }
    let r = n.trailing_zeros() - 1;
    (r % 2 == 1).then(|| pow2((n - 2 * r - 2) as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// Follows from counting or a cited fact evaluated exactly.
    Arithmetic,
    /// Relies on a value consumed as a cited fact, not recomputed here.
    Reference,
    /// Backed by an explicit construction.
    Constructive,
    /// Computed by exhaustive search.
    Exact,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Arithmetic => "arithmetic",
            BoundKind::Reference => "reference",
            BoundKind::Constructive => "constructive",
            BoundKind::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
    pub rule: &'static str,
    pub kind: BoundKind,
    /// Inputs used, e.g. `A(16,6)=2^8`.
    pub detail: String,
    /// Provenance of the construction backing a constructive bound.
    pub witness: Option<String>,
    /// Whether that construction was built and verified for this report.
    pub verified: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Serialize)]
pub struct Gap {
    pub rule: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub d: u32,
    pub quantity: Quantity,
    pub lower: Vec<BoundEntry>,
    pub upper: Vec<BoundEntry>,
    pub gaps: Vec<Gap>,
}

impl BoundReport {
    /// Largest lower bound; the first rule wins ties.
    pub fn best_lower(&self) -> Option<&BoundEntry> {
        self.lower
            .iter()
            .rev()
            .max_by(|a, b| a.value.cmp(&b.value))
    }

    /// Smallest upper bound; the first rule wins ties.
    pub fn best_upper(&self) -> Option<&BoundEntry> {
        self.upper
            .iter()
            .rev()
            .min_by(|a, b| a.value.cmp(&b.value))
    }

    pub fn is_exact(&self) -> bool {
        matches!((self.best_lower(), self.best_upper()), (Some(l), Some(u)) if l.value == u.value)
    }

    pub fn upper_by_rule(&self, rule: &str) -> Option<&BoundEntry> {
        self.upper.iter().find(|e| e.rule == rule)
    }

    pub fn lower_by_rule(&self, rule: &str) -> Option<&BoundEntry> {
        self.lower.iter().find(|e| e.rule == rule)
    }
}

/// Renders powers of two as `2^k`, everything else in decimal.
pub fn format_value(v: &BigUint) -> String {
    if !v.is_zero() && (v & (v - 1u32)).is_zero() {
        let e = v.bits() - 1;
        if e >= 2 {
            return format!("2^{e}");
        }
    }
    v.to_string()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TableOptions {
    /// Build and verify constructive witnesses where they fit in memory.
    pub verify_witnesses: bool,
    /// Run the exhaustive coloring oracle for `n` up to this value.
    pub oracle_max_n: usize,
}

struct Builder {
    n: u32,
    d: u32,
    quantity: Quantity,
    opts: TableOptions,
    lower: Vec<BoundEntry>,
    upper: Vec<BoundEntry>,
    gaps: Vec<Gap>,
}

impl Builder {
    fn lower(&mut self, value: BigUint, rule: &'static str, kind: BoundKind, detail: String) {
        self.lower.push(BoundEntry {
            value,
            rule,
            kind,
            detail,
            witness: None,
            verified: false,
        });
    }

    fn upper(&mut self, value: BigUint, rule: &'static str, kind: BoundKind, detail: String) {
        self.upper.push(BoundEntry {
            value,
            rule,
            kind,
            detail,
            witness: None,
            verified: false,
        });
    }

    /// Constructive upper bound. With witness verification on, `build` is
    /// run and must return a verified color count no larger than `value`.
    fn constructive(
        &mut self,
        value: BigUint,
        rule: &'static str,
        detail: String,
        witness: String,
        fits: bool,
        build: impl FnOnce() -> Result<usize>,
    ) -> Result<()> {
        let verified = if self.opts.verify_witnesses && fits {
            let colors = build()?;
            if BigUint::from(colors) > value {
                return Err(Error::Integrity(format!(
                    "{witness} has {colors} colors, bound says {value}"
                )));
            }
            true
        } else {
            false
        };
        self.upper.push(BoundEntry {
            value,
            rule,
            kind: BoundKind::Constructive,
            detail,
            witness: Some(witness),
            verified,
        });
        Ok(())
    }

    fn gap(&mut self, rule: &'static str, reason: String) {
        self.gaps.push(Gap { rule, reason });
    }

    fn finish(self) -> Result<BoundReport> {
        let r = BoundReport {
            n: self.n,
            d: self.d,
            quantity: self.quantity,
            lower: self.lower,
            upper: self.upper,
            gaps: self.gaps,
        };
        if let (Some(l), Some(u)) = (r.best_lower(), r.best_upper()) {
            if l.value > u.value {
                return Err(Error::Integrity(format!(
                    "{} n={} d={}: lower {} [{}] exceeds upper {} [{}]",
                    r.quantity.as_str(),
                    r.n,
                    r.d,
                    l.value,
                    l.rule,
                    u.value,
                    u.rule
                )));
            }
        }
        Ok(r)
    }

    fn oracle(&mut self, mode: ColoringMode) -> Result<()> {
        let n = self.n as usize;
        if n <= self.opts.oracle_max_n.min(oracle::MAX_CHI_LENGTH) {
            let chi = oracle::exact_chi_small(n, self.d, mode, Guard::Enforce)?;
            self.lower(BigUint::from(chi), "exact-oracle", BoundKind::Exact, "exhaustive coloring".into());
            self.upper(BigUint::from(chi), "exact-oracle", BoundKind::Exact, "exhaustive coloring".into());
        }
        Ok(())
    }
}

/// Lengths at which tables call the independence oracles.
const TABLE_ORACLE_A_MAX_N: u32 = 7;
const TABLE_ORACLE_Q_MAX_N: u32 = 6;

fn bits_fit(n: u32) -> bool {
    n as usize <= crate::gf2::MAX_COSET_LENGTH
}

fn chi_prime_report(n: u32, d: u32, kt: &mut KTable, opts: TableOptions) -> Result<BoundReport> {
    let mut b = Builder {
        n,
        d,
        quantity: Quantity::ChiPrime,
        opts,
        lower: Vec::new(),
        upper: Vec::new(),
        gaps: Vec::new(),
    };
    // a Hamming ball of radius floor(d/2) has diameter <= d
    let ball: BigUint = (0..=(d / 2).min(n)).map(|i| binomial(n as u64, i as u64)).sum();
    b.lower(ball, "ball-clique", BoundKind::Arithmetic, format!("radius {}", d / 2));

    if n <= TABLE_ORACLE_A_MAX_N {
        let a = oracle::exact_a_small(n as usize, d + 1, Guard::Enforce)?;
        b.lower(
            lower_chi_prime(n, &BigUint::from(a))?,
            "volume-A",
            BoundKind::Exact,
            format!("A({n},{})={a}", d + 1),
        );
    } else if let Some(a) = reference_a(n, d + 1) {
        b.lower(
            lower_chi_prime(n, &a)?,
            "volume-A",
            BoundKind::Reference,
            format!("A({n},{})={}", d + 1, format_value(&a)),
        );
    } else {
        b.gap("volume-A", format!("A({n},{}) unknown", d + 1));
    }

    b.upper(pow2(n as u64), "singletons", BoundKind::Arithmetic, String::new());

    match kt.lookup(n, d + 1) {
        Some(e) => {
            let value = pow2((n - e.k) as u64);
            let witness = e.witness.clone();
            b.constructive(
                value,
                "linear-coset",
                format!("k({n},{})={} [{}]", d + 1, e.k, e.source.as_str()),
                format!("linear-coset n={n} k={} d={d}", e.k),
                witness.is_some() && bits_fit(n),
                || {
                    let code = witness.expect("checked above");
                    Ok(partition::from_binary_linear(&code, d, Guard::Enforce)?.block_count())
                },
            )?;
        }
        None => b.gap("linear-coset", format!("k({n},{}) not in table", d + 1)),
    }

    // Preparata family
    let preparata_r = |len: u32| {
        (len.is_power_of_two() && len >= 16)
            .then(|| len.trailing_zeros() - 1)
            .filter(|r| r % 2 == 1)
    };
    if d == 5 {
        if let Some(r) = preparata_r(n) {
            let (_, v) = preparata_values(r)?;
            b.constructive(
                v,
                "z4-coset",
                format!("r={r}"),
                format!("preparata r={r} coset"),
                bits_fit(n),
                || Ok(partition::z4_coset_partition(&z4::preparata_code(r)?, Guard::Enforce)?.block_count()),
            )?;
        }
    }
    if d == 4 {
        if let Some(r) = preparata_r(n + 1) {
            let (v, _) = preparata_values(r)?;
            b.constructive(
                v,
                "z4-punctured",
                format!("r={r}"),
                format!("preparata r={r} punctured"),
                bits_fit(n + 1),
                || Ok(partition::z4_punctured_partition(&z4::preparata_code(r)?, Guard::Enforce)?.block_count()),
            )?;
        }
    }
    b.oracle(ColoringMode::AtMostD)?;
    b.finish()
}

fn chi_report(n: u32, d: u32, kt: &mut KTable, opts: TableOptions) -> Result<BoundReport> {
    let mut b = Builder {
        n,
        d,
        quantity: Quantity::Chi,
        opts,
        lower: Vec::new(),
        upper: Vec::new(),
        gaps: Vec::new(),
    };
    if d > n {
        // no two words are at distance d
        b.lower(BigUint::one(), "no-constraint", BoundKind::Arithmetic, format!("d={d} > n"));
        b.upper(BigUint::one(), "no-constraint", BoundKind::Arithmetic, format!("d={d} > n"));
        return b.finish();
    }
    b.lower(BigUint::from(2u32), "edge", BoundKind::Arithmetic, format!("0 and a weight-{d} word"));
    if n <= TABLE_ORACLE_Q_MAX_N {
        let q = oracle::exact_q_small(n as usize, d, Guard::Enforce)?;
        b.lower(
            lower_chi(n, &BigUint::from(q))?,
            "volume-Q",
            BoundKind::Exact,
            format!("Q({n},{d})={q}"),
        );
    }

    if d % 2 == 1 {
        b.constructive(
            BigUint::from(2u32),
            "parity",
            "weight parity".into(),
            format!("parity n={n} d={d}"),
            bits_fit(n),
            || Ok(partition::parity_coloring(n as usize, d)?.color_count() as usize),
        )?;
        b.oracle(ColoringMode::ExactD)?;
        return b.finish();
    }

    let m = required_redundancy(n, d);
    b.constructive(
        greedy_upper(n, d)?,
        "greedy-forbidden",
        format!("m={m}"),
        format!("forbidden-coset greedy n={n} d={d}"),
        bits_fit(n) && m <= crate::forbidden::MAX_GREEDY_REDUNDANCY,
        || {
            let h = greedy_forbidden_matrix(n as usize, d, Guard::Enforce)?;
            let code = code_from_parity(&h, d, Guard::Enforce)?;
            Ok(forbidden_coset_partition(&code, Guard::Enforce)?.block_count())
        },
    )?;

    if d == 2 {
        let e = ceil_log2(n as u64);
        b.constructive(
            pow2(e as u64),
            "exact-d2",
            format!("k={}", n - e),
            format!("forbidden-coset greedy n={n} d=2"),
            bits_fit(n),
            || {
                let (_, code) = crate::forbidden::exact_k_d2(n as usize)?;
                Ok(forbidden_coset_partition(&code, Guard::Enforce)?.block_count())
            },
        )?;
    }

    if n >= 2 * d {
        let base = n - d + 1;
        match kt.lookup(base, d + 1) {
            Some(e) => {
                let witness = e.witness.clone();
                b.constructive(
                    direct_sum_upper(n, d, kt)?,
                    "direct-sum-forbidden",
                    format!("k({base},{})={} [{}]", d + 1, e.k, e.source.as_str()),
                    format!("direct-sum k={} + V_{}", e.k, d - 1),
                    witness.is_some() && bits_fit(n),
                    || {
                        let c1 = witness.expect("checked above");
                        let v = crate::forbidden::ForbiddenLinearCode::full_space(d as usize - 1, d)?;
                        let code = crate::forbidden::direct_sum(&c1, &v, Guard::Enforce)?;
                        Ok(forbidden_coset_partition(&code, Guard::Enforce)?.block_count())
                    },
                )?;
            }
            None => b.gap(
                "direct-sum-forbidden",
                format!("k({base},{}) not in table", d + 1),
            ),
        }
    } else {
        b.gap("direct-sum-forbidden", format!("needs n >= {}", 2 * d));
    }

    if n >= 2 {
        b.upper(
            kdp_upper(n, d)?,
            "kim-du-pardalos",
            BoundKind::Reference,
            format!("ceil(log2 n)={}", ceil_log2(n as u64)),
        );
    }
    b.oracle(ColoringMode::ExactD)?;
    b.finish()
}

/// One report per `n`, every applicable rule evaluated. Missing inputs are
/// recorded as gaps on the report rather than failing the table.
pub fn bound_table(
    quantity: Quantity,
    d: u32,
    ns: impl IntoIterator<Item = u32>,
    kt: &KTable,
    opts: TableOptions,
) -> Result<Vec<BoundReport>> {
    let mut kt = kt.clone();
    ns.into_iter()
        .map(|n| {
            if n == 0 || n > 64 {
                return Err(Error::usage(format!("n={n} outside 1..=64")));
            }
            if d == 0 {
                return Err(Error::usage("d must be positive"));
            }
            match quantity {
                Quantity::ChiPrime => chi_prime_report(n, d, &mut kt, opts),
                Quantity::Chi => chi_report(n, d, &mut kt, opts),
            }
        })
        .collect()
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let best = |e: Option<&BoundEntry>| {
            e.map(|e| format!("{} [{}]", format_value(&e.value), e.rule))
                .unwrap_or_else(|| "-".into())
        };
        writeln!(
            f,
            "{} d={} n={}: lower {}  upper {}{}",
            self.quantity.as_str(),
            self.d,
            self.n,
            best(self.best_lower()),
            best(self.best_upper()),
            if self.is_exact() { "  (exact)" } else { "" }
        )?;
        for (side, entries) in [("lower", &self.lower), ("upper", &self.upper)] {
            for e in entries {
                let mut line = format!(
                    "  {side:<5} {:<22} {:>12}  {:<12}",
                    e.rule,
                    format_value(&e.value),
                    e.kind.as_str()
                );
                if !e.detail.is_empty() {
                    line.push_str(&format!(" {}", e.detail));
                }
                if let Some(w) = &e.witness {
                    line.push_str(&format!(
                        "  witness: {w}{}",
                        if e.verified { " (verified)" } else { "" }
                    ));
                }
                writeln!(f, "{}", line.trim_end())?;
            }
        }
        for g in &self.gaps {
            writeln!(f, "  gap   {:<22} {}", g.rule, g.reason)?;
        }
        Ok(())
    }
}

pub fn render_text(reports: &[BoundReport]) -> String {
    reports.iter().map(|r| r.to_string()).collect()
}

pub fn render_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(["quantity", "n", "d", "side", "rule", "value", "kind", "detail", "witness", "verified", "best"])
        .map_err(io)?;
    for r in reports {
        let bl = r.best_lower().map(|e| e.rule);
        let bu = r.best_upper().map(|e| e.rule);
        for (side, entries, best) in [("lower", &r.lower, bl), ("upper", &r.upper, bu)] {
            for e in entries {
                w.write_record([
                    r.quantity.as_str().to_string(),
                    r.n.to_string(),
                    r.d.to_string(),
                    side.to_string(),
                    e.rule.to_string(),
                    format_value(&e.value),
                    e.kind.as_str().to_string(),
                    e.detail.clone(),
                    e.witness.clone().unwrap_or_default(),
                    e.verified.to_string(),
                    (best == Some(e.rule)).to_string(),
                ])
                .map_err(io)?;
            }
        }
        for g in &r.gaps {
            w.write_record([
                r.quantity.as_str(),
                &r.n.to_string(),
                &r.d.to_string(),
                "gap",
                g.rule,
                "",
                "",
                &g.reason,
                "",
                "false",
                "false",
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Exponent of a power of two, if `v` is one.
pub fn log2_exact(v: &BigUint) -> Option<u64> {
    (!v.is_zero() && (v & (v - 1u32)).is_zero()).then(|| v.bits() - 1)
}
