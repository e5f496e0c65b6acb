//! Exhaustive checking of colorings and partitions.
//!
//! A failing report always carries a counterexample that can be checked by
//! hand: two vertices, their distance, and why that distance is illegal.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Guard, Result};
use crate::gf2::{bits_to_string, MAX_COSET_LENGTH};
use crate::partition::{ColoringCertificate, ColoringMode, HypercubePartition, PartitionMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Auto,
    /// Walk every vertex and every offset of a constrained weight.
    Neighbor,
    /// Compare all pairs inside each class.
    Pairwise,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::Neighbor => "neighbor",
            Strategy::Pairwise => "pairwise",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "neighbor" => Ok(Strategy::Neighbor),
            "pairwise" => Ok(Strategy::Pairwise),
            _ => Err(Error::usage(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    WellFormed,
    Disjoint,
    Covering,
    Distance,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::WellFormed => "well-formed",
            Check::Disjoint => "disjoint",
            Check::Covering => "covering",
            Check::Distance => "distance",
        }
    }
}

/// Which distances are illegal inside one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// Distances `1..=d`.
    AtMost(u32),
    /// Distance `d` only.
    Exactly(u32),
}

impl Constraint {
    pub fn forbids(self, distance: u32) -> bool {
        match self {
            Constraint::AtMost(d) => distance >= 1 && distance <= d,
            Constraint::Exactly(d) => distance == d,
        }
    }

    fn weights(self) -> std::ops::RangeInclusive<u32> {
        match self {
            Constraint::AtMost(d) => 1..=d,
            Constraint::Exactly(d) => d..=d,
        }
    }
}

impl From<PartitionMode> for Constraint {
    fn from(m: PartitionMode) -> Self {
        match m {
            PartitionMode::MinDistanceAtLeast(delta) => Constraint::AtMost(delta.saturating_sub(1)),
            PartitionMode::ForbiddenDistance(d) => Constraint::Exactly(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    /// Two vertices in one class at an illegal distance.
    Pair { u: u64, v: u64, distance: u32 },
    /// A vertex listed in two blocks.
    SharedVertex { vertex: u64, first: usize, second: usize },
    /// A vertex in no block.
    Uncovered { vertex: u64 },
    /// A vertex outside the cube.
    OutOfRange { vertex: u64, block: usize },
    /// A color id at or above the declared count.
    ColorOutOfRange { vertex: u64, color: u32 },
    /// A declared color with no vertices.
    UnusedColor { color: u32 },
}

impl Counterexample {
    pub fn render(&self, n: usize) -> String {
        match *self {
            Counterexample::Pair { u, v, distance } => format!(
                "{} and {} share a class at distance {distance}",
                bits_to_string(u, n),
                bits_to_string(v, n)
            ),
            Counterexample::SharedVertex { vertex, first, second } => format!(
                "vertex {} is in blocks {first} and {second}",
                bits_to_string(vertex, n)
            ),
            Counterexample::Uncovered { vertex } => {
                format!("vertex {} is in no block", bits_to_string(vertex, n))
            }
            Counterexample::OutOfRange { vertex, block } => {
                format!("block {block} lists vertex {vertex} outside V_{n}")
            }
            Counterexample::ColorOutOfRange { vertex, color } => format!(
                "vertex {} has color {color} beyond the declared count",
                bits_to_string(vertex, n)
            ),
            Counterexample::UnusedColor { color } => format!("color {color} is never used"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub constraint: String,
    pub checks: Vec<(Check, bool)>,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub strategy: Strategy,
    pub pairs_examined: u64,
    #[serde(serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl VerificationReport {
    pub fn summary(&self) -> String {
        match &self.counterexample {
            None if self.passed => "pass".to_string(),
            None => "fail".to_string(),
            Some(c) => format!("fail: {}", c.render(self.n)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "result: {}\nn: {}\nconstraint: {}\nstrategy: {}\npairs examined: {}\nelapsed: {:.3} ms\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.n,
            self.constraint,
            self.strategy,
            self.pairs_examined,
            self.elapsed.as_secs_f64() * 1e3
        );
        for (check, ok) in &self.checks {
            out.push_str(&format!("check {}: {}\n", check.as_str(), if *ok { "ok" } else { "failed" }));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("counterexample: {}\n", c.render(self.n)));
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["passed", "n", "constraint", "strategy", "pairs_examined", "elapsed_ms", "counterexample"])
            .and_then(|_| {
                w.write_record([
                    self.passed.to_string(),
                    self.n.to_string(),
                    self.constraint.clone(),
                    self.strategy.to_string(),
                    self.pairs_examined.to_string(),
                    format!("{:.3}", self.elapsed.as_secs_f64() * 1e3),
                    self.counterexample.as_ref().map(|c| c.render(self.n)).unwrap_or_default(),
                ])
            })
            .map_err(|e| Error::Io(e.into()))?;
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc.saturating_mul(n as u64 - i) / (i + 1))
}

/// All `n`-bit masks whose weight the constraint forbids, in increasing
/// weight, then increasing value.
fn offsets(n: usize, c: Constraint) -> Vec<u64> {
    let mut out = Vec::new();
    for w in c.weights() {
        if w == 0 || w as usize > n {
            continue;
        }
        // Gosper's hack over w-subsets of n bits
        let mut x: u64 = (1u64 << w) - 1;
        let limit = 1u64 << n;
        while x < limit {
            out.push(x);
            let low = x & x.wrapping_neg();
            let ripple = x + low;
            x = (((ripple ^ x) >> 2) / low) | ripple;
        }
    }
    out
}

struct ClassCheck {
    found: Option<Counterexample>,
    strategy: Strategy,
    pairs: u64,
}

/// `labels[v]` is the class of `v`; `classes[i]` lists the members of class
/// `i` in increasing order.
fn check_classes(
    n: usize,
    labels: &[u32],
    classes: &[Vec<u64>],
    constraint: Constraint,
    strategy: Strategy,
) -> ClassCheck {
    let neighbor_cost: u64 = constraint
        .weights()
        .map(|w| binomial(n as u32, w))
        .sum::<u64>()
        .saturating_mul(1u64 << n)
        / 2;
    let pair_cost: u64 = classes
        .iter()
        .map(|c| {
            let s = c.len() as u64;
            s * s.saturating_sub(1) / 2
        })
        .sum();
    let strategy = match strategy {
        Strategy::Auto if neighbor_cost < pair_cost => Strategy::Neighbor,
        Strategy::Auto => Strategy::Pairwise,
        s => s,
    };
    let found = match strategy {
        Strategy::Neighbor => {
            let masks = offsets(n, constraint);
            (0..1u64 << n).into_par_iter().find_map_first(|u| {
                masks.iter().find_map(|&e| {
                    let v = u ^ e;
                    (v > u && labels[u as usize] == labels[v as usize]).then(|| Counterexample::Pair {
                        u,
                        v,
                        distance: e.count_ones(),
                    })
                })
            })
        }
        _ => classes.par_iter().find_map_first(|class| {
            class.iter().enumerate().find_map(|(i, &u)| {
                class[i + 1..].iter().find_map(|&v| {
                    let distance = (u ^ v).count_ones();
                    constraint
                        .forbids(distance)
                        .then_some(Counterexample::Pair { u, v, distance })
                })
            })
        }),
    };
    let pairs = if strategy == Strategy::Neighbor { neighbor_cost } else { pair_cost };
    ClassCheck { found, strategy, pairs }
}

fn constraint_label(c: Constraint) -> String {
    match c {
        Constraint::AtMost(d) => format!("distance 1..={d} forbidden"),
        Constraint::Exactly(d) => format!("distance {d} forbidden"),
    }
}

fn guard_length(n: usize, guard: Guard) -> Result<()> {
    guard.check("verification length n", n as u64, MAX_COSET_LENGTH as u64)?;
    if n > 32 {
        // the vertex arrays would not fit in memory whatever the guard says
        return Err(Error::ExhaustiveLimit {
            what: "verification length n",
            size: n as u64,
            limit: 32,
        });
    }
    Ok(())
}

/// Checks that every class of the coloring obeys its distance constraint,
/// that every color id is below the declared count, and that every declared
/// color is used.
pub fn verify_coloring(
    cert: &ColoringCertificate,
    strategy: Strategy,
    guard: Guard,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = cert.n();
    guard_length(n, guard)?;
    let constraint = match cert.mode() {
        ColoringMode::AtMostD => Constraint::AtMost(cert.d()),
        ColoringMode::ExactD => Constraint::Exactly(cert.d()),
    };
    let mut report = VerificationReport {
        n,
        constraint: constraint_label(constraint),
        checks: Vec::new(),
        passed: false,
        counterexample: None,
        strategy,
        pairs_examined: 0,
        elapsed: Duration::ZERO,
    };

    let colors = cert.color_count();
    let mut classes: Vec<Vec<u64>> = vec![Vec::new(); colors as usize];
    let mut bad = None;
    for (v, &c) in cert.assignment().iter().enumerate() {
        match classes.get_mut(c as usize) {
            Some(class) => class.push(v as u64),
            None => {
                bad = Some(Counterexample::ColorOutOfRange { vertex: v as u64, color: c });
                break;
            }
        }
    }
    if bad.is_none() {
        bad = classes
            .iter()
            .position(Vec::is_empty)
            .map(|c| Counterexample::UnusedColor { color: c as u32 });
    }
    report.checks.push((Check::WellFormed, bad.is_none()));
    if bad.is_some() {
        report.counterexample = bad;
        report.elapsed = start.elapsed();
        return Ok(report);
    }

    let cc = check_classes(n, cert.assignment(), &classes, constraint, strategy);
    report.checks.push((Check::Distance, cc.found.is_none()));
    report.passed = cc.found.is_none();
    report.counterexample = cc.found;
    report.strategy = cc.strategy;
    report.pairs_examined = cc.pairs;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Checks that the blocks are disjoint, cover `V_n`, and obey the mode's
/// distance constraint.
pub fn verify_partition(
    p: &HypercubePartition,
    strategy: Strategy,
    guard: Guard,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = p.n();
    guard_length(n, guard)?;
    let constraint = Constraint::from(p.mode());
    let mut report = VerificationReport {
        n,
        constraint: constraint_label(constraint),
        checks: Vec::new(),
        passed: false,
        counterexample: None,
        strategy,
        pairs_examined: 0,
        elapsed: Duration::ZERO,
    };

    let size = 1u64 << n;
    let mut labels = vec![u32::MAX; size as usize];
    let mut bad = None;
    'outer: for (i, block) in p.blocks().iter().enumerate() {
        for &v in block {
            if v >= size {
                bad = Some(Counterexample::OutOfRange { vertex: v, block: i });
                break 'outer;
            }
            let slot = &mut labels[v as usize];
            if *slot != u32::MAX {
                bad = Some(Counterexample::SharedVertex {
                    vertex: v,
                    first: *slot as usize,
                    second: i,
                });
                break 'outer;
            }
            *slot = i as u32;
        }
    }
    report.checks.push((Check::Disjoint, bad.is_none()));
    if bad.is_none() {
        bad = labels
            .iter()
            .position(|&l| l == u32::MAX)
            .map(|v| Counterexample::Uncovered { vertex: v as u64 });
        report.checks.push((Check::Covering, bad.is_none()));
    }
    if bad.is_some() {
        report.counterexample = bad;
        report.elapsed = start.elapsed();
        return Ok(report);
    }

    let cc = check_classes(n, &labels, p.blocks(), constraint, strategy);
    report.checks.push((Check::Distance, cc.found.is_none()));
    report.passed = cc.found.is_none();
    report.counterexample = cc.found;
    report.strategy = cc.strategy;
    report.pairs_examined = cc.pairs;
    report.elapsed = start.elapsed();
    Ok(report)
}
