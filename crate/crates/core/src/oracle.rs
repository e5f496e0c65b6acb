//! Brute-force ground truth on tiny cubes: exact chromatic numbers of the
//! distance graphs, maximum code sizes, and maximum linear dimensions.
//!
//! These share no code with the constructions they are used to check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Guard, Result};
use crate::gf2::{BinaryLinearCode, BinaryMatrix, BitVector};
use crate::partition::ColoringMode;
use crate::z4::{self, alpha_map, gray_map, lift_binary, Z4Vector};

/// Largest `n` for the coloring oracle (`2^n` vertices in one `u64`).
pub const MAX_CHI_LENGTH: usize = 6;
/// Largest `n` for the independence oracles (`2^n <= 256`).
pub const MAX_CODE_LENGTH: usize = 8;
/// Largest `n` for exhaustive subspace enumeration.
pub const MAX_SUBSPACE_LENGTH: usize = 7;

fn conflicts(distance: u32, d: u32, mode: ColoringMode) -> bool {
    match mode {
        ColoringMode::AtMostD => distance >= 1 && distance <= d,
        ColoringMode::ExactD => distance == d,
    }
}

/// Exact minimum number of colors for `V_n` under the given constraint,
/// by DSATUR branch and bound.
pub fn exact_chi_small(n: usize, d: u32, mode: ColoringMode, guard: Guard) -> Result<u32> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    guard.check("coloring oracle length n", n as u64, MAX_CHI_LENGTH as u64)?;
    if n > MAX_CHI_LENGTH {
        return Err(Error::ExhaustiveLimit {
            what: "coloring oracle length n",
            size: n as u64,
            limit: MAX_CHI_LENGTH as u64,
        });
    }
    let size = 1usize << n;
    let adj: Vec<u64> = (0..size as u64)
        .map(|u| {
            (0..size as u64)
                .filter(|&v| conflicts((u ^ v).count_ones(), d, mode))
                .fold(0u64, |m, v| m | (1 << v))
        })
        .collect();
    Ok(Dsatur::new(&adj).solve())
}

struct Dsatur<'a> {
    adj: &'a [u64],
    colors: Vec<u8>,
    best: u32,
    lower: u32,
}

const UNCOLORED: u8 = u8::MAX;

impl<'a> Dsatur<'a> {
    fn new(adj: &'a [u64]) -> Self {
        Dsatur {
            adj,
            colors: vec![UNCOLORED; adj.len()],
            best: adj.len() as u32,
            lower: greedy_clique(adj),
        }
    }

    fn solve(mut self) -> u32 {
        if !self.adj.is_empty() {
            self.search(0, 0);
        }
        self.best
    }

    /// Uncolored vertex with the most distinct neighbor colors; ties go to
    /// more uncolored neighbors, then to the smaller index.
    fn pick(&self) -> Option<(usize, u64)> {
        let uncolored = self
            .colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == UNCOLORED)
            .fold(0u64, |m, (v, _)| m | (1 << v));
        let mut best: Option<(u32, u32, usize, u64)> = None;
        for v in 0..self.adj.len() {
            if uncolored >> v & 1 == 0 {
                continue;
            }
            let mut used = 0u64;
            let mut nb = self.adj[v] & !uncolored;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                used |= 1 << self.colors[w];
                nb &= nb - 1;
            }
            let sat = used.count_ones();
            let deg = (self.adj[v] & uncolored).count_ones();
            if best.is_none_or(|(s, g, _, _)| (sat, deg) > (s, g)) {
                best = Some((sat, deg, v, used));
            }
        }
        best.map(|(_, _, v, used)| (v, used))
    }

    fn search(&mut self, colored: usize, used_colors: u32) {
        if used_colors >= self.best || self.best == self.lower {
            return;
        }
        if colored == self.adj.len() {
            self.best = used_colors;
            return;
        }
        let (v, forbidden) = self.pick().expect("an uncolored vertex remains");
        for c in 0..=used_colors {
            if c + 1 > self.best - 1 && c == used_colors {
                break;
            }
            if forbidden >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = c as u8;
            self.search(colored + 1, used_colors.max(c + 1));
            self.colors[v] = UNCOLORED;
            if self.best == self.lower {
                return;
            }
        }
    }
}

fn greedy_clique(adj: &[u64]) -> u32 {
    (0..adj.len())
        .map(|start| {
            let mut cand = adj[start];
            let mut size = 1;
            while cand != 0 {
                let v = cand.trailing_zeros() as usize;
                size += 1;
                cand &= adj[v];
            }
            size
        })
        .max()
        .unwrap_or(0)
}

type Bits = [u64; 4];

fn bits_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    [a[0] & b[0], a[1] & b[1], a[2] & b[2], a[3] & b[3]]
}

fn bits_is_empty(b: &Bits) -> bool {
    b.iter().all(|&w| w == 0)
}

fn bits_iter(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            (w != 0).then(|| {
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                i * 64 + t
            })
        })
    })
}

/// Maximum clique by branch and bound with a greedy-coloring bound.
struct MaxClique {
    adj: Vec<Bits>,
    best: usize,
}

impl MaxClique {
    fn expand(&mut self, size: usize, cand: Bits) {
        // color candidates greedily; a clique uses each color at most once
        let mut order = Vec::new();
        let mut left = cand;
        let mut color = 0;
        while !bits_is_empty(&left) {
            color += 1;
            let mut avail = left;
            loop {
                let Some(v) = bits_iter(&avail).next() else { break };
                order.push((v, color));
                avail[v / 64] &= !(1 << (v % 64));
                left[v / 64] &= !(1 << (v % 64));
                let nb = self.adj[v];
                for i in 0..4 {
                    avail[i] &= !nb[i];
                }
            }
        }
        let mut cand = cand;
        for &(v, c) in order.iter().rev() {
            if size + c <= self.best {
                return;
            }
            let next = bits_and(&cand, &self.adj[v]);
            if bits_is_empty(&next) {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(size + 1, next);
            }
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Largest set of vertices with no pair in conflict. The distance graphs
/// are vertex-transitive, so vertex 0 is fixed in the set.
fn max_independent(n: usize, conflict: impl Fn(u32) -> bool) -> u64 {
    let size = 1usize << n;
    let adj: Vec<Bits> = (0..size)
        .map(|u| {
            let mut b = [0u64; 4];
            for v in 0..size {
                if v != u && !conflict(((u ^ v) as u64).count_ones()) {
                    bits_set(&mut b, v);
                }
            }
            b
        })
        .collect();
    let mut mc = MaxClique { adj, best: 1 };
    let start = mc.adj[0];
    if !bits_is_empty(&start) {
        mc.expand(1, start);
    }
    mc.best as u64
}

fn code_oracle_guard(n: usize, guard: Guard) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    guard.check("code-size oracle length n", n as u64, MAX_CODE_LENGTH as u64)?;
    if n > MAX_CODE_LENGTH {
        return Err(Error::ExhaustiveLimit {
            what: "code-size oracle length n",
            size: n as u64,
            limit: MAX_CODE_LENGTH as u64,
        });
    }
    Ok(())
}

/// `A(n, d)`: largest binary code of length `n` and minimum distance `d`.
pub fn exact_a_small(n: usize, d: u32, guard: Guard) -> Result<u64> {
    code_oracle_guard(n, guard)?;
    Ok(max_independent(n, |dist| dist >= 1 && dist < d))
}

/// `Q(n, d)`: largest binary code of length `n` with no two words at
/// distance exactly `d`.
pub fn exact_q_small(n: usize, d: u32, guard: Guard) -> Result<u64> {
    code_oracle_guard(n, guard)?;
    Ok(max_independent(n, |dist| dist == d))
}

/// Calls `visit` with the rows of every `k`-dimensional subspace of `F_2^n`
/// (each exactly once, as a reduced echelon basis) until it returns true.
fn for_each_subspace(n: usize, k: usize, visit: &mut impl FnMut(&[u64]) -> bool) -> bool {
    fn pivots(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if acc.len() == k {
            return f(acc);
        }
        for p in start..=n - (k - acc.len()) {
            acc.push(p);
            if pivots(n, k, p + 1, acc, f) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::with_capacity(k);
    pivots(n, k, 0, &mut acc, &mut |piv: &[usize]| {
        let pivot_mask = piv.iter().fold(0u64, |m, &p| m | (1 << p));
        // free positions of each row: non-pivot columns after its pivot
        let free: Vec<Vec<usize>> = piv
            .iter()
            .map(|&p| (p + 1..n).filter(|c| pivot_mask >> c & 1 == 0).collect())
            .collect();
        let total: usize = free.iter().map(Vec::len).sum();
        let mut rows = vec![0u64; k];
        for assignment in 0u64..1 << total {
            let mut bit = 0;
            for (i, cols) in free.iter().enumerate() {
                rows[i] = 1 << piv[i];
                for &c in cols {
                    rows[i] |= (assignment >> bit & 1) << c;
                    bit += 1;
                }
            }
            if visit(&rows) {
                return true;
            }
        }
        false
    })
}

fn span_weights_avoid(rows: &[u64], bad: impl Fn(u32) -> bool) -> bool {
    let mut word = 0u64;
    for step in 1u64..1 << rows.len() {
        word ^= rows[step.trailing_zeros() as usize];
        if bad(word.count_ones()) {
            return false;
        }
    }
    true
}

fn subspace_guard(n: usize, guard: Guard) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("n must be positive"));
    }
    guard.check("subspace enumeration length n", n as u64, MAX_SUBSPACE_LENGTH as u64)?;
    if n > 10 {
        return Err(Error::ExhaustiveLimit {
            what: "subspace enumeration length n",
            size: n as u64,
            limit: 10,
        });
    }
    Ok(())
}

fn largest_subspace(n: usize, bad: impl Fn(u32) -> bool) -> Result<(usize, BinaryLinearCode)> {
    for k in (0..=n).rev() {
        let mut found = None;
        for_each_subspace(n, k, &mut |rows| {
            if span_weights_avoid(rows, &bad) {
                found = Some(rows.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(rows) = found {
            let code = BinaryLinearCode::from_generator(&BinaryMatrix::from_words(n, rows)?);
            return Ok((k, code));
        }
    }
    unreachable!("the zero subspace avoids every nonzero weight")
}

/// Whether some `k`-dimensional code of length `n` has no word of weight `d`.
pub fn forbidden_code_exists(n: usize, k: usize, d: u32, guard: Guard) -> Result<bool> {
    subspace_guard(n, guard)?;
    if k > n {
        return Ok(false);
    }
    Ok(for_each_subspace(n, k, &mut |rows| span_weights_avoid(rows, |w| w == d)))
}

/// `k(n, d-bar)` and a code achieving it, by exhausting all subspaces.
pub fn exact_k_forbidden_small(n: usize, d: u32, guard: Guard) -> Result<(usize, BinaryLinearCode)> {
    subspace_guard(n, guard)?;
    largest_subspace(n, |w| w == d)
}

/// `k(n, d)`: largest dimension with minimum distance at least `d`.
pub fn exact_k_small(n: usize, d: u32, guard: Guard) -> Result<(usize, BinaryLinearCode)> {
    subspace_guard(n, guard)?;
    largest_subspace(n, |w| w < d)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrayCheck {
    pub pairs: u64,
    /// Pairs where Lee distance and Hamming distance of Gray images differ.
    pub isometry_violations: u64,
    /// Pairs where `phi(x+y) != phi(x) + phi(y) + phi(2 alpha(x) alpha(y))`.
    pub identity_violations: u64,
}

fn gray_check_pair(n: usize, a: u64, b: u64, acc: &mut GrayCheck) {
    let x = Z4Vector::from_packed(n, a).expect("packed word fits");
    let y = Z4Vector::from_packed(n, b).expect("packed word fits");
    let lee = x.sub(&y).expect("same length").lee_weight();
    let ham = (gray_map(&x).bits() ^ gray_map(&y).bits()).count_ones();
    acc.pairs += 1;
    if lee != ham {
        acc.isometry_violations += 1;
    }
    let carry = alpha_map(&x).bits() & alpha_map(&y).bits();
    let twice = lift_binary(&BitVector::new(n, carry).expect("fits")).expect("fits").scale(2);
    let lhs = gray_map(&x.add(&y).expect("same length")).bits();
    if lhs != gray_map(&x).bits() ^ gray_map(&y).bits() ^ gray_map(&twice).bits() {
        acc.identity_violations += 1;
    }
}

/// Checks the Gray isometry and the carry identity on every pair of
/// vectors of length `1..=exhaustive_n`, then on `random_pairs` seeded
/// random pairs of random length up to 32.
pub fn gray_map_check(exhaustive_n: usize, random_pairs: u64, seed: u64) -> Result<GrayCheck> {
    if exhaustive_n > 5 {
        return Err(Error::ExhaustiveLimit {
            what: "exhaustive Gray check length",
            size: exhaustive_n as u64,
            limit: 5,
        });
    }
    let mut acc = GrayCheck::default();
    for n in 1..=exhaustive_n {
        for a in 0..1u64 << (2 * n) {
            for b in 0..1u64 << (2 * n) {
                gray_check_pair(n, a, b, &mut acc);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_pairs {
        let n = rng.gen_range(1..=z4::MAX_LENGTH);
        let mask = if n == 32 { u64::MAX } else { (1u64 << (2 * n)) - 1 };
        let (a, b) = (rng.gen::<u64>() & mask, rng.gen::<u64>() & mask);
        gray_check_pair(n, a, b, &mut acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        let g = Guard::Enforce;
        assert_eq!(exact_chi_small(3, 2, ColoringMode::AtMostD, g).unwrap(), 4);
        for n in 1..=5 {
            assert_eq!(exact_chi_small(n, 1, ColoringMode::AtMostD, g).unwrap(), 2, "n={n}");
        }
        assert_eq!(exact_chi_small(2, 2, ColoringMode::ExactD, g).unwrap(), 2);
        assert_eq!(exact_chi_small(2, 2, ColoringMode::AtMostD, g).unwrap(), 4);
        assert_eq!(exact_chi_small(3, 3, ColoringMode::AtMostD, g).unwrap(), 8);
        assert_eq!(exact_chi_small(4, 5, ColoringMode::ExactD, g).unwrap(), 1);
        assert!(exact_chi_small(7, 1, ColoringMode::AtMostD, g).is_err());
    }

    #[test]
    fn independence_examples() {
        let g = Guard::Enforce;
        assert_eq!(exact_a_small(3, 3, g).unwrap(), 2);
        assert_eq!(exact_a_small(7, 3, g).unwrap(), 16);
        assert_eq!(exact_a_small(5, 3, g).unwrap(), 4);
        assert_eq!(exact_a_small(4, 1, g).unwrap(), 16);
        assert_eq!(exact_q_small(2, 2, g).unwrap(), 2);
        assert_eq!(exact_q_small(3, 1, g).unwrap(), 4);
    }

    #[test]
    fn subspace_counts() {
        // number of k-subspaces of F_2^4: 1, 15, 35, 15, 1
        let counts: Vec<usize> = (0..=4)
            .map(|k| {
                let mut c = 0;
                for_each_subspace(4, k, &mut |_| {
                    c += 1;
                    false
                });
                c
            })
            .collect();
        assert_eq!(counts, vec![1, 15, 35, 15, 1]);
    }

    #[test]
    fn linear_dimension_examples() {
        let g = Guard::Enforce;
        assert_eq!(exact_k_small(7, 3, g).unwrap().0, 4);
        assert_eq!(exact_k_small(6, 4, g).unwrap().0, 2);
        let (k, code) = exact_k_forbidden_small(6, 2, g).unwrap();
        assert_eq!(k, 3);
        assert_eq!(code.dimension(), 3);
        assert!(!forbidden_code_exists(6, 4, 2, g).unwrap());
    }

    #[test]
    fn gray_check_small() {
        let c = gray_map_check(2, 1000, 7).unwrap();
        assert_eq!(c.pairs, 16 + 256 + 1000);
        assert_eq!((c.isometry_violations, c.identity_violations), (0, 0));
    }
}
