//! Partial rankings induced by rows of a distance matrix, and the Kendall
//! distance with penalty parameter between them.

use num_traits::Zero;
use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rational::{is_negative, Rational};
use crate::scaled::{with_scaled, Exact, ScaledMatrix};

/// An ordered list of blocks of tied elements that partitions the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRanking {
    ground: GroundSet,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<u32>,
}

impl PartialRanking {
    pub fn new(ground: GroundSet, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = ground.len();
        let mut block_of = vec![u32::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidOrdering("empty block".into()));
            }
            for &e in block {
                ground.check_index(e)?;
                if block_of[e] != u32::MAX {
                    return Err(Error::InvalidOrdering(format!("element {e} appears twice")));
                }
                block_of[e] = b as u32;
            }
        }
        if block_of.contains(&u32::MAX) {
            return Err(Error::InvalidOrdering("blocks do not cover the ground set".into()));
        }
        Ok(Self { ground, blocks, block_of })
    }

    /// Builds the ranking from one sort key per element; equal keys tie.
    pub fn from_keys<K: Ord>(ground: GroundSet, keys: &[K]) -> Result<Self> {
        if keys.len() != ground.len() {
            return Err(Error::GroundMismatch);
        }
        let ranks = dense_ranks(keys);
        let count = ranks.iter().max().map_or(0, |&m| m as usize + 1);
        let mut blocks = vec![Vec::new(); count];
        for (e, &r) in ranks.iter().enumerate() {
            blocks[r as usize].push(e);
        }
        Ok(Self { ground, blocks, block_of: ranks })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block holding `e`.
    pub fn block_of(&self, e: usize) -> usize {
        self.block_of[e] as usize
    }

    /// The reverse ranking: block order flipped.
    pub fn reversed(&self) -> Self {
        let blocks: Vec<Vec<usize>> = self.blocks.iter().rev().cloned().collect();
        Self::new(self.ground.clone(), blocks).expect("reversal keeps a partition")
    }
}

/// Dense ranks: equal keys share a rank, ranks are `0..distinct`.
pub(crate) fn dense_ranks<K: Ord>(keys: &[K]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut ranks = vec![0u32; keys.len()];
    let mut rank = 0u32;
    for w in 0..order.len() {
        if w > 0 && keys[order[w]] != keys[order[w - 1]] {
            rank += 1;
        }
        ranks[order[w]] = rank;
    }
    ranks
}

/// Row-wise dense ranks of a distance matrix: `rank(x, z) < rank(x, w)` iff `D(x,z) < D(x,w)`.
pub(crate) struct RankTable {
    n: usize,
    ranks: Vec<u32>,
}

impl RankTable {
    pub(crate) fn new(d: &DistanceMatrix) -> Self {
        with_scaled!(d, m => Self::from_scaled(&m))
    }

    pub(crate) fn from_scaled<T: Exact>(m: &ScaledMatrix<T>) -> Self {
        let n = m.n();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|x| dense_ranks(m.row(x))).collect();
        Self { n, ranks: rows.concat() }
    }

    #[inline]
    pub(crate) fn row(&self, x: usize) -> &[u32] {
        &self.ranks[x * self.n..(x + 1) * self.n]
    }

    /// `D(x, i) < D(x, j)`.
    #[inline]
    pub(crate) fn lt(&self, x: usize, i: usize, j: usize) -> bool {
        let r = self.row(x);
        r[i] < r[j]
    }

    /// `D(x, i) ≤ D(x, j)`.
    #[inline]
    pub(crate) fn le(&self, x: usize, i: usize, j: usize) -> bool {
        let r = self.row(x);
        r[i] <= r[j]
    }
}

/// `R_x`: the elements grouped by equal distance from `x`, closest first.
pub fn ranking_from_distance(d: &DistanceMatrix, x: usize) -> Result<PartialRanking> {
    d.ground().check_index(x)?;
    PartialRanking::from_keys(d.ground().clone(), d.row(x))
}

/// Pair counts behind the penalized Kendall distance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct KendallCounts {
    /// Pairs ordered strictly oppositely by the two rankings.
    pub discordant: u64,
    /// Pairs tied in exactly one of the two rankings.
    pub tied_in_one: u64,
}

impl KendallCounts {
    /// `discordant + π · tied_in_one`.
    pub fn penalized(&self, penalty: &Rational) -> Rational {
        Rational::from_integer(self.discordant.into()) + penalty * Rational::from_integer(self.tied_in_one.into())
    }
}

fn check_pair(r1: &PartialRanking, r2: &PartialRanking) -> Result<()> {
    if r1.ground != r2.ground {
        return Err(Error::GroundMismatch);
    }
    Ok(())
}

/// `O(n²)` pair enumeration.
pub fn kendall_counts_brute(r1: &PartialRanking, r2: &PartialRanking) -> Result<KendallCounts> {
    check_pair(r1, r2)?;
    let n = r1.ground.len();
    let mut counts = KendallCounts::default();
    for u in 0..n {
        for v in u + 1..n {
            let a = r1.block_of[u].cmp(&r1.block_of[v]);
            let b = r2.block_of[u].cmp(&r2.block_of[v]);
            use std::cmp::Ordering::*;
            match (a, b) {
                (Less, Greater) | (Greater, Less) => counts.discordant += 1,
                (Equal, Equal) => {}
                (Equal, _) | (_, Equal) => counts.tied_in_one += 1,
                _ => {}
            }
        }
    }
    Ok(counts)
}

/// `O(n log n)`: tie counts from block sizes plus merge-sort inversion counting.
pub fn kendall_counts(r1: &PartialRanking, r2: &PartialRanking) -> Result<KendallCounts> {
    check_pair(r1, r2)?;
    Ok(counts_from_keys(&r1.block_of, &r2.block_of))
}

pub fn kendall_penalized(r1: &PartialRanking, r2: &PartialRanking, penalty: &Rational) -> Result<Rational> {
    check_penalty(penalty)?;
    Ok(kendall_counts(r1, r2)?.penalized(penalty))
}

pub fn kendall_penalized_brute(r1: &PartialRanking, r2: &PartialRanking, penalty: &Rational) -> Result<Rational> {
    check_penalty(penalty)?;
    Ok(kendall_counts_brute(r1, r2)?.penalized(penalty))
}

fn check_penalty(penalty: &Rational) -> Result<()> {
    if is_negative(penalty) {
        return Err(Error::InvalidParams("penalty must be non-negative".into()));
    }
    Ok(())
}

fn pairs(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

/// Counts for two key vectors over the same items; smaller key = ranked earlier.
pub(crate) fn counts_from_keys(a: &[u32], b: &[u32]) -> KendallCounts {
    let n = a.len();
    if n < 2 {
        return KendallCounts::default();
    }
    let mut items: Vec<(u32, u32)> = a.iter().copied().zip(b.iter().copied()).collect();
    items.sort_unstable();

    let mut tied_a = 0;
    let mut tied_both = 0;
    let mut run_a = 1u64;
    let mut run_both = 1u64;
    for w in 1..n {
        if items[w].0 == items[w - 1].0 {
            run_a += 1;
            if items[w].1 == items[w - 1].1 {
                run_both += 1;
            } else {
                tied_both += pairs(run_both);
                run_both = 1;
            }
        } else {
            tied_a += pairs(run_a);
            tied_both += pairs(run_both);
            run_a = 1;
            run_both = 1;
        }
    }
    tied_a += pairs(run_a);
    tied_both += pairs(run_both);

    let mut second: Vec<u32> = items.iter().map(|&(_, k)| k).collect();
    let discordant = count_strict_inversions(&mut second);
    // `second` is now sorted, so the ties of `b` are runs of equal keys.
    let mut tied_b = 0;
    let mut run = 1u64;
    for w in 1..n {
        if second[w] == second[w - 1] {
            run += 1;
        } else {
            tied_b += pairs(run);
            run = 1;
        }
    }
    tied_b += pairs(run);

    KendallCounts { discordant, tied_in_one: tied_a + tied_b - 2 * tied_both }
}

/// Number of pairs `i < j` with `v[i] > v[j]`; sorts `v` as a side effect.
fn count_strict_inversions(v: &mut [u32]) -> u64 {
    let mut buf = v.to_vec();
    sort_count(v, &mut buf)
}

fn sort_count(v: &mut [u32], buf: &mut [u32]) -> u64 {
    let n = v.len();
    if n <= 1 {
        return 0;
    }
    let mid = n / 2;
    let mut count = sort_count(&mut v[..mid], &mut buf[..mid]) + sort_count(&mut v[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[i] <= v[j] {
            buf[k] = v[i];
            i += 1;
        } else {
            buf[k] = v[j];
            // every remaining left element is strictly larger
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    count
}

impl Zero for KendallCounts {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.discordant == 0 && self.tied_in_one == 0
    }
}

impl std::ops::Add for KendallCounts {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self { discordant: self.discordant + rhs.discordant, tied_in_one: self.tied_in_one + rhs.tied_in_one }
    }
}
