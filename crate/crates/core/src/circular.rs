//! Circular orderings, the Kalmanson condition, circular split systems, and
//! the interval-based order distance engine.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rankings::RankTable;
use crate::rational::{int, is_negative, Rational};
use crate::scaled::{with_scaled, Exact, ScaledMatrix};
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

/// A cyclic arrangement of the ground set, stored up to rotation and reversal:
/// it starts at element 0 and its second entry is smaller than its last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircularOrdering {
    seq: Vec<usize>,
}

impl CircularOrdering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidOrdering("empty ordering".into()));
        }
        let mut seen = vec![false; n];
        for &e in &seq {
            if e >= n || std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidOrdering(format!("{seq:?} is not a permutation")));
            }
        }
        Ok(Self::canonical(seq))
    }

    fn canonical(mut seq: Vec<usize>) -> Self {
        let n = seq.len();
        let zero = seq.iter().position(|&e| e == 0).expect("permutation contains 0");
        seq.rotate_left(zero);
        if n >= 3 && seq[n - 1] < seq[1] {
            seq[1..].reverse();
        }
        Self { seq }
    }

    pub fn identity(n: usize) -> Self {
        Self { seq: (0..n).collect() }
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `positions()[e]` is the position of element `e`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &e) in self.seq.iter().enumerate() {
            pos[e] = i;
        }
        pos
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> String {
        self.seq.iter().map(|&e| ground.label(e)).collect::<Vec<_>>().join(",")
    }
}

/// The arc of positions `start..=end` of an ordering, with `1 ≤ start ≤ end < n`.
///
/// Every arc avoiding position 0 (element 0) is of this form, so the
/// intervals of an ordering are exactly its `C(n,2)` circular splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSplit {
    pub start: usize,
    pub end: usize,
}

impl IntervalSplit {
    pub fn new(start: usize, end: usize, n: usize) -> Result<Self> {
        if start == 0 || start > end || end >= n {
            return Err(Error::InvalidSplit(format!("interval {start}..={end} for n = {n}")));
        }
        Ok(Self { start, end })
    }

    pub fn to_split(&self, theta: &CircularOrdering) -> Split {
        Split::new(theta.len(), theta.seq[self.start..=self.end].iter().copied()).expect("interval is proper")
    }

    /// The interval whose elements form one side of `split`, if that side is an arc.
    pub fn from_split(split: &Split, theta: &CircularOrdering) -> Option<Self> {
        let seq = &theta.seq;
        let inside: Vec<usize> = (1..seq.len()).filter(|&i| split.contains(seq[i])).collect();
        let (&start, &end) = (inside.first()?, inside.last()?);
        (end - start + 1 == inside.len()).then_some(Self { start, end })
    }
}

/// All `C(n,2)` interval splits of `theta`.
pub fn maximum_circular_system(theta: &CircularOrdering, ground: GroundSet) -> Result<SplitSystem> {
    let n = theta.len();
    if ground.len() != n {
        return Err(Error::GroundMismatch);
    }
    let splits = (1..n).flat_map(|i| (i..n).map(move |j| IntervalSplit { start: i, end: j }));
    SplitSystem::new(ground, splits.map(|s| s.to_split(theta)).collect::<Vec<_>>())
}

/// True when one side of every split is a contiguous arc of `theta`.
pub fn fits_on_ordering(system: &SplitSystem, theta: &CircularOrdering) -> bool {
    system.n() == theta.len() && system.iter().all(|s| IntervalSplit::from_split(s, theta).is_some())
}

/// Four elements, in the order of `theta`, violating the Kalmanson inequalities.
///
/// Every Kalmanson difference on positions `i < j < k < l` is a sum of
/// [`gap_weight`]s over pairs of non-adjacent gaps, so only those are checked.
pub fn kalmanson_check(d: &DistanceMatrix, theta: &CircularOrdering) -> Option<[usize; 4]> {
    assert_eq!(d.n(), theta.len(), "ordering must cover the ground set");
    with_scaled!(d, m => first_kalmanson_violation(&m, &theta.seq))
}

fn first_kalmanson_violation<T: Exact>(m: &ScaledMatrix<T>, seq: &[usize]) -> Option<[usize; 4]> {
    let n = seq.len();
    if n < 4 {
        return None;
    }
    let flat: Vec<T> = (0..n * n).map(|k| m.get(k / n, k % n)).collect();
    for g in 0..n {
        for h in g + 2..n {
            if g == 0 && h == n - 1 {
                continue;
            }
            if gap_weight(&flat, n, seq, g, h) < T::zero() {
                let quad = if h == n - 1 { [seq[0], seq[g], seq[g + 1], seq[h]] } else { [seq[g], seq[g + 1], seq[h], seq[h + 1]] };
                return Some(quad);
            }
        }
    }
    None
}

/// Twice the weight of the arc between gaps `g` and `h` of a cyclic sequence,
/// where gap `g` sits between `seq[g]` and `seq[g+1]`.
fn gap_weight<T: Exact>(m: &[T], n: usize, seq: &[usize], g: usize, h: usize) -> T {
    let len = seq.len();
    let (a, b) = (seq[g], seq[(g + 1) % len]);
    let (c, e) = (seq[h], seq[(h + 1) % len]);
    let at = |x: usize, y: usize| m[x * n + y].clone();
    at(a, c) + at(b, e) - at(a, e) - at(b, c)
}

/// Looks for an ordering on which `d` satisfies the Kalmanson inequalities.
///
/// Elements are inserted one at a time into the gap of a growing cyclic
/// sequence, keeping every arc weight of the induced distance non-negative,
/// with backtracking. The result is always re-checked against the full inequalities.
pub fn recover_circular_ordering(d: &DistanceMatrix) -> Option<CircularOrdering> {
    with_scaled!(d, m => recover_scaled(&m))
}

fn recover_scaled<T: Exact>(m: &ScaledMatrix<T>) -> Option<CircularOrdering> {
    if m.n() <= 3 {
        return Some(CircularOrdering::identity(m.n()));
    }
    let theta = CircularOrdering::canonical(insertion_search(m)?);
    first_kalmanson_violation(m, &theta.seq).is_none().then_some(theta)
}

fn insertion_search<T: Exact>(m: &ScaledMatrix<T>) -> Option<Vec<usize>> {
    let n = m.n();
    // Adding a constant to every off-diagonal entry leaves the Kalmanson
    // inequalities unchanged and makes every triangle inequality hold, so the
    // single-element arcs never block an insertion.
    let shift = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).max()?;
    let mut shifted = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            shifted.push(if i == j { T::zero() } else { m.get(i, j) + shift.clone() });
        }
    }
    let mut seq = vec![0, 1, 2];
    extend(&shifted, n, &mut seq).then_some(seq)
}

fn extend<T: Exact>(m: &[T], n: usize, seq: &mut Vec<usize>) -> bool {
    let e = seq.len();
    if e == n {
        return true;
    }
    for g in 0..seq.len() {
        seq.insert(g + 1, e);
        if arcs_through_new_gaps_ok(m, n, seq, g) && extend(m, n, seq) {
            return true;
        }
        seq.remove(g + 1);
    }
    false
}

/// Checks the arc weights involving the two gaps next to `seq[g+1]`.
fn arcs_through_new_gaps_ok<T: Exact>(m: &[T], n: usize, seq: &[usize], g: usize) -> bool {
    let len = seq.len();
    let new_gaps = [g, (g + 1) % len];
    new_gaps.iter().all(|&a| (0..len).all(|h| h == a || gap_weight(m, n, seq, a, h) >= T::zero()))
}

/// Interval weights read off `d` along `theta`; all non-negative exactly when
/// `d` is generated by a weighted circular split system fitting `theta`.
pub fn circular_split_weights(d: &DistanceMatrix, theta: &CircularOrdering) -> BTreeMap<IntervalSplit, Rational> {
    let n = d.n();
    let seq = &theta.seq;
    let at = |x: usize, y: usize| d.get(seq[x % n], seq[y % n]);
    let mut weights = BTreeMap::new();
    for i in 1..n {
        for j in i..n {
            // arc seq[i..=j] lies between gaps i-1 and j
            let w = at(i - 1, j) + at(i, j + 1) - at(i - 1, j + 1) - at(i, j);
            weights.insert(IntervalSplit { start: i, end: j }, w / int(2));
        }
    }
    weights
}

/// A weighted circular split system generating `d`, with its ordering, or
/// `None` when `d` is not circular.
pub fn decompose_circular(d: &DistanceMatrix) -> Option<(CircularOrdering, WeightedSplitSystem)> {
    let theta = recover_circular_ordering(d)?;
    let weights = circular_split_weights(d, &theta);
    if weights.values().any(is_negative) {
        return None;
    }
    let entries: Vec<(Split, Rational)> =
        weights.into_iter().filter(|(_, w)| !w.is_zero()).map(|(s, w)| (s.to_split(&theta), w)).collect();
    let ws = WeightedSplitSystem::new(d.ground().clone(), entries).ok()?;
    Some((theta, ws))
}

/// An ordering on which `system` fits, if any.
pub fn is_circular_split_system(system: &SplitSystem) -> Option<CircularOrdering> {
    let d = system.with_unit_weights().generate_distance();
    let theta = recover_circular_ordering(&d)?;
    fits_on_ordering(system, &theta).then_some(theta)
}

/// Sums weights of intervals separating each pair of positions with 2D prefix sums.
fn interval_sums<T>(n: usize, grid: &[T]) -> Vec<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T>,
{
    // prefix[i][j] = Σ grid[i'][j'] over i' ≤ i, j' ≤ j (indices 0..n, row/column 0 empty)
    let mut prefix = vec![T::zero(); n * n];
    for i in 1..n {
        for j in 1..n {
            prefix[i * n + j] = grid[i * n + j].clone() + prefix[(i - 1) * n + j].clone()
                + prefix[i * n + j - 1].clone()
                - prefix[(i - 1) * n + j - 1].clone();
        }
    }
    let rect = |i1: usize, i2: usize, j1: usize, j2: usize| -> T {
        if i1 > i2 || j1 > j2 {
            return T::zero();
        }
        let p = |i: usize, j: usize| prefix[i * n + j].clone();
        (p(i2, j2) + p(i1 - 1, j1 - 1)) - (p(i1 - 1, j2) + p(i2, j1 - 1))
    };
    let mut out = vec![T::zero(); n * n];
    for a in 0..n {
        for b in a + 1..n {
            // intervals holding a but not b, then b but not a
            let left = if a == 0 { T::zero() } else { rect(1, a, a, b - 1) };
            let right = rect(a + 1, b, b, n - 1);
            let v = left + right;
            out[a * n + b] = v.clone();
            out[b * n + a] = v;
        }
    }
    out
}

/// The distance generated by weighted intervals of `theta`, in `O(n²)` after the weights.
pub fn evaluate_circular_distance(
    ground: GroundSet,
    theta: &CircularOrdering,
    weights: &BTreeMap<IntervalSplit, Rational>,
) -> Result<DistanceMatrix> {
    let n = theta.len();
    if ground.len() != n {
        return Err(Error::GroundMismatch);
    }
    let mut grid = vec![Rational::zero(); n * n];
    for (s, w) in weights {
        IntervalSplit::new(s.start, s.end, n)?;
        if is_negative(w) {
            return Err(Error::NegativeWeight(w.to_string()));
        }
        grid[s.start * n + s.end] += w;
    }
    let by_pos = interval_sums(n, &grid);
    let pos = theta.positions();
    DistanceMatrix::from_fn(ground, |x, y| by_pos[pos[x] * n + pos[y]].clone())
}

/// Where the arc `X_uv` (containing `u`, avoiding `v`) ends, searched outward
/// from `u` along `theta` with the flip points confirmed.
fn locate_arc(ranks: &RankTable, seq: &[usize], pu: usize, pv: usize) -> Option<(usize, usize)> {
    let n = seq.len();
    let (u, v) = (seq[pu], seq[pv]);
    let inside = |e: usize| ranks.lt(e, u, v);
    let k = (pv + n - pu) % n;
    // Clockwise offsets 1..k and counterclockwise offsets 1..n-k, both stopping before v.
    let cw = |t: usize| inside(seq[(pu + t) % n]);
    let ccw = |t: usize| inside(seq[(pu + n - t) % n]);
    let right = last_true_prefix(cw, k - 1)?;
    let left = last_true_prefix(ccw, n - k - 1)?;
    Some((left, right))
}

/// Largest `r ≤ limit` with `pred(1..=r)` all true, assuming the predicate
/// flips at most once; `None` if the flip point does not check out.
fn last_true_prefix(pred: impl Fn(usize) -> bool, limit: usize) -> Option<usize> {
    let (mut lo, mut hi) = (0, limit);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let confirmed = (lo == 0 || pred(lo)) && (lo == limit || !pred(lo + 1));
    confirmed.then_some(lo)
}

/// The order distance at `q = p/2` via interval counting along a recovered ordering.
pub fn order_distance_circular(d: &DistanceMatrix, p: &Rational) -> Result<DistanceMatrix> {
    if *p <= Rational::zero() {
        return Err(Error::InvalidParams("p must be positive".into()));
    }
    with_scaled!(d, m => {
        let theta = recover_scaled(&m).ok_or(Error::NotCircular)?;
        Ok(order_distance_on_ordering(d, &RankTable::from_scaled(&m), &theta, p))
    })
}

/// Splits counted by their canonical interval, plus any that are not arcs.
struct ArcCounts {
    intervals: Vec<(usize, usize)>,
    others: Vec<Split>,
}

fn order_distance_on_ordering(d: &DistanceMatrix, ranks: &RankTable, theta: &CircularOrdering, p: &Rational) -> DistanceMatrix {
    let n = d.n();
    let seq = &theta.seq;
    let per_u: Vec<ArcCounts> = (0..n)
        .into_par_iter()
        .map(|pu| {
            let mut counts = ArcCounts { intervals: Vec::new(), others: Vec::new() };
            for pv in (0..n).filter(|&pv| pv != pu) {
                let (u, v) = (seq[pu], seq[pv]);
                let located = if d.get(u, v).is_zero() { None } else { locate_arc(ranks, seq, pu, pv) };
                match located {
                    Some((left, right)) => counts.intervals.push(canonical_interval(n, pu, left, right)),
                    None => {
                        let mut bits = FixedBitSet::with_capacity(n);
                        bits.extend((0..n).filter(|&x| ranks.lt(x, u, v)));
                        if let Some(s) = Split::from_bits(bits) {
                            match IntervalSplit::from_split(&s, theta) {
                                Some(iv) => counts.intervals.push((iv.start, iv.end)),
                                None => counts.others.push(s),
                            }
                        }
                    }
                }
            }
            counts
        })
        .collect();

    let mut grid = vec![0u64; n * n];
    let mut others: Vec<Split> = Vec::new();
    for c in per_u {
        for (i, j) in c.intervals {
            grid[i * n + j] += 1;
        }
        others.extend(c.others);
    }
    let by_pos = interval_sums(n, &grid);
    let pos = theta.positions();
    let half = p / int(2);
    DistanceMatrix::from_fn_unchecked(d.ground().clone(), |x, y| {
        let extra = others.iter().filter(|s| s.separates(x, y)).count() as u64;
        let count = by_pos[pos[x] * n + pos[y]] + extra;
        &half * Rational::from_integer(BigInt::from(count))
    })
}

/// The arc of positions `pu-left ..= pu+right` (cyclic), or its complement,
/// expressed as an interval avoiding position 0.
fn canonical_interval(n: usize, pu: usize, left: usize, right: usize) -> (usize, usize) {
    let first = (pu + n - left) % n;
    let len = left + right + 1;
    if first + len <= n && first > 0 {
        (first, first + len - 1)
    } else {
        // the arc wraps through position 0; take the complement
        let cfirst = (first + len) % n;
        (cfirst, cfirst + (n - len) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::order::order_distance_eq1;
    use crate::params::OrderParams;

    fn ordering(seq: &[usize]) -> CircularOrdering {
        CircularOrdering::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(ordering(&[2, 3, 0, 1]), ordering(&[0, 1, 2, 3]));
        assert_eq!(ordering(&[0, 3, 2, 1]), ordering(&[0, 1, 2, 3]));
        assert_eq!(ordering(&[1, 0, 3, 2]).sequence(), &[0, 1, 2, 3]);
        assert!(CircularOrdering::new(vec![0, 0, 1]).is_err());
        assert!(CircularOrdering::new(vec![]).is_err());
    }

    #[test]
    fn four_point_fixture() {
        let ws = fixtures::nonmaximum_circular_four_point();
        let d = ws.generate_distance();
        let abcd = ordering(&[0, 1, 2, 3]);
        let acbd = ordering(&[0, 2, 1, 3]);
        let adbc = ordering(&[0, 3, 1, 2]);
        assert_eq!(kalmanson_check(&d, &abcd), None);
        assert!(kalmanson_check(&d, &acbd).is_some());
        assert!(kalmanson_check(&d, &adbc).is_some());
        assert!(fits_on_ordering(&ws.splits(), &abcd));
        assert_eq!(recover_circular_ordering(&d), Some(abcd.clone()));
        assert_eq!(is_circular_split_system(&ws.splits()), Some(abcd));

        let o = order_distance_circular(&d, &int(2)).unwrap();
        assert_eq!(o, order_distance_eq1(&d, &OrderParams::half(int(2)).unwrap()));
        assert_eq!(o[(1, 3)], int(10));
    }

    #[test]
    fn non_arc_split_does_not_fit() {
        let g = GroundSet::alphabetic(4);
        let system = SplitSystem::new(g.clone(), [Split::new(4, [0, 2]).unwrap()]).unwrap();
        assert!(!fits_on_ordering(&system, &CircularOrdering::identity(4)));
        let trivial = SplitSystem::new(g, (0..4).map(|x| Split::new(4, [x]).unwrap())).unwrap();
        assert!(fits_on_ordering(&trivial, &ordering(&[0, 2, 1, 3])));
    }

    #[test]
    fn zero_matrix() {
        let d = DistanceMatrix::zero(GroundSet::alphabetic(5));
        let theta = recover_circular_ordering(&d).unwrap();
        assert_eq!(kalmanson_check(&d, &theta), None);
        assert!(order_distance_circular(&d, &int(2)).unwrap().is_zero());
    }

    #[test]
    fn interval_round_trip() {
        let theta = ordering(&[0, 3, 1, 4, 2]);
        let g = GroundSet::alphabetic(5);
        let max = maximum_circular_system(&theta, g.clone()).unwrap();
        assert_eq!(max.len(), 10);
        assert!(fits_on_ordering(&max, &theta));
        assert_eq!(is_circular_split_system(&max), Some(theta.clone()));

        let mut weights = BTreeMap::new();
        let mut entries = Vec::new();
        for (k, s) in (1..5).flat_map(|i| (i..5).map(move |j| IntervalSplit { start: i, end: j })).enumerate() {
            let w = Rational::new(BigInt::from(k as i64 % 4), BigInt::from(3));
            entries.push((s.to_split(&theta), w.clone()));
            weights.insert(s, w);
        }
        let want = WeightedSplitSystem::new(g.clone(), entries).unwrap().generate_distance();
        assert_eq!(evaluate_circular_distance(g, &theta, &weights).unwrap(), want);
        let read = circular_split_weights(&want, &theta);
        assert_eq!(read, weights);
    }

    #[test]
    fn non_kalmanson_distance_is_rejected() {
        // bc|ade, bd|ace, be|acd: every ordering violates the inequalities
        let g = GroundSet::alphabetic(5);
        let splits = [[1, 2], [1, 3], [1, 4]];
        let ws = WeightedSplitSystem::new(g, splits.map(|s| (Split::new(5, s).unwrap(), int(1)))).unwrap();
        let d = ws.generate_distance();
        assert_eq!(recover_circular_ordering(&d), None);
        assert_eq!(order_distance_circular(&d, &int(2)), Err(Error::NotCircular));
        assert_eq!(is_circular_split_system(&ws.splits()), None);
    }

    #[test]
    fn canonical_intervals() {
        // n = 6, arc from position 4 wrapping to position 1 -> complement 2..=3
        assert_eq!(canonical_interval(6, 5, 1, 2), (2, 3));
        assert_eq!(canonical_interval(6, 2, 1, 1), (1, 3));
        assert_eq!(canonical_interval(6, 0, 0, 2), (3, 5));
    }
}
