//! Order distances: the sets `X_uv`, `E_uv`, the midpath split system, and
//! the split-sum and Kendall engines.

use fixedbitset::FixedBitSet;
use indexmap::IndexMap;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::params::OrderParams;
use crate::rankings::{counts_from_keys, RankTable};
use crate::rational::{int, Rational};
use crate::split::Split;
use crate::system::WeightedSplitSystem;

/// The elements closer to `u`, closer to `v`, and equidistant from both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPartition {
    pub u: usize,
    pub v: usize,
    pub closer_to_u: Vec<usize>,
    pub closer_to_v: Vec<usize>,
    pub equidistant: Vec<usize>,
}

pub fn pair_partition(d: &DistanceMatrix, u: usize, v: usize) -> Result<PairPartition> {
    d.ground().check_index(u)?;
    d.ground().check_index(v)?;
    if u == v {
        return Err(Error::SameElement);
    }
    let mut part = PairPartition { u, v, closer_to_u: vec![], closer_to_v: vec![], equidistant: vec![] };
    for x in 0..d.n() {
        match d.get(u, x).cmp(d.get(v, x)) {
            std::cmp::Ordering::Less => part.closer_to_u.push(x),
            std::cmp::Ordering::Greater => part.closer_to_v.push(x),
            std::cmp::Ordering::Equal => part.equidistant.push(x),
        }
    }
    Ok(part)
}

/// The splits `X_uv | X − X_uv` counted over ordered pairs, and the splits
/// `E_uv | X − E_uv` counted over unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MidpathDecomposition {
    pub ground: GroundSet,
    pub x_splits: IndexMap<Split, u64>,
    pub e_splits: IndexMap<Split, u64>,
}

impl MidpathDecomposition {
    /// The midpath split system `S_D` in first-seen order.
    pub fn midpath_splits(&self) -> Vec<Split> {
        self.x_splits.keys().cloned().collect()
    }

    /// Number of distinct midpath splits.
    pub fn len(&self) -> usize {
        self.x_splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x_splits.is_empty()
    }

    /// `O = (p/2)·Σ count·D_S over x_splits + (q − p/2)·Σ count·D_S over e_splits`.
    pub fn order_distance(&self, params: &OrderParams) -> DistanceMatrix {
        let n = self.ground.len();
        let xs = pair_counts(n, &self.x_splits);
        let es = pair_counts(n, &self.e_splits);
        let pw = params.pair_weight();
        let tw = params.tie_weight();
        DistanceMatrix::from_fn_unchecked(self.ground.clone(), |i, j| {
            let k = i * n + j;
            &pw * Rational::from_integer(BigInt::from(xs[k])) + &tw * Rational::from_integer(BigInt::from(es[k]))
        })
    }
}

/// For every pair `(i, j)`, the total count of splits separating `i` and `j`.
fn pair_counts(n: usize, splits: &IndexMap<Split, u64>) -> Vec<u64> {
    let mut counts = vec![0u64; n * n];
    for (split, &c) in splits {
        let side = split.side();
        for i in 0..n {
            let si = side.contains(i);
            for j in i + 1..n {
                if si != side.contains(j) {
                    counts[i * n + j] += c;
                }
            }
        }
    }
    counts
}

pub fn midpath_split_system(d: &DistanceMatrix) -> MidpathDecomposition {
    let n = d.n();
    let ranks = RankTable::new(d);
    // Per `u`: the X-splits of (u, v) for every v, and the E-splits of {u, v} for v > u.
    let per_u: Vec<(Vec<Split>, Vec<Split>)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut xs = Vec::new();
            let mut es = Vec::new();
            for v in 0..n {
                if u == v {
                    continue;
                }
                let mut closer = FixedBitSet::with_capacity(n);
                let mut tied = FixedBitSet::with_capacity(n);
                for x in 0..n {
                    let r = ranks.row(x);
                    if r[u] < r[v] {
                        closer.insert(x);
                    } else if r[u] == r[v] {
                        tied.insert(x);
                    }
                }
                xs.extend(Split::from_bits(closer));
                if v > u {
                    es.extend(Split::from_bits(tied));
                }
            }
            (xs, es)
        })
        .collect();

    let mut x_splits = IndexMap::new();
    let mut e_splits = IndexMap::new();
    for (xs, es) in per_u {
        for s in xs {
            *x_splits.entry(s).or_insert(0) += 1;
        }
        for s in es {
            *e_splits.entry(s).or_insert(0) += 1;
        }
    }
    MidpathDecomposition { ground: d.ground().clone(), x_splits, e_splits }
}

/// The order distance computed from the split sums over `X_uv` and `E_uv`.
pub fn order_distance_eq1(d: &DistanceMatrix, params: &OrderParams) -> DistanceMatrix {
    midpath_split_system(d).order_distance(params)
}

/// The order distance as `p · K^{q/p}(R_x, R_y)`, one Kendall comparison per pair.
pub fn order_distance_kendall(d: &DistanceMatrix, params: &OrderParams) -> DistanceMatrix {
    let n = d.n();
    let ranks = RankTable::new(d);
    let counts: Vec<(u64, u64)> = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (x, y) = (k / n, k % n);
            if x >= y {
                return (0, 0);
            }
            let c = counts_from_keys(ranks.row(x), ranks.row(y));
            (c.discordant, c.tied_in_one)
        })
        .collect();
    DistanceMatrix::from_fn_unchecked(d.ground().clone(), |i, j| {
        let (disc, tied) = counts[i * n + j];
        params.p() * Rational::from_integer(disc.into()) + params.q() * Rational::from_integer(tied.into())
    })
}

/// Closed-form order distances, at `p = 2, q = 1`, between representatives of
/// the four blocks cut out by two incompatible splits of weight 2.
///
/// Returned in the pair order `(1,2), (1,3), (1,4), (2,3), (2,4), (3,4)`.
pub fn two_split_order_values(n1: u64, n2: u64, n3: u64, n4: u64) -> Result<[Rational; 6]> {
    if [n1, n2, n3, n4].contains(&0) {
        return Err(Error::InvalidParams("block sizes must be positive".into()));
    }
    let r = |v: u64| Rational::from_integer(BigInt::from(v));
    let v12 = n1 * n4 + 2 * (n1 * n2 + n3 * n4) + n2 * n3;
    let v13 = n1 * n4 + 2 * (n1 * n3 + n2 * n4) + n2 * n3;
    let v14 = 2 * (n1 * n4 + n1 * n2 + n3 * n4 + n1 * n3 + n2 * n4);
    let v23 = 2 * (n2 * n3 + n1 * n2 + n3 * n4 + n1 * n3 + n2 * n4);
    Ok([r(v12), r(v13), r(v14), r(v23), r(v13), r(v12)])
}

/// Two incompatible splits of weight 2 whose blocks have the given sizes.
#[derive(Clone, Debug)]
pub struct TwoSplitInstance {
    pub system: WeightedSplitSystem,
    /// Elements of `A1∩A2`, `B1∩A2`, `A1∩B2`, `B1∩B2`.
    pub blocks: [Vec<usize>; 4],
}

/// Lays the four blocks out consecutively with `S1 = A1|B1` and `S2 = A2|B2`,
/// where `A1` is blocks 1 and 3 and `A2` is blocks 1 and 2.
pub fn two_split_instance(n1: usize, n2: usize, n3: usize, n4: usize) -> Result<TwoSplitInstance> {
    if [n1, n2, n3, n4].contains(&0) {
        return Err(Error::InvalidParams("block sizes must be positive".into()));
    }
    let n = n1 + n2 + n3 + n4;
    let mut next = 0;
    let mut block = |size: usize| {
        let b: Vec<usize> = (next..next + size).collect();
        next += size;
        b
    };
    let blocks = [block(n1), block(n2), block(n3), block(n4)];
    let a1: Vec<usize> = blocks[0].iter().chain(&blocks[2]).copied().collect();
    let a2: Vec<usize> = blocks[0].iter().chain(&blocks[1]).copied().collect();
    let s1 = Split::new(n, a1)?;
    let s2 = Split::new(n, a2)?;
    let system = WeightedSplitSystem::new(GroundSet::alphabetic(n), [(s1, int(2)), (s2, int(2))])?;
    Ok(TwoSplitInstance { system, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::ratio;

    fn params(p: i64, q: i64) -> OrderParams {
        OrderParams::new(int(p), int(q)).unwrap()
    }

    #[test]
    fn partition_of_zero_matrix() {
        let d = DistanceMatrix::zero(GroundSet::alphabetic(4));
        let part = pair_partition(&d, 0, 1).unwrap();
        assert_eq!(part.equidistant, vec![0, 1, 2, 3]);
        assert!(part.closer_to_u.is_empty() && part.closer_to_v.is_empty());
        assert_eq!(pair_partition(&d, 2, 2), Err(Error::SameElement));
        let m = midpath_split_system(&d);
        assert!(m.x_splits.is_empty() && m.e_splits.is_empty());
        assert!(order_distance_eq1(&d, &params(2, 1)).is_zero());
        assert!(order_distance_kendall(&d, &params(2, 1)).is_zero());
    }

    #[test]
    fn six_point_table_midpath() {
        let d = fixtures::six_point_table();
        let g = d.ground().clone();
        let idx = |l: &str| g.index_of(l).unwrap();
        let part = pair_partition(&d, idx("x"), idx("y")).unwrap();
        let mut want = vec![idx("a"), idx("s"), idx("x")];
        want.sort();
        assert_eq!(part.closer_to_u, want);

        let m = midpath_split_system(&d);
        let s_xy = Split::new(6, ["b", "t", "y"].map(idx)).unwrap();
        let s_st = Split::new(6, ["b", "s", "x"].map(idx)).unwrap();
        assert!(m.x_splits.contains_key(&s_xy));
        assert!(m.x_splits.contains_key(&s_st));
        assert!(m.len() <= 30);
    }

    #[test]
    fn four_point_values() {
        let d = fixtures::nonmaximum_circular_four_point().generate_distance();
        let want = [(0, 1, 8), (0, 2, 8), (1, 2, 8), (0, 3, 4), (2, 3, 4), (1, 3, 10)];
        for o in [order_distance_eq1(&d, &params(2, 1)), order_distance_kendall(&d, &params(2, 1))] {
            for &(i, j, v) in &want {
                assert_eq!(o[(i, j)], int(v), "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn ultrametric_fixture_values() {
        let d = fixtures::ultrametric_five_point().generate_distance();
        for (p, q) in [(2, 1), (2, 2), (4, 3)] {
            let o = order_distance_eq1(&d, &params(p, q));
            let lin = |a: i64, b: i64| int(a * p + b * q);
            let (a, b, c, e) = (0, 1, 2, 4);
            assert_eq!(o[(a, b)], lin(4, 3));
            assert_eq!(o[(a, e)], lin(4, 3));
            assert_eq!(o[(a, c)], lin(4, 5));
            assert_eq!(o[(b, e)], lin(1, 4));
            assert_eq!(o[(c, e)], lin(2, 4));
            assert_eq!(o[(b, c)], lin(2, 4));
            assert_eq!(o, order_distance_kendall(&d, &params(p, q)));
        }
    }

    #[test]
    fn fractional_params() {
        let d = fixtures::ultrametric_five_point().generate_distance();
        let pq = OrderParams::new(ratio(3, 2), ratio(5, 4)).unwrap();
        assert_eq!(order_distance_eq1(&d, &pq), order_distance_kendall(&d, &pq));
    }

    #[test]
    fn two_split_values() {
        let v = two_split_order_values(1, 1, 1, 1).unwrap();
        assert_eq!(v, [6, 6, 10, 10, 6, 6].map(int));
        assert!(two_split_order_values(0, 1, 1, 1).is_err());

        let inst = two_split_instance(2, 1, 3, 2).unwrap();
        let o = order_distance_eq1(&inst.system.generate_distance(), &params(2, 1));
        let want = two_split_order_values(2, 1, 3, 2).unwrap();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            for &x in &inst.blocks[i] {
                for &y in &inst.blocks[j] {
                    assert_eq!(o[(x, y)], want[k]);
                }
            }
        }
        assert_eq!(o[(3, 5)], int(0));
    }
}
