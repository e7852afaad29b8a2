//! Brute-force oracles shared by the integration tests. None of these call
//! the fast paths they are compared against.

#![allow(dead_code)]

use std::collections::HashSet;

use num_traits::Zero;
use ordist::circular::CircularOrdering;
use ordist::rational::{int, Rational};
use ordist::{DistanceMatrix, GroundSet, OrderParams, Split, SplitSystem};
use rand::Rng;

/// Every permutation of `items`.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Distinct circular orderings of `0..n`, one per rotation/reversal class.
pub fn circular_orderings(n: usize) -> Vec<Vec<usize>> {
    if n <= 3 {
        return vec![(0..n).collect()];
    }
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest)
        .into_iter()
        .filter(|p| p[0] < p[p.len() - 1])
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

/// Literal inequality check over all position quadruples, on rationals.
pub fn is_kalmanson_on(d: &DistanceMatrix, seq: &[usize]) -> bool {
    let n = seq.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let (a, b, c, e) = (seq[i], seq[j], seq[k], seq[l]);
                    let cross = d.get(a, c) + d.get(b, e);
                    if d.get(a, b) + d.get(c, e) > cross || d.get(a, e) + d.get(b, c) > cross {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn kalmanson_orderings(d: &DistanceMatrix) -> Vec<Vec<usize>> {
    circular_orderings(d.n()).into_iter().filter(|s| is_kalmanson_on(d, s)).collect()
}

/// Whether every split of `system` is an arc of `seq`, checked by counting
/// side changes around the circle.
pub fn fits_by_boundaries(system: &SplitSystem, seq: &[usize]) -> bool {
    let n = seq.len();
    system.iter().all(|s| (0..n).filter(|&i| s.contains(seq[i]) != s.contains(seq[(i + 1) % n])).count() == 2)
}

/// The order distance summed pair by pair straight from the set definitions.
pub fn literal_order_distance(d: &DistanceMatrix, params: &OrderParams) -> DistanceMatrix {
    let n = d.n();
    let pw = params.pair_weight();
    let tw = params.tie_weight();
    let mut acc = vec![Rational::zero(); n * n];
    let add = |acc: &mut Vec<Rational>, side: &[usize], w: &Rational| {
        if side.is_empty() || side.len() == n {
            return;
        }
        for x in 0..n {
            for y in 0..n {
                if side.contains(&x) != side.contains(&y) {
                    acc[x * n + y] += w;
                }
            }
        }
    };
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let closer: Vec<usize> = (0..n).filter(|&x| d.get(u, x) < d.get(v, x)).collect();
            add(&mut acc, &closer, &pw);
            if u < v {
                let tied: Vec<usize> = (0..n).filter(|&x| d.get(u, x) == d.get(v, x)).collect();
                add(&mut acc, &tied, &tw);
            }
        }
    }
    DistanceMatrix::from_fn(d.ground().clone(), |i, j| acc[i * n + j].clone()).unwrap()
}

/// Kendall distance with penalty, from explicit per-element block indices.
pub fn brute_kendall(r1: &[usize], r2: &[usize], penalty: &Rational) -> Rational {
    let n = r1.len();
    let mut total = Rational::zero();
    for u in 0..n {
        for v in u + 1..n {
            let a = r1[u].cmp(&r1[v]);
            let b = r2[u].cmp(&r2[v]);
            use std::cmp::Ordering::Equal;
            if a != Equal && b != Equal && a != b {
                total += int(1);
            } else if (a == Equal) != (b == Equal) {
                total += penalty;
            }
        }
    }
    total
}

/// All `2^(n−1) − 1` splits of `0..n`.
pub fn all_splits(n: usize) -> Vec<Split> {
    (1..1usize << (n - 1)).map(|mask| Split::new(n, (1..n).filter(|&b| mask >> (b - 1) & 1 == 1)).unwrap()).collect()
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(system: &SplitSystem) -> usize {
    let n = system.n();
    let mut rows: Vec<Vec<Rational>> = system
        .iter()
        .map(|s| {
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| int(s.separates(i, j) as i64)).collect()
        })
        .collect();
    let cols = n * (n - 1) / 2;
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Greedily adds random splits while they stay independent, up to `C(n,2)`.
pub fn random_maximum_independent<R: Rng>(n: usize, rng: &mut R) -> SplitSystem {
    use rand::seq::SliceRandom;
    let mut pool = all_splits(n);
    pool.shuffle(rng);
    let mut system = SplitSystem::empty(GroundSet::alphabetic(n));
    for s in pool {
        let mut trial = system.clone();
        trial.insert(s).unwrap();
        if rational_rank(&trial) == trial.len() {
            system = trial;
        }
        if system.len() == n * (n - 1) / 2 {
            break;
        }
    }
    system
}

/// 4-subset restriction criterion computed directly from the sides.
pub fn restrictions_all_six(system: &SplitSystem) -> bool {
    let n = system.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let ys = [a, b, c, d];
                    let distinct: HashSet<Vec<bool>> = system
                        .iter()
                        .map(|s| {
                            let mut bits: Vec<bool> = ys.iter().map(|&y| s.contains(y)).collect();
                            if bits[0] {
                                bits.iter_mut().for_each(|x| *x = !*x);
                            }
                            bits
                        })
                        .filter(|bits| bits.iter().any(|&x| x))
                        .collect();
                    if distinct.len() != 6 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn ordering_eq(theta: &CircularOrdering, seq: &[usize]) -> bool {
    CircularOrdering::new(seq.to_vec()).unwrap() == *theta
}
