//! Random inputs: trees, circular and flat systems, weights, and distances.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circular::{maximum_circular_system, CircularOrdering};
use crate::distance::DistanceMatrix;
use crate::error::Result;
use crate::flatlab::AllowablePair;
use crate::ground::GroundSet;
use crate::rational::{int, ratio, Rational};
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

/// A rational `a/b` with `1 ≤ a ≤ 12`, `1 ≤ b ≤ 4`.
pub fn random_positive_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(1..=12), rng.gen_range(1..=4))
}

/// Random weights for every split; with `allow_zero`, about a quarter are 0.
pub fn random_weights<R: Rng + ?Sized>(system: &SplitSystem, rng: &mut R, allow_zero: bool) -> WeightedSplitSystem {
    let entries: Vec<(Split, Rational)> = system
        .iter()
        .map(|s| {
            let w = if allow_zero && rng.gen_bool(0.25) { int(0) } else { random_positive_rational(rng) };
            (s.clone(), w)
        })
        .collect();
    WeightedSplitSystem::new(system.ground().clone(), entries).expect("weights are non-negative")
}

/// The `2n − 3` edge splits of a uniformly grown random binary tree (`n ≥ 2`).
pub fn random_binary_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<SplitSystem> {
    let ground = GroundSet::alphabetic(n);
    if n < 3 {
        return SplitSystem::new(ground, Split::new(n, [0]).into_iter().collect::<Vec<_>>());
    }
    // Vertices 0..n are leaves; internal vertices follow. Edges as (a, b).
    let mut edges: Vec<(usize, usize)> = vec![(0, n), (1, n), (2, n)];
    let mut next = n + 1;
    for leaf in 3..n {
        let k = rng.gen_range(0..edges.len());
        let (a, b) = edges[k];
        let mid = next;
        next += 1;
        edges[k] = (a, mid);
        edges.push((mid, b));
        edges.push((mid, leaf));
    }
    let mut adjacency = vec![Vec::new(); next];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    let splits: Vec<Split> = edges
        .iter()
        .map(|&(a, b)| {
            // leaves reachable from b without crossing the edge
            let mut stack = vec![(b, a)];
            let mut side = Vec::new();
            while let Some((v, from)) = stack.pop() {
                if v < n {
                    side.push(v);
                }
                stack.extend(adjacency[v].iter().filter(|&&w| w != from).map(|&w| (w, v)));
            }
            Split::new(n, side).expect("edge split is proper")
        })
        .collect();
    SplitSystem::new(ground, splits)
}

pub fn random_circular_ordering<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CircularOrdering {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    CircularOrdering::new(seq).expect("shuffle is a permutation")
}

/// A maximum circular system on a random ordering with random non-negative weights.
pub fn random_circular_system<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(CircularOrdering, WeightedSplitSystem)> {
    let theta = random_circular_ordering(n, rng);
    let system = maximum_circular_system(&theta, GroundSet::alphabetic(n))?;
    Ok((theta, random_weights(&system, rng, true)))
}

/// A random allowable pair: a shuffled start, then adjacent swaps of pairs
/// still in their original order, chosen uniformly, until the order is reversed.
pub fn random_allowable_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<AllowablePair> {
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    let mut rank = vec![0; n];
    for (i, &e) in pi.iter().enumerate() {
        rank[e] = i;
    }
    let mut current = pi.clone();
    let mut kappa = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    loop {
        let open: Vec<usize> = (1..n).filter(|&k| rank[current[k - 1]] < rank[current[k]]).collect();
        let Some(&k) = open.choose(rng) else { break };
        current.swap(k - 1, k);
        kappa.push(k);
    }
    AllowablePair::new(GroundSet::alphabetic(n), pi, kappa)
}

/// A random distance with off-diagonal integer entries in `1..=max`; small
/// `max` produces many ties.
pub fn random_distance<R: Rng + ?Sized>(n: usize, max: i64, rng: &mut R) -> DistanceMatrix {
    DistanceMatrix::from_fn_unchecked(GroundSet::alphabetic(n), |_, _| int(rng.gen_range(1..=max)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::is_compatible;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..10 {
            let t = random_binary_tree(n, &mut rng).unwrap();
            assert_eq!(t.len(), 2 * n - 3);
            assert!(is_compatible(&t));
        }
    }

    #[test]
    fn allowable_pairs_have_all_swaps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..8 {
            let pair = random_allowable_pair(n, &mut rng).unwrap();
            assert_eq!(pair.kappa().len(), n * (n - 1) / 2);
        }
    }
}
