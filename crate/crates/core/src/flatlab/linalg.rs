use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::split::Split;
use crate::system::SplitSystem;

/// Rows are split metrics over the pairs `(i, j)`, `i < j`, in lexicographic order.
fn metric_rows(system: &SplitSystem) -> Vec<Vec<BigInt>> {
    let n = system.n();
    system
        .iter()
        .map(|s| {
            let mut row = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    row.push(if s.separates(i, j) { BigInt::one() } else { BigInt::zero() });
                }
            }
            row
        })
        .collect()
}

/// Fraction-free elimination; returns the pivot columns in row-echelon order.
fn bareiss_pivots(mut m: Vec<Vec<BigInt>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the split metrics of `system` as vectors indexed by element pairs.
pub fn split_rank(system: &SplitSystem) -> usize {
    if system.is_empty() {
        return 0;
    }
    bareiss_pivots(metric_rows(system)).len()
}

pub fn is_linearly_independent(system: &SplitSystem) -> bool {
    split_rank(system) == system.len()
}

/// A linearly independent split system prepared for repeated exact solves.
#[derive(Clone, Debug)]
pub struct SplitBasis {
    system: SplitSystem,
    /// Pair indices whose rows of the metric matrix form an invertible square block.
    pivot_pairs: Vec<usize>,
    /// Inverse of that block: weights = inverse · target on the pivot pairs.
    inverse: Vec<Vec<Rational>>,
}

impl SplitBasis {
    pub fn new(system: &SplitSystem) -> Result<Self> {
        if system.is_empty() {
            return Err(Error::EmptySystem);
        }
        let rows = metric_rows(system);
        let pivot_pairs = bareiss_pivots(rows.clone());
        let k = system.len();
        if pivot_pairs.len() < k {
            return Err(Error::Dependent);
        }
        // block[p][s] = D_s(pair p)
        let block: Vec<Vec<Rational>> = pivot_pairs
            .iter()
            .map(|&p| rows.iter().map(|row| Rational::from_integer(row[p].clone())).collect())
            .collect();
        let inverse = invert(block).expect("pivot block is invertible");
        Ok(Self { system: system.clone(), pivot_pairs, inverse })
    }

    pub fn system(&self) -> &SplitSystem {
        &self.system
    }

    /// The unique weights with `Σ w(S)·D_S = target`, or `None` when `target`
    /// is outside the span. Weights may be negative.
    pub fn express(&self, target: &DistanceMatrix) -> Result<Option<IndexMap<Split, Rational>>> {
        let n = self.system.n();
        if target.n() != n {
            return Err(Error::GroundMismatch);
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let rhs: Vec<&Rational> = self.pivot_pairs.iter().map(|&p| target.get(pairs[p].0, pairs[p].1)).collect();
        let weights: Vec<Rational> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).fold(Rational::zero(), |acc, (a, b)| acc + a * *b))
            .collect();
        let splits: Vec<&Split> = self.system.iter().collect();
        for &(i, j) in &pairs {
            let sum = splits
                .iter()
                .zip(&weights)
                .filter(|(s, _)| s.separates(i, j))
                .fold(Rational::zero(), |acc, (_, w)| acc + w);
            if &sum != target.get(i, j) {
                return Ok(None);
            }
        }
        Ok(Some(splits.into_iter().cloned().zip(weights).collect()))
    }
}

/// Gauss-Jordan inverse of a square rational matrix.
fn invert(mut a: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let k = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let pivot = a[c][c].clone();
        for j in 0..k {
            a[c][j] /= &pivot;
            inv[c][j] /= &pivot;
        }
        for i in 0..k {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..k {
                let (ac, ic) = (a[c][j].clone(), inv[c][j].clone());
                a[i][j] -= &f * ac;
                inv[i][j] -= &f * ic;
            }
        }
    }
    Some(inv)
}

/// Weights over an independent `system` generating `target`, if it lies in the span.
pub fn express_in_basis(target: &DistanceMatrix, system: &SplitSystem) -> Result<Option<IndexMap<Split, Rational>>> {
    SplitBasis::new(system)?.express(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{maximum_circular_system, CircularOrdering};
    use crate::fixtures;
    use crate::ground::GroundSet;
    use crate::order::order_distance_eq1;
    use crate::params::OrderParams;
    use crate::rational::int;

    fn all_splits(n: usize) -> SplitSystem {
        let splits = (1..(1usize << (n - 1))).map(|mask| Split::new(n, (0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1)).unwrap());
        SplitSystem::new(GroundSet::alphabetic(n), splits.collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn ranks() {
        let max = maximum_circular_system(&CircularOrdering::identity(5), GroundSet::alphabetic(5)).unwrap();
        assert_eq!(split_rank(&max), 10);
        assert!(is_linearly_independent(&max));
        let four = all_splits(4);
        assert_eq!(four.len(), 7);
        assert_eq!(split_rank(&four), 6);
        assert!(!is_linearly_independent(&four));
        for skip in 0..7 {
            let sub = SplitSystem::new(four.ground().clone(), four.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, s)| s.clone())).unwrap();
            assert!(is_linearly_independent(&sub));
        }
    }

    #[test]
    fn superset_decomposition() {
        let d = fixtures::nonmaximum_circular_four_point().generate_distance();
        let o = order_distance_eq1(&d, &OrderParams::new(int(2), int(1)).unwrap());
        let superset = fixtures::nonmaximum_circular_superset();
        let got = express_in_basis(&o, &superset.splits()).unwrap().expect("in span");
        for (s, w) in superset.iter() {
            assert_eq!(&got[s], w);
        }
        let original = fixtures::nonmaximum_circular_four_point().splits();
        assert_eq!(express_in_basis(&o, &original).unwrap(), None);
    }

    #[test]
    fn single_split_and_dependent() {
        let s = Split::new(4, [1, 2]).unwrap();
        let system = SplitSystem::new(GroundSet::alphabetic(4), [s.clone()]).unwrap();
        let d = system.with_unit_weights().generate_distance();
        assert_eq!(express_in_basis(&d, &system).unwrap().unwrap()[&s], int(1));
        assert_eq!(express_in_basis(&d, &all_splits(4)).unwrap_err(), Error::Dependent);
    }
}
