use fixedbitset::FixedBitSet;

use crate::split::Split;
use crate::system::SplitSystem;

/// Whether the genuine splits among `A∪{x,y}|B`, `A∪{x}|B∪{y}`,
/// `A∪{y}|B∪{x}`, `A|B∪{x,y}` all lie in `system`, where `a` is `A`.
fn pattern_present(system: &SplitSystem, a: &FixedBitSet, x: usize, y: usize) -> bool {
    let with = |extra: &[usize]| {
        let mut side = a.clone();
        side.extend(extra.iter().copied());
        side
    };
    [with(&[x, y]), with(&[x]), with(&[y]), with(&[])]
        .into_iter()
        .all(|side| Split::from_bits(side).is_none_or(|s| system.contains(&s)))
}

/// The first pair `{x, y}` for which no `A, B` gives the separation pattern,
/// searching only the `(A, B)` induced by splits of `system` that separate `x` and `y`.
///
/// This is exhaustive: `A∪{x}|B∪{y}` is always a genuine split, so every
/// qualifying `(A, B)` arises from one of those splits.
pub fn pairwise_separation_check(system: &SplitSystem) -> Option<(usize, usize)> {
    let n = system.n();
    for x in 0..n {
        for y in x + 1..n {
            let found = system.iter().filter(|s| s.separates(x, y)).any(|s| {
                let mut a = if s.contains(x) { s.side().clone() } else { s.other_side() };
                a.set(x, false);
                pattern_present(system, &a, x, y)
            });
            if !found {
                return Some((x, y));
            }
        }
    }
    None
}

/// Same as [`pairwise_separation_check`] but tries all `2^(n−2)` partitions
/// of `X − {x, y}`. Intended for small `n`.
pub fn pairwise_separation_check_exhaustive(system: &SplitSystem) -> Option<(usize, usize)> {
    let n = system.n();
    for x in 0..n {
        for y in x + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&e| e != x && e != y).collect();
            let found = (0u64..1 << rest.len()).any(|mask| {
                let mut a = FixedBitSet::with_capacity(n);
                a.extend(rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e));
                pattern_present(system, &a, x, y)
            });
            if !found {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{maximum_circular_system, CircularOrdering};
    use crate::fixtures;
    use crate::ground::GroundSet;

    #[test]
    fn known_systems() {
        let max = maximum_circular_system(&CircularOrdering::new(vec![0, 2, 4, 1, 3]).unwrap(), GroundSet::alphabetic(5)).unwrap();
        for system in [max, fixtures::flat_noncircular_s1(), fixtures::flat_noncircular_s2()] {
            assert_eq!(pairwise_separation_check(&system), None);
            assert_eq!(pairwise_separation_check_exhaustive(&system), None);
        }
        let tree = fixtures::five_leaf_tree_splits();
        assert!(pairwise_separation_check(&tree).is_some());
        assert_eq!(pairwise_separation_check(&tree), pairwise_separation_check_exhaustive(&tree));
    }
}
