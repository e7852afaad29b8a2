use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::split::Split;
use crate::system::SplitSystem;

fn contains_block(system: &SplitSystem, block: &FixedBitSet) -> bool {
    Split::from_bits(block.clone()).is_some_and(|s| system.contains(&s))
}

/// Whether an incompatible pair satisfies one of the closedness conditions:
/// (a) all four block splits; (b) `n1·n4 = n2·n3` and the middle split;
/// (c) `n1·n4 > n2·n3`, the middle split and blocks 1, 4;
/// (d) `n1·n4 < n2·n3`, the middle split and blocks 2, 3.
pub fn pair_is_closed(system: &SplitSystem, s1: &Split, s2: &Split) -> bool {
    let blocks = s1.blocks(s2);
    let [n1, n2, n3, n4] = blocks.clone().map(|b| b.count_ones(..));
    let has = |i: usize| contains_block(system, &blocks[i]);
    let middle = &blocks[0] | &blocks[3];
    let has_middle = contains_block(system, &middle);
    let (diag, anti) = (n1 * n4, n2 * n3);
    (has(0) && has(1) && has(2) && has(3))
        || (diag == anti && has_middle)
        || (diag > anti && has_middle && has(0) && has(3))
        || (diag < anti && has_middle && has(1) && has(2))
}

/// The first incompatible pair violating closedness, or `None` if closed.
pub fn is_closed(system: &SplitSystem) -> Result<Option<(Split, Split)>> {
    if system.n() < 4 {
        return Err(Error::TooFewElements { need: 4, got: system.n() });
    }
    let splits: Vec<&Split> = system.iter().collect();
    for (i, s1) in splits.iter().enumerate() {
        for s2 in &splits[i + 1..] {
            if !s1.is_compatible_with(s2) && !pair_is_closed(system, s1, s2) {
                return Ok(Some(((*s1).clone(), (*s2).clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{maximum_circular_system, CircularOrdering};
    use crate::fixtures;
    use crate::ground::GroundSet;

    #[test]
    fn fixtures_and_circular() {
        assert_eq!(is_closed(&fixtures::five_leaf_tree_splits()).unwrap(), None);
        assert!(is_closed(&fixtures::flat_noncircular_s1()).unwrap().is_some());
        assert!(is_closed(&fixtures::flat_noncircular_s2()).unwrap().is_some());
        let max = maximum_circular_system(&CircularOrdering::identity(5), GroundSet::alphabetic(5)).unwrap();
        assert_eq!(is_closed(&max).unwrap(), None);
        let small = SplitSystem::new(GroundSet::alphabetic(3), [Split::new(3, [1]).unwrap()]).unwrap();
        assert!(is_closed(&small).is_err());
    }
}
