//! Linear independence, exact decomposition, closedness, pairwise
//! separation, flat split systems from allowable pairs, and orderliness testing.

mod allowable;
mod closed;
mod linalg;
mod orderly;
mod separation;

pub use allowable::{allowable_splits, AllowablePair};
pub use closed::{is_closed, pair_is_closed};
pub use linalg::{express_in_basis, is_linearly_independent, split_rank, SplitBasis};
pub use orderly::{orderly_test, replay, Counterexample, Evidence, OrderlyVerdict, Phase};
pub use separation::{pairwise_separation_check, pairwise_separation_check_exhaustive};

use crate::system::{restrict_split_system, SplitSystem};

/// The two characterizations of maximum flat systems, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatRoutes {
    /// `C(n,2)` independent splits and every 4-subset restriction has 6 splits.
    pub restriction: bool,
    /// `C(n,2)` independent splits with the pairwise separation property.
    pub separation: bool,
}

fn is_maximum_independent(system: &SplitSystem) -> bool {
    let n = system.n();
    system.len() == n * (n - 1) / 2 && is_linearly_independent(system)
}

/// Whether every 4-element restriction has exactly 6 splits.
pub fn four_point_restrictions_full(system: &SplitSystem) -> bool {
    let n = system.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let sub = restrict_split_system(system, &[a, b, c, d]).expect("four elements");
                    if sub.len() != 6 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn flat_routes(system: &SplitSystem) -> FlatRoutes {
    let max = is_maximum_independent(system);
    FlatRoutes {
        restriction: max && four_point_restrictions_full(system),
        separation: max && pairwise_separation_check(system).is_none(),
    }
}

/// Maximum flat by the restriction criterion; the separation route must agree.
pub fn is_maximum_flat(system: &SplitSystem) -> bool {
    let routes = flat_routes(system);
    assert_eq!(routes.restriction, routes.separation, "flatness characterizations disagree");
    routes.restriction
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circular::{maximum_circular_system, CircularOrdering};
    use crate::fixtures;
    use crate::ground::GroundSet;

    #[test]
    fn flat_fixtures() {
        for system in [fixtures::flat_noncircular_s1(), fixtures::flat_noncircular_s2()] {
            assert!(is_maximum_flat(&system));
            for a in 0..5 {
                let rest: Vec<usize> = (0..5).filter(|&e| e != a).collect();
                assert_eq!(restrict_split_system(&system, &rest).unwrap().len(), 6);
            }
        }
        let max = maximum_circular_system(&CircularOrdering::identity(6), GroundSet::alphabetic(6)).unwrap();
        assert!(is_maximum_flat(&max));
        assert!(!is_maximum_flat(&fixtures::five_leaf_tree_splits()));
    }
}
