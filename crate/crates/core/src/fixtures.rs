//! Small named split systems and distances with known order distances.

use crate::distance::DistanceMatrix;
use crate::ground::GroundSet;
use crate::rational::int;
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

/// The split with the single-letter labels of `side` on one side.
fn split(g: &GroundSet, side: &str) -> Split {
    let elements = side.chars().map(|c| g.index_of(&c.to_string()).expect("fixture label"));
    Split::new(g.len(), elements).expect("fixture split")
}

fn weighted(g: GroundSet, entries: &[(&str, i64)]) -> WeightedSplitSystem {
    let entries: Vec<_> = entries.iter().map(|&(s, w)| (split(&g, s), int(w))).collect();
    WeightedSplitSystem::new(g, entries).expect("fixture system")
}

fn unweighted(g: GroundSet, sides: &[&str]) -> SplitSystem {
    let splits: Vec<_> = sides.iter().map(|s| split(&g, s)).collect();
    SplitSystem::new(g, splits).expect("fixture system")
}

/// Compatible system on `a..e` whose distance is an ultrametric but whose
/// order distance is treelike only when `q = p/2`.
pub fn ultrametric_five_point() -> WeightedSplitSystem {
    weighted(GroundSet::alphabetic(5), &[("b", 2), ("e", 2), ("a", 4), ("c", 1), ("d", 1), ("cd", 1)])
}

/// `{b}|acd`, `ab|cd`, `ad|bc` with unit weights on `a..d`.
pub fn nonmaximum_circular_four_point() -> WeightedSplitSystem {
    weighted(GroundSet::alphabetic(4), &[("b", 1), ("ab", 1), ("ad", 1)])
}

/// The circular superset over which the order distance of
/// [`nonmaximum_circular_four_point`] (at `p = 2, q = 1`) decomposes, with those weights.
pub fn nonmaximum_circular_superset() -> WeightedSplitSystem {
    weighted(GroundSet::alphabetic(4), &[("ab", 3), ("ad", 3), ("a", 1), ("c", 1), ("b", 4)])
}

/// Six-point distance whose midpath splits are incompatible although every
/// five-point restriction has compatible midpath splits.
pub fn six_point_table() -> DistanceMatrix {
    let g = GroundSet::new(["a", "b", "s", "t", "x", "y"]).expect("labels");
    let rows = [
        [0, 6, 5, 4, 13, 14],
        [6, 0, 2, 3, 12, 11],
        [5, 2, 0, 1, 8, 9],
        [4, 3, 1, 0, 10, 7],
        [13, 12, 8, 10, 0, 15],
        [14, 11, 9, 7, 15, 0],
    ];
    DistanceMatrix::new(g, rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).expect("table")
}

/// The seven edge splits of a binary tree on `a..e`.
pub fn five_leaf_tree_splits() -> SplitSystem {
    unweighted(GroundSet::alphabetic(5), &["a", "b", "c", "d", "e", "ab", "abc"])
}

/// A maximum flat system on `a..e` that is not circular (four trivial splits).
pub fn flat_noncircular_s1() -> SplitSystem {
    unweighted(GroundSet::alphabetic(5), &["a", "b", "c", "d", "ab", "bc", "cd", "ad", "ae", "be"])
}

/// A maximum flat system on `a..e` that is not circular (three trivial splits).
pub fn flat_noncircular_s2() -> SplitSystem {
    unweighted(GroundSet::alphabetic(5), &["a", "b", "c", "ab", "bc", "cd", "ad", "ac", "ae", "be"])
}

/// Looks up a fixture system by its command-line name.
pub fn split_system_by_name(name: &str) -> Option<SplitSystem> {
    match name {
        "S1_5" => Some(flat_noncircular_s1()),
        "S2_5" => Some(flat_noncircular_s2()),
        "tree5" => Some(five_leaf_tree_splits()),
        "circular4" => Some(nonmaximum_circular_four_point().splits()),
        _ => None,
    }
}
