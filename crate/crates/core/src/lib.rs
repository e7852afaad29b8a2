//! Order distances of finite distance matrices and the split systems behind
//! them, in exact rational arithmetic.

mod scaled;

pub mod circular;
pub mod compat;
pub mod distance;
pub mod error;
pub mod fixtures;
pub mod flatlab;
pub mod ground;
pub mod io;
pub mod order;
pub mod params;
pub mod random;
pub mod rankings;
pub mod rational;
pub mod split;
pub mod system;

pub use circular::{CircularOrdering, IntervalSplit};
pub use compat::{SixPointWitness, XTree};
pub use distance::DistanceMatrix;
pub use error::{Error, Result};
pub use flatlab::{AllowablePair, OrderlyVerdict};
pub use ground::GroundSet;
pub use order::{
    midpath_split_system, order_distance_eq1, order_distance_kendall, pair_partition, MidpathDecomposition,
    PairPartition,
};
pub use params::OrderParams;
pub use rankings::{kendall_penalized, ranking_from_distance, PartialRanking};
pub use rational::Rational;
pub use split::Split;
pub use system::{generate_distance, restrict_split_system, split_metric, SplitSystem, WeightedSplitSystem};
