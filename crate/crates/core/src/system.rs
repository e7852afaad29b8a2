//! Split systems, weighted split systems and the distances they generate.

use indexmap::{IndexMap, IndexSet};
use num_traits::{One, Zero};

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rational::{format_rational, is_negative, Rational};
use crate::split::Split;

/// A set of distinct splits of one ground set, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSystem {
    ground: GroundSet,
    splits: IndexSet<Split>,
}

impl SplitSystem {
    /// Duplicates collapse; every split must live on `ground`.
    pub fn new(ground: GroundSet, splits: impl IntoIterator<Item = Split>) -> Result<Self> {
        let mut system = Self::empty(ground);
        for s in splits {
            system.insert(s)?;
        }
        Ok(system)
    }

    pub fn empty(ground: GroundSet) -> Self {
        Self { ground, splits: IndexSet::new() }
    }

    /// Returns false when the split was already present.
    pub fn insert(&mut self, split: Split) -> Result<bool> {
        if split.n() != self.ground.len() {
            return Err(Error::GroundMismatch);
        }
        Ok(self.splits.insert(split))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn contains(&self, split: &Split) -> bool {
        self.splits.contains(split)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Split> + '_ {
        self.splits.iter()
    }

    pub fn get(&self, i: usize) -> &Split {
        &self.splits[i]
    }

    /// Every split with weight 1.
    pub fn with_unit_weights(&self) -> WeightedSplitSystem {
        WeightedSplitSystem {
            ground: self.ground.clone(),
            weights: self.splits.iter().map(|s| (s.clone(), Rational::one())).collect(),
        }
    }

    /// Pairs the splits with weights given in the same order.
    pub fn with_weights(&self, weights: impl IntoIterator<Item = Rational>) -> Result<WeightedSplitSystem> {
        let weights: Vec<Rational> = weights.into_iter().collect();
        if weights.len() != self.len() {
            return Err(Error::InvalidSplit(format!(
                "expected {} weights, got {}",
                self.len(),
                weights.len()
            )));
        }
        WeightedSplitSystem::new(self.ground.clone(), self.splits.iter().cloned().zip(weights))
    }

    /// The restriction `{A∩Y | B∩Y}` to the listed elements; pairs with an empty side are dropped.
    pub fn restrict(&self, elements: &[usize]) -> Result<SplitSystem> {
        restrict_split_system(self, elements)
    }
}

impl<'a> IntoIterator for &'a SplitSystem {
    type Item = &'a Split;
    type IntoIter = indexmap::set::Iter<'a, Split>;

    fn into_iter(self) -> Self::IntoIter {
        self.splits.iter()
    }
}

/// A split system with non-negative rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSplitSystem {
    ground: GroundSet,
    weights: IndexMap<Split, Rational>,
}

impl WeightedSplitSystem {
    /// Rejects duplicate splits and negative weights.
    pub fn new(ground: GroundSet, entries: impl IntoIterator<Item = (Split, Rational)>) -> Result<Self> {
        let mut weights = IndexMap::new();
        for (split, w) in entries {
            if split.n() != ground.len() {
                return Err(Error::GroundMismatch);
            }
            if is_negative(&w) {
                return Err(Error::NegativeWeight(format_rational(&w)));
            }
            if weights.contains_key(&split) {
                return Err(Error::DuplicateSplit(split.display(&ground).to_string()));
            }
            weights.insert(split, w);
        }
        Ok(Self { ground, weights })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of `split`, zero when absent.
    pub fn weight(&self, split: &Split) -> Rational {
        self.weights.get(split).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&Split, &Rational)> + '_ {
        self.weights.iter()
    }

    pub fn splits(&self) -> SplitSystem {
        SplitSystem { ground: self.ground.clone(), splits: self.weights.keys().cloned().collect() }
    }

    /// `D = Σ ω(S)·D_S`.
    pub fn generate_distance(&self) -> DistanceMatrix {
        generate_distance(self)
    }
}

/// `D_S(x, y)`: 1 when `s` separates `x` and `y`, else 0.
pub fn split_metric(s: &Split, x: usize, y: usize) -> Result<Rational> {
    for e in [x, y] {
        if e >= s.n() {
            return Err(Error::IndexOutOfRange { index: e, n: s.n() });
        }
    }
    Ok(if s.separates(x, y) { Rational::one() } else { Rational::zero() })
}

/// The distance generated by a weighted split system.
pub fn generate_distance(ws: &WeightedSplitSystem) -> DistanceMatrix {
    let n = ws.n();
    let mut acc = vec![Rational::zero(); n * n];
    for (split, w) in ws.iter() {
        if w.is_zero() {
            continue;
        }
        let inside = split.side_elements();
        let outside = split.other_elements();
        for &x in &inside {
            for &y in &outside {
                let (i, j) = if x < y { (x, y) } else { (y, x) };
                acc[i * n + j] += w;
            }
        }
    }
    DistanceMatrix::from_fn_unchecked(ws.ground.clone(), |i, j| std::mem::take(&mut acc[i * n + j]))
}

/// `S|Y = {A∩Y | B∩Y : A|B ∈ S}`, reindexed to the order of `elements`.
pub fn restrict_split_system(system: &SplitSystem, elements: &[usize]) -> Result<SplitSystem> {
    if elements.len() < 2 {
        return Err(Error::TooFewElements { need: 2, got: elements.len() });
    }
    let ground = system.ground.subset(elements)?;
    let restricted = system.iter().filter_map(|s| s.restrict(elements));
    SplitSystem::new(ground, restricted)
}
