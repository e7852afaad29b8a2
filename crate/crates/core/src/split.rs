use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ground::GroundSet;

/// A bipartition `A|B` of the ground set `{0..n}`.
///
/// Only the side not containing element 0 is stored, so `A|B` and `B|A`
/// produce the same value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Split {
    side: FixedBitSet,
}

impl Split {
    /// Builds the split with `elements` on one side. Either side may be given.
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewElements { need: 2, got: n });
        }
        let mut bits = FixedBitSet::with_capacity(n);
        for e in elements {
            if e >= n {
                return Err(Error::IndexOutOfRange { index: e, n });
            }
            bits.insert(e);
        }
        Self::from_bits(bits).ok_or_else(|| Error::InvalidSplit("one side is empty".into()))
    }

    /// Builds a split from explicit sides, checking that they partition `{0..n}`.
    pub fn from_sides(n: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        let mut seen = FixedBitSet::with_capacity(n);
        for &e in a.iter().chain(b) {
            if e >= n {
                return Err(Error::IndexOutOfRange { index: e, n });
            }
            if seen.put(e) {
                return Err(Error::InvalidSplit(format!("element {e} listed twice")));
            }
        }
        if seen.count_ones(..) != n {
            return Err(Error::InvalidSplit("sides do not cover the ground set".into()));
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidSplit("one side is empty".into()));
        }
        Self::new(n, a.iter().copied())
    }

    /// `None` when `bits` is empty or the whole set.
    pub fn from_bits(mut bits: FixedBitSet) -> Option<Self> {
        let n = bits.len();
        let ones = bits.count_ones(..);
        if ones == 0 || ones == n {
            return None;
        }
        if bits.contains(0) {
            bits.toggle_range(..);
        }
        Some(Self { side: bits })
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    /// The side not containing element 0.
    pub fn side(&self) -> &FixedBitSet {
        &self.side
    }

    /// The side containing element 0.
    pub fn other_side(&self) -> FixedBitSet {
        let mut b = self.side.clone();
        b.toggle_range(..);
        b
    }

    /// True when `x` lies on the side not containing element 0.
    pub fn contains(&self, x: usize) -> bool {
        self.side.contains(x)
    }

    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.side.contains(x) != self.side.contains(y)
    }

    pub fn side_elements(&self) -> Vec<usize> {
        self.side.ones().collect()
    }

    pub fn other_elements(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| !self.side.contains(i)).collect()
    }

    /// Size of the smaller side.
    pub fn min_side(&self) -> usize {
        let k = self.side.count_ones(..);
        k.min(self.n() - k)
    }

    pub fn is_trivial(&self) -> bool {
        self.min_side() == 1
    }

    /// Two splits are compatible when one of the four side intersections is empty.
    pub fn is_compatible_with(&self, other: &Split) -> bool {
        let a1 = &self.side;
        let a2 = &other.side;
        // B1 ∩ B2 always contains element 0.
        a1.is_disjoint(a2) || a1.is_subset(a2) || a2.is_subset(a1)
    }

    /// The four blocks `A1∩A2, B1∩A2, A1∩B2, B1∩B2`, with `A` the stored sides.
    pub fn blocks(&self, other: &Split) -> [FixedBitSet; 4] {
        let a1 = &self.side;
        let b1 = self.other_side();
        let a2 = &other.side;
        let b2 = other.other_side();
        [a1 & a2, &b1 & a2, a1 & &b2, &b1 & &b2]
    }

    /// Restriction to the listed elements, reindexed `0..ys.len()`.
    pub fn restrict(&self, ys: &[usize]) -> Option<Split> {
        let mut bits = FixedBitSet::with_capacity(ys.len());
        for (i, &y) in ys.iter().enumerate() {
            if self.side.contains(y) {
                bits.insert(i);
            }
        }
        Split::from_bits(bits)
    }

    pub fn display<'a>(&'a self, ground: &'a GroundSet) -> SplitDisplay<'a> {
        SplitDisplay { split: self, ground }
    }

    /// The two sides, smaller first (ties: the side with element 0 first).
    pub fn ordered_sides(&self) -> (Vec<usize>, Vec<usize>) {
        let a = self.side_elements();
        let b = self.other_elements();
        if a.len() < b.len() {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl Ord for Split {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.min_side().cmp(&other.min_side()))
            .then_with(|| {
                let (a, _) = self.ordered_sides();
                let (b, _) = other.ordered_sides();
                a.cmp(&b)
            })
            .then_with(|| self.side_elements().cmp(&other.side_elements()))
    }
}

impl PartialOrd for Split {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.ordered_sides();
        write!(f, "{a:?}|{b:?}")
    }
}

pub struct SplitDisplay<'a> {
    split: &'a Split,
    ground: &'a GroundSet,
}

impl fmt::Display for SplitDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.split.ordered_sides();
        let names = |v: &[usize]| {
            v.iter()
                .map(|&i| self.ground.label(i))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{} | {}", names(&a), names(&b))
    }
}
