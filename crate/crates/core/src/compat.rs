//! Compatible split systems, their trees, and the treelike, ultrametric and
//! six-point conditions on distances.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::rankings::RankTable;
use crate::rational::Rational;
use crate::scaled::{with_scaled, Exact, ScaledMatrix};
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

pub fn is_compatible_pair(s1: &Split, s2: &Split) -> Result<bool> {
    if s1.n() != s2.n() {
        return Err(Error::GroundMismatch);
    }
    Ok(s1.is_compatible_with(s2))
}

/// The first pair of incompatible splits, by position in `system`.
pub fn first_incompatible_pair(system: &SplitSystem) -> Option<(Split, Split)> {
    let splits: Vec<&Split> = system.iter().collect();
    for (i, s1) in splits.iter().enumerate() {
        for s2 in &splits[i + 1..] {
            if !s1.is_compatible_with(s2) {
                return Some(((*s1).clone(), (*s2).clone()));
            }
        }
    }
    None
}

pub fn is_compatible(system: &SplitSystem) -> bool {
    first_incompatible_pair(system).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub child: usize,
    pub weight: Rational,
}

/// A tree whose vertices are labeled by the ground set, realizing a
/// compatible weighted split system edge by edge.
///
/// Vertex 0 is the root and carries element 0.
#[derive(Clone, Debug)]
pub struct XTree {
    n: usize,
    vertex_count: usize,
    edges: Vec<TreeEdge>,
    leaf_map: Vec<usize>,
}

impl XTree {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// The vertex labeled by element `x`.
    pub fn vertex_of(&self, x: usize) -> usize {
        self.leaf_map[x]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.parent == v || e.child == v).count()
    }

    /// Elements labeling the subtree below each vertex.
    fn subtree_elements(&self) -> Vec<FixedBitSet> {
        let mut below = vec![FixedBitSet::with_capacity(self.n); self.vertex_count];
        for (x, &v) in self.leaf_map.iter().enumerate() {
            below[v].insert(x);
        }
        // Edges are stored parents-first, so a reverse sweep folds children into parents.
        for e in self.edges.iter().rev() {
            let child = below[e.child].clone();
            below[e.parent].union_with(&child);
        }
        below
    }

    /// The split obtained by deleting each edge, with the edge's weight.
    pub fn weighted_splits(&self) -> Vec<(Split, Rational)> {
        let below = self.subtree_elements();
        self.edges
            .iter()
            .map(|e| (Split::from_bits(below[e.child].clone()).expect("edge splits are proper"), e.weight.clone()))
            .collect()
    }

    pub fn edge_splits(&self) -> Vec<Split> {
        self.weighted_splits().into_iter().map(|(s, _)| s).collect()
    }

    /// Sum of edge weights on the path between the vertices of `x` and `y`.
    pub fn path_distance(&self, x: usize, y: usize) -> Rational {
        let mut parent = vec![None; self.vertex_count];
        for (k, e) in self.edges.iter().enumerate() {
            parent[e.child] = Some((e.parent, k));
        }
        let ancestors = |mut v: usize| {
            let mut path = vec![(v, None)];
            while let Some((p, k)) = parent[v] {
                path.push((p, Some(k)));
                v = p;
            }
            path
        };
        let px = ancestors(self.leaf_map[x]);
        let py = ancestors(self.leaf_map[y]);
        let on_y: Vec<usize> = py.iter().map(|&(v, _)| v).collect();
        let meet = px.iter().map(|&(v, _)| v).find(|v| on_y.contains(v)).expect("tree is connected");
        let mut total = Rational::from_integer(0.into());
        for path in [&px, &py] {
            for w in path.windows(2) {
                if w[0].0 == meet {
                    break;
                }
                total += &self.edges[w[1].1.expect("edge on path")].weight;
            }
        }
        total
    }
}

/// Builds the unique tree whose edge splits are the given compatible system.
pub fn xtree_from_compatible(ws: &WeightedSplitSystem) -> Result<XTree> {
    let n = ws.n();
    if !is_compatible(&ws.splits()) {
        return Err(Error::Incompatible);
    }
    // Clusters are the sides avoiding element 0; they form a laminar family.
    let mut clusters: Vec<(&Split, &Rational)> = ws.iter().collect();
    clusters.sort_by(|a, b| b.0.side().count_ones(..).cmp(&a.0.side().count_ones(..)).then(a.0.cmp(b.0)));

    let mut edges = Vec::with_capacity(clusters.len());
    for (i, (split, weight)) in clusters.iter().enumerate() {
        let parent = (0..i)
            .rev()
            .find(|&j| split.side().is_subset(clusters[j].0.side()))
            .map_or(0, |j| j + 1);
        edges.push(TreeEdge { parent, child: i + 1, weight: (*weight).clone() });
    }
    let leaf_map = (0..n)
        .map(|x| (0..clusters.len()).rev().find(|&j| clusters[j].0.contains(x)).map_or(0, |j| j + 1))
        .collect();
    Ok(XTree { n, vertex_count: clusters.len() + 1, edges, leaf_map })
}

/// The first quadruple `i < j < k < l` where the largest of the three pair
/// sums is attained only once, i.e. where the treelike condition fails.
pub fn four_point_check(d: &DistanceMatrix) -> Option<[usize; 4]> {
    with_scaled!(d, m => first_four_point_violation(&m))
}

fn first_four_point_violation<T: Exact>(m: &ScaledMatrix<T>) -> Option<[usize; 4]> {
    let n = m.n();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let s1 = m.get(i, j) + m.get(k, l);
                    let s2 = m.get(i, k) + m.get(j, l);
                    let s3 = m.get(i, l) + m.get(j, k);
                    let max = s1.clone().max(s2.clone()).max(s3.clone());
                    let hits = [s1, s2, s3].into_iter().filter(|s| *s == max).count();
                    if hits == 1 {
                        return Some([i, j, k, l]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_ultrametric(d: &DistanceMatrix) -> bool {
    let n = d.n();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| d.get(x, z) <= d.get(x, y).max(d.get(y, z)))))
}

/// Which disjunct of the six-point condition a witness satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WitnessCondition {
    /// `a`, `b` strictly nearer `s`; `x`, `y` weakly nearer `t`.
    OneStrictNear,
    /// `a`, `b` weakly nearer `s`; `x`, `y` strictly nearer `t`.
    OneStrictFar,
    /// `b`, `x` strictly nearer `s`; `a`, `y` weakly nearer `t`.
    TwoStrictNear,
    /// `b`, `x` weakly nearer `s`; `a`, `y` strictly nearer `t`.
    TwoStrictFar,
}

impl WitnessCondition {
    /// 1 or 2.
    pub fn index(self) -> u8 {
        match self {
            Self::OneStrictNear | Self::OneStrictFar => 1,
            Self::TwoStrictNear | Self::TwoStrictFar => 2,
        }
    }
}

/// Six elements certifying that the midpath split system is incompatible:
/// `S_xy` crosses `S_st` or `S_ts`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixPointWitness {
    pub a: usize,
    pub b: usize,
    pub s: usize,
    pub t: usize,
    pub x: usize,
    pub y: usize,
    pub condition: WitnessCondition,
}

/// Searches all tuples `(a, b, s, t, x, y)` with `a≠b`, `s≠t`, `x≠y` in
/// lexicographic order and returns the first one satisfying the condition.
pub fn six_point_witness(d: &DistanceMatrix) -> Option<SixPointWitness> {
    let n = d.n();
    let r = RankTable::new(d);
    (0..n).into_par_iter().find_map_first(|a| {
        for b in (0..n).filter(|&b| b != a) {
            for s in 0..n {
                for t in (0..n).filter(|&t| t != s) {
                    for x in 0..n {
                        for y in (0..n).filter(|&y| y != x) {
                            if let Some(condition) = witness_condition(&r, a, b, s, t, x, y) {
                                return Some(SixPointWitness { a, b, s, t, x, y, condition });
                            }
                        }
                    }
                }
            }
        }
        None
    })
}

/// Evaluates both conditions for one tuple; `lt(p, i, j)` is `D(p,i) < D(p,j)`.
pub(crate) fn witness_condition(
    r: &RankTable,
    a: usize,
    b: usize,
    s: usize,
    t: usize,
    x: usize,
    y: usize,
) -> Option<WitnessCondition> {
    let lt = |p, i, j| r.lt(p, i, j);
    let le = |p, i, j| r.le(p, i, j);
    if !(lt(a, x, y) && le(b, y, x)) {
        return None;
    }
    if lt(a, s, t) && lt(b, s, t) && le(x, t, s) && le(y, t, s) {
        return Some(WitnessCondition::OneStrictNear);
    }
    if le(a, s, t) && le(b, s, t) && lt(x, t, s) && lt(y, t, s) {
        return Some(WitnessCondition::OneStrictFar);
    }
    if lt(b, s, t) && le(a, t, s) && lt(x, s, t) && le(y, t, s) {
        return Some(WitnessCondition::TwoStrictNear);
    }
    if le(b, s, t) && lt(a, t, s) && le(x, s, t) && lt(y, t, s) {
        return Some(WitnessCondition::TwoStrictFar);
    }
    None
}
