use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::split::Split;
use crate::system::SplitSystem;

/// A starting ordering `pi` and swap positions `kappa` (1-based, in `1..n`)
/// under which every pair of elements swaps exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllowablePair {
    ground: GroundSet,
    pi: Vec<usize>,
    kappa: Vec<usize>,
}

impl AllowablePair {
    pub fn new(ground: GroundSet, pi: Vec<usize>, kappa: Vec<usize>) -> Result<Self> {
        let n = ground.len();
        if n < 2 {
            return Err(Error::TooFewElements { need: 2, got: n });
        }
        let mut seen = vec![false; n];
        if pi.len() != n || pi.iter().any(|&e| e >= n || std::mem::replace(&mut seen[e], true)) {
            return Err(Error::InvalidOrdering(format!("{pi:?} is not a permutation")));
        }
        let m = n * (n - 1) / 2;
        if kappa.len() != m {
            return Err(Error::NotAllowable(format!("expected {m} swaps, got {}", kappa.len())));
        }
        let pair = Self { ground, pi, kappa };
        pair.simulate()?;
        Ok(pair)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kappa
    }

    /// Runs the swaps, returning the ordering before each one.
    fn simulate(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.pi.len();
        let mut swapped = vec![false; n * n];
        let mut current = self.pi.clone();
        let mut before = Vec::with_capacity(self.kappa.len());
        for &k in &self.kappa {
            if k == 0 || k >= n {
                return Err(Error::NotAllowable(format!("swap position {k} outside 1..{n}")));
            }
            let (a, b) = (current[k - 1], current[k]);
            let key = a.min(b) * n + a.max(b);
            if std::mem::replace(&mut swapped[key], true) {
                return Err(Error::NotAllowable(format!(
                    "{} and {} swap twice",
                    self.ground.label(a),
                    self.ground.label(b)
                )));
            }
            before.push(current.clone());
            current.swap(k - 1, k);
        }
        Ok(before)
    }
}

/// The splits `S(π_{i−1}, k_i)`: the first `k_i` elements of the ordering
/// before swap `i` against the rest.
pub fn allowable_splits(pair: &AllowablePair) -> SplitSystem {
    let n = pair.pi.len();
    let before = pair.simulate().expect("validated on construction");
    let splits: Vec<Split> = before
        .iter()
        .zip(&pair.kappa)
        .map(|(order, &k)| Split::new(n, order[..k].iter().copied()).expect("prefix split is proper"))
        .collect();
    SplitSystem::new(pair.ground.clone(), splits).expect("splits share the ground set")
}
