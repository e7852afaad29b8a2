use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::linalg::SplitBasis;
use crate::error::Result;
use crate::order::order_distance_eq1;
use crate::params::OrderParams;
use crate::rational::{int, Rational};
use crate::split::Split;
use crate::system::{SplitSystem, WeightedSplitSystem};

/// Why a weighting's order distance is not a non-negative combination of the system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    NotInSpan,
    NegativeWeight { split: Split, weight: Rational },
}

/// Which weighting produced a counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Weight 2 on an incompatible pair, 0 elsewhere.
    Adversarial { pair: (Split, Split) },
    Random { trial: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub weighting: WeightedSplitSystem,
    pub phase: Phase,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderlyVerdict {
    CounterexampleFound(Box<Counterexample>),
    NoCounterexampleFound { trials: u64 },
}

impl OrderlyVerdict {
    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Self::CounterexampleFound(c) => Some(c),
            Self::NoCounterexampleFound { .. } => None,
        }
    }
}

/// Largest random weight drawn in the second phase.
const MAX_WEIGHT: u32 = 20;

fn order_params() -> OrderParams {
    OrderParams::new(int(2), int(1)).expect("valid parameters")
}

fn check(basis: &SplitBasis, weighting: &WeightedSplitSystem) -> Result<Option<Evidence>> {
    let o = order_distance_eq1(&weighting.generate_distance(), &order_params());
    Ok(match basis.express(&o)? {
        None => Some(Evidence::NotInSpan),
        Some(weights) => weights
            .into_iter()
            .find(|(_, w)| w.is_negative())
            .map(|(split, weight)| Evidence::NegativeWeight { split, weight }),
    })
}

/// Re-runs one weighting (`p = 2`, `q = 1`) against an independent system.
pub fn replay(system: &SplitSystem, weighting: &WeightedSplitSystem) -> Result<Option<Evidence>> {
    check(&SplitBasis::new(system)?, weighting)
}

/// Tries to refute orderliness of an independent system at `p = 2, q = 1`.
///
/// First every incompatible pair gets weight 2 with all other splits at 0;
/// then `trials` random integer weightings in `[0, 20]`, trial `t` drawn
/// from a generator seeded with `seed + t`.
pub fn orderly_test(system: &SplitSystem, trials: u64, seed: u64) -> Result<OrderlyVerdict> {
    let basis = SplitBasis::new(system)?;
    let splits: Vec<&Split> = system.iter().collect();
    let weighting = |weights: Vec<Rational>| {
        WeightedSplitSystem::new(system.ground().clone(), splits.iter().map(|s| (*s).clone()).zip(weights))
            .expect("weights are non-negative")
    };

    for (i, s1) in splits.iter().enumerate() {
        for s2 in &splits[i + 1..] {
            if s1.is_compatible_with(s2) {
                continue;
            }
            let w = weighting(splits.iter().map(|s| if s == s1 || s == s2 { int(2) } else { int(0) }).collect());
            if let Some(evidence) = check(&basis, &w)? {
                let phase = Phase::Adversarial { pair: ((*s1).clone(), (*s2).clone()) };
                return Ok(OrderlyVerdict::CounterexampleFound(Box::new(Counterexample { weighting: w, phase, evidence })));
            }
        }
    }

    let found = (0..trials).into_par_iter().find_map_first(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
        let w = weighting(splits.iter().map(|_| int(rng.gen_range(0..=MAX_WEIGHT).into())).collect());
        match check(&basis, &w) {
            Ok(Some(evidence)) => Some(Ok(Counterexample { weighting: w, phase: Phase::Random { trial }, evidence })),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        }
    });
    match found {
        Some(c) => Ok(OrderlyVerdict::CounterexampleFound(Box::new(c?))),
        None => Ok(OrderlyVerdict::NoCounterexampleFound { trials }),
    }
}
