//! Distance matrices cleared of denominators, for the quadruple-heavy checks.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::distance::DistanceMatrix;
use crate::rational::{common_denominator, Rational};

/// Values the scaled matrix may hold.
pub(crate) trait Exact: Clone + Ord + Send + Sync + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl Exact for i128 {}
impl Exact for Rational {}

pub(crate) struct ScaledMatrix<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Exact> ScaledMatrix<T> {
    pub(crate) fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.n + j].clone()
    }

    pub(crate) fn row(&self, i: usize) -> &[T] {
        &self.values[i * self.n..(i + 1) * self.n]
    }
}

pub(crate) enum Scaled {
    Small(ScaledMatrix<i128>),
    Exact(ScaledMatrix<Rational>),
}

// Four-term sums of entries below this bound cannot overflow an i128.
const SMALL_BOUND: i128 = 1 << 100;

/// Multiplies every entry by the common denominator; orderings of sums and
/// differences are preserved. Falls back to rationals when values are huge.
pub(crate) fn scale(d: &DistanceMatrix) -> Scaled {
    let n = d.n();
    let all = (0..n).flat_map(|i| d.row(i).iter());
    let denom: BigInt = common_denominator(all);
    let small: Option<Vec<i128>> = (0..n)
        .flat_map(|i| d.row(i).iter())
        .map(|v| {
            let scaled = v.numer() * (&denom / v.denom());
            scaled.to_i128().filter(|x| x.abs() < SMALL_BOUND)
        })
        .collect();
    match small {
        Some(values) => Scaled::Small(ScaledMatrix { n, values }),
        None => Scaled::Exact(ScaledMatrix {
            n,
            values: (0..n).flat_map(|i| d.row(i).iter().cloned()).collect(),
        }),
    }
}

/// Runs a generic body against whichever representation `scale` produced.
macro_rules! with_scaled {
    ($d:expr, $m:ident => $body:expr) => {
        match $crate::scaled::scale($d) {
            $crate::scaled::Scaled::Small($m) => $body,
            $crate::scaled::Scaled::Exact($m) => $body,
        }
    };
}
pub(crate) use with_scaled;
