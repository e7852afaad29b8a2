use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, Rational};

/// The tie-handling parameters `p`, `q` of the order distance, with `q ≥ p/2 > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderParams {
    p: Rational,
    q: Rational,
}

impl OrderParams {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p <= Rational::zero() {
            return Err(Error::InvalidParams(format!("p = {} must be positive", format_rational(&p))));
        }
        if q.clone() * int(2) < p {
            return Err(Error::InvalidParams(format!(
                "q = {} must be at least p/2 = {}",
                format_rational(&q),
                format_rational(&(p.clone() / int(2)))
            )));
        }
        Ok(Self { p, q })
    }

    /// `q = p/2`, the setting under which orderliness is defined.
    pub fn half(p: Rational) -> Result<Self> {
        let q = p.clone() / int(2);
        Self::new(p, q)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// Weight of each ordered-pair split term, `p/2`.
    pub fn pair_weight(&self) -> Rational {
        self.p.clone() / int(2)
    }

    /// Weight of each equidistance split term, `q − p/2`.
    pub fn tie_weight(&self) -> Rational {
        self.q.clone() - self.pair_weight()
    }

    /// Kendall penalty `q/p`.
    pub fn penalty(&self) -> Rational {
        self.q.clone() / self.p.clone()
    }

    pub fn is_half(&self) -> bool {
        self.tie_weight().is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        Self::new(self.p.clone() * c, self.q.clone() * c)
    }
}

impl fmt::Display for OrderParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}, q={}", format_rational(&self.p), format_rational(&self.q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn bounds_are_exact() {
        assert!(OrderParams::new(int(2), int(1)).is_ok());
        assert!(OrderParams::new(int(2), ratio(999_999, 1_000_000)).is_err());
        assert!(OrderParams::new(int(0), int(1)).is_err());
        assert!(OrderParams::new(int(-2), int(1)).is_err());
        assert!(OrderParams::new(ratio(1, 3), ratio(1, 6)).unwrap().is_half());
    }

    #[test]
    fn derived_weights() {
        let params = OrderParams::new(int(4), int(3)).unwrap();
        assert_eq!(params.pair_weight(), int(2));
        assert_eq!(params.tie_weight(), int(1));
        assert_eq!(params.penalty(), ratio(3, 4));
    }
}
