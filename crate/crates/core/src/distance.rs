use std::ops::Index;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::rational::{format_rational, is_negative, Rational};

/// A symmetric, zero-diagonal, non-negative matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    ground: GroundSet,
    entries: Vec<Rational>,
}

impl DistanceMatrix {
    /// Validates symmetry, the zero diagonal and non-negativity.
    pub fn new(ground: GroundSet, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = ground.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected a {n}x{n} matrix")));
        }
        for (i, row) in rows.iter().enumerate() {
            if !row[i].is_zero() {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry for {} is {}",
                    ground.label(i),
                    format_rational(&row[i])
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if *v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({}, {})",
                        ground.label(i),
                        ground.label(j)
                    )));
                }
                if is_negative(v) {
                    return Err(Error::InvalidMatrix(format!(
                        "negative entry at ({}, {})",
                        ground.label(i),
                        ground.label(j)
                    )));
                }
            }
        }
        Ok(Self { ground, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds the matrix from `f(i, j)` evaluated for `i < j`.
    pub fn from_fn(ground: GroundSet, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let n = ground.len();
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                if is_negative(&v) {
                    return Err(Error::InvalidMatrix(format!(
                        "negative entry at ({}, {})",
                        ground.label(i),
                        ground.label(j)
                    )));
                }
                entries[i * n + j] = v.clone();
                entries[j * n + i] = v;
            }
        }
        Ok(Self { ground, entries })
    }

    /// Same as [`from_fn`](Self::from_fn) for callers that only produce non-negative values.
    pub(crate) fn from_fn_unchecked(ground: GroundSet, f: impl FnMut(usize, usize) -> Rational) -> Self {
        Self::from_fn(ground, f).expect("entries are non-negative")
    }

    pub fn zero(ground: GroundSet) -> Self {
        let n = ground.len();
        Self { ground, entries: vec![Rational::zero(); n * n] }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n() + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let n = self.n();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Entrywise sum; both matrices must live on the same ground set.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { ground: self.ground.clone(), entries })
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        if is_negative(c) {
            return Err(Error::NegativeWeight(format_rational(c)));
        }
        let entries = self.entries.iter().map(|a| a * c).collect();
        Ok(Self { ground: self.ground.clone(), entries })
    }

    /// The submatrix on the listed elements, in that order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Self> {
        let ground = self.ground.subset(elements)?;
        Ok(Self::from_fn_unchecked(ground, |i, j| self.get(elements[i], elements[j]).clone()))
    }

    /// True when `D(x,z) ≤ D(x,y) + D(y,z)` for all triples.
    pub fn satisfies_triangle_inequality(&self) -> bool {
        let n = self.n();
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| *self.get(x, z) <= self.get(x, y) + self.get(y, z)))
        })
    }
}

impl Index<(usize, usize)> for DistanceMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn validation() {
        let g = GroundSet::alphabetic(3);
        assert!(DistanceMatrix::new(g.clone(), rows(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]])).is_ok());
        assert!(DistanceMatrix::new(g.clone(), rows(&[&[0, 1, 2], &[1, 0, 1], &[3, 1, 0]])).is_err());
        assert!(DistanceMatrix::new(g.clone(), rows(&[&[1, 1, 2], &[1, 0, 1], &[2, 1, 0]])).is_err());
        assert!(DistanceMatrix::new(g.clone(), rows(&[&[0, -1, 2], &[-1, 0, 1], &[2, 1, 0]])).is_err());
        assert!(DistanceMatrix::new(g, rows(&[&[0, 1], &[1, 0]])).is_err());
    }

    #[test]
    fn single_element_is_legal() {
        let d = DistanceMatrix::zero(GroundSet::alphabetic(1));
        assert_eq!(d.n(), 1);
        assert!(d.is_zero());
    }

    #[test]
    fn restrict_reindexes() {
        let g = GroundSet::alphabetic(4);
        let d = DistanceMatrix::from_fn(g, |i, j| int((i * 10 + j) as i64)).unwrap();
        let r = d.restrict(&[3, 1]).unwrap();
        assert_eq!(r.ground().labels(), ["d", "b"]);
        assert_eq!(r[(0, 1)], int(13));
    }
}
