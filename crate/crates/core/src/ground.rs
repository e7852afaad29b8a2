use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A labeled finite set `X`; elements are the indices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

const RESERVED: &[char] = &[',', '|', ':', '#', '{', '}'];

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.chars().any(|c| c.is_whitespace() || RESERVED.contains(&c)) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    /// `a, b, c, ...` for n ≤ 26, otherwise `t1, t2, ...`.
    pub fn alphabetic(n: usize) -> Self {
        if n <= 26 {
            Self::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Self::new((1..=n).map(|i| format!("t{i}")))
        }
        .expect("generated labels are valid")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.len() })
        }
    }

    /// The ground set of the listed elements, in the given order.
    pub fn subset(&self, elements: &[usize]) -> Result<Self> {
        for &e in elements {
            self.check_index(e)?;
        }
        Self::new(elements.iter().map(|&e| self.labels[e].clone()))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.labels).finish()
    }
}
