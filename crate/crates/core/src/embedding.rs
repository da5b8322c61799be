//! The generalized factor order and embedding index sets.
//!
//! `u ≤ w` when some factor of `w` of length `|u|` dominates `u` letter by
//! letter. The start positions of all such factors form `Em(u, w)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

/// Does `u` embed into `w` with its first letter at (1-indexed) position `j`?
pub fn embeds_at(u: &Word, w: &Word, j: usize) -> bool {
    if j == 0 || j + u.len() - 1 > w.len() {
        return false;
    }
    u.letters()
        .iter()
        .zip(&w.letters()[j - 1..])
        .all(|(a, b)| a <= b)
}

/// `Em(u, w)` in increasing order. Empty exactly when `u ≰ w`.
pub fn embedding_set(u: &Word, w: &Word) -> Result<Vec<usize>> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(embedding_positions(u.letters(), w.letters()))
}

pub(crate) fn embedding_positions(u: &[u32], w: &[u32]) -> Vec<usize> {
    if u.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - u.len())
        .filter(|&k| u.iter().zip(&w[k..]).all(|(a, b)| a <= b))
        .map(|k| k + 1)
        .collect()
}

pub(crate) fn embedding_count(u: &[u32], w: &[u32]) -> usize {
    if u.len() > w.len() {
        return 0;
    }
    (0..=w.len() - u.len())
        .filter(|&k| u.iter().zip(&w[k..]).all(|(a, b)| a <= b))
        .count()
}

/// The generalized factor order `u ≤ w`.
pub fn leq_factor(u: &Word, w: &Word) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(embedding_count(u.letters(), w.letters()) > 0)
}

/// A nonempty, strictly increasing set of positive positions.
///
/// Dually described by its minimum and the vector of consecutive gaps
/// (the shift vector). Sets used to build clusters start at 1; that is
/// checked by the operations that need it, not here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct EmbeddingSet(Vec<usize>);

impl EmbeddingSet {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidEmbeddingSet("empty".into()));
        }
        if positions[0] == 0 {
            return Err(Error::InvalidEmbeddingSet("positions are 1-indexed".into()));
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidEmbeddingSet(format!(
                "{positions:?} is not strictly increasing"
            )));
        }
        Ok(EmbeddingSet(positions))
    }

    /// `{start, start + e₁, start + e₁ + e₂, ...}`.
    pub fn from_shift_vector(start: usize, shifts: &[usize]) -> Result<Self> {
        if shifts.contains(&0) {
            return Err(Error::InvalidEmbeddingSet("shifts must be positive".into()));
        }
        let mut positions = Vec::with_capacity(shifts.len() + 1);
        positions.push(start);
        let mut at = start;
        for &e in shifts {
            at += e;
            positions.push(at);
        }
        EmbeddingSet::new(positions)
    }

    /// `{1}`.
    pub fn singleton() -> Self {
        EmbeddingSet(vec![1])
    }

    pub fn to_shift_vector(&self) -> (usize, Vec<usize>) {
        (self.0[0], self.gaps().collect())
    }

    pub fn gaps(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.windows(2).map(|p| p[1] - p[0])
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, position: usize) -> bool {
        self.0.binary_search(&position).is_ok()
    }

    pub(crate) fn require_anchored(&self) -> Result<()> {
        if self.first() == 1 {
            Ok(())
        } else {
            Err(Error::NotAnchored(self.first()))
        }
    }

    /// `(j - 1) + E` for a set starting at 1: the positions that letter
    /// number `j` of the pattern occupies across the stacked copies.
    pub fn shifted_positions(&self, j: usize) -> Result<EmbeddingSet> {
        self.require_anchored()?;
        if j == 0 {
            return Err(Error::InvalidArgument("shift origin must be ≥ 1".into()));
        }
        Ok(EmbeddingSet(self.0.iter().map(|&p| p + j - 1).collect()))
    }
}

impl TryFrom<Vec<usize>> for EmbeddingSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        EmbeddingSet::new(v)
    }
}

impl From<EmbeddingSet> for Vec<usize> {
    fn from(e: EmbeddingSet) -> Vec<usize> {
        e.0
    }
}

impl fmt::Display for EmbeddingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_positions(f, &self.0)
    }
}

pub(crate) fn write_positions(f: &mut impl fmt::Write, positions: &[usize]) -> fmt::Result {
    for (k, p) in positions.iter().enumerate() {
        if k > 0 {
            f.write_char(',')?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

impl FromStr for EmbeddingSet {
    type Err = Error;

    /// Parses sorted comma-separated positions such as `1,2,4`.
    fn from_str(s: &str) -> Result<Self> {
        let positions = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::parse("embedding set", s, format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        EmbeddingSet::new(positions).map_err(|e| Error::parse("embedding set", s, e.to_string()))
    }
}
