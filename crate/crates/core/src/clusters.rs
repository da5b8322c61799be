//! Pre-clusters and minimal clusters.
//!
//! A pre-cluster stacks copies of a word `u`, row `k` starting at column
//! `j_k` of an embedding set `E = {1 = j_0 < j_1 < ...}`. Its minimal cluster
//! takes the maximum of every column, with 1 where no row reaches.

use std::collections::BTreeSet;

use crate::embedding::EmbeddingSet;
use crate::error::{Error, Result};
use crate::words::{Letter, Permutation, Word};

/// Copies of `base` at the given column offsets. Rows are never materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreCluster {
    base: Word,
    offsets: Vec<usize>,
    width: usize,
}

impl PreCluster {
    /// The overlapping pre-cluster `P(u, E)`: every gap of `E` must lie in
    /// `1..=|u|-1`.
    pub fn new(u: &Word, e: &EmbeddingSet) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::EmptyPattern);
        }
        e.require_anchored()?;
        let max_gap = u.len() - 1;
        if let Some(gap) = e.gaps().find(|&g| g > max_gap) {
            return Err(Error::OverlapViolation { gap, max: max_gap });
        }
        Ok(Self::stack(u, e, e.last() - 1 + u.len()))
    }

    /// The pre-cluster behind an extended minimal cluster: no overlap
    /// requirement, total width prescribed.
    pub fn extended(u: &Word, e: &EmbeddingSet, width: usize) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::EmptyPattern);
        }
        e.require_anchored()?;
        let required = e.last() - 1 + u.len();
        if width < required {
            return Err(Error::ClusterTooShort {
                length: width,
                required,
            });
        }
        Ok(Self::stack(u, e, width))
    }

    fn stack(u: &Word, e: &EmbeddingSet, width: usize) -> Self {
        PreCluster {
            base: u.clone(),
            offsets: e.positions().iter().map(|&j| j - 1).collect(),
            width,
        }
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.offsets.len()
    }

    /// Column-wise maximum; uncovered columns hold 1.
    pub fn column_max(&self) -> Word {
        let letters = stacked_floor(self.base.letters(), &self.offsets, self.width);
        Word::new(letters).expect("column maxima of positive letters are positive")
    }

    /// Row-shifted tableau: one line per copy, a rule, then the column maxima.
    pub fn tableau(&self) -> String {
        let cluster = self.column_max();
        let cell = cluster
            .letters()
            .iter()
            .map(|a| a.to_string().len())
            .max()
            .unwrap_or(1);
        let render = |cells: Vec<Option<Letter>>| -> String {
            let parts: Vec<String> = cells
                .into_iter()
                .map(|c| match c {
                    Some(a) => format!("{a:>cell$}"),
                    None => " ".repeat(cell),
                })
                .collect();
            parts.join(" ").trim_end().to_string()
        };
        let mut lines = Vec::with_capacity(self.rows() + 2);
        for &off in &self.offsets {
            let mut cells = vec![None; self.width];
            for (k, &a) in self.base.letters().iter().enumerate() {
                cells[off + k] = Some(a);
            }
            lines.push(render(cells));
        }
        lines.push("-".repeat(self.width * (cell + 1) - 1));
        lines.push(render(cluster.letters().iter().map(|&a| Some(a)).collect()));
        lines.join("\n")
    }
}

/// Letterwise smallest word of length `width` that dominates `u` at every
/// 0-indexed offset in `offsets`. Offsets may be arbitrary as long as each
/// copy fits.
pub(crate) fn stacked_floor(u: &[Letter], offsets: &[usize], width: usize) -> Vec<Letter> {
    let mut out = vec![1; width];
    for &off in offsets {
        for (slot, &a) in out[off..off + u.len()].iter_mut().zip(u) {
            *slot = (*slot).max(a);
        }
    }
    out
}

/// `m(u, E)`.
pub fn minimal_cluster(u: &Word, e: &EmbeddingSet) -> Result<Word> {
    Ok(PreCluster::new(u, e)?.column_max())
}

/// The least-norm word of length `length` in which `u` embeds exactly at `E`.
pub fn extended_minimal_cluster(u: &Permutation, e: &EmbeddingSet, length: usize) -> Result<Word> {
    Ok(PreCluster::extended(u.as_word(), e, length)?.column_max())
}

/// `{i + j - 1 : i ∈ E₁, j ∈ E₂}`: the embedding set of `u` that yields
/// `m(m(u, E₁), E₂)` directly.
pub fn compose_embeddings(e1: &EmbeddingSet, e2: &EmbeddingSet) -> Result<EmbeddingSet> {
    e1.require_anchored()?;
    e2.require_anchored()?;
    let composed: BTreeSet<usize> = e1
        .positions()
        .iter()
        .flat_map(|&i| e2.positions().iter().map(move |&j| i + j - 1))
        .collect();
    EmbeddingSet::new(composed.into_iter().collect())
}

/// How many copies of letter `i` in `P(u, E)` sit in a column that also
/// holds a larger letter, i.e. `|s̄ᵢ ∩ ⋃_{j>i} s̄ⱼ|` with `s = u⁻¹`.
pub fn blocked_count(u: &Permutation, e: &EmbeddingSet, i: Letter) -> Result<usize> {
    let pre = PreCluster::new(u.as_word(), e)?;
    let n = u.len() as Letter;
    if i == 0 || i > n {
        return Err(Error::LetterOutOfRange { letter: i, max: n });
    }
    let s = u.positions();
    let mut covered = vec![false; pre.width() + 1];
    for &sj in &s[i as usize..] {
        for &p in e.positions() {
            covered[sj - 1 + p] = true;
        }
    }
    let si = s[i as usize - 1];
    Ok(e.positions()
        .iter()
        .filter(|&&p| covered[si - 1 + p])
        .count())
}
