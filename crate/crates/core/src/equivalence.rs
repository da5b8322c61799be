//! Cross equivalence, super-strong Wilf equivalence and the minimal-cluster
//! rearrangement oracle.
//!
//! For permutations the production test is the difference profile: two
//! permutations are super-strongly Wilf equivalent exactly when, for every
//! `i` in `2..n`, the gaps between consecutive positions of the letters
//! `≥ i` agree. The cluster search in [`mcrt_witness_search`] is an
//! independent, bounded check; it never certifies equivalence.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clusters::minimal_cluster;
use crate::embedding::EmbeddingSet;
use crate::enumeration::permutations_par;
use crate::error::{Error, Result};
use crate::tree::build_tree;
use crate::words::{DistanceMultiset, Letter, Permutation, Word};

/// Above this size [`ss_class`] switches from filtering all of `S_n` to
/// reading the class off the cross-equivalence tree.
pub const BRUTE_CLASS_LIMIT: usize = 10;

fn same_size(u: &Permutation, v: &Permutation) -> Result<()> {
    if u.len() == v.len() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            left: u.len(),
            right: v.len(),
        })
    }
}

/// `i⁺(u)`: distances from letter `i` to every larger letter.
pub fn plus_multiset(u: &Permutation, i: Letter) -> Result<DistanceMultiset> {
    let n = u.len() as Letter;
    if i == 0 || i >= n {
        return Err(Error::LetterOutOfRange {
            letter: i,
            max: n.saturating_sub(1),
        });
    }
    Ok(plus_multiset_of(&u.positions(), i as usize))
}

fn plus_multiset_of(pos: &[usize], i: usize) -> DistanceMultiset {
    let si = pos[i - 1];
    DistanceMultiset::from_unsorted(pos[i..].iter().map(|&sj| si.abs_diff(sj)).collect())
}

/// Agreement of `i⁺` for every `i` in `1..n`.
pub fn cross_equivalent(u: &Permutation, v: &Permutation) -> Result<bool> {
    same_size(u, v)?;
    let (pu, pv) = (u.positions(), v.positions());
    Ok((1..u.len()).all(|i| plus_multiset_of(&pu, i) == plus_multiset_of(&pv, i)))
}

/// The vectors `Δᵢ(u⁻¹)` for `i = 2..=n-1`: gaps between consecutive
/// positions (left to right) of the letters `≥ i` in `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceProfile {
    n: usize,
    deltas: BTreeMap<usize, Vec<usize>>,
}

impl DifferenceProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self, i: usize) -> Option<&[usize]> {
        self.deltas.get(&i).map(Vec::as_slice)
    }

    pub fn deltas(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.deltas
    }

    /// Every `Δᵢ` is all ones, the profile of the identity.
    pub fn is_all_ones(&self) -> bool {
        self.deltas.values().flatten().all(|&d| d == 1)
    }

    pub fn reversed(&self) -> DifferenceProfile {
        DifferenceProfile {
            n: self.n,
            deltas: self
                .deltas
                .iter()
                .map(|(&i, d)| (i, d.iter().rev().copied().collect()))
                .collect(),
        }
    }
}

impl fmt::Display for DifferenceProfile {
    /// One line per `i`, from `n-1` down to 2: `Δ7 = (1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, d)) in self.deltas.iter().rev().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            write!(f, "Δ{i} = ({})", parts.join(","))?;
        }
        Ok(())
    }
}

pub fn difference_profile(u: &Permutation) -> DifferenceProfile {
    let n = u.len();
    let deltas = (2..n)
        .map(|i| (i, gaps_at_least(u.letters(), i as Letter)))
        .collect();
    DifferenceProfile { n, deltas }
}

fn gaps_at_least(letters: &[Letter], i: Letter) -> Vec<usize> {
    let positions: Vec<usize> = letters
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a >= i)
        .map(|(k, _)| k)
        .collect();
    positions.windows(2).map(|p| p[1] - p[0]).collect()
}

/// Compact hashable encoding of the difference profile of a permutation,
/// given as raw letters. Each `Δᵢ` is terminated by a 0.
pub(crate) fn ss_fingerprint(letters: &[Letter]) -> Vec<u16> {
    let n = letters.len();
    let mut out = Vec::with_capacity(n * n / 2 + n);
    for i in 2..n as Letter {
        let mut last = None;
        for (k, &a) in letters.iter().enumerate() {
            if a >= i {
                if let Some(prev) = last {
                    out.push((k - prev) as u16);
                }
                last = Some(k);
            }
        }
        out.push(0);
    }
    out
}

/// Compact hashable encoding of all the `i⁺` multisets.
pub(crate) fn cross_fingerprint(letters: &[Letter]) -> Vec<u16> {
    let n = letters.len();
    let mut pos = vec![0usize; n];
    for (k, &a) in letters.iter().enumerate() {
        pos[a as usize - 1] = k;
    }
    let mut out = Vec::with_capacity(n * n / 2 + n);
    let mut scratch = Vec::with_capacity(n);
    for i in 0..n.saturating_sub(1) {
        scratch.clear();
        scratch.extend(pos[i + 1..].iter().map(|&p| p.abs_diff(pos[i]) as u16));
        scratch.sort_unstable();
        out.extend_from_slice(&scratch);
        out.push(0);
    }
    out
}

/// Super-strong Wilf equivalence of permutations, decided by difference
/// profiles.
pub fn ss_equivalent(u: &Permutation, v: &Permutation) -> Result<bool> {
    same_size(u, v)?;
    Ok(difference_profile(u) == difference_profile(v))
}

/// `[u]_ss`, sorted lexicographically.
pub fn ss_class(u: &Permutation) -> Vec<Permutation> {
    if u.len() <= BRUTE_CLASS_LIMIT {
        ss_class_by_filter(u)
    } else {
        ss_class_by_tree(u)
    }
}

/// `[u]_ss` by testing every permutation of the same size.
pub fn ss_class_by_filter(u: &Permutation) -> Vec<Permutation> {
    let target = ss_fingerprint(u.letters());
    let mut class: Vec<Permutation> = permutations_par(u.len())
        .filter(|p| ss_fingerprint(p) == target)
        .map(Permutation::from_letters_unchecked)
        .collect();
    class.sort();
    class
}

/// `[u]_ss` as the block of the cross-equivalence tree partition holding `u`.
pub fn ss_class_by_tree(u: &Permutation) -> Vec<Permutation> {
    let partition = build_tree(u).partition_leaves();
    let mut class = partition
        .classes
        .into_iter()
        .find(|c| c.contains(u))
        .expect("u is a leaf of its own tree");
    class.sort();
    class
}

/// Swap the letters `n-1` and `n` in place.
pub fn adjacent_top_swap(u: &Permutation) -> Result<Permutation> {
    let n = u.len() as Letter;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "swapping the two largest letters needs n ≥ 2".into(),
        ));
    }
    let letters = u
        .letters()
        .iter()
        .map(|&a| match a {
            a if a == n => n - 1,
            a if a == n - 1 => n,
            a => a,
        })
        .collect();
    Ok(Permutation::from_letters_unchecked(letters))
}

/// Are `m(u, E)` and `m(v, E)` rearrangements of one another?
pub fn mcrt_check(u: &Word, v: &Word, e: &EmbeddingSet) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::SizeMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(minimal_cluster(u, e)?.is_rearrangement_of(&minimal_cluster(v, e)?))
}

/// Outcome of a bounded minimal-cluster search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// Every embedding set with at most `max_shifts` shifts agrees.
    EquivalentUpToBound { max_shifts: usize },
    /// The minimal clusters on `witness` are not rearrangements.
    Refuted { witness: EmbeddingSet },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&EmbeddingSet> {
        match self {
            Verdict::Refuted { witness } => Some(witness),
            Verdict::EquivalentUpToBound { .. } => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::EquivalentUpToBound { .. } => f.write_str("equivalent-up-to-bound"),
            Verdict::Refuted { witness } => write!(f, "refuted {witness}"),
        }
    }
}

/// Anchored embedding sets with at most `max_shifts` shifts, each in
/// `1..=max_shift`: shorter shift vectors first, lexicographic within a
/// length.
pub fn anchored_sets(max_shift: usize, max_shifts: usize) -> impl Iterator<Item = EmbeddingSet> {
    let lengths = if max_shift == 0 { 0 } else { max_shifts };
    (0..=lengths).flat_map(move |len| {
        let mut shifts = vec![1; len];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let e = EmbeddingSet::from_shift_vector(1, &shifts).expect("shifts are positive");
            // odometer step, last coordinate fastest
            done = true;
            for k in (0..len).rev() {
                if shifts[k] < max_shift {
                    shifts[k] += 1;
                    shifts[k + 1..].iter_mut().for_each(|s| *s = 1);
                    done = false;
                    break;
                }
            }
            Some(e)
        })
    })
}

/// Look for an embedding set on which the minimal clusters of `u` and `v`
/// differ as multisets, trying every anchored set with at most `max_shifts`
/// overlapping shifts.
pub fn mcrt_witness_search(u: &Word, v: &Word, max_shifts: usize) -> Result<Verdict> {
    if u.len() != v.len() {
        return Err(Error::SizeMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    for e in anchored_sets(u.len() - 1, max_shifts) {
        if !mcrt_check(u, v, &e)? {
            return Ok(Verdict::Refuted { witness: e });
        }
    }
    Ok(Verdict::EquivalentUpToBound { max_shifts })
}

/// Where a permutation sits relative to the two classes closed under
/// reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReversalClassKind {
    /// The class of `12…n`: every `Δᵢ` is all ones.
    IdentityClass,
    /// The class of `12…(n-3)(n-1)(n-2)n`: `Δ_{n-1} = (2)`, all other `Δᵢ`
    /// all ones.
    NearIdentityClass,
    Neither,
}

impl fmt::Display for ReversalClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReversalClassKind::IdentityClass => "identity-class",
            ReversalClassKind::NearIdentityClass => "near-identity-class",
            ReversalClassKind::Neither => "neither",
        })
    }
}

pub fn reversal_class_kind(u: &Permutation) -> ReversalClassKind {
    let profile = difference_profile(u);
    let n = u.len();
    if profile.is_all_ones() {
        return ReversalClassKind::IdentityClass;
    }
    let near = n >= 3
        && profile.delta(n - 1) == Some(&[2][..])
        && profile
            .deltas()
            .iter()
            .filter(|&(&i, _)| i != n - 1)
            .all(|(_, d)| d.iter().all(|&x| x == 1));
    if near {
        ReversalClassKind::NearIdentityClass
    } else {
        ReversalClassKind::Neither
    }
}
