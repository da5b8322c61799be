//! Words over the positive integers and permutations as a special case.
//!
//! Positions are 1-indexed in every public operation. Textual form: letters
//! separated by commas or whitespace (`2,13,2`), or contiguous digits when
//! every letter is at most 9 (`2132213`). A lone number with a trailing comma
//! (`13,`) is the one-letter word 13.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A finite word over ℙ = {1, 2, ...}.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::ZeroLetter);
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the letters.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    /// `(|w|, ‖w‖)`, the exponents of the monomial t^|w| x^‖w‖.
    pub fn weight(&self) -> (usize, u64) {
        (self.len(), self.norm())
    }

    pub fn reversal(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Alphabet and per-letter multiplicities.
    pub fn letter_stats(&self) -> (BTreeSet<Letter>, BTreeMap<Letter, usize>) {
        let mut counts = BTreeMap::new();
        for &a in &self.0 {
            *counts.entry(a).or_insert(0) += 1;
        }
        (counts.keys().copied().collect(), counts)
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&a| a == letter).count()
    }

    /// Same alphabet and same multiplicities.
    pub fn is_rearrangement_of(&self, other: &Word) -> bool {
        self.letter_stats().1 == other.letter_stats().1
    }

    /// `d_w(i, j)`: one distance per pair of an occurrence of `i` and an
    /// occurrence of `j`.
    pub fn distance_multiset(&self, i: Letter, j: Letter) -> Result<DistanceMultiset> {
        if i == j {
            return Err(Error::SameLetter(i));
        }
        let at = |letter| {
            self.0
                .iter()
                .enumerate()
                .filter(move |&(_, &a)| a == letter)
                .map(|(k, _)| k)
        };
        let distances = at(i)
            .flat_map(|k| at(j).map(move |l| k.abs_diff(l)))
            .collect();
        Ok(DistanceMultiset::from_unsorted(distances))
    }

    /// Every letter incremented by one.
    pub fn shift_up(&self) -> Word {
        Word(self.0.iter().map(|&a| a + 1).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn is_permutation(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        self.0.iter().all(|&a| {
            let a = a as usize;
            a <= n && !std::mem::replace(&mut seen[a], true)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&a| a <= 9) {
            for a in &self.0 {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join(","))?;
            // a lone multi-digit letter keeps a comma so it reads back as one letter
            if parts.len() == 1 {
                f.write_str(",")?;
            }
            Ok(())
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "ε" {
            return Ok(Word::empty());
        }
        let delimited = t.contains(|c: char| c == ',' || c.is_whitespace());
        let letters = if delimited {
            t.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|tok| !tok.is_empty())
                .map(|tok| {
                    tok.parse::<Letter>()
                        .map_err(|e| Error::parse("word", s, format!("{tok:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| {
                        Error::parse("word", s, format!("unexpected character {c:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(letters).map_err(|e| Error::parse("word", s, e.to_string()))
    }
}

impl From<Permutation> for Word {
    fn from(p: Permutation) -> Word {
        p.0
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in which each of 1..=n occurs exactly once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Word);

impl Permutation {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        Permutation::try_from(Word::new(letters)?)
    }

    pub fn identity(n: usize) -> Self {
        Permutation(Word((1..=n as Letter).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    /// `s = u⁻¹` as a plain vector: entry `i - 1` is the (1-indexed)
    /// position of letter `i`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (k, &a) in self.letters().iter().enumerate() {
            pos[a as usize - 1] = k + 1;
        }
        pos
    }

    /// 1-indexed position of `letter`.
    pub fn position_of(&self, letter: Letter) -> Option<usize> {
        self.letters()
            .iter()
            .position(|&a| a == letter)
            .map(|k| k + 1)
    }

    pub fn inverse(&self) -> Permutation {
        Permutation(Word(
            self.positions().into_iter().map(|p| p as Letter).collect(),
        ))
    }

    pub fn reversal(&self) -> Permutation {
        Permutation(self.0.reversal())
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(Word(letters.clone()).is_permutation());
        Permutation(Word(letters))
    }
}

impl TryFrom<Word> for Permutation {
    type Error = Error;

    fn try_from(w: Word) -> Result<Self> {
        if w.is_permutation() {
            Ok(Permutation(w))
        } else {
            Err(Error::NotPermutation(w.to_string()))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::try_from(s.parse::<Word>()?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Word::deserialize(deserializer)?;
        Permutation::try_from(w).map_err(serde::de::Error::custom)
    }
}

/// A multiset of positive distances, kept sorted so that multiset equality is
/// plain sequence equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceMultiset(Vec<usize>);

impl DistanceMultiset {
    pub fn from_unsorted(mut distances: Vec<usize>) -> Self {
        distances.sort_unstable();
        DistanceMultiset(distances)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<usize> {
        self.0.last().copied()
    }
}

impl fmt::Display for DistanceMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(w("2132213").weight(), (7, 14));
        assert_eq!(Word::empty().weight(), (0, 0));
        assert_eq!(w("322").weight(), (3, 7));
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(w("2132213").reversal(), w("3122312"));
        assert_eq!(w("21365874").reversal(), w("47856312"));
        assert_eq!(Word::empty().reversal(), Word::empty());
    }

    #[test]
    fn letter_stats_examples() {
        let (alph, mult) = w("2132213").letter_stats();
        assert_eq!(alph, BTreeSet::from([1, 2, 3]));
        assert_eq!(mult[&2], 3);

        let (alph, mult) = w("111").letter_stats();
        assert_eq!(alph, BTreeSet::from([1]));
        assert_eq!(mult[&1], 3);

        let (alph, mult) = w("2314").letter_stats();
        assert_eq!(alph, BTreeSet::from([1, 2, 3, 4]));
        assert!(mult.values().all(|&c| c == 1));
    }

    #[test]
    fn distance_multiset_examples() {
        let d = w("2132213").distance_multiset(2, 3).unwrap();
        assert_eq!(d.as_slice(), &[1, 2, 2, 2, 3, 6]);
        assert_eq!(w("2314").distance_multiset(2, 4).unwrap().as_slice(), &[3]);
        assert_eq!(
            w("2132213").distance_multiset(2, 2),
            Err(Error::SameLetter(2))
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("21365874").inverse(), p("21385476"));
        assert_eq!(p("21657843").inverse(), p("21874356"));
        assert_eq!(p("1234").inverse(), p("1234"));
    }

    #[test]
    fn non_permutations_are_rejected() {
        assert!(matches!(
            "2213".parse::<Permutation>(),
            Err(Error::NotPermutation(_))
        ));
        assert!(matches!(
            "124".parse::<Permutation>(),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn shift_up_examples() {
        assert_eq!(w("231").shift_up(), w("342"));
        assert_eq!(Word::empty().shift_up(), Word::empty());
        assert_eq!(w("111").shift_up(), w("222"));
    }

    #[test]
    fn textual_format() {
        assert_eq!(w("2,13,2").letters(), &[2, 13, 2]);
        assert_eq!(w("2 13 2").letters(), &[2, 13, 2]);
        assert_eq!(w("13,").letters(), &[13]);
        assert_eq!(w("13").letters(), &[1, 3]);
        assert_eq!(w("2,13,2").to_string(), "2,13,2");
        assert_eq!(w("2132213").to_string(), "2132213");
        assert!("2a1".parse::<Word>().is_err());
        assert!("201".parse::<Word>().is_err());
        assert!("2,0".parse::<Word>().is_err());
        assert!("2,-1".parse::<Word>().is_err());
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(1u32..12, 0..12).prop_map(|v| Word::new(v).unwrap())
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..10)
            .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn reversal_is_an_involution_preserving_weight(w in arb_word()) {
            prop_assert_eq!(w.reversal().reversal(), w.clone());
            prop_assert_eq!(w.reversal().weight(), w.weight());
        }

        #[test]
        fn inverse_is_an_involution(p in arb_perm()) {
            prop_assert_eq!(p.inverse().inverse(), p);
        }

        #[test]
        fn shift_up_adds_length_to_norm(w in arb_word()) {
            prop_assert_eq!(w.shift_up().norm(), w.norm() + w.len() as u64);
        }

        #[test]
        fn distance_multiset_size_and_symmetry(w in arb_word(), i in 1u32..6, j in 1u32..6) {
            prop_assume!(i != j);
            let d = w.distance_multiset(i, j).unwrap();
            prop_assert_eq!(d.len(), w.count(i) * w.count(j));
            prop_assert_eq!(d, w.distance_multiset(j, i).unwrap());
        }

        #[test]
        fn display_parse_round_trip(w in arb_word()) {
            prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
    }
}
