//! Class census over `S_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equivalence::{cross_fingerprint, ss_fingerprint};
use crate::error::{Error, Result};
use crate::words::{Letter, Permutation};

/// Largest `n` enumerated without `force`.
pub const ENUMERATION_GUARD: usize = 10;

/// All of `S_n` in lexicographic order (after an order-preserving collect).
pub(crate) fn permutations_par(n: usize) -> impl ParallelIterator<Item = Vec<Letter>> {
    (1..=n as Letter)
        .into_par_iter()
        .flat_map_iter(move |first| {
            let rest: Vec<Letter> = (1..=n as Letter).filter(|&a| a != first).collect();
            rest.into_iter().permutations(n - 1).map(move |mut tail| {
                tail.insert(0, first);
                tail
            })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Ss,
    Cross,
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ss" => Ok(Relation::Ss),
            "cross" => Ok(Relation::Cross),
            _ => Err(Error::parse("relation", s, "expected ss or cross")),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ss => "ss",
            Relation::Cross => "cross",
        })
    }
}

/// A partition of `S_n`, keyed by the lexicographically least member of each
/// class. Members are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub n: usize,
    pub relation: Relation,
    pub classes: BTreeMap<Permutation, Vec<Permutation>>,
}

impl ClassPartition {
    pub fn from_classes(n: usize, relation: Relation, classes: Vec<Vec<Permutation>>) -> Self {
        let classes = classes
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|mut c| {
                c.sort();
                (c[0].clone(), c)
            })
            .collect();
        ClassPartition {
            n,
            relation,
            classes,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The class containing `u`.
    pub fn class_of(&self, u: &Permutation) -> Option<&[Permutation]> {
        self.classes
            .values()
            .find(|c| c.binary_search(u).is_ok())
            .map(Vec::as_slice)
    }

    pub fn to_document(&self) -> ClassesDocument {
        ClassesDocument {
            n: self.n,
            relation: self.relation,
            classes: self
                .classes
                .iter()
                .map(|(rep, members)| ClassEntry {
                    rep: rep.clone(),
                    members: members.clone(),
                })
                .collect(),
            histogram: class_statistics(self).histogram,
        }
    }

    /// `classes-n{n}-{relation}.json`.
    pub fn file_name(&self) -> String {
        format!("classes-n{}-{}.json", self.n, self.relation)
    }

    /// Writes the JSON document into `dir` and returns its path.
    pub fn write_json(&self, dir: &Path) -> std::io::Result<PathBuf> {
        let path = dir.join(self.file_name());
        let json = serde_json::to_string_pretty(&self.to_document()).expect("document serializes");
        std::fs::write(&path, json + "\n")?;
        Ok(path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep: Permutation,
    pub members: Vec<Permutation>,
}

/// On-disk form of a [`ClassPartition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesDocument {
    pub n: usize,
    pub relation: Relation,
    pub classes: Vec<ClassEntry>,
    pub histogram: BTreeMap<usize, usize>,
}

impl From<ClassesDocument> for ClassPartition {
    fn from(doc: ClassesDocument) -> Self {
        ClassPartition {
            n: doc.n,
            relation: doc.relation,
            classes: doc
                .classes
                .into_iter()
                .map(|e| (e.rep, e.members))
                .collect(),
        }
    }
}

/// Partition `S_n` by fingerprint. Refuses `n` above the guard unless
/// `force` is set.
pub fn enumerate_classes(n: usize, relation: Relation, force: bool) -> Result<ClassPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > ENUMERATION_GUARD && !force {
        return Err(Error::GuardExceeded {
            what: "n",
            value: n,
            limit: ENUMERATION_GUARD,
        });
    }
    let fingerprint = match relation {
        Relation::Ss => ss_fingerprint,
        Relation::Cross => cross_fingerprint,
    };
    let groups: HashMap<Vec<u16>, Vec<Vec<Letter>>> = permutations_par(n)
        .fold(
            HashMap::new,
            |mut acc: HashMap<Vec<u16>, Vec<Vec<Letter>>>, p| {
                acc.entry(fingerprint(&p)).or_default().push(p);
                acc
            },
        )
        .reduce(HashMap::new, |mut a, b| {
            for (k, mut v) in b {
                a.entry(k).or_default().append(&mut v);
            }
            a
        });
    let classes = groups
        .into_values()
        .map(|c| {
            c.into_iter()
                .map(Permutation::from_letters_unchecked)
                .collect()
        })
        .collect();
    Ok(ClassPartition::from_classes(n, relation, classes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassStatistics {
    pub class_count: usize,
    pub total: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// Class size to number of classes of that size.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn class_statistics(p: &ClassPartition) -> ClassStatistics {
    let mut histogram = BTreeMap::new();
    for members in p.classes.values() {
        *histogram.entry(members.len()).or_insert(0) += 1;
    }
    ClassStatistics {
        class_count: p.classes.len(),
        total: p.classes.values().map(Vec::len).sum(),
        min_size: histogram.keys().next().copied().unwrap_or(0),
        max_size: histogram.keys().next_back().copied().unwrap_or(0),
        histogram,
    }
}
