//! The cross-equivalence tree of a permutation.
//!
//! Level `i` holds partly filled words in which the letters `1..=i` sit at
//! positions compatible with `u`'s distance multisets. Leaves are exactly
//! the permutations cross equivalent to `u`. Each level has one or two
//! children per node; two-child levels carry a 0/1 label and the leaves
//! split into super-strong classes along the configurations met on the way
//! down.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumeration::{ClassPartition, Relation};
use crate::error::{Error, Result};
use crate::words::{DistanceMultiset, Letter, Permutation};

pub const BLANK: char = '*';
pub const FILLED: char = '∘';

/// A word of length `n` over `[n]` and a blank symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialWord(Vec<Option<Letter>>);

impl PartialWord {
    pub fn blank(n: usize) -> Self {
        PartialWord(vec![None; n])
    }

    /// Accepts slots in which `1..=i` each occur once for some `i` and every
    /// other slot is blank.
    pub fn new(slots: Vec<Option<Letter>>) -> Result<Self> {
        let filled: Vec<Letter> = slots.iter().flatten().copied().collect();
        let mut seen = vec![false; filled.len()];
        for &a in &filled {
            let k = a as usize;
            if k == 0 || k > filled.len() || seen[k - 1] {
                return Err(Error::InvalidArgument(format!(
                    "letters of a partial word must be 1..=i once each, found {a}"
                )));
            }
            seen[k - 1] = true;
        }
        Ok(PartialWord(slots))
    }

    pub fn slots(&self) -> &[Option<Letter>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`, the number of letters placed.
    pub fn filled(&self) -> usize {
        self.0.iter().filter(|s| s.is_some()).count()
    }

    /// 1-indexed positions of the blanks.
    pub fn blank_positions(&self) -> Vec<usize> {
        (1..=self.0.len())
            .filter(|&p| self.0[p - 1].is_none())
            .collect()
    }

    /// Distances from `letter` to every blank, if `letter` is present.
    pub fn distances_to_blanks(&self, letter: Letter) -> Option<DistanceMultiset> {
        let at = self.0.iter().position(|&s| s == Some(letter))?;
        Some(DistanceMultiset::from_unsorted(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_none())
                .map(|(k, _)| k.abs_diff(at))
                .collect(),
        ))
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        let letters: Option<Vec<Letter>> = self.0.iter().copied().collect();
        letters.map(Permutation::from_letters_unchecked)
    }

    /// The factor from the first to the last blank, letters replaced by
    /// filled marks.
    pub fn configuration(&self) -> Result<Configuration> {
        let first = self
            .0
            .iter()
            .position(Option::is_none)
            .ok_or(Error::NoBlank)?;
        let last = self.0.iter().rposition(Option::is_none).unwrap();
        Ok(Configuration(
            self.0[first..=last].iter().map(Option::is_some).collect(),
        ))
    }

    fn with(&self, position: usize, letter: Letter) -> PartialWord {
        let mut slots = self.0.clone();
        slots[position - 1] = Some(letter);
        PartialWord(slots)
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.0.iter().flatten().any(|&a| a > 9);
        for (k, s) in self.0.iter().enumerate() {
            if wide && k > 0 {
                f.write_str(",")?;
            }
            match s {
                Some(a) => write!(f, "{a}")?,
                None => write!(f, "{BLANK}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for PartialWord {
    type Err = Error;

    /// `213*5**4`, or comma separated when letters exceed 9.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<String> = if s.contains(',') {
            s.split(',').map(|t| t.trim().to_string()).collect()
        } else {
            s.chars().map(String::from).collect()
        };
        let slots = tokens
            .iter()
            .map(|t| match t.as_str() {
                "*" => Ok(None),
                t => t
                    .parse::<Letter>()
                    .map(Some)
                    .map_err(|e| Error::parse("partial word", s, e.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        PartialWord::new(slots).map_err(|e| Error::parse("partial word", s, e.to_string()))
    }
}

impl Serialize for PartialWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartialWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(de)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A word over {blank, filled}; `true` marks a filled slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<bool>);

impl Configuration {
    pub fn cells(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &filled in &self.0 {
            write!(f, "{}", if filled { FILLED } else { BLANK })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub word: PartialWord,
    /// Index into the previous level.
    pub parent: Option<usize>,
    /// Indices into the next level, left child first.
    pub children: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct CrossTree {
    pattern: Permutation,
    levels: Vec<Vec<TreeNode>>,
    child_counts: Vec<usize>,
    labels: BTreeMap<usize, u8>,
}

/// Builds and labels the tree of `u`.
pub fn build_tree(u: &Permutation) -> CrossTree {
    let mut tree = CrossTree::unlabeled(u);
    tree.labels = tree.label_levels();
    tree
}

impl CrossTree {
    /// The tree without level labels.
    pub fn unlabeled(u: &Permutation) -> CrossTree {
        let n = u.len();
        let pos = u.positions();
        let mut levels = vec![vec![TreeNode {
            word: PartialWord::blank(n),
            parent: None,
            children: Vec::new(),
        }]];
        let mut child_counts = Vec::with_capacity(n);

        for i in 0..n {
            let letter = (i + 1) as Letter;
            let target = DistanceMultiset::from_unsorted(
                pos[i + 1..].iter().map(|&p| p.abs_diff(pos[i])).collect(),
            );
            let mut next = Vec::new();
            let mut counts = Vec::with_capacity(levels[i].len());
            for (idx, node) in levels[i].iter_mut().enumerate() {
                let blanks = node.word.blank_positions();
                let (first, last) = (blanks[0], blanks[blanks.len() - 1]);
                let k = target.largest().unwrap_or(0);
                let mut candidates = Vec::with_capacity(2);
                if first + k <= last {
                    candidates.push(first + k);
                    candidates.push(last - k);
                }
                candidates.sort_unstable();
                candidates.dedup();
                for p in candidates {
                    if node.word.slots()[p - 1].is_some() {
                        continue;
                    }
                    let child = node.word.with(p, letter);
                    if child.distances_to_blanks(letter).as_ref() == Some(&target) {
                        node.children.push(next.len());
                        next.push(TreeNode {
                            word: child,
                            parent: Some(idx),
                            children: Vec::new(),
                        });
                    }
                }
                assert!(
                    !node.children.is_empty(),
                    "node {} of the tree of {u} has no child",
                    node.word
                );
                counts.push(node.children.len());
            }
            assert!(
                counts.iter().all(|&c| c == counts[0]),
                "child counts differ at level {i} of the tree of {u}"
            );
            child_counts.push(counts[0]);
            levels.push(next);
        }

        CrossTree {
            pattern: u.clone(),
            levels,
            child_counts,
            labels: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.pattern.len()
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    /// Levels `0..=n`; level `i` holds the words with `i` letters placed.
    pub fn levels(&self) -> &[Vec<TreeNode>] {
        &self.levels
    }

    /// Children per node of level `i`, for `i < n`.
    pub fn child_counts(&self) -> &[usize] {
        &self.child_counts
    }

    /// Bit per two-child level, keyed by the level of the parents (the
    /// children at that level receive letter `level + 1`).
    pub fn labels(&self) -> &BTreeMap<usize, u8> {
        &self.labels
    }

    /// Number of 0-labelled levels.
    pub fn k(&self) -> usize {
        self.labels.values().filter(|&&b| b == 0).count()
    }

    /// Number of 1-labelled levels.
    pub fn l(&self) -> usize {
        self.labels.values().filter(|&&b| b == 1).count()
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<Permutation> {
        self.levels[self.n()]
            .iter()
            .map(|node| node.word.to_permutation().expect("leaves are full"))
            .collect()
    }

    /// A level is labelled 0 when the two children of each node share their
    /// configuration, 1 otherwise.
    pub fn label_levels(&self) -> BTreeMap<usize, u8> {
        let mut labels = BTreeMap::new();
        for (i, &count) in self.child_counts.iter().enumerate() {
            if count != 2 {
                continue;
            }
            let mut bits = self.levels[i].iter().map(|node| {
                let [a, b] = [node.children[0], node.children[1]].map(|c| {
                    self.levels[i + 1][c]
                        .word
                        .configuration()
                        .expect("inner node")
                });
                u8::from(a != b)
            });
            let bit = bits.next().expect("levels are nonempty");
            assert!(
                bits.all(|b| b == bit),
                "labels differ within level {i} of the tree of {}",
                self.pattern
            );
            labels.insert(i, bit);
        }
        labels
    }

    /// Node indices from the root (level 0) down to leaf `leaf`.
    pub fn path(&self, leaf: usize) -> Vec<usize> {
        let n = self.n();
        let mut path = vec![0; n + 1];
        path[n] = leaf;
        for i in (0..n).rev() {
            path[i] = self.levels[i + 1][path[i + 1]]
                .parent
                .expect("non-root nodes have parents");
        }
        path
    }

    /// For each two-child level on the way to `leaf`, whether the path took
    /// the right child.
    pub fn directions(&self, leaf: usize) -> BTreeMap<usize, bool> {
        let path = self.path(leaf);
        self.labels
            .keys()
            .map(|&i| {
                let node = &self.levels[i][path[i]];
                (i, node.children[1] == path[i + 1])
            })
            .collect()
    }

    fn configuration_tuple(&self, leaf: usize) -> Vec<Configuration> {
        self.path(leaf)[..self.n()]
            .iter()
            .enumerate()
            .map(|(i, &idx)| {
                self.levels[i][idx]
                    .word
                    .configuration()
                    .expect("inner node")
            })
            .collect()
    }

    /// Leaves grouped by their configuration tuples; classes in order of
    /// their leftmost leaf, members left to right.
    pub fn partition_leaves(&self) -> TreePartition {
        let leaves = self.leaves();
        let mut index: HashMap<Vec<Configuration>, usize> = HashMap::new();
        let mut classes: Vec<Vec<Permutation>> = Vec::new();
        for (k, leaf) in leaves.into_iter().enumerate() {
            let key = self.configuration_tuple(k);
            let slot = *index.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[slot].push(leaf);
        }
        TreePartition { classes }
    }

    pub fn export(&self, format: TreeFormat) -> String {
        match format {
            TreeFormat::Dot => self.to_dot(),
            TreeFormat::Json => {
                serde_json::to_string_pretty(&self.to_export()).expect("tree export serializes")
            }
        }
    }

    pub fn to_export(&self) -> TreeExport {
        let mut edges = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            for (a, node) in level.iter().enumerate() {
                edges.extend(node.children.iter().map(|&b| [i, a, b]));
            }
        }
        TreeExport {
            n: self.n(),
            levels: self
                .levels
                .iter()
                .map(|l| l.iter().map(|node| node.word.clone()).collect())
                .collect(),
            edges,
            labels: self.labels.clone(),
            classes: self.partition_leaves().classes,
        }
    }

    fn to_dot(&self) -> String {
        let mut out = String::from("digraph cross_tree {\n");
        out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
        for (i, level) in self.levels.iter().enumerate() {
            for (a, node) in level.iter().enumerate() {
                out.push_str(&format!("  l{i}n{a} [label=\"{}\"];\n", node.word));
            }
        }
        for (i, level) in self.levels.iter().enumerate() {
            for (a, node) in level.iter().enumerate() {
                for &b in &node.children {
                    match self.labels.get(&i) {
                        Some(&bit) => {
                            let color = if bit == 0 { "green" } else { "orange" };
                            out.push_str(&format!(
                                "  l{i}n{a} -> l{}n{b} [label=\"{bit}\", color={color}];\n",
                                i + 1
                            ));
                        }
                        None => out.push_str(&format!("  l{i}n{a} -> l{}n{b};\n", i + 1)),
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Super-strong classes read off a tree, in left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartition {
    pub classes: Vec<Vec<Permutation>>,
}

impl TreePartition {
    pub fn into_class_partition(self, n: usize) -> ClassPartition {
        ClassPartition::from_classes(n, Relation::Ss, self.classes)
    }
}

pub fn partition_leaves(t: &CrossTree) -> TreePartition {
    t.partition_leaves()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFormat {
    Dot,
    Json,
}

impl FromStr for TreeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(TreeFormat::Dot),
            "json" => Ok(TreeFormat::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// JSON form of a tree. `edges` holds `[level, parent, child]` with the
/// child's index taken in `level + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeExport {
    pub n: usize,
    pub levels: Vec<Vec<PartialWord>>,
    pub edges: Vec<[usize; 3]>,
    pub labels: BTreeMap<usize, u8>,
    pub classes: Vec<Vec<Permutation>>,
}

pub fn export_tree(t: &CrossTree, format: &str) -> Result<String> {
    Ok(t.export(format.parse()?))
}
