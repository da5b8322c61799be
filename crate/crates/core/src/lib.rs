//! Words over the positive integers ordered by letterwise domination of
//! factors, and the super-strong Wilf equivalence of permutations.
//!
//! Modules build on one another bottom-up: [`words`] and [`embedding`]
//! give the objects, [`clusters`] the minimal clusters, [`equivalence`] the
//! tests, [`tree`] and [`enumeration`] the class structure and [`genfun`]
//! truncated counting evidence.

pub mod cli;
pub mod clusters;
pub mod embedding;
pub mod enumeration;
pub mod equivalence;
pub mod error;
pub mod genfun;
pub mod tree;
pub mod words;

pub use clusters::{
    blocked_count, compose_embeddings, extended_minimal_cluster, minimal_cluster, PreCluster,
};
pub use embedding::{embedding_set, embeds_at, leq_factor, EmbeddingSet};
pub use enumeration::{class_statistics, enumerate_classes, ClassPartition, Relation};
pub use equivalence::{
    adjacent_top_swap, cross_equivalent, difference_profile, mcrt_check, mcrt_witness_search,
    plus_multiset, reversal_class_kind, ss_class, ss_equivalent, DifferenceProfile,
    ReversalClassKind, Verdict,
};
pub use error::{Error, Result};
pub use genfun::{
    count_U, count_W, count_geq, em_count_distribution, minimal_cluster_gf_terms,
    strong_truncated_equal, wilf_truncated_equal, TruncatedSeries,
};
pub use tree::{build_tree, partition_leaves, CrossTree, PartialWord};
pub use words::{DistanceMultiset, Letter, Permutation, Word};
