//! Command-line front end.
//!
//! [`run`] parses arguments and renders results into an [`Outcome`] rather
//! than printing, so the whole interface is testable in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::clusters::{blocked_count, compose_embeddings, PreCluster};
use crate::embedding::{embedding_set, EmbeddingSet};
use crate::enumeration::{class_statistics, enumerate_classes, Relation};
use crate::equivalence::{
    difference_profile, mcrt_witness_search, plus_multiset, reversal_class_kind, ss_class,
    ss_equivalent,
};
use crate::error::{Error, Result};
use crate::genfun::{default_bounds, first_discrepancy, grid_size, series, SeriesKind};
use crate::tree::{build_tree, TreeFormat};
use crate::words::{Letter, Permutation, Word};

/// Words enumerated by `genfun` without `--force`.
pub const GENFUN_GUARD: usize = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "wilflab",
    version,
    about = "Embeddings, minimal clusters and super-strong Wilf classes of permutations"
)]
struct Cli {
    /// Output format; dot is only meaningful for `tree`.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Length, norm, letter counts and, for permutations, inverse and class kind.
    Info { word: Word },
    /// Positions where PATTERN embeds in TEXT.
    Embed { pattern: Word, text: Word },
    /// Minimal cluster of WORD on an embedding set.
    Cluster {
        word: Word,
        #[arg(long)]
        set: EmbeddingSet,
        /// Pad to a prescribed length with 1s.
        #[arg(long, requires = "length")]
        extended: bool,
        #[arg(long)]
        length: Option<usize>,
        /// Print the stacked copies above the cluster.
        #[arg(long)]
        tableau: bool,
    },
    /// Embedding set of a cluster of a cluster.
    Compose {
        first: EmbeddingSet,
        second: EmbeddingSet,
    },
    /// Copies of each letter sharing a column with a larger letter.
    Blocked {
        perm: Permutation,
        #[arg(long)]
        set: EmbeddingSet,
        #[arg(long)]
        letter: Option<Letter>,
    },
    /// Distance multisets from each letter to the larger ones.
    Plus {
        perm: Permutation,
        #[arg(long)]
        letter: Option<Letter>,
    },
    /// Difference profile.
    Profile { perm: Permutation },
    /// Super-strong Wilf equivalence test.
    Sstest { u: Permutation, v: Permutation },
    /// Super-strong Wilf class, sorted.
    Ssclass { perm: Permutation },
    /// Cross-equivalence class, sorted.
    Crossclass { perm: Permutation },
    /// Search small embedding sets for clusters that are not rearrangements.
    Witness {
        u: Word,
        v: Word,
        #[arg(long, default_value_t = 2)]
        max_shifts: usize,
    },
    /// Cross-equivalence tree.
    Tree { perm: Permutation },
    /// All classes of S_n.
    Enumerate {
        n: usize,
        #[arg(long)]
        relation: Relation,
        /// Print class count and size histogram instead of the classes.
        #[arg(long)]
        stats: bool,
        /// Allow n above the guard.
        #[arg(long)]
        force: bool,
        /// Also write the classes as JSON into this directory (classes-nN-RELATION.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated generating-function coefficients.
    Genfun {
        word: Word,
        #[arg(long, default_value = "F")]
        series: SeriesKind,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        max_norm: Option<u64>,
        /// Compare F (or A with --series A) against another pattern instead.
        #[arg(long)]
        compare: Option<Word>,
        #[arg(long)]
        force: bool,
    },
}

/// Exit status and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome::failed(1, rendered)
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match execute(cli.command, cli.format) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            Outcome::ok(out)
        }
        Err(e) => Outcome::failed(if e.is_usage() { 1 } else { 2 }, format!("error: {e}\n")),
    }
}

/// Sizes the global rayon pool from `WILFLAB_THREADS`; 0 or unset leaves
/// the default.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("WILFLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|e| Error::parse("WILFLAB_THREADS", &raw, format!("{e}")))?;
    if threads > 0 {
        // Fails only if a pool already exists, in which case it stays.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(command: Command, format: OutputFormat) -> Result<String> {
    let json = match (format, &command) {
        (OutputFormat::Dot, Command::Tree { .. }) => false,
        (OutputFormat::Dot, _) => {
            return Err(Error::UnknownFormat(
                "dot (only tree renders as dot)".into(),
            ))
        }
        (f, _) => f == OutputFormat::Json,
    };

    match command {
        Command::Info { word } => {
            let (alphabet, counts) = word.letter_stats();
            let perm = Permutation::try_from(word.clone()).ok();
            if json {
                let mut v = json!({
                    "word": word,
                    "length": word.len(),
                    "norm": word.norm(),
                    "alphabet": alphabet,
                    "counts": counts,
                    "reversal": word.reversal(),
                    "permutation": perm.is_some(),
                });
                if let Some(p) = &perm {
                    v["inverse"] = json!(p.inverse());
                    v["class_kind"] = json!(reversal_class_kind(p));
                }
                return Ok(to_json(&v));
            }
            let mut out = String::new();
            writeln!(out, "word {word}").unwrap();
            writeln!(out, "length {}", word.len()).unwrap();
            writeln!(out, "norm {}", word.norm()).unwrap();
            writeln!(out, "alphabet {}", lines(alphabet).replace('\n', ",")).unwrap();
            let counts: Vec<String> = counts.iter().map(|(a, c)| format!("{a}:{c}")).collect();
            writeln!(out, "counts {}", counts.join(" ")).unwrap();
            writeln!(out, "reversal {}", word.reversal()).unwrap();
            writeln!(out, "permutation {}", perm.is_some()).unwrap();
            if let Some(p) = &perm {
                writeln!(out, "inverse {}", p.inverse()).unwrap();
                writeln!(out, "class-kind {}", reversal_class_kind(p)).unwrap();
            }
            Ok(out)
        }

        Command::Embed { pattern, text } => {
            let em = embedding_set(&pattern, &text)?;
            if json {
                return Ok(to_json(&json!({
                    "pattern": pattern,
                    "text": text,
                    "positions": em,
                })));
            }
            Ok(lines(em).replace('\n', ","))
        }

        Command::Cluster {
            word,
            set,
            extended,
            length,
            tableau,
        } => {
            let pre = match (extended, length) {
                (true, Some(len)) => PreCluster::extended(&word, &set, len)?,
                (false, None) => PreCluster::new(&word, &set)?,
                (false, Some(_)) => {
                    return Err(Error::parse("cluster", "--length", "needs --extended"))
                }
                (true, None) => unreachable!("clap enforces --length"),
            };
            let cluster = pre.column_max();
            if json {
                return Ok(to_json(&json!({
                    "word": word,
                    "set": set,
                    "length": cluster.len(),
                    "norm": cluster.norm(),
                    "cluster": cluster,
                })));
            }
            Ok(if tableau {
                pre.tableau()
            } else {
                cluster.to_string()
            })
        }

        Command::Compose { first, second } => {
            let composed = compose_embeddings(&first, &second)?;
            if json {
                return Ok(to_json(&composed));
            }
            Ok(composed.to_string())
        }

        Command::Blocked { perm, set, letter } => {
            let letters: Vec<Letter> = match letter {
                Some(i) => vec![i],
                None => (1..=perm.len() as Letter).collect(),
            };
            let counts = letters
                .iter()
                .map(|&i| Ok((i, blocked_count(&perm, &set, i)?)))
                .collect::<Result<BTreeMap<Letter, usize>>>()?;
            if json {
                return Ok(to_json(&counts));
            }
            Ok(lines(counts.iter().map(|(i, c)| format!("{i} {c}"))))
        }

        Command::Plus { perm, letter } => {
            let letters: Vec<Letter> = match letter {
                Some(i) => vec![i],
                None => (1..perm.len() as Letter).collect(),
            };
            let sets = letters
                .iter()
                .map(|&i| Ok((i, plus_multiset(&perm, i)?)))
                .collect::<Result<BTreeMap<_, _>>>()?;
            if json {
                return Ok(to_json(&sets));
            }
            Ok(lines(sets.iter().map(|(i, d)| format!("{i} {d}"))))
        }

        Command::Profile { perm } => {
            let profile = difference_profile(&perm);
            if json {
                return Ok(to_json(&profile));
            }
            Ok(profile.to_string())
        }

        Command::Sstest { u, v } => {
            let eq = ss_equivalent(&u, &v)?;
            Ok(if json { to_json(&eq) } else { eq.to_string() })
        }

        Command::Ssclass { perm } => {
            let class = ss_class(&perm);
            Ok(if json { to_json(&class) } else { lines(class) })
        }

        Command::Crossclass { perm } => {
            let mut class = build_tree(&perm).leaves();
            class.sort();
            Ok(if json { to_json(&class) } else { lines(class) })
        }

        Command::Witness { u, v, max_shifts } => {
            let verdict = mcrt_witness_search(&u, &v, max_shifts)?;
            Ok(if json {
                to_json(&verdict)
            } else {
                verdict.to_string()
            })
        }

        Command::Tree { perm } => {
            let tree = build_tree(&perm);
            match format {
                OutputFormat::Dot => Ok(tree.export(TreeFormat::Dot)),
                OutputFormat::Json => Ok(tree.export(TreeFormat::Json)),
                OutputFormat::Text => {
                    let mut out = String::new();
                    for (i, level) in tree.levels().iter().enumerate() {
                        let words: Vec<String> = level.iter().map(|n| n.word.to_string()).collect();
                        write!(out, "level {i}:").unwrap();
                        if let Some(c) = tree.child_counts().get(i) {
                            write!(out, " children {c}").unwrap();
                        }
                        if let Some(b) = tree.labels().get(&i) {
                            write!(out, " label {b}").unwrap();
                        }
                        writeln!(out, " {}", words.join(" ")).unwrap();
                    }
                    writeln!(out, "k {} l {}", tree.k(), tree.l()).unwrap();
                    for class in tree.partition_leaves().classes {
                        writeln!(out, "class {}", lines(class).replace('\n', " ")).unwrap();
                    }
                    Ok(out)
                }
            }
        }

        Command::Enumerate {
            n,
            relation,
            stats,
            force,
            out,
        } => {
            let part = enumerate_classes(n, relation, force)?;
            if let Some(dir) = out {
                part.write_json(&dir)
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            }
            if stats {
                let s = class_statistics(&part);
                if json {
                    return Ok(to_json(&s));
                }
                let mut text = format!(
                    "classes {}\ntotal {}\nmin {}\nmax {}\n",
                    s.class_count, s.total, s.min_size, s.max_size
                );
                for (size, count) in &s.histogram {
                    writeln!(text, "size {size} {count}").unwrap();
                }
                return Ok(text);
            }
            if json {
                return Ok(to_json(&part.to_document()));
            }
            Ok(lines(
                part.classes
                    .values()
                    .map(|members| lines(members).replace('\n', " ")),
            ))
        }

        Command::Genfun {
            word,
            series: kind,
            max_len,
            max_norm,
            compare,
            force,
        } => {
            let (dl, dm) = default_bounds(&word);
            let (max_len, max_norm) = (max_len.unwrap_or(dl), max_norm.unwrap_or(dm));
            let enumerates = kind != SeriesKind::M || compare.is_some();
            if enumerates && !force {
                let size = grid_size(max_len, max_norm);
                if size > GENFUN_GUARD.into() {
                    return Err(Error::GuardExceeded {
                        what: "words in the grid",
                        value: size.to_usize().unwrap_or(usize::MAX),
                        limit: GENFUN_GUARD,
                    });
                }
            }
            if let Some(other) = compare {
                let strong = match kind {
                    SeriesKind::F => false,
                    SeriesKind::A => true,
                    SeriesKind::M => {
                        return Err(Error::parse("series", "M", "--compare takes F or A"))
                    }
                };
                let found = first_discrepancy(&word, &other, max_len, max_norm, strong)?;
                if json {
                    return Ok(to_json(&json!({
                        "series": kind,
                        "max_length": max_len,
                        "max_norm": max_norm,
                        "discrepancy": found,
                    })));
                }
                return Ok(match found {
                    None => "no discrepancy found".to_string(),
                    Some(d) => format!("discrepancy at length {} norm {}", d.length, d.norm),
                });
            }
            let s = series(kind, &word, max_len, max_norm)?;
            Ok(if json { to_json(&s) } else { s.dump() })
        }
    }
}
