//! The group corpus the verification suite runs over.
//!
//! Corpus files are JSON:
//! `{"groups": [{"source": str, "name": str?, "aut_only": bool?,
//!   "max_pairs": int?}], "max_order": int?, "max_pairs": int?,
//!   "seed": int?}`.

use std::path::Path;

use serde::Deserialize;

use reidemeister::group::cycles_to_permutation;
use reidemeister::{FiniteGroup, DEFAULT_ORDER_CAP};

use crate::sources;
use crate::CliError;

/// Default per-group cap on sampled endomorphism pairs.
pub const DEFAULT_MAX_PAIRS: usize = 2000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    /// URI or path when the group is directly addressable from the CLI.
    pub source: Option<String>,
    /// Sweep automorphisms instead of all endomorphisms.
    pub aut_only: bool,
    pub max_pairs: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub max_order: Option<usize>,
    pub max_pairs: usize,
    pub seed: u64,
}

impl Corpus {
    /// Entries surviving the order cap, in corpus order.
    pub fn active_entries(&self) -> impl Iterator<Item = &CorpusEntry> {
        let cap = self.max_order;
        self.entries
            .iter()
            .filter(move |e| cap.is_none_or(|m| e.group.order() <= m))
    }
}

fn builtin_entry(uri: &str) -> CorpusEntry {
    let group = reidemeister::group::from_uri(uri).expect("default corpus uri");
    CorpusEntry {
        name: group.name().to_string(),
        group,
        source: Some(uri.to_string()),
        aut_only: false,
        max_pairs: None,
    }
}

/// The Frobenius group of order 21: a 7-cycle and a multiplier of order 3.
fn frobenius21() -> FiniteGroup {
    let x = cycles_to_permutation(7, &[vec![1, 2, 3, 4, 5, 6, 7]]).unwrap();
    let y = cycles_to_permutation(7, &[vec![2, 3, 5], vec![4, 7, 6]]).unwrap();
    FiniteGroup::from_permutations(7, &[x, y], "F21").unwrap()
}

fn alternating5() -> FiniteGroup {
    let a = cycles_to_permutation(5, &[vec![1, 2, 3, 4, 5]]).unwrap();
    let b = cycles_to_permutation(5, &[vec![1, 2, 3]]).unwrap();
    FiniteGroup::from_permutations(5, &[a, b], "A5").unwrap()
}

/// The standard corpus: every built-in family member of order <= 16, the
/// symmetric groups on 3 and 4 points, the order-32 example group, odd
/// orders up to 27 including a nonabelian order-21 group, and A5
/// (automorphism side only).
pub fn default_corpus() -> Corpus {
    let mut entries = Vec::new();
    for n in 1..=16 {
        entries.push(builtin_entry(&format!("builtin:cyclic:{n}")));
    }
    entries.push(builtin_entry("builtin:cyclic:21"));
    entries.push(builtin_entry("builtin:cyclic:27"));
    for n in 2..=8 {
        entries.push(builtin_entry(&format!("builtin:dihedral:{n}")));
    }
    for factors in [
        "2,2", "2,4", "2,2,2", "3,3", "2,6", "4,4", "2,8", "2,2,4", "2,2,2,2", "3,9",
    ] {
        entries.push(builtin_entry(&format!("builtin:abelian:{factors}")));
    }
    entries.push(builtin_entry("builtin:product:cyclic:2|dihedral:4"));
    entries.push(builtin_entry("builtin:symmetric:3"));
    entries.push(builtin_entry("builtin:symmetric:4"));
    entries.push(builtin_entry("builtin:paper32"));
    entries.push(CorpusEntry {
        name: "F21".into(),
        group: frobenius21(),
        source: None,
        aut_only: false,
        max_pairs: None,
    });
    entries.push(CorpusEntry {
        name: "A5".into(),
        group: alternating5(),
        source: None,
        aut_only: true,
        max_pairs: None,
    });
    Corpus {
        entries,
        max_order: None,
        max_pairs: DEFAULT_MAX_PAIRS,
        seed: DEFAULT_SEED,
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    groups: Vec<CorpusFileEntry>,
    #[serde(default)]
    max_order: Option<usize>,
    #[serde(default)]
    max_pairs: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFileEntry {
    source: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    aut_only: bool,
    #[serde(default)]
    max_pairs: Option<usize>,
}

/// Loads a corpus file; relative group-file paths resolve against the
/// corpus file's directory.
pub fn load_corpus(path: &Path) -> Result<Corpus, CliError> {
    let desc = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::load(&desc, e))?;
    let file: CorpusFile =
        serde_json::from_str(&text).map_err(|e| CliError::load(&desc, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut entries = Vec::new();
    for entry in file.groups {
        let source = if entry.source.starts_with("builtin:") {
            entry.source.clone()
        } else {
            base.join(&entry.source).display().to_string()
        };
        let group = sources::load_group(&source, DEFAULT_ORDER_CAP)?;
        entries.push(CorpusEntry {
            name: entry.name.unwrap_or_else(|| group.name().to_string()),
            group,
            source: Some(source),
            aut_only: entry.aut_only,
            max_pairs: entry.max_pairs,
        });
    }
    Ok(Corpus {
        entries,
        max_order: file.max_order,
        max_pairs: file.max_pairs.unwrap_or(DEFAULT_MAX_PAIRS),
        seed: file.seed.unwrap_or(DEFAULT_SEED),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_corpus_loads() {
        let corpus = default_corpus();
        assert!(corpus.entries.len() > 35);
        let f21 = corpus.entries.iter().find(|e| e.name == "F21").unwrap();
        assert_eq!(f21.group.order(), 21);
        assert!(!f21.group.is_abelian());
        let a5 = corpus.entries.iter().find(|e| e.name == "A5").unwrap();
        assert_eq!(a5.group.order(), 60);
        assert!(a5.aut_only);
        assert!(!a5.group.is_solvable());
        // Odd orders demanded by the congruence properties all appear.
        for odd in [1, 3, 5, 7, 9, 15, 21, 27] {
            assert!(corpus.entries.iter().any(|e| e.group.order() == odd));
        }
    }

    #[test]
    fn order_cap_filters_entries() {
        let mut corpus = default_corpus();
        corpus.max_order = Some(16);
        assert!(corpus.active_entries().all(|e| e.group.order() <= 16));
        assert!(corpus.active_entries().count() > 30);
    }
}
