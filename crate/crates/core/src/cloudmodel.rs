//! Weighted tags, filters and the five cloud granularities.
//!
//! A tag's weight is the number of identifiers whose split-and-stemmed word
//! set contains it; a word repeated inside one identifier counts once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extractor::{Identifier, IdentifierKind};
use crate::splitter::{split_identifier, Word};
use crate::stemmer::StemLexicon;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("minimum tag length must be at least 1")]
    ZeroMinTagLength,
    #[error("invalid tag report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum CloudKind {
    Package,
    Class,
    Attribute,
    Method,
    All,
}

impl CloudKind {
    pub const ALL: [CloudKind; 5] = [
        CloudKind::Package,
        CloudKind::Class,
        CloudKind::Attribute,
        CloudKind::Method,
        CloudKind::All,
    ];

    pub fn selects(self, kind: IdentifierKind) -> bool {
        match self {
            CloudKind::All => true,
            CloudKind::Package => kind == IdentifierKind::Package,
            CloudKind::Class => kind == IdentifierKind::Class,
            CloudKind::Attribute => kind == IdentifierKind::Attribute,
            CloudKind::Method => kind == IdentifierKind::Method,
        }
    }
}

impl From<IdentifierKind> for CloudKind {
    fn from(kind: IdentifierKind) -> Self {
        match kind {
            IdentifierKind::Package => CloudKind::Package,
            IdentifierKind::Class => CloudKind::Class,
            IdentifierKind::Attribute => CloudKind::Attribute,
            IdentifierKind::Method => CloudKind::Method,
        }
    }
}

impl fmt::Display for CloudKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CloudKind::Package => "package",
            CloudKind::Class => "class",
            CloudKind::Attribute => "attribute",
            CloudKind::Method => "method",
            CloudKind::All => "all",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FilterConfig {
    pub short_tag_enabled: bool,
    pub min_tag_length: usize,
    /// Render-time only: append `[weight]` after each label.
    pub show_frequency: bool,
    pub stop_words_enabled: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            short_tag_enabled: false,
            min_tag_length: 4,
            show_frequency: false,
            stop_words_enabled: true,
        }
    }
}

impl FilterConfig {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.min_tag_length == 0 {
            return Err(ModelError::ZeroMinTagLength);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tag {
    pub stem: Word,
    pub weight: usize,
    /// Qualified names of the contributing identifiers, in corpus order.
    /// Overloads share a name, so entries may repeat.
    pub contributors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagCloud {
    #[serde(rename = "corpus")]
    pub corpus_label: String,
    pub kind: CloudKind,
    pub filters: FilterConfig,
    pub tags: Vec<Tag>,
}

/// Distinct stems of one identifier: split, stem, then drop stop words when
/// enabled. A word is dropped if either its surface form or its stem is a
/// stop word.
pub fn tags_of_identifier(
    id: &Identifier,
    lexicon: &StemLexicon,
    cfg: &FilterConfig,
) -> BTreeSet<Word> {
    split_identifier(&id.simple_name)
        .into_iter()
        .filter_map(|word| {
            let stem = lexicon.stem(&word);
            let stopped = cfg.stop_words_enabled
                && (lexicon.is_stop_word(&word) || lexicon.is_stop_word(&stem));
            (!stopped).then_some(stem)
        })
        .collect()
}

/// Sorts tags ascending by stem.
pub fn order_tags(tags: &mut [Tag]) {
    tags.sort_by(|a, b| a.stem.cmp(&b.stem));
}

pub fn build_tags(
    ids: &[Identifier],
    kind: CloudKind,
    lexicon: &StemLexicon,
    cfg: &FilterConfig,
) -> Vec<Tag> {
    let per_identifier: Vec<(BTreeSet<Word>, &str)> = ids
        .par_iter()
        .filter(|id| kind.selects(id.kind))
        .map(|id| {
            (
                tags_of_identifier(id, lexicon, cfg),
                id.qualified_name.as_str(),
            )
        })
        .collect();

    let mut by_stem: BTreeMap<Word, Vec<String>> = BTreeMap::new();
    for (stems, qualified) in per_identifier {
        for stem in stems {
            by_stem.entry(stem).or_default().push(qualified.to_owned());
        }
    }
    let mut tags: Vec<Tag> = by_stem
        .into_iter()
        .map(|(stem, contributors)| Tag {
            stem,
            weight: contributors.len(),
            contributors,
        })
        .collect();
    order_tags(&mut tags);
    tags
}

pub fn apply_short_tag_filter(tags: Vec<Tag>, cfg: &FilterConfig) -> Vec<Tag> {
    if !cfg.short_tag_enabled {
        return tags;
    }
    tags.into_iter()
        .filter(|t| t.stem.chars().count() >= cfg.min_tag_length)
        .collect()
}

pub fn build_cloud(
    corpus_label: &str,
    ids: &[Identifier],
    kind: CloudKind,
    lexicon: &StemLexicon,
    filters: FilterConfig,
) -> Result<TagCloud, ModelError> {
    filters.validate()?;
    let tags = apply_short_tag_filter(build_tags(ids, kind, lexicon, &filters), &filters);
    Ok(TagCloud {
        corpus_label: corpus_label.to_owned(),
        kind,
        filters,
        tags,
    })
}

impl TagCloud {
    pub fn max_weight(&self) -> usize {
        self.tags.iter().map(|t| t.weight).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> usize {
        self.tags.iter().map(|t| t.weight).min().unwrap_or(0)
    }

    pub fn get(&self, stem: &str) -> Option<&Tag> {
        self.tags
            .binary_search_by(|t| t.stem.as_str().cmp(stem))
            .ok()
            .map(|i| &self.tags[i])
    }

    pub fn to_json(&self) -> Result<String, ModelError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    /// `stem,weight` rows.
    pub fn to_csv(&self) -> Result<String, ModelError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["stem", "weight"])?;
        for t in &self.tags {
            w.write_record([t.stem.as_str(), &t.weight.to_string()])?;
        }
        Ok(String::from_utf8(
            w.into_inner()
                .map_err(|e| csv::Error::from(e.into_error()))?,
        )
        .expect("csv of utf-8 input"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CloudStats {
    pub package_count: usize,
    pub class_count: usize,
    pub attribute_count: usize,
    pub method_count: usize,
    pub identifier_count: usize,
    pub tag_count: usize,
    pub elapsed_ms: u64,
}

/// `tags` should be the unfiltered All cloud of the same identifiers.
pub fn compute_stats(ids: &[Identifier], tags: &[Tag], elapsed_ms: u64) -> CloudStats {
    let count = |k| ids.iter().filter(|id| id.kind == k).count();
    let stats = CloudStats {
        package_count: count(IdentifierKind::Package),
        class_count: count(IdentifierKind::Class),
        attribute_count: count(IdentifierKind::Attribute),
        method_count: count(IdentifierKind::Method),
        identifier_count: ids.len(),
        tag_count: tags.len(),
        elapsed_ms,
    };
    debug_assert_eq!(
        stats.identifier_count,
        stats.package_count + stats.class_count + stats.attribute_count + stats.method_count
    );
    stats
}

const STATS_HEADER: [&str; 8] = [
    "corpus",
    "packages",
    "classes",
    "attributes",
    "methods",
    "identifiers",
    "tags",
    "elapsed_ms",
];

impl CloudStats {
    fn fields(&self) -> [String; 7] {
        [
            self.package_count,
            self.class_count,
            self.attribute_count,
            self.method_count,
            self.identifier_count,
            self.tag_count,
            self.elapsed_ms as usize,
        ]
        .map(|n| n.to_string())
    }

    pub fn to_csv(&self, corpus: &str) -> Result<String, ModelError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(STATS_HEADER)?;
        let mut row = vec![corpus.to_owned()];
        row.extend(self.fields());
        w.write_record(&row)?;
        Ok(String::from_utf8(
            w.into_inner()
                .map_err(|e| csv::Error::from(e.into_error()))?,
        )
        .expect("csv of utf-8 input"))
    }

    /// Two-column aligned table; elapsed time is wall-clock and varies
    /// between runs and machines.
    pub fn to_table(&self, corpus: &str) -> String {
        let labels = [
            "# of packages",
            "# of classes",
            "# of attributes",
            "# of methods",
            "# of identifiers",
            "# of tags",
            "Execution time (ms, wall-clock)",
        ];
        let fields = self.fields();
        let width = labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let value_width = fields
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(corpus.len());
        let mut out = format!("{:<width$}  {:>value_width$}\n", "Case study", corpus);
        for (label, value) in labels.iter().zip(&fields) {
            out.push_str(&format!("{label:<width$}  {value:>value_width$}\n"));
        }
        out
    }
}
