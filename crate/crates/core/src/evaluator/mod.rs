//! Per-tag precision, recall and F-measure against the brute-force oracle.
//!
//! With scalar counts, the correctly retrieved part of a tag's frequency is
//! `min(cloud, oracle)`. Precision divides it by the cloud frequency, recall
//! by the oracle frequency; a zero denominator counts as vacuously perfect.

pub mod oracle;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cloudmodel::TagCloud;
use crate::extractor::Identifier;
use crate::stemmer::StemLexicon;

pub use oracle::{naive_split, naive_stem, oracle_frequency, oracle_table};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(
        "tag {stem:?} lists contributor {contributor:?}, which is not an identifier of this corpus"
    )]
    CorpusMismatch { stem: String, contributor: String },
    #[error("report serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalRow {
    pub stem: String,
    pub cloud_frequency: usize,
    pub oracle_frequency: usize,
    pub precision: f64,
    pub recall: f64,
    pub f_measure: f64,
}

impl EvalRow {
    pub fn new(stem: impl Into<String>, cloud_frequency: usize, oracle_frequency: usize) -> Self {
        let (precision, recall, f_measure) = metrics(cloud_frequency, oracle_frequency);
        Self {
            stem: stem.into(),
            cloud_frequency,
            oracle_frequency,
            precision,
            recall,
            f_measure,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.precision == 1.0 && self.recall == 1.0 && self.f_measure == 1.0
    }
}

/// `(precision, recall, f_measure)` for one tag.
pub fn metrics(cloud: usize, oracle: usize) -> (f64, f64, f64) {
    let correct = cloud.min(oracle) as f64;
    let precision = if cloud > 0 {
        correct / cloud as f64
    } else {
        1.0
    };
    let recall = if oracle > 0 {
        correct / oracle as f64
    } else {
        1.0
    };
    let f = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    (precision, recall, f)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    #[serde(rename = "corpus")]
    pub corpus_label: String,
    pub rows: Vec<EvalRow>,
    pub all_perfect: bool,
}

/// Evaluates every tag of `cloud` against the oracle over `ids`.
///
/// Stems the oracle finds but the cloud lacks are reported too, with a cloud
/// frequency of zero, so a dropped tag shows up as a recall failure.
pub fn evaluate(
    cloud: &TagCloud,
    ids: &[Identifier],
    lexicon: &StemLexicon,
) -> Result<EvalReport, EvalError> {
    let selected: Vec<&Identifier> = ids
        .iter()
        .filter(|id| cloud.kind.selects(id.kind))
        .collect();

    let mut available: HashMap<&str, usize> = HashMap::new();
    for id in &selected {
        *available.entry(id.qualified_name.as_str()).or_insert(0) += 1;
    }
    for tag in &cloud.tags {
        let mut used: HashMap<&str, usize> = HashMap::new();
        for c in &tag.contributors {
            let n = used.entry(c.as_str()).or_insert(0);
            *n += 1;
            if *n > available.get(c.as_str()).copied().unwrap_or(0) {
                return Err(EvalError::CorpusMismatch {
                    stem: tag.stem.to_string(),
                    contributor: c.clone(),
                });
            }
        }
    }

    let filters = &cloud.filters;
    let mut table = oracle_table(
        selected.iter().copied(),
        lexicon,
        filters.stop_words_enabled,
    );
    if filters.short_tag_enabled {
        table.retain(|stem, _| stem.chars().count() >= filters.min_tag_length);
    }

    let mut rows: Vec<EvalRow> = cloud
        .tags
        .iter()
        .map(|tag| {
            let expected = table.remove(tag.stem.as_str()).unwrap_or(0);
            EvalRow::new(tag.stem.as_str(), tag.weight, expected)
        })
        .collect();
    rows.extend(table.into_iter().map(|(stem, n)| EvalRow::new(stem, 0, n)));
    rows.sort_by(|a, b| a.stem.cmp(&b.stem));

    let all_perfect = rows.iter().all(EvalRow::is_perfect);
    Ok(EvalReport {
        corpus_label: cloud.corpus_label.clone(),
        rows,
        all_perfect,
    })
}

impl EvalReport {
    pub fn imperfect_rows(&self) -> impl Iterator<Item = &EvalRow> {
        self.rows.iter().filter(|r| !r.is_perfect())
    }

    pub fn to_json(&self) -> Result<String, EvalError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Columns: stem, cloudFreq, oracleFreq, precision, recall, fMeasure.
    pub fn to_csv(&self) -> Result<String, EvalError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "stem",
            "cloudFreq",
            "oracleFreq",
            "precision",
            "recall",
            "fMeasure",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.stem.clone(),
                r.cloud_frequency.to_string(),
                r.oracle_frequency.to_string(),
                format!("{:.4}", r.precision),
                format!("{:.4}", r.recall),
                format!("{:.4}", r.f_measure),
            ])?;
        }
        Ok(String::from_utf8(
            w.into_inner()
                .map_err(|e| csv::Error::from(e.into_error()))?,
        )
        .expect("csv of utf-8 input"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloudmodel::{build_cloud, CloudKind, FilterConfig};
    use crate::extractor::IdentifierKind;
    use std::path::PathBuf;

    fn ids(names: &[&str]) -> Vec<Identifier> {
        names
            .iter()
            .enumerate()
            .map(|(i, n)| Identifier {
                kind: IdentifierKind::Method,
                simple_name: (*n).to_owned(),
                qualified_name: format!("A.{n}"),
                file: PathBuf::from("A.java"),
                line: 1,
                ordinal: i,
            })
            .collect()
    }

    #[test]
    fn metric_formulas() {
        assert_eq!(metrics(25, 25), (1.0, 1.0, 1.0));
        let (p, r, f) = metrics(30, 25);
        assert!((p - 25.0 / 30.0).abs() < 1e-12);
        assert_eq!(r, 1.0);
        assert!((f - 2.0 * p / (p + 1.0)).abs() < 1e-12);
        assert!((f - 0.909_090_909).abs() < 1e-6);
        assert_eq!(metrics(0, 5), (1.0, 0.0, 0.0));
        assert_eq!(metrics(0, 0), (1.0, 1.0, 1.0));
    }

    #[test]
    fn pipeline_cloud_is_perfect() {
        let corpus = ids(&[
            "getEntity",
            "setEntity",
            "entities",
            "parseXMLElement",
            "DrawDraw",
        ]);
        let cloud = build_cloud(
            "t",
            &corpus,
            CloudKind::All,
            StemLexicon::embedded(),
            FilterConfig::default(),
        )
        .unwrap();
        let report = evaluate(&cloud, &corpus, StemLexicon::embedded()).unwrap();
        assert!(report.all_perfect, "{report:?}");
        assert_eq!(report.rows.len(), cloud.tags.len());
        let entity = report.rows.iter().find(|r| r.stem == "entity").unwrap();
        assert_eq!((entity.cloud_frequency, entity.oracle_frequency), (3, 3));
    }

    #[test]
    fn corrupted_weight_is_caught() {
        let corpus = ids(&["entity"; 25]);
        let mut cloud = build_cloud(
            "t",
            &corpus,
            CloudKind::All,
            StemLexicon::embedded(),
            FilterConfig::default(),
        )
        .unwrap();
        cloud.tags[0].weight = 30;
        let report = evaluate(&cloud, &corpus, StemLexicon::embedded()).unwrap();
        assert!(!report.all_perfect);
        let row = &report.rows[0];
        assert!((row.precision - 0.8333).abs() < 1e-4);
        assert_eq!(row.recall, 1.0);
        assert!((row.f_measure - 0.9091).abs() < 1e-4);
    }

    #[test]
    fn missing_tag_lowers_recall() {
        let corpus = ids(&["drawShape"]);
        let mut cloud = build_cloud(
            "t",
            &corpus,
            CloudKind::All,
            StemLexicon::embedded(),
            FilterConfig::default(),
        )
        .unwrap();
        cloud.tags.retain(|t| t.stem.as_str() != "shape");
        let report = evaluate(&cloud, &corpus, StemLexicon::embedded()).unwrap();
        let shape = report.rows.iter().find(|r| r.stem == "shape").unwrap();
        assert_eq!((shape.cloud_frequency, shape.recall), (0, 0.0));
        assert!(!report.all_perfect);
    }

    #[test]
    fn empty_is_vacuously_perfect() {
        let cloud = build_cloud(
            "t",
            &[],
            CloudKind::All,
            StemLexicon::embedded(),
            FilterConfig::default(),
        )
        .unwrap();
        let report = evaluate(&cloud, &[], StemLexicon::embedded()).unwrap();
        assert!(report.rows.is_empty());
        assert!(report.all_perfect);
        assert_eq!(
            oracle_frequency("anything", &[], StemLexicon::embedded()),
            0
        );
    }

    #[test]
    fn foreign_contributor_is_a_contract_error() {
        let corpus = ids(&["drawShape"]);
        let cloud = build_cloud(
            "t",
            &corpus,
            CloudKind::All,
            StemLexicon::embedded(),
            FilterConfig::default(),
        )
        .unwrap();
        let other = ids(&["drawLine"]);
        assert!(matches!(
            evaluate(&cloud, &other, StemLexicon::embedded()),
            Err(EvalError::CorpusMismatch { .. })
        ));
    }

    #[test]
    fn csv_columns() {
        let report = EvalReport {
            corpus_label: "t".into(),
            rows: vec![EvalRow::new("entity", 30, 25)],
            all_perfect: false,
        };
        assert_eq!(
            report.to_csv().unwrap(),
            "stem,cloudFreq,oracleFreq,precision,recall,fMeasure\nentity,30,25,0.8333,1.0000,0.9091\n"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn metric_bounds_and_symmetry(c in 0usize..200, o in 0usize..200) {
                let (p, r, f) = metrics(c, o);
                for v in [p, r, f] {
                    prop_assert!((0.0..=1.0).contains(&v));
                }
                prop_assert!(f <= p.max(r) + 1e-12);
                prop_assert_eq!(f == 1.0, p == 1.0 && r == 1.0);
                let (p2, r2, f2) = metrics(o, c);
                prop_assert_eq!((p2, r2), (r, p));
                prop_assert!((f2 - f).abs() < 1e-12);
            }
        }
    }
}
