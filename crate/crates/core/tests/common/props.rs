//! Randomized property checks shared by the property suite and the
//! acceptance run. Each `check_*` runs `cases` generated inputs and returns
//! the first minimized counterexample as an error string.

use std::collections::BTreeMap;
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use codecloud::cloudmodel::{
    apply_short_tag_filter, build_cloud, build_tags, CloudKind, FilterConfig,
};
use codecloud::evaluator::evaluate;
use codecloud::extractor::{Identifier, IdentifierKind};
use codecloud::renderer::{font_size_for, RenderConfig};
use codecloud::splitter::split_identifier;
use codecloud::stemmer::StemLexicon;

pub const CASES: u32 = 1000;

const WORDS: &[&str] = &[
    "draw",
    "drawing",
    "drew",
    "drawn",
    "shape",
    "shapes",
    "write",
    "writing",
    "wrote",
    "written",
    "perform",
    "performed",
    "entity",
    "entities",
    "element",
    "elements",
    "exception",
    "exceptions",
    "node",
    "nodes",
    "parse",
    "parsing",
    "parsed",
    "get",
    "set",
    "settings",
    "is",
    "has",
    "to",
    "of",
    "the",
    "index",
    "indices",
    "box",
    "boxes",
    "class",
    "classes",
    "status",
    "stopped",
    "copies",
    "args",
    "ids",
    "xml",
    "http",
    "value",
    "by",
];

fn word_piece() -> impl Strategy<Value = String> {
    prop_oneof![
        4 => prop::sample::select(WORDS).prop_map(str::to_owned),
        2 => "[a-z]{1,8}",
        1 => "[A-Z]{1,4}",
    ]
}

/// Identifier names: camel-case phrases over a stemming-heavy vocabulary,
/// raw Java-identifier strings, and strings with non-ASCII letters.
pub fn identifier_name() -> impl Strategy<Value = String> {
    let camel = (
        prop::collection::vec(word_piece(), 1..5),
        prop::collection::vec(0u8..6, 5),
        any::<bool>(),
    )
        .prop_map(|(words, seps, upper_first)| {
            let mut out = String::new();
            for (i, w) in words.iter().enumerate() {
                match seps[i % seps.len()] {
                    0 if i > 0 => out.push('_'),
                    1 if i > 0 => out.push('2'),
                    2 => {
                        out.push_str(&w.to_ascii_uppercase());
                        continue;
                    }
                    _ => {}
                }
                let mut chars = w.chars();
                if let Some(first) = chars.next() {
                    if i > 0 || upper_first {
                        out.push(first.to_ascii_uppercase());
                    } else {
                        out.push(first);
                    }
                    out.extend(chars);
                }
            }
            out
        });
    prop_oneof![
        5 => camel,
        3 => "[A-Za-z_$][A-Za-z0-9_$]{0,20}",
        1 => "[a-zA-Zéßİ_0-9]{1,12}",
    ]
}

fn kind() -> impl Strategy<Value = IdentifierKind> {
    prop::sample::select(IdentifierKind::ALL.to_vec())
}

pub fn corpus() -> impl Strategy<Value = Vec<Identifier>> {
    prop::collection::vec((kind(), identifier_name()), 0..40).prop_map(|entries| {
        entries
            .into_iter()
            .enumerate()
            .map(|(i, (kind, name))| Identifier {
                kind,
                qualified_name: format!("p.C{}.{name}", i % 5),
                simple_name: name,
                file: PathBuf::from(format!("C{}.java", i % 5)),
                line: i + 1,
                ordinal: i,
            })
            .collect()
    })
}

pub fn filters() -> impl Strategy<Value = FilterConfig> {
    (any::<bool>(), 1usize..8, any::<bool>(), any::<bool>()).prop_map(|(short, len, freq, stop)| {
        FilterConfig {
            short_tag_enabled: short,
            min_tag_length: len,
            show_frequency: freq,
            stop_words_enabled: stop,
        }
    })
}

fn run<S: Strategy>(
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| match e {
        TestError::Fail(why, value) => format!("{why} for input {value:?}"),
        TestError::Abort(why) => format!("aborted: {why}"),
    })
}

fn folded_letters(name: &str) -> String {
    name.chars()
        .filter_map(|c| {
            let lower: Vec<char> = c.to_lowercase().collect();
            (c.is_alphabetic() && lower.len() == 1 && lower[0].is_ascii_lowercase())
                .then_some(lower[0])
        })
        .collect()
}

/// Concatenated words equal the name's (ASCII-foldable) letters, lowercased;
/// every word splits to itself.
pub fn check_split_reconstruction() -> Result<(), String> {
    run(identifier_name(), |name| {
        let words = split_identifier(&name);
        let joined: String = words.iter().map(|w| w.as_str()).collect();
        prop_assert_eq!(joined, folded_letters(&name));
        for w in &words {
            let again = split_identifier(w.as_str());
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(&again[0], w);
        }
        Ok(())
    })
}

pub fn check_stem_idempotence() -> Result<(), String> {
    let lex = StemLexicon::embedded();
    run(identifier_name(), move |name| {
        for w in split_identifier(&name) {
            let once = lex.stem(&w);
            prop_assert_eq!(lex.stem(&once), once.clone(), "word {}", w);
        }
        Ok(())
    })
}

/// Filtered tags are a subset of the input with unchanged weights; exactly
/// the tags shorter than the threshold disappear.
pub fn check_filter_monotonicity() -> Result<(), String> {
    let lex = StemLexicon::embedded();
    run((corpus(), filters()), move |(ids, cfg)| {
        let all = build_tags(&ids, CloudKind::All, lex, &cfg);
        let kept = apply_short_tag_filter(all.clone(), &cfg);
        for t in &kept {
            prop_assert!(all.contains(t), "tag {} not in input", t.stem);
        }
        let expected: Vec<_> = all
            .iter()
            .filter(|t| !cfg.short_tag_enabled || t.stem.chars().count() >= cfg.min_tag_length)
            .cloned()
            .collect();
        prop_assert_eq!(kept, expected);
        Ok(())
    })
}

pub fn check_font_monotonicity() -> Result<(), String> {
    let strategy = (
        1usize..50,
        0usize..50,
        0usize..100,
        0usize..100,
        1.0f64..30.0,
        0.0f64..50.0,
    );
    run(strategy, |(min_w, span, a, b, min_font, extra)| {
        let max_w = min_w + span;
        let w1 = min_w + a % (span + 1);
        let w2 = min_w + b % (span + 1);
        let cfg = RenderConfig {
            min_font_pt: min_font,
            max_font_pt: min_font + extra,
            ..RenderConfig::default()
        };
        let f1 = font_size_for(w1, min_w, max_w, &cfg).unwrap();
        let f2 = font_size_for(w2, min_w, max_w, &cfg).unwrap();
        prop_assert!(f1 >= cfg.min_font_pt - 0.005 && f1 <= cfg.max_font_pt + 0.005);
        if w1 < w2 {
            prop_assert!(f1 <= f2);
            // Strict unless rounding to 0.01 pt merges two adjacent sizes.
            if extra / span as f64 > 0.01 {
                prop_assert!(f1 < f2, "{} vs {}", f1, f2);
            }
        }
        Ok(())
    })
}

/// Per stem, the All weight is the sum of the four kind weights.
pub fn check_kind_decomposition() -> Result<(), String> {
    let lex = StemLexicon::embedded();
    run((corpus(), filters()), move |(ids, cfg)| {
        let all: BTreeMap<_, _> = build_tags(&ids, CloudKind::All, lex, &cfg)
            .into_iter()
            .map(|t| (t.stem, t.weight))
            .collect();
        let mut summed: BTreeMap<_, usize> = BTreeMap::new();
        for kind in [
            CloudKind::Package,
            CloudKind::Class,
            CloudKind::Attribute,
            CloudKind::Method,
        ] {
            for t in build_tags(&ids, kind, lex, &cfg) {
                *summed.entry(t.stem).or_default() += t.weight;
            }
        }
        prop_assert_eq!(all, summed);
        Ok(())
    })
}

/// Every cloud, under any kind and filter setting, evaluates as perfect.
pub fn check_oracle_equivalence() -> Result<(), String> {
    let lex = StemLexicon::embedded();
    let kinds = prop::sample::select(CloudKind::ALL.to_vec());
    run((corpus(), kinds, filters()), move |(ids, kind, cfg)| {
        let cloud = build_cloud("prop", &ids, kind, lex, cfg).unwrap();
        let report = evaluate(&cloud, &ids, lex).unwrap();
        prop_assert!(
            report.all_perfect,
            "{:?}",
            report.imperfect_rows().collect::<Vec<_>>()
        );
        Ok(())
    })
}
