//! Brute-force reference for tag frequencies.
//!
//! Deliberately naive and written without reusing the splitter or the
//! lexicon's stemming code: only the lexicon *data* (exception map, known
//! words, rule table, stop words) is shared.

use std::collections::{BTreeSet, HashMap};

use crate::extractor::Identifier;
use crate::stemmer::{Gate, StemLexicon};

/// Case-fold one character to `Some((is_upper, ascii_lower))`, or `None` if
/// it separates words.
fn fold(c: char) -> Option<(bool, char)> {
    let lowered: Vec<char> = c.to_lowercase().collect();
    if lowered.len() == 1 && lowered[0].is_ascii_lowercase() && c.is_alphabetic() {
        Some((c.is_uppercase(), lowered[0]))
    } else {
        None
    }
}

/// Inserts a space wherever a word ends, then splits on whitespace.
pub fn naive_split(name: &str) -> Vec<String> {
    let folded: Vec<Option<(bool, char)>> = name.chars().map(fold).collect();
    let upper = |i: usize| matches!(folded.get(i), Some(Some((true, _))));
    let lower = |i: usize| matches!(folded.get(i), Some(Some((false, _))));

    let mut spaced = String::new();
    for (i, slot) in folded.iter().enumerate() {
        match slot {
            None => spaced.push(' '),
            Some((_, c)) => {
                if i > 0 && upper(i) && (lower(i - 1) || (upper(i - 1) && lower(i + 1))) {
                    spaced.push(' ');
                }
                spaced.push(*c);
            }
        }
    }
    spaced.split_whitespace().map(str::to_owned).collect()
}

fn ends_with_any(s: &str, endings: &[&str]) -> bool {
    endings.iter().any(|e| s.ends_with(e))
}

pub fn naive_stem(lexicon: &StemLexicon, word: &str) -> String {
    let mut w = word.to_owned();
    // Every rewrite shortens the word, so this terminates.
    'outer: loop {
        if let Some(base) = lexicon.exceptions().get(w.as_str()) {
            return base.clone();
        }
        if lexicon.known_words().contains(w.as_str()) {
            return w;
        }
        for r in lexicon.rules() {
            if !w.ends_with(r.suffix) || w.len() - r.suffix.len() < r.min_stem {
                continue;
            }
            let stem = w[..w.len() - r.suffix.len()].to_owned();
            let rewritten = stem.clone() + r.replacement;
            let accepted = match r.gate {
                Gate::Always => Some(rewritten),
                Gate::Known => lexicon
                    .known_words()
                    .contains(&rewritten)
                    .then_some(rewritten),
                Gate::Sibilant => {
                    ends_with_any(&stem, &["ss", "x", "ch", "sh", "zz"]).then_some(rewritten)
                }
                Gate::Plural => (!ends_with_any(&w, &["ss", "us", "is"])).then_some(rewritten),
                Gate::Undouble => {
                    let chars: Vec<char> = stem.chars().collect();
                    let n = chars.len();
                    let doubled =
                        n >= 2 && chars[n - 1] == chars[n - 2] && "bdgmnprt".contains(chars[n - 1]);
                    if doubled && !lexicon.known_words().contains(&stem) {
                        Some(chars[..n - 1].iter().collect())
                    } else {
                        Some(rewritten)
                    }
                }
            };
            if let Some(next) = accepted {
                w = next;
                continue 'outer;
            }
        }
        return w;
    }
}

/// The stems one identifier contributes.
pub fn naive_stems(lexicon: &StemLexicon, name: &str, drop_stop_words: bool) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for word in naive_split(name) {
        let stem = naive_stem(lexicon, &word);
        let is_stop = lexicon.stop_words().contains(&word) || lexicon.stop_words().contains(&stem);
        if drop_stop_words && is_stop {
            continue;
        }
        out.insert(stem);
    }
    out
}

/// Number of identifiers whose stems include `stem`.
pub fn oracle_frequency(stem: &str, ids: &[Identifier], lexicon: &StemLexicon) -> usize {
    ids.iter()
        .filter(|id| naive_stems(lexicon, &id.simple_name, false).contains(stem))
        .count()
}

/// Frequencies of every stem over `ids`.
pub fn oracle_table<'a>(
    ids: impl IntoIterator<Item = &'a Identifier>,
    lexicon: &StemLexicon,
    drop_stop_words: bool,
) -> HashMap<String, usize> {
    let mut table = HashMap::new();
    for id in ids {
        for stem in naive_stems(lexicon, &id.simple_name, drop_stop_words) {
            *table.entry(stem).or_insert(0) += 1;
        }
    }
    table
}
