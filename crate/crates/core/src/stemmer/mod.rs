//! Dictionary-assisted suffix stripping and stop-word filtering.
//!
//! Lookup order for a word: irregular-form exceptions, then the known
//! base-form list (a listed word is already a stem), then the first matching
//! detachment rule. The result of a rule is fed back through the same steps
//! until nothing changes, so stemming is idempotent for any input.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use thiserror::Error;

use crate::splitter::Word;

const EXCEPTIONS_TXT: &str = include_str!("../../data/exceptions.txt");
const STOPWORDS_TXT: &str = include_str!("../../data/stopwords.txt");
const WORDS_TXT: &str = include_str!("../../data/words.txt");

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}: {message}")]
    Malformed {
        origin: String,
        line: usize,
        message: String,
    },
}

/// When a detachment rule may fire, beyond the suffix match itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Always,
    /// The rewritten word must be a known base form.
    Known,
    /// Bare strip; a doubled final b/d/g/m/n/p/r/t is undoubled unless the
    /// doubled form is known (`setting` → `set`, `adding` → `add`).
    Undouble,
    /// The stem must end in ss, x, ch, sh or zz (`boxes` → `box`).
    Sibilant,
    /// Plural `-s`, never after ss, us or is.
    Plural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetachRule {
    pub suffix: &'static str,
    pub replacement: &'static str,
    /// Characters that must remain once the suffix is removed.
    pub min_stem: usize,
    pub gate: Gate,
}

const fn rule(
    suffix: &'static str,
    replacement: &'static str,
    min_stem: usize,
    gate: Gate,
) -> DetachRule {
    DetachRule {
        suffix,
        replacement,
        min_stem,
        gate,
    }
}

/// Longest suffixes first; within a suffix, dictionary-checked rewrites
/// before bare stripping.
pub const DETACHMENT_RULES: &[DetachRule] = &[
    rule("ies", "ie", 2, Gate::Known),
    rule("ies", "y", 2, Gate::Always),
    rule("ing", "e", 2, Gate::Known),
    rule("ing", "", 2, Gate::Known),
    rule("ing", "", 3, Gate::Undouble),
    rule("ied", "y", 2, Gate::Always),
    rule("ed", "e", 2, Gate::Known),
    rule("ed", "", 2, Gate::Known),
    rule("ed", "", 3, Gate::Undouble),
    rule("s", "", 2, Gate::Known),
    rule("es", "", 2, Gate::Known),
    rule("es", "", 2, Gate::Sibilant),
    rule("s", "", 2, Gate::Plural),
];

#[derive(Debug, Clone)]
pub struct StemLexicon {
    exceptions: HashMap<String, String>,
    known: HashSet<String>,
    rules: Vec<DetachRule>,
    stop_words: HashSet<String>,
}

fn is_lower_alpha(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_lowercase())
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_exceptions(text: &str, origin: &str) -> Result<HashMap<String, String>, LexiconError> {
    let malformed = |line, message: String| LexiconError::Malformed {
        origin: origin.to_owned(),
        line,
        message,
    };
    let mut map = HashMap::new();
    for (line, content) in data_lines(text) {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [inflected, base] = fields[..] else {
            return Err(malformed(
                line,
                format!("expected `inflected base`, got {content:?}"),
            ));
        };
        if !is_lower_alpha(inflected) || !is_lower_alpha(base) {
            return Err(malformed(
                line,
                format!("entries must be lowercase a-z: {content:?}"),
            ));
        }
        map.insert(inflected.to_owned(), base.to_owned());
    }
    if let Some((k, v)) = map.iter().find(|(_, v)| map.contains_key(*v)) {
        return Err(malformed(
            0,
            format!("base form {v:?} (of {k:?}) is itself listed as inflected"),
        ));
    }
    Ok(map)
}

pub fn parse_word_list(text: &str, origin: &str) -> Result<HashSet<String>, LexiconError> {
    data_lines(text)
        .map(|(line, word)| {
            if is_lower_alpha(word) {
                Ok(word.to_owned())
            } else {
                Err(LexiconError::Malformed {
                    origin: origin.to_owned(),
                    line,
                    message: format!("expected one lowercase word, got {word:?}"),
                })
            }
        })
        .collect()
}

fn read(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })
}

impl StemLexicon {
    pub fn new(
        exceptions: HashMap<String, String>,
        base_words: HashSet<String>,
        stop_words: HashSet<String>,
    ) -> Self {
        let mut known = base_words;
        known.extend(exceptions.values().cloned());
        Self {
            exceptions,
            known,
            rules: DETACHMENT_RULES.to_vec(),
            stop_words,
        }
    }

    /// The lexicon shipped with the crate.
    pub fn embedded() -> &'static StemLexicon {
        static LEXICON: OnceLock<StemLexicon> = OnceLock::new();
        LEXICON.get_or_init(|| {
            Self::with_overrides(None, None).expect("embedded lexicon data is well-formed")
        })
    }

    /// Embedded data, with the exception map and/or stop-word list replaced
    /// by the given files.
    pub fn with_overrides(
        exceptions: Option<&Path>,
        stop_words: Option<&Path>,
    ) -> Result<Self, LexiconError> {
        let exceptions = match exceptions {
            Some(p) => parse_exceptions(&read(p)?, &p.display().to_string())?,
            None => parse_exceptions(EXCEPTIONS_TXT, "exceptions.txt")?,
        };
        let stop_words = match stop_words {
            Some(p) => parse_word_list(&read(p)?, &p.display().to_string())?,
            None => parse_word_list(STOPWORDS_TXT, "stopwords.txt")?,
        };
        let base = parse_word_list(WORDS_TXT, "words.txt")?;
        Ok(Self::new(exceptions, base, stop_words))
    }

    pub fn exceptions(&self) -> &HashMap<String, String> {
        &self.exceptions
    }

    /// Base forms: the embedded word list plus every exception target.
    pub fn known_words(&self) -> &HashSet<String> {
        &self.known
    }

    pub fn rules(&self) -> &[DetachRule] {
        &self.rules
    }

    pub fn stop_words(&self) -> &HashSet<String> {
        &self.stop_words
    }

    pub fn is_known(&self, word: &str) -> bool {
        self.known.contains(word)
    }

    pub fn is_stop_word(&self, word: &str) -> bool {
        self.stop_words.contains(word)
    }

    pub fn stem(&self, word: &Word) -> Word {
        Word::new(self.stem_str(word.as_str())).expect("stemming preserves the a-z alphabet")
    }

    pub fn stem_str(&self, word: &str) -> String {
        let mut current = word.to_owned();
        loop {
            if let Some(base) = self.exceptions.get(&current) {
                return base.clone();
            }
            if self.known.contains(&current) {
                return current;
            }
            match self.detach(&current) {
                Some(next) => current = next,
                None => return current,
            }
        }
    }

    fn detach(&self, word: &str) -> Option<String> {
        self.rules.iter().find_map(|r| self.apply(r, word))
    }

    fn apply(&self, rule: &DetachRule, word: &str) -> Option<String> {
        let stem = word.strip_suffix(rule.suffix)?;
        if stem.len() < rule.min_stem {
            return None;
        }
        let candidate = format!("{stem}{}", rule.replacement);
        match rule.gate {
            Gate::Always => Some(candidate),
            Gate::Known => self.known.contains(&candidate).then_some(candidate),
            Gate::Undouble => {
                let b = stem.as_bytes();
                let n = b.len();
                let doubled = n >= 2 && b[n - 1] == b[n - 2] && b"bdgmnprt".contains(&b[n - 1]);
                if doubled && !self.known.contains(stem) {
                    Some(stem[..n - 1].to_owned())
                } else {
                    Some(candidate)
                }
            }
            Gate::Sibilant => ["ss", "x", "ch", "sh", "zz"]
                .iter()
                .any(|s| stem.ends_with(s))
                .then_some(candidate),
            Gate::Plural => {
                (!["ss", "us", "is"].iter().any(|s| word.ends_with(s))).then_some(candidate)
            }
        }
    }
}
