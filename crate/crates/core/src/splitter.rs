//! Camel-case identifier splitting.
//!
//! Boundaries fall before an uppercase letter that follows a lowercase
//! letter, before the last capital of an acronym run that is followed by a
//! lowercase letter (`HTTPServer` → `http`, `server`), and at every `_`, `$`
//! or digit. Separator characters are dropped and every word is lowercased.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// A non-empty lowercase ASCII word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(String);

impl Word {
    pub fn new(text: impl Into<String>) -> Option<Self> {
        let text = text.into();
        (!text.is_empty() && text.bytes().all(|b| b.is_ascii_lowercase())).then_some(Word(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl Deref for Word {
    type Target = str;

    fn deref(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Word {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Word {
    type Error = String;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        Word::new(value.clone()).ok_or_else(|| format!("{value:?} is not a lowercase word"))
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Upper,
    Lower,
    Separator,
}

/// Letters are kept only when they case-fold to a single ASCII letter; every
/// other character separates words.
fn classify(c: char) -> (Class, char) {
    if c.is_ascii_lowercase() {
        return (Class::Lower, c);
    }
    if c.is_ascii_uppercase() {
        return (Class::Upper, c.to_ascii_lowercase());
    }
    if c.is_alphabetic() {
        let mut lower = c.to_lowercase();
        if let (Some(l), None) = (lower.next(), lower.next()) {
            if l.is_ascii_lowercase() {
                let class = if c.is_uppercase() {
                    Class::Upper
                } else {
                    Class::Lower
                };
                return (class, l);
            }
        }
    }
    (Class::Separator, c)
}

pub fn split_identifier(name: &str) -> Vec<Word> {
    let chars: Vec<(Class, char)> = name.chars().map(classify).collect();
    let mut words = Vec::new();
    let mut current = String::new();

    for (i, &(class, lower)) in chars.iter().enumerate() {
        if class == Class::Separator {
            flush(&mut current, &mut words);
            continue;
        }
        if class == Class::Upper && i > 0 {
            let prev = chars[i - 1].0;
            let next = chars.get(i + 1).map(|c| c.0);
            let camel_hump = prev == Class::Lower;
            let acronym_end = prev == Class::Upper && next == Some(Class::Lower);
            if camel_hump || acronym_end {
                flush(&mut current, &mut words);
            }
        }
        current.push(lower);
    }
    flush(&mut current, &mut words);
    words
}

fn flush(current: &mut String, words: &mut Vec<Word>) {
    if !current.is_empty() {
        words.push(Word(std::mem::take(current)));
    }
}
