//! Declaration-level identifier extraction from Java source trees.
//!
//! A tree is scanned into [`SourceUnit`]s, each unit is tokenized and parsed
//! independently, and the per-file results are merged into a [`Corpus`] in
//! `(path, ordinal)` order. Package declarations are deduplicated corpus-wide
//! by qualified name.

mod lexer;
mod parser;

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use walkdir::WalkDir;

pub use parser::is_keyword;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("source root {0} does not exist")]
    RootMissing(PathBuf),
    #[error("source root {0} is not a directory")]
    RootNotDirectory(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentifierKind {
    Package,
    Class,
    Attribute,
    Method,
}

impl IdentifierKind {
    pub const ALL: [IdentifierKind; 4] = [
        IdentifierKind::Package,
        IdentifierKind::Class,
        IdentifierKind::Attribute,
        IdentifierKind::Method,
    ];
}

impl fmt::Display for IdentifierKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentifierKind::Package => "package",
            IdentifierKind::Class => "class",
            IdentifierKind::Attribute => "attribute",
            IdentifierKind::Method => "method",
        };
        f.write_str(s)
    }
}

/// A non-fatal problem found while reading or parsing a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct SourceUnit {
    /// Path relative to the scanned root.
    pub path: PathBuf,
    pub text: String,
    pub diagnostics: Vec<Diagnostic>,
}

impl SourceUnit {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            text: text.into(),
            diagnostics: Vec::new(),
        }
    }
}

/// One declared package, class, attribute or method.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Identifier {
    pub kind: IdentifierKind,
    pub simple_name: String,
    pub qualified_name: String,
    pub file: PathBuf,
    pub line: usize,
    #[serde(skip)]
    pub ordinal: usize,
}

/// Java identifier lexical rule: letter, `_` or `$` first, then letters,
/// digits, `_` or `$`.
pub fn is_java_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if lexer::is_identifier_start(c) => chars.all(lexer::is_identifier_part),
        _ => false,
    }
}

#[derive(Debug, Clone, Default)]
pub struct FileExtraction {
    pub identifiers: Vec<Identifier>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn extract_identifiers(unit: &SourceUnit) -> FileExtraction {
    let (tokens, mut diagnostics) = lexer::tokenize(&unit.text);
    let mut parser = parser::Parser::new(&tokens, &unit.path);
    parser.parse_compilation_unit();
    diagnostics.extend(parser.diagnostics);
    diagnostics.sort_by_key(|d| d.line);
    FileExtraction {
        identifiers: parser.identifiers,
        diagnostics,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedFile {
    pub path: PathBuf,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct Scan {
    pub units: Vec<SourceUnit>,
    pub skipped: Vec<SkippedFile>,
}

/// Collects every `.java` file below `root`, sorted by relative path bytes.
pub fn scan_tree(root: &Path) -> Result<Scan, ExtractError> {
    let meta = fs::metadata(root).map_err(|source| {
        if source.kind() == std::io::ErrorKind::NotFound {
            ExtractError::RootMissing(root.to_path_buf())
        } else {
            ExtractError::Io {
                path: root.to_path_buf(),
                source,
            }
        }
    })?;
    if !meta.is_dir() {
        return Err(ExtractError::RootNotDirectory(root.to_path_buf()));
    }
    fs::read_dir(root).map_err(|source| ExtractError::Io {
        path: root.to_path_buf(),
        source,
    })?;

    let mut scan = Scan::default();
    for entry in WalkDir::new(root) {
        let entry = match entry {
            Ok(e) => e,
            Err(err) => {
                let path = err.path().unwrap_or(root).to_path_buf();
                log::warn!("skipping {}: {err}", path.display());
                scan.skipped.push(SkippedFile {
                    path,
                    reason: err.to_string(),
                });
                continue;
            }
        };
        let path = entry.path();
        if !entry.file_type().is_file() || path.extension().is_none_or(|e| e != "java") {
            continue;
        }
        let relative = path.strip_prefix(root).unwrap_or(path).to_path_buf();
        match fs::read(path) {
            Ok(bytes) => scan.units.push(decode_unit(relative, bytes)),
            Err(err) => {
                log::warn!("skipping {}: {err}", path.display());
                scan.skipped.push(SkippedFile {
                    path: relative,
                    reason: err.to_string(),
                });
            }
        }
    }
    scan.units.sort_by(|a, b| {
        a.path
            .as_os_str()
            .as_encoded_bytes()
            .cmp(b.path.as_os_str().as_encoded_bytes())
    });
    Ok(scan)
}

fn decode_unit(path: PathBuf, bytes: Vec<u8>) -> SourceUnit {
    match String::from_utf8(bytes) {
        Ok(text) => SourceUnit::new(path, text),
        Err(err) => {
            let text = String::from_utf8_lossy(err.as_bytes()).into_owned();
            let line = 1 + err.as_bytes()[..err.utf8_error().valid_up_to()]
                .iter()
                .filter(|&&b| b == b'\n')
                .count();
            let mut unit = SourceUnit::new(path, text);
            unit.diagnostics.push(Diagnostic {
                line,
                message: "invalid UTF-8; bytes replaced".to_owned(),
            });
            unit
        }
    }
}

/// Every identifier of a source tree, in `(file, ordinal)` order.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub label: String,
    pub identifiers: Vec<Identifier>,
    pub diagnostics: Vec<(PathBuf, Diagnostic)>,
    pub skipped: Vec<SkippedFile>,
    pub file_count: usize,
    pub line_count: usize,
}

impl Corpus {
    pub fn count(&self, kind: IdentifierKind) -> usize {
        self.identifiers.iter().filter(|id| id.kind == kind).count()
    }
}

/// Extracts all units and merges the results deterministically.
pub fn extract_corpus(label: &str, units: &[SourceUnit], parallel: bool) -> Corpus {
    let per_file: Vec<FileExtraction> = if parallel {
        units.par_iter().map(extract_identifiers).collect()
    } else {
        units.iter().map(extract_identifiers).collect()
    };

    let mut corpus = Corpus {
        label: label.to_owned(),
        file_count: units.len(),
        line_count: units.iter().map(|u| u.text.lines().count()).sum(),
        ..Corpus::default()
    };
    for (unit, extraction) in units.iter().zip(per_file) {
        let unit_diags = unit
            .diagnostics
            .iter()
            .cloned()
            .chain(extraction.diagnostics);
        corpus
            .diagnostics
            .extend(unit_diags.map(|d| (unit.path.clone(), d)));
        corpus.identifiers.extend(extraction.identifiers);
    }
    corpus.identifiers.sort_by(|a, b| {
        a.file
            .as_os_str()
            .as_encoded_bytes()
            .cmp(b.file.as_os_str().as_encoded_bytes())
            .then(a.ordinal.cmp(&b.ordinal))
    });

    let mut packages = HashSet::new();
    corpus.identifiers.retain(|id| {
        id.kind != IdentifierKind::Package || packages.insert(id.qualified_name.clone())
    });
    corpus
}

/// Scans `root` and extracts its corpus, labelled with the root's file name.
pub fn load_corpus(root: &Path, parallel: bool) -> Result<Corpus, ExtractError> {
    let scan = scan_tree(root)?;
    let label = root
        .canonicalize()
        .ok()
        .as_deref()
        .unwrap_or(root)
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| root.display().to_string());
    let mut corpus = extract_corpus(&label, &scan.units, parallel);
    corpus.skipped = scan.skipped;
    Ok(corpus)
}
