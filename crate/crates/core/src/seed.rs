//! Loading the bundled demo lexicon: XML packages, root list and manifest
//! shipped under `lexicon/` at the repository root.

use crate::lexicon::{parse_documents, validate_lexicon, Lexicon, ParseError};
use crate::scheme::Root;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeedError {
    #[error("io error reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("lexicon validation failed:\n{0}")]
    Invalid(String),
    #[error("bad root {line:?} in {path}: {message}")]
    BadRoot {
        path: String,
        line: String,
        message: String,
    },
}

/// Expected resource counts, kept next to the lexicon files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub properties: usize,
    pub classes: usize,
    pub components: usize,
    pub rules_classes: usize,
    pub rules: usize,
    pub roots: usize,
}

impl Manifest {
    pub fn of(lex: &Lexicon, roots: &[Root]) -> Manifest {
        Manifest {
            properties: lex.property_defs.len(),
            classes: lex.classes.len(),
            components: lex.component_count(),
            rules_classes: lex.rules_classes.len(),
            rules: lex.rule_count(),
            roots: roots.len(),
        }
    }
}

/// Repository-relative location of the bundled lexicon, for tests and tools
/// run from within the workspace.
pub fn seed_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("..")
        .join("lexicon")
}

fn read_file(path: &Path) -> Result<String, SeedError> {
    std::fs::read_to_string(path).map_err(|source| SeedError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// All `*.xml` documents under a directory, sorted by path for determinism.
pub fn load_documents(dir: &Path) -> Result<Vec<String>, SeedError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|source| SeedError::Io {
            path: dir.display().to_string(),
            source,
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().map(|e| e == "xml").unwrap_or(false))
        .collect();
    paths.sort();
    paths.iter().map(|p| read_file(p)).collect()
}

/// One root per line; `#` starts a comment.
pub fn load_roots(path: &Path) -> Result<Vec<Root>, SeedError> {
    let text = read_file(path)?;
    let mut roots = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let root = Root::new(line).map_err(|e| SeedError::BadRoot {
            path: path.display().to_string(),
            line: line.to_string(),
            message: e.to_string(),
        })?;
        roots.push(root);
    }
    Ok(roots)
}

/// Parses and validates a lexicon directory (XML packages + roots.txt).
pub fn load_dir(dir: &Path) -> Result<(Lexicon, Vec<Root>), SeedError> {
    let documents = load_documents(dir)?;
    let lex = parse_documents(&documents)?;
    let report = validate_lexicon(&lex);
    if !report.is_empty() {
        return Err(SeedError::Invalid(report.to_string()));
    }
    let roots = load_roots(&dir.join("roots.txt"))?;
    Ok((lex, roots))
}

/// The bundled demo lexicon, parsed and validated.
pub fn load_seed() -> Result<(Lexicon, Vec<Root>), SeedError> {
    load_dir(&seed_dir())
}

/// Parses a manifest JSON document.
pub fn parse_manifest(text: &str) -> Result<Manifest, SeedError> {
    serde_json::from_str(text).map_err(|e| SeedError::Io {
        path: "manifest.json".to_string(),
        source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
    })
}

/// The bundled manifest.
pub fn load_manifest() -> Result<Manifest, SeedError> {
    let path = seed_dir().join("manifest.json");
    let text = read_file(&path)?;
    parse_manifest(&text)
}
