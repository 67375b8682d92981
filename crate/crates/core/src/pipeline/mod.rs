//! The analysis pipeline: tokenize, run each token through the category
//! automata, turn accept payloads into feature-bundle rows, and export as
//! TSV or JSON. The same machinery runs backwards as a generator by
//! enumerating automaton languages under payload constraints.

mod export;

pub use export::{to_json, to_tsv, JsonReport, JsonRow, TSV_HEADER};

use crate::automaton::{Payload, SegmentRole};
use crate::compiler::CompiledLexicon;
use crate::lexicon::{Descriptor, STRUCTURAL_PROPERTIES};
use crate::translit::is_canonical_symbol;
use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Column B content: either an explicit "does not exist" marker (stems not
/// built from a root–scheme pair) or the original scheme surfaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OriginalSchemes {
    NotExist,
    Schemes(Vec<String>),
}

/// One analysis row, mirroring the output table column for column.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Analysis {
    pub word: String,
    pub pos: String,
    pub category: String,
    pub rule: String,
    pub original_schemes: OriginalSchemes,
    pub scheme: Option<String>,
    pub gender: Vec<String>,
    pub person: Vec<String>,
    pub number: Vec<String>,
    pub properties: Vec<String>,
    pub descriptors: Vec<String>,
    pub prefixes: Vec<String>,
    pub suffixes: Vec<String>,
    /// Stem surface (may be empty for pure clitic combinations).
    pub stem: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnalysisReport {
    pub rows: Vec<Analysis>,
    pub not_found: Vec<String>,
}

/// Generation filters; every field is optional and conjunctive.
#[derive(Debug, Clone, Default)]
pub struct GenerateConstraints {
    pub category: Option<String>,
    pub root: Option<String>,
    pub scheme: Option<String>,
    /// Descriptor codes the payload must carry.
    pub descriptors: Vec<String>,
    pub prefix: Option<String>,
    pub suffix: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("unknown category {0:?}")]
    UnknownCategory(String),
}

/// Splits canonical text into words: maximal runs of canonical alphabet
/// symbols; whitespace and punctuation are discarded, order preserved.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if is_canonical_symbol(ch) {
            current.push(ch);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

pub struct Analyzer<'a> {
    compiled: &'a CompiledLexicon,
}

impl<'a> Analyzer<'a> {
    pub fn new(compiled: &'a CompiledLexicon) -> Self {
        Analyzer { compiled }
    }

    /// All analyses of one word, ordered by (category, rule id,
    /// decomposition). Empty means not found.
    pub fn analyze_word(&self, word: &str) -> Vec<Analysis> {
        if word.is_empty() {
            return Vec::new();
        }
        let mut rows = Vec::new();
        for (category, machine) in &self.compiled.categories {
            for payload in machine.lookup(word) {
                rows.push(self.row_from_payload(word, category, &payload));
            }
        }
        rows.sort_by(|a, b| {
            (&a.category, &a.rule, &a.prefixes, &a.stem, &a.suffixes).cmp(&(
                &b.category,
                &b.rule,
                &b.prefixes,
                &b.stem,
                &b.suffixes,
            ))
        });
        rows
    }

    /// Tokenizes, analyzes each distinct word (first occurrence order), and
    /// partitions into rows and not-found words.
    pub fn analyze_text(&self, text: &str) -> AnalysisReport {
        let tokens = tokenize(text);
        let mut distinct: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in tokens {
            if seen.insert(t.clone()) {
                distinct.push(t);
            }
        }

        #[cfg(feature = "parallel")]
        let analyzed: Vec<(String, Vec<Analysis>)> = distinct
            .into_par_iter()
            .map(|w| {
                let rows = self.analyze_word(&w);
                (w, rows)
            })
            .collect();
        #[cfg(not(feature = "parallel"))]
        let analyzed: Vec<(String, Vec<Analysis>)> = distinct
            .into_iter()
            .map(|w| {
                let rows = self.analyze_word(&w);
                (w, rows)
            })
            .collect();

        let mut report = AnalysisReport::default();
        for (word, rows) in analyzed {
            if rows.is_empty() {
                report.not_found.push(word);
            } else {
                report.rows.extend(rows);
            }
        }
        report
    }

    /// Sequential variant regardless of the `parallel` feature, for
    /// benchmarking the two paths against each other.
    pub fn analyze_text_sequential(&self, text: &str) -> AnalysisReport {
        let tokens = tokenize(text);
        let mut distinct: Vec<String> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in tokens {
            if seen.insert(t.clone()) {
                distinct.push(t);
            }
        }
        let mut report = AnalysisReport::default();
        for word in distinct {
            let rows = self.analyze_word(&word);
            if rows.is_empty() {
                report.not_found.push(word);
            } else {
                report.rows.extend(rows);
            }
        }
        report
    }

    /// Enumerates category languages and keeps the surfaces whose payloads
    /// satisfy the constraints. Every returned analysis re-analyzes: it came
    /// from the same automata lookup would consult.
    pub fn generate(
        &self,
        constraints: &GenerateConstraints,
        max_len: usize,
    ) -> Result<Vec<(String, Analysis)>, PipelineError> {
        let categories: Vec<&String> = match &constraints.category {
            Some(c) => {
                if !self.compiled.categories.contains_key(c) {
                    return Err(PipelineError::UnknownCategory(c.clone()));
                }
                self.compiled.categories.keys().filter(|k| *k == c).collect()
            }
            None => self.compiled.categories.keys().collect(),
        };
        let mut out = Vec::new();
        for category in categories {
            let machine = &self.compiled.categories[category];
            for (surface, payloads) in machine.enumerate_with_payloads(max_len) {
                for payload in payloads {
                    if self.payload_satisfies(&payload, constraints) {
                        out.push((surface.clone(), self.row_from_payload(&surface, category, &payload)));
                    }
                }
            }
        }
        out.sort_by(|a, b| (&a.0, &a.1.category, &a.1.rule).cmp(&(&b.0, &b.1.category, &b.1.rule)));
        Ok(out)
    }

    fn payload_satisfies(&self, payload: &Payload, c: &GenerateConstraints) -> bool {
        if let Some(root) = &c.root {
            if !payload
                .segments
                .iter()
                .any(|s| s.root.as_deref() == Some(root.as_str()))
            {
                return false;
            }
        }
        if let Some(scheme) = &c.scheme {
            if !payload
                .segments
                .iter()
                .any(|s| s.template.as_deref() == Some(scheme.as_str()))
            {
                return false;
            }
        }
        if let Some(prefix) = &c.prefix {
            if !payload
                .segments
                .iter()
                .any(|s| s.role == SegmentRole::Prefix && &s.surface == prefix)
            {
                return false;
            }
        }
        if let Some(suffix) = &c.suffix {
            if !payload
                .segments
                .iter()
                .any(|s| s.role == SegmentRole::Suffix && &s.surface == suffix)
            {
                return false;
            }
        }
        c.descriptors
            .iter()
            .all(|code| payload.descriptors.iter().any(|d| &d.code == code))
    }

    /// Turns one payload into an output row. Descriptors are partitioned by
    /// their owning property: Gender/Person/Number feed the agreement
    /// columns, Case and Definiteness feed the descriptors column,
    /// structural properties are consumed, everything else lands in the
    /// properties column.
    fn row_from_payload(&self, word: &str, category: &str, payload: &Payload) -> Analysis {
        let mut gender = Vec::new();
        let mut person = Vec::new();
        let mut number = Vec::new();
        let mut properties: Vec<Descriptor> = Vec::new();
        let mut descriptors: Vec<Descriptor> = Vec::new();
        for d in &payload.descriptors {
            match d.property.as_str() {
                "Gender" => gender.push(d.code.clone()),
                "Person" => person.push(d.code.clone()),
                "Number" => number.push(d.code.clone()),
                "Case" | "Definiteness" => descriptors.push(d.clone()),
                p if STRUCTURAL_PROPERTIES.contains(&p) => {}
                _ => properties.push(d.clone()),
            }
        }
        gender.sort_by_key(|c| self.declaration_index("Gender", c));
        person.sort_by_key(|c| self.declaration_index("Person", c));
        number.sort_by_key(|c| self.declaration_index("Number", c));
        let properties = self.canonical_cell_order(properties);
        let descriptors = self.canonical_cell_order(descriptors);

        let mut prefixes = Vec::new();
        let mut suffixes = Vec::new();
        let mut stem = String::new();
        let mut stem_template: Option<String> = None;
        let mut stem_originals: Option<Vec<String>> = None;
        for seg in &payload.segments {
            match seg.role {
                SegmentRole::Prefix => prefixes.push(seg.surface.clone()),
                SegmentRole::Suffix => suffixes.push(seg.surface.clone()),
                SegmentRole::Stem => {
                    stem.push_str(&seg.surface);
                    if stem_template.is_none() {
                        stem_template = seg.template.clone();
                    }
                    if stem_originals.is_none() && !seg.originals.is_empty() {
                        stem_originals = Some(seg.originals.clone());
                    }
                }
            }
        }
        let original_schemes = match stem_originals {
            Some(list) => OriginalSchemes::Schemes(list),
            None => OriginalSchemes::NotExist,
        };
        let pos = CompiledLexicon::pos_of_category(category).to_string();
        // the scheme column is shown for nouns and left empty for verbs
        let scheme = if pos == "noun" { stem_template } else { None };

        Analysis {
            word: word.to_string(),
            pos,
            category: category.to_string(),
            rule: payload.rule.clone(),
            original_schemes,
            scheme,
            gender,
            person,
            number,
            properties,
            descriptors,
            prefixes,
            suffixes,
            stem,
        }
    }

    fn declaration_index(&self, property: &str, code: &str) -> usize {
        self.compiled
            .properties
            .get(property)
            .and_then(|p| p.descriptors.iter().position(|d| d == code))
            .unwrap_or(usize::MAX)
    }

    /// Canonical cell order: word-class flags first, definiteness before
    /// case, then by (property name, declaration index). Exports are
    /// byte-stable under this order; golden comparisons treat cells as sets.
    fn canonical_cell_order(&self, items: Vec<Descriptor>) -> Vec<String> {
        let mut items = items;
        items.sort_by_key(|d| {
            let precedence = match d.property.as_str() {
                "WordClass" => 0,
                "Definiteness" => 1,
                "Case" => 2,
                _ => 3,
            };
            (
                precedence,
                d.property.clone(),
                self.declaration_index(&d.property, &d.code),
            )
        });
        let mut out: Vec<String> = items.into_iter().map(|d| d.code).collect();
        out.dedup();
        out
    }
}

impl AnalysisReport {
    /// Distinct analyzed words, in row order.
    pub fn distinct_words(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.rows
            .iter()
            .filter(|r| seen.insert(r.word.as_str()))
            .map(|r| r.word.as_str())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_splits_and_discards_punctuation() {
        assert_eq!(tokenize("maca eamAma"), vec!["maca", "eamAma"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
        // canonical symbols ^ and ~ are alphabet, not separators
        assert_eq!(tokenize("ca^arat, ~amAn!"), vec!["ca^arat", "~amAn"]);
    }

    #[test]
    fn tokenize_three_sentences_hand_count() {
        // counted by hand: 11 words
        let text = "maca kataba kitAb. yujAdilUna maca eamAma; Sifrun wAHidun!\nkAtib maktab kutub?";
        assert_eq!(tokenize(text).len(), 11);
    }

    #[test]
    fn tokenize_preserves_order() {
        assert_eq!(
            tokenize("b a c"),
            vec!["b".to_string(), "a".to_string(), "c".to_string()]
        );
    }
}
