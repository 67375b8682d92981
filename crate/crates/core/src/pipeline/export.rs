//! Tabular and JSON renderings of an analysis report. Output is byte-stable
//! for a fixed report: cell order is canonical and no hash-ordered
//! collection is traversed.

use super::{Analysis, AnalysisReport, OriginalSchemes};
use serde::{Deserialize, Serialize};

const EMPTY: &str = "∅";

pub const TSV_HEADER: [&str; 10] = [
    "Morphological component",
    "Original Scheme",
    "Scheme",
    "Gender",
    "Person",
    "Number",
    "Properties",
    "Morphological Descriptors",
    "Prefixes",
    "Suffixes",
];

fn join_or_empty(items: &[String]) -> String {
    if items.is_empty() {
        EMPTY.to_string()
    } else {
        items.join(",")
    }
}

fn bracket_list(items: &[String]) -> String {
    if items.is_empty() {
        EMPTY.to_string()
    } else {
        format!("[{}]", items.join(", "))
    }
}

fn original_cell(orig: &OriginalSchemes) -> String {
    match orig {
        OriginalSchemes::NotExist => "Not exist,".to_string(),
        OriginalSchemes::Schemes(list) => bracket_list(list),
    }
}

/// Renders the ten-column table. Empty cells show the empty-set symbol;
/// originals show "Not exist," for non-templatic stems.
pub fn to_tsv(report: &AnalysisReport) -> String {
    let mut out = TSV_HEADER.join("\t");
    out.push('\n');
    for row in &report.rows {
        let scheme_cell = match &row.scheme {
            Some(s) => format!("[{s}]"),
            None => EMPTY.to_string(),
        };
        let cells = [
            row.word.clone(),
            original_cell(&row.original_schemes),
            scheme_cell,
            join_or_empty(&row.gender),
            join_or_empty(&row.person),
            join_or_empty(&row.number),
            join_or_empty(&row.properties),
            join_or_empty(&row.descriptors),
            bracket_list(&row.prefixes),
            bracket_list(&row.suffixes),
        ];
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    for word in &report.not_found {
        out.push_str(&format!("{word}\tNOT FOUND\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub word: String,
    pub pos: String,
    pub category: String,
    pub rule: String,
    /// null encodes the "Not exist" marker (non-templatic stems).
    pub original_schemes: Option<Vec<String>>,
    pub scheme: Option<String>,
    pub gender: Option<Vec<String>>,
    pub person: Option<Vec<String>>,
    pub number: Option<Vec<String>>,
    pub properties: Option<Vec<String>>,
    pub descriptors: Option<Vec<String>>,
    pub prefixes: Option<Vec<String>>,
    pub suffixes: Option<Vec<String>>,
    pub stem: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub rows: Vec<JsonRow>,
    pub not_found: Vec<String>,
}

fn none_if_empty(items: &[String]) -> Option<Vec<String>> {
    if items.is_empty() {
        None
    } else {
        Some(items.to_vec())
    }
}

impl From<&Analysis> for JsonRow {
    fn from(row: &Analysis) -> Self {
        JsonRow {
            word: row.word.clone(),
            pos: row.pos.clone(),
            category: row.category.clone(),
            rule: row.rule.clone(),
            original_schemes: match &row.original_schemes {
                OriginalSchemes::NotExist => None,
                OriginalSchemes::Schemes(list) => Some(list.clone()),
            },
            scheme: row.scheme.clone(),
            gender: none_if_empty(&row.gender),
            person: none_if_empty(&row.person),
            number: none_if_empty(&row.number),
            properties: none_if_empty(&row.properties),
            descriptors: none_if_empty(&row.descriptors),
            prefixes: none_if_empty(&row.prefixes),
            suffixes: none_if_empty(&row.suffixes),
            stem: row.stem.clone(),
        }
    }
}

/// JSON mirror of the report; empty columns serialize as null.
pub fn to_json(report: &AnalysisReport) -> String {
    let json = JsonReport {
        rows: report.rows.iter().map(JsonRow::from).collect(),
        not_found: report.not_found.clone(),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
    s.push('\n');
    s
}
