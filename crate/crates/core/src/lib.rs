//! Templatic morphology toolkit.
//!
//! The crate compiles an XML lexicon of morphological component classes,
//! property classes and rules classes into finite-state word automata whose
//! accept states carry feature payloads, and uses those automata both ways:
//! analyzing surface words into feature bundles and generating surface words
//! from roots, schemes and feature constraints.
//!
//! Pipeline in one picture:
//!
//! ```text
//! lexicon *.xml + roots.txt
//!        │ parse + validate          (lexicon)
//!        ▼
//! classes / properties / rules
//!        │ instantiate schemes       (scheme)
//!        │ atoms → concat → union    (automaton)
//!        ▼
//! per-category automata              (compiler) ──► cache file
//!        │ lookup / enumerate
//!        ▼
//! analyses + generated words         (pipeline) ──► TSV / JSON
//! ```
//!
//! Everything operates on a single canonical Latin transliteration alphabet
//! ([`translit`]); Arabic-script input is converted at the edges.

pub mod automaton;
pub mod cache;
pub mod compiler;
pub mod lexicon;
pub mod pipeline;
pub mod scheme;
pub mod seed;
pub mod translit;

pub use automaton::{Automaton, Payload, Segment, SegmentRole};
pub use compiler::{CompileOptions, CompiledLexicon, Compiler};
pub use lexicon::{Lexicon, ValidationReport};
pub use pipeline::{Analysis, AnalysisReport, Analyzer, GenerateConstraints};
pub use scheme::{Root, Scheme, Stem};
