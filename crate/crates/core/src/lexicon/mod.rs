//! The morphological lexicon: component classes, property classes and rules
//! classes parsed from the XML definition language.
//!
//! A lexicon is assembled from any number of `<package>` documents. Three
//! kinds of content live inside a package:
//!
//! * `<morphological_properties>` — named properties, each `exclusive` or
//!   `additive`, holding descriptor codes (`Gender` → `GFe`, `GMa`).
//! * `<morphological_class>` — a set of components of the same nature.
//!   Classes characterize components with `is` (class-wide descriptors) and
//!   `uses` (properties whose descriptors components may carry via `md`),
//!   and may `ref` another class: a component's `key` then points at an
//!   original component's `id` there.
//! * `<rules_class>` — rules concatenating morphemes (`ClassName.Selector`
//!   keys, optionally pinned to one `component`), with `idp` attaching named
//!   descriptor bundles to every word the rule produces.
//!
//! A handful of property names are reserved by the toolkit and consumed
//! structurally rather than reported: `Role` (`Pre`/`Suf` affix position),
//! `Morph` (`Tpl` marks a class whose components are root templates), and
//! `Selector` (codes used only for morpheme-key filtering).

mod model;
mod parse;
mod validate;

pub use model::{
    Descriptor, DescriptorRef, Lexicon, MorphClass, MorphComponent, MorphRule, MorphemeKey,
    MorphemeRef, PropertyDef, PropertyKind, QueryError, RulesClass,
};
pub use parse::{parse_documents, parse_lexicon, ParseError};
pub use validate::{validate_lexicon, ValidationReport, Violation};

/// Property names with toolkit-level semantics, never shown in analyses.
pub const STRUCTURAL_PROPERTIES: &[&str] = &["Role", "Morph", "Selector"];

/// Reserved descriptor codes within the structural properties.
pub mod reserved {
    pub const ROLE_PREFIX: &str = "Pre";
    pub const ROLE_SUFFIX: &str = "Suf";
    pub const MORPH_TEMPLATE: &str = "Tpl";
}
