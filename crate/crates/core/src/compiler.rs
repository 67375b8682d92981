//! Compiles lexicon rules classes into per-category automata.
//!
//! Morpheme references expand to unions of atoms over their matching
//! components (template classes expand over the root inventory first), rules
//! concatenate their morphemes left to right, and a rules class is the union
//! of its rules. Every accept payload records the producing rule, its
//! category, the descriptor union of all morphemes plus the rule's `idp`
//! bundles, and the morpheme decomposition.

use crate::automaton::{Automaton, Payload, Segment, SegmentRole};
use crate::lexicon::{
    reserved, Descriptor, Lexicon, MorphClass, MorphRule, MorphemeRef, PropertyDef, QueryError,
    STRUCTURAL_PROPERTIES,
};
use crate::scheme::{instantiate_scheme, Root, Scheme};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("morpheme key does not resolve: {0}")]
    UnresolvedKey(String),
    #[error("component {component:?} of class {class:?} is not a valid scheme template")]
    InvalidTemplate { class: String, component: String },
    #[error("rule id {0:?} appears in more than one rules class")]
    DuplicateRule(String),
    #[error("idp bundle {bundle:?} on rule {rule:?} does not resolve")]
    UnknownBundle { rule: String, bundle: String },
    #[error("lexicon query failed: {0}")]
    Query(#[from] QueryError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompileOptions {
    pub determinize: bool,
    pub minimize: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleMeta {
    pub rules_class: String,
    pub category: String,
}

/// The compiled form of a lexicon: one automaton per word category, plus the
/// metadata analysis needs (rule index, property kinds, root inventory), so
/// a cache file is self-contained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledLexicon {
    pub categories: BTreeMap<String, Automaton>,
    pub rule_index: BTreeMap<String, RuleMeta>,
    pub properties: BTreeMap<String, PropertyDef>,
    pub roots: Vec<Root>,
}

impl CompiledLexicon {
    /// Part of speech for a category name: the segment before the first dot.
    pub fn pos_of_category(category: &str) -> &str {
        category.split('.').next().unwrap_or(category)
    }
}

pub struct Compiler<'a> {
    pub lex: &'a Lexicon,
    pub roots: &'a [Root],
}

impl<'a> Compiler<'a> {
    pub fn new(lex: &'a Lexicon, roots: &'a [Root]) -> Self {
        Compiler { lex, roots }
    }

    /// Descriptors a payload should carry for a component group: the class's
    /// `is` set plus the components' `md` set, minus structural properties.
    fn payload_descriptors(
        &self,
        class: &str,
        surface: &str,
    ) -> Result<BTreeSet<Descriptor>, CompileError> {
        let all = self.lex.effective_descriptors(class, surface)?;
        Ok(all
            .into_iter()
            .filter(|d| !STRUCTURAL_PROPERTIES.contains(&d.property.as_str()))
            .collect())
    }

    fn class_role(&self, class: &MorphClass) -> SegmentRole {
        match self.lex.class_role(class) {
            Some(r) if r == reserved::ROLE_PREFIX => SegmentRole::Prefix,
            Some(r) if r == reserved::ROLE_SUFFIX => SegmentRole::Suffix,
            _ => SegmentRole::Stem,
        }
    }

    /// Original-form surfaces reported for a component: resolved through
    /// `ref` when present, the component's own template surface for
    /// template classes without `ref`, nothing for plain concrete stems.
    fn originals_for(
        &self,
        class: &MorphClass,
        surface: &str,
    ) -> Result<Vec<String>, CompileError> {
        if class.referenced_class.is_some() {
            let originals = self.lex.resolve_original(&class.name, surface)?;
            let mut seen = BTreeSet::new();
            Ok(originals
                .into_iter()
                .map(|c| c.surface.clone())
                .filter(|s| seen.insert(s.clone()))
                .collect())
        } else if self.lex.is_template_class(class) {
            Ok(vec![surface.to_string()])
        } else {
            Ok(Vec::new())
        }
    }

    /// Automaton for one morpheme slot: union over matched components of
    /// atoms (template components expanded over the root inventory).
    /// Duplicate surfaces with identical descriptor sets merge into one
    /// payload whose originals are the union across duplicates.
    pub fn compile_morpheme(&self, m: &MorphemeRef) -> Result<Automaton, CompileError> {
        let class = self
            .lex
            .class(&m.key.class)
            .map_err(|_| CompileError::UnresolvedKey(m.key.to_xml_text()))?;
        let comps = self
            .lex
            .morpheme_components(m)
            .map_err(|_| CompileError::UnresolvedKey(m.key.to_xml_text()))?;
        let role = self.class_role(class);
        let template_class = self.lex.is_template_class(class);

        let mut surfaces: Vec<&str> = Vec::new();
        let mut seen = BTreeSet::new();
        for c in comps {
            if seen.insert(c.surface.as_str()) {
                surfaces.push(&c.surface);
            }
        }

        let mut atoms: Vec<Automaton> = Vec::new();
        for surface in surfaces {
            let descriptors = self.payload_descriptors(&class.name, surface)?;
            let originals = self.originals_for(class, surface)?;
            if template_class {
                let scheme =
                    Scheme::parse(surface).map_err(|_| CompileError::InvalidTemplate {
                        class: class.name.clone(),
                        component: surface.to_string(),
                    })?;
                for root in self.roots {
                    let Ok(stem) = instantiate_scheme(root, &scheme) else {
                        continue; // arity mismatch: skip the pair
                    };
                    let payload = Payload {
                        rule: String::new(),
                        category: String::new(),
                        descriptors: descriptors.clone(),
                        segments: vec![Segment {
                            class: class.name.clone(),
                            surface: stem.surface.clone(),
                            role,
                            template: Some(surface.to_string()),
                            root: Some(root.to_string()),
                            originals: originals.clone(),
                        }],
                    };
                    atoms.push(Automaton::atom(&stem.surface, payload).expect("stem non-empty"));
                }
            } else {
                let payload = Payload {
                    rule: String::new(),
                    category: String::new(),
                    descriptors,
                    segments: vec![Segment {
                        class: class.name.clone(),
                        surface: surface.to_string(),
                        role,
                        template: None,
                        root: None,
                        originals,
                    }],
                };
                atoms.push(
                    Automaton::atom(surface, payload).map_err(|_| CompileError::InvalidTemplate {
                        class: class.name.clone(),
                        component: surface.to_string(),
                    })?,
                );
            }
        }
        Ok(Automaton::union_all(atoms))
    }

    /// Expands a template class over a set of roots: union of one atom per
    /// compatible (root, scheme) pair.
    pub fn expand_schemes(
        &self,
        scheme_class: &str,
        roots: &[Root],
    ) -> Result<Automaton, CompileError> {
        let with_roots = Compiler {
            lex: self.lex,
            roots,
        };
        with_roots.compile_morpheme(&MorphemeRef {
            key: crate::lexicon::MorphemeKey {
                class: scheme_class.to_string(),
                selector: None,
            },
            fixed_component: None,
        })
    }

    /// Left-to-right concatenation of the rule's morphemes; accept payloads
    /// additionally carry the rule id and the expanded `idp` bundles.
    pub fn compile_rule(&self, r: &MorphRule) -> Result<Automaton, CompileError> {
        let mut machine: Option<Automaton> = None;
        for m in &r.morphemes {
            let part = self.compile_morpheme(m)?;
            machine = Some(match machine {
                None => part,
                Some(acc) => acc.concat(&part),
            });
        }
        let mut machine = machine.unwrap_or_else(Automaton::empty);
        let mut added: BTreeSet<Descriptor> = BTreeSet::new();
        for bundle in &r.added_descriptors {
            let set = self
                .lex
                .descriptor_bundle(bundle)
                .map_err(|_| CompileError::UnknownBundle {
                    rule: r.id.clone(),
                    bundle: bundle.clone(),
                })?;
            added.extend(set);
        }
        machine.map_payloads_mut(|p| {
            p.rule = r.id.clone();
            p.descriptors.extend(added.iter().cloned());
        });
        Ok(machine)
    }

    /// Union of the rules of one rules class; payloads keep per-rule identity.
    pub fn compile_rules_class(&self, rules: &[MorphRule]) -> Result<Automaton, CompileError> {
        let machines: Result<Vec<Automaton>, CompileError> =
            rules.iter().map(|r| self.compile_rule(r)).collect();
        Ok(Automaton::union_all(machines?))
    }

    /// Builds one automaton per category. Rules classes without a category
    /// land in `"uncategorized"`. Per-category construction is independent
    /// and runs in parallel when the `parallel` feature is on.
    pub fn compile_all(&self, options: CompileOptions) -> Result<CompiledLexicon, CompileError> {
        let mut rule_index: BTreeMap<String, RuleMeta> = BTreeMap::new();
        let mut by_category: BTreeMap<String, Vec<&MorphRule>> = BTreeMap::new();
        for rc in self.lex.rules_classes.values() {
            let category = rc.category.clone().unwrap_or_else(|| "uncategorized".into());
            for rule in &rc.rules {
                if rule_index.contains_key(&rule.id) {
                    return Err(CompileError::DuplicateRule(rule.id.clone()));
                }
                rule_index.insert(
                    rule.id.clone(),
                    RuleMeta {
                        rules_class: rc.name.clone(),
                        category: category.clone(),
                    },
                );
                by_category.entry(category.clone()).or_default().push(rule);
            }
        }

        let entries: Vec<(&String, &Vec<&MorphRule>)> = by_category.iter().collect();
        let build = |(category, rules): &(&String, &Vec<&MorphRule>)| -> Result<(String, Automaton), CompileError> {
            let mut machine = Automaton::union_all(
                rules
                    .iter()
                    .map(|r| self.compile_rule(r))
                    .collect::<Result<Vec<_>, _>>()?,
            );
            machine.map_payloads_mut(|p| p.category = category.to_string());
            if options.determinize || options.minimize {
                machine = machine.determinize();
            }
            if options.minimize {
                machine = machine.minimize().expect("determinized above");
            }
            Ok((category.to_string(), machine))
        };

        #[cfg(feature = "parallel")]
        let built: Result<Vec<(String, Automaton)>, CompileError> =
            entries.par_iter().map(build).collect();
        #[cfg(not(feature = "parallel"))]
        let built: Result<Vec<(String, Automaton)>, CompileError> =
            entries.iter().map(build).collect();

        Ok(CompiledLexicon {
            categories: built?.into_iter().collect(),
            rule_index,
            properties: self.lex.property_defs.clone(),
            roots: self.roots.to_vec(),
        })
    }
}
