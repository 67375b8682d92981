//! Cross-reference validation. Violations are data, not failures: an empty
//! report means the lexicon is sound.

use super::model::*;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A keyed component whose key matches no id in the referenced class.
    DanglingRef {
        class: String,
        surface: String,
        key: u32,
    },
    /// An `is`/`md` code that does not resolve, or an `md` code outside the
    /// class's `uses` declarations.
    UnknownDescriptor { class: String, code: String },
    /// A component carrying two descriptors of one exclusive property
    /// (class-level and component-level combined).
    ExclusiveViolation {
        class: String,
        surface: String,
        property: String,
    },
    /// A rule morpheme key naming an undeclared class.
    UnresolvedMorphemeKey { rule: String, key: String },
    /// A pinned component surface absent from the morpheme's selection.
    FixedComponentNotInClass { rule: String, surface: String },
    /// An `idp` naming no declared bundle class.
    UnknownBundle { rule: String, name: String },
    /// A `uses` entry naming no declared property.
    UnknownProperty { class: String, name: String },
    /// A descriptor code declared twice within one property.
    DuplicateDescriptor { property: String, code: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingRef { class, surface, key } => {
                write!(f, "dangling ref: {class}:{surface} key={key}")
            }
            Violation::UnknownDescriptor { class, code } => {
                write!(f, "unknown descriptor {code:?} in {class}")
            }
            Violation::ExclusiveViolation {
                class,
                surface,
                property,
            } => write!(
                f,
                "component {class}:{surface} carries several {property} descriptors (exclusive)"
            ),
            Violation::UnresolvedMorphemeKey { rule, key } => {
                write!(f, "rule {rule}: morpheme key {key:?} does not resolve")
            }
            Violation::FixedComponentNotInClass { rule, surface } => {
                write!(f, "rule {rule}: component {surface:?} not in selection")
            }
            Violation::UnknownBundle { rule, name } => {
                write!(f, "rule {rule}: idp bundle {name:?} not declared")
            }
            Violation::UnknownProperty { class, name } => {
                write!(f, "class {class}: uses unknown property {name:?}")
            }
            Violation::DuplicateDescriptor { property, code } => {
                write!(f, "property {property}: descriptor {code:?} declared twice")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            writeln!(f, "ok")
        } else {
            for v in &self.violations {
                writeln!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Checks every cross-reference in the lexicon.
pub fn validate_lexicon(lex: &Lexicon) -> ValidationReport {
    let mut violations = Vec::new();

    for def in lex.property_defs.values() {
        let mut seen = BTreeSet::new();
        for code in &def.descriptors {
            if !seen.insert(code.as_str()) {
                violations.push(Violation::DuplicateDescriptor {
                    property: def.name.clone(),
                    code: code.clone(),
                });
            }
        }
    }

    for class in lex.classes.values() {
        for used in &class.used_properties {
            if !lex.property_defs.contains_key(used) {
                violations.push(Violation::UnknownProperty {
                    class: class.name.clone(),
                    name: used.clone(),
                });
            }
        }
        for d in &class.class_descriptors {
            if lex.resolve_descriptor(d).is_err() {
                violations.push(Violation::UnknownDescriptor {
                    class: class.name.clone(),
                    code: d.to_xml_text(),
                });
            }
        }
        let referenced = class
            .referenced_class
            .as_ref()
            .and_then(|name| lex.classes.get(name));
        if class.referenced_class.is_some() && referenced.is_none() {
            // missing target class: every keyed component dangles
            for comp in &class.components {
                if let Some(key) = comp.key {
                    violations.push(Violation::DanglingRef {
                        class: class.name.clone(),
                        surface: comp.surface.clone(),
                        key,
                    });
                }
            }
        }

        for comp in &class.components {
            for code in &comp.local_descriptors {
                match lex.property_of_code(code) {
                    None => violations.push(Violation::UnknownDescriptor {
                        class: class.name.clone(),
                        code: code.clone(),
                    }),
                    Some(def) => {
                        if !class.used_properties.contains(&def.name) {
                            violations.push(Violation::UnknownDescriptor {
                                class: class.name.clone(),
                                code: code.clone(),
                            });
                        }
                    }
                }
            }
            // exclusive properties: at most one code per component,
            // class-level and local descriptors combined
            let mut per_property: BTreeSet<(String, String)> = BTreeSet::new();
            let resolved_class_level = class
                .class_descriptors
                .iter()
                .filter_map(|d| lex.resolve_descriptor(d).ok());
            let resolved_local = comp
                .local_descriptors
                .iter()
                .filter_map(|code| lex.property_of_code(code).map(|p| Descriptor::new(&p.name, code)));
            for d in resolved_class_level.chain(resolved_local) {
                per_property.insert((d.property, d.code));
            }
            let mut counts: std::collections::BTreeMap<&str, usize> = Default::default();
            for (property, _) in &per_property {
                *counts.entry(property.as_str()).or_default() += 1;
            }
            for (property, count) in counts {
                let exclusive = lex
                    .property_defs
                    .get(property)
                    .map(|p| p.kind == PropertyKind::Exclusive)
                    .unwrap_or(false);
                if exclusive && count > 1 {
                    violations.push(Violation::ExclusiveViolation {
                        class: class.name.clone(),
                        surface: comp.surface.clone(),
                        property: property.to_string(),
                    });
                }
            }
            // keys must land on ids in the referenced class
            if let (Some(key), Some(target)) = (comp.key, referenced) {
                if !target.components.iter().any(|c| c.id == Some(key)) {
                    violations.push(Violation::DanglingRef {
                        class: class.name.clone(),
                        surface: comp.surface.clone(),
                        key,
                    });
                }
            }
        }
    }

    for rc in lex.rules_classes.values() {
        for rule in &rc.rules {
            for m in &rule.morphemes {
                if !lex.classes.contains_key(&m.key.class) {
                    violations.push(Violation::UnresolvedMorphemeKey {
                        rule: rule.id.clone(),
                        key: m.key.to_xml_text(),
                    });
                    continue;
                }
                if m.fixed_component.is_some() && lex.morpheme_components(m).is_err() {
                    violations.push(Violation::FixedComponentNotInClass {
                        rule: rule.id.clone(),
                        surface: m.fixed_component.clone().unwrap(),
                    });
                }
            }
            for bundle in &rule.added_descriptors {
                if !lex.classes.contains_key(bundle) {
                    violations.push(Violation::UnknownBundle {
                        rule: rule.id.clone(),
                        name: bundle.clone(),
                    });
                }
            }
        }
    }

    ValidationReport { violations }
}
