//! In-memory lexicon model and resolution queries.

use super::reserved;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropertyKind {
    Exclusive,
    Additive,
}

/// A morphological property: a named set of descriptor codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyDef {
    pub name: String,
    pub kind: PropertyKind,
    pub descriptors: Vec<String>,
}

/// A resolved (property, code) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Descriptor {
    pub property: String,
    pub code: String,
}

impl Descriptor {
    pub fn new(property: &str, code: &str) -> Self {
        Descriptor {
            property: property.to_string(),
            code: code.to_string(),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.property, self.code)
    }
}

/// A descriptor reference as written in the XML: either `Property.Code` or a
/// bare code (resolved through the global descriptor index).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum DescriptorRef {
    Dotted { property: String, code: String },
    Bare { code: String },
}

impl DescriptorRef {
    pub fn parse(text: &str) -> Self {
        match text.split_once('.') {
            Some((property, code)) => DescriptorRef::Dotted {
                property: property.to_string(),
                code: code.to_string(),
            },
            None => DescriptorRef::Bare {
                code: text.to_string(),
            },
        }
    }

    pub fn code(&self) -> &str {
        match self {
            DescriptorRef::Dotted { code, .. } | DescriptorRef::Bare { code } => code,
        }
    }

    pub fn to_xml_text(&self) -> String {
        match self {
            DescriptorRef::Dotted { property, code } => format!("{property}.{code}"),
            DescriptorRef::Bare { code } => code.clone(),
        }
    }
}

/// One entry of a morphological class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphComponent {
    /// Canonical-alphabet surface.
    pub surface: String,
    /// Original-form identifier, referenced by other classes' `key`.
    pub id: Option<u32>,
    /// Reference to an original component's `id` in the `ref` class.
    pub key: Option<u32>,
    /// Component-level descriptors (`md` children, bare codes).
    pub local_descriptors: Vec<String>,
}

/// A morphological component class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphClass {
    pub name: String,
    pub package: String,
    /// `<modifier>` text, stored without assigned semantics.
    pub modifier: Option<String>,
    /// `is` entries.
    pub class_descriptors: Vec<DescriptorRef>,
    /// `uses` entries (property names).
    pub used_properties: Vec<String>,
    /// `ref` entry.
    pub referenced_class: Option<String>,
    pub components: Vec<MorphComponent>,
}

impl MorphClass {
    /// Components with the given surface (duplicates allowed by design).
    pub fn components_by_surface(&self, surface: &str) -> Vec<&MorphComponent> {
        self.components
            .iter()
            .filter(|c| c.surface == surface)
            .collect()
    }

    /// Distinct component surfaces in declaration order.
    pub fn surfaces(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.components
            .iter()
            .filter(|c| seen.insert(c.surface.as_str()))
            .map(|c| c.surface.as_str())
            .collect()
    }
}

/// A morpheme slot inside a rule: `ClassName.Selector` plus an optional
/// pinned component surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphemeRef {
    pub key: MorphemeKey,
    pub fixed_component: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphemeKey {
    pub class: String,
    /// Selector after the dot. Naming a declared descriptor code filters to
    /// components carrying it; anything else selects the whole class.
    pub selector: Option<String>,
}

impl MorphemeKey {
    pub fn parse(text: &str) -> Self {
        match text.split_once('.') {
            Some((class, selector)) => MorphemeKey {
                class: class.to_string(),
                selector: Some(selector.to_string()),
            },
            None => MorphemeKey {
                class: text.to_string(),
                selector: None,
            },
        }
    }

    pub fn to_xml_text(&self) -> String {
        match &self.selector {
            Some(sel) => format!("{}.{}", self.class, sel),
            None => self.class.clone(),
        }
    }
}

/// One word-formation rule: an ordered concatenation of morphemes plus
/// descriptor bundles attached to every word the rule accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphRule {
    pub id: String,
    pub morphemes: Vec<MorphemeRef>,
    /// `idp` bundle names.
    pub added_descriptors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RulesClass {
    pub name: String,
    pub package: String,
    /// Compilation category (e.g. `verb.strong`, `noun.derived`).
    pub category: Option<String>,
    pub rules: Vec<MorphRule>,
}

/// The parsed lexicon: all packages merged into one namespace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    pub property_defs: BTreeMap<String, PropertyDef>,
    pub classes: BTreeMap<String, MorphClass>,
    pub rules_classes: BTreeMap<String, RulesClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("class {0:?} is not declared")]
    UnknownClass(String),
    #[error("class {class:?} has no component {surface:?}")]
    UnknownComponent { class: String, surface: String },
    #[error("class {0:?} declares no ref")]
    NoReference(String),
    #[error("key {key} of {class}:{surface} not found in {referenced}")]
    KeyNotFound {
        class: String,
        surface: String,
        key: u32,
        referenced: String,
    },
    #[error("descriptor {0:?} does not resolve")]
    UnresolvedDescriptor(String),
}

impl Lexicon {
    /// The property a descriptor code belongs to, if the code is declared
    /// anywhere (first declaring property in name order wins; validation
    /// flags genuinely ambiguous duplicates).
    pub fn property_of_code(&self, code: &str) -> Option<&PropertyDef> {
        self.property_defs
            .values()
            .find(|p| p.descriptors.iter().any(|d| d == code))
    }

    /// Resolves a raw descriptor reference to a (property, code) pair.
    pub fn resolve_descriptor(&self, r: &DescriptorRef) -> Result<Descriptor, QueryError> {
        match r {
            DescriptorRef::Dotted { property, code } => {
                let def = self
                    .property_defs
                    .get(property)
                    .ok_or_else(|| QueryError::UnresolvedDescriptor(r.to_xml_text()))?;
                if def.descriptors.iter().any(|d| d == code) {
                    Ok(Descriptor::new(property, code))
                } else {
                    Err(QueryError::UnresolvedDescriptor(r.to_xml_text()))
                }
            }
            DescriptorRef::Bare { code } => self
                .property_of_code(code)
                .map(|def| Descriptor::new(&def.name, code))
                .ok_or_else(|| QueryError::UnresolvedDescriptor(code.clone())),
        }
    }

    pub fn class(&self, name: &str) -> Result<&MorphClass, QueryError> {
        self.classes
            .get(name)
            .ok_or_else(|| QueryError::UnknownClass(name.to_string()))
    }

    /// Union of a class's `is` descriptors and a component's `md`
    /// descriptors, resolved. Duplicate surfaces contribute the union of
    /// their (identical, by fixture discipline) descriptor sets.
    pub fn effective_descriptors(
        &self,
        class: &str,
        surface: &str,
    ) -> Result<BTreeSet<Descriptor>, QueryError> {
        let cls = self.class(class)?;
        let comps = cls.components_by_surface(surface);
        if comps.is_empty() {
            return Err(QueryError::UnknownComponent {
                class: class.to_string(),
                surface: surface.to_string(),
            });
        }
        let mut out = BTreeSet::new();
        for d in &cls.class_descriptors {
            out.insert(self.resolve_descriptor(d)?);
        }
        for comp in comps {
            for code in &comp.local_descriptors {
                out.insert(self.resolve_descriptor(&DescriptorRef::Bare { code: code.clone() })?);
            }
        }
        Ok(out)
    }

    /// The original components a keyed component refers to. Duplicate
    /// surfaces with distinct keys return all their originals, and a shared
    /// id may match several originals; hence a list.
    pub fn resolve_original(
        &self,
        class: &str,
        surface: &str,
    ) -> Result<Vec<&MorphComponent>, QueryError> {
        let cls = self.class(class)?;
        let referenced_name = cls
            .referenced_class
            .as_ref()
            .ok_or_else(|| QueryError::NoReference(class.to_string()))?;
        let referenced = self.class(referenced_name)?;
        let comps = cls.components_by_surface(surface);
        if comps.is_empty() {
            return Err(QueryError::UnknownComponent {
                class: class.to_string(),
                surface: surface.to_string(),
            });
        }
        let mut out = Vec::new();
        for comp in comps {
            let Some(key) = comp.key else { continue };
            let matches: Vec<&MorphComponent> = referenced
                .components
                .iter()
                .filter(|c| c.id == Some(key))
                .collect();
            if matches.is_empty() {
                return Err(QueryError::KeyNotFound {
                    class: class.to_string(),
                    surface: surface.to_string(),
                    key,
                    referenced: referenced_name.clone(),
                });
            }
            out.extend(matches);
        }
        Ok(out)
    }

    /// Descriptor bundle named by an `idp`: the `is` set of a
    /// component-less class of that name.
    pub fn descriptor_bundle(&self, name: &str) -> Result<BTreeSet<Descriptor>, QueryError> {
        let cls = self.class(name)?;
        cls.class_descriptors
            .iter()
            .map(|d| self.resolve_descriptor(d))
            .collect()
    }

    /// Whether a class is marked as holding root templates (`Morph.Tpl`).
    pub fn is_template_class(&self, class: &MorphClass) -> bool {
        class.class_descriptors.iter().any(|d| {
            matches!(d, DescriptorRef::Dotted { property, code }
                if property == "Morph" && code == reserved::MORPH_TEMPLATE)
                || matches!(d, DescriptorRef::Bare { code } if code == reserved::MORPH_TEMPLATE)
        })
    }

    /// Affix role carried by a class (`Role.Pre` / `Role.Suf`), if any.
    pub fn class_role(&self, class: &MorphClass) -> Option<&'static str> {
        for d in &class.class_descriptors {
            let code = d.code();
            if code == reserved::ROLE_PREFIX {
                return Some(reserved::ROLE_PREFIX);
            }
            if code == reserved::ROLE_SUFFIX {
                return Some(reserved::ROLE_SUFFIX);
            }
        }
        None
    }

    /// Component surfaces a morpheme reference matches: fixed component if
    /// pinned, else components carrying the selector descriptor if the
    /// selector names a declared code, else the whole class.
    pub fn morpheme_components<'a>(
        &'a self,
        m: &MorphemeRef,
    ) -> Result<Vec<&'a MorphComponent>, QueryError> {
        let cls = self.class(&m.key.class)?;
        let selector_code: Option<&str> = m
            .key
            .selector
            .as_deref()
            .filter(|sel| self.property_of_code(sel).is_some());
        let selected: Vec<&MorphComponent> = cls
            .components
            .iter()
            .filter(|c| match selector_code {
                Some(code) => c.local_descriptors.iter().any(|d| d == code),
                None => true,
            })
            .collect();
        match &m.fixed_component {
            Some(surface) => {
                let pinned: Vec<&MorphComponent> = selected
                    .into_iter()
                    .filter(|c| &c.surface == surface)
                    .collect();
                if pinned.is_empty() {
                    Err(QueryError::UnknownComponent {
                        class: m.key.class.clone(),
                        surface: surface.clone(),
                    })
                } else {
                    Ok(pinned)
                }
            }
            None => Ok(selected),
        }
    }

    /// Total component count across classes.
    pub fn component_count(&self) -> usize {
        self.classes.values().map(|c| c.components.len()).sum()
    }

    /// Total rule count across rules classes.
    pub fn rule_count(&self) -> usize {
        self.rules_classes.values().map(|rc| rc.rules.len()).sum()
    }

    /// Serializes the lexicon back to XML, one document per package, sorted
    /// by package name. `parse(serialize(parse(docs)))` is a fixed point.
    pub fn to_xml_documents(&self) -> Vec<String> {
        let mut packages: BTreeMap<&str, String> = BTreeMap::new();
        for def in self.property_defs.values() {
            packages
                .entry("__properties__")
                .or_default()
                .push_str(&property_xml(def));
        }
        for class in self.classes.values() {
            packages
                .entry(&class.package)
                .or_default()
                .push_str(&class_xml(class));
        }
        for rc in self.rules_classes.values() {
            packages
                .entry(&rc.package)
                .or_default()
                .push_str(&rules_class_xml(rc));
        }
        packages
            .into_iter()
            .map(|(name, body)| {
                let name = if name == "__properties__" {
                    self.property_package_name()
                } else {
                    name.to_string()
                };
                format!(
                    "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<package name=\"{name}\">\n{body}</package>\n"
                )
            })
            .collect()
    }

    fn property_package_name(&self) -> String {
        // properties keep no package of their own in the model; emit a stable one
        "PropertiesPackage".to_string()
    }
}

fn property_xml(def: &PropertyDef) -> String {
    let kind = match def.kind {
        PropertyKind::Exclusive => "exclusive",
        PropertyKind::Additive => "additive",
    };
    let mut s = format!(
        "  <morphological_properties>\n    <property name=\"{}\" type=\"{kind}\">\n",
        def.name
    );
    for d in &def.descriptors {
        s.push_str(&format!("      <descriptor name=\"{d}\" />\n"));
    }
    s.push_str("    </property>\n  </morphological_properties>\n");
    s
}

fn class_xml(class: &MorphClass) -> String {
    let mut s = format!("  <morphological_class name=\"{}\">\n", class.name);
    let has_props = class.modifier.is_some()
        || !class.class_descriptors.is_empty()
        || !class.used_properties.is_empty()
        || class.referenced_class.is_some();
    if has_props {
        s.push_str("    <properties>\n");
        if let Some(m) = &class.modifier {
            s.push_str(&format!("      <modifier>{m}</modifier>\n"));
        }
        for d in &class.class_descriptors {
            s.push_str(&format!("      <is>{}</is>\n", d.to_xml_text()));
        }
        for u in &class.used_properties {
            s.push_str(&format!("      <uses>{u}</uses>\n"));
        }
        if let Some(r) = &class.referenced_class {
            s.push_str(&format!("      <ref>{r}</ref>\n"));
        }
        s.push_str("    </properties>\n");
    }
    for c in &class.components {
        let mut attrs = format!(" name=\"{}\"", c.surface);
        if let Some(id) = c.id {
            attrs.push_str(&format!(" id=\"{id}\""));
        }
        if let Some(key) = c.key {
            attrs.push_str(&format!(" key=\"{key}\""));
        }
        if c.local_descriptors.is_empty() {
            s.push_str(&format!("    <component{attrs} />\n"));
        } else {
            s.push_str(&format!("    <component{attrs}>\n"));
            for md in &c.local_descriptors {
                s.push_str(&format!("      <md key=\"{md}\" />\n"));
            }
            s.push_str("    </component>\n");
        }
    }
    s.push_str("  </morphological_class>\n");
    s
}

fn rules_class_xml(rc: &RulesClass) -> String {
    let cat = rc
        .category
        .as_ref()
        .map(|c| format!(" category=\"{c}\""))
        .unwrap_or_default();
    let mut s = format!("  <rules_class name=\"{}\"{cat}>\n", rc.name);
    for rule in &rc.rules {
        s.push_str(&format!("    <rule id=\"{}\">\n", rule.id));
        for m in &rule.morphemes {
            let comp = m
                .fixed_component
                .as_ref()
                .map(|c| format!(" component=\"{c}\""))
                .unwrap_or_default();
            s.push_str(&format!(
                "      <morpheme key=\"{}\"{comp} />\n",
                m.key.to_xml_text()
            ));
        }
        for idp in &rule.added_descriptors {
            s.push_str(&format!("      <idp name=\"{idp}\" />\n"));
        }
        s.push_str("    </rule>\n");
    }
    s.push_str("  </rules_class>\n");
    s
}
