//! XML parsing for lexicon packages.

use super::model::*;
use crate::translit;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("xml syntax error in document {document}: {message}")]
    XmlSyntax { document: usize, message: String },
    #[error("unknown tag <{tag}> in document {document}")]
    UnknownTag { tag: String, document: usize },
    #[error("duplicate class {0:?}")]
    DuplicateClass(String),
    #[error("duplicate property {0:?}")]
    DuplicateProperty(String),
    #[error("<{tag}> is missing required attribute {attr:?} (document {document})")]
    MissingAttribute {
        tag: String,
        attr: String,
        document: usize,
    },
    #[error("bad attribute value {value:?} for {attr:?} on <{tag}> (document {document})")]
    BadAttribute {
        tag: String,
        attr: String,
        value: String,
        document: usize,
    },
    #[error("component surface {surface:?} is not transliterable: {source}")]
    BadSurface {
        surface: String,
        source: translit::TranslitError,
    },
}

/// Parses one or more package documents into a single lexicon.
///
/// Accepts UTF-8 bytes only; a declared single-byte encoding is tolerated
/// when the bytes happen to be valid UTF-8 (legacy transliterated files are
/// pure ASCII). Component surfaces written in Arabic script are normalized
/// to the canonical alphabet.
pub fn parse_lexicon(documents: &[&str]) -> Result<Lexicon, ParseError> {
    let mut lex = Lexicon::default();
    for (document, text) in documents.iter().enumerate() {
        let text = normalize_encoding_declaration(text);
        let doc = roxmltree::Document::parse(&text).map_err(|e| ParseError::XmlSyntax {
            document,
            message: e.to_string(),
        })?;
        let root = doc.root_element();
        if root.tag_name().name() != "package" {
            return Err(ParseError::UnknownTag {
                tag: root.tag_name().name().to_string(),
                document,
            });
        }
        let package = root.attribute("name").unwrap_or("").to_string();
        for child in element_children(root) {
            match child.tag_name().name() {
                "morphological_class" => {
                    let class = parse_class(child, &package, document)?;
                    if lex.classes.contains_key(&class.name) {
                        return Err(ParseError::DuplicateClass(class.name));
                    }
                    lex.classes.insert(class.name.clone(), class);
                }
                "morphological_properties" => {
                    parse_properties(child, document, &mut lex)?;
                }
                "rules_class" => {
                    let rc = parse_rules_class(child, &package, document)?;
                    if lex.rules_classes.contains_key(&rc.name) {
                        return Err(ParseError::DuplicateClass(rc.name));
                    }
                    lex.rules_classes.insert(rc.name.clone(), rc);
                }
                other => {
                    return Err(ParseError::UnknownTag {
                        tag: other.to_string(),
                        document,
                    })
                }
            }
        }
    }
    Ok(lex)
}

/// Convenience over owned document strings.
pub fn parse_documents(documents: &[String]) -> Result<Lexicon, ParseError> {
    let refs: Vec<&str> = documents.iter().map(|s| s.as_str()).collect();
    parse_lexicon(&refs)
}

fn normalize_encoding_declaration(text: &str) -> String {
    // roxmltree rejects non-UTF-8 encoding declarations outright; the bytes
    // we get here are already valid UTF-8, so the declaration is stale.
    if let Some(end) = text.find("?>") {
        let head = &text[..end];
        if head.contains("encoding") && !head.to_ascii_uppercase().contains("UTF-8") {
            let rest = &text[end + 2..];
            return format!("<?xml version=\"1.0\" encoding=\"UTF-8\"?>{rest}");
        }
    }
    text.to_string()
}

fn element_children<'a, 'd>(
    node: roxmltree::Node<'a, 'd>,
) -> impl Iterator<Item = roxmltree::Node<'a, 'd>> {
    node.children().filter(|n| n.is_element())
}

fn require_attr(
    node: roxmltree::Node,
    attr: &str,
    document: usize,
) -> Result<String, ParseError> {
    node.attribute(attr)
        .map(|s| s.to_string())
        .ok_or_else(|| ParseError::MissingAttribute {
            tag: node.tag_name().name().to_string(),
            attr: attr.to_string(),
            document,
        })
}

fn parse_u32_attr(
    node: roxmltree::Node,
    attr: &str,
    document: usize,
) -> Result<Option<u32>, ParseError> {
    match node.attribute(attr) {
        None => Ok(None),
        Some(v) => v.parse::<u32>().map(Some).map_err(|_| ParseError::BadAttribute {
            tag: node.tag_name().name().to_string(),
            attr: attr.to_string(),
            value: v.to_string(),
            document,
        }),
    }
}

/// Surfaces may be written in Arabic script; normalize to canonical Latin.
fn canonical_surface(raw: &str) -> Result<String, ParseError> {
    if translit::contains_arabic(raw) {
        translit::to_latin(raw).map_err(|source| ParseError::BadSurface {
            surface: raw.to_string(),
            source,
        })
    } else {
        Ok(raw.to_string())
    }
}

fn parse_class(
    node: roxmltree::Node,
    package: &str,
    document: usize,
) -> Result<MorphClass, ParseError> {
    let name = require_attr(node, "name", document)?;
    let mut class = MorphClass {
        name,
        package: package.to_string(),
        modifier: None,
        class_descriptors: Vec::new(),
        used_properties: Vec::new(),
        referenced_class: None,
        components: Vec::new(),
    };
    for child in element_children(node) {
        match child.tag_name().name() {
            "properties" => {
                for p in element_children(child) {
                    let text = p.text().unwrap_or("").trim().to_string();
                    match p.tag_name().name() {
                        "modifier" => class.modifier = Some(text),
                        "is" => class.class_descriptors.push(DescriptorRef::parse(&text)),
                        "uses" => class.used_properties.push(text),
                        "ref" => class.referenced_class = Some(text),
                        other => {
                            return Err(ParseError::UnknownTag {
                                tag: other.to_string(),
                                document,
                            })
                        }
                    }
                }
            }
            "component" => {
                let surface = canonical_surface(&require_attr(child, "name", document)?)?;
                let id = parse_u32_attr(child, "id", document)?;
                let key = parse_u32_attr(child, "key", document)?;
                let mut local_descriptors = Vec::new();
                for md in element_children(child) {
                    match md.tag_name().name() {
                        "md" => local_descriptors.push(require_attr(md, "key", document)?),
                        other => {
                            return Err(ParseError::UnknownTag {
                                tag: other.to_string(),
                                document,
                            })
                        }
                    }
                }
                class.components.push(MorphComponent {
                    surface,
                    id,
                    key,
                    local_descriptors,
                });
            }
            other => {
                return Err(ParseError::UnknownTag {
                    tag: other.to_string(),
                    document,
                })
            }
        }
    }
    Ok(class)
}

fn parse_properties(
    node: roxmltree::Node,
    document: usize,
    lex: &mut Lexicon,
) -> Result<(), ParseError> {
    for prop in element_children(node) {
        if prop.tag_name().name() != "property" {
            return Err(ParseError::UnknownTag {
                tag: prop.tag_name().name().to_string(),
                document,
            });
        }
        let name = require_attr(prop, "name", document)?;
        let kind = match prop.attribute("type") {
            Some("exclusive") => PropertyKind::Exclusive,
            Some("additive") => PropertyKind::Additive,
            other => {
                return Err(ParseError::BadAttribute {
                    tag: "property".to_string(),
                    attr: "type".to_string(),
                    value: other.unwrap_or("<missing>").to_string(),
                    document,
                })
            }
        };
        let mut descriptors = Vec::new();
        for d in element_children(prop) {
            if d.tag_name().name() != "descriptor" {
                return Err(ParseError::UnknownTag {
                    tag: d.tag_name().name().to_string(),
                    document,
                });
            }
            descriptors.push(require_attr(d, "name", document)?);
        }
        if lex.property_defs.contains_key(&name) {
            return Err(ParseError::DuplicateProperty(name));
        }
        lex.property_defs.insert(
            name.clone(),
            PropertyDef {
                name,
                kind,
                descriptors,
            },
        );
    }
    Ok(())
}

fn parse_rules_class(
    node: roxmltree::Node,
    package: &str,
    document: usize,
) -> Result<RulesClass, ParseError> {
    let name = require_attr(node, "name", document)?;
    let category = node.attribute("category").map(|s| s.to_string());
    let mut rules = Vec::new();
    for (ordinal, child) in element_children(node).enumerate() {
        if child.tag_name().name() != "rule" {
            return Err(ParseError::UnknownTag {
                tag: child.tag_name().name().to_string(),
                document,
            });
        }
        // rule ids are optional in the wild; synthesize a stable one
        let id = child
            .attribute("id")
            .map(|s| s.to_string())
            .unwrap_or_else(|| format!("{name}_{}", ordinal + 1));
        let mut morphemes = Vec::new();
        let mut added_descriptors = Vec::new();
        for part in element_children(child) {
            match part.tag_name().name() {
                "morpheme" => {
                    let key = MorphemeKey::parse(&require_attr(part, "key", document)?);
                    let fixed_component = match part.attribute("component") {
                        Some(c) => Some(canonical_surface(c)?),
                        None => None,
                    };
                    morphemes.push(MorphemeRef {
                        key,
                        fixed_component,
                    });
                }
                "idp" => added_descriptors.push(require_attr(part, "name", document)?),
                other => {
                    return Err(ParseError::UnknownTag {
                        tag: other.to_string(),
                        document,
                    })
                }
            }
        }
        rules.push(MorphRule {
            id,
            morphemes,
            added_descriptors,
        });
    }
    Ok(RulesClass {
        name,
        package: package.to_string(),
        category,
        rules,
    })
}
