//! Lexicon parsing and validation over small hand-written packages shaped
//! like the classic class/property/rule layouts the format is built around.

use wazn::lexicon::{
    parse_lexicon, validate_lexicon, DescriptorRef, ParseError, PropertyKind, Violation,
};

const PROPERTIES: &str = r#"<?xml version="1.0" encoding="ISO-8859-1" ?>
<package name="PropertyPackage">
  <morphological_properties>
    <property name="Person" type="exclusive">
      <descriptor name="Pr1" />
      <descriptor name="Pr2" />
      <descriptor name="Pr3" />
    </property>
    <property name="Gender" type="additive">
      <descriptor name="GFe" />
      <descriptor name="GMa" />
    </property>
    <property name="Number" type="exclusive">
      <descriptor name="NSg" />
      <descriptor name="NDl" />
      <descriptor name="NPl" />
    </property>
    <property name="Place" type="exclusive">
      <descriptor name="pro" />
      <descriptor name="LOI" />
    </property>
  </morphological_properties>
</package>"#;

const ORIGIN_SCHEMES: &str = r#"<?xml version="1.0" encoding="ISO-8859-1" ?>
<package name="OrigineSchemesPackage">
  <morphological_class name="OriginSchemeS">
    <properties>
      <modifier>final</modifier>
      <is>Number.NSg</is>
      <is>Person.Pr3</is>
      <is>Gender.GMa</is>
    </properties>
    <component name="facala" id="1" />
    <component name="facila" id="2" />
    <component name="facula" id="3" />
    <component name="faclala" id="4" />
    <component name="eafcala" id="5" />
  </morphological_class>
</package>"#;

const CONJUGATED: &str = r#"<?xml version="1.0" encoding="ISO-8859-1" ?>
<package name="ConjugatedPackage">
  <morphological_class name="VerbSainMuDAric">
    <properties>
      <ref>OriginSchemeS</ref>
    </properties>
    <component name="afcal" key="1" />
    <component name="afcil" key="2" />
    <component name="afcul" key="3" />
    <component name="ufcil" key="5" />
  </morphological_class>
</package>"#;

const DEMONSTRATIVES: &str = r#"<?xml version="1.0" encoding="ISO-8859-1" ?>
<package name="DemPackage">
  <morphological_class name="NPEichArat">
    <properties>
      <uses>Gender</uses>
      <uses>Number</uses>
      <uses>Place</uses>
    </properties>
    <component name="hAvA">
      <md key="NSg" />
      <md key="GMa" />
      <md key="pro" />
    </component>
    <component name="vAlika">
      <md key="NSg" />
      <md key="GMa" />
      <md key="LOI" />
    </component>
  </morphological_class>
</package>"#;

#[test]
fn parses_property_package() {
    let lex = parse_lexicon(&[PROPERTIES]).unwrap();
    let person = &lex.property_defs["Person"];
    assert_eq!(person.kind, PropertyKind::Exclusive);
    assert_eq!(person.descriptors, vec!["Pr1", "Pr2", "Pr3"]);
    let gender = &lex.property_defs["Gender"];
    assert_eq!(gender.kind, PropertyKind::Additive);
    assert_eq!(gender.descriptors, vec!["GFe", "GMa"]);
}

#[test]
fn parses_origin_scheme_class() {
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES]).unwrap();
    let class = &lex.classes["OriginSchemeS"];
    assert_eq!(class.components.len(), 5);
    assert_eq!(class.components[0].surface, "facala");
    assert_eq!(class.components[0].id, Some(1));
    assert_eq!(class.modifier.as_deref(), Some("final"));
    let codes: Vec<&str> = class.class_descriptors.iter().map(|d| d.code()).collect();
    assert_eq!(codes, vec!["NSg", "Pr3", "GMa"]);
}

#[test]
fn bare_is_codes_resolve_through_the_descriptor_index() {
    let doc = r#"<?xml version="1.0" encoding="ISO-8859-1" ?>
<package name="P">
  <morphological_properties>
    <property name="StemClass" type="additive">
      <descriptor name="FinalVerbS" />
    </property>
  </morphological_properties>
  <morphological_class name="C">
    <properties>
      <is>FinalVerbS</is>
    </properties>
    <component name="facala" id="1" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[doc]).unwrap();
    assert!(validate_lexicon(&lex).is_empty());
    let d = lex
        .resolve_descriptor(&DescriptorRef::Bare {
            code: "FinalVerbS".into(),
        })
        .unwrap();
    assert_eq!(d.property, "StemClass");
}

#[test]
fn empty_package_parses_to_empty_lexicon() {
    let lex = parse_lexicon(&[r#"<package name="Empty"></package>"#]).unwrap();
    assert!(lex.classes.is_empty());
    assert!(lex.property_defs.is_empty());
    assert!(lex.rules_classes.is_empty());
}

#[test]
fn unknown_tag_is_rejected() {
    let err = parse_lexicon(&[r#"<package name="P"><lexeme name="x"/></package>"#]).unwrap_err();
    assert!(matches!(err, ParseError::UnknownTag { tag, .. } if tag == "lexeme"));
}

#[test]
fn duplicate_class_is_rejected() {
    let doc = r#"<package name="P"><morphological_class name="C"/></package>"#;
    let err = parse_lexicon(&[doc, doc]).unwrap_err();
    assert!(matches!(err, ParseError::DuplicateClass(name) if name == "C"));
}

#[test]
fn malformed_xml_is_a_syntax_error() {
    let err = parse_lexicon(&["<package name=\"P\">"]).unwrap_err();
    assert!(matches!(err, ParseError::XmlSyntax { .. }));
}

#[test]
fn arabic_script_surfaces_normalize() {
    let doc = r#"<?xml version="1.0" encoding="UTF-8" ?>
<package name="P">
  <morphological_class name="C">
    <component name="مَعَ" id="1" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[doc]).unwrap();
    assert_eq!(lex.classes["C"].components[0].surface, "maca");
}

#[test]
fn conjugated_forms_validate_against_originals() {
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, CONJUGATED]).unwrap();
    let report = validate_lexicon(&lex);
    assert!(report.is_empty(), "{report}");
}

#[test]
fn missing_original_class_dangles_every_key() {
    let lex = parse_lexicon(&[PROPERTIES, CONJUGATED]).unwrap();
    let report = validate_lexicon(&lex);
    let dangling = report
        .violations
        .iter()
        .filter(|v| matches!(v, Violation::DanglingRef { .. }))
        .count();
    assert_eq!(dangling, 4, "{report}");
}

#[test]
fn dangling_single_key_is_reported() {
    let bad = r#"<package name="P2">
  <morphological_class name="Conj">
    <properties><ref>OriginSchemeS</ref></properties>
    <component name="afcal" key="9" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, bad]).unwrap();
    let report = validate_lexicon(&lex);
    assert!(report.violations.iter().any(|v| matches!(
        v,
        Violation::DanglingRef { class, key: 9, .. } if class == "Conj"
    )));
}

#[test]
fn exclusive_violation_is_reported() {
    let bad = r#"<package name="P3">
  <morphological_class name="Pronouns">
    <properties><uses>Person</uses></properties>
    <component name="hum">
      <md key="Pr1" />
      <md key="Pr2" />
    </component>
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[PROPERTIES, bad]).unwrap();
    let report = validate_lexicon(&lex);
    assert!(report.violations.iter().any(|v| matches!(
        v,
        Violation::ExclusiveViolation { property, .. } if property == "Person"
    )));
}

#[test]
fn md_outside_uses_is_reported() {
    let bad = r#"<package name="P4">
  <morphological_class name="C4">
    <component name="x">
      <md key="Pr1" />
    </component>
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[PROPERTIES, bad]).unwrap();
    let report = validate_lexicon(&lex);
    assert!(report.violations.iter().any(|v| matches!(
        v,
        Violation::UnknownDescriptor { class, code } if class == "C4" && code == "Pr1"
    )));
}

#[test]
fn unresolved_morpheme_key_and_fixed_component() {
    let rules = r#"<package name="R">
  <rules_class name="rc">
    <rule id="r1">
      <morpheme key="NoSuchClass.X" />
    </rule>
    <rule id="r2">
      <morpheme key="OriginSchemeS.S" component="zzz" />
    </rule>
    <rule id="r3">
      <morpheme key="OriginSchemeS.S" />
      <idp name="NoSuchBundle" />
    </rule>
  </rules_class>
</package>"#;
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, rules]).unwrap();
    let report = validate_lexicon(&lex);
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::UnresolvedMorphemeKey { rule, .. } if rule == "r1")));
    assert!(report.violations.iter().any(
        |v| matches!(v, Violation::FixedComponentNotInClass { rule, surface } if rule == "r2" && surface == "zzz")
    ));
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, Violation::UnknownBundle { rule, .. } if rule == "r3")));
}

#[test]
fn resolve_original_examples() {
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, CONJUGATED]).unwrap();
    let originals = lex.resolve_original("VerbSainMuDAric", "afcal").unwrap();
    assert_eq!(
        originals.iter().map(|c| c.surface.as_str()).collect::<Vec<_>>(),
        vec!["facala"]
    );
    let originals = lex.resolve_original("VerbSainMuDAric", "ufcil").unwrap();
    assert_eq!(
        originals.iter().map(|c| c.surface.as_str()).collect::<Vec<_>>(),
        vec!["eafcala"]
    );
    // a class without ref
    let err = lex.resolve_original("OriginSchemeS", "facala").unwrap_err();
    assert!(matches!(
        err,
        wazn::lexicon::QueryError::NoReference(name) if name == "OriginSchemeS"
    ));
}

#[test]
fn shared_keys_return_all_originals() {
    let pas = r#"<package name="Pas">
  <morphological_class name="Passive">
    <properties><ref>OriginSchemeS</ref></properties>
    <component name="fucil" key="1" />
    <component name="fucil" key="2" />
    <component name="fucil" key="3" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, pas]).unwrap();
    let originals = lex.resolve_original("Passive", "fucil").unwrap();
    assert_eq!(
        originals.iter().map(|c| c.surface.as_str()).collect::<Vec<_>>(),
        vec!["facala", "facila", "facula"]
    );
}

#[test]
fn effective_descriptors_examples() {
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, DEMONSTRATIVES]).unwrap();
    let set = lex.effective_descriptors("NPEichArat", "hAvA").unwrap();
    let codes: Vec<&str> = set.iter().map(|d| d.code.as_str()).collect();
    assert_eq!(codes.len(), 3);
    for code in ["NSg", "GMa", "pro"] {
        assert!(codes.contains(&code), "{codes:?}");
    }

    let set = lex.effective_descriptors("OriginSchemeS", "facala").unwrap();
    let codes: std::collections::BTreeSet<&str> = set.iter().map(|d| d.code.as_str()).collect();
    assert_eq!(codes, ["GMa", "NSg", "Pr3"].into_iter().collect());

    // no is, no md
    let bare = r#"<package name="B"><morphological_class name="Bare">
      <component name="x" /></morphological_class></package>"#;
    let lex = parse_lexicon(&[bare]).unwrap();
    assert!(lex.effective_descriptors("Bare", "x").unwrap().is_empty());
}

#[test]
fn serialize_parse_is_a_fixed_point() {
    let lex = parse_lexicon(&[PROPERTIES, ORIGIN_SCHEMES, CONJUGATED, DEMONSTRATIVES]).unwrap();
    let docs = lex.to_xml_documents();
    let reparsed = wazn::lexicon::parse_documents(&docs).unwrap();
    assert_eq!(reparsed, lex);
    // and once more, to pin idempotence
    let again = wazn::lexicon::parse_documents(&reparsed.to_xml_documents()).unwrap();
    assert_eq!(again, reparsed);
}

#[test]
fn seed_round_trips_through_serialization() {
    let (lex, _) = wazn::seed::load_seed().unwrap();
    let reparsed = wazn::lexicon::parse_documents(&lex.to_xml_documents()).unwrap();
    assert_eq!(reparsed, lex);
}
