//! Rule compilation over the bundled lexicon and over small inline
//! fixtures: morpheme expansion, rule concatenation with idp bundles,
//! rules-class union, scheme expansion, and full builds.

mod common;

use common::oracle_language;
use std::collections::BTreeSet;
use wazn::compiler::{CompileOptions, Compiler};
use wazn::lexicon::{parse_lexicon, Lexicon, MorphemeKey, MorphemeRef};
use wazn::scheme::Root;

fn morpheme(key: &str, component: Option<&str>) -> MorphemeRef {
    MorphemeRef {
        key: MorphemeKey::parse(key),
        fixed_component: component.map(|s| s.to_string()),
    }
}

fn seed() -> (Lexicon, Vec<Root>) {
    wazn::seed::load_seed().expect("bundled lexicon loads")
}

#[test]
fn fixed_component_morpheme_is_a_single_atom() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let m = compiler
        .compile_morpheme(&morpheme("CasSuffixe.SCID", Some("un")))
        .unwrap();
    assert_eq!(
        oracle_language(&m, 4),
        BTreeSet::from(["un".to_string()])
    );
}

#[test]
fn plain_morpheme_unions_the_whole_class() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    // three prefixes: y, t, e
    let m = compiler
        .compile_morpheme(&morpheme("VerbPreMuDAric.SPre", None))
        .unwrap();
    assert_eq!(oracle_language(&m, 2).len(), 3);
}

#[test]
fn selector_filters_to_carrying_components() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let m = compiler
        .compile_morpheme(&morpheme("CardNumber.CNAccepteSCID", None))
        .unwrap();
    let lang = oracle_language(&m, 10);
    assert!(lang.contains("wAHid"));
    assert!(lang.contains("Sifr"));
    assert!(lang.contains("ca^arat"));
    assert!(!lang.contains("~amAn"), "unselected component leaks in");
}

#[test]
fn morpheme_payloads_equal_lexicon_descriptor_queries() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let m = compiler
        .compile_morpheme(&morpheme("CardNumber.CNAccepteSCID", None))
        .unwrap();
    for surface in ["wAHid", "Sifr"] {
        let payloads = m.lookup(surface);
        assert_eq!(payloads.len(), 1, "{surface}");
        let expected: BTreeSet<String> = lex
            .effective_descriptors("CardNumber", surface)
            .unwrap()
            .into_iter()
            .filter(|d| !wazn::lexicon::STRUCTURAL_PROPERTIES.contains(&d.property.as_str()))
            .map(|d| d.code)
            .collect();
        let got: BTreeSet<String> = payloads[0]
            .descriptors
            .iter()
            .map(|d| d.code.clone())
            .collect();
        assert_eq!(got, expected, "{surface}");
    }
}

#[test]
fn unresolved_key_is_an_error() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    assert!(compiler
        .compile_morpheme(&morpheme("NoSuchClass.X", None))
        .is_err());
}

#[test]
fn rule_concatenation_and_idp_expansion() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let rule = &lex.rules_classes["cardNbCRules"].rules[0];
    assert_eq!(rule.id, "rule_1");
    let machine = compiler.compile_rule(rule).unwrap();
    let lang = oracle_language(&machine, 12);
    assert!(lang.contains("wAHidun"));
    assert!(lang.contains("Sifrun"));
    assert!(!lang.contains("wAHid"), "suffix is mandatory");
    let payload = &machine.lookup("wAHidun")[0];
    assert_eq!(payload.rule, "rule_1");
    let codes: BTreeSet<&str> = payload.descriptors.iter().map(|d| d.code.as_str()).collect();
    assert!(codes.contains("Ind") && codes.contains("Raf"), "{codes:?}");
}

#[test]
fn single_morpheme_rule_equals_its_morpheme() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let rule = lex.rules_classes["verbSainRules"]
        .rules
        .iter()
        .find(|r| r.id == "vs_orig")
        .unwrap();
    let rule_machine = compiler.compile_rule(rule).unwrap();
    let morpheme_machine = compiler
        .compile_morpheme(&morpheme("OriginSchemeS.SOrig", None))
        .unwrap();
    assert_eq!(
        oracle_language(&rule_machine, 16),
        oracle_language(&morpheme_machine, 16)
    );
}

#[test]
fn rules_class_is_the_union_of_its_rules() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let rc = &lex.rules_classes["cardNbCRules"];
    let class_machine = compiler.compile_rules_class(&rc.rules).unwrap();
    let mut expected = BTreeSet::new();
    for rule in &rc.rules {
        expected.extend(oracle_language(&compiler.compile_rule(rule).unwrap(), 12));
    }
    assert_eq!(oracle_language(&class_machine, 12), expected);
    let lang = oracle_language(&class_machine, 12);
    assert!(lang.contains("wAHidun") && lang.contains("wAHidan"));
}

#[test]
fn expand_schemes_over_one_root() {
    let doc = r#"<package name="T">
  <morphological_properties>
    <property name="Morph" type="additive"><descriptor name="Tpl" /></property>
  </morphological_properties>
  <morphological_class name="TableSchemes">
    <properties><is>Morph.Tpl</is></properties>
    <component name="facal" id="1" />
    <component name="fAcil" id="2" />
    <component name="mafcUl" id="3" />
    <component name="mafcal" id="4" />
    <component name="ficAl" id="5" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[doc]).unwrap();
    let roots = vec![Root::new("ktb").unwrap()];
    let compiler = Compiler::new(&lex, &roots);
    let machine = compiler.expand_schemes("TableSchemes", &roots).unwrap();
    let expected: BTreeSet<String> = ["katab", "kAtib", "maktUb", "maktab", "kitAb"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(oracle_language(&machine, 8), expected);

    // empty roots: empty language
    let machine = compiler.expand_schemes("TableSchemes", &[]).unwrap();
    assert!(oracle_language(&machine, 8).is_empty());
}

#[test]
fn expand_schemes_counts_compatible_pairs() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let machine = compiler.expand_schemes("OriginSchemeS", &roots).unwrap();
    // brute-force: count distinct surfaces over compatible (root, scheme) pairs
    let mut expected = BTreeSet::new();
    for comp in &lex.classes["OriginSchemeS"].components {
        let scheme = wazn::scheme::Scheme::parse(&comp.surface).unwrap();
        for root in &roots {
            if let Ok(stem) = wazn::scheme::instantiate_scheme(root, &scheme) {
                expected.insert(stem.surface);
            }
        }
    }
    assert_eq!(oracle_language(&machine, 16), expected);
}

#[test]
fn expand_schemes_payload_round_trips_through_match_scheme() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let machine = compiler.expand_schemes("NomFicAl", &roots).unwrap();
    for (surface, payloads) in machine.enumerate_with_payloads(8) {
        for p in payloads {
            let seg = &p.segments[0];
            let scheme = wazn::scheme::Scheme::parse(seg.template.as_ref().unwrap()).unwrap();
            let recovered = wazn::scheme::match_scheme(&surface, std::slice::from_ref(&scheme));
            assert!(
                recovered
                    .iter()
                    .any(|(s, r)| s == &scheme && r.to_string() == *seg.root.as_ref().unwrap()),
                "{surface}"
            );
        }
    }
}

#[test]
fn invalid_template_is_an_error() {
    let doc = r#"<package name="T2">
  <morphological_properties>
    <property name="Morph" type="additive"><descriptor name="Tpl" /></property>
  </morphological_properties>
  <morphological_class name="Broken">
    <properties><is>Morph.Tpl</is></properties>
    <component name="wacala" id="1" />
  </morphological_class>
</package>"#;
    let lex = parse_lexicon(&[doc]).unwrap();
    let roots = vec![Root::new("ktb").unwrap()];
    let compiler = Compiler::new(&lex, &roots);
    assert!(matches!(
        compiler.expand_schemes("Broken", &roots),
        Err(wazn::compiler::CompileError::InvalidTemplate { .. })
    ));
}

/// Brute force the surfaces one morpheme slot can produce: concrete
/// components as-is, template components instantiated over every
/// compatible root.
fn morpheme_surfaces(lex: &Lexicon, roots: &[Root], m: &MorphemeRef) -> BTreeSet<String> {
    let class = lex.class(&m.key.class).unwrap();
    let template = lex.is_template_class(class);
    let mut out = BTreeSet::new();
    for comp in lex.morpheme_components(m).unwrap() {
        if template {
            let scheme = wazn::scheme::Scheme::parse(&comp.surface).unwrap();
            for root in roots {
                if let Ok(stem) = wazn::scheme::instantiate_scheme(root, &scheme) {
                    out.insert(stem.surface);
                }
            }
        } else {
            out.insert(comp.surface.clone());
        }
    }
    out
}

#[test]
fn every_seed_rule_enumerates_its_morpheme_product() {
    const LEN: usize = 16;
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    for rc in lex.rules_classes.values() {
        for rule in &rc.rules {
            let mut expected: BTreeSet<String> = BTreeSet::from([String::new()]);
            for m in &rule.morphemes {
                let surfaces = morpheme_surfaces(&lex, &roots, m);
                expected = expected
                    .iter()
                    .flat_map(|prefix| {
                        surfaces.iter().map(move |s| format!("{prefix}{s}"))
                    })
                    .collect();
            }
            expected.retain(|w| w.chars().count() <= LEN);
            let machine = compiler.compile_rule(rule).unwrap();
            assert_eq!(
                machine.enumerate_language(LEN),
                expected,
                "rule {}",
                rule.id
            );
        }
    }
}

#[test]
fn compile_all_builds_expected_categories() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let compiled = compiler.compile_all(CompileOptions::default()).unwrap();
    let categories: Vec<&str> = compiled.categories.keys().map(|s| s.as_str()).collect();
    assert!(categories.len() >= 4, "{categories:?}");
    for needed in ["verb.strong", "noun.derived", "noun.particular", "particle"] {
        assert!(categories.contains(&needed), "{categories:?}");
    }
    // golden words land in exactly their category
    let memberships = [
        ("yujAdilUna", "verb.strong"),
        ("yacidu", "verb.weak"),
        ("yacuddu", "verb.incomplete"),
        ("xArijUna", "noun.derived"),
        ("Sifrun", "noun.particular"),
        ("maca", "particle"),
    ];
    for (word, expected_category) in memberships {
        for (category, machine) in &compiled.categories {
            let found = !machine.lookup(word).is_empty();
            assert_eq!(
                found,
                category == expected_category,
                "{word} in {category}"
            );
        }
    }
}

#[test]
fn rule_ids_are_disjoint_across_categories() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let compiled = compiler.compile_all(CompileOptions::default()).unwrap();
    let mut seen: BTreeSet<(String, String)> = BTreeSet::new();
    for (category, machine) in &compiled.categories {
        for state in 0..machine.state_count() {
            for p in machine.payloads_of(state) {
                seen.insert((p.rule.clone(), category.clone()));
            }
        }
    }
    let mut by_rule: std::collections::BTreeMap<&str, BTreeSet<&str>> = Default::default();
    for (rule, category) in &seen {
        by_rule.entry(rule).or_default().insert(category);
    }
    for (rule, categories) in by_rule {
        assert_eq!(categories.len(), 1, "rule {rule} spans {categories:?}");
    }
}

#[test]
fn recompilation_is_byte_identical() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let mut first = Vec::new();
    wazn::cache::write_cache(
        &compiler.compile_all(CompileOptions::default()).unwrap(),
        &mut first,
    )
    .unwrap();
    let mut second = Vec::new();
    wazn::cache::write_cache(
        &compiler.compile_all(CompileOptions::default()).unwrap(),
        &mut second,
    )
    .unwrap();
    assert_eq!(first, second);
}

#[test]
fn determinize_and_minimize_options_preserve_analyses() {
    let (lex, roots) = seed();
    let compiler = Compiler::new(&lex, &roots);
    let plain = compiler.compile_all(CompileOptions::default()).unwrap();
    let tight = compiler
        .compile_all(CompileOptions {
            determinize: true,
            minimize: true,
        })
        .unwrap();
    for word in ["Sifrun", "yujAdilUna", "murtaddI", "bihimA", "kataba"] {
        for category in plain.categories.keys() {
            let a = plain.categories[category].lookup(word);
            let b = tight.categories[category].lookup(word);
            assert_eq!(a, b, "{word} in {category}");
        }
        let machine = &tight.categories["verb.strong"];
        assert!(machine.is_deterministic());
    }
}
