//! Roots, schemes and stems.
//!
//! A root is an ordered sequence of 3 or 4 consonant radicals; a scheme is a
//! template over constants and the radical variables `f`, `c`, `l`.
//! Substituting the radicals into the variable slots yields a stem:
//! `ktb` × `tafAcala` → `takAtaba`.
//!
//! Variable arity: one `l` takes 3 radicals; a separated `l…l` pair takes 4
//! (second `l` is R4); an adjacent doubled `ll` is gemination and takes 3
//! radicals (both copy R3) or 4 (R3 then R4).

use crate::translit::{is_canonical_symbol, is_consonant};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("root must have 3 or 4 radicals, got {0}")]
    BadRootLength(usize),
    #[error("radical {0:?} is not a consonant of the canonical alphabet")]
    BadRadical(char),
    #[error("template {0:?} is not a valid scheme (need f … c … l [… l] in order)")]
    BadTemplate(String),
    #[error("root {root} has {radicals} radicals but scheme {scheme} takes {expected}")]
    ArityMismatch {
        root: String,
        scheme: String,
        radicals: usize,
        expected: &'static str,
    },
}

/// An ordered sequence of 3 or 4 consonant radicals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(Vec<char>);

impl Root {
    pub fn new(radicals: &str) -> Result<Self, SchemeError> {
        let chars: Vec<char> = radicals.chars().collect();
        if chars.len() < 3 || chars.len() > 4 {
            return Err(SchemeError::BadRootLength(chars.len()));
        }
        if let Some(&bad) = chars.iter().find(|c| !is_consonant(**c)) {
            return Err(SchemeError::BadRadical(bad));
        }
        Ok(Root(chars))
    }

    pub fn radicals(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A stem template: constants plus the radical variables `f`, `c`, `l`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scheme {
    template: Vec<char>,
    f_pos: usize,
    c_pos: usize,
    l_pos: Vec<usize>,
}

impl Scheme {
    /// Parses and validates a template: exactly one `f`, one `c`, one or two
    /// `l`, in the order f … c … l (… l).
    pub fn parse(template: &str) -> Result<Self, SchemeError> {
        let chars: Vec<char> = template.chars().collect();
        if chars.is_empty() || !chars.iter().all(|&c| is_canonical_symbol(c)) {
            return Err(SchemeError::BadTemplate(template.to_string()));
        }
        let f: Vec<usize> = positions(&chars, 'f');
        let c: Vec<usize> = positions(&chars, 'c');
        let l: Vec<usize> = positions(&chars, 'l');
        if f.len() != 1 || c.len() != 1 || l.is_empty() || l.len() > 2 {
            return Err(SchemeError::BadTemplate(template.to_string()));
        }
        let ordered = f[0] < c[0] && c[0] < l[0] && l.windows(2).all(|w| w[0] < w[1]);
        if !ordered {
            return Err(SchemeError::BadTemplate(template.to_string()));
        }
        Ok(Scheme {
            template: chars,
            f_pos: f[0],
            c_pos: c[0],
            l_pos: l,
        })
    }

    pub fn template(&self) -> String {
        self.template.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.template.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Radical counts this scheme accepts.
    pub fn arities(&self) -> &'static [usize] {
        if self.l_pos.len() == 1 {
            &[3]
        } else if self.l_pos[1] == self.l_pos[0] + 1 {
            // adjacent ll: gemination of R3, or R3+R4 of a quadriliteral
            &[3, 4]
        } else {
            &[4]
        }
    }

    /// True if a template string parses as a valid scheme.
    pub fn is_template(s: &str) -> bool {
        Scheme::parse(s).is_ok()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.template())
    }
}

fn positions(chars: &[char], target: char) -> Vec<usize> {
    chars
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c == target).then_some(i))
        .collect()
}

/// A surface form together with the root and scheme that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stem {
    pub surface: String,
    pub root: Root,
    pub scheme: Scheme,
}

/// Substitutes the radicals into the scheme's variable slots.
pub fn instantiate_scheme(root: &Root, scheme: &Scheme) -> Result<Stem, SchemeError> {
    if !scheme.arities().contains(&root.len()) {
        return Err(SchemeError::ArityMismatch {
            root: root.to_string(),
            scheme: scheme.template(),
            radicals: root.len(),
            expected: if scheme.arities() == [3] { "3" } else if scheme.arities() == [4] { "4" } else { "3 or 4" },
        });
    }
    let r = root.radicals();
    let mut surface: Vec<char> = scheme.template.clone();
    surface[scheme.f_pos] = r[0];
    surface[scheme.c_pos] = r[1];
    match (scheme.l_pos.len(), root.len()) {
        (1, 3) => surface[scheme.l_pos[0]] = r[2],
        (2, 3) => {
            // doubled l copies R3
            surface[scheme.l_pos[0]] = r[2];
            surface[scheme.l_pos[1]] = r[2];
        }
        (2, 4) => {
            surface[scheme.l_pos[0]] = r[2];
            surface[scheme.l_pos[1]] = r[3];
        }
        _ => unreachable!("arity checked above"),
    }
    Ok(Stem {
        surface: surface.into_iter().collect(),
        root: root.clone(),
        scheme: scheme.clone(),
    })
}

/// Finds every (scheme, root) pair that instantiates to `stem_surface`.
/// Exhaustive over the given schemes; empty when nothing matches.
pub fn match_scheme(stem_surface: &str, schemes: &[Scheme]) -> Vec<(Scheme, Root)> {
    let surface: Vec<char> = stem_surface.chars().collect();
    let mut found = Vec::new();
    for scheme in schemes {
        if scheme.len() != surface.len() {
            continue;
        }
        // constants must match in place
        let variables: Vec<usize> = {
            let mut v = vec![scheme.f_pos, scheme.c_pos];
            v.extend(&scheme.l_pos);
            v
        };
        let constants_ok = scheme
            .template
            .iter()
            .enumerate()
            .all(|(i, &t)| variables.contains(&i) || surface[i] == t);
        if !constants_ok {
            continue;
        }
        for &arity in scheme.arities() {
            let radicals: Vec<char> = match (scheme.l_pos.len(), arity) {
                (1, 3) => vec![
                    surface[scheme.f_pos],
                    surface[scheme.c_pos],
                    surface[scheme.l_pos[0]],
                ],
                (2, 3) => {
                    if surface[scheme.l_pos[0]] != surface[scheme.l_pos[1]] {
                        continue;
                    }
                    vec![
                        surface[scheme.f_pos],
                        surface[scheme.c_pos],
                        surface[scheme.l_pos[0]],
                    ]
                }
                (2, 4) => vec![
                    surface[scheme.f_pos],
                    surface[scheme.c_pos],
                    surface[scheme.l_pos[0]],
                    surface[scheme.l_pos[1]],
                ],
                _ => continue,
            };
            let root = match Root::new(&radicals.iter().collect::<String>()) {
                Ok(r) => r,
                Err(_) => continue,
            };
            // verify by re-instantiation
            let verified = matches!(
                instantiate_scheme(&root, scheme),
                Ok(stem) if stem.surface == stem_surface
            );
            if verified && !found.contains(&(scheme.clone(), root.clone())) {
                found.push((scheme.clone(), root));
            }
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(s: &str) -> Scheme {
        Scheme::parse(s).unwrap()
    }

    fn root(s: &str) -> Root {
        Root::new(s).unwrap()
    }

    #[test]
    fn table_stems_from_ktb() {
        let cases = [
            ("facal", "katab"),
            ("fAcil", "kAtib"),
            ("mafcUl", "maktUb"),
            ("mafcal", "maktab"),
            ("ficAl", "kitAb"),
            ("tafAcala", "takAtaba"),
        ];
        let ktb = root("ktb");
        for (template, expected) in cases {
            let stem = instantiate_scheme(&ktb, &scheme(template)).unwrap();
            assert_eq!(stem.surface, expected, "{template}");
            assert_eq!(stem.surface.chars().count(), template.chars().count());
        }
    }

    #[test]
    fn quadriliteral_and_geminate() {
        // separated l…l needs 4 radicals
        assert_eq!(
            instantiate_scheme(&root("dHrj"), &scheme("faclala"))
                .unwrap()
                .surface,
            "daHraja"
        );
        // adjacent ll doubles R3 on a triliteral root
        assert_eq!(
            instantiate_scheme(&root("rtd"), &scheme("eifcalla"))
                .unwrap()
                .surface,
            "eirtadda"
        );
        assert_eq!(
            instantiate_scheme(&root("rtd"), &scheme("mufcall"))
                .unwrap()
                .surface,
            "murtadd"
        );
    }

    #[test]
    fn arity_mismatch() {
        let err = instantiate_scheme(&root("ktb"), &scheme("faclala")).unwrap_err();
        assert!(matches!(err, SchemeError::ArityMismatch { .. }));
        let err = instantiate_scheme(&root("dHrj"), &scheme("facal")).unwrap_err();
        assert!(matches!(err, SchemeError::ArityMismatch { .. }));
    }

    #[test]
    fn five_radical_roots_rejected() {
        assert!(matches!(
            Root::new("ktbrj"),
            Err(SchemeError::BadRootLength(5))
        ));
    }

    #[test]
    fn bad_templates() {
        for t in ["", "acal", "fcl l", "lacf", "facl al al", "faclalal"] {
            assert!(Scheme::parse(t).is_err(), "{t:?}");
        }
        // no f at all
        assert!(Scheme::parse("wacala").is_err());
    }

    /// Independent oracle: try every scheme against every 3-radical tuple
    /// drawn from the surface's own characters and keep what re-instantiates
    /// exactly.
    fn brute_force_match(surface: &str, schemes: &[Scheme]) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let chars: Vec<char> = surface.chars().collect();
        for s in schemes {
            for i in 0..chars.len() {
                for j in 0..chars.len() {
                    for k in 0..chars.len() {
                        let rs: String = [chars[i], chars[j], chars[k]].iter().collect();
                        let Ok(r) = Root::new(&rs) else { continue };
                        let Ok(stem) = instantiate_scheme(&r, s) else {
                            continue;
                        };
                        if stem.surface == surface {
                            let pair = (s.template(), rs.clone());
                            if !out.contains(&pair) {
                                out.push(pair);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn match_scheme_against_oracle() {
        let inventory: Vec<Scheme> = ["facal", "fAcil", "mafcUl", "mafcal", "ficAl"]
            .iter()
            .map(|s| scheme(s))
            .collect();
        for surface in ["katab", "kitAb", "kAtib", "xyz", "maktab"] {
            let got: Vec<(String, String)> = match_scheme(surface, &inventory)
                .into_iter()
                .map(|(s, r)| (s.template(), r.to_string()))
                .collect();
            let expected = brute_force_match(surface, &inventory);
            assert_eq!(got, expected, "{surface}");
        }
        assert_eq!(
            match_scheme("katab", &inventory)
                .into_iter()
                .map(|(s, r)| (s.template(), r.to_string()))
                .collect::<Vec<_>>(),
            vec![("facal".to_string(), "ktb".to_string())]
        );
        assert!(match_scheme("xyz", &inventory).is_empty());
    }
}
