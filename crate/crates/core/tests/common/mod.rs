#![allow(dead_code)]

//! Shared test support: an enumeration oracle independent of the library's
//! own `enumerate_language`, plus a random NFA generator. The oracle walks
//! the public transition table with its own depth-first subset search, so it
//! exercises none of the code paths it is used to check.

use rand::rngs::StdRng;
use rand::Rng;
use std::collections::BTreeSet;
use wazn::automaton::{Automaton, Payload};

/// ε-closure computed directly off the public transition API.
fn closure(m: &Automaton, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = set.clone();
    let mut stack: Vec<usize> = set.iter().copied().collect();
    while let Some(s) = stack.pop() {
        for &t in m.epsilon_from(s) {
            if out.insert(t) {
                stack.push(t);
            }
        }
    }
    out
}

fn is_accepting(m: &Automaton, set: &BTreeSet<usize>) -> bool {
    set.iter().any(|&s| !m.payloads_of(s).is_empty())
}

/// Brute-force language up to `max_len`, by recursive descent.
pub fn oracle_language(m: &Automaton, max_len: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let start = closure(m, &BTreeSet::from([m.start()]));
    descend(m, &start, String::new(), max_len, &mut out);
    out
}

fn descend(
    m: &Automaton,
    set: &BTreeSet<usize>,
    word: String,
    budget: usize,
    out: &mut BTreeSet<String>,
) {
    if is_accepting(m, set) {
        out.insert(word.clone());
    }
    if budget == 0 {
        return;
    }
    let mut symbols = BTreeSet::new();
    for &s in set {
        for (c, _) in m.edges_from(s) {
            symbols.insert(c);
        }
    }
    for c in symbols {
        let mut next = BTreeSet::new();
        for &s in set {
            for (symbol, targets) in m.edges_from(s) {
                if symbol == c {
                    next.extend(targets.iter().copied());
                }
            }
        }
        let next = closure(m, &next);
        if !next.is_empty() {
            let mut w = word.clone();
            w.push(c);
            descend(m, &next, w, budget - 1, out);
        }
    }
}

/// Pairwise concatenation of two finite languages, truncated at `max_len`.
pub fn concat_languages(
    a: &BTreeSet<String>,
    b: &BTreeSet<String>,
    max_len: usize,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for u in a {
        for v in b {
            if u.chars().count() + v.chars().count() <= max_len {
                out.insert(format!("{u}{v}"));
            }
        }
    }
    out
}

/// A random ε-free NFA over a small alphabet, built through the public
/// constructor. Every state gets a distinct marker payload when accepting.
pub fn random_nfa(rng: &mut StdRng, max_states: usize, alphabet: &[char]) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let mut parts = Vec::with_capacity(n);
    for state in 0..n {
        let mut edges = Vec::new();
        for &c in alphabet {
            for target in 0..n {
                if rng.gen_bool(0.18) {
                    edges.push((c, target));
                }
            }
        }
        let payloads = if rng.gen_bool(0.35) {
            vec![Payload::marker(&format!("s{state}"))]
        } else {
            Vec::new()
        };
        parts.push((edges, Vec::new(), payloads));
    }
    Automaton::from_parts(parts, 0).expect("state ids in range")
}
