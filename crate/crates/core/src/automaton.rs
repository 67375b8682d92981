//! Finite-state acceptors over canonical characters whose accept states
//! carry analysis payloads, plus the algebra used to compile rules: atom,
//! concatenation, union, determinization, minimization, lookup and bounded
//! language enumeration.
//!
//! Payloads live on accept states. Concatenation keeps that true by giving
//! every accept state of the left machine its own copy of the right machine,
//! composing payloads (descriptor union, segment lists appended) as it goes;
//! the segment list records morpheme boundaries, so no transition weights
//! are needed.

use crate::lexicon::Descriptor;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

pub type StateId = usize;

/// Raw state tuple for [`Automaton::from_parts`]: plain edges, ε-targets,
/// accept payloads.
pub type RawState = (Vec<(char, StateId)>, Vec<StateId>, Vec<Payload>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("atom surface must be non-empty")]
    EmptySurface,
    #[error("operation requires a deterministic machine")]
    NotDeterministic,
}

/// Which part of the word a segment contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegmentRole {
    Prefix,
    Stem,
    Suffix,
}

/// One morpheme occurrence inside an accepted word. Consecutive segment
/// surfaces partition the word exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Segment {
    pub class: String,
    pub surface: String,
    pub role: SegmentRole,
    /// Scheme template the stem was built from, when template-expanded.
    pub template: Option<String>,
    /// Root radicals, when template-expanded.
    pub root: Option<String>,
    /// Original-form surfaces this segment refers back to.
    pub originals: Vec<String>,
}

impl Segment {
    pub fn plain(class: &str, surface: &str, role: SegmentRole) -> Self {
        Segment {
            class: class.to_string(),
            surface: surface.to_string(),
            role,
            template: None,
            root: None,
            originals: Vec::new(),
        }
    }
}

/// What an accepting run means: the rule that produced the word, its
/// category, the morphosyntactic descriptors, and the morpheme
/// decomposition with boundary information.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Payload {
    pub rule: String,
    pub category: String,
    pub descriptors: BTreeSet<Descriptor>,
    pub segments: Vec<Segment>,
}

impl Payload {
    /// Marker payload for machines where only the language matters.
    pub fn marker(tag: &str) -> Self {
        Payload {
            rule: tag.to_string(),
            ..Default::default()
        }
    }

    /// Left-to-right composition: descriptors union, segments append.
    pub fn compose(&self, right: &Payload) -> Payload {
        Payload {
            rule: if right.rule.is_empty() {
                self.rule.clone()
            } else {
                right.rule.clone()
            },
            category: if right.category.is_empty() {
                self.category.clone()
            } else {
                right.category.clone()
            },
            descriptors: self.descriptors.union(&right.descriptors).cloned().collect(),
            segments: self
                .segments
                .iter()
                .chain(right.segments.iter())
                .cloned()
                .collect(),
        }
    }

    /// Byte offsets where segments start within the accepted word.
    pub fn boundary_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.segments.len());
        let mut at = 0;
        for seg in &self.segments {
            offsets.push(at);
            at += seg.surface.len();
        }
        offsets
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct State {
    edges: BTreeMap<char, Vec<StateId>>,
    epsilon: Vec<StateId>,
    payloads: Vec<Payload>,
}

/// A finite-state acceptor with payload-carrying accept states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    states: Vec<State>,
    start: StateId,
}

impl Default for Automaton {
    fn default() -> Self {
        Automaton::empty()
    }
}

impl Automaton {
    /// Accepts nothing.
    pub fn empty() -> Self {
        Automaton {
            states: vec![State::default()],
            start: 0,
        }
    }

    /// Rebuilds a machine from raw state tuples (edges, ε-targets,
    /// payloads); `None` when a state id is out of range. Used by the cache
    /// loader.
    pub fn from_parts(parts: Vec<RawState>, start: usize) -> Option<Self> {
        let n = parts.len();
        if start >= n.max(1) {
            return None;
        }
        let mut states = Vec::with_capacity(n);
        for (edges, epsilon, payloads) in parts {
            let mut state = State {
                epsilon,
                payloads,
                ..Default::default()
            };
            for (symbol, target) in edges {
                if target >= n {
                    return None;
                }
                state.edges.entry(symbol).or_default().push(target);
            }
            if state.epsilon.iter().any(|&t| t >= n) {
                return None;
            }
            states.push(state);
        }
        if states.is_empty() {
            states.push(State::default());
        }
        Some(Automaton { states, start })
    }

    /// Linear chain accepting exactly `{surface}`.
    pub fn atom(surface: &str, payload: Payload) -> Result<Self, AutomatonError> {
        if surface.is_empty() {
            return Err(AutomatonError::EmptySurface);
        }
        let chars: Vec<char> = surface.chars().collect();
        let mut states: Vec<State> = (0..=chars.len()).map(|_| State::default()).collect();
        for (i, &c) in chars.iter().enumerate() {
            states[i].edges.insert(c, vec![i + 1]);
        }
        states[chars.len()].payloads.push(payload);
        Ok(Automaton { states, start: 0 })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn accepting_state_count(&self) -> usize {
        self.states.iter().filter(|s| !s.payloads.is_empty()).count()
    }

    pub fn transition_count(&self) -> usize {
        self.states
            .iter()
            .map(|s| s.edges.values().map(Vec::len).sum::<usize>() + s.epsilon.len())
            .sum()
    }

    pub fn payload_count(&self) -> usize {
        self.states.iter().map(|s| s.payloads.len()).sum()
    }

    /// Transition table introspection, used by test oracles.
    pub fn edges_from(&self, state: StateId) -> impl Iterator<Item = (char, &[StateId])> {
        self.states[state]
            .edges
            .iter()
            .map(|(c, targets)| (*c, targets.as_slice()))
    }

    pub fn epsilon_from(&self, state: StateId) -> &[StateId] {
        &self.states[state].epsilon
    }

    pub fn payloads_of(&self, state: StateId) -> &[Payload] {
        &self.states[state].payloads
    }

    /// Applies a function to every accept payload in place.
    pub fn map_payloads_mut(&mut self, mut f: impl FnMut(&mut Payload)) {
        for state in &mut self.states {
            for payload in &mut state.payloads {
                f(payload);
            }
        }
    }

    /// Symbols appearing on any transition.
    pub fn alphabet(&self) -> BTreeSet<char> {
        self.states
            .iter()
            .flat_map(|s| s.edges.keys().copied())
            .collect()
    }

    fn offset_copy_into(&self, states: &mut Vec<State>) -> usize {
        let offset = states.len();
        for s in &self.states {
            let mut copy = s.clone();
            for targets in copy.edges.values_mut() {
                for t in targets.iter_mut() {
                    *t += offset;
                }
            }
            for t in copy.epsilon.iter_mut() {
                *t += offset;
            }
            states.push(copy);
        }
        offset
    }

    /// Language concatenation. Every payload of an accepting run composes
    /// the left run's payload with the right one's.
    pub fn concat(&self, right: &Automaton) -> Automaton {
        let mut states = self.states.clone();
        let accepts: Vec<StateId> = (0..states.len())
            .filter(|&i| !states[i].payloads.is_empty())
            .collect();
        for f in accepts {
            let left_payloads = std::mem::take(&mut states[f].payloads);
            let offset = right.offset_copy_into(&mut states);
            states[f].epsilon.push(right.start + offset);
            for i in 0..right.states.len() {
                if right.states[i].payloads.is_empty() {
                    continue;
                }
                let composed: Vec<Payload> = left_payloads
                    .iter()
                    .flat_map(|lp| right.states[i].payloads.iter().map(|rp| lp.compose(rp)))
                    .collect();
                states[offset + i].payloads = composed;
            }
        }
        Automaton {
            states,
            start: self.start,
        }
    }

    /// Language union; payloads preserved per originating branch.
    pub fn union(&self, other: &Automaton) -> Automaton {
        let mut states = vec![State::default()];
        let a = self.offset_copy_into(&mut states);
        let b = other.offset_copy_into(&mut states);
        states[0].epsilon = vec![self.start + a, other.start + b];
        Automaton { states, start: 0 }
    }

    /// Union of many machines under a single fresh start state.
    pub fn union_all<I: IntoIterator<Item = Automaton>>(machines: I) -> Automaton {
        let mut states = vec![State::default()];
        let mut starts = Vec::new();
        for m in machines {
            let offset = m.offset_copy_into(&mut states);
            starts.push(m.start + offset);
        }
        states[0].epsilon = starts;
        Automaton { states, start: 0 }
    }

    fn epsilon_closure(&self, set: &BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut closure = set.clone();
        let mut queue: VecDeque<StateId> = set.iter().copied().collect();
        while let Some(s) = queue.pop_front() {
            for &t in &self.states[s].epsilon {
                if closure.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        closure
    }

    fn step(&self, set: &BTreeSet<StateId>, symbol: char) -> BTreeSet<StateId> {
        let mut next = BTreeSet::new();
        for &s in set {
            if let Some(targets) = self.states[s].edges.get(&symbol) {
                next.extend(targets.iter().copied());
            }
        }
        self.epsilon_closure(&next)
    }

    /// True when there are no ε-transitions and at most one successor per
    /// (state, symbol).
    pub fn is_deterministic(&self) -> bool {
        self.states
            .iter()
            .all(|s| s.epsilon.is_empty() && s.edges.values().all(|t| t.len() <= 1))
    }

    /// Subset construction. Accept payloads of a subset state are the union
    /// of member payloads (sorted, deduplicated).
    pub fn determinize(&self) -> Automaton {
        let start_set = self.epsilon_closure(&BTreeSet::from([self.start]));
        let mut index: BTreeMap<BTreeSet<StateId>, StateId> = BTreeMap::new();
        let mut states: Vec<State> = Vec::new();
        let mut queue: VecDeque<BTreeSet<StateId>> = VecDeque::new();

        index.insert(start_set.clone(), 0);
        states.push(self.subset_state(&start_set));
        queue.push_back(start_set);

        while let Some(set) = queue.pop_front() {
            let from = index[&set];
            let symbols: BTreeSet<char> = set
                .iter()
                .flat_map(|&s| self.states[s].edges.keys().copied())
                .collect();
            for symbol in symbols {
                let next = self.step(&set, symbol);
                if next.is_empty() {
                    continue;
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(next.clone(), id);
                        states.push(self.subset_state(&next));
                        queue.push_back(next.clone());
                        id
                    }
                };
                states[from].edges.insert(symbol, vec![id]);
            }
        }
        Automaton { states, start: 0 }
    }

    fn subset_state(&self, set: &BTreeSet<StateId>) -> State {
        let mut payloads: Vec<Payload> = set
            .iter()
            .flat_map(|&s| self.states[s].payloads.iter().cloned())
            .collect();
        payloads.sort();
        payloads.dedup();
        State {
            edges: BTreeMap::new(),
            epsilon: Vec::new(),
            payloads,
        }
    }

    /// Moore partition refinement on a deterministic machine. Payload
    /// identity is part of state equivalence, so accept states with
    /// different payload sets never merge.
    pub fn minimize(&self) -> Result<Automaton, AutomatonError> {
        if !self.is_deterministic() {
            return Err(AutomatonError::NotDeterministic);
        }
        let n = self.states.len();
        // initial blocks: group by payload set ("no payloads" is one block)
        let mut block_of: Vec<usize> = vec![0; n];
        {
            let mut keys: BTreeMap<Vec<Payload>, usize> = BTreeMap::new();
            for (i, s) in self.states.iter().enumerate() {
                let next_key = keys.len();
                let id = *keys.entry(s.payloads.clone()).or_insert(next_key);
                block_of[i] = id;
            }
        }
        let alphabet: Vec<char> = self.alphabet().into_iter().collect();
        loop {
            // signature: own block + successor block per symbol (None = reject sink)
            let mut sig_index: BTreeMap<(usize, Vec<Option<usize>>), usize> = BTreeMap::new();
            let mut next_block: Vec<usize> = vec![0; n];
            for (i, s) in self.states.iter().enumerate() {
                let succ: Vec<Option<usize>> = alphabet
                    .iter()
                    .map(|c| {
                        s.edges
                            .get(c)
                            .and_then(|t| t.first())
                            .map(|&t| block_of[t])
                    })
                    .collect();
                let next_id = sig_index.len();
                let id = *sig_index.entry((block_of[i], succ)).or_insert(next_id);
                next_block[i] = id;
            }
            if next_block == block_of {
                break;
            }
            block_of = next_block;
        }
        // keep only blocks reachable from the start block
        let block_count = block_of.iter().max().map(|m| m + 1).unwrap_or(0);
        let mut representatives: Vec<Option<StateId>> = vec![None; block_count];
        for (i, &b) in block_of.iter().enumerate() {
            if representatives[b].is_none() {
                representatives[b] = Some(i);
            }
        }
        let mut states: Vec<State> = Vec::with_capacity(block_count);
        let mut remap: BTreeMap<usize, StateId> = BTreeMap::new();
        let mut order: Vec<usize> = Vec::new();
        // breadth-first from the start block for stable numbering
        let mut queue = VecDeque::from([block_of[self.start]]);
        let mut seen = BTreeSet::from([block_of[self.start]]);
        while let Some(b) = queue.pop_front() {
            remap.insert(b, order.len());
            order.push(b);
            let rep = representatives[b].unwrap();
            for targets in self.states[rep].edges.values() {
                if let Some(&t) = targets.first() {
                    let tb = block_of[t];
                    if seen.insert(tb) {
                        queue.push_back(tb);
                    }
                }
            }
        }
        for &b in &order {
            let rep = representatives[b].unwrap();
            let src = &self.states[rep];
            let mut edges = BTreeMap::new();
            for (c, targets) in &src.edges {
                if let Some(&t) = targets.first() {
                    edges.insert(*c, vec![remap[&block_of[t]]]);
                }
            }
            states.push(State {
                edges,
                epsilon: Vec::new(),
                payloads: src.payloads.clone(),
            });
        }
        Ok(Automaton {
            states,
            start: remap[&block_of[self.start]],
        })
    }

    /// All payloads reachable by accepting runs of `word`, in a stable
    /// order; empty iff the word is not in the language.
    pub fn lookup(&self, word: &str) -> Vec<Payload> {
        let mut set = self.epsilon_closure(&BTreeSet::from([self.start]));
        for c in word.chars() {
            set = self.step(&set, c);
            if set.is_empty() {
                return Vec::new();
            }
        }
        let mut payloads: Vec<Payload> = set
            .iter()
            .flat_map(|&s| self.states[s].payloads.iter().cloned())
            .collect();
        payloads.sort();
        payloads.dedup();
        payloads
    }

    /// Exactly `{ w ∈ L : |w| ≤ max_len }`.
    pub fn enumerate_language(&self, max_len: usize) -> BTreeSet<String> {
        self.enumerate_with_payloads(max_len)
            .into_iter()
            .map(|(w, _)| w)
            .collect()
    }

    /// Bounded enumeration carrying payloads, the generation backend.
    pub fn enumerate_with_payloads(&self, max_len: usize) -> Vec<(String, Vec<Payload>)> {
        let mut out = Vec::new();
        let start = self.epsilon_closure(&BTreeSet::from([self.start]));
        let mut frontier: Vec<(String, BTreeSet<StateId>)> = vec![(String::new(), start)];
        for len in 0..=max_len {
            let mut next_frontier = Vec::new();
            for (word, set) in &frontier {
                let mut payloads: Vec<Payload> = set
                    .iter()
                    .flat_map(|&s| self.states[s].payloads.iter().cloned())
                    .collect();
                if !payloads.is_empty() {
                    payloads.sort();
                    payloads.dedup();
                    out.push((word.clone(), payloads));
                }
                if len == max_len {
                    continue;
                }
                let symbols: BTreeSet<char> = set
                    .iter()
                    .flat_map(|&s| self.states[s].edges.keys().copied())
                    .collect();
                for symbol in symbols {
                    let next = self.step(set, symbol);
                    if !next.is_empty() {
                        let mut w = word.clone();
                        w.push(symbol);
                        next_frontier.push((w, next));
                    }
                }
            }
            frontier = next_frontier;
            if frontier.is_empty() {
                break;
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}
