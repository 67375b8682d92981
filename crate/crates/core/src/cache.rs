//! Binary cache for compiled lexicons: versioned header, interned string
//! table, then property, category/automaton, rule-index and root tables.
//! Writing the same compiled lexicon twice produces identical bytes.

use crate::automaton::{Automaton, Payload, RawState, Segment, SegmentRole};
use crate::compiler::{CompiledLexicon, RuleMeta};
use crate::lexicon::{Descriptor, PropertyDef, PropertyKind};
use crate::scheme::Root;
use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use thiserror::Error;

const MAGIC: &[u8; 8] = b"MORPHAUT";
const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("not a compiled-lexicon cache (bad magic)")]
    BadMagic,
    #[error("unsupported cache version {0}")]
    BadVersion(u32),
    #[error("cache is corrupt: {0}")]
    Corrupt(&'static str),
}

struct StringTable {
    strings: Vec<String>,
    index: BTreeMap<String, u32>,
}

impl StringTable {
    fn collect(compiled: &CompiledLexicon) -> Self {
        let mut set = std::collections::BTreeSet::new();
        let mut push = |s: &str| {
            set.insert(s.to_string());
        };
        for (name, def) in &compiled.properties {
            push(name);
            for d in &def.descriptors {
                push(d);
            }
        }
        for (rule, meta) in &compiled.rule_index {
            push(rule);
            push(&meta.rules_class);
            push(&meta.category);
        }
        for root in &compiled.roots {
            push(&root.to_string());
        }
        for (category, machine) in &compiled.categories {
            push(category);
            for state in 0..machine.state_count() {
                for p in machine.payloads_of(state) {
                    push(&p.rule);
                    push(&p.category);
                    for d in &p.descriptors {
                        push(&d.property);
                        push(&d.code);
                    }
                    for seg in &p.segments {
                        push(&seg.class);
                        push(&seg.surface);
                        if let Some(t) = &seg.template {
                            push(t);
                        }
                        if let Some(r) = &seg.root {
                            push(r);
                        }
                        for o in &seg.originals {
                            push(o);
                        }
                    }
                }
            }
        }
        let strings: Vec<String> = set.into_iter().collect();
        let index = strings
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        StringTable { strings, index }
    }

    fn id(&self, s: &str) -> u32 {
        self.index[s]
    }
}

fn write_u32(w: &mut impl Write, v: u32) -> io::Result<()> {
    w.write_all(&v.to_le_bytes())
}

fn write_str_id(w: &mut impl Write, table: &StringTable, s: &str) -> io::Result<()> {
    write_u32(w, table.id(s))
}

fn read_u32(r: &mut impl Read) -> Result<u32, CacheError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_string_id(r: &mut impl Read, strings: &[String]) -> Result<String, CacheError> {
    let id = read_u32(r)? as usize;
    strings
        .get(id)
        .cloned()
        .ok_or(CacheError::Corrupt("string id out of range"))
}

/// Serializes a compiled lexicon.
pub fn write_cache(compiled: &CompiledLexicon, w: &mut impl Write) -> Result<(), CacheError> {
    let table = StringTable::collect(compiled);
    w.write_all(MAGIC)?;
    write_u32(w, VERSION)?;

    write_u32(w, table.strings.len() as u32)?;
    for s in &table.strings {
        let bytes = s.as_bytes();
        write_u32(w, bytes.len() as u32)?;
        w.write_all(bytes)?;
    }

    write_u32(w, compiled.properties.len() as u32)?;
    for (name, def) in &compiled.properties {
        write_str_id(w, &table, name)?;
        write_u32(w, matches!(def.kind, PropertyKind::Exclusive) as u32)?;
        write_u32(w, def.descriptors.len() as u32)?;
        for d in &def.descriptors {
            write_str_id(w, &table, d)?;
        }
    }

    write_u32(w, compiled.rule_index.len() as u32)?;
    for (rule, meta) in &compiled.rule_index {
        write_str_id(w, &table, rule)?;
        write_str_id(w, &table, &meta.rules_class)?;
        write_str_id(w, &table, &meta.category)?;
    }

    write_u32(w, compiled.roots.len() as u32)?;
    for root in &compiled.roots {
        write_str_id(w, &table, &root.to_string())?;
    }

    write_u32(w, compiled.categories.len() as u32)?;
    for (category, machine) in &compiled.categories {
        write_str_id(w, &table, category)?;
        write_automaton(machine, &table, w)?;
    }
    Ok(())
}

fn write_automaton(
    machine: &Automaton,
    table: &StringTable,
    w: &mut impl Write,
) -> Result<(), CacheError> {
    write_u32(w, machine.state_count() as u32)?;
    write_u32(w, machine.start() as u32)?;
    for state in 0..machine.state_count() {
        let edges: Vec<(char, &[usize])> = machine.edges_from(state).collect();
        let edge_total: usize = edges.iter().map(|(_, t)| t.len()).sum();
        write_u32(w, edge_total as u32)?;
        for (symbol, targets) in edges {
            for &t in targets {
                write_u32(w, symbol as u32)?;
                write_u32(w, t as u32)?;
            }
        }
        let eps = machine.epsilon_from(state);
        write_u32(w, eps.len() as u32)?;
        for &t in eps {
            write_u32(w, t as u32)?;
        }
        let payloads = machine.payloads_of(state);
        write_u32(w, payloads.len() as u32)?;
        for p in payloads {
            write_payload(p, table, w)?;
        }
    }
    Ok(())
}

fn write_payload(p: &Payload, table: &StringTable, w: &mut impl Write) -> Result<(), CacheError> {
    write_str_id(w, table, &p.rule)?;
    write_str_id(w, table, &p.category)?;
    write_u32(w, p.descriptors.len() as u32)?;
    for d in &p.descriptors {
        write_str_id(w, table, &d.property)?;
        write_str_id(w, table, &d.code)?;
    }
    write_u32(w, p.segments.len() as u32)?;
    for seg in &p.segments {
        write_str_id(w, table, &seg.class)?;
        write_str_id(w, table, &seg.surface)?;
        write_u32(
            w,
            match seg.role {
                SegmentRole::Prefix => 0,
                SegmentRole::Stem => 1,
                SegmentRole::Suffix => 2,
            },
        )?;
        match &seg.template {
            Some(t) => {
                write_u32(w, 1)?;
                write_str_id(w, table, t)?;
            }
            None => write_u32(w, 0)?,
        }
        match &seg.root {
            Some(r) => {
                write_u32(w, 1)?;
                write_str_id(w, table, r)?;
            }
            None => write_u32(w, 0)?,
        }
        write_u32(w, seg.originals.len() as u32)?;
        for o in &seg.originals {
            write_str_id(w, table, o)?;
        }
    }
    Ok(())
}

/// Deserializes a compiled lexicon.
pub fn read_cache(r: &mut impl Read) -> Result<CompiledLexicon, CacheError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let version = read_u32(r)?;
    if version != VERSION {
        return Err(CacheError::BadVersion(version));
    }

    let string_count = read_u32(r)? as usize;
    let mut strings = Vec::with_capacity(string_count);
    for _ in 0..string_count {
        let len = read_u32(r)? as usize;
        let mut buf = vec![0u8; len];
        r.read_exact(&mut buf)?;
        strings.push(String::from_utf8(buf).map_err(|_| CacheError::Corrupt("bad utf-8"))?);
    }

    let mut properties = BTreeMap::new();
    for _ in 0..read_u32(r)? {
        let name = read_string_id(r, &strings)?;
        let kind = if read_u32(r)? == 1 {
            PropertyKind::Exclusive
        } else {
            PropertyKind::Additive
        };
        let mut descriptors = Vec::new();
        for _ in 0..read_u32(r)? {
            descriptors.push(read_string_id(r, &strings)?);
        }
        properties.insert(
            name.clone(),
            PropertyDef {
                name,
                kind,
                descriptors,
            },
        );
    }

    let mut rule_index = BTreeMap::new();
    for _ in 0..read_u32(r)? {
        let rule = read_string_id(r, &strings)?;
        let rules_class = read_string_id(r, &strings)?;
        let category = read_string_id(r, &strings)?;
        rule_index.insert(
            rule,
            RuleMeta {
                rules_class,
                category,
            },
        );
    }

    let mut roots = Vec::new();
    for _ in 0..read_u32(r)? {
        let radicals = read_string_id(r, &strings)?;
        roots.push(Root::new(&radicals).map_err(|_| CacheError::Corrupt("bad root"))?);
    }

    let mut categories = BTreeMap::new();
    for _ in 0..read_u32(r)? {
        let category = read_string_id(r, &strings)?;
        let machine = read_automaton(r, &strings)?;
        categories.insert(category, machine);
    }

    Ok(CompiledLexicon {
        categories,
        rule_index,
        properties,
        roots,
    })
}

fn read_automaton(r: &mut impl Read, strings: &[String]) -> Result<Automaton, CacheError> {
    let state_count = read_u32(r)? as usize;
    let start = read_u32(r)? as usize;
    let mut builder = AutomatonBuilder::new(state_count, start);
    for state in 0..state_count {
        for _ in 0..read_u32(r)? {
            let symbol = char::from_u32(read_u32(r)?).ok_or(CacheError::Corrupt("bad symbol"))?;
            let target = read_u32(r)? as usize;
            builder.edge(state, symbol, target);
        }
        for _ in 0..read_u32(r)? {
            builder.epsilon(state, read_u32(r)? as usize);
        }
        for _ in 0..read_u32(r)? {
            let payload = read_payload(r, strings)?;
            builder.payload(state, payload);
        }
    }
    builder.finish().ok_or(CacheError::Corrupt("bad state id"))
}

fn read_payload(r: &mut impl Read, strings: &[String]) -> Result<Payload, CacheError> {
    let rule = read_string_id(r, strings)?;
    let category = read_string_id(r, strings)?;
    let mut descriptors = std::collections::BTreeSet::new();
    for _ in 0..read_u32(r)? {
        let property = read_string_id(r, strings)?;
        let code = read_string_id(r, strings)?;
        descriptors.insert(Descriptor { property, code });
    }
    let mut segments = Vec::new();
    for _ in 0..read_u32(r)? {
        let class = read_string_id(r, strings)?;
        let surface = read_string_id(r, strings)?;
        let role = match read_u32(r)? {
            0 => SegmentRole::Prefix,
            1 => SegmentRole::Stem,
            2 => SegmentRole::Suffix,
            _ => return Err(CacheError::Corrupt("bad segment role")),
        };
        let template = if read_u32(r)? == 1 {
            Some(read_string_id(r, strings)?)
        } else {
            None
        };
        let root = if read_u32(r)? == 1 {
            Some(read_string_id(r, strings)?)
        } else {
            None
        };
        let mut originals = Vec::new();
        for _ in 0..read_u32(r)? {
            originals.push(read_string_id(r, strings)?);
        }
        segments.push(Segment {
            class,
            surface,
            role,
            template,
            root,
            originals,
        });
    }
    Ok(Payload {
        rule,
        category,
        descriptors,
        segments,
    })
}

/// Incremental construction used when loading a cache.
pub struct AutomatonBuilder {
    states: Vec<RawState>,
    start: usize,
}

impl AutomatonBuilder {
    pub fn new(state_count: usize, start: usize) -> Self {
        AutomatonBuilder {
            states: vec![(Vec::new(), Vec::new(), Vec::new()); state_count],
            start,
        }
    }

    pub fn edge(&mut self, from: usize, symbol: char, to: usize) {
        self.states[from].0.push((symbol, to));
    }

    pub fn epsilon(&mut self, from: usize, to: usize) {
        self.states[from].1.push(to);
    }

    pub fn payload(&mut self, state: usize, payload: Payload) {
        self.states[state].2.push(payload);
    }

    pub fn finish(self) -> Option<Automaton> {
        Automaton::from_parts(self.states, self.start)
    }
}
