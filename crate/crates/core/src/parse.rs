//! The line-based structure file format.
//!
//! ```text
//! ring R arity 3 3
//! elements 0 1 2
//! zero 0
//! one 1
//! f 0 0 1 = 1            # sorted tuple = space-separated result set
//! g 0 0 0 = 0            # g' entries, singleton results required
//! module M over R
//! elements 0 1 2 3
//! zero 0
//! unital false
//! f 0 1 2 = 0 1 2
//! g 1 2 | 1 = 2          # (n-1) ring scalars, '|', one module element
//! ```
//!
//! `#` starts a comment. Tuples may be listed in any order of their entries;
//! the parser sorts them, so unlisted permutations inherit the listed result.
//! Every sorted tuple must appear exactly once.

use crate::sets::{self, SmallSet};
use crate::structure::{ActionTable, HyperOpTable, Hypermodule, Hyperring, StructureError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown element label `{label}`")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: duplicate tuple ({tuple})")]
    DuplicateTuple { line: usize, tuple: String },
    #[error("line {line}: empty hyperproduct")]
    EmptyHyperproduct { line: usize },
    #[error("{structure}: incomplete table for `{op}`, missing tuple ({tuple})")]
    IncompleteTable {
        structure: String,
        op: &'static str,
        tuple: String,
    },
    #[error("line {line}: {source}")]
    Structure {
        line: usize,
        source: StructureError,
    },
}

/// Everything read from one structure file.
#[derive(Debug)]
pub struct ParsedFile {
    pub rings: Vec<Arc<Hyperring>>,
    pub modules: Vec<Hypermodule>,
}

impl ParsedFile {
    pub fn ring_by_name(&self, name: &str) -> Option<&Arc<Hyperring>> {
        self.rings.iter().find(|r| r.name() == name)
    }

    pub fn module_by_name(&self, name: &str) -> Option<&Hypermodule> {
        self.modules.iter().find(|m| m.name() == name)
    }
}

struct PendingTable {
    op: &'static str,
    entries: Vec<Option<(SmallSet, usize)>>, // value and the defining line
}

impl PendingTable {
    fn new(op: &'static str, len: usize) -> Self {
        PendingTable {
            op,
            entries: vec![None; len],
        }
    }

    fn set(&mut self, rank: usize, value: SmallSet, line: usize, tuple: String) -> Result<(), ParseError> {
        if self.entries[rank].is_some() {
            return Err(ParseError::DuplicateTuple { line, tuple });
        }
        self.entries[rank] = Some((value, line));
        Ok(())
    }

    fn finish(
        self,
        structure: &str,
        describe_missing: impl Fn(usize) -> String,
    ) -> Result<Vec<SmallSet>, ParseError> {
        if let Some(rank) = self.entries.iter().position(|e| e.is_none()) {
            return Err(ParseError::IncompleteTable {
                structure: structure.to_string(),
                op: self.op,
                tuple: describe_missing(rank),
            });
        }
        Ok(self.entries.into_iter().map(|e| e.unwrap().0).collect())
    }
}

enum Block {
    Ring {
        line: usize,
        name: String,
        m: usize,
        n: usize,
        labels: Vec<String>,
        zero: Option<usize>,
        one: Option<usize>,
        f: Option<PendingTable>,
        g: Option<PendingTable>,
    },
    Module {
        line: usize,
        name: String,
        ring: Arc<Hyperring>,
        labels: Vec<String>,
        zero: Option<usize>,
        unital: bool,
        f: Option<PendingTable>,
        g: Option<PendingTable>,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn lookup(labels: &[String], token: &str, line: usize) -> Result<usize, ParseError> {
    labels
        .iter()
        .position(|l| l == token)
        .ok_or_else(|| ParseError::UnknownLabel {
            line,
            label: token.to_string(),
        })
}

fn describe_tuple(labels: &[String], arity: usize, target_rank: usize) -> String {
    let mut found = String::new();
    let mut rank = 0usize;
    sets::for_each_multiset(labels.len(), arity, |t| {
        if rank == target_rank {
            found = t
                .iter()
                .map(|&i| labels[i].as_str())
                .collect::<Vec<_>>()
                .join(" ");
        }
        rank += 1;
    });
    found
}

fn describe_action_tuple(
    rlabels: &[String],
    mlabels: &[String],
    scalar_arity: usize,
    target: usize,
) -> String {
    let module_size = mlabels.len();
    let scalar_rank = target / module_size;
    let a = target % module_size;
    format!(
        "{} | {}",
        describe_tuple(rlabels, scalar_arity, scalar_rank),
        mlabels[a]
    )
}

fn parse_result_set(
    tokens: &[&str],
    labels: &[String],
    line: usize,
) -> Result<SmallSet, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::EmptyHyperproduct { line });
    }
    let mut s = SmallSet::empty();
    for t in tokens {
        s = s.insert(lookup(labels, t, line)?);
    }
    Ok(s)
}

fn finish_block(block: Block, out: &mut ParsedFile) -> Result<(), ParseError> {
    match block {
        Block::Ring {
            line,
            name,
            m,
            n,
            labels,
            zero,
            one,
            f,
            g,
        } => {
            let zero = zero.ok_or_else(|| syntax(line, format!("ring {name} has no `zero` line")))?;
            let one = one.ok_or_else(|| syntax(line, format!("ring {name} has no `one` line")))?;
            let f = f.ok_or_else(|| syntax(line, format!("ring {name} has no f entries")))?;
            let g = g.ok_or_else(|| syntax(line, format!("ring {name} has no g entries")))?;
            let f_entries = f.finish(&name, |r| describe_tuple(&labels, m, r))?;
            let g_entries = g.finish(&name, |r| describe_tuple(&labels, n, r))?;
            let size = labels.len();
            let wrap = |e: StructureError| ParseError::Structure { line, source: e };
            let f = HyperOpTable::new("f'", m, size, f_entries).map_err(wrap)?;
            let g = HyperOpTable::new("g'", n, size, g_entries).map_err(wrap)?;
            let ring = Hyperring::new(name, m, n, labels, f, g, zero, one).map_err(wrap)?;
            out.rings.push(Arc::new(ring));
            Ok(())
        }
        Block::Module {
            line,
            name,
            ring,
            labels,
            zero,
            unital,
            f,
            g,
        } => {
            let zero =
                zero.ok_or_else(|| syntax(line, format!("module {name} has no `zero` line")))?;
            let f = f.ok_or_else(|| syntax(line, format!("module {name} has no f entries")))?;
            let g = g.ok_or_else(|| syntax(line, format!("module {name} has no g entries")))?;
            let f_entries = f.finish(&name, |r| describe_tuple(&labels, ring.m(), r))?;
            let g_entries = g.finish(&name, |r| {
                describe_action_tuple(ring.labels(), &labels, ring.n() - 1, r)
            })?;
            let size = labels.len();
            let wrap = |e: StructureError| ParseError::Structure { line, source: e };
            let f = HyperOpTable::new("f", ring.m(), size, f_entries).map_err(wrap)?;
            let g = ActionTable::new(ring.n() - 1, ring.size(), size, g_entries).map_err(wrap)?;
            let module =
                Hypermodule::new(name, ring, labels, f, g, zero, unital).map_err(wrap)?;
            out.modules.push(module);
            Ok(())
        }
    }
}

/// Parse one structure file into its rings and hypermodules.
pub fn parse_structure(text: &str) -> Result<ParsedFile, ParseError> {
    let mut out = ParsedFile {
        rings: Vec::new(),
        modules: Vec::new(),
    };
    let mut block: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match tokens[0] {
            "ring" => {
                if let Some(b) = block.take() {
                    finish_block(b, &mut out)?;
                }
                if tokens.len() != 5 || tokens[2] != "arity" {
                    return Err(syntax(line, "expected `ring NAME arity M N`"));
                }
                let m: usize = tokens[3]
                    .parse()
                    .map_err(|_| syntax(line, "arity m is not a number"))?;
                let n: usize = tokens[4]
                    .parse()
                    .map_err(|_| syntax(line, "arity n is not a number"))?;
                block = Some(Block::Ring {
                    line,
                    name: tokens[1].to_string(),
                    m,
                    n,
                    labels: Vec::new(),
                    zero: None,
                    one: None,
                    f: None,
                    g: None,
                });
            }
            "module" => {
                if let Some(b) = block.take() {
                    finish_block(b, &mut out)?;
                }
                if tokens.len() != 4 || tokens[2] != "over" {
                    return Err(syntax(line, "expected `module NAME over RING`"));
                }
                let ring = out
                    .ring_by_name(tokens[3])
                    .cloned()
                    .ok_or_else(|| syntax(line, format!("unknown ring `{}`", tokens[3])))?;
                block = Some(Block::Module {
                    line,
                    name: tokens[1].to_string(),
                    ring,
                    labels: Vec::new(),
                    zero: None,
                    unital: false,
                    f: None,
                    g: None,
                });
            }
            "elements" => {
                let labels: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
                if labels.is_empty() {
                    return Err(syntax(line, "elements line lists no elements"));
                }
                match &mut block {
                    Some(Block::Ring { labels: l, .. }) | Some(Block::Module { labels: l, .. }) => {
                        *l = labels;
                    }
                    None => return Err(syntax(line, "elements line outside a structure block")),
                }
            }
            "zero" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `zero LABEL`"));
                }
                match &mut block {
                    Some(Block::Ring { labels, zero, .. })
                    | Some(Block::Module { labels, zero, .. }) => {
                        *zero = Some(lookup(labels, tokens[1], line)?);
                    }
                    None => return Err(syntax(line, "zero line outside a structure block")),
                }
            }
            "one" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `one LABEL`"));
                }
                match &mut block {
                    Some(Block::Ring { labels, one, .. }) => {
                        *one = Some(lookup(labels, tokens[1], line)?);
                    }
                    Some(Block::Module { .. }) => {
                        return Err(syntax(line, "modules have no `one` line"))
                    }
                    None => return Err(syntax(line, "one line outside a structure block")),
                }
            }
            "unital" => {
                if tokens.len() != 2 {
                    return Err(syntax(line, "expected `unital true|false`"));
                }
                match &mut block {
                    Some(Block::Module { unital, .. }) => {
                        *unital = match tokens[1] {
                            "true" => true,
                            "false" => false,
                            other => {
                                return Err(syntax(line, format!("bad unital value `{other}`")))
                            }
                        };
                    }
                    _ => return Err(syntax(line, "unital line outside a module block")),
                }
            }
            "f" => {
                let eq = tokens
                    .iter()
                    .position(|&t| t == "=")
                    .ok_or_else(|| syntax(line, "f line has no `=`"))?;
                match &mut block {
                    Some(Block::Ring {
                        labels, m, f, name, ..
                    }) => {
                        let arity = *m;
                        let mut tuple: Vec<usize> = tokens[1..eq]
                            .iter()
                            .map(|t| lookup(labels, t, line))
                            .collect::<Result<_, _>>()?;
                        if tuple.len() != arity {
                            return Err(syntax(
                                line,
                                format!("f tuple in ring {name} must have {arity} entries"),
                            ));
                        }
                        tuple.sort_unstable();
                        let value = parse_result_set(&tokens[eq + 1..], labels, line)?;
                        let table = f.get_or_insert_with(|| {
                            PendingTable::new("f'", sets::multiset_count(labels.len(), arity))
                        });
                        table.set(
                            sets::multiset_rank(&tuple),
                            value,
                            line,
                            tokens[1..eq].join(" "),
                        )?;
                    }
                    Some(Block::Module {
                        labels, ring, f, name, ..
                    }) => {
                        let arity = ring.m();
                        let mut tuple: Vec<usize> = tokens[1..eq]
                            .iter()
                            .map(|t| lookup(labels, t, line))
                            .collect::<Result<_, _>>()?;
                        if tuple.len() != arity {
                            return Err(syntax(
                                line,
                                format!("f tuple in module {name} must have {arity} entries"),
                            ));
                        }
                        tuple.sort_unstable();
                        let value = parse_result_set(&tokens[eq + 1..], labels, line)?;
                        let table = f.get_or_insert_with(|| {
                            PendingTable::new("f", sets::multiset_count(labels.len(), arity))
                        });
                        table.set(
                            sets::multiset_rank(&tuple),
                            value,
                            line,
                            tokens[1..eq].join(" "),
                        )?;
                    }
                    None => return Err(syntax(line, "f line outside a structure block")),
                }
            }
            "g" => {
                let eq = tokens
                    .iter()
                    .position(|&t| t == "=")
                    .ok_or_else(|| syntax(line, "g line has no `=`"))?;
                match &mut block {
                    Some(Block::Ring {
                        labels, n, g, name, ..
                    }) => {
                        let arity = *n;
                        let mut tuple: Vec<usize> = tokens[1..eq]
                            .iter()
                            .map(|t| lookup(labels, t, line))
                            .collect::<Result<_, _>>()?;
                        if tuple.len() != arity {
                            return Err(syntax(
                                line,
                                format!("g tuple in ring {name} must have {arity} entries"),
                            ));
                        }
                        tuple.sort_unstable();
                        let value = parse_result_set(&tokens[eq + 1..], labels, line)?;
                        let table = g.get_or_insert_with(|| {
                            PendingTable::new("g'", sets::multiset_count(labels.len(), arity))
                        });
                        table.set(
                            sets::multiset_rank(&tuple),
                            value,
                            line,
                            tokens[1..eq].join(" "),
                        )?;
                    }
                    Some(Block::Module {
                        labels, ring, g, name, ..
                    }) => {
                        let bar = tokens
                            .iter()
                            .position(|&t| t == "|")
                            .ok_or_else(|| syntax(line, "module g line has no `|`"))?;
                        if bar >= eq {
                            return Err(syntax(line, "`|` must precede `=`"));
                        }
                        let scalar_arity = ring.n() - 1;
                        let mut scalars: Vec<usize> = tokens[1..bar]
                            .iter()
                            .map(|t| lookup(ring.labels(), t, line))
                            .collect::<Result<_, _>>()?;
                        if scalars.len() != scalar_arity {
                            return Err(syntax(
                                line,
                                format!(
                                    "g line in module {name} must list {scalar_arity} scalars"
                                ),
                            ));
                        }
                        if eq != bar + 2 {
                            return Err(syntax(line, "exactly one module element after `|`"));
                        }
                        let a = lookup(labels, tokens[bar + 1], line)?;
                        scalars.sort_unstable();
                        let value = parse_result_set(&tokens[eq + 1..], labels, line)?;
                        let table = g.get_or_insert_with(|| {
                            PendingTable::new(
                                "g",
                                sets::multiset_count(ring.size(), scalar_arity) * labels.len(),
                            )
                        });
                        table.set(
                            sets::multiset_rank(&scalars) * labels.len() + a,
                            value,
                            line,
                            tokens[1..eq].join(" "),
                        )?;
                    }
                    None => return Err(syntax(line, "g line outside a structure block")),
                }
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(b) = block.take() {
        finish_block(b, &mut out)?;
    }
    Ok(out)
}

fn push_set(out: &mut String, labels: &[String], s: SmallSet) {
    for (k, i) in s.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.push_str(&labels[i]);
    }
}

/// Canonical text form of a ring; parses back to the same tables.
pub fn serialize_ring(r: &Hyperring) -> String {
    let mut out = format!("ring {} arity {} {}\n", r.name(), r.m(), r.n());
    out.push_str(&format!("elements {}\n", r.labels().join(" ")));
    out.push_str(&format!("zero {}\n", r.label(r.zero())));
    out.push_str(&format!("one {}\n", r.label(r.one())));
    let mut rank = 0usize;
    sets::for_each_multiset(r.size(), r.m(), |t| {
        let mut line = String::from("f");
        for &i in t {
            line.push(' ');
            line.push_str(r.label(i));
        }
        line.push_str(" = ");
        push_set(&mut line, r.labels(), r.f().entries()[rank]);
        out.push_str(&line);
        out.push('\n');
        rank += 1;
    });
    rank = 0;
    sets::for_each_multiset(r.size(), r.n(), |t| {
        let mut line = String::from("g");
        for &i in t {
            line.push(' ');
            line.push_str(r.label(i));
        }
        line.push_str(" = ");
        push_set(&mut line, r.labels(), r.g().entries()[rank]);
        out.push_str(&line);
        out.push('\n');
        rank += 1;
    });
    out
}

/// Canonical text form of a module (without its ring).
pub fn serialize_module(m: &Hypermodule) -> String {
    let mut out = format!("module {} over {}\n", m.name(), m.ring().name());
    out.push_str(&format!("elements {}\n", m.labels().join(" ")));
    out.push_str(&format!("zero {}\n", m.label(m.zero())));
    out.push_str(&format!("unital {}\n", m.unital()));
    let mut rank = 0usize;
    sets::for_each_multiset(m.size(), m.m(), |t| {
        let mut line = String::from("f");
        for &i in t {
            line.push(' ');
            line.push_str(m.label(i));
        }
        line.push_str(" = ");
        push_set(&mut line, m.labels(), m.f().entries()[rank]);
        out.push_str(&line);
        out.push('\n');
        rank += 1;
    });
    let mut scalar_rank = 0usize;
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |t| {
        for a in 0..m.size() {
            let mut line = String::from("g");
            for &i in t {
                line.push(' ');
                line.push_str(m.ring().label(i));
            }
            line.push_str(" | ");
            line.push_str(m.label(a));
            line.push_str(" = ");
            push_set(
                &mut line,
                m.labels(),
                m.g().entries()[scalar_rank * m.size() + a],
            );
            out.push_str(&line);
            out.push('\n');
        }
        scalar_rank += 1;
    });
    out
}

/// A whole file: the module's ring followed by the module.
pub fn serialize_file(m: &Hypermodule) -> String {
    format!("{}{}", serialize_ring(m.ring()), serialize_module(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIX_A: &str = include_str!("../../../fixtures/fix_a.hyp");

    #[test]
    fn parses_the_bundled_example() {
        let parsed = parse_structure(FIX_A).unwrap();
        assert_eq!(parsed.rings.len(), 1);
        assert_eq!(parsed.modules.len(), 1);
        let r = &parsed.rings[0];
        assert_eq!((r.size(), r.m(), r.n()), (3, 3, 3));
        let m = &parsed.modules[0];
        assert_eq!(m.size(), 4);
        assert!(!m.unital());
        // f'(0,1,2) = R, transcribed from the table
        assert_eq!(r.f().get(&[0, 1, 2]), r.full_set());
    }

    #[test]
    fn empty_result_is_rejected() {
        let text = "ring R arity 2 2\nelements 0 1\nzero 0\none 1\nf 0 0 = \n";
        match parse_structure(text) {
            Err(ParseError::EmptyHyperproduct { line }) => assert_eq!(line, 5),
            other => panic!("expected empty hyperproduct error, got {other:?}"),
        }
    }

    #[test]
    fn missing_tuple_is_named() {
        let mut text = String::new();
        for line in FIX_A.lines() {
            if line.starts_with("f 1 1 3") {
                continue;
            }
            text.push_str(line);
            text.push('\n');
        }
        match parse_structure(&text) {
            Err(ParseError::IncompleteTable { op, tuple, .. }) => {
                assert_eq!(op, "f");
                assert_eq!(tuple, "1 1 3");
            }
            other => panic!("expected incomplete table error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_tuple_rejected_even_when_consistent() {
        let mut text = String::new();
        for line in FIX_A.lines() {
            text.push_str(line);
            text.push('\n');
            if line.starts_with("f 0 0 1 =") {
                text.push_str("f 0 1 0 = 1\n");
            }
        }
        assert!(matches!(
            parse_structure(&text),
            Err(ParseError::DuplicateTuple { .. })
        ));
    }

    #[test]
    fn unknown_label_is_reported() {
        let text = "ring R arity 2 2\nelements 0 1\nzero 0\none 1\nf 0 7 = 0\n";
        assert!(matches!(
            parse_structure(text),
            Err(ParseError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn single_element_rings_are_rejected() {
        let text = "ring R arity 2 2\nelements 0\nzero 0\none 0\nf 0 0 = 0\ng 0 0 = 0\n";
        assert!(matches!(
            parse_structure(text),
            Err(ParseError::Structure { .. })
        ));
    }

    #[test]
    fn multivalued_ring_g_is_rejected() {
        let text = "ring R arity 2 2\nelements 0 1\nzero 0\none 1\n\
                    f 0 0 = 0\nf 0 1 = 1\nf 1 1 = 0\n\
                    g 0 0 = 0\ng 0 1 = 0 1\ng 1 1 = 1\n";
        match parse_structure(text) {
            Err(ParseError::Structure { source, .. }) => {
                assert!(matches!(source, StructureError::NotSingleValued { .. }));
            }
            other => panic!("expected single-valued violation, got {other:?}"),
        }
    }

    #[test]
    fn serialize_parse_is_identity_on_tables() {
        let parsed = parse_structure(FIX_A).unwrap();
        let text = serialize_file(&parsed.modules[0]);
        let again = parse_structure(&text).unwrap();
        assert!(parsed.rings[0].same_tables(&again.rings[0]));
        let m0 = &parsed.modules[0];
        let m1 = &again.modules[0];
        assert_eq!(m0.labels(), m1.labels());
        assert_eq!(m0.f().entries(), m1.f().entries());
        assert_eq!(m0.g().entries(), m1.g().entries());
        assert_eq!(m0.zero(), m1.zero());
        assert_eq!(m0.unital(), m1.unital());
    }
}
