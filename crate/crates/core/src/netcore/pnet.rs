//! Line-based text format.
//!
//! ```text
//! # comment
//! leaves: a b c
//! edge a u
//! edge u v
//! edge u v      # repeated line: parallel edge
//! edge v v      # loop
//! ```
//!
//! Header tokens are leaves; every other token names an internal vertex.

use std::collections::HashMap;

use thiserror::Error;

use super::graph::{Multigraph, NetError, PseudoNetwork};
use crate::equiv::canonical_form;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnetError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid network: {0}")]
    Invalid(#[from] NetError),
}

fn syntax(line: usize, msg: impl Into<String>) -> PnetError {
    PnetError::Syntax { line, msg: msg.into() }
}

/// Parses into a raw multigraph without checking network invariants.
pub fn parse_graph(text: &str) -> Result<Multigraph, PnetError> {
    let mut g = Multigraph::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut header = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("leaves:") {
            if header {
                return Err(syntax(line, "second leaves header"));
            }
            header = true;
            for tok in rest.split_whitespace() {
                if names.contains_key(tok) {
                    return Err(PnetError::Invalid(NetError::DuplicateLabel(tok.to_string())));
                }
                let v = g.add_leaf(tok);
                names.insert(tok.to_string(), v);
            }
            continue;
        }
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("edge") => {}
            Some(other) => return Err(syntax(line, format!("unknown directive {other:?}"))),
            None => unreachable!(),
        }
        if !header {
            return Err(syntax(line, "edge before leaves header"));
        }
        let ends: Vec<&str> = toks.collect();
        if ends.len() != 2 {
            return Err(syntax(line, "edge needs exactly two endpoints"));
        }
        let mut id = |t: &str| -> usize {
            if let Some(&v) = names.get(t) {
                return v;
            }
            let v = g.add_internal();
            names.insert(t.to_string(), v);
            v
        };
        let (u, v) = (id(ends[0]), id(ends[1]));
        g.add_edge(u, v);
    }
    if !header {
        return Err(syntax(0, "missing leaves header"));
    }
    Ok(g)
}

/// Parses and validates a connected pseudo-network.
pub fn parse_pnet(text: &str) -> Result<PseudoNetwork, PnetError> {
    Ok(PseudoNetwork::new(parse_graph(text)?)?)
}

/// Parses and validates each component (edge-deck cards may be disconnected).
pub fn parse_pnet_union(text: &str) -> Result<PseudoNetwork, PnetError> {
    Ok(PseudoNetwork::new_union(parse_graph(text)?)?)
}

/// Serialises in canonical vertex order, so equivalent networks produce
/// byte-identical text.
pub fn to_pnet(g: &Multigraph) -> String {
    let form = canonical_form(g);
    let pos = form.position();
    let labels: Vec<&str> = form.order.iter().filter_map(|&v| g.label(v)).collect();
    let taken: std::collections::HashSet<&str> = labels.iter().copied().collect();
    let mut prefix = String::from("v");
    while (0..g.vertex_count()).any(|i| taken.contains(format!("{prefix}{i}").as_str())) {
        prefix.insert(0, '_');
    }
    let name = |v: usize| -> String {
        match g.label(v) {
            Some(l) => l.to_string(),
            None => format!("{prefix}{}", pos[v]),
        }
    };
    let mut edges: Vec<(usize, usize, usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = if pos[u] <= pos[v] { (u, v) } else { (v, u) };
            (pos[a], pos[b], a, b)
        })
        .collect();
    edges.sort_unstable();
    let mut out = String::from("leaves:");
    for l in &labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for (_, _, a, b) in edges {
        out.push_str(&format!("edge {} {}\n", name(a), name(b)));
    }
    out
}

/// Graphviz rendering; leaves as boxes, internal vertices as points.
pub fn to_dot(g: &Multigraph) -> String {
    let form = canonical_form(g);
    let pos = form.position();
    let mut out = String::from("graph network {\n  node [shape=point];\n");
    for &v in &form.order {
        if let Some(l) = g.label(v) {
            out.push_str(&format!("  n{} [shape=box, label=\"{}\"];\n", pos[v], l.replace('"', "\\\"")));
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .collect();
    edges.sort_unstable();
    for (a, b) in edges {
        out.push_str(&format!("  n{a} -- n{b};\n"));
    }
    out.push_str("}\n");
    out
}

impl serde::Serialize for PseudoNetwork {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pnet(self))
    }
}

impl<'de> serde::Deserialize<'de> for PseudoNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_pnet_union(&text).map_err(serde::de::Error::custom)
    }
}
