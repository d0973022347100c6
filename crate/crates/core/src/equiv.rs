//! Equivalence of networks (isomorphism fixing every leaf label) through
//! canonical codes.
//!
//! The code is computed by colour refinement seeded with the leaf labels,
//! followed by individualisation of the first smallest non-singleton cell
//! and recursion; the lexicographically least certificate over all leaves
//! of the search tree wins.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decks::Deck;
use crate::netcore::{Multigraph, PseudoNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("decks are indexed by different elements")]
    IndexMismatch,
}

/// Byte string whose equality is exactly equivalence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        hex::decode(s).map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Result of canonical labelling.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

impl CanonicalForm {
    /// Inverse of `order`.
    pub fn position(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

struct Shape<'a> {
    g: &'a Multigraph,
    labeled: bool,
    adj: Vec<Vec<(usize, u32)>>,
}

type Cert = Vec<(u32, u32)>;

fn dense_rank<K: Ord>(keys: &[K]) -> (Vec<u32>, usize) {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; keys.len()];
    let mut r = 0u32;
    for (i, &v) in idx.iter().enumerate() {
        if i > 0 && keys[idx[i - 1]] != keys[v] {
            r += 1;
        }
        out[v] = r;
    }
    let count = if keys.is_empty() { 0 } else { r as usize + 1 };
    (out, count)
}

impl<'a> Shape<'a> {
    fn new(g: &'a Multigraph, labeled: bool) -> Self {
        let n = g.vertex_count();
        let mut m: Vec<BTreeMap<usize, u32>> = vec![BTreeMap::new(); n];
        for &(u, v) in g.edges() {
            if u != v {
                *m[u].entry(v).or_default() += 1;
                *m[v].entry(u).or_default() += 1;
            }
        }
        let adj = m.into_iter().map(|row| row.into_iter().collect()).collect();
        Shape { g, labeled, adj }
    }

    fn initial(&self) -> Vec<u32> {
        let deg = self.g.degrees();
        let mut loops = vec![0usize; self.g.vertex_count()];
        for &(u, v) in self.g.edges() {
            if u == v {
                loops[u] += 1;
            }
        }
        let keys: Vec<(u8, &str, usize, usize)> = (0..self.g.vertex_count())
            .map(|v| match self.g.label(v) {
                Some(l) if self.labeled => (0, l, 0, 0),
                _ => (1, "", deg[v], loops[v]),
            })
            .collect();
        dense_rank(&keys).0
    }

    fn refine(&self, col: &mut Vec<u32>) {
        let n = col.len();
        let mut cnt = col.iter().max().map_or(0, |&m| m as usize + 1);
        let mut sig: Vec<Vec<u32>> = vec![Vec::new(); n];
        while cnt < n {
            for v in 0..n {
                let mut nb: Vec<(u32, u32)> = self.adj[v].iter().map(|&(u, m)| (col[u], m)).collect();
                nb.sort_unstable();
                let s = &mut sig[v];
                s.clear();
                s.push(col[v]);
                for (c, m) in nb {
                    s.push(c);
                    s.push(m);
                }
            }
            let (next, c2) = dense_rank(&sig);
            *col = next;
            if c2 == cnt {
                break;
            }
            cnt = c2;
        }
    }

    fn cert(&self, col: &[u32]) -> Cert {
        let mut c: Cert = self
            .g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (col[u], col[v]);
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        c.sort_unstable();
        c
    }

    /// Explores the search tree; `sink` receives every leaf colouring
    /// together with its certificate.
    fn search(&self, mut col: Vec<u32>, best: &mut Option<(Cert, Vec<Vec<u32>>)>, keep_all: bool) {
        self.refine(&mut col);
        let n = col.len();
        let mut size = vec![0usize; n];
        for &c in &col {
            size[c as usize] += 1;
        }
        let target = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
        match target {
            None => {
                let cert = self.cert(&col);
                match best {
                    Some((b, leaves)) => match cert.cmp(b) {
                        std::cmp::Ordering::Less => *best = Some((cert, vec![col])),
                        std::cmp::Ordering::Equal if keep_all => leaves.push(col),
                        _ => {}
                    },
                    None => *best = Some((cert, vec![col])),
                }
            }
            Some(cell) => {
                let cell = cell as u32;
                for v in 0..n {
                    if col[v] != cell {
                        continue;
                    }
                    let ind: Vec<u32> = (0..n)
                        .map(|w| 2 * col[w] + (col[w] == cell && w != v) as u32)
                        .collect();
                    let (ind, _) = dense_rank(&ind);
                    self.search(ind, best, keep_all);
                }
            }
        }
    }

    fn encode(&self, col: &[u32], cert: &Cert) -> CanonicalCode {
        let n = col.len();
        let mut order = vec![0usize; n];
        for (v, &c) in col.iter().enumerate() {
            order[c as usize] = v;
        }
        let mut out = Vec::with_capacity(16 + 8 * cert.len());
        out.extend_from_slice(b"PN");
        out.push(1);
        out.push(self.labeled as u8);
        out.extend_from_slice(&(n as u32).to_be_bytes());
        if self.labeled {
            let labels: Vec<(usize, &str)> =
                order.iter().enumerate().filter_map(|(i, &v)| Some((i, self.g.label(v)?))).collect();
            out.extend_from_slice(&(labels.len() as u32).to_be_bytes());
            for (i, l) in labels {
                out.extend_from_slice(&(i as u32).to_be_bytes());
                out.extend_from_slice(&(l.len() as u32).to_be_bytes());
                out.extend_from_slice(l.as_bytes());
            }
        } else {
            out.extend_from_slice(&0u32.to_be_bytes());
        }
        out.extend_from_slice(&(cert.len() as u32).to_be_bytes());
        for &(a, b) in cert {
            out.extend_from_slice(&a.to_be_bytes());
            out.extend_from_slice(&b.to_be_bytes());
        }
        CanonicalCode(out)
    }
}

fn run(g: &Multigraph, labeled: bool, keep_all: bool) -> (CanonicalCode, Vec<Vec<usize>>) {
    let shape = Shape::new(g, labeled);
    let mut best = None;
    shape.search(shape.initial(), &mut best, keep_all);
    let (cert, leaves) = best.unwrap_or_default();
    let code = match leaves.first() {
        Some(col) => shape.encode(col, &cert),
        None => shape.encode(&[], &cert),
    };
    let orders = leaves
        .iter()
        .map(|col| {
            let mut order = vec![0usize; col.len()];
            for (v, &c) in col.iter().enumerate() {
                order[c as usize] = v;
            }
            order
        })
        .collect();
    (code, orders)
}

/// Canonical code and one canonical vertex order.
pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let (code, mut orders) = run(g, true, false);
    let order = orders.pop().unwrap_or_default();
    CanonicalForm { code, order }
}

pub fn canonical_code(g: &Multigraph) -> CanonicalCode {
    run(g, true, false).0
}

/// Code of the graph with every label erased.
pub fn unlabeled_code(g: &Multigraph) -> CanonicalCode {
    run(g, false, false).0
}

/// Every vertex order attaining the canonical certificate; two such orders
/// differ by an automorphism.
pub fn all_canonical_orders(g: &Multigraph, labeled: bool) -> (CanonicalCode, Vec<Vec<usize>>) {
    run(g, labeled, true)
}

pub fn is_equivalent(a: &Multigraph, b: &Multigraph) -> bool {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.label_set() != b.label_set()
    {
        return false;
    }
    canonical_code(a) == canonical_code(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeckMode {
    Indexed,
    Multiset,
}

pub fn deck_equivalent(d1: &Deck, d2: &Deck, mode: DeckMode) -> Result<bool, EquivError> {
    match mode {
        DeckMode::Indexed => {
            if d1.indices().ne(d2.indices()) {
                return Err(EquivError::IndexMismatch);
            }
            Ok(d1.codes().values().eq(d2.codes().values()))
        }
        DeckMode::Multiset => {
            if d1.len() != d2.len() {
                return Err(EquivError::IndexMismatch);
            }
            Ok(d1.code_multiset() == d2.code_multiset())
        }
    }
}

/// One representative per class, ordered by code; the first occurrence
/// of each class is kept.
pub fn dedup(nets: Vec<PseudoNetwork>) -> Vec<PseudoNetwork> {
    let mut seen: BTreeMap<CanonicalCode, PseudoNetwork> = BTreeMap::new();
    for n in nets {
        seen.entry(canonical_code(&n)).or_insert(n);
    }
    seen.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::pnet::parse_pnet;

    fn quartet(p: [&str; 4]) -> PseudoNetwork {
        parse_pnet(&format!(
            "leaves: {} {} {} {}\nedge {} u\nedge {} u\nedge u v\nedge v {}\nedge v {}\n",
            p[0], p[1], p[2], p[3], p[0], p[1], p[2], p[3]
        ))
        .unwrap()
    }

    #[test]
    fn labels_distinguish_quartets() {
        let a = quartet(["a", "b", "c", "d"]);
        let b = quartet(["a", "c", "b", "d"]);
        let c = quartet(["b", "a", "d", "c"]);
        assert_ne!(canonical_code(&a), canonical_code(&b));
        assert_eq!(canonical_code(&a), canonical_code(&c));
        assert_eq!(unlabeled_code(&a), unlabeled_code(&b));
    }

    #[test]
    fn code_ignores_vertex_and_edge_order() {
        let a = parse_pnet("leaves: a b c\nedge a u\nedge u v\nedge u v\nedge v w\nedge w b\nedge w c\n").unwrap();
        let b = parse_pnet("leaves: c b a\nedge w c\nedge b w\nedge v w\nedge v u\nedge u v\nedge u a\n").unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert!(is_equivalent(&a, &b));
    }

    #[test]
    fn loops_and_multiplicities_are_encoded() {
        let a = parse_pnet("leaves: a b\nedge a u\nedge u u\nedge u v\nedge v v\nedge v b\n").unwrap();
        let b = parse_pnet("leaves: a b\nedge a u\nedge u v\nedge u v\nedge u v\nedge v b\n").unwrap();
        assert_ne!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn symmetric_unlabeled_graph_has_all_orders() {
        // K4: 24 automorphisms
        let mut g = Multigraph::new();
        let v: Vec<usize> = (0..4).map(|_| g.add_internal()).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                g.add_edge(v[i], v[j]);
            }
        }
        let (_, orders) = all_canonical_orders(&g, false);
        assert_eq!(orders.len(), 24);
    }

    #[test]
    fn hex_roundtrip() {
        let c = canonical_code(&quartet(["a", "b", "c", "d"]));
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()).unwrap(), c);
    }
}
