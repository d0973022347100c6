//! Deletion operators and deck builders.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::equiv::{canonical_code, canonical_form, CanonicalCode};
use crate::netcore::{check_phylogenetic, BlockDecomposition, Multigraph, NetError, PseudoNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeckError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("need at least {need} leaves, have {have}")]
    TooFewLeaves { need: usize, have: usize },
    #[error("invalid leaf subset: {0}")]
    BadSubset(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeckKind {
    Leaf,
    Phylo,
    Edge,
}

impl fmt::Display for DeckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeckKind::Leaf => "leaf",
            DeckKind::Phylo => "phylo",
            DeckKind::Edge => "edge",
        })
    }
}

/// What was deleted to produce a card.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CardIndex {
    Leaf(String),
    Edge(usize),
}

impl fmt::Display for CardIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardIndex::Leaf(l) => f.write_str(l),
            CardIndex::Edge(e) => write!(f, "{e}"),
        }
    }
}

/// Cards indexed by deleted element, with their canonical codes.
#[derive(Debug, Clone)]
pub struct Deck {
    kind: DeckKind,
    labels: BTreeSet<String>,
    cards: BTreeMap<CardIndex, PseudoNetwork>,
    codes: BTreeMap<CardIndex, CanonicalCode>,
}

impl Deck {
    pub fn new(kind: DeckKind, labels: BTreeSet<String>, cards: BTreeMap<CardIndex, PseudoNetwork>) -> Self {
        let codes = cards.iter().map(|(i, c)| (i.clone(), canonical_code(c))).collect();
        Deck { kind, labels, cards, codes }
    }

    pub fn kind(&self) -> DeckKind {
        self.kind
    }

    /// Label set of the network the deck came from.
    pub fn labels(&self) -> &BTreeSet<String> {
        &self.labels
    }

    pub fn cards(&self) -> &BTreeMap<CardIndex, PseudoNetwork> {
        &self.cards
    }

    pub fn card(&self, i: &CardIndex) -> Option<&PseudoNetwork> {
        self.cards.get(i)
    }

    pub fn leaf_card(&self, x: &str) -> Option<&PseudoNetwork> {
        self.cards.get(&CardIndex::Leaf(x.to_string()))
    }

    pub fn codes(&self) -> &BTreeMap<CardIndex, CanonicalCode> {
        &self.codes
    }

    pub fn code(&self, i: &CardIndex) -> Option<&CanonicalCode> {
        self.codes.get(i)
    }

    pub fn indices(&self) -> impl Iterator<Item = &CardIndex> {
        self.cards.keys()
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Sorted card codes.
    pub fn code_multiset(&self) -> Vec<CanonicalCode> {
        let mut v: Vec<_> = self.codes.values().cloned().collect();
        v.sort();
        v
    }

    /// Sub-deck on the given indices.
    pub fn restrict(&self, keep: &BTreeSet<CardIndex>) -> Deck {
        Deck {
            kind: self.kind,
            labels: self.labels.clone(),
            cards: self.cards.iter().filter(|(i, _)| keep.contains(i)).map(|(i, c)| (i.clone(), c.clone())).collect(),
            codes: self.codes.iter().filter(|(i, _)| keep.contains(i)).map(|(i, c)| (i.clone(), c.clone())).collect(),
        }
    }

    /// Hex SHA-256 over kind, indices and card codes.
    pub fn deck_id(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.kind.to_string().as_bytes());
        for (i, c) in &self.codes {
            h.update([0u8]);
            h.update(i.to_string().as_bytes());
            h.update([1u8]);
            h.update(c.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

/// Removes leaf `x` with its edge and suppresses degree-2 vertices.
pub fn delete_leaf(net: &PseudoNetwork, x: &str) -> Result<PseudoNetwork, DeckError> {
    let v = net.vertex_of(x).ok_or_else(|| NetError::NoSuchLeaf(x.to_string()))?;
    if net.vertex_count() == 1 {
        return Err(NetError::CollapsedToNothing.into());
    }
    let keep: Vec<bool> = (0..net.vertex_count()).map(|u| u != v).collect();
    let (g, _) = net.retain_vertices(&keep);
    let g = g.suppress_all_degree2()?;
    Ok(PseudoNetwork::new(g)?)
}

pub fn x_deck(net: &PseudoNetwork) -> Result<Deck, DeckError> {
    let all = net.label_set();
    u_deck(net, &all)
}

pub fn u_deck(net: &PseudoNetwork, u: &BTreeSet<String>) -> Result<Deck, DeckError> {
    let mut cards = BTreeMap::new();
    for x in u {
        cards.insert(CardIndex::Leaf(x.clone()), delete_leaf(net, x)?);
    }
    Ok(Deck::new(DeckKind::Leaf, net.label_set(), cards))
}

/// A single step of the phylogenetic clean-up after a leaf deletion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// Contract a blob meeting exactly two cut-edges (vertex set).
    CollapseBlob(Vec<usize>),
    /// Replace the parallel edges between two vertices by one edge.
    MergeParallel(usize, usize),
    /// Remove an unlabeled degree-2 vertex.
    Suppress(usize),
}

/// Every applicable reduction, blob collapses first, then parallel edges,
/// then suppressions.
pub fn applicable_reductions(g: &Multigraph) -> Vec<Reduction> {
    let mut out = Vec::new();
    let d = BlockDecomposition::of(g);
    let bridges: BTreeSet<usize> = d.bridges.iter().copied().collect();
    for b in &d.blobs {
        let vs = crate::netcore::blobs::vertices_of(g, b);
        let ports: usize = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(e, _)| bridges.contains(e))
            .map(|(_, &(u, v))| vs.contains(&u) as usize + vs.contains(&v) as usize)
            .sum();
        if ports == 2 {
            out.push(Reduction::CollapseBlob(vs.into_iter().collect()));
        }
    }
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        if u != v {
            *mult.entry((u, v)).or_default() += 1;
        }
    }
    for ((u, v), m) in mult {
        if m >= 2 {
            out.push(Reduction::MergeParallel(u, v));
        }
    }
    let deg = g.degrees();
    for v in 0..g.vertex_count() {
        if g.label(v).is_none() && deg[v] == 2 {
            out.push(Reduction::Suppress(v));
        }
    }
    out
}

pub fn apply_reduction(g: &Multigraph, r: &Reduction) -> Result<Multigraph, NetError> {
    match r {
        Reduction::CollapseBlob(vs) => {
            let inside: BTreeSet<usize> = vs.iter().copied().collect();
            let keep: Vec<bool> = (0..g.vertex_count()).map(|v| !inside.contains(&v) || v == vs[0]).collect();
            let w = vs[0];
            let mut edges = Vec::new();
            for &(u, v) in g.edges() {
                let (a, b) = (inside.contains(&u), inside.contains(&v));
                match (a, b) {
                    (true, true) => {}
                    (true, false) => edges.push((w, v)),
                    (false, true) => edges.push((u, w)),
                    (false, false) => edges.push((u, v)),
                }
            }
            let tmp = Multigraph::from_parts(g.labels().to_vec(), edges);
            Ok(tmp.retain_vertices(&keep).0)
        }
        Reduction::MergeParallel(u, v) => {
            let mut seen = false;
            let mut edges = Vec::new();
            for &e in g.edges() {
                if e == (*u, *v) {
                    if seen {
                        continue;
                    }
                    seen = true;
                }
                edges.push(e);
            }
            Ok(Multigraph::from_parts(g.labels().to_vec(), edges))
        }
        Reduction::Suppress(v) => {
            let inc: Vec<usize> = g.incidence()[*v].clone();
            if inc.len() != 2 || inc[0] == inc[1] {
                return Err(NetError::CollapsedToNothing);
            }
            let p = g.other_end(inc[0], *v);
            let q = g.other_end(inc[1], *v);
            let mut edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(e, _)| !inc.contains(e))
                .map(|(_, &e)| e)
                .collect();
            edges.push((p, q));
            let tmp = Multigraph::from_parts(g.labels().to_vec(), edges);
            let keep: Vec<bool> = (0..g.vertex_count()).map(|u| u != *v).collect();
            Ok(tmp.retain_vertices(&keep).0)
        }
    }
}

/// Applies reductions until none is left; `choose` picks among the
/// applicable ones (index into [`applicable_reductions`]).
pub fn phylo_reduce_with(
    mut g: Multigraph,
    mut choose: impl FnMut(usize) -> usize,
) -> Result<Multigraph, NetError> {
    loop {
        let rs = applicable_reductions(&g);
        if rs.is_empty() {
            return Ok(g);
        }
        let i = choose(rs.len()).min(rs.len() - 1);
        g = apply_reduction(&g, &rs[i])?;
    }
}

/// Default reduction order; by confluence it agrees with every order
/// `phylo_reduce_with` can take.
fn phylo_reduce(g: Multigraph) -> Result<Multigraph, NetError> {
    let mut g = g.suppress_all_degree2()?;
    loop {
        let rs = applicable_reductions(&g);
        let Some(r) = rs.into_iter().next() else { return Ok(g) };
        g = apply_reduction(&g, &r)?;
        if matches!(r, Reduction::CollapseBlob(_) | Reduction::MergeParallel(..)) {
            g = g.suppress_all_degree2()?;
        }
    }
}

/// Deletes `x`, then collapses two-port blobs, merges parallel edges and
/// suppresses degree-2 vertices until the result is phylogenetic.
pub fn phylo_delete_leaf(net: &PseudoNetwork, x: &str) -> Result<PseudoNetwork, DeckError> {
    let have = net.leaf_count();
    if have < 3 {
        return Err(DeckError::TooFewLeaves { need: 3, have });
    }
    let v = net.vertex_of(x).ok_or_else(|| NetError::NoSuchLeaf(x.to_string()))?;
    let keep: Vec<bool> = (0..net.vertex_count()).map(|u| u != v).collect();
    let g = phylo_reduce(net.retain_vertices(&keep).0)?;
    check_phylogenetic(&g)?;
    Ok(PseudoNetwork::new(g)?)
}

pub fn phylo_deck(net: &PseudoNetwork) -> Result<Deck, DeckError> {
    let mut cards = BTreeMap::new();
    for x in net.label_set() {
        let c = phylo_delete_leaf(net, &x)?;
        cards.insert(CardIndex::Leaf(x), c);
    }
    Ok(Deck::new(DeckKind::Phylo, net.label_set(), cards))
}

/// Edge ids in canonical order; index `i` of an edge-deck refers to the
/// `i`-th entry.
pub fn canonical_edge_order(net: &Multigraph) -> Vec<usize> {
    let pos = canonical_form(net).position();
    let mut ids: Vec<usize> = (0..net.edge_count()).collect();
    ids.sort_by_key(|&e| {
        let (u, v) = net.edge(e);
        (pos[u].min(pos[v]), pos[u].max(pos[v]), e)
    });
    ids
}

/// Deletes edge `e` (by id) and suppresses; the result may be disconnected.
pub fn edge_delete(net: &PseudoNetwork, e: usize) -> Result<PseudoNetwork, DeckError> {
    if e >= net.edge_count() {
        return Err(NetError::NoSuchEdge(e).into());
    }
    let g = net.without_edges(&[e]).suppress_all_degree2()?;
    Ok(PseudoNetwork::new_union(g)?)
}

pub fn edge_deck(net: &PseudoNetwork) -> Result<Deck, DeckError> {
    let mut cards = BTreeMap::new();
    for (i, e) in canonical_edge_order(net).into_iter().enumerate() {
        cards.insert(CardIndex::Edge(i), edge_delete(net, e)?);
    }
    Ok(Deck::new(DeckKind::Edge, net.label_set(), cards))
}

/// Restriction to a 4-subset by phylogenetic deletion of the other leaves
/// in ascending label order.
pub fn quarnet_on(net: &PseudoNetwork, s: &BTreeSet<String>) -> Result<PseudoNetwork, DeckError> {
    let all = net.label_set();
    if all.len() < 4 {
        return Err(DeckError::TooFewLeaves { need: 4, have: all.len() });
    }
    if s.len() != 4 || !s.is_subset(&all) {
        return Err(DeckError::BadSubset(s.iter().join(",")));
    }
    restrict_to(net, s)
}

/// Phylogenetic deletion of every leaf outside `keep`, ascending.
pub fn restrict_to(net: &PseudoNetwork, keep: &BTreeSet<String>) -> Result<PseudoNetwork, DeckError> {
    let mut cur = net.clone();
    for x in net.label_set().difference(keep) {
        cur = phylo_delete_leaf(&cur, x)?;
    }
    Ok(cur)
}

/// One quarnet per 4-subset, deduplicated and ordered by code.
pub fn quarnet_set(net: &PseudoNetwork) -> Result<Vec<PseudoNetwork>, DeckError> {
    let all = net.label_set();
    if all.len() < 4 {
        return Err(DeckError::TooFewLeaves { need: 4, have: all.len() });
    }
    let mut out = BTreeMap::new();
    for s in all.iter().cloned().combinations(4) {
        let s: BTreeSet<String> = s.into_iter().collect();
        let q = quarnet_on(net, &s)?;
        out.entry(canonical_code(&q)).or_insert(q);
    }
    Ok(out.into_values().collect())
}

/// Quarnets keyed by their leaf set.
pub fn quarnets_by_subset(net: &PseudoNetwork) -> Result<BTreeMap<BTreeSet<String>, PseudoNetwork>, DeckError> {
    let all = net.label_set();
    let mut out = BTreeMap::new();
    for s in all.iter().cloned().combinations(4) {
        let s: BTreeSet<String> = s.into_iter().collect();
        let q = quarnet_on(net, &s)?;
        out.insert(s, q);
    }
    Ok(out)
}

/// The recursive union over phylogenetic cards, bottoming out at four leaves.
pub fn quarnet_set_recursive(net: &PseudoNetwork) -> Result<Vec<PseudoNetwork>, DeckError> {
    fn go(net: &PseudoNetwork, out: &mut BTreeMap<CanonicalCode, PseudoNetwork>) -> Result<(), DeckError> {
        if net.leaf_count() == 4 {
            out.entry(canonical_code(net)).or_insert_with(|| net.clone());
            return Ok(());
        }
        for x in net.label_set() {
            go(&phylo_delete_leaf(net, &x)?, out)?;
        }
        Ok(())
    }
    let have = net.leaf_count();
    if have < 4 {
        return Err(DeckError::TooFewLeaves { need: 4, have });
    }
    let mut out = BTreeMap::new();
    go(net, &mut out)?;
    Ok(out.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::is_equivalent;
    use crate::netcore::parse_pnet;

    #[test]
    fn two_leaf_edge_leaves_a_point() {
        let n = parse_pnet("leaves: a b\nedge a b\n").unwrap();
        let c = delete_leaf(&n, "a").unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.label(0), Some("b"));
        assert_eq!(delete_leaf(&c, "b").unwrap_err(), DeckError::Net(NetError::CollapsedToNothing));
        assert!(matches!(delete_leaf(&n, "q"), Err(DeckError::Net(NetError::NoSuchLeaf(_)))));
    }

    #[test]
    fn star_deck_is_uniform() {
        let s = parse_pnet("leaves: a b c d e\nedge a u\nedge b u\nedge c u\nedge d u\nedge e u\n").unwrap();
        let d = x_deck(&s).unwrap();
        assert_eq!(d.len(), 5);
        let four = parse_pnet("leaves: b c d e\nedge b u\nedge c u\nedge d u\nedge e u\n").unwrap();
        assert!(is_equivalent(d.leaf_card("a").unwrap(), &four));
    }

    #[test]
    fn triangle_collapses_in_phylo_deletion() {
        // triangle with leaves a, b, c; deleting a leaves a 2-port blob
        let t = parse_pnet("leaves: a b c\nedge a x\nedge b y\nedge c z\nedge x y\nedge y z\nedge z x\n").unwrap();
        let p = phylo_delete_leaf(&t, "a").unwrap();
        assert!(is_equivalent(&p, &parse_pnet("leaves: b c\nedge b c\n").unwrap()));
        let plain = delete_leaf(&t, "a").unwrap();
        assert!(plain.has_multi_edges());
    }

    #[test]
    fn pendant_edge_card_has_isolated_leaf() {
        let t = parse_pnet("leaves: a b c\nedge a u\nedge b u\nedge c u\n").unwrap();
        let d = edge_deck(&t).unwrap();
        assert_eq!(d.len(), 3);
        for c in d.cards().values() {
            assert_eq!(c.component_ids().1, 2);
            assert_eq!(c.vertex_count(), 3);
        }
    }

    #[test]
    fn removing_one_parallel_edge_merges_the_pair() {
        let n = parse_pnet("leaves: a b c\nedge a u\nedge u v\nedge u v\nedge v w\nedge w b\nedge w c\n").unwrap();
        let e = n.edges().iter().position(|&(p, q)| n.edge(1) == (p, q)).unwrap();
        let c = edge_delete(&n, e).unwrap();
        assert!(c.is_tree());
    }
}
