//! Phylogenetic trees by leaf insertion.

use std::collections::BTreeMap;

use crate::equiv::canonical_code;
use crate::netcore::{attach_leaf, attach_leaf_to_vertex, Multigraph, PseudoNetwork};

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// All trees on `1..=n`, ordered by code.
pub fn enumerate_trees(n: usize, binary: bool) -> Vec<PseudoNetwork> {
    enumerate_trees_on(&default_labels(n), binary)
}

/// All trees on the given labels. Every tree on `k + 1` leaves comes from
/// a tree on `k` leaves by attaching the new leaf to an edge (its
/// neighbour had degree 3) or to an internal vertex (degree at least 4).
pub fn enumerate_trees_on(labels: &[String], binary: bool) -> Vec<PseudoNetwork> {
    if labels.len() < 2 {
        return Vec::new();
    }
    let mut g = Multigraph::new();
    let a = g.add_leaf(labels[0].clone());
    let b = g.add_leaf(labels[1].clone());
    g.add_edge(a, b);
    let mut level: Vec<PseudoNetwork> = vec![PseudoNetwork::new(g).expect("edge")];
    for l in &labels[2..] {
        let mut next = BTreeMap::new();
        for t in &level {
            for e in 0..t.edge_count() {
                let n = attach_leaf(t, l, e).expect("fresh label");
                next.entry(canonical_code(&n)).or_insert(n);
            }
            if !binary {
                let deg = t.degrees();
                for v in 0..t.vertex_count() {
                    if t.label(v).is_none() && deg[v] >= 3 {
                        let n = attach_leaf_to_vertex(t, l, v).expect("fresh label");
                        next.entry(canonical_code(&n)).or_insert(n);
                    }
                }
            }
        }
        level = next.into_values().collect();
    }
    let mut out: Vec<(crate::equiv::CanonicalCode, PseudoNetwork)> =
        level.into_iter().map(|t| (canonical_code(&t), t)).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.into_iter().map(|(_, t)| t).collect()
}
