//! Splits induced by cut-edges.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::blobs::cut_edges;
use super::graph::Multigraph;

/// A bipartition `A|B` of the leaf set. Normalised so that `a` holds the
/// smallest label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Split {
    pub a: BTreeSet<String>,
    pub b: BTreeSet<String>,
}

impl Split {
    pub fn new(a: BTreeSet<String>, b: BTreeSet<String>) -> Self {
        debug_assert!(a.is_disjoint(&b));
        let swap = match (a.iter().next(), b.iter().next()) {
            (Some(x), Some(y)) => y < x,
            (None, Some(_)) => true,
            _ => false,
        };
        if swap {
            Split { a: b, b: a }
        } else {
            Split { a, b }
        }
    }

    pub fn from_side(side: &BTreeSet<String>, all: &BTreeSet<String>) -> Self {
        Split::new(side.clone(), all.difference(side).cloned().collect())
    }

    /// Trivial splits separate a single leaf (or nothing) from the rest.
    pub fn is_trivial(&self) -> bool {
        self.a.len() <= 1 || self.b.len() <= 1
    }

    /// Restriction to the leaf set minus `x`.
    pub fn without(&self, x: &str) -> Split {
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.remove(x);
        b.remove(x);
        Split::new(a, b)
    }

    pub fn restrict(&self, keep: &BTreeSet<String>) -> Split {
        Split::new(
            self.a.intersection(keep).cloned().collect(),
            self.b.intersection(keep).cloned().collect(),
        )
    }

    pub fn side_containing(&self, x: &str) -> &BTreeSet<String> {
        if self.a.contains(x) {
            &self.a
        } else {
            &self.b
        }
    }

    pub fn compatible(&self, other: &Split) -> bool {
        self.a.is_disjoint(&other.a)
            || self.a.is_disjoint(&other.b)
            || self.b.is_disjoint(&other.a)
            || self.b.is_disjoint(&other.b)
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", j(&self.a), j(&self.b))
    }
}

/// Labels on the side of cut-edge `e` that contains endpoint `from`.
pub fn side_labels(g: &Multigraph, e: usize, from: usize) -> BTreeSet<String> {
    side_vertices(g, e, from).into_iter().filter_map(|v| g.label(v).map(str::to_string)).collect()
}

/// Vertices reachable from `from` without crossing edge `e`.
pub fn side_vertices(g: &Multigraph, e: usize, from: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    seen[from] = true;
    let mut stack = vec![from];
    let mut out = vec![from];
    while let Some(u) = stack.pop() {
        for &(w, f) in &adj[u] {
            if f != e && !seen[w] {
                seen[w] = true;
                stack.push(w);
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The split of a cut-edge.
pub fn split_of_edge(g: &Multigraph, e: usize) -> Split {
    let all = g.label_set();
    let side = side_labels(g, e, g.edge(e).0);
    Split::from_side(&side, &all)
}

/// All splits induced by cut-edges, trivial ones included.
pub fn splits(g: &Multigraph) -> BTreeSet<Split> {
    cut_edges(g).into_iter().map(|c| split_of_edge(g, c.edge)).collect()
}

pub fn nontrivial_splits(g: &Multigraph) -> BTreeSet<Split> {
    splits(g).into_iter().filter(|s| !s.is_trivial()).collect()
}
