//! Multigraph carrier and the validated pseudo-network wrapper.
//!
//! Vertices are dense indices `0..n`; they carry no identity beyond the
//! optional leaf label. Edges are unordered pairs stored as `(min, max)`,
//! parallel edges are repeated entries and a loop is `(v, v)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

/// Violations of the pseudo-network / phylogenetic network invariants and
/// failures of the structural operations in [`crate::netcore`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {0} has degree 2")]
    Degree2Vertex(String),
    #[error("degree-{degree} vertex {vertex} carries no label")]
    UnlabeledLeaf { vertex: String, degree: usize },
    #[error("label {0} used more than once")]
    DuplicateLabel(String),
    #[error("internal vertex labelled {0}")]
    LabeledInternal(String),
    #[error("graph collapses to nothing")]
    CollapsedToNothing,
    #[error("no leaf labelled {0}")]
    NoSuchLeaf(String),
    #[error("no edge with index {0}")]
    NoSuchEdge(usize),
    #[error("no vertex with index {0}")]
    NoSuchVertex(usize),
    #[error("not a phylogenetic network: {0}")]
    NotPhylogenetic(String),
    #[error("not a tree")]
    NotATree,
    #[error("network is not simple")]
    NotSimple,
    #[error("network is not binary")]
    NotBinary,
    #[error("level {0} is below 2")]
    LevelTooLow(usize),
    #[error("not a generator: {0}")]
    NotGenerator(String),
}

/// An unchecked finite multigraph with optional vertex labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    labels: Vec<Option<String>>,
    edges: Vec<(usize, usize)>,
}

#[inline]
fn norm(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(labels: Vec<Option<String>>, edges: Vec<(usize, usize)>) -> Self {
        let n = labels.len();
        debug_assert!(edges.iter().all(|&(u, v)| u < n && v < n));
        let edges = edges.into_iter().map(|(u, v)| norm(u, v)).collect();
        Multigraph { labels, edges }
    }

    pub fn add_vertex(&mut self, label: Option<String>) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    pub fn add_leaf(&mut self, label: impl Into<String>) -> usize {
        self.add_vertex(Some(label.into()))
    }

    pub fn add_internal(&mut self) -> usize {
        self.add_vertex(None)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u < self.labels.len() && v < self.labels.len(), "edge endpoint out of range");
        self.edges.push(norm(u, v));
        self.edges.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Labels in ascending order.
    pub fn label_set(&self) -> BTreeSet<String> {
        self.labels.iter().flatten().cloned().collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    pub fn vertex_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Degree with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.labels.len()];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Incident edge ids per vertex; a loop is listed twice.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.labels.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
        }
        inc
    }

    /// `(neighbour, edge id)` pairs per vertex; a loop appears twice.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().filter(|(u, v)| u != v).any(|e| !seen.insert(*e))
    }

    /// Component index per vertex and the number of components.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.labels.len();
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(w, _) in &adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_ids().1 <= 1
    }

    /// Keeps the vertices with `keep[v]` and the edges between them.
    /// Returns the new graph and the old-to-new index map.
    pub fn retain_vertices(&self, keep: &[bool]) -> (Multigraph, Vec<Option<usize>>) {
        let mut map = vec![None; self.labels.len()];
        let mut labels = Vec::new();
        for (v, l) in self.labels.iter().enumerate() {
            if keep[v] {
                map[v] = Some(labels.len());
                labels.push(l.clone());
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some(norm(map[u]?, map[v]?)))
            .collect();
        (Multigraph { labels, edges }, map)
    }

    /// Removes the listed edges (by id), keeping all vertices.
    pub fn without_edges(&self, drop: &[usize]) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(e, _)| !drop.contains(e))
            .map(|(_, &e)| e)
            .collect();
        Multigraph { labels: self.labels.clone(), edges }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let off = self.labels.len();
        let mut g = self.clone();
        g.labels.extend(other.labels.iter().cloned());
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        g
    }

    /// Same graph with every label removed.
    pub fn erase_labels(&self) -> Multigraph {
        Multigraph { labels: vec![None; self.labels.len()], edges: self.edges.clone() }
    }

    /// Renames leaf labels through `f`; unlabeled vertices are untouched.
    pub fn relabel(&self, mut f: impl FnMut(&str) -> String) -> Multigraph {
        Multigraph {
            labels: self.labels.iter().map(|l| l.as_deref().map(&mut f)).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Repeatedly replaces an unlabeled degree-2 vertex `v` with neighbours
    /// `p, q` by the edge `{p, q}`. A path closing on itself yields a loop.
    /// The result does not depend on the order of suppression.
    pub fn suppress_all_degree2(&self) -> Result<Multigraph, NetError> {
        let n = self.labels.len();
        let mut edges: Vec<Option<(usize, usize)>> = self.edges.iter().copied().map(Some).collect();
        let mut inc = self.incidence();
        let mut removed = vec![false; n];
        for v in 0..n {
            if self.labels[v].is_some() {
                continue;
            }
            let live: Vec<usize> = inc[v].iter().copied().filter(|&e| edges[e].is_some()).collect();
            if live.len() != 2 {
                continue;
            }
            let (e1, e2) = (live[0], live[1]);
            if e1 == e2 {
                // vertex carrying only a loop: nothing survives of this component
                return Err(NetError::CollapsedToNothing);
            }
            let p = other(edges[e1].unwrap(), v);
            let q = other(edges[e2].unwrap(), v);
            edges[e1] = None;
            edges[e2] = None;
            removed[v] = true;
            let id = edges.len();
            edges.push(Some(norm(p, q)));
            inc[p].push(id);
            inc[q].push(id);
        }
        let keep: Vec<bool> = removed.iter().map(|r| !r).collect();
        let mut map = vec![None; n];
        let mut labels = Vec::new();
        for v in 0..n {
            if keep[v] {
                map[v] = Some(labels.len());
                labels.push(self.labels[v].clone());
            }
        }
        let out: Vec<(usize, usize)> = edges
            .into_iter()
            .flatten()
            .map(|(u, v)| norm(map[u].unwrap(), map[v].unwrap()))
            .collect();
        if labels.is_empty() {
            return Err(NetError::CollapsedToNothing);
        }
        Ok(Multigraph { labels, edges: out })
    }

    pub(crate) fn vertex_name(&self, v: usize) -> String {
        match &self.labels[v] {
            Some(l) => l.clone(),
            None => format!("#{v}"),
        }
    }

    pub(crate) fn edges_mut(&mut self) -> &mut Vec<(usize, usize)> {
        &mut self.edges
    }
}

#[inline]
fn other(e: (usize, usize), v: usize) -> usize {
    if e.0 == v {
        e.1
    } else {
        e.0
    }
}

/// Checks the pseudo-network invariants on each component. Isolated
/// labelled vertices are accepted as components of their own.
fn check_local(g: &Multigraph) -> Result<(), NetError> {
    if g.vertex_count() == 0 {
        return Err(NetError::CollapsedToNothing);
    }
    let deg = g.degrees();
    let mut seen = BTreeSet::new();
    for v in 0..g.vertex_count() {
        match g.label(v) {
            Some(l) => {
                if !seen.insert(l.to_string()) {
                    return Err(NetError::DuplicateLabel(l.to_string()));
                }
                if deg[v] > 1 {
                    return Err(NetError::LabeledInternal(l.to_string()));
                }
            }
            None => match deg[v] {
                0 | 1 => {
                    return Err(NetError::UnlabeledLeaf { vertex: g.vertex_name(v), degree: deg[v] })
                }
                2 => return Err(NetError::Degree2Vertex(g.vertex_name(v))),
                _ => {}
            },
        }
    }
    Ok(())
}

/// Validates a raw multigraph as a pseudo-network: connected, no degree-2
/// vertex, degree-1 vertices bijectively labelled.
pub fn validate(g: Multigraph) -> Result<PseudoNetwork, NetError> {
    check_local(&g)?;
    if !g.is_connected() {
        return Err(NetError::Disconnected);
    }
    if g.vertex_count() == 1 && g.label(0).is_none() {
        return Err(NetError::CollapsedToNothing);
    }
    Ok(PseudoNetwork(g))
}

/// A connected multigraph without degree-2 vertices whose degree-1 vertices
/// are bijectively labelled. Cards of an edge-deck are the one exception to
/// connectivity: they store the disjoint union of the pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoNetwork(Multigraph);

impl PseudoNetwork {
    pub fn new(g: Multigraph) -> Result<Self, NetError> {
        validate(g)
    }

    /// Accepts a possibly disconnected graph whose components are each valid.
    pub fn new_union(g: Multigraph) -> Result<Self, NetError> {
        check_local(&g)?;
        Ok(PseudoNetwork(g))
    }

    pub fn graph(&self) -> &Multigraph {
        &self.0
    }

    pub fn into_graph(self) -> Multigraph {
        self.0
    }

    /// Reticulation number `|E| - |V| + c` (with `c` components).
    pub fn reticulation_number(&self) -> usize {
        let (_, c) = self.component_ids();
        self.edge_count() + c - self.vertex_count()
    }

    /// Every non-leaf vertex has degree 3.
    pub fn is_binary(&self) -> bool {
        let deg = self.degrees();
        (0..self.vertex_count()).all(|v| self.label(v).is_some() || deg[v] == 3)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }
}

impl Deref for PseudoNetwork {
    type Target = Multigraph;
    fn deref(&self) -> &Multigraph {
        &self.0
    }
}

impl fmt::Display for PseudoNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::netcore::pnet::to_pnet(self))
    }
}
