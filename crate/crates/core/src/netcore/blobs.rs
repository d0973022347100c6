//! Biconnected structure: blobs, cut-edges, level and the phylogenetic test.

use std::collections::BTreeSet;

use super::graph::{Multigraph, NetError, PseudoNetwork};

/// Edge-biconnected decomposition of a multigraph.
#[derive(Debug, Clone, Default)]
pub struct BlockDecomposition {
    /// Biconnected components with at least two edges (blobs), as edge ids.
    pub blobs: Vec<Vec<usize>>,
    /// Single-edge components that are not loops.
    pub bridges: Vec<usize>,
    /// Loop edges; each is a degenerate component of its own.
    pub loops: Vec<usize>,
}

impl BlockDecomposition {
    pub fn of(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let adj = g.adjacency();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut time = 0;
        let mut estack: Vec<usize> = Vec::new();
        let mut out = BlockDecomposition::default();
        let mut comps: Vec<Vec<usize>> = Vec::new();

        // iterative DFS: (vertex, parent edge, next adjacency index)
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (u, pe, ref mut i)) = stack.last_mut() {
                if *i < adj[u].len() {
                    let (w, e) = adj[u][*i];
                    *i += 1;
                    if e == pe || w == u {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        estack.push(e);
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[u] {
                        estack.push(e);
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            let mut comp = Vec::new();
                            while let Some(e) = estack.pop() {
                                comp.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            comps.push(comp);
                        }
                    }
                }
            }
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if u == v {
                out.loops.push(e);
            }
        }
        for mut c in comps {
            c.sort_unstable();
            if c.len() == 1 {
                out.bridges.push(c[0]);
            } else {
                out.blobs.push(c);
            }
        }
        out.bridges.sort_unstable();
        out.blobs.sort();
        out
    }
}

/// Vertex set of a set of edges.
pub fn vertices_of(g: &Multigraph, edges: &[usize]) -> BTreeSet<usize> {
    edges.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect()
}

/// Blobs as vertex sets.
pub fn blobs(net: &Multigraph) -> Vec<BTreeSet<usize>> {
    BlockDecomposition::of(net).blobs.iter().map(|b| vertices_of(net, b)).collect()
}

/// A cut-edge is trivial when one of its endpoints is a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutEdge {
    pub edge: usize,
    pub trivial: bool,
}

pub fn cut_edges(net: &Multigraph) -> Vec<CutEdge> {
    let deg = net.degrees();
    BlockDecomposition::of(net)
        .bridges
        .into_iter()
        .map(|e| {
            let (u, v) = net.edge(e);
            let leaf = |x: usize| net.label(x).is_some() && deg[x] <= 1;
            CutEdge { edge: e, trivial: leaf(u) || leaf(v) }
        })
        .collect()
}

pub fn is_decomposable(net: &Multigraph) -> bool {
    cut_edges(net).iter().any(|c| !c.trivial)
}

/// One blob with every leaf hanging directly off it, so that every
/// cut-edge is trivial.
pub fn is_simple(net: &Multigraph) -> bool {
    BlockDecomposition::of(net).blobs.len() == 1 && !is_decomposable(net)
}

/// Largest reticulation number of a biconnected component; a loop counts 1.
pub fn level(net: &Multigraph) -> usize {
    let d = BlockDecomposition::of(net);
    let mut best = if d.loops.is_empty() { 0 } else { 1 };
    for b in &d.blobs {
        let vs = vertices_of(net, b);
        best = best.max(b.len() + 1 - vs.len());
    }
    best
}

/// Checks that `net` is phylogenetic: no loops, no parallel edges, and
/// contracting every blob yields a phylogenetic tree (every blob meets at
/// least three cut-edges).
pub fn check_phylogenetic(net: &Multigraph) -> Result<(), NetError> {
    if !net.is_connected() {
        return Err(NetError::Disconnected);
    }
    if net.leaf_count() < 2 {
        return Err(NetError::NotPhylogenetic("fewer than two leaves".into()));
    }
    if net.loop_count() > 0 {
        return Err(NetError::NotPhylogenetic("loop".into()));
    }
    if net.has_multi_edges() {
        return Err(NetError::NotPhylogenetic("parallel edges".into()));
    }
    let deg = net.degrees();
    for v in 0..net.vertex_count() {
        if net.label(v).is_none() && deg[v] == 2 {
            return Err(NetError::Degree2Vertex(net.vertex_name(v)));
        }
    }
    let d = BlockDecomposition::of(net);
    let bridges: BTreeSet<usize> = d.bridges.iter().copied().collect();
    for b in &d.blobs {
        let vs = vertices_of(net, b);
        let mut ports = 0;
        for (e, &(u, v)) in net.edges().iter().enumerate() {
            if bridges.contains(&e) {
                ports += vs.contains(&u) as usize + vs.contains(&v) as usize;
            }
        }
        if ports < 3 {
            return Err(NetError::NotPhylogenetic(format!("blob meeting {ports} cut-edges")));
        }
    }
    Ok(())
}

pub fn is_phylogenetic(net: &Multigraph) -> bool {
    check_phylogenetic(net).is_ok() && super::graph::validate(net.clone()).is_ok()
}

/// Contracts every blob to a single vertex and drops loops; the result is
/// the tree of cut-edges. Not suppressed.
pub fn contract_blobs(net: &Multigraph) -> Multigraph {
    let d = BlockDecomposition::of(net);
    let n = net.vertex_count();
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while rep[r] != r {
            r = rep[r];
        }
        let mut y = x;
        while rep[y] != r {
            let nx = rep[y];
            rep[y] = r;
            y = nx;
        }
        r
    }
    for b in &d.blobs {
        for &e in b {
            let (u, v) = net.edge(e);
            let (a, c) = (find(&mut rep, u), find(&mut rep, v));
            rep[a] = c;
        }
    }
    let mut idx = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for v in 0..n {
        let r = find(&mut rep, v);
        if idx[r] == usize::MAX {
            idx[r] = labels.len();
            labels.push(None);
        }
        if let Some(l) = net.label(v) {
            labels[idx[r]] = Some(l.to_string());
        }
    }
    let mut edges = Vec::new();
    for &e in &d.bridges {
        let (u, v) = net.edge(e);
        edges.push((idx[find(&mut rep, u)], idx[find(&mut rep, v)]));
    }
    Multigraph::from_parts(labels, edges)
}

/// The tree `T(N)` obtained by contracting blobs; fails when the result is
/// not a phylogenetic tree.
pub fn display_tree(net: &Multigraph) -> Result<PseudoNetwork, NetError> {
    let t = contract_blobs(net);
    if t.vertex_count() == 1 {
        return Err(NetError::NotPhylogenetic("single blob contracts to a point".into()));
    }
    let deg = t.degrees();
    for v in 0..t.vertex_count() {
        if t.label(v).is_none() && deg[v] < 3 {
            return Err(NetError::NotPhylogenetic(format!(
                "blob contracts to a degree-{} vertex",
                deg[v]
            )));
        }
    }
    PseudoNetwork::new(t).map_err(|e| NetError::NotPhylogenetic(e.to_string()))
}

/// Like [`display_tree`] but suppresses degree-2 vertices left by blobs with
/// two cut-edges, so it is defined on every card.
pub fn display_tree_suppressed(net: &Multigraph) -> Result<PseudoNetwork, NetError> {
    let mut t = contract_blobs(net);
    // a pendant contracted blob (one cut-edge, no label) is pruned
    loop {
        let deg = t.degrees();
        let dead: Vec<bool> = (0..t.vertex_count())
            .map(|v| t.label(v).is_none() && deg[v] <= 1)
            .collect();
        if !dead.iter().any(|&d| d) {
            break;
        }
        let keep: Vec<bool> = dead.iter().map(|d| !d).collect();
        t = t.retain_vertices(&keep).0;
    }
    let t = t.suppress_all_degree2()?;
    PseudoNetwork::new(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_net() -> Multigraph {
        // two vertices joined by three paths, leaves a, b, c on the paths
        let mut g = Multigraph::new();
        let u = g.add_internal();
        let v = g.add_internal();
        for l in ["a", "b", "c"] {
            let s = g.add_internal();
            let x = g.add_leaf(l);
            g.add_edge(u, s);
            g.add_edge(s, v);
            g.add_edge(s, x);
        }
        g
    }

    #[test]
    fn theta_network_is_simple_level_two() {
        let g = theta_net();
        assert!(is_simple(&g));
        assert_eq!(level(&g), 2);
        assert!(!is_decomposable(&g));
        assert_eq!(cut_edges(&g).len(), 3);
        assert!(check_phylogenetic(&g).is_ok());
        let t = display_tree(&g).unwrap();
        assert_eq!(t.vertex_count(), 4);
    }

    #[test]
    fn one_blob_with_a_cherry_is_not_simple() {
        let g = theta_net();
        let a = g.vertex_of("a").unwrap();
        let e = g.incidence()[a][0];
        let g = crate::netcore::attach_leaf(&g, "d", e).unwrap();
        assert_eq!(blobs(&g).len(), 1);
        assert!(is_decomposable(&g));
        assert!(!is_simple(&g));
    }

    #[test]
    fn double_edge_is_a_blob() {
        let mut g = Multigraph::new();
        let a = g.add_leaf("a");
        let b = g.add_leaf("b");
        let u = g.add_internal();
        let v = g.add_internal();
        g.add_edge(a, u);
        g.add_edge(u, v);
        g.add_edge(u, v);
        g.add_edge(v, b);
        let d = BlockDecomposition::of(&g);
        assert_eq!(d.blobs.len(), 1);
        assert_eq!(d.bridges.len(), 2);
        assert_eq!(level(&g), 1);
        assert!(check_phylogenetic(&g).is_err());
        let t = display_tree_suppressed(&g).unwrap();
        assert_eq!(t.vertex_count(), 2);
    }

    #[test]
    fn loops_count_toward_level() {
        let mut g = Multigraph::new();
        let a = g.add_leaf("a");
        let u = g.add_internal();
        g.add_edge(a, u);
        g.add_edge(u, u);
        assert_eq!(level(&g), 1);
        assert!(BlockDecomposition::of(&g).blobs.is_empty());
    }
}
