//! Chains, tree medians and leaf attachment.

use std::collections::{BTreeSet, VecDeque};

use super::graph::{Multigraph, NetError, PseudoNetwork};

/// Leaves hanging off each vertex.
pub fn pendant_leaves(g: &Multigraph) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new(); g.vertex_count()];
    let deg = g.degrees();
    for &(u, v) in g.edges() {
        for (a, b) in [(u, v), (v, u)] {
            if let Some(l) = g.label(a) {
                if deg[a] == 1 && g.label(b).is_none() {
                    out[b].push(l.to_string());
                }
            }
        }
    }
    for l in &mut out {
        l.sort();
    }
    out
}

fn simple_neighbours(g: &Multigraph) -> Vec<BTreeSet<usize>> {
    let mut nb = vec![BTreeSet::new(); g.vertex_count()];
    for &(u, v) in g.edges() {
        if u != v && g.label(u).is_none() && g.label(v).is_none() {
            nb[u].insert(v);
            nb[v].insert(u);
        }
    }
    nb
}

/// Triples `(x, y, z)` hanging off a path `(u, v, w)`; both orientations
/// are listed.
pub fn find_3_chains(g: &Multigraph) -> Vec<(String, String, String)> {
    let pend = pendant_leaves(g);
    let nb = simple_neighbours(g);
    let mut out = BTreeSet::new();
    for v in 0..g.vertex_count() {
        if pend[v].is_empty() {
            continue;
        }
        for &u in &nb[v] {
            for &w in &nb[v] {
                if u == w {
                    continue;
                }
                for x in &pend[u] {
                    for y in &pend[v] {
                        for z in &pend[w] {
                            out.insert((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn has_3_chain_on(g: &Multigraph, x: &str, y: &str, z: &str) -> bool {
    find_3_chains(g).iter().any(|(a, b, c)| a == x && b == y && c == z)
}

/// Unordered leaf pairs at distance exactly 3, as `(min, max)`.
pub fn find_2_chains(g: &Multigraph) -> Vec<(String, String)> {
    let pend = pendant_leaves(g);
    let nb = simple_neighbours(g);
    let mut out = BTreeSet::new();
    for u in 0..g.vertex_count() {
        for &v in &nb[u] {
            for x in &pend[u] {
                for y in &pend[v] {
                    let p = if x < y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
                    out.insert(p);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn bfs(g: &Multigraph, s: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let mut d = vec![usize::MAX; g.vertex_count()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &(w, _) in &adj[u] {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// The vertex on all three pairwise paths between leaves `x, y, z`.
pub fn tree_median(t: &Multigraph, x: &str, y: &str, z: &str) -> Result<usize, NetError> {
    if !(t.is_connected() && t.edge_count() + 1 == t.vertex_count()) {
        return Err(NetError::NotATree);
    }
    let find = |l: &str| t.vertex_of(l).ok_or_else(|| NetError::NoSuchLeaf(l.to_string()));
    let (a, b, c) = (find(x)?, find(y)?, find(z)?);
    let (da, db, dc) = (bfs(t, a), bfs(t, b), bfs(t, c));
    let m = (0..t.vertex_count())
        .min_by_key(|&v| da[v] + db[v] + dc[v])
        .ok_or(NetError::NotATree)?;
    Ok(m)
}

/// Subdivides `edge` with a new vertex and hangs leaf `x` from it.
pub fn attach_leaf(net: &Multigraph, x: &str, edge: usize) -> Result<PseudoNetwork, NetError> {
    if net.vertex_of(x).is_some() {
        return Err(NetError::DuplicateLabel(x.to_string()));
    }
    if edge >= net.edge_count() {
        return Err(NetError::NoSuchEdge(edge));
    }
    let mut g = net.clone();
    let (u, v) = g.edge(edge);
    let s = g.add_internal();
    let l = g.add_leaf(x);
    g.edges_mut()[edge] = (u.min(s), u.max(s));
    g.add_edge(s, v);
    g.add_edge(s, l);
    PseudoNetwork::new_union(g)
}

/// Hangs leaf `x` from the existing internal vertex `v`.
pub fn attach_leaf_to_vertex(net: &Multigraph, x: &str, v: usize) -> Result<PseudoNetwork, NetError> {
    if net.vertex_of(x).is_some() {
        return Err(NetError::DuplicateLabel(x.to_string()));
    }
    if v >= net.vertex_count() {
        return Err(NetError::NoSuchVertex(v));
    }
    if let Some(l) = net.label(v) {
        return Err(NetError::LabeledInternal(l.to_string()));
    }
    let mut g = net.clone();
    let l = g.add_leaf(x);
    g.add_edge(v, l);
    PseudoNetwork::new_union(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::pnet::parse_pnet;

    fn caterpillar() -> PseudoNetwork {
        parse_pnet(
            "leaves: a b c d e\nedge a p\nedge b p\nedge p q\nedge c q\nedge q r\nedge d r\nedge e r\n",
        )
        .unwrap()
    }

    #[test]
    fn caterpillar_chains() {
        let t = caterpillar();
        let c3 = find_3_chains(&t);
        assert!(c3.contains(&("a".into(), "c".into(), "d".into())));
        assert!(c3.contains(&("e".into(), "c".into(), "b".into())));
        assert!(!c3.iter().any(|(x, _, z)| (x == "a" && z == "b") || (x == "d" && z == "e")));
        let c2 = find_2_chains(&t);
        assert!(c2.contains(&("a".into(), "c".into())));
        assert!(!c2.contains(&("a".into(), "d".into())));
    }

    #[test]
    fn star_has_no_chains() {
        let s = parse_pnet("leaves: a b c d\nedge a u\nedge b u\nedge c u\nedge d u\n").unwrap();
        assert!(find_2_chains(&s).is_empty());
        assert!(find_3_chains(&s).is_empty());
        let m = tree_median(&s, "a", "b", "d").unwrap();
        assert_eq!(s.degree(m), 4);
    }

    #[test]
    fn caterpillar_median() {
        let t = caterpillar();
        let m = tree_median(&t, "a", "b", "e").unwrap();
        assert_eq!(m, t.vertex_of("b").map(|b| t.other_end(t.incidence()[b][0], b)).unwrap());
        let m = tree_median(&t, "a", "c", "e").unwrap();
        let c = t.vertex_of("c").unwrap();
        assert_eq!(m, t.other_end(t.incidence()[c][0], c));
    }

    #[test]
    fn median_needs_a_tree() {
        let n = parse_pnet("leaves: a b c\nedge a u\nedge u v\nedge u v\nedge v w\nedge w b\nedge w c\n").unwrap();
        assert_eq!(tree_median(&n, "a", "b", "c"), Err(NetError::NotATree));
    }

    #[test]
    fn attach_errors() {
        let t = caterpillar();
        assert_eq!(attach_leaf(&t, "a", 0).unwrap_err(), NetError::DuplicateLabel("a".into()));
        assert_eq!(attach_leaf(&t, "z", 99).unwrap_err(), NetError::NoSuchEdge(99));
        let n = attach_leaf(&t, "z", 2).unwrap();
        assert_eq!(n.leaf_count(), 6);
        assert!(n.is_binary() || !t.is_binary());
    }
}
