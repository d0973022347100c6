//! Level-k generators and the placement of leaves on their edges.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::blobs::{is_simple, level, BlockDecomposition};
use super::graph::{Multigraph, NetError, PseudoNetwork};
use super::ops::pendant_leaves;
use crate::equiv::{all_canonical_orders, unlabeled_code, CanonicalCode};

/// A 2-connected 3-regular loopless multigraph. Vertices are kept in
/// canonical order and edges sorted, so equal generators compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    graph: Multigraph,
    level: usize,
}

impl Generator {
    pub fn new(g: Multigraph) -> Result<Self, NetError> {
        if g.labels().iter().any(Option::is_some) {
            return Err(NetError::NotGenerator("labelled vertex".into()));
        }
        if g.vertex_count() < 2 {
            return Err(NetError::NotGenerator("fewer than two vertices".into()));
        }
        if g.loop_count() > 0 {
            return Err(NetError::NotGenerator("loop".into()));
        }
        if g.degrees().iter().any(|&d| d != 3) {
            return Err(NetError::NotGenerator("not 3-regular".into()));
        }
        if !g.is_connected() {
            return Err(NetError::Disconnected);
        }
        let d = BlockDecomposition::of(&g);
        if d.blobs.len() != 1 || !d.bridges.is_empty() {
            return Err(NetError::NotGenerator("not 2-connected".into()));
        }
        let level = g.edge_count() + 1 - g.vertex_count();
        Ok(Generator { graph: canonical_relabel(&g), level })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn code(&self) -> CanonicalCode {
        unlabeled_code(&self.graph)
    }

    /// Subdivides generator edges and hangs the placed leaves, in order of
    /// position from the lower endpoint.
    pub fn with_placement(&self, placement: &Placement) -> Result<PseudoNetwork, NetError> {
        let m = self.graph.edge_count();
        let mut per_edge: Vec<Vec<(usize, &str)>> = vec![Vec::new(); m];
        for (l, p) in placement {
            if p.edge >= m {
                return Err(NetError::NoSuchEdge(p.edge));
            }
            per_edge[p.edge].push((p.position, l));
        }
        let mut g = Multigraph::new();
        for _ in 0..self.graph.vertex_count() {
            g.add_internal();
        }
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            let list = &mut per_edge[e];
            list.sort_unstable();
            let mut prev = u;
            for &(_, l) in list.iter() {
                let s = g.add_internal();
                let x = g.add_leaf(l);
                g.add_edge(prev, s);
                g.add_edge(s, x);
                prev = s;
            }
            g.add_edge(prev, v);
        }
        PseudoNetwork::new(g)
    }
}

/// Where a leaf sits: generator edge index and 1-based position counted
/// from the lower-numbered endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeafPlacement {
    pub edge: usize,
    pub position: usize,
}

pub type Placement = BTreeMap<String, LeafPlacement>;

fn canonical_relabel(g: &Multigraph) -> Multigraph {
    let (_, orders) = all_canonical_orders(g, false);
    let order = &orders[0];
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edges: Vec<(usize, usize)> =
        g.edges().iter().map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v]))).collect();
    edges.sort_unstable();
    Multigraph::from_parts(vec![None; g.vertex_count()], edges)
}

/// Deletes all leaves and suppresses the resulting degree-2 vertices,
/// recording where each leaf sat. Among the orientations allowed by
/// generator automorphisms the least placement description is chosen.
pub fn underlying_generator(net: &PseudoNetwork) -> Result<(Generator, Placement), NetError> {
    if !is_simple(net) {
        return Err(NetError::NotSimple);
    }
    if !net.is_binary() {
        return Err(NetError::NotBinary);
    }
    let k = level(net);
    if k < 2 {
        return Err(NetError::LevelTooLow(k));
    }
    let n = net.vertex_count();
    let pend = pendant_leaves(net);
    let is_gen: Vec<bool> = (0..n).map(|v| net.label(v).is_none() && pend[v].is_empty()).collect();
    let gidx: Vec<usize> = {
        let mut c = 0;
        (0..n)
            .map(|v| {
                if is_gen[v] {
                    c += 1;
                    c - 1
                } else {
                    usize::MAX
                }
            })
            .collect()
    };
    let ng = is_gen.iter().filter(|&&b| b).count();
    let adj = net.adjacency();
    let mut used = vec![false; net.edge_count()];
    // raw generator edges with the leaf sequence from the first endpoint
    let mut raw: Vec<(usize, usize, Vec<String>)> = Vec::new();
    for s in 0..n {
        if !is_gen[s] {
            continue;
        }
        for &(first, e0) in &adj[s] {
            if used[e0] {
                continue;
            }
            used[e0] = true;
            let (mut prev_e, mut cur) = (e0, first);
            let mut seq = Vec::new();
            while !is_gen[cur] {
                if pend[cur].len() != 1 {
                    return Err(NetError::NotSimple);
                }
                seq.push(pend[cur][0].clone());
                let next = adj[cur]
                    .iter()
                    .find(|&&(w, f)| f != prev_e && net.label(w).is_none())
                    .copied()
                    .ok_or(NetError::NotSimple)?;
                used[next.1] = true;
                prev_e = next.1;
                cur = next.0;
            }
            raw.push((gidx[s], gidx[cur], seq));
        }
    }
    let gg = Multigraph::from_parts(vec![None; ng], raw.iter().map(|(a, b, _)| (*a, *b)).collect());
    let gen = Generator::new(gg.clone())?;
    let (_, orders) = all_canonical_orders(&gg, false);
    let mut best: Option<Vec<(usize, usize, Vec<String>)>> = None;
    for order in &orders {
        let mut pos = vec![0; ng];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut desc: Vec<(usize, usize, Vec<String>)> = raw
            .iter()
            .map(|(a, b, seq)| {
                let (pa, pb) = (pos[*a], pos[*b]);
                if pa <= pb {
                    (pa, pb, seq.clone())
                } else {
                    (pb, pa, seq.iter().rev().cloned().collect())
                }
            })
            .collect();
        desc.sort();
        if best.as_ref().map_or(true, |b| desc < *b) {
            best = Some(desc);
        }
    }
    let desc = best.expect("at least one canonical order");
    debug_assert_eq!(
        desc.iter().map(|(a, b, _)| (*a, *b)).collect::<Vec<_>>(),
        gen.graph().edges().to_vec()
    );
    let mut placement = Placement::new();
    for (e, (_, _, seq)) in desc.iter().enumerate() {
        for (i, l) in seq.iter().enumerate() {
            placement.insert(l.clone(), LeafPlacement { edge: e, position: i + 1 });
        }
    }
    Ok((gen, placement))
}
