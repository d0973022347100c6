//! Simple binary networks: cycles for level 1, leaf placements on
//! generators otherwise.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::generators::enumerate_generators;
use super::trees::default_labels;
use super::EnumError;
use crate::equiv::{canonical_code, CanonicalCode};
use crate::netcore::{attach_leaf, is_phylogenetic, Multigraph, PseudoNetwork};

pub fn enumerate_simple(k: usize, n: usize) -> Result<Vec<PseudoNetwork>, EnumError> {
    enumerate_simple_on(k, &default_labels(n))
}

/// All simple binary level-`k` phylogenetic networks on `labels`, ordered by
/// code. Fewer than three leaves cannot form a blob with three cut-edges,
/// so the result is empty there.
pub fn enumerate_simple_on(k: usize, labels: &[String]) -> Result<Vec<PseudoNetwork>, EnumError> {
    if k == 0 || labels.is_empty() {
        return Err(EnumError::Infeasible(format!("level {k} with {} leaves", labels.len())));
    }
    if labels.len() < 3 {
        return Ok(Vec::new());
    }
    let mut out: BTreeMap<CanonicalCode, PseudoNetwork> = BTreeMap::new();
    if k == 1 {
        for rest in labels[1..].iter().permutations(labels.len() - 1) {
            let order: Vec<&String> = std::iter::once(&labels[0]).chain(rest).collect();
            let n = cycle(&order);
            out.entry(canonical_code(&n)).or_insert(n);
        }
        return Ok(out.into_values().collect());
    }
    for gen in enumerate_generators(k) {
        let mut states: BTreeMap<CanonicalCode, Multigraph> = BTreeMap::new();
        states.insert(canonical_code(gen.graph()), gen.graph().clone());
        for l in labels {
            let mut next = BTreeMap::new();
            for s in states.values() {
                // only blob edges, i.e. both ends internal
                for e in (0..s.edge_count()).filter(|&e| {
                    let (u, v) = s.edge(e);
                    s.label(u).is_none() && s.label(v).is_none()
                }) {
                    let g = attach_leaf(s, l, e).expect("fresh label").into_graph();
                    next.entry(canonical_code(&g)).or_insert(g);
                }
            }
            states = next;
        }
        for (c, g) in states {
            if is_phylogenetic(&g) {
                out.entry(c).or_insert_with(|| PseudoNetwork::new(g).expect("phylogenetic"));
            }
        }
    }
    Ok(out.into_values().collect())
}

fn cycle(order: &[&String]) -> PseudoNetwork {
    let mut g = Multigraph::new();
    let m = order.len();
    let us: Vec<usize> = (0..m).map(|_| g.add_internal()).collect();
    for (i, l) in order.iter().enumerate() {
        let x = g.add_leaf((*l).clone());
        g.add_edge(us[i], x);
        g.add_edge(us[i], us[(i + 1) % m]);
    }
    PseudoNetwork::new(g).expect("cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{is_simple, level};

    #[test]
    fn level_one_counts() {
        assert_eq!(enumerate_simple(1, 3).unwrap().len(), 1);
        assert_eq!(enumerate_simple(1, 4).unwrap().len(), 3);
        assert_eq!(enumerate_simple(1, 5).unwrap().len(), 12);
    }

    #[test]
    fn too_few_leaves() {
        assert!(enumerate_simple(2, 0).is_err());
        assert!(enumerate_simple(2, 1).unwrap().is_empty());
        assert!(enumerate_simple(2, 2).unwrap().is_empty());
    }

    #[test]
    fn outputs_are_simple_with_expected_size() {
        for k in 1..=3 {
            for n in 3..=4 {
                for net in enumerate_simple(k, n).unwrap() {
                    assert!(is_simple(&net));
                    assert_eq!(level(&net), k);
                    assert_eq!(net.vertex_count(), 2 * k - 2 + 2 * n);
                }
            }
        }
    }
}
