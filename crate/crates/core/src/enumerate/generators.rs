//! Level-k generators by exhaustive search over multiplicity matrices.

use std::collections::BTreeMap;

use crate::equiv::unlabeled_code;
use crate::netcore::{Generator, Multigraph};

/// All level-`k` generators up to isomorphism, ordered by code.
pub fn enumerate_generators(k: usize) -> Vec<Generator> {
    if k < 2 {
        return Vec::new();
    }
    let n = 2 * k - 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut deg = vec![0usize; n];
    let mut mult = vec![0usize; pairs.len()];
    let mut out = BTreeMap::new();
    search(0, &pairs, &mut deg, &mut mult, &mut out);
    out.into_values().collect()
}

fn search(
    p: usize,
    pairs: &[(usize, usize)],
    deg: &mut [usize],
    mult: &mut [usize],
    out: &mut BTreeMap<crate::equiv::CanonicalCode, Generator>,
) {
    if p == pairs.len() {
        if deg.iter().all(|&d| d == 3) {
            let n = deg.len();
            let mut edges = Vec::new();
            for (q, &(i, j)) in pairs.iter().enumerate() {
                for _ in 0..mult[q] {
                    edges.push((i, j));
                }
            }
            let g = Multigraph::from_parts(vec![None; n], edges);
            if let Ok(gen) = Generator::new(g) {
                out.entry(unlabeled_code(gen.graph())).or_insert(gen);
            }
        }
        return;
    }
    let (i, j) = pairs[p];
    let room = (3 - deg[i]).min(3 - deg[j]);
    // the last pair of row i decides whether row i can still be completed
    let last_of_row = p + 1 == pairs.len() || pairs[p + 1].0 != i;
    for m in 0..=room {
        if last_of_row && deg[i] + m != 3 {
            continue;
        }
        deg[i] += m;
        deg[j] += m;
        mult[p] = m;
        search(p + 1, pairs, deg, mult, out);
        deg[i] -= m;
        deg[j] -= m;
    }
    mult[p] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        assert_eq!(enumerate_generators(2).len(), 1);
        assert_eq!(enumerate_generators(3).len(), 2);
        assert_eq!(enumerate_generators(4).len(), 5);
        assert!(enumerate_generators(1).is_empty());
    }

    #[test]
    fn generator_edge_counts() {
        for k in 2..=5 {
            for g in enumerate_generators(k) {
                assert_eq!(g.graph().edge_count(), 3 * k - 3);
                assert_eq!(3 * g.graph().vertex_count(), 2 * g.graph().edge_count());
                assert_eq!(g.level(), k);
            }
        }
    }
}
