//! Trees from their decks: the split argument and the two-card method.

use std::collections::{BTreeMap, BTreeSet};

use super::ReconError;
use crate::decks::{delete_leaf, x_deck, Deck, DeckKind};
use crate::equiv::{canonical_code, deck_equivalent, DeckMode};
use crate::netcore::{
    attach_leaf, attach_leaf_to_vertex, nontrivial_splits, tree_median, Multigraph, PseudoNetwork, Split,
};

/// Builds the tree with exactly the given (pairwise compatible, nontrivial)
/// splits on `labels`.
pub fn tree_from_splits(labels: &BTreeSet<String>, splits: &BTreeSet<Split>) -> Result<PseudoNetwork, ReconError> {
    let root_label = labels.iter().next().ok_or(ReconError::NotTreeDeck)?.clone();
    // clusters: the side of each split away from the root label
    let mut clusters: Vec<BTreeSet<String>> =
        splits.iter().map(|s| if s.a.contains(&root_label) { s.b.clone() } else { s.a.clone() }).collect();
    clusters.sort_by_key(|c| c.len());
    let mut g = Multigraph::new();
    let root = g.add_internal();
    let cv: Vec<usize> = clusters.iter().map(|_| g.add_internal()).collect();
    let parent_of = |set: &BTreeSet<String>, skip: Option<usize>| -> usize {
        for (i, c) in clusters.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            if c.len() > set.len() && set.is_subset(c) {
                return cv[i];
            }
        }
        root
    };
    for (i, c) in clusters.iter().enumerate() {
        let p = parent_of(c, Some(i));
        g.add_edge(cv[i], p);
    }
    for l in labels {
        let v = g.add_leaf(l.clone());
        let single: BTreeSet<String> = [l.clone()].into();
        let p = if *l == root_label { root } else { parent_of(&single, None) };
        g.add_edge(v, p);
    }
    PseudoNetwork::new(g).map_err(|_| ReconError::NotTreeDeck)
}

/// Recovers a tree on at least five leaves from its deck: exactly the
/// splits of the tree survive the restriction test below.
pub fn reconstruct_tree_from_deck(deck: &Deck) -> Result<PseudoNetwork, ReconError> {
    if deck.kind() != DeckKind::Leaf {
        return Err(ReconError::WrongDeckKind { expected: "leaf" });
    }
    let labels = deck.labels().clone();
    if deck.len() != labels.len() || deck.cards().values().any(|c| !c.is_tree()) {
        return Err(ReconError::NotTreeDeck);
    }
    if labels.len() < 5 {
        return Err(ReconError::AmbiguousDeck);
    }
    let card_splits: BTreeMap<String, BTreeSet<Split>> =
        labels.iter().map(|x| (x.clone(), nontrivial_splits(deck.leaf_card(x).unwrap()))).collect();
    let mut candidates = BTreeSet::new();
    for (x, ss) in &card_splits {
        for s in ss {
            let mut a = s.a.clone();
            a.insert(x.clone());
            candidates.insert(Split::new(a, s.b.clone()));
            let mut b = s.b.clone();
            b.insert(x.clone());
            candidates.insert(Split::new(s.a.clone(), b));
        }
    }
    let kept: BTreeSet<Split> = candidates
        .into_iter()
        .filter(|s| {
            labels.iter().all(|y| {
                let r = s.without(y);
                r.is_trivial() || card_splits[y].contains(&r)
            })
        })
        .collect();
    let t = tree_from_splits(&labels, &kept)?;
    let check = x_deck(&t)?;
    if !deck_equivalent(&check, deck, DeckMode::Indexed).unwrap_or(false) {
        return Err(ReconError::NotTreeDeck);
    }
    Ok(t)
}

fn neighbours(g: &Multigraph, v: usize) -> Vec<usize> {
    let mut out: Vec<usize> = g.adjacency()[v].iter().map(|&(w, _)| w).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Leaves in each branch at `z`, skipping the labels in `avoid`.
fn witnesses(t: &Multigraph, z: usize, avoid: &[&str], skip_branch: Option<usize>) -> Option<Vec<String>> {
    let adj = t.adjacency();
    let mut picks = Vec::new();
    for &(w, _) in &adj[z] {
        if Some(w) == skip_branch {
            continue;
        }
        // walk the branch through w away from z
        let mut seen = vec![false; t.vertex_count()];
        seen[z] = true;
        seen[w] = true;
        let mut stack = vec![w];
        let mut best: Option<String> = None;
        while let Some(u) = stack.pop() {
            if let Some(l) = t.label(u) {
                if !avoid.contains(&l) && best.as_deref().map_or(true, |b| l < b) {
                    best = Some(l.to_string());
                }
            }
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if let Some(b) = best {
            picks.push(b);
        }
        if picks.len() == 3 {
            return Some(picks);
        }
    }
    None
}

/// Image in `tx` of a vertex `z` of `ty`: leaves by label, internal
/// vertices through a median of three witness leaves.
fn image(ty: &Multigraph, tx: &Multigraph, z: usize, x: &str, y: &str) -> Result<usize, ReconError> {
    if let Some(l) = ty.label(z) {
        return tx.vertex_of(l).ok_or(ReconError::TooClose);
    }
    let w = witnesses(ty, z, &[x, y], None).ok_or(ReconError::TooClose)?;
    Ok(tree_median(tx, &w[0], &w[1], &w[2])?)
}

fn distance(g: &Multigraph, a: usize, b: usize) -> usize {
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([a]);
    dist[a] = 0;
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist[b]
}

/// The two cards pin the tree down when the leaves are at least four
/// apart, or when they sit on opposite ends of the only nontrivial
/// cut-edge.
fn determined(t: &Multigraph, x: &str, y: &str) -> bool {
    if t.leaf_count() < 5 {
        return false;
    }
    let (xv, yv) = (t.vertex_of(x).unwrap(), t.vertex_of(y).unwrap());
    match distance(t, xv, yv) {
        d if d >= 4 => true,
        3 => nontrivial_splits(t).len() == 1,
        _ => false,
    }
}

/// Reinserts `x` into `tx` using the position of `x` seen in `ty`.
pub fn reconstruct_tree_two_cards(
    tx: &PseudoNetwork,
    ty: &PseudoNetwork,
    x: &str,
    y: &str,
) -> Result<PseudoNetwork, ReconError> {
    if !tx.is_tree() || !ty.is_tree() {
        return Err(ReconError::NotTreeDeck);
    }
    let xv = ty.vertex_of(x).ok_or(ReconError::TooClose)?;
    let w = ty.other_end(ty.incidence()[xv][0], xv);
    let nb: Vec<usize> = neighbours(ty, w).into_iter().filter(|&v| v != xv).collect();
    let out = if ty.degree(w) == 3 {
        let p = image(ty, tx, nb[0], x, y)?;
        let q = image(ty, tx, nb[1], x, y)?;
        let e = tx
            .edges()
            .iter()
            .position(|&(a, b)| (a, b) == (p.min(q), p.max(q)))
            .ok_or(ReconError::TooClose)?;
        attach_leaf(tx, x, e)?
    } else {
        let wit = witnesses(ty, w, &[x, y], Some(xv)).ok_or(ReconError::TooClose)?;
        let m = tree_median(tx, &wit[0], &wit[1], &wit[2])?;
        if tx.label(m).is_some() {
            return Err(ReconError::TooClose);
        }
        attach_leaf_to_vertex(tx, x, m)?
    };
    let ok_x = delete_leaf(&out, x).map(|c| canonical_code(&c) == canonical_code(tx)).unwrap_or(false);
    let ok_y = delete_leaf(&out, y).map(|c| canonical_code(&c) == canonical_code(ty)).unwrap_or(false);
    if ok_x && ok_y && determined(&out, x, y) {
        Ok(out)
    } else {
        Err(ReconError::TooClose)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::is_equivalent;
    use crate::netcore::parse_pnet;

    fn caterpillar6() -> PseudoNetwork {
        parse_pnet(
            "leaves: a b c d e f\nedge a p\nedge b p\nedge p q\nedge c q\nedge q r\nedge d r\nedge r s\nedge e s\nedge f s\n",
        )
        .unwrap()
    }

    #[test]
    fn caterpillar_from_its_deck() {
        let t = caterpillar6();
        let d = x_deck(&t).unwrap();
        assert!(is_equivalent(&reconstruct_tree_from_deck(&d).unwrap(), &t));
    }

    #[test]
    fn quartet_deck_is_ambiguous() {
        let q = parse_pnet("leaves: a b c d\nedge a u\nedge b u\nedge u v\nedge c v\nedge d v\n").unwrap();
        assert_eq!(reconstruct_tree_from_deck(&x_deck(&q).unwrap()).unwrap_err(), ReconError::AmbiguousDeck);
    }

    #[test]
    fn two_cards_from_far_ends() {
        let t = caterpillar6();
        let tx = delete_leaf(&t, "a").unwrap();
        let ty = delete_leaf(&t, "f").unwrap();
        assert!(is_equivalent(&reconstruct_tree_two_cards(&tx, &ty, "a", "f").unwrap(), &t));
    }

    #[test]
    fn cherry_is_too_close() {
        let t = caterpillar6();
        let tx = delete_leaf(&t, "a").unwrap();
        let ty = delete_leaf(&t, "b").unwrap();
        assert!(reconstruct_tree_two_cards(&tx, &ty, "a", "b").is_err());
    }
}
