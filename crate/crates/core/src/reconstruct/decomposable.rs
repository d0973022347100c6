//! Networks with a nontrivial cut-edge: rebuild `T(N)` from the trees of
//! the cards, then glue the two sides of one nontrivial split taken from
//! two cards.

use std::collections::{BTreeMap, BTreeSet};

use super::tree::reconstruct_tree_from_deck;
use super::ReconError;
use crate::decks::{x_deck, CardIndex, Deck, DeckKind};
use crate::equiv::{deck_equivalent, DeckMode};
use crate::netcore::splits::side_vertices;
use crate::netcore::{cut_edges, display_tree_suppressed, split_of_edge, Multigraph, PseudoNetwork, Split};

pub fn has_nontrivial_cut_edge(g: &Multigraph) -> bool {
    cut_edges(g).iter().any(|c| !c.trivial)
}

/// In `card`, among cut-edges inducing `split`, the one whose side
/// containing `far` is smallest; returns that side as a graph and the
/// endpoint of the edge on it.
fn side_towards(card: &Multigraph, split: &Split, far: &BTreeSet<String>) -> Option<(Multigraph, usize)> {
    let mut best: Option<(Vec<usize>, usize)> = None;
    for c in cut_edges(card) {
        if &split_of_edge(card, c.edge) != split {
            continue;
        }
        let (u, v) = card.edge(c.edge);
        for end in [u, v] {
            let side = side_vertices(card, c.edge, end);
            let labels: BTreeSet<String> = side.iter().filter_map(|&w| card.label(w).map(str::to_string)).collect();
            if &labels == far && best.as_ref().map_or(true, |(b, _)| side.len() < b.len()) {
                best = Some((side, end));
            }
        }
    }
    let (side, end) = best?;
    let keep: Vec<bool> = {
        let mut k = vec![false; card.vertex_count()];
        for &w in &side {
            k[w] = true;
        }
        k
    };
    let (g, map) = card.retain_vertices(&keep);
    Some((g, map[end].unwrap()))
}

/// Reconstructs a network with a nontrivial cut-edge and at least five
/// leaves from its full deck.
pub fn reconstruct_decomposable(deck: &Deck) -> Result<PseudoNetwork, ReconError> {
    if deck.kind() != DeckKind::Leaf {
        return Err(ReconError::WrongDeckKind { expected: "leaf" });
    }
    let labels = deck.labels().clone();
    let n = labels.len();
    if n < 5 || deck.len() != n {
        return Err(ReconError::NotDecomposableDeck);
    }
    let with_cut = deck.cards().values().filter(|c| has_nontrivial_cut_edge(c)).count();
    if with_cut + 2 < n {
        return Err(ReconError::NotDecomposableDeck);
    }
    let mut tree_cards = BTreeMap::new();
    for (i, c) in deck.cards() {
        let t = display_tree_suppressed(c).map_err(|_| ReconError::NotDecomposableDeck)?;
        tree_cards.insert(i.clone(), t);
    }
    let tree_deck = Deck::new(DeckKind::Leaf, labels.clone(), tree_cards);
    let t = reconstruct_tree_from_deck(&tree_deck).map_err(|_| ReconError::NotDecomposableDeck)?;
    let split = crate::netcore::nontrivial_splits(&t)
        .into_iter()
        .next()
        .ok_or(ReconError::NotDecomposableDeck)?;
    let a1 = split.a.iter().next().unwrap().clone();
    let b1 = split.b.iter().next().unwrap().clone();
    let card_a = deck.card(&CardIndex::Leaf(a1.clone())).unwrap();
    let card_b = deck.card(&CardIndex::Leaf(b1.clone())).unwrap();
    let (nb, u) = side_towards(card_a, &split.without(&a1), &split.b).ok_or(ReconError::NotDecomposableDeck)?;
    let (na, v) = side_towards(card_b, &split.without(&b1), &split.a).ok_or(ReconError::NotDecomposableDeck)?;
    let mut g = na.disjoint_union(&nb);
    g.add_edge(v, na.vertex_count() + u);
    let out = PseudoNetwork::new(g).map_err(|_| ReconError::NotDecomposableDeck)?;
    let check = x_deck(&out)?;
    if !deck_equivalent(&check, deck, DeckMode::Indexed).unwrap_or(false) {
        return Err(ReconError::NotDecomposableDeck);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equiv::is_equivalent;
    use crate::netcore::parse_pnet;

    #[test]
    fn two_triangles_joined() {
        // triangles (a, b) and (c, d, e) joined by a bridge
        let n = parse_pnet(
            "leaves: a b c d e\nedge a x1\nedge b x2\nedge x1 x2\nedge x1 x3\nedge x2 x3\nedge x3 y0\n\
             edge y0 y1\nedge y1 y2\nedge y2 y3\nedge y3 y0\nedge c y1\nedge d y2\nedge e y3\n",
        )
        .unwrap();
        let d = x_deck(&n).unwrap();
        assert!(is_equivalent(&reconstruct_decomposable(&d).unwrap(), &n));
    }

    #[test]
    fn simple_network_is_rejected() {
        let c = parse_pnet(
            "leaves: a b c d e\nedge a u1\nedge b u2\nedge c u3\nedge d u4\nedge e u5\n\
             edge u1 u2\nedge u2 u3\nedge u3 u4\nedge u4 u5\nedge u5 u1\n",
        )
        .unwrap();
        assert_eq!(reconstruct_decomposable(&x_deck(&c).unwrap()).unwrap_err(), ReconError::NotDecomposableDeck);
    }
}
