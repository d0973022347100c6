//! Two-card reconstruction around a 3-chain `(x, y, z)`.

use super::ReconError;
use crate::decks::{delete_leaf, Deck, DeckKind};
use crate::equiv::canonical_code;
use crate::netcore::{attach_leaf, find_3_chains, PseudoNetwork};

fn neighbour_of_leaf(g: &PseudoNetwork, l: &str) -> Option<usize> {
    let v = g.vertex_of(l)?;
    let e = *g.incidence()[v].first()?;
    Some(g.other_end(e, v))
}

/// Uses only the cards of `y` and of the helper `a`: the chain survives in
/// `N_a`, and in `N_y` the neighbours of `x` and `z` are joined by the edge
/// that `y` was removed from.
pub fn reconstruct_via_3chain(
    deck: &Deck,
    chain: (&str, &str, &str),
    a: &str,
) -> Result<PseudoNetwork, ReconError> {
    if deck.kind() != DeckKind::Leaf {
        return Err(ReconError::WrongDeckKind { expected: "leaf" });
    }
    let (x, y, z) = chain;
    if [x, y, z].contains(&a) {
        return Err(ReconError::NoChain);
    }
    let na = deck.leaf_card(a).ok_or(ReconError::NoChain)?;
    let ny = deck.leaf_card(y).ok_or(ReconError::NoChain)?;
    if !find_3_chains(na).iter().any(|(p, q, r)| p == x && q == y && r == z) {
        return Err(ReconError::NoChain);
    }
    let (u, w) = match (neighbour_of_leaf(ny, x), neighbour_of_leaf(ny, z)) {
        (Some(u), Some(w)) if u != w => (u.min(w), u.max(w)),
        _ => return Err(ReconError::NoChain),
    };
    let e = ny.edges().iter().position(|&p| p == (u, w)).ok_or(ReconError::NoChain)?;
    let out = attach_leaf(ny, y, e)?;
    let matches = |l: &str, card: &PseudoNetwork| {
        delete_leaf(&out, l).map(|c| canonical_code(&c) == canonical_code(card)).unwrap_or(false)
    };
    if matches(y, ny) && matches(a, na) {
        Ok(out)
    } else {
        Err(ReconError::NoChain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decks::x_deck;
    use crate::equiv::is_equivalent;
    use crate::netcore::parse_pnet;

    #[test]
    fn five_cycle() {
        let c = parse_pnet(
            "leaves: a b c d e\nedge a u1\nedge b u2\nedge c u3\nedge d u4\nedge e u5\n\
             edge u1 u2\nedge u2 u3\nedge u3 u4\nedge u4 u5\nedge u5 u1\n",
        )
        .unwrap();
        let d = x_deck(&c).unwrap();
        let r = reconstruct_via_3chain(&d, ("a", "b", "c"), "e").unwrap();
        assert!(is_equivalent(&r, &c));
    }

    #[test]
    fn star_has_no_chain() {
        let s = parse_pnet("leaves: a b c d e\nedge a u\nedge b u\nedge c u\nedge d u\nedge e u\n").unwrap();
        let d = x_deck(&s).unwrap();
        assert_eq!(reconstruct_via_3chain(&d, ("a", "b", "c"), "d").unwrap_err(), ReconError::NoChain);
    }
}
