//! Checks that compare a network against every member of an enumerated
//! universe: edge-decks, phylogenetic decks and quarnets.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;

use super::generic::{leaf_reconstructions, TargetClass};
use super::ReconError;
use crate::decks::{edge_deck, phylo_deck, quarnet_on, DeckError};
use crate::enumerate::{NetClass, Universe};
use crate::equiv::{canonical_code, CanonicalCode};
use crate::netcore::PseudoNetwork;

/// Edge-reconstructibility within a certified binary universe that holds
/// every binary network with the same number of edges.
pub fn is_edge_reconstructible(net: &PseudoNetwork, universe: &Universe) -> Result<bool, ReconError> {
    universe.covers(net).map_err(ReconError::UniverseTooSmall)?;
    let r = net.reticulation_number();
    let spec = universe.spec();
    if spec.class != NetClass::Binary || spec.max_reticulation < r || spec.max_level < r {
        return Err(ReconError::UniverseTooSmall(format!(
            "needs every binary network with reticulation {r}"
        )));
    }
    let own = edge_deck(net)?.code_multiset();
    let code = canonical_code(net);
    for (m, c) in universe.iter() {
        if m.edge_count() != net.edge_count() || *c == code {
            continue;
        }
        if edge_deck(m)?.code_multiset() == own {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All phylogenetic networks with the same edge-deck (as a multiset).
///
/// Deleting the pendant edge of `x` leaves `N_x` plus the isolated vertex
/// `x`, and no other deletion isolates a labelled vertex. An equal
/// edge-deck therefore forces an equal leaf-deck, so the candidates are
/// among the leaf-reconstructions.
pub fn edge_reconstructions(net: &PseudoNetwork) -> Result<Vec<(CanonicalCode, PseudoNetwork)>, ReconError> {
    let own = edge_deck(net)?.code_multiset();
    let mut out = Vec::new();
    for (c, m) in leaf_reconstructions(net, TargetClass::Any)? {
        if m.edge_count() == net.edge_count() && edge_deck(&m)?.code_multiset() == own {
            out.push((c, m));
        }
    }
    Ok(out)
}

pub fn is_edge_reconstructible_exact(net: &PseudoNetwork) -> Result<bool, ReconError> {
    Ok(edge_reconstructions(net)?.len() == 1)
}

/// True when no other universe member has the same phylogenetic deck,
/// card by card.
pub fn is_phylo_deck_reconstructible(net: &PseudoNetwork, universe: &Universe) -> Result<bool, ReconError> {
    universe.covers(net).map_err(ReconError::UniverseTooSmall)?;
    let code = canonical_code(net);
    if !universe.contains(&code) {
        return Err(ReconError::UniverseTooSmall("network is not a member".into()));
    }
    let own = phylo_deck(net)?;
    for (m, c) in universe.iter() {
        if *c == code {
            continue;
        }
        let d = phylo_deck(m)?;
        if d.codes() == own.codes() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Quarnet codes of every universe member, one per 4-subset in
/// lexicographic order.
pub struct QuarnetIndex {
    subsets: Vec<BTreeSet<String>>,
    rows: Vec<Vec<CanonicalCode>>,
    by_row: HashMap<Vec<CanonicalCode>, Vec<usize>>,
}

impl QuarnetIndex {
    pub fn build(universe: &Universe) -> Result<Self, ReconError> {
        let subsets: Vec<BTreeSet<String>> =
            universe.labels().iter().cloned().combinations(4).map(|s| s.into_iter().collect()).collect();
        let mut rows = Vec::with_capacity(universe.len());
        let mut by_row: HashMap<Vec<CanonicalCode>, Vec<usize>> = HashMap::new();
        for (i, (m, _)) in universe.iter().enumerate() {
            let row = Self::row_of(m, &subsets)?;
            by_row.entry(row.clone()).or_default().push(i);
            rows.push(row);
        }
        Ok(QuarnetIndex { subsets, rows, by_row })
    }

    fn row_of(net: &PseudoNetwork, subsets: &[BTreeSet<String>]) -> Result<Vec<CanonicalCode>, ReconError> {
        subsets
            .iter()
            .map(|s| {
                let q = quarnet_on(net, s)?;
                Ok(canonical_code(&q))
            })
            .collect()
    }

    /// Members sharing the quarnets of member `i` (including `i`).
    pub fn class_of(&self, i: usize) -> &[usize] {
        &self.by_row[&self.rows[i]]
    }

    /// Members whose quarnet on `S` matches each given quarnet.
    pub fn matching(&self, quarnets: &[PseudoNetwork]) -> Result<Vec<usize>, ReconError> {
        let mut wanted = Vec::new();
        for q in quarnets {
            let s = q.label_set();
            let pos = self
                .subsets
                .iter()
                .position(|t| *t == s)
                .ok_or_else(|| ReconError::Deck(DeckError::BadSubset(s.iter().join(","))))?;
            wanted.push((pos, canonical_code(q)));
        }
        Ok((0..self.rows.len())
            .filter(|&i| wanted.iter().all(|(p, c)| self.rows[i][*p] == *c))
            .collect())
    }
}

/// Filters the universe by the given quarnets. All 4-subsets need not be
/// present; every provided quarnet must be matched.
pub fn reconstruct_from_quarnets(
    quarnets: &[PseudoNetwork],
    labels: &BTreeSet<String>,
    universe: &Universe,
) -> Result<PseudoNetwork, ReconError> {
    if !universe.spec().certified {
        return Err(ReconError::UniverseTooSmall("universe is not certified".into()));
    }
    let ul: BTreeSet<String> = universe.labels().iter().cloned().collect();
    if &ul != labels {
        return Err(ReconError::UniverseTooSmall("label sets differ".into()));
    }
    let index = QuarnetIndex::build(universe)?;
    let hits = index.matching(quarnets)?;
    match hits.len() {
        0 => Err(ReconError::NoCandidate),
        1 => Ok(universe.net(hits[0]).clone()),
        _ => Err(ReconError::Ambiguous(hits.iter().map(|&i| universe.code(i).clone()).sorted().collect())),
    }
}
