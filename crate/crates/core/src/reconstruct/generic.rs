//! Attach-and-verify reconstruction.
//!
//! If `N'` is a phylogenetic network with `N'_x ~ C`, the neighbour of `x`
//! in `N'` either had degree 3 (it was suppressed, so `N'` is `C` with `x`
//! attached to an edge) or degree at least 4 (so `N'` is `C` with `x`
//! hung from an internal vertex). Attaching in both ways therefore yields
//! every reconstruction from `C`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use super::{Method, ReconError, ReconstructionReport};
use crate::decks::{delete_leaf, x_deck, CardIndex, Deck, DeckKind};
use crate::equiv::{canonical_code, CanonicalCode};
use crate::netcore::{attach_leaf, attach_leaf_to_vertex, is_phylogenetic, Multigraph, PseudoNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetClass {
    /// Attach to edges only and keep binary phylogenetic results.
    Binary,
    /// Attach to edges and internal vertices; keep phylogenetic results.
    Any,
}

/// Phylogenetic networks obtained by putting `x` back into `card`.
pub fn attachments(card: &Multigraph, x: &str, class: TargetClass) -> Vec<PseudoNetwork> {
    let mut out = Vec::new();
    if card.vertex_count() == 1 && card.label(0).is_some() {
        let mut g = card.clone();
        let v = g.add_leaf(x);
        g.add_edge(0, v);
        if let Ok(n) = PseudoNetwork::new(g) {
            out.push(n);
        }
        return out;
    }
    for e in 0..card.edge_count() {
        if let Ok(n) = attach_leaf(card, x, e) {
            out.push(n);
        }
    }
    if class == TargetClass::Any {
        let deg = card.degrees();
        for v in 0..card.vertex_count() {
            if card.label(v).is_none() && deg[v] >= 3 {
                if let Ok(n) = attach_leaf_to_vertex(card, x, v) {
                    out.push(n);
                }
            }
        }
    }
    out.retain(|n| is_phylogenetic(n) && (class == TargetClass::Any || n.is_binary()));
    out
}

fn deleted_label(i: &CardIndex) -> Result<&str, ReconError> {
    match i {
        CardIndex::Leaf(l) => Ok(l),
        CardIndex::Edge(_) => Err(ReconError::WrongDeckKind { expected: "leaf" }),
    }
}

/// Candidates from the smallest card of `subset` that reproduce every card
/// of `subset`, one per equivalence class.
pub fn reconstructions_from_cards(
    deck: &Deck,
    subset: &BTreeSet<CardIndex>,
    class: TargetClass,
) -> Result<ReconstructionReport, ReconError> {
    if deck.kind() != DeckKind::Leaf {
        return Err(ReconError::WrongDeckKind { expected: "leaf" });
    }
    if subset.is_empty() {
        return Err(ReconError::EmptySubset);
    }
    for i in subset {
        if deck.card(i).is_none() {
            return Err(ReconError::UnknownCard(i.to_string()));
        }
        deleted_label(i)?;
    }
    let base = subset
        .iter()
        .min_by_key(|i| (deck.card(i).map_or(0, |c| c.edge_count()), (*i).clone()))
        .expect("nonempty");
    let x = deleted_label(base)?;
    let mut found: Vec<(CanonicalCode, PseudoNetwork)> = Vec::new();
    let mut seen = BTreeSet::new();
    for cand in attachments(deck.card(base).unwrap(), x, class) {
        let code = canonical_code(&cand);
        if !seen.insert(code.clone()) {
            continue;
        }
        let fits = subset.iter().filter(|i| *i != base).all(|i| {
            let u = deleted_label(i).unwrap();
            delete_leaf(&cand, u).map(|c| &canonical_code(&c) == deck.code(i).unwrap()).unwrap_or(false)
        });
        if fits {
            found.push((code, cand));
        }
    }
    Ok(ReconstructionReport::new(
        deck.deck_id(),
        Method::GenericSearch,
        subset.iter().cloned().collect(),
        found,
    ))
}

/// All leaf-reconstructions of `net` in the given class, one per class.
pub fn leaf_reconstructions(
    net: &PseudoNetwork,
    class: TargetClass,
) -> Result<Vec<(CanonicalCode, PseudoNetwork)>, ReconError> {
    let deck = x_deck(net)?;
    let all: BTreeSet<CardIndex> = deck.indices().cloned().collect();
    let base = all
        .iter()
        .min_by_key(|i| (deck.card(i).unwrap().edge_count(), (*i).clone()))
        .unwrap()
        .clone();
    let x = deleted_label(&base)?.to_string();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for cand in attachments(deck.card(&base).unwrap(), &x, class) {
        let code = canonical_code(&cand);
        if !seen.insert(code.clone()) {
            continue;
        }
        let fits = all.iter().filter(|i| **i != base).all(|i| {
            let u = deleted_label(i).unwrap();
            delete_leaf(&cand, u).map(|c| &canonical_code(&c) == deck.code(i).unwrap()).unwrap_or(false)
        });
        if fits {
            out.push((code, cand));
        }
    }
    Ok(out)
}

fn check_supported(net: &PseudoNetwork) -> Result<(), ReconError> {
    if !is_phylogenetic(net) {
        return Err(ReconError::UnsupportedClass("not a phylogenetic network".into()));
    }
    if !(net.is_binary() || net.is_tree()) {
        return Err(ReconError::UnsupportedClass("nonbinary network that is not a tree".into()));
    }
    Ok(())
}

/// Every other candidate class obtainable from each card, with the set of
/// cards (as a bit mask over sorted labels) it agrees with.
#[derive(Debug, Clone)]
pub struct CandidateTable {
    pub labels: Vec<String>,
    pub code: CanonicalCode,
    pub others: Vec<Vec<(CanonicalCode, u64)>>,
}

impl CandidateTable {
    pub fn mask_of(&self, subset: &[usize]) -> u64 {
        subset.iter().fold(0, |m, &i| m | (1 << i))
    }

    /// True when only `net` itself agrees with every card of `subset`.
    pub fn is_unique(&self, subset: &[usize]) -> bool {
        let Some(&base) = subset.first() else { return false };
        let m = self.mask_of(subset);
        self.others[base].iter().all(|(_, mask)| mask & m != m)
    }

    /// Classes other than `net` agreeing with every card.
    pub fn full_deck_rivals(&self) -> Vec<CanonicalCode> {
        let full = (1u64 << self.labels.len()) - 1;
        let mut v: Vec<_> = self
            .others
            .iter()
            .flatten()
            .filter(|(_, m)| *m == full)
            .map(|(c, _)| c.clone())
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

pub fn candidate_table(net: &PseudoNetwork, class: TargetClass) -> Result<CandidateTable, ReconError> {
    let labels: Vec<String> = net.label_set().into_iter().collect();
    if labels.len() > 63 {
        return Err(ReconError::TooManyLeaves(labels.len()));
    }
    let deck = x_deck(net)?;
    let code = canonical_code(net);
    let card_codes: Vec<&CanonicalCode> =
        labels.iter().map(|l| deck.code(&CardIndex::Leaf(l.clone())).unwrap()).collect();
    let mut masks: HashMap<CanonicalCode, u64> = HashMap::new();
    let mut others = Vec::with_capacity(labels.len());
    for (xi, x) in labels.iter().enumerate() {
        let card = deck.leaf_card(x).unwrap();
        let mut row = Vec::new();
        let mut seen = BTreeSet::new();
        for cand in attachments(card, x, class) {
            let c = canonical_code(&cand);
            if c == code || !seen.insert(c.clone()) {
                continue;
            }
            let mask = match masks.get(&c) {
                Some(&m) => m,
                None => {
                    let mut m = 1u64 << xi;
                    for (ui, u) in labels.iter().enumerate() {
                        if ui == xi {
                            continue;
                        }
                        if let Ok(cu) = delete_leaf(&cand, u) {
                            if &canonical_code(&cu) == card_codes[ui] {
                                m |= 1 << ui;
                            }
                        }
                    }
                    masks.insert(c.clone(), m);
                    m
                }
            };
            row.push((c, mask));
        }
        others.push(row);
    }
    Ok(CandidateTable { labels, code, others })
}

pub fn is_leaf_reconstructible(net: &PseudoNetwork) -> Result<bool, ReconError> {
    check_supported(net)?;
    Ok(candidate_table(net, TargetClass::Any)?.full_deck_rivals().is_empty())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecNumber {
    /// `None` when the full deck does not determine the network.
    pub number: Option<usize>,
    /// First subset (size order, then lexicographic) that forces uniqueness.
    pub subset: Vec<String>,
}

/// Smallest number of cards that determine `net`.
pub fn reconstruction_number(net: &PseudoNetwork) -> Result<RecNumber, ReconError> {
    check_supported(net)?;
    let t = candidate_table(net, TargetClass::Any)?;
    Ok(rec_number_from_table(&t))
}

pub(crate) fn rec_number_from_table(t: &CandidateTable) -> RecNumber {
    let n = t.labels.len();
    for k in 1..=n {
        for s in (0..n).combinations(k) {
            if t.is_unique(&s) {
                return RecNumber { number: Some(k), subset: s.iter().map(|&i| t.labels[i].clone()).collect() };
            }
        }
    }
    RecNumber { number: None, subset: Vec::new() }
}
