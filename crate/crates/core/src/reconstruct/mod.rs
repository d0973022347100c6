//! Reconstruction from decks: a generic attach-and-verify search, the
//! constructive procedures for trees, decomposable networks and 3-chains,
//! and universe-based checks for edge-decks, phylogenetic decks and
//! quarnets.

mod chain;
mod decomposable;
mod generic;
mod tree;
mod universe;

use serde::Serialize;
use thiserror::Error;

use crate::decks::{CardIndex, DeckError};
use crate::equiv::CanonicalCode;
use crate::netcore::{NetError, PseudoNetwork};

pub use chain::reconstruct_via_3chain;
pub use decomposable::{has_nontrivial_cut_edge, reconstruct_decomposable};
pub use generic::{
    attachments, candidate_table, is_leaf_reconstructible, leaf_reconstructions, reconstruction_number,
    reconstructions_from_cards, CandidateTable, RecNumber, TargetClass,
};
pub(crate) use generic::rec_number_from_table;
pub use tree::{reconstruct_tree_from_deck, reconstruct_tree_two_cards};
pub use universe::{
    edge_reconstructions, is_edge_reconstructible, is_edge_reconstructible_exact, is_phylo_deck_reconstructible,
    reconstruct_from_quarnets, QuarnetIndex,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconError {
    #[error("empty card subset")]
    EmptySubset,
    #[error("card {0} is not in the deck")]
    UnknownCard(String),
    #[error("expected a {expected} deck")]
    WrongDeckKind { expected: &'static str },
    #[error("unsupported network class: {0}")]
    UnsupportedClass(String),
    #[error("deck is not the deck of a tree")]
    NotTreeDeck,
    #[error("deck does not determine a unique tree")]
    AmbiguousDeck,
    #[error("leaves are too close for the two-card method")]
    TooClose,
    #[error("deck is not the deck of a decomposable network")]
    NotDecomposableDeck,
    #[error("no usable 3-chain")]
    NoChain,
    #[error("universe does not cover the network: {0}")]
    UniverseTooSmall(String),
    #[error("no candidate matches")]
    NoCandidate,
    #[error("{} candidates match", .0.len())]
    Ambiguous(Vec<CanonicalCode>),
    #[error("too many leaves ({0}) for subset search")]
    TooManyLeaves(usize),
    #[error(transparent)]
    Deck(#[from] DeckError),
    #[error(transparent)]
    Net(#[from] NetError),
}

/// Which procedure produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TreeSplits,
    TreeTwoCard,
    Decomposable,
    ThreeChain,
    GenericSearch,
    UniverseFilter,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionReport {
    pub deck_id: String,
    pub method: Method,
    pub subset: Vec<CardIndex>,
    /// Codes of all candidate classes, ascending.
    pub candidates: Vec<CanonicalCode>,
    pub unique: bool,
    pub witness: Option<PseudoNetwork>,
}

impl ReconstructionReport {
    pub fn new(
        deck_id: String,
        method: Method,
        subset: Vec<CardIndex>,
        mut found: Vec<(CanonicalCode, PseudoNetwork)>,
    ) -> Self {
        found.sort_by(|a, b| a.0.cmp(&b.0));
        found.dedup_by(|a, b| a.0 == b.0);
        let unique = found.len() == 1;
        let witness = if unique { Some(found[0].1.clone()) } else { None };
        ReconstructionReport {
            deck_id,
            method,
            subset,
            candidates: found.into_iter().map(|(c, _)| c).collect(),
            unique,
            witness,
        }
    }
}
