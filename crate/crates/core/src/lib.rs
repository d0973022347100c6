//! Deck-based reconstruction of unrooted phylogenetic networks.
//!
//! Networks are leaf-labelled multigraphs ([`netcore::PseudoNetwork`]).
//! Deleting a leaf (or an edge) and suppressing degree-2 vertices yields a
//! card; the collection of cards is a deck ([`decks::Deck`]). The
//! [`reconstruct`] module rebuilds networks from decks and decides
//! reconstructibility against finite universes produced by [`enumerate`].

pub mod decks;
pub mod enumerate;
pub mod equiv;
pub mod netcore;
pub mod reconstruct;

pub use equiv::{canonical_code, is_equivalent, CanonicalCode};
pub use netcore::{parse_pnet, to_pnet, Multigraph, NetError, PseudoNetwork};
