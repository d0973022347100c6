//! Graph data model and structural analyses.

pub mod blobs;
pub mod generator;
pub mod graph;
pub mod ops;
pub mod pnet;
pub mod splits;

pub use blobs::{
    blobs, check_phylogenetic, contract_blobs, cut_edges, display_tree, display_tree_suppressed,
    is_decomposable, is_phylogenetic, is_simple, level, BlockDecomposition, CutEdge,
};
pub use generator::{underlying_generator, Generator, LeafPlacement, Placement};
pub use graph::{validate, Multigraph, NetError, PseudoNetwork};
pub use ops::{attach_leaf, attach_leaf_to_vertex, find_2_chains, find_3_chains, pendant_leaves, tree_median};
pub use pnet::{parse_graph, parse_pnet, parse_pnet_union, to_dot, to_pnet, PnetError};
pub use splits::{nontrivial_splits, split_of_edge, splits, Split};

/// Reticulation number `|E| - |V| + 1` of a connected network.
pub fn reticulation_number(net: &PseudoNetwork) -> usize {
    net.reticulation_number()
}

pub fn is_binary(net: &PseudoNetwork) -> bool {
    net.is_binary()
}
