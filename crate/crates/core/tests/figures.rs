mod common;

use std::collections::BTreeSet;

use common::*;
use phylodeck::decks::{delete_leaf, phylo_deck, phylo_delete_leaf, quarnet_on, x_deck, CardIndex, Deck};
use phylodeck::equiv::{deck_equivalent, is_equivalent, unlabeled_code, DeckMode};
use phylodeck::netcore::{
    blobs, display_tree, find_3_chains, is_binary, is_decomposable, is_phylogenetic, is_simple, level,
    underlying_generator,
};
use phylodeck::reconstruct::{
    is_leaf_reconstructible, reconstruct_decomposable, reconstruct_via_3chain, reconstructions_from_cards,
    TargetClass,
};

fn all(d: &Deck) -> BTreeSet<CardIndex> {
    d.indices().cloned().collect()
}

#[test]
fn two_blob_network_structure() {
    let n = fixture("two_blob_network");
    assert!(is_phylogenetic(&n));
    assert!(is_binary(&n));
    assert_eq!(n.reticulation_number(), 3);
    assert_eq!(level(&n), 2);
    assert_eq!(blobs(&n).len(), 2);
    assert!(is_decomposable(&n));
    assert!(!is_simple(&n));
    assert!(is_equivalent(&display_tree(&n).unwrap(), &fixture("two_blob_tree")));
    assert!(is_equivalent(&delete_leaf(&n, "a").unwrap(), &fixture("two_blob_card_a")));
    assert!(is_equivalent(&delete_leaf(&n, "e").unwrap(), &fixture("two_blob_card_e")));
    let d = x_deck(&n).unwrap();
    assert!(is_equivalent(&reconstruct_decomposable(&d).unwrap(), &n));
}

#[test]
fn ladder_pair_shares_its_deck() {
    let (a, b) = (fixture("ladder_ac"), fixture("ladder_ad"));
    for n in [&a, &b] {
        assert!(is_simple(n));
        assert_eq!(level(n), 2);
        assert!(underlying_generator(n).is_ok());
    }
    assert!(!is_equivalent(&a, &b));
    let (da, db) = (x_deck(&a).unwrap(), x_deck(&b).unwrap());
    assert!(deck_equivalent(&da, &db, DeckMode::Indexed).unwrap());
    assert_eq!(reconstructions_from_cards(&da, &all(&da), TargetClass::Any).unwrap().candidates.len(), 2);
    assert!(!is_leaf_reconstructible(&a).unwrap());
}

/// Unlabeled cards of plain vertex deletion at each leaf.
fn endvertex_deck(n: &phylodeck::PseudoNetwork) -> Vec<phylodeck::CanonicalCode> {
    let mut out: Vec<_> = n
        .label_set()
        .iter()
        .map(|x| {
            let v = n.vertex_of(x).unwrap();
            let keep: Vec<bool> = (0..n.vertex_count()).map(|w| w != v).collect();
            unlabeled_code(&n.retain_vertices(&keep).0)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn endvertex_twins() {
    let (x, y) = (fixture("endvertex_twin_x"), fixture("endvertex_twin_yz"));
    assert!(!is_equivalent(&x.erase_labels(), &y.erase_labels()));
    assert_eq!(endvertex_deck(&x), endvertex_deck(&y));
    for n in [&x, &y] {
        let d = x_deck(n).unwrap();
        let r = reconstructions_from_cards(&d, &all(&d), TargetClass::Any).unwrap();
        assert!(r.unique);
        assert!(is_equivalent(r.witness.as_ref().unwrap(), n));
    }
}

#[test]
fn three_chain_network_from_two_cards() {
    let n = fixture("chain_level2");
    assert!(is_simple(&n));
    assert_eq!(level(&n), 2);
    assert!(find_3_chains(&n).iter().any(|c| c == &("a".into(), "b".into(), "c".into())
        || c == &("c".into(), "b".into(), "a".into())));
    let d = x_deck(&n).unwrap();
    assert!(is_equivalent(&reconstruct_via_3chain(&d, ("a", "b", "c"), "d").unwrap(), &n));
}

#[test]
fn triangle_chain_quarnets() {
    let n = fixture("triangle_chain");
    assert_eq!(n.reticulation_number(), 3);
    let qa = fixture("triangle_chain_quarnet_a");
    let qd = fixture("triangle_chain_quarnet_d");
    assert!(is_equivalent(&phylo_delete_leaf(&n, "a").unwrap(), &qa));
    assert!(is_equivalent(&phylo_delete_leaf(&n, "d").unwrap(), &qd));
    let rest: BTreeSet<String> = n.label_set().into_iter().filter(|l| l != "a").collect();
    assert!(is_equivalent(&quarnet_on(&n, &rest).unwrap(), &qa));
    let d = x_deck(&n).unwrap();
    assert!(d.cards().values().all(|c| !is_phylogenetic(c)));
}

#[test]
fn four_cycle_and_two_triangles() {
    let (n, m) = (fixture("four_cycle"), fixture("two_triangles"));
    assert!(deck_equivalent(&phylo_deck(&n).unwrap(), &phylo_deck(&m).unwrap(), DeckMode::Indexed).unwrap());
    assert!(!deck_equivalent(&x_deck(&n).unwrap(), &x_deck(&m).unwrap(), DeckMode::Indexed).unwrap());
    assert!(!is_leaf_reconstructible(&n).unwrap());
    assert!(is_leaf_reconstructible(&m).unwrap());
}

#[test]
fn edge_pairs_share_leaf_decks_where_expected() {
    for p in ["quartet", "cycle", "level3"] {
        let a = fixture(&format!("edge_pair_{p}_1"));
        let b = fixture(&format!("edge_pair_{p}_2"));
        assert!(!is_equivalent(&a, &b), "{p}");
        assert!(deck_equivalent(&x_deck(&a).unwrap(), &x_deck(&b).unwrap(), DeckMode::Indexed).unwrap(), "{p}");
    }
}

#[test]
fn labels_helper_matches_fixture_labels() {
    assert_eq!(fixture("star3").label_set(), set(&["a", "b", "c"]));
}
