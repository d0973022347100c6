mod common;

use std::collections::BTreeSet;

use common::*;
use phylodeck::decks::{x_deck, CardIndex};
use phylodeck::enumerate::{enumerate_networks_on, enumerate_simple_on, enumerate_trees_on, UniverseSpec};
use phylodeck::equiv::{canonical_code, is_equivalent};
use phylodeck::netcore::{find_3_chains, is_decomposable};
use phylodeck::reconstruct::{
    is_edge_reconstructible, is_edge_reconstructible_exact, is_leaf_reconstructible, reconstruct_decomposable,
    reconstruct_tree_from_deck, reconstruct_tree_two_cards, reconstruct_via_3chain, reconstruction_number,
    reconstructions_from_cards, TargetClass,
};
use rand::Rng;

#[test]
fn tree_splits_method_recovers_random_trees() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r.gen_range(5..=9);
        let binary = r.gen_bool(0.5);
        let t = random_tree(&mut r, &labels(n), binary);
        let d = x_deck(&t).unwrap();
        assert!(is_equivalent(&reconstruct_tree_from_deck(&d).unwrap(), &t), "{t}");
    }
}

#[test]
fn two_card_method_agrees_with_generic_search() {
    for t in enumerate_trees_on(&labels(6), false) {
        let d = x_deck(&t).unwrap();
        let ls: Vec<String> = t.label_set().into_iter().collect();
        let mut hit = false;
        for x in &ls {
            for y in &ls {
                if x == y {
                    continue;
                }
                let (tx, ty) = (d.leaf_card(x).unwrap(), d.leaf_card(y).unwrap());
                if let Ok(m) = reconstruct_tree_two_cards(tx, ty, x, y) {
                    hit = true;
                    let pair: BTreeSet<CardIndex> = [CardIndex::Leaf(x.clone()), CardIndex::Leaf(y.clone())].into();
                    let g = reconstructions_from_cards(&d, &pair, TargetClass::Any).unwrap();
                    assert!(is_equivalent(&m, &t));
                    assert_eq!(g.candidates, vec![canonical_code(&t)]);
                }
            }
        }
        let star = t.vertex_count() == t.leaf_count() + 1;
        assert_eq!(hit, !star, "{t}");
    }
}

#[test]
fn decomposable_method_agrees_with_generic_search() {
    let mut r = rng(12);
    let mut tried = 0;
    while tried < 150 {
        let n = r.gen_range(5..=7);
        let ret = r.gen_range(1..=3);
        let net = random_binary_network(&mut r, &labels(n), ret);
        if !is_decomposable(&net) {
            continue;
        }
        tried += 1;
        let d = x_deck(&net).unwrap();
        let m = reconstruct_decomposable(&d).unwrap();
        assert!(is_equivalent(&m, &net), "{net}");
        let all: BTreeSet<CardIndex> = d.indices().cloned().collect();
        let g = reconstructions_from_cards(&d, &all, TargetClass::Binary).unwrap();
        assert_eq!(g.candidates, vec![canonical_code(&net)]);
    }
}

#[test]
fn three_chain_method_on_level_two_networks() {
    let ls = labels(5);
    let mut used = 0;
    for net in enumerate_simple_on(2, &ls).unwrap() {
        let Some((x, y, z)) = find_3_chains(&net).into_iter().next() else { continue };
        let a = ls.iter().find(|l| ![&x, &y, &z].contains(l)).unwrap();
        let d = x_deck(&net).unwrap();
        let m = reconstruct_via_3chain(&d, (&x, &y, &z), a).unwrap();
        assert!(is_equivalent(&m, &net));
        used += 1;
    }
    assert!(used > 0);
}

#[test]
fn tree_reconstruction_numbers() {
    for n in [5, 6] {
        for t in enumerate_trees_on(&labels(n), false) {
            let star = t.vertex_count() == n + 1;
            let rn = reconstruction_number(&t).unwrap().number;
            assert_eq!(rn, Some(if star { 3 } else { 2 }), "{t}");
        }
    }
    for t in enumerate_trees_on(&labels(4), true) {
        assert!(!is_leaf_reconstructible(&t).unwrap());
    }
}

#[test]
fn exact_edge_check_agrees_with_universe() {
    let u = enumerate_networks_on(&UniverseSpec::binary(4, 2, 2), &labels(4)).unwrap();
    for (net, _) in u.iter() {
        assert_eq!(
            is_edge_reconstructible_exact(net).unwrap(),
            is_edge_reconstructible(net, &u).unwrap(),
            "{net}"
        );
    }
}
