mod common;

use std::collections::BTreeSet;

use common::*;
use phylodeck::enumerate::{
    enumerate_generators, enumerate_networks_on, enumerate_simple_on, enumerate_trees_on, UniverseSpec,
};
use phylodeck::equiv::{canonical_code, is_equivalent, unlabeled_code};
use phylodeck::netcore::{is_phylogenetic, Generator, Multigraph};

#[test]
fn canonical_code_agrees_with_brute_force_isomorphism() {
    let mut r = rng(7);
    for _ in 0..300 {
        let n = r.gen_range(3..=5);
        let ls = labels(n);
        let ret = r.gen_range(0..=2);
        let a = random_binary_network(&mut r, &ls, ret);
        let b = if r.gen_bool(0.5) {
            shuffled(&mut r, &a)
        } else {
            random_binary_network(&mut r, &ls, a.reticulation_number()).into_graph()
        };
        if a.vertex_count() > 12 {
            continue;
        }
        assert_eq!(is_equivalent(&a, &b), brute_isomorphic(&a, &b), "{a}\n{b:?}");
    }
}

use rand::Rng;

#[test]
fn universes_match_naive_construction() {
    for n in 2..=4 {
        let ls = labels(n);
        let u = enumerate_networks_on(&UniverseSpec::binary(n, 2, 2), &ls).unwrap();
        for ret in 0..=2 {
            let ours: BTreeSet<_> = u
                .iter()
                .filter(|(net, _)| net.reticulation_number() == ret)
                .map(|(_, c)| c.clone())
                .collect();
            assert_eq!(ours, naive_universe(&ls, ret), "n={n} r={ret}");
        }
    }
}

#[test]
fn binary_tree_counts_are_double_factorials() {
    for n in 3..=7 {
        let got = enumerate_trees_on(&labels(n), true).len() as u64;
        assert_eq!(got, double_factorial(2 * n as i64 - 5), "n={n}");
    }
}

#[test]
fn nonbinary_tree_counts() {
    // Total numbers of phylogenetic trees on n labelled leaves.
    for (n, want) in [(2, 1), (3, 1), (4, 4), (5, 26), (6, 236)] {
        assert_eq!(enumerate_trees_on(&labels(n), false).len(), want, "n={n}");
    }
}

/// Every way of placing labelled leaves in order along the three parallel
/// edges of the theta graph.
fn theta_placements(ls: &[String]) -> BTreeSet<phylodeck::CanonicalCode> {
    let n = ls.len();
    let mut out = BTreeSet::new();
    let mut assign = vec![0usize; n];
    loop {
        for perm in itertools::Itertools::permutations(0..n, n) {
            let mut g = Multigraph::new();
            let u = g.add_internal();
            let v = g.add_internal();
            for side in 0..3 {
                let mut prev = u;
                for &i in perm.iter().filter(|&&i| assign[i] == side) {
                    let s = g.add_internal();
                    let x = g.add_leaf(ls[i].clone());
                    g.add_edge(prev, s);
                    g.add_edge(s, x);
                    prev = s;
                }
                g.add_edge(prev, v);
            }
            if is_phylogenetic(&g) {
                out.insert(canonical_code(&g));
            }
        }
        let mut i = 0;
        while i < n {
            assign[i] += 1;
            if assign[i] < 3 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

#[test]
fn level_two_simple_networks_match_theta_placements() {
    for n in 3..=4 {
        let ls = labels(n);
        let ours: BTreeSet<_> = enumerate_simple_on(2, &ls).unwrap().iter().map(|x| canonical_code(x)).collect();
        assert_eq!(ours, theta_placements(&ls), "n={n}");
    }
}

#[test]
fn generators_match_catalog_fixtures() {
    let catalog = [
        (2, vec!["gen2_theta"]),
        (3, vec!["gen3_double_ladder", "gen3_k4"]),
        (
            4,
            vec!["gen4_doubles_square", "gen4_double_diamond", "gen4_three_doubles", "gen4_prism", "gen4_k33"],
        ),
    ];
    for (k, names) in catalog {
        let want: BTreeSet<_> = names
            .iter()
            .map(|f| {
                let g = Generator::new(fixture_graph(f)).unwrap();
                assert_eq!(g.level(), k, "{f}");
                unlabeled_code(g.graph())
            })
            .collect();
        assert_eq!(want.len(), names.len());
        let got: BTreeSet<_> = enumerate_generators(k).iter().map(|g| unlabeled_code(g.graph())).collect();
        assert_eq!(got, want, "k={k}");
    }
}
