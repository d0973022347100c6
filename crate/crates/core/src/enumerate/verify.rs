//! Exhaustive verification sweeps over a universe.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::networks::{enumerate_networks, NetClass, Universe, UniverseSpec};
use super::EnumError;
use crate::decks::phylo_deck;
use crate::equiv::CanonicalCode;
use crate::netcore::{is_binary, is_simple, level, PseudoNetwork};
use crate::reconstruct::{
    attachments, candidate_table, edge_reconstructions, has_nontrivial_cut_edge, QuarnetIndex, TargetClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Leaf,
    Edge,
    Phylo,
    Quarnet,
    ReconNumber,
}

impl std::str::FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "leaf" => Ok(Check::Leaf),
            "edge" => Ok(Check::Edge),
            "phylo" => Ok(Check::Phylo),
            "quarnet" => Ok(Check::Quarnet),
            "recon-number" => Ok(Check::ReconNumber),
            _ => Err(format!("unknown check {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub code: CanonicalCode,
    pub reticulation: usize,
    pub level: usize,
    pub leaf_reconstructible: Option<bool>,
    pub reconstruction_number: Option<usize>,
    pub reconstruction_subset: Option<Vec<String>>,
    pub edge_reconstructible: Option<bool>,
    pub phylo_deck_reconstructible: Option<bool>,
    pub quarnet_reconstructible: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// Another member of the class shares the deck.
    WeakReconstructibility,
    /// Every rival lies outside the class.
    Recognizability,
    /// Shares the edge-deck with another network.
    EdgeDeck,
    /// Shares the phylogenetic deck with another member.
    PhyloDeck,
    /// Shares every quarnet with another member.
    Quarnets,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub code: CanonicalCode,
    pub kind: FailureKind,
    pub rivals: Vec<CanonicalCode>,
    pub network: PseudoNetwork,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub applicable: usize,
    pub violations: Vec<CanonicalCode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelFraction {
    pub level: usize,
    pub total: usize,
    pub leaf_reconstructible: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub spec: UniverseSpec,
    pub checks: Vec<Check>,
    pub total: usize,
    pub networks: Vec<NetReport>,
    pub counterexamples: Vec<Counterexample>,
    pub theorem_checks: Vec<TheoremCheck>,
    pub fractions: Vec<LevelFraction>,
}

impl VerificationReport {
    pub fn counterexamples_of(&self, kind: FailureKind) -> impl Iterator<Item = &Counterexample> {
        self.counterexamples.iter().filter(move |c| c.kind == kind)
    }

    pub fn theorem(&self, name: &str) -> Option<&TheoremCheck> {
        self.theorem_checks.iter().find(|t| t.name == name)
    }

    pub fn theorem_violations(&self) -> usize {
        self.theorem_checks.iter().map(|t| t.violations.len()).sum()
    }
}

pub fn verify_class(spec: &UniverseSpec, checks: &BTreeSet<Check>) -> Result<VerificationReport, EnumError> {
    let u = enumerate_networks(spec)?;
    verify_universe(&u, checks)
}

#[derive(Default)]
struct Theorems(BTreeMap<&'static str, TheoremCheck>);

impl Theorems {
    fn record(&mut self, name: &'static str, applies: bool, holds: bool, code: &CanonicalCode) {
        let t = self.0.entry(name).or_insert_with(|| TheoremCheck {
            name: name.to_string(),
            applicable: 0,
            violations: Vec::new(),
        });
        if applies {
            t.applicable += 1;
            if !holds {
                t.violations.push(code.clone());
            }
        }
    }
}

/// Runs the selected checks on every member of `u`.
pub fn verify_universe(u: &Universe, checks: &BTreeSet<Check>) -> Result<VerificationReport, EnumError> {
    let n = u.labels().len();
    let mut networks = Vec::with_capacity(u.len());
    let mut counterexamples = Vec::new();
    let mut th = Theorems::default();

    let phylo_groups = if checks.contains(&Check::Phylo) && n >= 3 {
        let mut keys = Vec::with_capacity(u.len());
        let mut count: HashMap<Vec<CanonicalCode>, Vec<usize>> = HashMap::new();
        for (i, (m, _)) in u.iter().enumerate() {
            let key: Vec<CanonicalCode> = phylo_deck(m).map_err(crate::reconstruct::ReconError::from)?.codes().values().cloned().collect();
            count.entry(key.clone()).or_default().push(i);
            keys.push(key);
        }
        Some((keys, count))
    } else {
        None
    };
    let quarnets = if checks.contains(&Check::Quarnet) && n >= 4 { Some(QuarnetIndex::build(u)?) } else { None };
    let edge_groups = if checks.contains(&Check::Edge) && u.spec().class == NetClass::Binary {
        let mut count: HashMap<Vec<CanonicalCode>, usize> = HashMap::new();
        let mut keys = Vec::with_capacity(u.len());
        for (m, _) in u.iter() {
            let key = crate::decks::edge_deck(m).map_err(crate::reconstruct::ReconError::from)?.code_multiset();
            *count.entry(key.clone()).or_default() += 1;
            keys.push(key);
        }
        Some((keys, count))
    } else {
        None
    };

    for (i, (net, code)) in u.iter().enumerate() {
        let r = net.reticulation_number();
        let lv = level(net);
        let binary = is_binary(net);
        let mut rep = NetReport {
            code: code.clone(),
            reticulation: r,
            level: lv,
            leaf_reconstructible: None,
            reconstruction_number: None,
            reconstruction_subset: None,
            edge_reconstructible: None,
            phylo_deck_reconstructible: None,
            quarnet_reconstructible: None,
        };

        if checks.contains(&Check::Leaf) || checks.contains(&Check::ReconNumber) {
            let table = candidate_table(net, TargetClass::Any)?;
            let rivals = table.full_deck_rivals();
            let ok = rivals.is_empty();
            if checks.contains(&Check::Leaf) {
                rep.leaf_reconstructible = Some(ok);
                if !ok {
                    let kind = if rivals.iter().any(|c| u.contains(c)) {
                        FailureKind::WeakReconstructibility
                    } else {
                        FailureKind::Recognizability
                    };
                    counterexamples.push(Counterexample { code: code.clone(), kind, rivals, network: net.clone() });
                }
                let first = &table.labels[0];
                let card = crate::decks::delete_leaf(net, first).map_err(crate::reconstruct::ReconError::from)?;
                let own = attachments(&card, first, TargetClass::Any)
                    .iter()
                    .any(|c| crate::equiv::canonical_code(c) == *code);
                th.record("own-card-attachment", true, own, code);
                let k = lv;
                th.record("simple-level-k-6k-5", binary && is_simple(net) && k >= 2 && n + 5 >= 6 * k, ok, code);
                let threshold = (6 * r as i64 - 5).max(5) as usize;
                th.record("binary-threshold", binary && n >= threshold, ok, code);
            }
            if checks.contains(&Check::ReconNumber) {
                let rn = crate::reconstruct::rec_number_from_table(&table);
                let num = rn.number;
                rep.reconstruction_number = num;
                rep.reconstruction_subset = Some(rn.subset);
                let le2 = matches!(num, Some(k) if k <= 2);
                th.record("decomposable-number-le-2", n >= 5 && has_nontrivial_cut_edge(net), le2, code);
                th.record("binary-level-4-number-le-2", n >= 5 && binary && lv <= 4, le2, code);
                if r == 0 && n >= 5 {
                    let star = net.vertex_count() == n + 1;
                    th.record("tree-number", true, num == Some(if star { 3 } else { 2 }), code);
                }
            }
        }

        if checks.contains(&Check::Edge) {
            let rec = edge_reconstructions(net)?;
            let ok = rec.len() == 1;
            rep.edge_reconstructible = Some(ok);
            if !ok {
                counterexamples.push(Counterexample {
                    code: code.clone(),
                    kind: FailureKind::EdgeDeck,
                    rivals: rec.into_iter().map(|(c, _)| c).filter(|c| c != code).collect(),
                    network: net.clone(),
                });
            }
            if let Some(l) = rep.leaf_reconstructible {
                th.record("leaf-implies-edge", l, ok, code);
            }
            if let Some((keys, count)) = &edge_groups {
                let in_universe = count[&keys[i]] == 1;
                th.record("edge-exact-implies-universe", ok, in_universe, code);
            }
        }

        if let Some((keys, groups)) = &phylo_groups {
            let g = &groups[&keys[i]];
            let ok = g.len() == 1;
            rep.phylo_deck_reconstructible = Some(ok);
            if !ok {
                counterexamples.push(Counterexample {
                    code: code.clone(),
                    kind: FailureKind::PhyloDeck,
                    rivals: g.iter().filter(|&&j| j != i).map(|&j| u.code(j).clone()).collect(),
                    network: net.clone(),
                });
            }
        }

        if let Some(q) = &quarnets {
            let g = q.class_of(i);
            let ok = g.len() == 1;
            rep.quarnet_reconstructible = Some(ok);
            if !ok {
                counterexamples.push(Counterexample {
                    code: code.clone(),
                    kind: FailureKind::Quarnets,
                    rivals: g.iter().filter(|&&j| j != i).map(|&j| u.code(j).clone()).collect(),
                    network: net.clone(),
                });
            }
            if let Some(p) = rep.phylo_deck_reconstructible {
                // two networks with the same phylogenetic deck share their quarnets
                th.record("quarnets-imply-phylo-deck", n >= 5 && ok, p, code);
            }
        }

        networks.push(rep);
    }

    let mut by_level: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in &networks {
        let e = by_level.entry(r.level).or_default();
        e.0 += 1;
        if r.leaf_reconstructible == Some(true) {
            e.1 += 1;
        }
    }
    let fractions = if checks.contains(&Check::Leaf) {
        by_level
            .into_iter()
            .map(|(level, (total, ok))| LevelFraction {
                level,
                total,
                leaf_reconstructible: ok,
                fraction: ok as f64 / total as f64,
            })
            .collect()
    } else {
        Vec::new()
    };

    Ok(VerificationReport {
        schema: 1,
        spec: u.spec().clone(),
        checks: checks.iter().copied().collect(),
        total: u.len(),
        networks,
        counterexamples,
        theorem_checks: th.0.into_values().collect(),
        fractions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_leaf_trees() {
        let checks: BTreeSet<Check> = [Check::Leaf, Check::ReconNumber, Check::Edge].into_iter().collect();
        let rep = verify_class(&UniverseSpec::trees(5, false), &checks).unwrap();
        assert_eq!(rep.total, 26);
        assert!(rep.counterexamples.is_empty());
        assert_eq!(rep.theorem_violations(), 0);
        assert_eq!(rep.theorem("tree-number").unwrap().applicable, 26);
    }

    #[test]
    fn four_leaf_trees_fail_within_the_class() {
        let checks: BTreeSet<Check> = [Check::Leaf].into_iter().collect();
        let rep = verify_class(&UniverseSpec::trees(4, true), &checks).unwrap();
        assert_eq!(rep.counterexamples_of(FailureKind::WeakReconstructibility).count(), 3);
    }
}
