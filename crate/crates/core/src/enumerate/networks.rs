//! Universes of binary networks, built by composing trees with simple
//! blobs.
//!
//! Certification: contracting every blob of a binary phylogenetic network
//! `N` gives a phylogenetic tree `T(N)` whose vertices of degree `d >= 4`
//! are all blobs with `d` ports, and whose degree-3 vertices are either
//! tree vertices or 3-port blobs. Cutting the `d` edges at a blob and
//! labelling their ends `p0..p{d-1}` gives a simple binary network on `d`
//! leaves, since a blob vertex carries at most one cut-edge. Enumerating
//! every tree, every choice of blob per vertex and every port labelling
//! therefore reaches every class; dedup by canonical code removes repeats.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::simple::enumerate_simple_on;
use super::trees::{default_labels, enumerate_trees_on};
use super::EnumError;
use crate::equiv::{canonical_code, CanonicalCode};
use crate::netcore::{is_binary, level, Multigraph, PseudoNetwork};

/// Cap on the size of any composed universe.
pub const MAX_UNIVERSE: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetClass {
    Binary,
    Tree,
    NonbinaryTree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub n_leaves: usize,
    pub max_level: usize,
    pub max_reticulation: usize,
    pub class: NetClass,
    pub certified: bool,
}

impl UniverseSpec {
    pub fn binary(n_leaves: usize, max_level: usize, max_reticulation: usize) -> Self {
        UniverseSpec { n_leaves, max_level, max_reticulation, class: NetClass::Binary, certified: false }
    }

    pub fn trees(n_leaves: usize, binary: bool) -> Self {
        UniverseSpec {
            n_leaves,
            max_level: 0,
            max_reticulation: 0,
            class: if binary { NetClass::Tree } else { NetClass::NonbinaryTree },
            certified: false,
        }
    }
}

/// Networks sorted by canonical code.
#[derive(Debug, Clone)]
pub struct Universe {
    spec: UniverseSpec,
    labels: Vec<String>,
    members: Vec<(PseudoNetwork, CanonicalCode)>,
}

impl Universe {
    pub fn spec(&self) -> &UniverseSpec {
        &self.spec
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn net(&self, i: usize) -> &PseudoNetwork {
        &self.members[i].0
    }

    pub fn code(&self, i: usize) -> &CanonicalCode {
        &self.members[i].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PseudoNetwork, &CanonicalCode)> {
        self.members.iter().map(|(n, c)| (n, c))
    }

    pub fn index_of(&self, code: &CanonicalCode) -> Option<usize> {
        self.members.binary_search_by(|(_, c)| c.cmp(code)).ok()
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.index_of(code).is_some()
    }

    /// Ok when `net` belongs to the class the universe enumerates.
    pub fn covers(&self, net: &PseudoNetwork) -> Result<(), String> {
        let ls: Vec<String> = net.label_set().into_iter().collect();
        let mut own = self.labels.clone();
        own.sort();
        if ls != own {
            return Err("label sets differ".into());
        }
        let r = net.reticulation_number();
        let ok = match self.spec.class {
            NetClass::Binary => {
                is_binary(net) && r <= self.spec.max_reticulation && level(net) <= self.spec.max_level
            }
            NetClass::Tree => is_binary(net) && r == 0,
            NetClass::NonbinaryTree => r == 0,
        };
        if ok {
            Ok(())
        } else {
            Err("network lies outside the enumerated class".into())
        }
    }
}

pub fn enumerate_networks(spec: &UniverseSpec) -> Result<Universe, EnumError> {
    enumerate_networks_on(spec, &default_labels(spec.n_leaves))
}

fn check_budget(spec: &UniverseSpec, n: usize) -> Result<(), EnumError> {
    if n < 2 {
        return Err(EnumError::Infeasible(format!("{n} leaves")));
    }
    if n > 6 {
        return Err(EnumError::BudgetExceeded(format!("{n} leaves (at most 6)")));
    }
    if spec.class == NetClass::Binary {
        if spec.max_level > 4 {
            return Err(EnumError::BudgetExceeded(format!("level {} (at most 4)", spec.max_level)));
        }
        // a binary network on n leaves has at most n - 2 blobs
        let effective = spec.max_reticulation.min(spec.max_level * (n - 2));
        let limit = match n {
            ..=4 => usize::MAX,
            5 => 9,
            _ => 4,
        };
        if effective > limit {
            return Err(EnumError::BudgetExceeded(format!(
                "reticulation {effective} at {n} leaves (at most {limit})"
            )));
        }
    }
    Ok(())
}

pub fn enumerate_networks_on(spec: &UniverseSpec, labels: &[String]) -> Result<Universe, EnumError> {
    let n = labels.len();
    check_budget(spec, n)?;
    let mut out_spec = spec.clone();
    out_spec.n_leaves = n;
    out_spec.certified = true;
    let mut found: BTreeMap<CanonicalCode, PseudoNetwork> = BTreeMap::new();
    match spec.class {
        NetClass::Tree | NetClass::NonbinaryTree => {
            out_spec.max_level = 0;
            out_spec.max_reticulation = 0;
            for t in enumerate_trees_on(labels, spec.class == NetClass::Tree) {
                found.insert(canonical_code(&t), t);
            }
        }
        NetClass::Binary => {
            let cap = spec.max_reticulation.min(spec.max_level);
            let mut templates = Templates::new(spec.max_level.min(spec.max_reticulation));
            for t in enumerate_trees_on(labels, cap == 0) {
                compose_all(&t, spec.max_reticulation, &mut templates, &mut found)?;
            }
        }
    }
    let members = found.into_iter().map(|(c, n)| (n, c)).collect();
    Ok(Universe { spec: out_spec, labels: labels.to_vec(), members })
}

/// A simple network on ports `p0..p{d-1}`, reduced to its internal part.
struct Blob {
    reticulation: usize,
    internal: usize,
    edges: Vec<(usize, usize)>,
    /// Internal vertex adjacent to port `i`.
    port_at: Vec<usize>,
}

struct Templates {
    max_level: usize,
    by_ports: BTreeMap<usize, Vec<Blob>>,
}

impl Templates {
    fn new(max_level: usize) -> Self {
        Templates { max_level, by_ports: BTreeMap::new() }
    }

    fn get(&mut self, d: usize) -> &[Blob] {
        let max_level = self.max_level;
        self.by_ports.entry(d).or_insert_with(|| {
            let ports: Vec<String> = (0..d).map(|i| format!("p{i}")).collect();
            let mut v = Vec::new();
            for k in 1..=max_level {
                for s in enumerate_simple_on(k, &ports).expect("ports present") {
                    v.push(Blob::of(&s, &ports, k));
                }
            }
            v
        })
    }
}

impl Blob {
    fn of(s: &PseudoNetwork, ports: &[String], k: usize) -> Blob {
        let mut map = vec![usize::MAX; s.vertex_count()];
        let mut internal = 0;
        for v in 0..s.vertex_count() {
            if s.label(v).is_none() {
                map[v] = internal;
                internal += 1;
            }
        }
        let mut port_at = vec![0; ports.len()];
        let mut edges = Vec::new();
        for &(a, b) in s.edges() {
            match (s.label(a), s.label(b)) {
                (None, None) => edges.push((map[a], map[b])),
                (Some(l), None) | (None, Some(l)) => {
                    let u = if s.label(a).is_none() { a } else { b };
                    let i = ports.iter().position(|p| p == l).expect("port label");
                    port_at[i] = map[u];
                }
                (Some(_), Some(_)) => unreachable!("simple networks have internal vertices"),
            }
        }
        Blob { reticulation: k, internal, edges, port_at }
    }
}

#[derive(Clone, Copy)]
enum Choice {
    Plain,
    Blob(usize),
}

fn compose_all(
    t: &PseudoNetwork,
    max_ret: usize,
    templates: &mut Templates,
    found: &mut BTreeMap<CanonicalCode, PseudoNetwork>,
) -> Result<(), EnumError> {
    let deg = t.degrees();
    let internal: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.label(v).is_none()).collect();
    if internal.iter().any(|&v| deg[v] > 3) && templates.max_level == 0 {
        return Ok(());
    }
    for &v in &internal {
        templates.get(deg[v]);
    }
    let mut choice = vec![Choice::Plain; internal.len()];
    fill(t, &internal, &deg, 0, max_ret, &mut choice, templates, found)
}

#[allow(clippy::too_many_arguments)]
fn fill(
    t: &PseudoNetwork,
    internal: &[usize],
    deg: &[usize],
    i: usize,
    budget: usize,
    choice: &mut Vec<Choice>,
    templates: &Templates,
    found: &mut BTreeMap<CanonicalCode, PseudoNetwork>,
) -> Result<(), EnumError> {
    if i == internal.len() {
        let g = build(t, internal, choice, templates);
        let net = PseudoNetwork::new(g).expect("composition is a network");
        found.entry(canonical_code(&net)).or_insert(net);
        if found.len() > MAX_UNIVERSE {
            return Err(EnumError::BudgetExceeded(format!("more than {MAX_UNIVERSE} networks")));
        }
        return Ok(());
    }
    let d = deg[internal[i]];
    if d == 3 {
        choice[i] = Choice::Plain;
        fill(t, internal, deg, i + 1, budget, choice, templates, found)?;
    }
    for (b, blob) in templates.by_ports[&d].iter().enumerate() {
        if blob.reticulation <= budget {
            choice[i] = Choice::Blob(b);
            fill(t, internal, deg, i + 1, budget - blob.reticulation, choice, templates, found)?;
        }
    }
    Ok(())
}

fn build(t: &PseudoNetwork, internal: &[usize], choice: &[Choice], templates: &Templates) -> Multigraph {
    let inc = t.incidence();
    let mut g = Multigraph::new();
    for v in 0..t.vertex_count() {
        match t.label(v) {
            Some(l) => g.add_leaf(l.to_string()),
            None => g.add_internal(),
        };
    }
    let mut replaced = Vec::new();
    // endpoint of tree edge `e` at replaced vertex `v`
    let mut port_end: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &v) in internal.iter().enumerate() {
        if let Choice::Blob(b) = choice[i] {
            let blob = &templates.by_ports[&inc[v].len()][b];
            replaced.push(v);
            let base = g.vertex_count();
            for _ in 0..blob.internal {
                g.add_internal();
            }
            for &(a, c) in &blob.edges {
                g.add_edge(base + a, base + c);
            }
            for (p, &e) in inc[v].iter().enumerate() {
                port_end.insert((e, v), base + blob.port_at[p]);
            }
        }
    }
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        let a2 = port_end.get(&(e, a)).copied().unwrap_or(a);
        let b2 = port_end.get(&(e, b)).copied().unwrap_or(b);
        g.add_edge(a2, b2);
    }
    let mut keep = vec![true; g.vertex_count()];
    for v in replaced {
        keep[v] = false;
    }
    g.retain_vertices(&keep).0
}
