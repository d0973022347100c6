//! Shared helpers: fixtures, random corpora and brute-force oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use phylodeck::equiv::{canonical_code, CanonicalCode};
use phylodeck::netcore::{
    attach_leaf, attach_leaf_to_vertex, is_phylogenetic, parse_graph, parse_pnet, Multigraph, PseudoNetwork,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.pnet"))
}

pub fn fixture(name: &str) -> PseudoNetwork {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_pnet(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_graph(name: &str) -> Multigraph {
    parse_graph(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn double_factorial(m: i64) -> u64 {
    if m <= 1 {
        1
    } else {
        m as u64 * double_factorial(m - 2)
    }
}

/// Random tree on `labels` by sequential insertion; nonbinary trees also
/// attach to internal vertices.
pub fn random_tree(r: &mut ChaCha8Rng, labels: &[String], binary: bool) -> PseudoNetwork {
    let mut g = Multigraph::new();
    let a = g.add_leaf(labels[0].clone());
    let b = g.add_leaf(labels[1].clone());
    g.add_edge(a, b);
    let mut t = PseudoNetwork::new(g).unwrap();
    for l in &labels[2..] {
        let internal: Vec<usize> = (0..t.vertex_count()).filter(|&v| t.label(v).is_none()).collect();
        t = if !binary && !internal.is_empty() && r.gen_bool(0.4) {
            attach_leaf_to_vertex(&t, l, *internal.choose(r).unwrap()).unwrap()
        } else {
            let e = r.gen_range(0..t.edge_count());
            attach_leaf(&t, l, e).unwrap()
        };
    }
    t
}

/// Adds a chord between two distinct edges.
pub fn add_chord(r: &mut ChaCha8Rng, g: &Multigraph) -> Multigraph {
    let m = g.edge_count();
    let e1 = r.gen_range(0..m);
    let mut e2 = r.gen_range(0..m - 1);
    if e2 >= e1 {
        e2 += 1;
    }
    let mut labels = g.labels().to_vec();
    let p = labels.len();
    labels.push(None);
    labels.push(None);
    let q = p + 1;
    let mut edges = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if i == e1 {
            edges.push((a, p));
            edges.push((p, b));
        } else if i == e2 {
            edges.push((a, q));
            edges.push((q, b));
        } else {
            edges.push((a, b));
        }
    }
    edges.push((p, q));
    Multigraph::from_parts(labels, edges)
}

/// Random binary phylogenetic network with `ret` chords, retrying until
/// the result is phylogenetic.
pub fn random_binary_network(r: &mut ChaCha8Rng, labels: &[String], ret: usize) -> PseudoNetwork {
    loop {
        let mut g = random_tree(r, labels, true).into_graph();
        for _ in 0..ret {
            g = add_chord(r, &g);
        }
        if is_phylogenetic(&g) {
            return PseudoNetwork::new(g).unwrap();
        }
    }
}

/// Mixed corpus: binary networks with up to three reticulations and
/// nonbinary trees, on 3 to 8 leaves.
pub fn random_corpus_member(r: &mut ChaCha8Rng) -> PseudoNetwork {
    let n = r.gen_range(3..=8);
    let ls = labels(n);
    if r.gen_bool(0.2) {
        random_tree(r, &ls, false)
    } else {
        let ret = r.gen_range(0..=3);
        random_binary_network(r, &ls, ret)
    }
}

/// Same graph with vertex ids and edge order shuffled.
pub fn shuffled(r: &mut ChaCha8Rng, g: &Multigraph) -> Multigraph {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let mut labels = vec![None; n];
    for v in 0..n {
        labels[perm[v]] = g.label(v).map(str::to_string);
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| if r.gen_bool(0.5) { (perm[a], perm[b]) } else { (perm[b], perm[a]) })
        .collect();
    edges.shuffle(r);
    Multigraph::from_parts(labels, edges)
}

fn multiplicities(g: &Multigraph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(a, b) in g.edges() {
        *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    }
    m
}

/// Label-preserving isomorphism by plain backtracking.
pub fn brute_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() || a.label_set() != b.label_set() {
        return false;
    }
    let (ma, mb) = (multiplicities(a), multiplicities(b));
    let (da, db) = (a.degrees(), b.degrees());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn mult(m: &BTreeMap<(usize, usize), usize>, x: usize, y: usize) -> usize {
        *m.get(&(x.min(y), x.max(y))).unwrap_or(&0)
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        v: usize,
        a: &Multigraph,
        b: &Multigraph,
        ma: &BTreeMap<(usize, usize), usize>,
        mb: &BTreeMap<(usize, usize), usize>,
        da: &[usize],
        db: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == a.vertex_count() {
            return true;
        }
        for w in 0..b.vertex_count() {
            if used[w] || da[v] != db[w] || a.label(v) != b.label(w) {
                continue;
            }
            if (0..v).any(|u| mult(ma, u, v) != mult(mb, map[u], w)) || mult(ma, v, v) != mult(mb, w, w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(v + 1, a, b, ma, mb, da, db, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
    go(0, a, b, &ma, &mb, &da, &db, &mut map, &mut used)
}

/// Every binary phylogenetic network with `n` leaves and reticulation
/// `r`, built from scratch: attach each leaf to one of the `n + 2r - 2`
/// internal vertices and complete all internal degrees to 3 with every
/// loopless multigraph.
pub fn naive_universe(labels: &[String], r: usize) -> BTreeSet<CanonicalCode> {
    let n = labels.len();
    let mut out = BTreeSet::new();
    if n == 2 && r == 0 {
        let mut g = Multigraph::new();
        let a = g.add_leaf(labels[0].clone());
        let b = g.add_leaf(labels[1].clone());
        g.add_edge(a, b);
        out.insert(canonical_code(&g));
        return out;
    }
    let k = n + 2 * r;
    if k < 2 + 1 {
        return out;
    }
    let k = k - 2;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let mut attach = vec![0usize; n];
    loop {
        let mut room = vec![3usize; k];
        let mut ok = true;
        for &v in &attach {
            if room[v] == 0 {
                ok = false;
                break;
            }
            room[v] -= 1;
        }
        if ok {
            let mut mult = vec![0usize; pairs.len()];
            fill(0, &pairs, &mut room, &mut mult, &mut |mult| {
                let mut lab: Vec<Option<String>> = vec![None; k];
                lab.extend(labels.iter().cloned().map(Some));
                let mut edges = Vec::new();
                for (i, &v) in attach.iter().enumerate() {
                    edges.push((v, k + i));
                }
                for (p, &(a, b)) in pairs.iter().enumerate() {
                    for _ in 0..mult[p] {
                        edges.push((a, b));
                    }
                }
                let g = Multigraph::from_parts(lab, edges);
                if is_phylogenetic(&g) {
                    out.insert(canonical_code(&g));
                }
            });
        }
        // next attachment tuple
        let mut i = 0;
        while i < n {
            attach[i] += 1;
            if attach[i] < k {
                break;
            }
            attach[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

fn fill(p: usize, pairs: &[(usize, usize)], room: &mut [usize], mult: &mut [usize], emit: &mut dyn FnMut(&[usize])) {
    if p == pairs.len() {
        if room.iter().all(|&x| x == 0) {
            emit(mult);
        }
        return;
    }
    let (i, j) = pairs[p];
    let last_of_row = p + 1 == pairs.len() || pairs[p + 1].0 != i;
    for m in 0..=room[i].min(room[j]) {
        if last_of_row && room[i] != m {
            continue;
        }
        room[i] -= m;
        room[j] -= m;
        mult[p] = m;
        fill(p + 1, pairs, room, mult, emit);
        room[i] += m;
        room[j] += m;
    }
    mult[p] = 0;
}
