//! `phylodeck`: decks, reconstruction and enumeration from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 invalid input, 3 no unique answer.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use phylodeck::decks::{edge_deck, phylo_deck, quarnets_by_subset, x_deck, CardIndex, Deck, DeckKind};
use phylodeck::enumerate::{enumerate_networks, verify_universe, Check, EnumError, UniverseSpec};
use phylodeck::equiv::CanonicalCode;
use phylodeck::netcore::{
    is_binary, is_decomposable, is_phylogenetic, is_simple, level, parse_pnet, to_dot, to_pnet, PseudoNetwork,
};
use phylodeck::reconstruct::{
    reconstruct_decomposable, reconstruct_from_quarnets, reconstruct_tree_from_deck, reconstruction_number,
    reconstructions_from_cards, Method, ReconError, ReconstructionReport, TargetClass,
};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "phylodeck", version, about = "Deck-based reconstruction of unrooted phylogenetic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leaf-deleted cards (X-deck).
    Deck(DeckArgs),
    /// Cards after phylogenetic clean-up.
    PhyloDeck(DeckArgs),
    /// Edge-deleted cards in canonical edge order.
    EdgeDeck(DeckArgs),
    /// Quarnets on every 4-subset of the leaves.
    Quarnets(DeckArgs),
    /// Reconstruct a network from a leaf-deck directory.
    Reconstruct(ReconstructArgs),
    /// Leaf-reconstruction number of a network.
    ReconNumber(InArgs),
    /// Recover a network from a quarnet directory within a universe.
    AssembleQuarnets(AssembleArgs),
    /// List a universe of binary networks.
    Enumerate(EnumerateArgs),
    /// Run reconstructibility checks over a universe.
    Verify(VerifyArgs),
    /// Render a network as Graphviz DOT.
    ExportDot(InArgs),
    /// Parse a network and report its structure.
    Validate(InArgs),
}

#[derive(Args)]
struct InArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DeckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Write one file per card plus `manifest.json`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Only the card of this leaf (leaf and phylo decks).
    #[arg(long)]
    leaf: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Deck directory written by `deck --out-dir`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma-separated card indices to use instead of the full deck.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<String>>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct UniverseArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_level: usize,
    /// Defaults to the largest reticulation the level allows.
    #[arg(long)]
    max_ret: Option<usize>,
}

impl UniverseArgs {
    fn spec(&self) -> UniverseSpec {
        let r = self.max_ret.unwrap_or(self.max_level * self.n.saturating_sub(2));
        UniverseSpec::binary(self.n, self.max_level, r)
    }
}

#[derive(Args)]
struct AssembleArgs {
    /// Quarnet directory written by `quarnets --out-dir`.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    max_level: usize,
    #[arg(long)]
    max_ret: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    universe: UniverseArgs,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    universe: UniverseArgs,
    /// Checks to run; repeat or separate with commas.
    #[arg(long, value_delimiter = ',', required = true)]
    check: Vec<Check>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }

    fn invalid(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::invalid(format!("{e:#}"))
    }
}

impl From<ReconError> for Failure {
    fn from(e: ReconError) -> Self {
        let code = match e {
            ReconError::Ambiguous(_) | ReconError::NoCandidate => 3,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::Check(r) => r.into(),
            e => Failure::usage(e.to_string()),
        }
    }
}

type Res = Result<(), Failure>;

#[derive(Serialize, Deserialize)]
struct Manifest {
    schema: u32,
    kind: String,
    labels: Vec<String>,
    deck_id: String,
    cards: Vec<CardEntry>,
}

#[derive(Serialize, Deserialize)]
struct CardEntry {
    index: String,
    file: String,
    code: CanonicalCode,
}

fn read_net(path: &Path) -> Result<PseudoNetwork, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_pnet(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn read_phylo(path: &Path) -> Result<PseudoNetwork, Failure> {
    let net = read_net(path)?;
    if !is_phylogenetic(&net) {
        return Err(Failure::invalid(format!("{} is not a phylogenetic network", path.display())));
    }
    Ok(net)
}

fn print_json(v: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

/// Writes `files` and `manifest.json` into `dir`.
fn write_dir(dir: &Path, files: &[(String, String)], manifest: &Manifest) -> Res {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, text) in files {
        fs::write(dir.join(name), text).with_context(|| format!("writing {name}"))?;
    }
    let text = serde_json::to_string_pretty(manifest).expect("serializable");
    fs::write(dir.join("manifest.json"), text + "\n").context("writing manifest")?;
    Ok(())
}

fn file_stem(i: &CardIndex) -> String {
    format!("card_{i}.pnet")
}

fn emit_deck(deck: &Deck, kind: &str, args: &DeckArgs) -> Res {
    let deck = match &args.leaf {
        Some(x) => {
            let keep: BTreeSet<CardIndex> = [CardIndex::Leaf(x.clone())].into();
            if deck.card(&CardIndex::Leaf(x.clone())).is_none() {
                return Err(Failure::invalid(format!("no leaf {x}")));
            }
            deck.restrict(&keep)
        }
        None => deck.clone(),
    };
    let files: Vec<(String, String)> =
        deck.cards().iter().map(|(i, c)| (file_stem(i), to_pnet(c))).collect();
    let manifest = Manifest {
        schema: 1,
        kind: kind.to_string(),
        labels: deck.labels().iter().cloned().collect(),
        deck_id: deck.deck_id(),
        cards: deck
            .cards()
            .keys()
            .map(|i| CardEntry { index: i.to_string(), file: file_stem(i), code: deck.code(i).unwrap().clone() })
            .collect(),
    };
    if let Some(dir) = &args.out_dir {
        write_dir(dir, &files, &manifest)?;
    }
    if args.json {
        print_json(&manifest);
    } else if args.out_dir.is_none() {
        for ((_, text), e) in files.iter().zip(&manifest.cards) {
            println!("# card {}\n{text}", e.index);
        }
    } else {
        println!("{} cards written to {}", files.len(), args.out_dir.as_ref().unwrap().display());
    }
    Ok(())
}

fn subset_name(s: &BTreeSet<String>) -> String {
    s.iter().cloned().collect::<Vec<_>>().join("_")
}

fn cmd_quarnets(args: &DeckArgs) -> Res {
    let net = read_phylo(&args.input)?;
    let qs = quarnets_by_subset(&net).map_err(|e| Failure::invalid(e.to_string()))?;
    let files: Vec<(String, String)> =
        qs.iter().map(|(s, q)| (format!("quarnet_{}.pnet", subset_name(s)), to_pnet(q))).collect();
    let manifest = Manifest {
        schema: 1,
        kind: "quarnets".into(),
        labels: net.label_set().into_iter().collect(),
        deck_id: String::new(),
        cards: qs
            .iter()
            .map(|(s, q)| CardEntry {
                index: subset_name(s),
                file: format!("quarnet_{}.pnet", subset_name(s)),
                code: phylodeck::canonical_code(q),
            })
            .collect(),
    };
    if let Some(dir) = &args.out_dir {
        write_dir(dir, &files, &manifest)?;
    }
    if args.json {
        print_json(&manifest);
    } else if args.out_dir.is_none() {
        for (name, text) in &files {
            println!("# {name}\n{text}");
        }
    } else {
        println!("{} quarnets written to {}", files.len(), args.out_dir.as_ref().unwrap().display());
    }
    Ok(())
}

fn read_manifest(dir: &Path) -> Result<Manifest, Failure> {
    let path = dir.join("manifest.json");
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("manifest: {e}")))?;
    if m.schema != 1 {
        return Err(Failure::invalid(format!("unsupported manifest schema {}", m.schema)));
    }
    Ok(m)
}

/// Loads the cards of a manifest and checks their codes.
fn load_cards(dir: &Path, m: &Manifest) -> Result<BTreeMap<String, PseudoNetwork>, Failure> {
    let mut cards = BTreeMap::new();
    for e in &m.cards {
        let text = fs::read_to_string(dir.join(&e.file)).with_context(|| format!("reading {}", e.file))?;
        let card = phylodeck::netcore::parse_pnet_union(&text)
            .map_err(|err| Failure::invalid(format!("{}: {err}", e.file)))?;
        if phylodeck::canonical_code(&card) != e.code {
            return Err(Failure::invalid(format!("{}: code does not match the manifest", e.file)));
        }
        cards.insert(e.index.clone(), card);
    }
    Ok(cards)
}

#[derive(Serialize)]
struct ReconOutput<'a> {
    schema: u32,
    #[serde(flatten)]
    report: &'a ReconstructionReport,
}

fn finish_report(report: ReconstructionReport, out_dir: Option<&Path>, json: bool) -> Res {
    if json {
        print_json(&ReconOutput { schema: 1, report: &report });
    }
    match &report.witness {
        Some(w) => {
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).context("creating output directory")?;
                fs::write(dir.join("network.pnet"), to_pnet(w)).context("writing network")?;
            }
            if !json {
                print!("{}", to_pnet(w));
            }
            Ok(())
        }
        None => Err(Failure { code: 3, msg: format!("{} candidate classes", report.candidates.len()) }),
    }
}

fn cmd_reconstruct(args: &ReconstructArgs) -> Res {
    let m = read_manifest(&args.input)?;
    if m.kind != "leaf" {
        return Err(Failure::invalid(format!("reconstruct needs a leaf deck, got {}", m.kind)));
    }
    let cards = load_cards(&args.input, &m)?.into_iter().map(|(i, c)| (CardIndex::Leaf(i), c)).collect();
    let deck = Deck::new(DeckKind::Leaf, m.labels.iter().cloned().collect(), cards);
    if deck.deck_id() != m.deck_id {
        return Err(Failure::invalid("deck id does not match the manifest"));
    }
    let report = match &args.subset {
        Some(s) => {
            let subset: BTreeSet<CardIndex> = s.iter().map(|x| CardIndex::Leaf(x.clone())).collect();
            reconstructions_from_cards(&deck, &subset, TargetClass::Any)?
        }
        None => {
            let all: Vec<CardIndex> = deck.indices().cloned().collect();
            let found = |method, n: PseudoNetwork| {
                let c = phylodeck::canonical_code(&n);
                ReconstructionReport::new(deck.deck_id(), method, all.clone(), vec![(c, n)])
            };
            if let Ok(t) = reconstruct_tree_from_deck(&deck) {
                found(Method::TreeSplits, t)
            } else if let Ok(n) = reconstruct_decomposable(&deck) {
                found(Method::Decomposable, n)
            } else {
                reconstructions_from_cards(&deck, &all.iter().cloned().collect(), TargetClass::Any)?
            }
        }
    };
    finish_report(report, args.out_dir.as_deref(), args.json)
}

#[derive(Serialize)]
struct NumberOutput {
    schema: u32,
    number: Option<usize>,
    subset: Vec<String>,
}

fn cmd_recon_number(args: &InArgs) -> Res {
    let net = read_phylo(&args.input)?;
    let r = reconstruction_number(&net)?;
    if args.json {
        print_json(&NumberOutput { schema: 1, number: r.number, subset: r.subset.clone() });
    } else {
        match r.number {
            Some(k) => println!("{k} ({})", r.subset.join(",")),
            None => println!("not leaf-reconstructible"),
        }
    }
    if r.number.is_none() {
        return Err(Failure { code: 3, msg: "the full deck does not determine the network".into() });
    }
    Ok(())
}

fn cmd_assemble(args: &AssembleArgs) -> Res {
    let m = read_manifest(&args.input)?;
    if m.kind != "quarnets" {
        return Err(Failure::invalid(format!("assemble-quarnets needs a quarnet directory, got {}", m.kind)));
    }
    let quarnets: Vec<PseudoNetwork> = load_cards(&args.input, &m)?.into_values().collect();
    let n = m.labels.len();
    let r = args.max_ret.unwrap_or(args.max_level * n.saturating_sub(2));
    let u = phylodeck::enumerate::enumerate_networks_on(&UniverseSpec::binary(n, args.max_level, r), &m.labels)?;
    let labels: BTreeSet<String> = m.labels.iter().cloned().collect();
    let net = reconstruct_from_quarnets(&quarnets, &labels, &u)?;
    let c = phylodeck::canonical_code(&net);
    let report = ReconstructionReport::new(String::new(), Method::UniverseFilter, Vec::new(), vec![(c, net)]);
    finish_report(report, args.out_dir.as_deref(), args.json)
}

#[derive(Serialize)]
struct EnumerateOutput<'a> {
    schema: u32,
    spec: &'a UniverseSpec,
    total: usize,
    codes: Vec<&'a CanonicalCode>,
}

fn cmd_enumerate(args: &EnumerateArgs) -> Res {
    let u = enumerate_networks(&args.universe.spec())?;
    if let Some(dir) = &args.out_dir {
        let files: Vec<(String, String)> =
            u.iter().enumerate().map(|(i, (n, _))| (format!("net_{i}.pnet"), to_pnet(n))).collect();
        let manifest = Manifest {
            schema: 1,
            kind: "universe".into(),
            labels: u.labels().to_vec(),
            deck_id: String::new(),
            cards: u
                .iter()
                .enumerate()
                .map(|(i, (_, c))| CardEntry {
                    index: i.to_string(),
                    file: format!("net_{i}.pnet"),
                    code: c.clone(),
                })
                .collect(),
        };
        write_dir(dir, &files, &manifest)?;
    }
    if args.json {
        print_json(&EnumerateOutput { schema: 1, spec: u.spec(), total: u.len(), codes: u.iter().map(|(_, c)| c).collect() });
    } else {
        println!("{} networks", u.len());
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Res {
    let checks: BTreeSet<Check> = args.check.iter().copied().collect();
    let u = enumerate_networks(&args.universe.spec())?;
    let report = verify_universe(&u, &checks)?;
    if args.json {
        print_json(&report);
    } else {
        println!("{} networks, {} counterexamples", report.total, report.counterexamples.len());
        for t in &report.theorem_checks {
            println!("{}: {} applicable, {} violations", t.name, t.applicable, t.violations.len());
        }
        for f in &report.fractions {
            println!("level {}: {}/{} leaf-reconstructible", f.level, f.leaf_reconstructible, f.total);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Summary {
    schema: u32,
    leaves: Vec<String>,
    vertices: usize,
    edges: usize,
    reticulation: usize,
    level: usize,
    binary: bool,
    phylogenetic: bool,
    simple: bool,
    decomposable: bool,
    code: CanonicalCode,
}

fn cmd_validate(args: &InArgs) -> Res {
    let net = read_net(&args.input)?;
    let s = Summary {
        schema: 1,
        leaves: net.label_set().into_iter().collect(),
        vertices: net.vertex_count(),
        edges: net.edge_count(),
        reticulation: net.reticulation_number(),
        level: level(&net),
        binary: is_binary(&net),
        phylogenetic: is_phylogenetic(&net),
        simple: is_simple(&net),
        decomposable: is_decomposable(&net),
        code: phylodeck::canonical_code(&net),
    };
    if args.json {
        print_json(&s);
    } else {
        println!(
            "leaves {} | vertices {} | edges {} | reticulation {} | level {} | binary {} | phylogenetic {} | simple {} | decomposable {}",
            s.leaves.join(","),
            s.vertices,
            s.edges,
            s.reticulation,
            s.level,
            s.binary,
            s.phylogenetic,
            s.simple,
            s.decomposable
        );
    }
    if !s.phylogenetic {
        return Err(Failure::invalid("not a phylogenetic network"));
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    match cli.command {
        Command::Deck(a) => {
            let net = read_phylo(&a.input)?;
            emit_deck(&x_deck(&net).map_err(|e| Failure::invalid(e.to_string()))?, "leaf", &a)
        }
        Command::PhyloDeck(a) => {
            let net = read_phylo(&a.input)?;
            emit_deck(&phylo_deck(&net).map_err(|e| Failure::invalid(e.to_string()))?, "phylo", &a)
        }
        Command::EdgeDeck(a) => {
            if a.leaf.is_some() {
                return Err(Failure::usage("--leaf does not apply to edge-decks"));
            }
            let net = read_phylo(&a.input)?;
            emit_deck(&edge_deck(&net).map_err(|e| Failure::invalid(e.to_string()))?, "edge", &a)
        }
        Command::Quarnets(a) => cmd_quarnets(&a),
        Command::Reconstruct(a) => cmd_reconstruct(&a),
        Command::ReconNumber(a) => cmd_recon_number(&a),
        Command::AssembleQuarnets(a) => cmd_assemble(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::ExportDot(a) => {
            let net = read_net(&a.input)?;
            print!("{}", to_dot(&net));
            Ok(())
        }
        Command::Validate(a) => cmd_validate(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
