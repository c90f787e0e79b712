//! `lpa`: lattice and quotient computations for Leavitt path algebras over
//! `Z` and `Z_n`, driven by graph/function JSON files.
//!
//! Exit codes: 0 success, 1 validation failure (invalid f/phi, non-admissible
//! pair, row-finiteness violation, failed cross-check), 2 malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lpa_core::construct::{porcupine, quotient_graph, PorcupineGraph, QuotientGraph};
use lpa_core::graded::{
    classify, ext_domain, f_from_phi, max_basic_pair, membership, phi_from_f, validate_phi,
    validate_saturated, ExtVertex, GradedIdealFn, IdealClassKind, SaturatedFn,
};
use lpa_core::graph::{Graph, Mult, VertexSet};
use lpa_core::lattice::{enumerate_he, AdmissiblePair, PairLattice};
use lpa_core::quotient::{cross_check, decompose, quotient_report};
use lpa_core::symbols::SymbolTable;
use lpa_core::Error;

#[derive(Parser)]
#[command(name = "lpa", version, about = "Leavitt path algebra lattice and quotient calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Porcupine truncation depth (default 3·|E^0|; env LPA_DEPTH as fallback).
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Symbolic names for generators, e.g. `p=2,q=3`; output then prints
    /// `Z_p`, `Z_pq` instead of numbers.
    #[arg(long, global = true)]
    symbols: Option<String>,
    /// Seed for the randomized instance generators (reserved for test
    /// tooling; accepted so scripted runs stay uniform).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// The lattice H_E of hereditary saturated vertex sets.
    Lattice { graph: PathBuf },
    /// The lattice T_E* of nonzero admissible pairs (Hasse diagram).
    Pairs { graph: PathBuf },
    /// Condition (K) and the all-ideals-graded criterion.
    CheckK { graph: PathBuf },
    /// Cycles whose base carries exactly one simple closed path.
    Cu { graph: PathBuf },
    /// Check a saturated-function candidate.
    ValidateF {
        graph: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// Check a graded-ideal-function candidate.
    ValidatePhi {
        graph: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    /// The graded ideal function phi_f of a saturated function.
    Phi {
        graph: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// The saturated function f_phi of a graded ideal function.
    F {
        graph: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    /// Classify the graded ideal: basic, I-basic, or general.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// Is k·x in the graded ideal? x is a vertex, or v^H via --hset.
    Member {
        graph: PathBuf,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long, short = 'k', allow_hyphen_values = true)]
        scalar: i64,
        #[arg(long)]
        vertex: String,
        /// Comma-separated H making the query element v^H.
        #[arg(long)]
        hset: Option<String>,
    },
    /// The admissible pair of the maximal graded basic ideal inside A.
    MaxBasic {
        graph: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// The quotient graph E\(H,S).
    QuotientGraph {
        graph: PathBuf,
        /// Comma-separated hereditary saturated H.
        #[arg(long)]
        hset: String,
        /// Comma-separated S ⊆ B_H.
        #[arg(long)]
        sset: Option<String>,
    },
    /// The porcupine graph _X E.
    Porcupine {
        graph: PathBuf,
        /// Comma-separated X ⊆ E^0.
        #[arg(long)]
        x: String,
    },
    /// Full quotient report: classification, target, decomposition.
    Quotient {
        graph: PathBuf,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Decompose L_R(E)/A into a direct sum over porcupine graphs.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Check the two quotient theorems against each other.
    CrossCheck {
        graph: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Validation(_) | Error::NotRowFinite(_) | Error::Internal(_) => 1,
        Error::UnknownVertex(_) | Error::InvalidGraph(_) | Error::InvalidInput(_) | Error::RingMismatch(_, _) => 2,
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read `{}`: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    Graph::from_json_str(&read_file(path)?)
}

fn load_f(path: &Path, g: &Graph, l: &PairLattice) -> Result<SaturatedFn, Error> {
    let docs = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::InvalidInput(format!("bad f JSON in `{}`: {e}", path.display())))?;
    SaturatedFn::from_docs(g, l, docs)
}

fn load_phi(path: &Path, g: &Graph) -> Result<GradedIdealFn, Error> {
    let docs = serde_json::from_str(&read_file(path)?)
        .map_err(|e| Error::InvalidInput(format!("bad phi JSON in `{}`: {e}", path.display())))?;
    GradedIdealFn::from_docs(g, docs)
}

/// Accepts either an f or a phi file and returns both forms.
fn load_function(
    f: &Option<PathBuf>,
    phi: &Option<PathBuf>,
    g: &Graph,
    l: &PairLattice,
) -> Result<(SaturatedFn, GradedIdealFn), Error> {
    match (f, phi) {
        (Some(fp), None) => {
            let f = load_f(fp, g, l)?;
            let phi = phi_from_f(g, l, &f)?;
            Ok((f, phi))
        }
        (None, Some(pp)) => {
            let phi = load_phi(pp, g)?;
            let report = validate_phi(g, l, &phi)?;
            if !report.is_valid() {
                return Err(Error::Validation(format!(
                    "phi is not a graded ideal function; first violation: {}",
                    report.violations[0]
                )));
            }
            let f = f_from_phi(l, &phi)?;
            Ok((f, phi))
        }
        _ => Err(Error::InvalidInput("pass exactly one of --f or --phi".into())),
    }
}

fn csv_set(text: &str) -> VertexSet {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn depth_for(cli: &Cli, g: &Graph) -> Result<usize, Error> {
    if let Some(d) = cli.depth {
        return Ok(d);
    }
    if let Ok(env) = std::env::var("LPA_DEPTH") {
        return env
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad LPA_DEPTH value `{env}`")));
    }
    Ok(3 * g.vertex_count().max(1))
}

fn symbols_for(cli: &Cli) -> Result<SymbolTable, Error> {
    match &cli.symbols {
        Some(text) => SymbolTable::parse(text),
        None => Ok(SymbolTable::empty()),
    }
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
}

fn fmt_vset(set: &VertexSet) -> String {
    let names: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
    format!("{{{}}}", names.join(","))
}

fn fmt_pair(p: &AdmissiblePair) -> String {
    format!("({}, {})", fmt_vset(p.h()), fmt_vset(p.s()))
}

fn hasse_dot(name: &str, labels: &[String], covers: &[(usize, usize)]) -> String {
    let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
    for l in labels {
        s.push_str(&format!("  \"{l}\";\n"));
    }
    for (a, b) in covers {
        s.push_str(&format!("  \"{}\" -> \"{}\";\n", labels[*a], labels[*b]));
    }
    s.push_str("}\n");
    s
}

fn graph_text(g: &Graph) -> String {
    let mut s = format!("vertices: {}\nedges:\n", g.vertex_names().join(", "));
    for b in g.bundles() {
        let mult = match b.mult {
            Mult::Finite(1) => String::new(),
            m => format!(" [x{m}]"),
        };
        s.push_str(&format!("  {}: {} -> {}{}\n", b.id, g.name(b.src), g.name(b.dst), mult));
    }
    if g.bundles().is_empty() {
        s.push_str("  (none)\n");
    }
    s
}

fn quotient_graph_json(q: &QuotientGraph) -> Value {
    json!({
        "graph": q.graph.to_doc(),
        "vertex_origin": q.vertex_origin,
        "edge_origin": q.edge_origin,
    })
}

fn porcupine_json(p: &PorcupineGraph) -> Value {
    json!({
        "graph": p.graph.to_doc(),
        "infinite": p.infinite,
        "truncated": p.truncated,
        "depth": p.depth,
        "spine": p.spine,
    })
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.cmd {
        Cmd::Lattice { graph } => {
            let g = load_graph(graph)?;
            let he = enumerate_he(&g)?;
            let labels: Vec<String> = he.iter().map(fmt_vset).collect();
            let covers = subset_covers(&he);
            match cli.format {
                Format::Text => {
                    println!("H_E ({} elements)", he.len());
                    for (i, l) in labels.iter().enumerate() {
                        println!("  {i}: {l}");
                    }
                    println!("covers");
                    for (a, b) in &covers {
                        println!("  {a} < {b}");
                    }
                }
                Format::Json => print_json(&json!({ "elements": he, "covers": covers })),
                Format::Dot => print!("{}", hasse_dot("H_E", &labels, &covers)),
            }
        }
        Cmd::Pairs { graph } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let idxs: Vec<usize> = l.star_indices().collect();
            let pairs: Vec<&AdmissiblePair> = idxs.iter().map(|&i| &l.pairs()[i]).collect();
            let labels: Vec<String> = pairs.iter().map(|p| fmt_pair(p)).collect();
            let covers = l.covers_within(&idxs);
            match cli.format {
                Format::Text => {
                    println!("T_E* ({} elements)", pairs.len());
                    for (i, label) in labels.iter().enumerate() {
                        println!("  {i}: {label}");
                    }
                    println!("covers");
                    for (a, b) in &covers {
                        println!("  {a} < {b}");
                    }
                }
                Format::Json => print_json(&json!({ "elements": pairs, "covers": covers })),
                Format::Dot => print!("{}", hasse_dot("T_E_star", &labels, &covers)),
            }
        }
        Cmd::CheckK { graph } => {
            let g = load_graph(graph)?;
            let (k, l) = (g.condition_k(), g.condition_l());
            match cli.format {
                Format::Json => print_json(&json!({
                    "condition_l": l,
                    "condition_k": k,
                    "all_ideals_graded": k,
                })),
                _ => println!("Condition (K): {k}; all ideals graded: {k}"),
            }
        }
        Cmd::Cu { graph } => {
            let g = load_graph(graph)?;
            let cu = g.cu_cycles();
            match cli.format {
                Format::Json => print_json(&json!({ "cycles": cu })),
                _ => {
                    println!("C_u(E) ({} cycles)", cu.len());
                    for c in &cu {
                        println!("  {c}");
                    }
                }
            }
        }
        Cmd::ValidateF { graph, f } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let f = load_f(f, &g, &l)?;
            let report = validate_saturated(&l, &f)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "valid": report.is_valid(),
                    "violations": report.violations,
                })),
                _ => {
                    if report.is_valid() {
                        println!("f is a saturated function ({} pairs checked)", l.star_indices().count());
                    } else {
                        println!("f is NOT a saturated function:");
                        for v in &report.violations {
                            println!("  {v}");
                        }
                    }
                }
            }
            if !report.is_valid() {
                return Err(Error::Validation("f failed the join condition".into()));
            }
        }
        Cmd::ValidatePhi { graph, phi } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let phi = load_phi(phi, &g)?;
            let report = validate_phi(&g, &l, &phi)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "valid": report.is_valid(),
                    "violations": report.violations,
                })),
                _ => {
                    if report.is_valid() {
                        println!("phi is a graded ideal function ({} extended vertices)", ext_domain(&g)?.len());
                    } else {
                        println!("phi is NOT a graded ideal function:");
                        for v in &report.violations {
                            println!("  {v}");
                        }
                    }
                }
            }
            if !report.is_valid() {
                return Err(Error::Validation("phi failed its defining conditions".into()));
            }
        }
        Cmd::Phi { graph, f } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let f = load_f(f, &g, &l)?;
            let phi = phi_from_f(&g, &l, &f)?;
            match cli.format {
                Format::Json => print_json(&serde_json::to_value(phi.to_docs()).expect("serialisable")),
                _ => {
                    for (x, ideal) in phi.entries() {
                        println!("phi({x}) = {}", ideal.display_plain());
                    }
                }
            }
        }
        Cmd::F { graph, phi } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let (f, _) = load_function(&None, &Some(phi.clone()), &g, &l)?;
            match cli.format {
                Format::Json => print_json(&serde_json::to_value(f.to_docs(&l)).expect("serialisable")),
                _ => {
                    for i in l.star_indices() {
                        println!("f({}) = {}", fmt_pair(&l.pairs()[i]), f.value_at(i).display_plain());
                    }
                }
            }
        }
        Cmd::Classify { graph, f } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let f = load_f(f, &g, &l)?;
            let class = classify(&l, &f)?;
            let image: Vec<String> = class.image.iter().map(|i| i.display_plain()).collect();
            match cli.format {
                Format::Json => {
                    let (kind, ideal) = match &class.kind {
                        IdealClassKind::Basic => ("basic", None),
                        IdealClassKind::IBasic(i) => ("i-basic", Some(*i)),
                        IdealClassKind::GeneralGraded => ("general-graded", None),
                    };
                    print_json(&json!({
                        "class": kind,
                        "ideal": ideal,
                        "image": class.image,
                    }));
                }
                _ => {
                    println!("classification: {}", class.display_plain());
                    println!("image: {{{}}}", image.join(", "));
                }
            }
        }
        Cmd::Member { graph, f, phi, scalar, vertex, hset } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let (_, phi_fn) = load_function(f, phi, &g, &l)?;
            let x = match hset {
                None => ExtVertex::plain(vertex),
                Some(h) => ExtVertex::broken(vertex, csv_set(h)),
            };
            let member = membership(&phi_fn, *scalar, &x)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "scalar": scalar,
                    "element": x.to_string(),
                    "member": member,
                })),
                _ => println!("{scalar}*{x} in A: {member}"),
            }
        }
        Cmd::MaxBasic { graph, f } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let f = load_f(f, &g, &l)?;
            let mb = max_basic_pair(&g, &l, &f)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "pair": mb.pair,
                    "zero_basic_part": mb.zero_basic_part,
                })),
                _ => {
                    let note = if mb.zero_basic_part { " (zero basic part)" } else { "" };
                    println!("maximal basic pair: {}{note}", fmt_pair(&mb.pair));
                }
            }
        }
        Cmd::QuotientGraph { graph, hset, sset } => {
            let g = load_graph(graph)?;
            let pair = AdmissiblePair::new(
                &g,
                csv_set(hset),
                sset.as_deref().map(csv_set).unwrap_or_default(),
            )?;
            let q = quotient_graph(&g, &pair)?;
            match cli.format {
                Format::Json => print_json(&quotient_graph_json(&q)),
                Format::Dot => print!("{}", q.graph.to_dot(&format!("E\\{}", fmt_pair(&pair)))),
                Format::Text => {
                    println!("E\\{}", fmt_pair(&pair));
                    print!("{}", graph_text(&q.graph));
                }
            }
        }
        Cmd::Porcupine { graph, x } => {
            let g = load_graph(graph)?;
            let x = csv_set(x);
            let depth = depth_for(cli, &g)?;
            let p = porcupine(&g, &x, depth)?;
            match cli.format {
                Format::Json => print_json(&porcupine_json(&p)),
                Format::Dot => print!("{}", p.graph.to_dot(&format!("_{}E", fmt_vset(&x)))),
                Format::Text => {
                    println!("_{}E", fmt_vset(&x));
                    print!("{}", graph_text(&p.graph));
                    println!("infinite: {}", p.infinite);
                    if p.truncated {
                        println!("truncated: true (depth {})", p.depth);
                    }
                }
            }
        }
        Cmd::Quotient { graph, f, phi } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let (f, _) = load_function(f, phi, &g, &l)?;
            let depth = depth_for(cli, &g)?;
            let syms = symbols_for(cli)?;
            let report = quotient_report(&g, &l, &f, depth)?;
            let input_ring = f.ring();
            match cli.format {
                Format::Json => {
                    let dec = report.decomposition.as_ref().map(|d| decomposition_json(d, &syms));
                    print_json(&json!({
                        "classification": report.class.display_plain(),
                        "pair": report.target.pair,
                        "ideal": report.target.ideal,
                        "quotient_ring": report.target.ring.display_plain(),
                        "quotient_graph": quotient_graph_json(&report.target.quotient),
                        "descriptor": report.target.descriptor.render(&syms),
                        "isomorphism": report.isomorphism,
                        "decomposition": dec,
                        "cross_check": report.cross.as_ref().map(|c| json!({
                            "consistent": c.consistent,
                            "detail": c.detail,
                        })),
                    }));
                }
                _ => {
                    println!("classification: {}", report.class.display_plain());
                    println!(
                        "I = {}, R/I = {}",
                        report.target.ideal.display_plain(),
                        report.target.ring.display_plain()
                    );
                    println!("(H, S) = {}", fmt_pair(&report.target.pair));
                    let tag = if report.isomorphism {
                        "isomorphism via the quotient-graph route"
                    } else {
                        "epimorphism only, not isomorphism"
                    };
                    let sub = ring_sub(&input_ring, &syms);
                    println!("L{sub}(E)/A ≅ {}   [{tag}]", report.target.descriptor.render(&syms));
                    if let Some(dec) = &report.decomposition {
                        println!("decomposition: {}   [porcupine decomposition]", dec.render(&syms));
                    }
                    if let Some(c) = &report.cross {
                        println!("cross-check: {}", if c.consistent { "consistent" } else { "INCONSISTENT" });
                    }
                }
            }
        }
        Cmd::Decompose { graph, f, phi } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let (_, phi_fn) = load_function(f, phi, &g, &l)?;
            let depth = depth_for(cli, &g)?;
            let syms = symbols_for(cli)?;
            let dec = decompose(&g, &l, &phi_fn, depth)?;
            match cli.format {
                Format::Json => print_json(&decomposition_json(&dec, &syms)),
                _ => {
                    println!("summands (by ideal):");
                    for s in &dec.summands {
                        let what = if s.vanishing {
                            "vanishing (zero summand)".to_string()
                        } else {
                            match &s.descriptor {
                                Some(d) => d.render(&syms),
                                None => format!("truncated porcupine (depth {})", s.porcupine.depth),
                            }
                        };
                        println!(
                            "  I = {}: R/I = {}, X = {}, {}",
                            s.ideal.display_plain(),
                            s.ring.display_plain(),
                            fmt_vset(&s.preimage),
                            what
                        );
                    }
                    println!("{}", dec.render(&syms));
                }
            }
        }
        Cmd::CrossCheck { graph, f } => {
            let g = load_graph(graph)?;
            let l = PairLattice::enumerate(&g)?;
            let f = load_f(f, &g, &l)?;
            let depth = depth_for(cli, &g)?;
            let check = cross_check(&g, &l, &f, depth)?;
            match cli.format {
                Format::Json => print_json(&json!({
                    "consistent": check.consistent,
                    "detail": check.detail,
                    "witness": check.witness,
                    "quotient_graph": check.quotient_graph.to_doc(),
                    "summand_graph": check.summand_graph.as_ref().map(|g| g.to_doc()),
                })),
                _ => {
                    println!(
                        "cross-check: {} — {}",
                        if check.consistent { "consistent" } else { "INCONSISTENT" },
                        check.detail
                    );
                    if let Some(w) = &check.witness {
                        for (a, b) in w {
                            println!("  {a} -> {b}");
                        }
                    }
                    if !check.consistent {
                        println!("quotient graph:");
                        print!("{}", graph_text(&check.quotient_graph));
                        if let Some(s) = &check.summand_graph {
                            println!("porcupine summand:");
                            print!("{}", graph_text(s));
                        }
                    }
                }
            }
            if !check.consistent {
                return Err(Error::Validation(format!("cross-check failed: {}", check.detail)));
            }
        }
    }
    Ok(())
}

fn ring_sub(ring: &lpa_core::ideal::RingSpec, syms: &SymbolTable) -> String {
    use lpa_core::ideal::RingSpec;
    let name = match ring {
        RingSpec::Int => "Z".to_string(),
        RingSpec::IntMod(n) => format!("Z_{}", syms.render(*n)),
        RingSpec::Zero => "0".to_string(),
    };
    if name.chars().count() == 1 {
        format!("_{name}")
    } else {
        format!("_{{{name}}}")
    }
}

fn decomposition_json(dec: &lpa_core::quotient::Decomposition, syms: &SymbolTable) -> Value {
    let summands: Vec<Value> = dec
        .summands
        .iter()
        .map(|s| {
            json!({
                "ideal": s.ideal,
                "quotient_ring": s.ring.display_plain(),
                "preimage": s.preimage,
                "porcupine": porcupine_json(&s.porcupine),
                "descriptor": s.descriptor.as_ref().map(|d| d.render(syms)),
                "vanishing": s.vanishing,
            })
        })
        .collect();
    json!({
        "ring": dec.input_ring.display_plain(),
        "summands": summands,
        "sum": dec.render_sum(syms),
    })
}

/// Cover relations of a family of sets ordered by inclusion.
fn subset_covers(sets: &[VertexSet]) -> Vec<(usize, usize)> {
    let leq = |a: &VertexSet, b: &VertexSet| a.is_subset(b);
    let mut covers = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i == j || !leq(a, b) {
                continue;
            }
            let between = sets
                .iter()
                .enumerate()
                .any(|(k, c)| k != i && k != j && leq(a, c) && leq(c, b));
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}
