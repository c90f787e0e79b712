//! Graph constructions backing the quotient theorems: the quotient graph
//! `E\(H,S)`, the porcupine graph `_X E`, and conservative recognition of
//! small Leavitt path algebras as matrix and Laurent-polynomial algebras.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::graph::{Graph, Mult, VertexSet};
use crate::ideal::RingSpec;
use crate::lattice::{fmt_set, AdmissiblePair, breaking_vertices};
use crate::symbols::SymbolTable;
use crate::{Error, Result};

/// Where a quotient-graph vertex or edge came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Original { of: String },
    Primed { of: String },
}

/// The quotient graph `E\(H,S)` with provenance back to `E`.
///
/// Vertices are `E^0 \ H` plus a primed copy `v'` for each unselected
/// breaking vertex `v ∈ B_H \ S`; edges keep every bundle whose range
/// avoids `H` and add primed copies of bundles ranging in `B_H \ S`.
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    pub graph: Graph,
    pub vertex_origin: BTreeMap<String, Origin>,
    pub edge_origin: BTreeMap<String, Origin>,
}

pub fn quotient_graph(g: &Graph, pair: &AdmissiblePair) -> Result<QuotientGraph> {
    // admissibility re-checked here so raw CLI input cannot slip through
    let pair = AdmissiblePair::new(g, pair.h().clone(), pair.s().clone())?;
    let bh = breaking_vertices(g, pair.h())?;
    let unselected: VertexSet = bh.difference(pair.s()).cloned().collect();
    let mut vertices = Vec::new();
    let mut vertex_origin = BTreeMap::new();
    for v in g.vertex_names() {
        if !pair.h().contains(v) {
            vertices.push(v.clone());
            vertex_origin.insert(v.clone(), Origin::Original { of: v.clone() });
        }
    }
    for v in &unselected {
        let primed = format!("{v}'");
        vertices.push(primed.clone());
        vertex_origin.insert(primed, Origin::Primed { of: v.clone() });
    }
    let mut edges = Vec::new();
    let mut edge_origin = BTreeMap::new();
    for b in g.bundles() {
        let (src, dst) = (g.name(b.src), g.name(b.dst));
        if pair.h().contains(dst) {
            continue;
        }
        edges.push((b.id.clone(), src.to_string(), dst.to_string(), b.mult));
        edge_origin.insert(b.id.clone(), Origin::Original { of: b.id.clone() });
        if unselected.contains(dst) {
            let primed = format!("{}'", b.id);
            edges.push((primed.clone(), src.to_string(), format!("{dst}'"), b.mult));
            edge_origin.insert(primed, Origin::Primed { of: b.id.clone() });
        }
    }
    let graph = Graph::new(vertices, edges)
        .map_err(|e| Error::InvalidGraph(format!("quotient construction collided with existing names: {e}")))?;
    Ok(QuotientGraph { graph, vertex_origin, edge_origin })
}

/// One path of `F(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FPath {
    /// Edge labels along the path. A bundle of finite multiplicity m > 1
    /// expands into labelled copies `id#1 … id#m`, one path per copy.
    pub labels: Vec<String>,
    pub source: String,
    /// Range of the final edge; always a member of `X`.
    pub target: String,
}

/// The path family `F(X)` enumerated up to a depth bound, with exact
/// finiteness information.
#[derive(Debug, Clone)]
pub struct PathFamily {
    /// Ordered by length then lexicographically by labels.
    pub paths: Vec<FPath>,
    pub infinite: bool,
    /// Set when paths beyond the depth bound (or the materialisation cap)
    /// exist; always set when infinite.
    pub truncated: bool,
    pub depth: usize,
}

/// Branching families grow exponentially with length, so materialisation
/// stops once this many paths have been collected and the family is marked
/// truncated. Finiteness stays exact either way.
const MAX_MATERIALISED_PATHS: usize = 4096;

/// `F(X)`: paths starting and running outside `X` that land in `X` with
/// their final edge. Finiteness is decided exactly: `F(X)` is infinite iff
/// some cycle outside `X` has a route into `X` avoiding `X` internally.
pub fn f_of_x(g: &Graph, x: &VertexSet, depth: usize) -> Result<PathFamily> {
    let x_idx = g.indices(x)?;
    // vertices with a route into X that stays outside X until the end
    let mut into_x: BTreeSet<usize> = x_idx.clone();
    loop {
        let mut grew = false;
        for b in g.bundles() {
            if !x_idx.contains(&b.src) && into_x.contains(&b.dst) && into_x.insert(b.src) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    for b in g.bundles() {
        if b.mult.is_infinite() && !x_idx.contains(&b.src) && into_x.contains(&b.dst) {
            return Err(Error::NotRowFinite(format!(
                "the ∞ bundle `{}` lies on a path into X = {}; the porcupine graph is only defined when X avoids infinite emitters",
                b.id,
                fmt_set(x)
            )));
        }
    }
    let outside_route: BTreeSet<usize> = into_x.difference(&x_idx).copied().collect();
    let infinite = has_cycle_in(g, &outside_route);

    // expand finite multiplicities into labelled edge copies
    let mut instances: Vec<(String, usize, usize)> = Vec::new();
    for b in g.bundles() {
        match b.mult {
            Mult::Finite(1) => instances.push((b.id.clone(), b.src, b.dst)),
            Mult::Finite(m) => {
                for k in 1..=m {
                    instances.push((format!("{}#{k}", b.id), b.src, b.dst));
                }
            }
            Mult::Infinite => {}
        }
    }
    // level-by-level: a path of length n is e·β with β of length n-1
    let mut paths: Vec<FPath> = Vec::new();
    let mut level: Vec<(usize, Vec<String>, usize)> = Vec::new(); // (source, labels, final range)
    for (label, src, dst) in &instances {
        if !x_idx.contains(src) && x_idx.contains(dst) {
            level.push((*src, vec![label.clone()], *dst));
        }
    }
    level.sort_by(|a, b| a.1.cmp(&b.1));
    let mut truncated = false;
    let mut length = 1;
    while !level.is_empty() {
        if length > depth || paths.len() + level.len() > MAX_MATERIALISED_PATHS {
            truncated = true;
            break;
        }
        paths.extend(level.iter().map(|(src, labels, end)| FPath {
            labels: labels.clone(),
            source: g.name(*src).to_string(),
            target: g.name(*end).to_string(),
        }));
        let mut next = Vec::new();
        'extend: for (label, src, dst) in &instances {
            if x_idx.contains(src) {
                continue;
            }
            for (head, p, end) in &level {
                if dst == head {
                    if next.len() > MAX_MATERIALISED_PATHS {
                        // the partial level trips the cap check above and is
                        // never emitted
                        break 'extend;
                    }
                    let mut longer = Vec::with_capacity(p.len() + 1);
                    longer.push(label.clone());
                    longer.extend(p.iter().cloned());
                    next.push((*src, longer, *end));
                }
            }
        }
        next.sort_by(|a, b| a.1.cmp(&b.1));
        level = next;
        length += 1;
    }
    Ok(PathFamily { paths, infinite, truncated: truncated || infinite, depth })
}

fn has_cycle_in(g: &Graph, set: &BTreeSet<usize>) -> bool {
    let mut state: BTreeMap<usize, u8> = set.iter().map(|&v| (v, 0u8)).collect();
    fn visit(g: &Graph, v: usize, set: &BTreeSet<usize>, state: &mut BTreeMap<usize, u8>) -> bool {
        state.insert(v, 1);
        for b in g.out_bundles(v) {
            if !set.contains(&b.dst) {
                continue;
            }
            match state.get(&b.dst) {
                Some(1) => return true,
                Some(0) => {
                    if visit(g, b.dst, set, state) {
                        return true;
                    }
                }
                _ => {}
            }
        }
        state.insert(v, 2);
        false
    }
    set.iter().any(|&v| state[&v] == 0 && visit(g, v, set, &mut state))
}

/// The porcupine graph `_X E`: the subgraph induced on `X` with one new
/// spine vertex `w^α` per path `α ∈ F(X)` and one new edge `f^α` pointing
/// along the path suffix.
#[derive(Debug, Clone)]
pub struct PorcupineGraph {
    pub graph: Graph,
    pub infinite: bool,
    pub truncated: bool,
    pub depth: usize,
    /// spine vertex -> the edge labels of its path
    pub spine: BTreeMap<String, Vec<String>>,
}

pub fn porcupine(g: &Graph, x: &VertexSet, depth: usize) -> Result<PorcupineGraph> {
    let family = f_of_x(g, x, depth)?;
    let x_idx = g.indices(x)?;
    let mut vertices: Vec<String> = x.iter().cloned().collect();
    let mut edges: Vec<(String, String, String, Mult)> = Vec::new();
    for b in g.bundles() {
        if x_idx.contains(&b.src) && x_idx.contains(&b.dst) {
            edges.push((b.id.clone(), g.name(b.src).to_string(), g.name(b.dst).to_string(), b.mult));
        }
    }
    let mut spine = BTreeMap::new();
    for path in &family.paths {
        let label = path.labels.concat();
        let w = format!("w^{{{label}}}");
        vertices.push(w.clone());
        spine.insert(w.clone(), path.labels.clone());
        let target = if path.labels.len() == 1 {
            // r(f^e) = r(e)
            path.target.clone()
        } else {
            format!("w^{{{}}}", path.labels[1..].concat())
        };
        edges.push((format!("f^{{{label}}}"), w, target, Mult::Finite(1)));
    }
    let graph = Graph::new(vertices, edges)
        .map_err(|e| Error::InvalidGraph(format!("porcupine construction collided with existing names: {e}")))?;
    Ok(PorcupineGraph {
        graph,
        infinite: family.infinite,
        truncated: family.truncated,
        depth,
        spine,
    })
}

/// One summand of a symbolic algebra description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// `M_size(R)`; size 1 prints as the ring itself.
    Matrix { size: u64, ring: RingSpec },
    /// `M_size(R[x,x^-1])`; size 1 prints as `R[x,x^-1]`.
    MatrixLaurent { size: u64, ring: RingSpec },
    /// An unrecognised Leavitt path algebra `L_R(name)`.
    Named { name: String, ring: RingSpec },
}

fn subscript(s: &str) -> String {
    if s.chars().count() == 1 {
        format!("_{s}")
    } else {
        format!("_{{{s}}}")
    }
}

fn ring_name(ring: &RingSpec, syms: &SymbolTable) -> String {
    match ring {
        RingSpec::Int => "Z".to_string(),
        RingSpec::IntMod(n) => format!("Z_{}", syms.render(*n)),
        RingSpec::Zero => "0".to_string(),
    }
}

impl Term {
    pub fn render(&self, syms: &SymbolTable) -> String {
        match self {
            Term::Matrix { size: 1, ring } => ring_name(ring, syms),
            Term::Matrix { size, ring } => {
                format!("M{}({})", subscript(&size.to_string()), ring_name(ring, syms))
            }
            Term::MatrixLaurent { size: 1, ring } => format!("{}[x,x^-1]", ring_name(ring, syms)),
            Term::MatrixLaurent { size, ring } => {
                format!("M{}({}[x,x^-1])", subscript(&size.to_string()), ring_name(ring, syms))
            }
            Term::Named { name, ring } => {
                format!("L{}({name})", subscript(&ring_name(ring, syms)))
            }
        }
    }
}

/// A formal direct sum of terms; zero-ring terms are dropped at build time.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraDescriptor {
    pub terms: Vec<Term>,
}

impl AlgebraDescriptor {
    pub fn new(terms: Vec<Term>) -> AlgebraDescriptor {
        AlgebraDescriptor {
            terms: terms
                .into_iter()
                .filter(|t| {
                    !matches!(
                        t,
                        Term::Matrix { ring: RingSpec::Zero, .. }
                            | Term::MatrixLaurent { ring: RingSpec::Zero, .. }
                            | Term::Named { ring: RingSpec::Zero, .. }
                    )
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, syms: &SymbolTable) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|t| t.render(syms))
            .collect::<Vec<_>>()
            .join(" (+) ")
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&SymbolTable::empty()))
    }
}

/// Recognises the Leavitt path algebra of a finite graph, component by
/// component, emitting a closed form only where the shape forces one:
/// acyclic single-sink components become matrix algebras, exitless cycles
/// become Laurent algebras, the two-vertex Toeplitz shape is named `T`, and
/// everything else falls back to a named algebra.
pub fn recognize(g: &Graph, ring: RingSpec, fallback: &str) -> Result<AlgebraDescriptor> {
    if !g.is_row_finite() {
        return Err(Error::InvalidInput(
            "infinite multiplicity present; no closed form is attempted".into(),
        ));
    }
    if ring.is_zero_ring() {
        return Ok(AlgebraDescriptor::new(Vec::new()));
    }
    let comps = g.weak_components();
    let single = comps.len() == 1;
    let mut terms = Vec::new();
    for (k, comp) in comps.iter().enumerate() {
        let name = if single { fallback.to_string() } else { format!("{fallback}#{k}") };
        terms.push(recognize_component(g, comp, ring, &name)?);
    }
    Ok(AlgebraDescriptor::new(terms))
}

fn recognize_component(g: &Graph, comp: &BTreeSet<usize>, ring: RingSpec, name: &str) -> Result<Term> {
    let sub = Graph::new(
        comp.iter().map(|&v| g.name(v).to_string()).collect(),
        g.bundles()
            .iter()
            .filter(|b| comp.contains(&b.src))
            .map(|b| (b.id.clone(), g.name(b.src).to_string(), g.name(b.dst).to_string(), b.mult))
            .collect(),
    )?;
    let cycles = sub.enumerate_cycles();
    if cycles.is_empty() {
        let sinks: Vec<&String> = sub
            .vertex_names()
            .iter()
            .filter(|v| sub.classify_vertex(v).expect("own vertex") == crate::graph::VertexClass::Sink)
            .collect();
        if let [sink] = sinks.as_slice() {
            if sub.upstream(sink)?.len() == sub.vertex_count() {
                return Ok(Term::Matrix { size: count_paths_into(&sub, sink)?, ring });
            }
        }
        return Ok(Term::Named { name: name.to_string(), ring });
    }
    if cycles.len() == 1 {
        let c = &cycles[0];
        let is_whole_component = c.vertices.len() == sub.vertex_count()
            && c.bundle_ids.len() == sub.bundles().len()
            && !sub.cycle_has_exit(c)?;
        if is_whole_component {
            return Ok(Term::MatrixLaurent { size: c.vertices.len() as u64, ring });
        }
        if is_toeplitz_shape(&sub) {
            return Ok(Term::Named { name: "T".to_string(), ring });
        }
    }
    Ok(Term::Named { name: name.to_string(), ring })
}

/// Exactly the two-vertex Toeplitz graph: a loop at one vertex and a single
/// edge from it to a sink.
fn is_toeplitz_shape(g: &Graph) -> bool {
    if g.vertex_count() != 2 || g.bundles().len() != 2 {
        return false;
    }
    let loops: Vec<_> = g.bundles().iter().filter(|b| b.src == b.dst).collect();
    let crossings: Vec<_> = g.bundles().iter().filter(|b| b.src != b.dst).collect();
    match (loops.as_slice(), crossings.as_slice()) {
        ([l], [e]) => l.mult == Mult::Finite(1) && e.mult == Mult::Finite(1) && e.src == l.src,
        _ => false,
    }
}

/// Number of paths (including the trivial one) ending at `sink`, with
/// multiplicities multiplying parallel choices. Only sound on acyclic graphs.
fn count_paths_into(g: &Graph, sink: &str) -> Result<u64> {
    let sink = g.vertex_index(sink)?;
    let mut memo: BTreeMap<usize, u64> = BTreeMap::new();
    fn paths_from(g: &Graph, v: usize, sink: usize, memo: &mut BTreeMap<usize, u64>) -> u64 {
        if let Some(&n) = memo.get(&v) {
            return n;
        }
        let mut n = if v == sink { 1 } else { 0 };
        for b in g.out_bundles(v) {
            let m = match b.mult {
                Mult::Finite(m) => m,
                Mult::Infinite => unreachable!("row-finiteness checked by caller"),
            };
            n += m * paths_from(g, b.dst, sink, memo);
        }
        memo.insert(v, n);
        n
    }
    Ok((0..g.vertex_count()).map(|v| paths_from(g, v, sink, &mut memo)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn larki() -> Graph {
        Graph::new(
            vec!["u".into(), "v".into()],
            vec![
                ("c".into(), "u".into(), "u".into(), Mult::Finite(1)),
                ("e".into(), "u".into(), "v".into(), Mult::Infinite),
            ],
        )
        .unwrap()
    }

    fn toeplitz() -> Graph {
        Graph::new(
            vec!["u".into(), "v".into()],
            vec![
                ("c".into(), "u".into(), "u".into(), Mult::Finite(1)),
                ("e".into(), "u".into(), "v".into(), Mult::Finite(1)),
            ],
        )
        .unwrap()
    }

    fn line3() -> Graph {
        Graph::new(
            vec!["u".into(), "v1".into(), "v2".into(), "v3".into()],
            vec![
                ("e1".into(), "u".into(), "v1".into(), Mult::Finite(1)),
                ("e2".into(), "v1".into(), "v2".into(), Mult::Finite(1)),
                ("e3".into(), "v1".into(), "v3".into(), Mult::Finite(1)),
            ],
        )
        .unwrap()
    }

    fn set(vs: &[&str]) -> VertexSet {
        vs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn quotient_by_h_only() {
        // E\({v}, ∅) on the ∞-emitter graph: u keeps its loop, the breaking
        // vertex stays unselected so u' appears with a primed loop copy.
        let g = larki();
        let p = AdmissiblePair::new(&g, set(&["v"]), VertexSet::new()).unwrap();
        let q = quotient_graph(&g, &p).unwrap();
        assert_eq!(q.graph.vertex_names(), ["u", "u'"]);
        let ids: Vec<&str> = q.graph.bundles().iter().map(|b| b.id.as_str()).collect();
        assert_eq!(ids, ["c", "c'"]);
        let c = q.graph.bundle_by_id("c").unwrap();
        assert_eq!((c.src, c.dst), (0, 0));
        let cp = q.graph.bundle_by_id("c'").unwrap();
        assert_eq!(q.graph.name(cp.src), "u");
        assert_eq!(q.graph.name(cp.dst), "u'");
        assert_eq!(q.edge_origin["c'"], Origin::Primed { of: "c".into() });
    }

    #[test]
    fn quotient_by_h_and_s() {
        let g = larki();
        let p = AdmissiblePair::new(&g, set(&["v"]), set(&["u"])).unwrap();
        let q = quotient_graph(&g, &p).unwrap();
        assert_eq!(q.graph.vertex_names(), ["u"]);
        assert_eq!(q.graph.bundles().len(), 1);
        assert_eq!(q.graph.bundles()[0].id, "c");
    }

    #[test]
    fn quotient_by_bottom_is_identity() {
        let g = larki();
        let q = quotient_graph(&g, &AdmissiblePair::bottom()).unwrap();
        assert_eq!(q.graph, g);
    }

    #[test]
    fn quotient_by_top_is_empty() {
        let g = toeplitz();
        let p = AdmissiblePair::new(&g, set(&["u", "v"]), VertexSet::new()).unwrap();
        let q = quotient_graph(&g, &p).unwrap();
        assert_eq!(q.graph.vertex_count(), 0);
    }

    #[test]
    fn non_admissible_pair_rejected() {
        let g = toeplitz();
        let p = AdmissiblePair::new_unchecked(set(&["u"]), VertexSet::new());
        assert!(quotient_graph(&g, &p).is_err());
    }

    fn labels(fam: &PathFamily) -> Vec<Vec<String>> {
        fam.paths.iter().map(|p| p.labels.clone()).collect()
    }

    #[test]
    fn f_of_x_cases() {
        let g = line3();
        let fam = f_of_x(&g, &set(&["v2"]), 12).unwrap();
        assert_eq!(labels(&fam), vec![vec!["e2".to_string()], vec!["e1".to_string(), "e2".to_string()]]);
        assert!(!fam.infinite);
        assert!(!fam.truncated);
        assert!(fam.paths.iter().all(|p| p.target == "v2"));

        let all = f_of_x(&g, &set(&["u", "v1", "v2", "v3"]), 12).unwrap();
        assert!(all.paths.is_empty());

        let t = f_of_x(&toeplitz(), &set(&["v"]), 4).unwrap();
        assert!(t.infinite);
        assert!(t.truncated);
        assert_eq!(
            labels(&t),
            vec![
                vec!["e".to_string()],
                vec!["c".to_string(), "e".to_string()],
                vec!["c".to_string(), "c".to_string(), "e".to_string()],
                vec!["c".to_string(), "c".to_string(), "c".to_string(), "e".to_string()],
            ]
        );
    }

    #[test]
    fn f_of_x_finiteness_against_depth_probe() {
        // finite families are fully enumerated well inside the default depth
        let g = line3();
        for x in [set(&["v1"]), set(&["v2"]), set(&["v2", "v3"]), set(&["u"])] {
            let fam = f_of_x(&g, &x, 2 * g.vertex_count()).unwrap();
            assert!(!fam.infinite);
            assert!(!fam.truncated);
            let deeper = f_of_x(&g, &x, 4 * g.vertex_count()).unwrap();
            assert_eq!(fam.paths, deeper.paths);
        }
    }

    #[test]
    fn porcupine_spines() {
        let g = line3();
        // X = {v2}: a three-vertex line ending at v2
        let p = porcupine(&g, &set(&["v2"]), 12).unwrap();
        assert_eq!(p.graph.vertex_names(), ["v2", "w^{e1e2}", "w^{e2}"]);
        let f_e2 = p.graph.bundle_by_id("f^{e2}").unwrap();
        assert_eq!(p.graph.name(f_e2.src), "w^{e2}");
        assert_eq!(p.graph.name(f_e2.dst), "v2");
        let f_e1e2 = p.graph.bundle_by_id("f^{e1e2}").unwrap();
        assert_eq!(p.graph.name(f_e1e2.src), "w^{e1e2}");
        assert_eq!(p.graph.name(f_e1e2.dst), "w^{e2}");
        assert!(!p.infinite);

        // X = {u, v1}: the induced subgraph
        let p = porcupine(&g, &set(&["u", "v1"]), 12).unwrap();
        assert_eq!(p.graph.vertex_names(), ["u", "v1"]);
        assert_eq!(p.graph.bundles().len(), 1);
        assert_eq!(p.graph.bundles()[0].id, "e1");

        // X = {v2, v3}: two disjoint three-vertex lines
        let p = porcupine(&g, &set(&["v2", "v3"]), 12).unwrap();
        assert_eq!(p.graph.vertex_count(), 6);
        assert_eq!(p.graph.bundles().len(), 4);

        // X = E^0 reproduces the graph itself
        let p = porcupine(&g, &set(&["u", "v1", "v2", "v3"]), 12).unwrap();
        assert_eq!(p.graph, g);
    }

    #[test]
    fn porcupine_spine_degrees() {
        let g = line3();
        for x in [set(&["v1"]), set(&["v2"]), set(&["v2", "v3"])] {
            let p = porcupine(&g, &x, 12).unwrap();
            for w in p.spine.keys() {
                let idx = p.graph.vertex_index(w).unwrap();
                assert_eq!(p.graph.out_bundles(idx).count(), 1);
                assert!(p.graph.in_bundles(idx).count() <= 1);
            }
        }
    }

    #[test]
    fn infinite_porcupine_truncates_per_depth() {
        let t = toeplitz();
        for depth in [1usize, 3, 7] {
            let p = porcupine(&t, &set(&["v"]), depth).unwrap();
            assert!(p.infinite);
            assert!(p.truncated);
            assert_eq!(p.spine.len(), depth);
        }
        let p = porcupine(&t, &set(&["v"]), 3).unwrap();
        assert!(p.graph.bundle_by_id("f^{cce}").is_some());
        let w = p.graph.vertex_index("w^{cce}").unwrap();
        let f = p.graph.out_bundles(w).next().unwrap();
        assert_eq!(p.graph.name(f.dst), "w^{ce}");
    }

    #[test]
    fn porcupine_rejects_traversable_infinite_bundle() {
        let g = larki();
        assert!(matches!(porcupine(&g, &set(&["v"]), 6), Err(Error::NotRowFinite(_))));
        // but X that avoids the ∞ bundle is fine
        let p = porcupine(&g, &set(&["u"]), 6).unwrap();
        assert_eq!(p.graph.vertex_names(), ["u"]);
        assert_eq!(p.graph.bundles().len(), 1);
    }

    #[test]
    fn multiplicity_expands_into_labelled_paths() {
        let g = Graph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), "a".into(), "b".into(), Mult::Finite(2))],
        )
        .unwrap();
        let fam = f_of_x(&g, &set(&["b"]), 4).unwrap();
        assert_eq!(labels(&fam), vec![vec!["e#1".to_string()], vec!["e#2".to_string()]]);
        let p = porcupine(&g, &set(&["b"]), 4).unwrap();
        assert_eq!(p.graph.vertex_names(), ["b", "w^{e#1}", "w^{e#2}"]);
    }

    #[test]
    fn recognize_matrix_algebras() {
        let r = RingSpec::int_mod(2).unwrap();
        // three-vertex line: M_3
        let line = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("e".into(), "a".into(), "b".into(), Mult::Finite(1)),
                ("f".into(), "b".into(), "c".into(), Mult::Finite(1)),
            ],
        )
        .unwrap();
        let d = recognize(&line, r, "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "M_3(Z_2)");
        // two-vertex line over Z_6: M_2
        let two = Graph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), "a".into(), "b".into(), Mult::Finite(1))],
        )
        .unwrap();
        let d = recognize(&two, RingSpec::int_mod(6).unwrap(), "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "M_2(Z_6)");
        // lone vertex: the ring itself
        let one = Graph::new(vec!["a".into()], vec![]).unwrap();
        let d = recognize(&one, RingSpec::int_mod(5).unwrap(), "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "Z_5");
    }

    #[test]
    fn recognize_laurent_and_toeplitz() {
        let loop1 = Graph::new(
            vec!["u".into()],
            vec![("c".into(), "u".into(), "u".into(), Mult::Finite(1))],
        )
        .unwrap();
        let d = recognize(&loop1, RingSpec::int_mod(4).unwrap(), "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "Z_4[x,x^-1]");

        let cycle2 = Graph::new(
            vec!["u".into(), "v".into()],
            vec![
                ("a".into(), "u".into(), "v".into(), Mult::Finite(1)),
                ("b".into(), "v".into(), "u".into(), Mult::Finite(1)),
            ],
        )
        .unwrap();
        let d = recognize(&cycle2, RingSpec::Int, "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "M_2(Z[x,x^-1])");

        let d = recognize(&toeplitz(), RingSpec::int_mod(3).unwrap(), "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "L_{Z_3}(T)");

        let d = recognize(&toeplitz(), RingSpec::Int, "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "L_Z(T)");
    }

    #[test]
    fn recognize_multi_component_and_fallbacks() {
        // two disjoint lines: a direct sum of matrix algebras
        let g = Graph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("e".into(), "a".into(), "b".into(), Mult::Finite(1)),
                ("f".into(), "c".into(), "d".into(), Mult::Finite(1)),
            ],
        )
        .unwrap();
        let d = recognize(&g, RingSpec::int_mod(2).unwrap(), "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "M_2(Z_2) (+) M_2(Z_2)");

        // acyclic two-sink component is not forced: named fallback
        let g = Graph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("e".into(), "a".into(), "b".into(), Mult::Finite(1)),
                ("f".into(), "a".into(), "c".into(), Mult::Finite(1)),
            ],
        )
        .unwrap();
        let d = recognize(&g, RingSpec::Int, "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "L_Z(E)");

        // ∞ multiplicity is refused
        assert!(recognize(&larki(), RingSpec::Int, "E").is_err());

        // zero coefficient ring collapses everything
        let d = recognize(&toeplitz(), RingSpec::Zero, "E").unwrap();
        assert!(d.is_zero());
        assert_eq!(d.render(&SymbolTable::empty()), "0");
    }

    #[test]
    fn multiplicity_weighted_path_counts() {
        // a ⇉ b with multiplicity 2: paths into b are {trivial, e·1, e·2}
        let g = Graph::new(
            vec!["a".into(), "b".into()],
            vec![("e".into(), "a".into(), "b".into(), Mult::Finite(2))],
        )
        .unwrap();
        let d = recognize(&g, RingSpec::Int, "E").unwrap();
        assert_eq!(d.render(&SymbolTable::empty()), "M_3(Z)");
    }

    #[test]
    fn symbolic_rendering() {
        let syms = SymbolTable::parse("p=2,q=3").unwrap();
        let t = Term::Matrix { size: 3, ring: RingSpec::IntMod(2) };
        assert_eq!(t.render(&syms), "M_3(Z_p)");
        let t = Term::Matrix { size: 2, ring: RingSpec::IntMod(6) };
        assert_eq!(t.render(&syms), "M_2(Z_pq)");
        let t = Term::MatrixLaurent { size: 1, ring: RingSpec::IntMod(6) };
        assert_eq!(t.render(&syms), "Z_pq[x,x^-1]");
        let t = Term::Named { name: "T".into(), ring: RingSpec::IntMod(6) };
        assert_eq!(t.render(&syms), "L_{Z_pq}(T)");
    }
}
