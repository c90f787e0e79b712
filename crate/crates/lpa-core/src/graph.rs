//! Finite directed multigraphs with edge multiplicities, path and cycle
//! analysis, and the graph conditions that control the ideal theory.
//!
//! Parallel edges are stored as a single bundle with a multiplicity in
//! `N+ ∪ {∞}`; an `∞` bundle is how an infinite emitter is expressed while
//! the vertex set stays finite.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A set of vertices, ordered by identifier.
pub type VertexSet = BTreeSet<String>;

/// Edge-bundle multiplicity: a positive integer or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl Mult {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Mult::Infinite)
    }

    /// Multiplicity clamped to {0,1,2}: all that matters for path counting.
    fn saturating(&self) -> u8 {
        match self {
            Mult::Finite(m) => (*m).min(2) as u8,
            Mult::Infinite => 2,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(m) => write!(f, "{m}"),
            Mult::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Mult {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Mult::Finite(m) => ser.serialize_u64(*m),
            Mult::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Mult {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(0) => Err(D::Error::custom("edge multiplicity must be >= 1")),
            Raw::Num(m) => Ok(Mult::Finite(m)),
            Raw::Str(s) if s == "inf" => Ok(Mult::Infinite),
            Raw::Str(s) => Err(D::Error::custom(format!("bad multiplicity `{s}` (expected a positive integer or \"inf\")"))),
        }
    }
}

/// A bundle of parallel edges from `src` to `dst`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBundle {
    pub id: String,
    pub src: usize,
    pub dst: usize,
    pub mult: Mult,
}

/// Classification of a vertex by its outgoing edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexClass {
    Sink,
    Regular,
    InfiniteEmitter,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Sink => write!(f, "sink"),
            VertexClass::Regular => write!(f, "regular"),
            VertexClass::InfiniteEmitter => write!(f, "infinite-emitter"),
        }
    }
}

/// Saturating count of simple closed paths based at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCount {
    Zero,
    One,
    Many,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: String,
    src: String,
    dst: String,
    mult: Mult,
}

/// Serialisable form of a graph; matches the JSON interchange format.
#[derive(Serialize, Deserialize)]
pub struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
}

/// A finite directed multigraph. Immutable after construction.
///
/// Vertices are kept sorted by identifier, so vertex indices order the same
/// way as names; bundles are sorted by `(src, dst)`. This makes every
/// enumeration in the crate deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    bundles: Vec<EdgeBundle>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String, Mult)>) -> Result<Graph> {
        let mut vs = vertices;
        vs.sort();
        let before = vs.len();
        vs.dedup();
        if vs.len() != before {
            return Err(Error::InvalidGraph("duplicate vertex identifiers".into()));
        }
        let index: BTreeMap<&str, usize> = vs.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut bundles = Vec::with_capacity(edges.len());
        let mut ids = BTreeSet::new();
        let mut pairs = BTreeSet::new();
        for (id, src, dst, mult) in edges {
            let s = *index
                .get(src.as_str())
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let d = *index
                .get(dst.as_str())
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            if let Mult::Finite(0) = mult {
                return Err(Error::InvalidGraph(format!("edge `{id}` has multiplicity 0")));
            }
            if !ids.insert(id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{id}`")));
            }
            if !pairs.insert((s, d)) {
                return Err(Error::InvalidGraph(format!(
                    "more than one bundle from `{src}` to `{dst}`; use the multiplicity field"
                )));
            }
            bundles.push(EdgeBundle { id, src: s, dst: d, mult });
        }
        bundles.sort_by_key(|b| (b.src, b.dst));
        let mut out = vec![Vec::new(); vs.len()];
        let mut inc = vec![Vec::new(); vs.len()];
        for (i, b) in bundles.iter().enumerate() {
            out[b.src].push(i);
            inc[b.dst].push(i);
        }
        Ok(Graph { vertices: vs, bundles, out, inc })
    }

    pub fn from_doc(doc: GraphDoc) -> Result<Graph> {
        Graph::new(
            doc.vertices,
            doc.edges.into_iter().map(|e| (e.id, e.src, e.dst, e.mult)).collect(),
        )
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.clone(),
            edges: self
                .bundles
                .iter()
                .map(|b| EdgeDoc {
                    id: b.id.clone(),
                    src: self.vertices[b.src].clone(),
                    dst: self.vertices[b.dst].clone(),
                    mult: b.mult,
                })
                .collect(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Graph> {
        let doc: GraphDoc =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad graph JSON: {e}")))?;
        Graph::from_doc(doc)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn bundles(&self) -> &[EdgeBundle] {
        &self.bundles
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(v))
            .map_err(|_| Error::UnknownVertex(v.to_string()))
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn out_bundles(&self, v: usize) -> impl Iterator<Item = &EdgeBundle> {
        self.out[v].iter().map(|&i| &self.bundles[i])
    }

    pub fn in_bundles(&self, v: usize) -> impl Iterator<Item = &EdgeBundle> {
        self.inc[v].iter().map(|&i| &self.bundles[i])
    }

    pub fn bundle_by_id(&self, id: &str) -> Option<&EdgeBundle> {
        self.bundles.iter().find(|b| b.id == id)
    }

    /// True when no bundle has multiplicity `∞`.
    pub fn is_row_finite(&self) -> bool {
        self.bundles.iter().all(|b| !b.mult.is_infinite())
    }

    pub fn names(&self, idxs: impl IntoIterator<Item = usize>) -> VertexSet {
        idxs.into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    pub fn indices(&self, set: &VertexSet) -> Result<BTreeSet<usize>> {
        set.iter().map(|v| self.vertex_index(v)).collect()
    }

    pub fn classify_idx(&self, v: usize) -> VertexClass {
        if self.out[v].is_empty() {
            return VertexClass::Sink;
        }
        if self.out[v].iter().any(|&i| self.bundles[i].mult.is_infinite()) {
            return VertexClass::InfiniteEmitter;
        }
        VertexClass::Regular
    }

    pub fn classify_vertex(&self, v: &str) -> Result<VertexClass> {
        Ok(self.classify_idx(self.vertex_index(v)?))
    }

    pub(crate) fn tree_idx(&self, v: usize) -> BTreeSet<usize> {
        self.reach(std::iter::once(v), true)
    }

    pub(crate) fn upstream_idx(&self, v: usize) -> BTreeSet<usize> {
        self.reach(std::iter::once(v), false)
    }

    fn reach(&self, start: impl IntoIterator<Item = usize>, forward: bool) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = start.into_iter().collect();
        let mut queue: VecDeque<usize> = seen.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            let nexts = if forward { &self.out[v] } else { &self.inc[v] };
            for &i in nexts {
                let w = if forward { self.bundles[i].dst } else { self.bundles[i].src };
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// `T(v)`: every vertex reachable from `v`, including `v`.
    pub fn tree(&self, v: &str) -> Result<VertexSet> {
        Ok(self.names(self.tree_idx(self.vertex_index(v)?)))
    }

    /// `M(v)`: every vertex that reaches `v`, including `v`.
    pub fn upstream(&self, v: &str) -> Result<VertexSet> {
        Ok(self.names(self.upstream_idx(self.vertex_index(v)?)))
    }

    /// All cycles, one representative per rotation class, starting at the
    /// lexicographically smallest vertex. A bundle appears at most once per
    /// cycle; multiplicity above 1 is carried as an annotation.
    pub fn enumerate_cycles(&self) -> Vec<Cycle> {
        let mut found = Vec::new();
        for start in 0..self.vertices.len() {
            let mut path_v = vec![start];
            let mut path_b = Vec::new();
            let mut visited: BTreeSet<usize> = BTreeSet::new();
            visited.insert(start);
            self.cycle_dfs(start, start, &mut path_v, &mut path_b, &mut visited, &mut found);
        }
        found.sort_by(|a, b| {
            (a.vertices.len(), &a.vertices, &a.bundle_ids).cmp(&(b.vertices.len(), &b.vertices, &b.bundle_ids))
        });
        found
    }

    fn cycle_dfs(
        &self,
        start: usize,
        current: usize,
        path_v: &mut Vec<usize>,
        path_b: &mut Vec<usize>,
        visited: &mut BTreeSet<usize>,
        found: &mut Vec<Cycle>,
    ) {
        for &bi in &self.out[current] {
            let d = self.bundles[bi].dst;
            if d == start {
                path_b.push(bi);
                found.push(self.cycle_from_path(path_v, path_b));
                path_b.pop();
            } else if d > start && !visited.contains(&d) {
                visited.insert(d);
                path_v.push(d);
                path_b.push(bi);
                self.cycle_dfs(start, d, path_v, path_b, visited, found);
                path_b.pop();
                path_v.pop();
                visited.remove(&d);
            }
        }
    }

    fn cycle_from_path(&self, path_v: &[usize], path_b: &[usize]) -> Cycle {
        Cycle {
            vertices: path_v.iter().map(|&v| self.vertices[v].clone()).collect(),
            bundle_ids: path_b.iter().map(|&b| self.bundles[b].id.clone()).collect(),
            mults: path_b.iter().map(|&b| self.bundles[b].mult).collect(),
        }
    }

    /// Does the cycle have an exit: an edge from a cycle vertex that is not
    /// the cycle's own edge choice there? A multiplicity >= 2 bundle on the
    /// cycle counts as its own exit.
    pub fn cycle_has_exit(&self, c: &Cycle) -> Result<bool> {
        let (vs, bs) = self.resolve_cycle(c)?;
        for (i, &v) in vs.iter().enumerate() {
            if self.bundles[bs[i]].mult != Mult::Finite(1) {
                return Ok(true);
            }
            if self.out[v].iter().any(|&bi| bi != bs[i]) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Condition (L): every cycle has an exit.
    pub fn condition_l(&self) -> bool {
        self.enumerate_cycles()
            .iter()
            .all(|c| self.cycle_has_exit(c).expect("own cycle"))
    }

    /// Condition (K): no vertex is the base of precisely one simple closed path.
    pub fn condition_k(&self) -> bool {
        (0..self.vertices.len()).all(|v| self.simple_closed_path_count_idx(v) != PathCount::One)
    }

    /// Number of simple closed paths based at `v`, saturated at "many".
    ///
    /// A simple closed path may revisit vertices other than its base, so the
    /// family can be infinite; it is infinite exactly when the interior of
    /// some return route contains a cycle.
    pub fn simple_closed_path_count(&self, v: &str) -> Result<PathCount> {
        Ok(self.simple_closed_path_count_idx(self.vertex_index(v)?))
    }

    pub(crate) fn simple_closed_path_count_idx(&self, v: usize) -> PathCount {
        let mut count: u8 = 0;
        for &bi in &self.out[v] {
            if self.bundles[bi].dst == v {
                count = count.saturating_add(self.bundles[bi].mult.saturating()).min(2);
            }
        }
        // Interior vertices of potential return walks: reachable from v and
        // co-reachable to v without passing through v.
        let fwd = self.restricted_reach(v, true);
        let bwd = self.restricted_reach(v, false);
        let mid: BTreeSet<usize> = fwd.intersection(&bwd).copied().collect();
        if !mid.is_empty() {
            if self.has_cycle_within(&mid) {
                return PathCount::Many;
            }
            // The interior is acyclic: count v -> mid -> v paths by DP.
            let order = self.topo_order(&mid);
            let mut dp: BTreeMap<usize, u8> = BTreeMap::new();
            for &u in order.iter().rev() {
                let mut total: u8 = 0;
                for &bi in &self.out[u] {
                    let b = &self.bundles[bi];
                    let reach = if b.dst == v {
                        1
                    } else if mid.contains(&b.dst) {
                        *dp.get(&b.dst).unwrap_or(&0)
                    } else {
                        0
                    };
                    total = total.saturating_add(b.mult.saturating().saturating_mul(reach)).min(2);
                }
                dp.insert(u, total);
            }
            for &bi in &self.out[v] {
                let b = &self.bundles[bi];
                if b.dst != v && mid.contains(&b.dst) {
                    let via = b.mult.saturating().saturating_mul(*dp.get(&b.dst).unwrap_or(&0));
                    count = count.saturating_add(via).min(2);
                }
            }
        }
        match count {
            0 => PathCount::Zero,
            1 => PathCount::One,
            _ => PathCount::Many,
        }
    }

    /// Vertices other than `v` reachable from (or into) `v` without passing
    /// through `v` again.
    fn restricted_reach(&self, v: usize, forward: bool) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let firsts = if forward { &self.out[v] } else { &self.inc[v] };
        for &bi in firsts {
            let w = if forward { self.bundles[bi].dst } else { self.bundles[bi].src };
            if w != v && seen.insert(w) {
                queue.push_back(w);
            }
        }
        while let Some(u) = queue.pop_front() {
            let nexts = if forward { &self.out[u] } else { &self.inc[u] };
            for &bi in nexts {
                let w = if forward { self.bundles[bi].dst } else { self.bundles[bi].src };
                if w != v && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn has_cycle_within(&self, set: &BTreeSet<usize>) -> bool {
        // DFS colouring over the induced subgraph.
        let mut state: BTreeMap<usize, u8> = set.iter().map(|&v| (v, 0)).collect();
        fn visit(g: &Graph, v: usize, set: &BTreeSet<usize>, state: &mut BTreeMap<usize, u8>) -> bool {
            state.insert(v, 1);
            for &bi in &g.out[v] {
                let w = g.bundles[bi].dst;
                if !set.contains(&w) {
                    continue;
                }
                match state.get(&w) {
                    Some(1) => return true,
                    Some(0) => {
                        if visit(g, w, set, state) {
                            return true;
                        }
                    }
                    _ => {}
                }
            }
            state.insert(v, 2);
            false
        }
        for &v in set {
            if state[&v] == 0 && visit(self, v, set, &mut state) {
                return true;
            }
        }
        false
    }

    fn topo_order(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        let mut indeg: BTreeMap<usize, usize> = set.iter().map(|&v| (v, 0)).collect();
        for &v in set {
            for &bi in &self.out[v] {
                let w = self.bundles[bi].dst;
                if set.contains(&w) {
                    *indeg.get_mut(&w).unwrap() += 1;
                }
            }
        }
        let mut queue: VecDeque<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::with_capacity(set.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &bi in &self.out[v] {
                let w = self.bundles[bi].dst;
                if let Some(d) = indeg.get_mut(&w) {
                    *d -= 1;
                    if *d == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    /// `C_u(E)`: one representative per rotation class of cycles whose base
    /// carries exactly one simple closed path.
    pub fn cu_cycles(&self) -> Vec<Cycle> {
        self.enumerate_cycles()
            .into_iter()
            .filter(|c| {
                let base = self.vertex_index(&c.vertices[0]).expect("own cycle");
                self.simple_closed_path_count_idx(base) == PathCount::One
            })
            .collect()
    }

    /// `c_↓`: the hereditary saturated closure of the ranges of the exits of `c`.
    pub fn cycle_downset(&self, c: &Cycle) -> Result<VertexSet> {
        let (vs, bs) = self.resolve_cycle(c)?;
        let mut ranges: BTreeSet<usize> = BTreeSet::new();
        for (i, &v) in vs.iter().enumerate() {
            let own = bs[i];
            if self.bundles[own].mult != Mult::Finite(1) {
                ranges.insert(self.bundles[own].dst);
            }
            for &bi in &self.out[v] {
                if bi != own {
                    ranges.insert(self.bundles[bi].dst);
                }
            }
        }
        let hereditary = self.names(self.reach(ranges, true));
        crate::lattice::saturated_closure(self, &hereditary)
    }

    /// Checks that `c` really is a cycle of this graph and resolves it to
    /// vertex and bundle indices.
    fn resolve_cycle(&self, c: &Cycle) -> Result<(Vec<usize>, Vec<usize>)> {
        let bad = || Error::InvalidInput("not a cycle of this graph".into());
        if c.vertices.is_empty() || c.vertices.len() != c.bundle_ids.len() {
            return Err(bad());
        }
        let mut vs = Vec::with_capacity(c.vertices.len());
        for v in &c.vertices {
            vs.push(self.vertex_index(v).map_err(|_| bad())?);
        }
        if vs.iter().collect::<BTreeSet<_>>().len() != vs.len() {
            return Err(bad());
        }
        let mut bs = Vec::with_capacity(c.bundle_ids.len());
        for (i, id) in c.bundle_ids.iter().enumerate() {
            let b = self
                .bundles
                .iter()
                .position(|b| &b.id == id)
                .ok_or_else(bad)?;
            let next = vs[(i + 1) % vs.len()];
            if self.bundles[b].src != vs[i] || self.bundles[b].dst != next {
                return Err(bad());
            }
            bs.push(b);
        }
        Ok((vs, bs))
    }

    /// Weakly connected components, each a sorted set of vertex indices,
    /// ordered by smallest member.
    pub(crate) fn weak_components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut comps = Vec::new();
        for v in 0..self.vertices.len() {
            if seen[v] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            seen[v] = true;
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &bi in self.out[u].iter().chain(self.inc[u].iter()) {
                    for w in [self.bundles[bi].src, self.bundles[bi].dst] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Graphviz rendering with `xN`/`x∞` multiplicity labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=LR;\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for b in &self.bundles {
            let label = match b.mult {
                Mult::Finite(1) => b.id.clone(),
                Mult::Finite(m) => format!("{} x{}", b.id, m),
                Mult::Infinite => format!("{} x∞", b.id),
            };
            s.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{label}\"];\n",
                self.vertices[b.src], self.vertices[b.dst]
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// A closed path visiting no vertex twice, in canonical rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    /// `vertices[i]` is the source of `bundle_ids[i]`; the last bundle
    /// returns to `vertices[0]`.
    pub vertices: Vec<String>,
    pub bundle_ids: Vec<String>,
    pub mults: Vec<Mult>,
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            let m = match self.mults[i] {
                Mult::Finite(1) => String::new(),
                m => format!(" x{m}"),
            };
            write!(f, "{v} -{}{}-> ", self.bundle_ids[i], m)?;
        }
        write!(f, "{}", self.vertices[0])
    }
}
