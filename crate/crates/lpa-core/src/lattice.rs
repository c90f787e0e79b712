//! Hereditary saturated vertex sets, S-saturation, breaking vertices, and the
//! two lattices attached to a graph: `H_E` of hereditary saturated sets and
//! `T_E` of admissible pairs.

use std::collections::BTreeSet;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::graph::{Graph, Mult, VertexClass, VertexSet};
use crate::{Error, Result};

/// Is `X` closed under moving forward along edges?
pub fn is_hereditary(g: &Graph, set: &VertexSet) -> Result<bool> {
    let idx = g.indices(set)?;
    for &v in &idx {
        for b in g.out_bundles(v) {
            if !idx.contains(&b.dst) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Does `X` contain every regular vertex whose edge ranges all lie in `X`?
pub fn is_saturated(g: &Graph, set: &VertexSet) -> Result<bool> {
    let idx = g.indices(set)?;
    for v in 0..g.vertex_count() {
        if idx.contains(&v) || g.classify_idx(v) != VertexClass::Regular {
            continue;
        }
        if g.out_bundles(v).all(|b| idx.contains(&b.dst)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest hereditary superset of `X`: the union of the trees of its members.
pub fn hereditary_closure(g: &Graph, set: &VertexSet) -> Result<VertexSet> {
    let mut acc = VertexSet::new();
    for v in set {
        acc.append(&mut g.tree(v)?);
    }
    Ok(acc)
}

/// Smallest hereditary saturated superset of `X`.
pub fn saturated_closure(g: &Graph, set: &VertexSet) -> Result<VertexSet> {
    let mut idx = g.indices(&hereditary_closure(g, set)?)?;
    saturate_in_place(g, &mut idx, None);
    Ok(g.names(idx))
}

/// The `S`-saturation of a hereditary set `H`: the smallest hereditary
/// saturated superset that also absorbs any `v ∈ S` once all its range
/// vertices lie inside (an `∞` bundle contributes its single range vertex).
pub fn s_saturation(g: &Graph, h: &VertexSet, s: &VertexSet) -> Result<VertexSet> {
    if !is_hereditary(g, h)? {
        return Err(Error::Validation(format!("H = {} is not hereditary", fmt_set(h))));
    }
    let h_idx = g.indices(h)?;
    let s_idx = g.indices(s)?;
    for &v in &s_idx {
        if h_idx.contains(&v) {
            continue;
        }
        // Outside H the vertex must be an infinite emitter whose edges into
        // the complement of H are finitely many (possibly none).
        let inf_escapes = g
            .out_bundles(v)
            .any(|b| b.mult.is_infinite() && !h_idx.contains(&b.dst));
        if g.classify_idx(v) != VertexClass::InfiniteEmitter || inf_escapes {
            return Err(Error::Validation(format!(
                "S ⊄ H ∪ B_H: `{}` is not in H and not a breaking-type vertex of H",
                g.name(v)
            )));
        }
    }
    let mut idx = h_idx;
    saturate_in_place(g, &mut idx, Some(&s_idx));
    Ok(g.names(idx))
}

/// Fixed point of the saturation rules. `extra` holds the S-vertices for
/// which the rule fires regardless of vertex class.
fn saturate_in_place(g: &Graph, idx: &mut BTreeSet<usize>, extra: Option<&BTreeSet<usize>>) {
    loop {
        let mut grew = false;
        for v in 0..g.vertex_count() {
            if idx.contains(&v) {
                continue;
            }
            let fires_as_regular = g.classify_idx(v) == VertexClass::Regular;
            let fires_as_s = extra.is_some_and(|s| s.contains(&v));
            if !(fires_as_regular || fires_as_s) {
                continue;
            }
            if g.out_bundles(v).all(|b| idx.contains(&b.dst)) {
                idx.insert(v);
                grew = true;
            }
        }
        if !grew {
            return;
        }
    }
}

/// A hereditary saturated subset of `E^0`, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HSSet {
    vertices: VertexSet,
}

impl HSSet {
    pub fn new(g: &Graph, vertices: VertexSet) -> Result<HSSet> {
        if !is_hereditary(g, &vertices)? {
            return Err(Error::Validation(format!("{} is not hereditary", fmt_set(&vertices))));
        }
        if !is_saturated(g, &vertices)? {
            return Err(Error::Validation(format!("{} is not saturated", fmt_set(&vertices))));
        }
        Ok(HSSet { vertices })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn into_vertices(self) -> VertexSet {
        self.vertices
    }
}

/// All hereditary saturated subsets, ascending by size then lexicographic.
///
/// Every hereditary saturated set is the join of the generators
/// `H_v = saturated_closure({v})`, so closing `{∅} ∪ {H_v}` under pairwise
/// joins enumerates the whole lattice.
pub fn enumerate_he(g: &Graph) -> Result<Vec<VertexSet>> {
    let mut elements: BTreeSet<VertexSet> = BTreeSet::new();
    elements.insert(VertexSet::new());
    for v in g.vertex_names() {
        elements.insert(saturated_closure(g, &VertexSet::from([v.clone()]))?);
    }
    loop {
        let snapshot: Vec<VertexSet> = elements.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                let union: VertexSet = a.union(b).cloned().collect();
                let join = saturated_closure(g, &union)?;
                grew |= elements.insert(join);
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<VertexSet> = elements.into_iter().collect();
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

/// Breaking vertices of `H`: infinite emitters outside `H` with finitely
/// many, but at least one, edges into `E^0 \ H` (counted with multiplicity).
pub fn breaking_vertices(g: &Graph, h: &VertexSet) -> Result<VertexSet> {
    if !is_hereditary(g, h)? || !is_saturated(g, h)? {
        return Err(Error::Validation(format!(
            "{} is not hereditary saturated",
            fmt_set(h)
        )));
    }
    let idx = g.indices(h)?;
    let mut out = VertexSet::new();
    for v in 0..g.vertex_count() {
        if idx.contains(&v) || g.classify_idx(v) != VertexClass::InfiniteEmitter {
            continue;
        }
        let mut escaping: u64 = 0;
        let mut infinite = false;
        for b in g.out_bundles(v) {
            if idx.contains(&b.dst) {
                continue;
            }
            match b.mult {
                Mult::Finite(m) => escaping += m,
                Mult::Infinite => infinite = true,
            }
        }
        if !infinite && escaping > 0 {
            out.insert(g.name(v).to_string());
        }
    }
    Ok(out)
}

/// An admissible pair `(H, S)` with `H` hereditary saturated and
/// `S ⊆ B_H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AdmissiblePair {
    h: VertexSet,
    s: VertexSet,
}

impl AdmissiblePair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<AdmissiblePair> {
        let bh = breaking_vertices(g, &h)?;
        if !s.is_subset(&bh) {
            return Err(Error::Validation(format!(
                "S = {} is not a subset of B_H = {}",
                fmt_set(&s),
                fmt_set(&bh)
            )));
        }
        Ok(AdmissiblePair { h, s })
    }

    pub(crate) fn new_unchecked(h: VertexSet, s: VertexSet) -> AdmissiblePair {
        AdmissiblePair { h, s }
    }

    pub fn bottom() -> AdmissiblePair {
        AdmissiblePair { h: VertexSet::new(), s: VertexSet::new() }
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn is_bottom(&self) -> bool {
        self.h.is_empty() && self.s.is_empty()
    }

    /// `(H1,S1) ≤' (H2,S2)` iff `H1 ⊆ H2` and `S1 ⊆ H2 ∪ S2`.
    pub fn leq(&self, other: &AdmissiblePair) -> bool {
        self.h.is_subset(&other.h)
            && self.s.iter().all(|v| other.h.contains(v) || other.s.contains(v))
    }

    /// Plain text like `({v}, {u})`.
    pub fn display_plain(&self) -> String {
        format!("({}, {})", fmt_set(&self.h), fmt_set(&self.s))
    }
}

impl Serialize for AdmissiblePair {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(Some(2))?;
        m.serialize_entry("H", &self.h)?;
        m.serialize_entry("S", &self.s)?;
        m.end()
    }
}

pub(crate) fn fmt_set(s: &VertexSet) -> String {
    let mut out = String::from("{");
    for (i, v) in s.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(v);
    }
    out.push('}');
    out
}

/// The lattice `T_E` of all admissible pairs with the order `≤'`
/// materialised. Element 0 is the designated minimum `(∅, ∅)`; the nonzero
/// elements form the view `T_E*`.
#[derive(Debug, Clone)]
pub struct PairLattice {
    pairs: Vec<AdmissiblePair>,
    leq: Vec<bool>,
}

impl PairLattice {
    /// Enumerates `T_E` for a graph: every `H ∈ H_E` paired with every
    /// subset of `B_H`.
    pub fn enumerate(g: &Graph) -> Result<PairLattice> {
        let mut pairs = Vec::new();
        for h in enumerate_he(g)? {
            let bh: Vec<String> = breaking_vertices(g, &h)?.into_iter().collect();
            for mask in 0u32..(1 << bh.len()) {
                let s: VertexSet = bh
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| v.clone())
                    .collect();
                pairs.push(AdmissiblePair { h: h.clone(), s });
            }
        }
        pairs.sort_by(|a, b| {
            (a.h.len(), &a.h, a.s.len(), &a.s).cmp(&(b.h.len(), &b.h, b.s.len(), &b.s))
        });
        let n = pairs.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = pairs[i].leq(&pairs[j]);
            }
        }
        Ok(PairLattice { pairs, leq })
    }

    /// All of `T_E`, minimum first.
    pub fn pairs(&self) -> &[AdmissiblePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Indices of the `T_E*` view (everything but the minimum).
    pub fn star_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.pairs.len()).filter(|&i| !self.pairs[i].is_bottom())
    }

    pub fn star_pairs(&self) -> impl Iterator<Item = &AdmissiblePair> {
        self.pairs.iter().filter(|p| !p.is_bottom())
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.pairs.len() + j]
    }

    pub fn index_of(&self, p: &AdmissiblePair) -> Result<usize> {
        self.pairs
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::Validation(format!("{} is not an admissible pair of this graph", p.display_plain())))
    }

    /// Least upper bound in the materialised order.
    pub fn lub(&self, i: usize, j: usize) -> Result<usize> {
        let ubs: Vec<usize> = (0..self.pairs.len())
            .filter(|&k| self.leq_idx(i, k) && self.leq_idx(j, k))
            .collect();
        let minimal: Vec<usize> = ubs
            .iter()
            .copied()
            .filter(|&k| !ubs.iter().any(|&m| m != k && self.leq_idx(m, k)))
            .collect();
        match minimal.as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::Internal(format!(
                "no unique least upper bound of {} and {}",
                self.pairs[i].display_plain(),
                self.pairs[j].display_plain()
            ))),
        }
    }

    /// Greatest lower bound in the materialised order.
    pub fn glb(&self, i: usize, j: usize) -> Result<usize> {
        let lbs: Vec<usize> = (0..self.pairs.len())
            .filter(|&k| self.leq_idx(k, i) && self.leq_idx(k, j))
            .collect();
        let maximal: Vec<usize> = lbs
            .iter()
            .copied()
            .filter(|&k| !lbs.iter().any(|&m| m != k && self.leq_idx(k, m)))
            .collect();
        match maximal.as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::Internal(format!(
                "no unique greatest lower bound of {} and {}",
                self.pairs[i].display_plain(),
                self.pairs[j].display_plain()
            ))),
        }
    }

    /// Cover relations among the listed elements, as positions into `idxs`.
    pub fn covers_within(&self, idxs: &[usize]) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for (a, &i) in idxs.iter().enumerate() {
            for (b, &j) in idxs.iter().enumerate() {
                if i == j || !self.leq_idx(i, j) {
                    continue;
                }
                let between = idxs.iter().any(|&k| {
                    k != i && k != j && self.leq_idx(i, k) && self.leq_idx(k, j)
                });
                if !between {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    /// Elements with exactly one lower cover (computed over all of `T_E`).
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.pairs.len()).collect();
        let covers = self.covers_within(&all);
        (0..self.pairs.len())
            .filter(|&i| covers.iter().filter(|&&(_, up)| up == i).count() == 1)
            .collect()
    }
}

/// Join via the S-saturation formula, verified against the poset lub.
/// A disagreement means an implementation bug and is never swallowed.
pub fn pair_join(g: &Graph, l: &PairLattice, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
    let (i, j) = (l.index_of(p1)?, l.index_of(p2)?);
    let h_union: VertexSet = p1.h.union(&p2.h).cloned().collect();
    let s_union: VertexSet = p1.s.union(&p2.s).cloned().collect();
    let h = s_saturation(g, &h_union, &s_union)?;
    let s: VertexSet = s_union.difference(&h).cloned().collect();
    let formula = AdmissiblePair::new(g, h, s)
        .map_err(|e| Error::Internal(format!("join formula produced a non-admissible pair: {e}")))?;
    let lub = &l.pairs()[l.lub(i, j)?];
    if &formula != lub {
        return Err(Error::Internal(format!(
            "join formula {} disagrees with poset lub {}",
            formula.display_plain(),
            lub.display_plain()
        )));
    }
    Ok(formula)
}

/// Meet, computed purely from the materialised order.
pub fn pair_meet(l: &PairLattice, p1: &AdmissiblePair, p2: &AdmissiblePair) -> Result<AdmissiblePair> {
    let (i, j) = (l.index_of(p1)?, l.index_of(p2)?);
    Ok(l.pairs()[l.glb(i, j)?].clone())
}

/// `H_v`: the smallest hereditary saturated set containing `v`, computed as
/// the saturated closure of `{v}` and cross-checked against the intersection
/// of all members of `H_E` containing `v`.
pub fn hv(g: &Graph, v: &str) -> Result<VertexSet> {
    let by_closure = saturated_closure(g, &VertexSet::from([v.to_string()]))?;
    let mut by_intersection: Option<VertexSet> = None;
    for h in enumerate_he(g)? {
        if h.contains(v) {
            by_intersection = Some(match by_intersection {
                None => h,
                Some(acc) => acc.intersection(&h).cloned().collect(),
            });
        }
    }
    let by_intersection = by_intersection
        .ok_or_else(|| Error::Internal(format!("no hereditary saturated set contains `{v}`")))?;
    if by_closure != by_intersection {
        return Err(Error::Internal(format!(
            "H_v routes disagree for `{v}`: closure {} vs intersection {}",
            fmt_set(&by_closure),
            fmt_set(&by_intersection)
        )));
    }
    Ok(by_closure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

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

    /// Independent oracle: scan the whole powerset for the smallest superset
    /// of `h` that is hereditary, saturated, and closed under the S-rule.
    fn brute_s_saturation(g: &Graph, h: &VertexSet, s: &VertexSet) -> VertexSet {
        let vs = g.vertex_names();
        let n = vs.len();
        let mut best: Option<VertexSet> = None;
        'cand: for mask in 0u32..(1 << n) {
            let cand: VertexSet = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| vs[i].clone())
                .collect();
            if !h.is_subset(&cand)
                || !is_hereditary(g, &cand).unwrap()
                || !is_saturated(g, &cand).unwrap()
            {
                continue;
            }
            for v in s.iter() {
                let vi = g.vertex_index(v).unwrap();
                let all_in = g.out_bundles(vi).all(|b| cand.contains(g.name(b.dst)));
                if all_in && !cand.contains(v) {
                    continue 'cand;
                }
            }
            if best.as_ref().is_none_or(|b| cand.len() < b.len()) {
                best = Some(cand);
            }
        }
        best.expect("E^0 always qualifies")
    }

    #[test]
    fn closures() {
        let g = line3();
        assert_eq!(hereditary_closure(&g, &set(&["v1"])).unwrap(), set(&["v1", "v2", "v3"]));
        assert_eq!(hereditary_closure(&g, &VertexSet::new()).unwrap(), VertexSet::new());
        assert_eq!(hereditary_closure(&toeplitz(), &set(&["u"])).unwrap(), set(&["u", "v"]));

        // v1 joins by saturation once both children are in, then u.
        assert_eq!(
            saturated_closure(&g, &set(&["v2", "v3"])).unwrap(),
            set(&["u", "v1", "v2", "v3"])
        );
        // a lone child does not trigger saturation
        assert_eq!(saturated_closure(&g, &set(&["v2"])).unwrap(), set(&["v2"]));
        // idempotence on an already-closed set
        assert_eq!(saturated_closure(&g, &set(&["v3"])).unwrap(), set(&["v3"]));
    }

    #[test]
    fn s_saturation_cases() {
        let g = larki();
        // S = ∅ reduces to the plain saturated closure.
        assert_eq!(
            s_saturation(&g, &set(&["v"]), &VertexSet::new()).unwrap(),
            saturated_closure(&g, &set(&["v"])).unwrap()
        );
        // H = E^0 is already everything.
        assert_eq!(s_saturation(&g, &set(&["u", "v"]), &VertexSet::new()).unwrap(), set(&["u", "v"]));
        // u has a loop, so its range vertices never all lie in H' until u
        // itself does: the S-rule cannot fire and the fixed point stays {v}.
        assert_eq!(s_saturation(&g, &set(&["v"]), &set(&["u"])).unwrap(), set(&["v"]));
        assert_eq!(
            s_saturation(&g, &set(&["v"]), &set(&["u"])).unwrap(),
            brute_s_saturation(&g, &set(&["v"]), &set(&["u"]))
        );
        // loop-free infinite emitter: the S-rule does fire
        let g2 = Graph::new(
            vec!["a".into(), "u".into(), "v".into()],
            vec![
                ("c".into(), "u".into(), "a".into(), Mult::Finite(1)),
                ("e".into(), "u".into(), "v".into(), Mult::Infinite),
            ],
        )
        .unwrap();
        assert_eq!(
            s_saturation(&g2, &set(&["a", "v"]), &set(&["u"])).unwrap(),
            set(&["a", "u", "v"])
        );
        assert_eq!(
            s_saturation(&g2, &set(&["a", "v"]), &set(&["u"])).unwrap(),
            brute_s_saturation(&g2, &set(&["a", "v"]), &set(&["u"]))
        );
        // S-vertices already in H are allowed and change nothing
        assert_eq!(s_saturation(&g, &set(&["v"]), &set(&["v"])).unwrap(), set(&["v"]));
        // rejected: S must sit inside H ∪ B_H
        assert!(s_saturation(&g, &VertexSet::new(), &set(&["v"])).is_err());
        assert!(s_saturation(&toeplitz(), &set(&["v"]), &set(&["u"])).is_err());
    }

    #[test]
    fn he_enumeration() {
        let g = line3();
        let he = enumerate_he(&g).unwrap();
        assert_eq!(
            he,
            vec![
                VertexSet::new(),
                set(&["v2"]),
                set(&["v3"]),
                set(&["u", "v1", "v2", "v3"]),
            ]
        );
        assert_eq!(
            enumerate_he(&toeplitz()).unwrap(),
            vec![VertexSet::new(), set(&["v"]), set(&["u", "v"])]
        );
        // edgeless graph: every subset qualifies
        let edgeless = Graph::new(vec!["a".into(), "b".into(), "c".into()], vec![]).unwrap();
        assert_eq!(enumerate_he(&edgeless).unwrap().len(), 8);
    }

    #[test]
    fn he_matches_powerset_brute_force() {
        for g in [toeplitz(), larki(), line3()] {
            let vs = g.vertex_names();
            let mut brute: Vec<VertexSet> = Vec::new();
            for mask in 0u32..(1 << vs.len()) {
                let cand: VertexSet = (0..vs.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| vs[i].clone())
                    .collect();
                if is_hereditary(&g, &cand).unwrap() && is_saturated(&g, &cand).unwrap() {
                    brute.push(cand);
                }
            }
            brute.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
            assert_eq!(enumerate_he(&g).unwrap(), brute);
        }
    }

    #[test]
    fn breaking_vertex_cases() {
        let g = larki();
        assert_eq!(breaking_vertices(&g, &set(&["v"])).unwrap(), set(&["u"]));
        // with H = ∅ the ∞ bundle escapes, so the count is infinite
        assert_eq!(breaking_vertices(&g, &VertexSet::new()).unwrap(), VertexSet::new());
        // row-finite graphs never have breaking vertices
        assert_eq!(breaking_vertices(&toeplitz(), &set(&["v"])).unwrap(), VertexSet::new());
        // H must be hereditary saturated
        assert!(breaking_vertices(&g, &set(&["u"])).is_err());
    }

    #[test]
    fn pair_lattice_for_larki_is_a_chain() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let star: Vec<&AdmissiblePair> = l.star_pairs().collect();
        assert_eq!(star.len(), 3);
        assert_eq!(star[0], &AdmissiblePair::new_unchecked(set(&["v"]), VertexSet::new()));
        assert_eq!(star[1], &AdmissiblePair::new_unchecked(set(&["v"]), set(&["u"])));
        assert_eq!(star[2], &AdmissiblePair::new_unchecked(set(&["u", "v"]), VertexSet::new()));
        // chain covers
        let idxs: Vec<usize> = l.star_indices().collect();
        assert_eq!(l.covers_within(&idxs), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn pair_lattice_toeplitz_and_tiny() {
        let l = PairLattice::enumerate(&toeplitz()).unwrap();
        let star: Vec<&AdmissiblePair> = l.star_pairs().collect();
        assert_eq!(star.len(), 2);
        assert_eq!(star[0].h(), &set(&["v"]));
        assert_eq!(star[1].h(), &set(&["u", "v"]));

        let one = Graph::new(vec!["v".into()], vec![]).unwrap();
        let l = PairLattice::enumerate(&one).unwrap();
        assert_eq!(l.star_pairs().count(), 1);
    }

    #[test]
    fn joins_and_meets() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let bottom = AdmissiblePair::bottom();
        let p1 = AdmissiblePair::new(&g, set(&["v"]), VertexSet::new()).unwrap();
        let p2 = AdmissiblePair::new(&g, set(&["v"]), set(&["u"])).unwrap();
        let top = AdmissiblePair::new(&g, set(&["u", "v"]), VertexSet::new()).unwrap();

        assert_eq!(pair_join(&g, &l, &bottom, &p1).unwrap(), p1);
        assert_eq!(pair_join(&g, &l, &p1, &p2).unwrap(), p2);
        assert_eq!(pair_join(&g, &l, &p2, &p2).unwrap(), p2);
        assert_eq!(pair_meet(&l, &p2, &top).unwrap(), p2);
        assert_eq!(pair_meet(&l, &p1, &p1).unwrap(), p1);
        assert_eq!(pair_meet(&l, &bottom, &top).unwrap(), bottom);
    }

    #[test]
    fn join_formula_agrees_with_lub_everywhere() {
        for g in [toeplitz(), larki(), line3()] {
            let l = PairLattice::enumerate(&g).unwrap();
            for p1 in l.pairs() {
                for p2 in l.pairs() {
                    let join = pair_join(&g, &l, p1, p2).unwrap();
                    assert!(p1.leq(&join) && p2.leq(&join));
                }
            }
        }
    }

    #[test]
    fn hv_examples() {
        let g = line3();
        assert_eq!(hv(&g, "v1").unwrap(), set(&["u", "v1", "v2", "v3"]));
        assert_eq!(hv(&g, "v2").unwrap(), set(&["v2"]));
        assert_eq!(hv(&toeplitz(), "v").unwrap(), set(&["v"]));
        assert!(hv(&g, "zz").is_err());
    }

    #[test]
    fn hsset_validates() {
        let g = line3();
        assert!(HSSet::new(&g, set(&["v2"])).is_ok());
        assert!(HSSet::new(&g, set(&["v1"])).is_err()); // not hereditary
        assert!(HSSet::new(&g, set(&["v2", "v3"])).is_err()); // not saturated
    }

    #[test]
    fn row_finite_pairs_mirror_he() {
        for g in [toeplitz(), line3()] {
            let l = PairLattice::enumerate(&g).unwrap();
            let he = enumerate_he(&g).unwrap();
            assert_eq!(l.len(), he.len());
            for (p, h) in l.pairs().iter().zip(he.iter()) {
                assert_eq!(p.h(), h);
                assert!(p.s().is_empty());
            }
        }
    }
}
