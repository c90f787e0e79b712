//! Saturated functions `f` on the admissible-pair lattice, graded ideal
//! functions `phi` on extended vertices, the correspondence between them,
//! classification of the graded ideals they encode, and scalar-multiple
//! membership queries.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::ideal::{ideal_leq, ideal_meet, PrincipalIdeal, RingSpec};
use crate::lattice::{breaking_vertices, enumerate_he, fmt_set, saturated_closure, AdmissiblePair, HSSet, PairLattice};
use crate::{Error, Result};

/// An element of `(Ê)^0`: a vertex, or the element `v^H` attached to a
/// breaking vertex `v` of a hereditary saturated set `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtVertex {
    Plain(String),
    Broken { v: String, h: VertexSet },
}

impl ExtVertex {
    pub fn plain(v: &str) -> ExtVertex {
        ExtVertex::Plain(v.to_string())
    }

    pub fn broken(v: &str, h: VertexSet) -> ExtVertex {
        ExtVertex::Broken { v: v.to_string(), h }
    }
}

impl fmt::Display for ExtVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtVertex::Plain(v) => write!(f, "{v}"),
            ExtVertex::Broken { v, h } => {
                let inner: Vec<&str> = h.iter().map(|s| s.as_str()).collect();
                write!(f, "{v}^{{{}}}", inner.join(","))
            }
        }
    }
}

/// The whole of `(Ê)^0` for a graph, deterministically ordered.
pub fn ext_domain(g: &Graph) -> Result<Vec<ExtVertex>> {
    let mut out: Vec<ExtVertex> = g.vertex_names().iter().map(|v| ExtVertex::plain(v)).collect();
    for h in enumerate_he(g)? {
        for v in breaking_vertices(g, &h)? {
            out.push(ExtVertex::Broken { v, h: h.clone() });
        }
    }
    out.sort();
    Ok(out)
}

/// `x >= y` on `(Ê)^0`: the vertex order extended by `v >= v^H`.
/// The `v^H` elements act as sinks.
pub fn ext_geq(g: &Graph, x: &ExtVertex, y: &ExtVertex) -> Result<bool> {
    match (x, y) {
        (ExtVertex::Plain(a), ExtVertex::Plain(b)) => Ok(g.tree(a)?.contains(b)),
        (ExtVertex::Plain(a), ExtVertex::Broken { v, .. }) => Ok(g.tree(a)?.contains(v)),
        (ExtVertex::Broken { .. }, ExtVertex::Plain(_)) => Ok(false),
        (a @ ExtVertex::Broken { .. }, b @ ExtVertex::Broken { .. }) => Ok(a == b),
    }
}

#[derive(Serialize, Deserialize)]
pub struct PairDoc {
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct FEntryDoc {
    pub pair: PairDoc,
    pub ideal: PrincipalIdeal,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiKeyDoc {
    Plain { vertex: String },
    Broken { broken: BrokenDoc },
}

#[derive(Serialize, Deserialize)]
pub struct BrokenDoc {
    pub v: String,
    #[serde(rename = "H")]
    pub h: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct PhiEntryDoc {
    #[serde(flatten)]
    pub key: PhiKeyDoc,
    pub ideal: PrincipalIdeal,
}

/// A total map `T_E* -> L(R)`; saturation (joins to intersections) is
/// checked separately by [`validate_saturated`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturatedFn {
    ring: RingSpec,
    /// Parallel to `l.pairs()[1..]` (the minimum has no value).
    values: Vec<PrincipalIdeal>,
}

impl SaturatedFn {
    pub fn new(l: &PairLattice, entries: Vec<(AdmissiblePair, PrincipalIdeal)>) -> Result<SaturatedFn> {
        if l.len() <= 1 {
            return Err(Error::Validation("T_E* is empty; no saturated functions exist".into()));
        }
        let mut slots: Vec<Option<PrincipalIdeal>> = vec![None; l.len() - 1];
        let mut ring: Option<RingSpec> = None;
        for (pair, ideal) in entries {
            if pair.is_bottom() {
                return Err(Error::Validation(
                    "f is defined on T_E*; the minimum (∅, ∅) takes no value".into(),
                ));
            }
            let idx = l.index_of(&pair)?;
            match ring {
                None => ring = Some(ideal.ring()),
                Some(r) if r != ideal.ring() => {
                    return Err(Error::RingMismatch(r.display_plain(), ideal.ring().display_plain()))
                }
                _ => {}
            }
            if slots[idx - 1].replace(ideal).is_some() {
                return Err(Error::Validation(format!(
                    "duplicate assignment for {}",
                    pair.display_plain()
                )));
            }
        }
        let missing: Vec<String> = slots
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| l.pairs()[i + 1].display_plain())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "partial assignment; missing admissible pairs: {}",
                missing.join(", ")
            )));
        }
        Ok(SaturatedFn {
            ring: ring.expect("nonempty domain"),
            values: slots.into_iter().map(|s| s.expect("checked")).collect(),
        })
    }

    /// Assembles an `f` from JSON entries against a concrete lattice.
    pub fn from_docs(g: &Graph, l: &PairLattice, docs: Vec<FEntryDoc>) -> Result<SaturatedFn> {
        let mut entries = Vec::with_capacity(docs.len());
        for d in docs {
            let pair = AdmissiblePair::new(
                g,
                d.pair.h.into_iter().collect(),
                d.pair.s.into_iter().collect(),
            )?;
            entries.push((pair, d.ideal));
        }
        SaturatedFn::new(l, entries)
    }

    pub fn to_docs(&self, l: &PairLattice) -> Vec<FEntryDoc> {
        l.star_indices()
            .map(|i| FEntryDoc {
                pair: PairDoc {
                    h: l.pairs()[i].h().iter().cloned().collect(),
                    s: l.pairs()[i].s().iter().cloned().collect(),
                },
                ideal: self.value_at(i),
            })
            .collect()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Value at a lattice index (never the minimum).
    pub fn value_at(&self, idx: usize) -> PrincipalIdeal {
        assert!(idx >= 1, "f has no value at the lattice minimum");
        self.values[idx - 1]
    }

    pub fn value_of(&self, l: &PairLattice, p: &AdmissiblePair) -> Result<PrincipalIdeal> {
        let idx = l.index_of(p)?;
        if idx == 0 {
            return Err(Error::InvalidInput("f has no value at the minimum (∅, ∅)".into()));
        }
        Ok(self.value_at(idx))
    }

    /// Image over `T_E*`.
    pub fn image(&self) -> std::collections::BTreeSet<PrincipalIdeal> {
        self.values.iter().copied().collect()
    }
}

/// Pointwise order `f1 <= f2` (inclusion at every pair).
pub fn f_leq(f1: &SaturatedFn, f2: &SaturatedFn) -> Result<bool> {
    if f1.values.len() != f2.values.len() {
        return Err(Error::InvalidInput("saturated functions over different lattices".into()));
    }
    for (a, b) in f1.values.iter().zip(f2.values.iter()) {
        if !ideal_leq(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One failed instance of the saturation condition.
#[derive(Debug, Clone, Serialize)]
pub struct JoinViolation {
    pub p1: String,
    pub p2: String,
    pub join: String,
    pub f_of_join: String,
    pub meet_of_values: String,
}

impl fmt::Display for JoinViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "f({} ∨ {}) = f({}) = {} but f({}) ∩ f({}) = {}",
            self.p1, self.p2, self.join, self.f_of_join, self.p1, self.p2, self.meet_of_values
        )
    }
}

/// Result of checking the binary join condition on all pairs of `T_E*`.
/// Arbitrary families follow by induction in a finite lattice.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<JoinViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f(p1 ∨ p2) = f(p1) ∩ f(p2)` for every pair of `T_E*` elements.
pub fn validate_saturated(l: &PairLattice, f: &SaturatedFn) -> Result<ValidationReport> {
    let idxs: Vec<usize> = l.star_indices().collect();
    let mut violations = Vec::new();
    for (a, &i) in idxs.iter().enumerate() {
        for &j in &idxs[a..] {
            let k = l.lub(i, j)?;
            let lhs = f.value_at(k);
            let rhs = ideal_meet(&f.value_at(i), &f.value_at(j))?;
            if lhs != rhs {
                violations.push(JoinViolation {
                    p1: l.pairs()[i].display_plain(),
                    p2: l.pairs()[j].display_plain(),
                    join: l.pairs()[k].display_plain(),
                    f_of_join: lhs.display_plain(),
                    meet_of_values: rhs.display_plain(),
                });
            }
        }
    }
    Ok(ValidationReport { violations })
}

fn require_valid(l: &PairLattice, f: &SaturatedFn) -> Result<()> {
    let report = validate_saturated(l, f)?;
    if !report.is_valid() {
        return Err(Error::Validation(format!(
            "f is not a saturated function; first violation: {}",
            report.violations[0]
        )));
    }
    Ok(())
}

/// A total map `(Ê)^0 -> L(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdealFn {
    ring: RingSpec,
    entries: BTreeMap<ExtVertex, PrincipalIdeal>,
}

impl GradedIdealFn {
    pub fn new(g: &Graph, entries: BTreeMap<ExtVertex, PrincipalIdeal>) -> Result<GradedIdealFn> {
        let domain = ext_domain(g)?;
        let mut ring: Option<RingSpec> = None;
        for (x, ideal) in &entries {
            if !domain.contains(x) {
                return Err(Error::Validation(format!("`{x}` is not an element of (Ê)^0")));
            }
            match ring {
                None => ring = Some(ideal.ring()),
                Some(r) if r != ideal.ring() => {
                    return Err(Error::RingMismatch(r.display_plain(), ideal.ring().display_plain()))
                }
                _ => {}
            }
        }
        let missing: Vec<String> = domain
            .iter()
            .filter(|x| !entries.contains_key(x))
            .map(|x| x.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "partial assignment; missing extended vertices: {}",
                missing.join(", ")
            )));
        }
        let ring = ring.ok_or_else(|| Error::Validation("phi has an empty domain".into()))?;
        Ok(GradedIdealFn { ring, entries })
    }

    pub fn from_docs(g: &Graph, docs: Vec<PhiEntryDoc>) -> Result<GradedIdealFn> {
        let mut entries = BTreeMap::new();
        for d in docs {
            let key = match d.key {
                PhiKeyDoc::Plain { vertex } => ExtVertex::Plain(vertex),
                PhiKeyDoc::Broken { broken } => ExtVertex::Broken {
                    v: broken.v,
                    h: broken.h.into_iter().collect(),
                },
            };
            if entries.insert(key.clone(), d.ideal).is_some() {
                return Err(Error::Validation(format!("duplicate assignment for `{key}`")));
            }
        }
        GradedIdealFn::new(g, entries)
    }

    pub fn to_docs(&self) -> Vec<PhiEntryDoc> {
        self.entries
            .iter()
            .map(|(k, ideal)| PhiEntryDoc {
                key: match k {
                    ExtVertex::Plain(v) => PhiKeyDoc::Plain { vertex: v.clone() },
                    ExtVertex::Broken { v, h } => PhiKeyDoc::Broken {
                        broken: BrokenDoc { v: v.clone(), h: h.iter().cloned().collect() },
                    },
                },
                ideal: *ideal,
            })
            .collect()
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn value(&self, x: &ExtVertex) -> Result<PrincipalIdeal> {
        self.entries
            .get(x)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("`{x}` is not an element of (Ê)^0")))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ExtVertex, &PrincipalIdeal)> {
        self.entries.iter()
    }

    /// Image over the plain vertices only (what the row-finite decomposition
    /// indexes by).
    pub fn vertex_image(&self) -> std::collections::BTreeSet<PrincipalIdeal> {
        self.entries
            .iter()
            .filter(|(k, _)| matches!(k, ExtVertex::Plain(_)))
            .map(|(_, v)| *v)
            .collect()
    }

    /// Plain vertices mapped to exactly `i`.
    pub fn vertex_preimage(&self, i: &PrincipalIdeal) -> VertexSet {
        self.entries
            .iter()
            .filter_map(|(k, v)| match k {
                ExtVertex::Plain(name) if v == i => Some(name.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Pointwise order `phi1 <= phi2`.
pub fn phi_leq(p1: &GradedIdealFn, p2: &GradedIdealFn) -> Result<bool> {
    if p1.entries.len() != p2.entries.len() {
        return Err(Error::InvalidInput("graded ideal functions over different domains".into()));
    }
    for ((k1, a), (k2, b)) in p1.entries.iter().zip(p2.entries.iter()) {
        if k1 != k2 {
            return Err(Error::InvalidInput("graded ideal functions over different domains".into()));
        }
        if !ideal_leq(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `phi_f(u) = f((H_u, ∅))` and `phi_f(v^H) = f((H, {v}))`.
pub fn phi_from_f(g: &Graph, l: &PairLattice, f: &SaturatedFn) -> Result<GradedIdealFn> {
    require_valid(l, f)?;
    let mut entries = BTreeMap::new();
    for u in g.vertex_names() {
        let hu = saturated_closure(g, &VertexSet::from([u.clone()]))?;
        let pair = AdmissiblePair::new_unchecked(hu, VertexSet::new());
        entries.insert(ExtVertex::plain(u), f.value_of(l, &pair)?);
    }
    for x in ext_domain(g)? {
        if let ExtVertex::Broken { v, h } = &x {
            let pair = AdmissiblePair::new_unchecked(h.clone(), VertexSet::from([v.clone()]));
            entries.insert(x.clone(), f.value_of(l, &pair)?);
        }
    }
    GradedIdealFn::new(g, entries)
}

/// `f_phi(H,S) = ⋂_{u ∈ H} phi(u) ∩ ⋂_{v ∈ S} phi(v^H)`.
pub fn f_from_phi(l: &PairLattice, phi: &GradedIdealFn) -> Result<SaturatedFn> {
    let mut entries = Vec::new();
    for i in l.star_indices() {
        let pair = &l.pairs()[i];
        let mut acc = phi.ring().unit_ideal();
        for u in pair.h() {
            acc = ideal_meet(&acc, &phi.value(&ExtVertex::plain(u))?)?;
        }
        for v in pair.s() {
            acc = ideal_meet(&acc, &phi.value(&ExtVertex::broken(v, pair.h().clone()))?)?;
        }
        entries.push((pair.clone(), acc));
    }
    SaturatedFn::new(l, entries)
}

/// One failed clause of the graded-ideal-function conditions.
#[derive(Debug, Clone, Serialize)]
pub struct PhiViolation {
    pub clause: String,
    pub witness: String,
}

impl fmt::Display for PhiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.clause, self.witness)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiReport {
    pub violations: Vec<PhiViolation>,
}

impl PhiReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Validates a candidate graded ideal function:
/// (a) order reversal on `(Ê)^0`, (b) `phi(u) = ⋂_{w ∈ H_u} phi(w)`,
/// (c) `phi(v) ⊆ phi(v^H)`, and (d) the induced `f_phi` is saturated with
/// `phi_{f_phi} = phi`.
pub fn validate_phi(g: &Graph, l: &PairLattice, phi: &GradedIdealFn) -> Result<PhiReport> {
    let mut violations = Vec::new();
    let domain = ext_domain(g)?;
    for x in &domain {
        for y in &domain {
            if x != y && ext_geq(g, x, y)? {
                let (vx, vy) = (phi.value(x)?, phi.value(y)?);
                if !ideal_leq(&vx, &vy)? {
                    violations.push(PhiViolation {
                        clause: "order-reversal".into(),
                        witness: format!(
                            "{x} ≥ {y} but phi({x}) = {} ⊄ phi({y}) = {}",
                            vx.display_plain(),
                            vy.display_plain()
                        ),
                    });
                }
            }
        }
    }
    for u in g.vertex_names() {
        let hu = saturated_closure(g, &VertexSet::from([u.clone()]))?;
        let mut acc = phi.ring().unit_ideal();
        for w in &hu {
            acc = ideal_meet(&acc, &phi.value(&ExtVertex::plain(w))?)?;
        }
        let vu = phi.value(&ExtVertex::plain(u))?;
        if acc != vu {
            violations.push(PhiViolation {
                clause: "vertex-meet".into(),
                witness: format!(
                    "phi({u}) = {} but ⋂ phi over H_{u} = {} is {}",
                    vu.display_plain(),
                    fmt_set(&hu),
                    acc.display_plain()
                ),
            });
        }
    }
    for x in &domain {
        if let ExtVertex::Broken { v, .. } = x {
            let (plain, broken) = (phi.value(&ExtVertex::plain(v))?, phi.value(x)?);
            if !ideal_leq(&plain, &broken)? {
                violations.push(PhiViolation {
                    clause: "breaking-inclusion".into(),
                    witness: format!(
                        "phi({v}) = {} ⊄ phi({x}) = {}",
                        plain.display_plain(),
                        broken.display_plain()
                    ),
                });
            }
        }
    }
    let f = f_from_phi(l, phi)?;
    let f_report = validate_saturated(l, &f)?;
    if !f_report.is_valid() {
        violations.push(PhiViolation {
            clause: "induced-f-saturated".into(),
            witness: format!("f_phi violates the join condition: {}", f_report.violations[0]),
        });
    } else {
        let back = phi_from_f(g, l, &f)?;
        if &back != phi {
            let diff = phi
                .entries()
                .find(|(k, v)| back.value(k).ok().as_ref() != Some(v))
                .map(|(k, _)| k.to_string())
                .unwrap_or_default();
            violations.push(PhiViolation {
                clause: "round-trip".into(),
                witness: format!("phi_{{f_phi}} differs from phi at `{diff}`"),
            });
        }
    }
    Ok(PhiReport { violations })
}

fn require_valid_phi(g: &Graph, l: &PairLattice, phi: &GradedIdealFn) -> Result<()> {
    let report = validate_phi(g, l, phi)?;
    if !report.is_valid() {
        return Err(Error::Validation(format!(
            "phi is not a graded ideal function; first violation: {}",
            report.violations[0]
        )));
    }
    Ok(())
}

/// Classification of the graded ideal encoded by `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealClassKind {
    Basic,
    IBasic(PrincipalIdeal),
    GeneralGraded,
}

#[derive(Debug, Clone)]
pub struct IdealClass {
    pub kind: IdealClassKind,
    pub image: std::collections::BTreeSet<PrincipalIdeal>,
}

impl IdealClass {
    pub fn display_plain(&self) -> String {
        match &self.kind {
            IdealClassKind::Basic => "basic".to_string(),
            IdealClassKind::IBasic(i) => format!("{}-basic", i.display_plain()),
            IdealClassKind::GeneralGraded => "general-graded".to_string(),
        }
    }
}

/// Basic when `Im(f) ⊆ {{0}, R}` (basic takes precedence over `R`- and
/// `0`-basic readings); `I`-basic when `Im(f)` is `{I}` or `{I, R}`;
/// otherwise a general graded ideal.
pub fn classify(l: &PairLattice, f: &SaturatedFn) -> Result<IdealClass> {
    require_valid(l, f)?;
    let image = f.image();
    let ring = f.ring();
    let basic = image
        .iter()
        .all(|i| i.is_zero_ideal() || i.is_unit_ideal());
    if basic {
        return Ok(IdealClass { kind: IdealClassKind::Basic, image });
    }
    // The top of T_E is (E^0, ∅); f is order-reversing, so f(top) is the
    // smallest value in the image.
    let top = l.len() - 1;
    let i = f.value_at(top);
    let ibasic = image.iter().all(|j| *j == i || j.is_unit_ideal());
    if ibasic {
        debug_assert!(ring == i.ring());
        return Ok(IdealClass { kind: IdealClassKind::IBasic(i), image });
    }
    Ok(IdealClass { kind: IdealClassKind::GeneralGraded, image })
}

/// Is `k·x` an element of the graded ideal encoded by `phi`?
///
/// For `x = v^H` the query additionally requires `k·u ∈ A` for every
/// `u ∈ H`, matching the inverse map of the membership theorem.
pub fn membership(phi: &GradedIdealFn, k: i64, x: &ExtVertex) -> Result<bool> {
    let vx = phi.value(x)?;
    if !vx.contains(k) {
        return Ok(false);
    }
    if let ExtVertex::Broken { h, .. } = x {
        for u in h {
            if !phi.value(&ExtVertex::plain(u))?.contains(k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The admissible pair of the maximal graded basic ideal contained in the
/// ideal of `f`.
#[derive(Debug, Clone)]
pub struct MaxBasicPair {
    pub pair: AdmissiblePair,
    /// Set when the basic part is the zero ideal, i.e. the pair is `(∅, ∅)`.
    pub zero_basic_part: bool,
}

/// `H = {v : phi_f(v) = R}` and `S = {v ∈ B_H : phi_f(v^H) = R}`; every
/// pair with `f = R` sits below the result.
pub fn max_basic_pair(g: &Graph, l: &PairLattice, f: &SaturatedFn) -> Result<MaxBasicPair> {
    let phi = phi_from_f(g, l, f)?;
    let mut h = VertexSet::new();
    for u in g.vertex_names() {
        if phi.value(&ExtVertex::plain(u))?.is_unit_ideal() {
            h.insert(u.clone());
        }
    }
    let h = HSSet::new(g, h)
        .map_err(|e| Error::Internal(format!("max-basic H is not hereditary saturated: {e}")))?
        .into_vertices();
    let mut s = VertexSet::new();
    for v in breaking_vertices(g, &h)? {
        if phi.value(&ExtVertex::broken(&v, h.clone()))?.is_unit_ideal() {
            s.insert(v);
        }
    }
    let pair = AdmissiblePair::new(g, h, s)
        .map_err(|e| Error::Internal(format!("max-basic pair is not admissible: {e}")))?;
    for i in l.star_indices() {
        if f.value_at(i).is_unit_ideal() && !l.pairs()[i].leq(&pair) {
            return Err(Error::Internal(format!(
                "pair {} has f = R but is not below the maximal basic pair {}",
                l.pairs()[i].display_plain(),
                pair.display_plain()
            )));
        }
    }
    let zero = pair.is_bottom();
    Ok(MaxBasicPair { pair, zero_basic_part: zero })
}

/// Convenience used by the quotient theorems: accepts an `f`, validates it,
/// and returns its `phi`.
pub fn phi_of_valid_f(g: &Graph, l: &PairLattice, f: &SaturatedFn) -> Result<GradedIdealFn> {
    phi_from_f(g, l, f)
}

/// Validates `phi` before handing it to a quotient computation.
pub fn checked_phi(g: &Graph, l: &PairLattice, phi: &GradedIdealFn) -> Result<()> {
    require_valid_phi(g, l, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Mult;
    use crate::ideal::quotient_ring;

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

    fn z(g: u64) -> PrincipalIdeal {
        PrincipalIdeal::new(RingSpec::Int, g).unwrap()
    }

    fn pair(g: &Graph, h: &[&str], s: &[&str]) -> AdmissiblePair {
        AdmissiblePair::new(g, set(h), set(s)).unwrap()
    }

    /// The worked non-basic ideal on the ∞-emitter graph:
    /// f = [({v},∅) ↦ Z, ({v},{u}) ↦ 2Z, (E^0,∅) ↦ 0Z].
    fn larki_f(g: &Graph, l: &PairLattice) -> SaturatedFn {
        SaturatedFn::new(
            l,
            vec![
                (pair(g, &["v"], &[]), z(1)),
                (pair(g, &["v"], &["u"]), z(2)),
                (pair(g, &["u", "v"], &[]), z(0)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_the_worked_chain() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        assert!(validate_saturated(&l, &f).unwrap().is_valid());
    }

    #[test]
    fn validate_rejects_non_reversing_chain() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(3)),
                (pair(&g, &["v"], &["u"]), z(2)),
                (pair(&g, &["u", "v"], &[]), z(0)),
            ],
        )
        .unwrap();
        let report = validate_saturated(&l, &f).unwrap();
        assert!(!report.is_valid());
        // join of the two lower chain elements is the larger one; the meet of
        // the values is 6Z, not 2Z
        assert!(report.violations.iter().any(|v| v.meet_of_values == "6Z"));
    }

    #[test]
    fn constant_f_is_valid_and_basic_when_unit() {
        let g = toeplitz();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = SaturatedFn::new(
            &l,
            vec![(pair(&g, &["v"], &[]), z(1)), (pair(&g, &["u", "v"], &[]), z(1))],
        )
        .unwrap();
        assert!(validate_saturated(&l, &f).unwrap().is_valid());
        let class = classify(&l, &f).unwrap();
        assert_eq!(class.kind, IdealClassKind::Basic);
    }

    #[test]
    fn partial_assignments_are_listed() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let err = SaturatedFn::new(&l, vec![(pair(&g, &["v"], &[]), z(1))]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("missing admissible pairs"));
        assert!(msg.contains("({v}, {u})"));
        assert!(msg.contains("({u,v}, {})"));
    }

    #[test]
    fn phi_from_f_on_the_worked_example() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        let phi = phi_from_f(&g, &l, &f).unwrap();
        assert_eq!(phi.value(&ExtVertex::plain("v")).unwrap(), z(1));
        assert_eq!(phi.value(&ExtVertex::plain("u")).unwrap(), z(0));
        assert_eq!(phi.value(&ExtVertex::broken("u", set(&["v"]))).unwrap(), z(2));
    }

    #[test]
    fn phi_from_f_toeplitz_case() {
        let g = toeplitz();
        let l = PairLattice::enumerate(&g).unwrap();
        let n = 5;
        let f = SaturatedFn::new(
            &l,
            vec![(pair(&g, &["v"], &[]), z(1)), (pair(&g, &["u", "v"], &[]), z(n))],
        )
        .unwrap();
        let phi = phi_from_f(&g, &l, &f).unwrap();
        assert_eq!(phi.value(&ExtVertex::plain("v")).unwrap(), z(1));
        assert_eq!(phi.value(&ExtVertex::plain("u")).unwrap(), z(n));
    }

    #[test]
    fn f_phi_round_trip() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        let phi = phi_from_f(&g, &l, &f).unwrap();
        let back = f_from_phi(&l, &phi).unwrap();
        assert_eq!(back, f);
        let phi2 = phi_from_f(&g, &l, &back).unwrap();
        assert_eq!(phi2, phi);
    }

    #[test]
    fn f_from_phi_meets_over_vertices() {
        // phi = [v2 ↦ pZ, v3 ↦ qZ, u, v1 ↦ pqZ] gives f((E^0,∅)) = pqZ.
        let g = line3();
        let l = PairLattice::enumerate(&g).unwrap();
        let (p, q) = (2u64, 3u64);
        let phi = GradedIdealFn::new(
            &g,
            BTreeMap::from([
                (ExtVertex::plain("v2"), z(p)),
                (ExtVertex::plain("v3"), z(q)),
                (ExtVertex::plain("u"), z(p * q)),
                (ExtVertex::plain("v1"), z(p * q)),
            ]),
        )
        .unwrap();
        assert!(validate_phi(&g, &l, &phi).unwrap().is_valid());
        let f = f_from_phi(&l, &phi).unwrap();
        assert_eq!(f.value_of(&l, &pair(&g, &["u", "v1", "v2", "v3"], &[])).unwrap(), z(6));
        // constant phi ≡ R gives constant f ≡ R
        let triv = GradedIdealFn::new(
            &g,
            g.vertex_names()
                .iter()
                .map(|v| (ExtVertex::plain(v), z(1)))
                .collect(),
        )
        .unwrap();
        let f = f_from_phi(&l, &triv).unwrap();
        assert!(f.image().iter().all(|i| i.is_unit_ideal()));
    }

    #[test]
    fn phi_validation_catches_order_reversal() {
        // v1 ≥ v2 but phi(v1) ⊄ phi(v2) when phi(v1) = Z and phi(v2) = 2Z.
        let g = line3();
        let l = PairLattice::enumerate(&g).unwrap();
        let phi = GradedIdealFn::new(
            &g,
            BTreeMap::from([
                (ExtVertex::plain("u"), z(1)),
                (ExtVertex::plain("v1"), z(1)),
                (ExtVertex::plain("v2"), z(2)),
                (ExtVertex::plain("v3"), z(1)),
            ]),
        )
        .unwrap();
        let report = validate_phi(&g, &l, &phi).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| v.clause == "order-reversal"));
    }

    #[test]
    fn classification_cases() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        // a = 1, b = c = n: an nZ-basic ideal
        let n = 4;
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(1)),
                (pair(&g, &["v"], &["u"]), z(n)),
                (pair(&g, &["u", "v"], &[]), z(n)),
            ],
        )
        .unwrap();
        assert_eq!(classify(&l, &f).unwrap().kind, IdealClassKind::IBasic(z(n)));
        // the worked chain has three distinct values
        let f = larki_f(&g, &l);
        assert_eq!(classify(&l, &f).unwrap().kind, IdealClassKind::GeneralGraded);
        assert_eq!(classify(&l, &f).unwrap().image.len(), 3);
    }

    #[test]
    fn membership_queries() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        let phi = phi_from_f(&g, &l, &f).unwrap();
        let uh = ExtVertex::broken("u", set(&["v"]));
        assert!(membership(&phi, 2, &uh).unwrap());
        assert!(!membership(&phi, 1, &uh).unwrap());
        assert!(membership(&phi, 0, &uh).unwrap());
        assert!(membership(&phi, 0, &ExtVertex::plain("u")).unwrap());
        assert!(!membership(&phi, 5, &ExtVertex::plain("u")).unwrap());
        assert!(membership(&phi, 7, &ExtVertex::plain("v")).unwrap());
        assert!(membership(&phi, 12, &uh).unwrap());
        assert!(matches!(
            membership(&phi, 1, &ExtVertex::plain("zz")),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn maximal_basic_pairs() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        // the worked chain: basic part is I({v}, ∅)
        let f = larki_f(&g, &l);
        let mb = max_basic_pair(&g, &l, &f).unwrap();
        assert_eq!(mb.pair, pair(&g, &["v"], &[]));
        assert!(!mb.zero_basic_part);
        // a = b = 1, c = n: H = {v}, S = {u}
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(1)),
                (pair(&g, &["v"], &["u"]), z(1)),
                (pair(&g, &["u", "v"], &[]), z(4)),
            ],
        )
        .unwrap();
        let mb = max_basic_pair(&g, &l, &f).unwrap();
        assert_eq!(mb.pair, pair(&g, &["v"], &["u"]));
        // f ≡ R: the whole algebra, top pair
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(1)),
                (pair(&g, &["v"], &["u"]), z(1)),
                (pair(&g, &["u", "v"], &[]), z(1)),
            ],
        )
        .unwrap();
        let mb = max_basic_pair(&g, &l, &f).unwrap();
        assert_eq!(mb.pair, pair(&g, &["u", "v"], &[]));
        // f ≡ nZ: zero basic part
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(3)),
                (pair(&g, &["v"], &["u"]), z(3)),
                (pair(&g, &["u", "v"], &[]), z(3)),
            ],
        )
        .unwrap();
        let mb = max_basic_pair(&g, &l, &f).unwrap();
        assert!(mb.zero_basic_part);
    }

    #[test]
    fn valid_f_is_order_reversing() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        for i in l.star_indices() {
            for j in l.star_indices() {
                if l.leq_idx(i, j) {
                    assert!(ideal_leq(&f.value_at(j), &f.value_at(i)).unwrap());
                }
            }
        }
    }

    #[test]
    fn ext_domain_of_larki() {
        let g = larki();
        let d = ext_domain(&g).unwrap();
        assert_eq!(
            d,
            vec![
                ExtVertex::plain("u"),
                ExtVertex::plain("v"),
                ExtVertex::broken("u", set(&["v"])),
            ]
        );
        assert_eq!(ext_domain(&line3()).unwrap().len(), 4);
    }

    #[test]
    fn quotient_ring_of_classified_ideal() {
        // sanity hop across modules: the nZ-basic ideal quotients Z to Z_n
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = SaturatedFn::new(
            &l,
            vec![
                (pair(&g, &["v"], &[]), z(1)),
                (pair(&g, &["v"], &["u"]), z(6)),
                (pair(&g, &["u", "v"], &[]), z(6)),
            ],
        )
        .unwrap();
        match classify(&l, &f).unwrap().kind {
            IdealClassKind::IBasic(i) => {
                assert_eq!(quotient_ring(RingSpec::Int, &i).unwrap(), RingSpec::IntMod(6));
            }
            other => panic!("expected IBasic, got {other:?}"),
        }
    }

    #[test]
    fn phi_json_docs() {
        let g = larki();
        let l = PairLattice::enumerate(&g).unwrap();
        let f = larki_f(&g, &l);
        let phi = phi_from_f(&g, &l, &f).unwrap();
        let txt = serde_json::to_string(&phi.to_docs()).unwrap();
        assert!(txt.contains(r#""broken":{"v":"u","H":["v"]}"#));
        let docs: Vec<PhiEntryDoc> = serde_json::from_str(&txt).unwrap();
        let phi2 = GradedIdealFn::from_docs(&g, docs).unwrap();
        assert_eq!(phi, phi2);
    }
}
