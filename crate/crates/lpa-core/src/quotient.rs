//! The two quotient theorems, realised symbolically: the quotient of
//! `L_R(E)` by an I-basic graded ideal via the quotient graph, and the
//! row-finite decomposition of a quotient by an arbitrary graded ideal into
//! a direct sum of Leavitt path algebras over porcupine graphs — plus the
//! consistency cross-check on their common domain.

use crate::construct::{porcupine, quotient_graph, recognize, AlgebraDescriptor, PorcupineGraph, QuotientGraph, Term};
use crate::graded::{
    checked_phi, classify, max_basic_pair, phi_from_f, GradedIdealFn, IdealClass, IdealClassKind,
    SaturatedFn,
};
use crate::graph::Graph;
use crate::ideal::{quotient_ring, PrincipalIdeal, RingSpec};
use crate::lattice::{fmt_set, AdmissiblePair, PairLattice};
use crate::symbols::SymbolTable;
use crate::{Error, Result};

/// Fallback display name for a quotient graph.
fn quotient_name(pair: &AdmissiblePair) -> String {
    if pair.is_bottom() {
        "E".to_string()
    } else {
        format!("E\\({}, {})", fmt_set(pair.h()), fmt_set(pair.s()))
    }
}

fn porcupine_name(g: &Graph, x: &crate::graph::VertexSet) -> String {
    if x.len() == g.vertex_count() {
        "E".to_string()
    } else {
        format!("_{}E", fmt_set(x))
    }
}

/// The target data of the quotient epimorphism, defined for every valid `f`:
/// `R/I` with `I = f((E^0, ∅))` and the quotient graph by the maximal basic
/// pair. For an I-basic ideal this target is an isomorphism; in general it
/// is only an epimorphism.
#[derive(Debug, Clone)]
pub struct EpiTarget {
    pub pair: AdmissiblePair,
    pub ideal: PrincipalIdeal,
    pub ring: RingSpec,
    pub quotient: QuotientGraph,
    pub descriptor: AlgebraDescriptor,
}

pub fn epimorphism_target(g: &Graph, l: &PairLattice, f: &SaturatedFn) -> Result<EpiTarget> {
    let mb = max_basic_pair(g, l, f)?;
    let ideal = f.value_at(l.len() - 1);
    let ring = quotient_ring(f.ring(), &ideal)?;
    let quotient = quotient_graph(g, &mb.pair)?;
    let name = quotient_name(&mb.pair);
    let descriptor = if ring.is_zero_ring() {
        AlgebraDescriptor::new(Vec::new())
    } else if quotient.graph.is_row_finite() {
        recognize(&quotient.graph, ring, &name)?
    } else {
        AlgebraDescriptor::new(vec![Term::Named { name, ring }])
    };
    Ok(EpiTarget { pair: mb.pair, ideal, ring, quotient, descriptor })
}

/// Quotient by an I-basic graded ideal: `L_R(E)/A ≅ L_{R/I}(E\(H,S))`.
#[derive(Debug, Clone)]
pub struct IBasicResult {
    pub class: IdealClass,
    pub target: EpiTarget,
}

impl IBasicResult {
    /// `L_R(E)/A ≅ <descriptor>`.
    pub fn render(&self, input_ring: RingSpec, syms: &SymbolTable) -> String {
        let sub = ring_subscript(&input_ring, syms);
        format!("L{sub}(E)/A ≅ {}", self.target.descriptor.render(syms))
    }
}

fn ring_subscript(ring: &RingSpec, syms: &SymbolTable) -> String {
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

pub fn quotient_ibasic(g: &Graph, l: &PairLattice, f: &SaturatedFn) -> Result<IBasicResult> {
    let class = classify(l, f)?;
    if class.kind == IdealClassKind::GeneralGraded {
        return Err(Error::Validation(
            "the ideal is not I-basic; use the row-finite decomposition, or the epimorphism-only target"
                .into(),
        ));
    }
    let target = epimorphism_target(g, l, f)?;
    Ok(IBasicResult { class, target })
}

/// One summand of the row-finite decomposition.
#[derive(Debug, Clone)]
pub struct Summand {
    pub ideal: PrincipalIdeal,
    pub ring: RingSpec,
    pub preimage: crate::graph::VertexSet,
    pub porcupine: PorcupineGraph,
    /// Present when the porcupine was fully materialised.
    pub descriptor: Option<AlgebraDescriptor>,
    /// `I = R`: the summand is the zero algebra and is excluded from the
    /// printed sum.
    pub vanishing: bool,
}

/// `L_R(E)/A ≅ ⊕_{I ∈ Im(phi)} L_{R/I}(_{phi^{-1}(I)}E)`, summands ordered
/// by canonical generator.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub input_ring: RingSpec,
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn non_vanishing(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| !s.vanishing)
    }

    /// The printed direct sum, `0` when everything vanishes.
    pub fn render_sum(&self, syms: &SymbolTable) -> String {
        let parts: Vec<String> = self
            .non_vanishing()
            .map(|s| match &s.descriptor {
                Some(d) => d.render(syms),
                None => format!(
                    "L{}(truncated porcupine over {})",
                    ring_subscript(&s.ring, syms),
                    fmt_set(&s.preimage)
                ),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" (+) ")
        }
    }

    pub fn render(&self, syms: &SymbolTable) -> String {
        format!("L{}(E)/A ≅ {}", ring_subscript(&self.input_ring, syms), self.render_sum(syms))
    }
}

pub fn decompose(g: &Graph, l: &PairLattice, phi: &GradedIdealFn, depth: usize) -> Result<Decomposition> {
    if !g.is_row_finite() {
        let culprit = g
            .bundles()
            .iter()
            .find(|b| b.mult.is_infinite())
            .map(|b| b.id.clone())
            .unwrap_or_default();
        return Err(Error::NotRowFinite(format!(
            "bundle `{culprit}` has multiplicity ∞; the direct-sum decomposition only applies to row-finite graphs"
        )));
    }
    checked_phi(g, l, phi)?;
    let mut image: Vec<PrincipalIdeal> = phi.vertex_image().into_iter().collect();
    image.sort_by_key(|i| i.generator());
    let mut summands = Vec::new();
    for ideal in image {
        let x = phi.vertex_preimage(&ideal);
        let ring = quotient_ring(phi.ring(), &ideal)?;
        let porc = porcupine(g, &x, depth)?;
        let vanishing = ideal.is_unit_ideal();
        let descriptor = if porc.truncated {
            None
        } else {
            Some(recognize(&porc.graph, ring, &porcupine_name(g, &x))?)
        };
        summands.push(Summand { ideal, ring, preimage: x, porcupine: porc, descriptor, vanishing });
    }
    Ok(Decomposition { input_ring: phi.ring(), summands })
}

/// Outcome of checking the two theorems against each other on a basic or
/// I-basic ideal over a row-finite graph.
#[derive(Debug, Clone)]
pub struct CrossCheck {
    pub consistent: bool,
    pub detail: String,
    pub quotient_graph: Graph,
    pub summand_graph: Option<Graph>,
    /// Vertex bijection from the porcupine summand to the quotient graph.
    pub witness: Option<Vec<(String, String)>>,
}

pub fn cross_check(g: &Graph, l: &PairLattice, f: &SaturatedFn, depth: usize) -> Result<CrossCheck> {
    if !g.is_row_finite() {
        return Err(Error::NotRowFinite("the cross-check runs the row-finite decomposition".into()));
    }
    let ib = quotient_ibasic(g, l, f)?;
    let phi = phi_from_f(g, l, f)?;
    let dec = decompose(g, l, &phi, depth)?;
    let non_vanishing: Vec<&Summand> = dec.non_vanishing().collect();
    if ib.target.ideal.is_unit_ideal() {
        // A = L_R(E): both sides are the zero algebra.
        let consistent = non_vanishing.is_empty() && ib.target.quotient.graph.vertex_count() == 0;
        return Ok(CrossCheck {
            consistent,
            detail: if consistent {
                "both quotients are the zero algebra".to_string()
            } else {
                "expected both quotients to vanish".to_string()
            },
            quotient_graph: ib.target.quotient.graph.clone(),
            summand_graph: None,
            witness: None,
        });
    }
    let [summand] = non_vanishing.as_slice() else {
        return Ok(CrossCheck {
            consistent: false,
            detail: format!(
                "expected exactly one non-vanishing summand, found {}",
                non_vanishing.len()
            ),
            quotient_graph: ib.target.quotient.graph.clone(),
            summand_graph: None,
            witness: None,
        });
    };
    if summand.ideal != ib.target.ideal {
        return Ok(CrossCheck {
            consistent: false,
            detail: format!(
                "summand ideal {} differs from I = {}",
                summand.ideal.display_plain(),
                ib.target.ideal.display_plain()
            ),
            quotient_graph: ib.target.quotient.graph.clone(),
            summand_graph: Some(summand.porcupine.graph.clone()),
            witness: None,
        });
    }
    let witness = crate::iso::find_isomorphism(&summand.porcupine.graph, &ib.target.quotient.graph);
    Ok(CrossCheck {
        consistent: witness.is_some(),
        detail: if witness.is_some() {
            "the porcupine summand is isomorphic to the quotient graph".to_string()
        } else {
            "no isomorphism between the porcupine summand and the quotient graph".to_string()
        },
        quotient_graph: ib.target.quotient.graph.clone(),
        summand_graph: Some(summand.porcupine.graph.clone()),
        witness,
    })
}

/// Everything the `quotient` front end reports: classification, the
/// epimorphism target (an isomorphism exactly when the ideal is I-basic),
/// the row-finite decomposition when it applies, and the cross-check when
/// both theorems apply.
#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub class: IdealClass,
    pub target: EpiTarget,
    /// True when the target is licensed as an isomorphism (I-basic case);
    /// false means epimorphism only.
    pub isomorphism: bool,
    pub decomposition: Option<Decomposition>,
    pub cross: Option<CrossCheck>,
}

pub fn quotient_report(g: &Graph, l: &PairLattice, f: &SaturatedFn, depth: usize) -> Result<QuotientReport> {
    let class = classify(l, f)?;
    let target = epimorphism_target(g, l, f)?;
    let isomorphism = class.kind != IdealClassKind::GeneralGraded;
    let (decomposition, cross) = if g.is_row_finite() {
        let phi = phi_from_f(g, l, f)?;
        let dec = decompose(g, l, &phi, depth)?;
        let cross = if isomorphism { Some(cross_check(g, l, f, depth)?) } else { None };
        (Some(dec), cross)
    } else {
        (None, None)
    };
    Ok(QuotientReport { class, target, isomorphism, decomposition, cross })
}
