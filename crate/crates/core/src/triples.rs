//! Lattice-triples, Ordc, and the two-stage representation pipeline.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::congruence::{
    base_of, congruence_generated, induced_hom_map_with, is_01_isolating, princ_order, Congruence,
};
use crate::construct::contract::{check_c1, check_c4, check_c5, ClauseResult};
use crate::construct::{
    extend, lat_of, lat_report, two_order_construct, Catalog, ConstructionReport, GadgetKind, Variant,
};
use crate::error::{Error, Result};
use crate::iso::triple_isomorphism;
use crate::lattice::{quotient, FiniteLattice, LatticeHom};
use crate::order::{alpha_map, beta_map, btm_of_triple, compose, is_zero_separating, DownSet, Elem, OrderTriple};

/// `(K, L, φ)` with φ a {0,1}-homomorphism.
#[derive(Clone, Debug)]
pub struct LatticeTriple {
    phi: LatticeHom,
}

impl LatticeTriple {
    pub fn new(phi: LatticeHom) -> Result<Self> {
        if !phi.preserves_bounds() {
            return Err(Error::NotBoundsPreserving("bounds"));
        }
        Ok(LatticeTriple { phi })
    }

    pub fn k(&self) -> &Arc<FiniteLattice> {
        self.phi.source()
    }

    pub fn l(&self) -> &Arc<FiniteLattice> {
        self.phi.target()
    }

    pub fn phi(&self) -> &LatticeHom {
        &self.phi
    }

    pub fn is_surjective(&self) -> bool {
        self.phi.is_surjective()
    }
}

/// `(Princ K, Princ L, φ_Hom)`.
pub fn ordc(t: &LatticeTriple) -> Result<OrderTriple> {
    let pk = princ_order(t.k());
    let pl = princ_order(t.l());
    OrderTriple::new(induced_hom_map_with(t.phi(), &pk, &pl)?)
}

/// Surjective representation of a triple whose ψ restricted to Top is an
/// isomorphism onto Q.
#[derive(Clone, Debug)]
pub struct SurjectiveRepresentation {
    pub triple: LatticeTriple,
    /// The isolating congruence of K with base Btm⁻ (Δ when Btm⁻ is empty).
    pub theta: Congruence,
    pub base: DownSet,
}

/// K = Lat P, L = K/θ with Base θ = Btm, φ the projection.
pub fn represent_surjective(t: &OrderTriple, kind: GadgetKind, catalog: &Catalog) -> Result<SurjectiveRepresentation> {
    if !t.is_surjective() {
        return Err(Error::HypothesisViolated("psi is not surjective".into()));
    }
    let beta = beta_map(t);
    let (r, q) = (beta.source(), beta.target());
    let reflects = r.elements().all(|x| r.elements().all(|y| r.leq(x, y) == q.leq(beta.apply(x), beta.apply(y))));
    if !(beta.is_injective() && beta.is_surjective() && reflects) {
        return Err(Error::HypothesisViolated("psi restricted to Top is not an isomorphism onto Q".into()));
    }
    let p = t.p();
    let k = Arc::new(lat_of(p, &[], kind, catalog)?);
    let btm = btm_of_triple(t);
    let collapsed: Vec<Elem> = btm.carrier().iter().copied().filter(|&x| x != p.bottom()).collect();
    let mut pairs = Vec::new();
    for &x in &collapsed {
        pairs.push((k.require_label(&format!("a:{}", p.name(x)))?, k.require_label(&format!("b:{}", p.name(x)))?));
    }
    let theta = congruence_generated(&k, &pairs);
    let base = base_of(&k, &theta, p)?;
    if base.carrier().iter().copied().ne(collapsed.iter().copied()) {
        return Err(Error::ContractViolation {
            clause: "isolating".into(),
            detail: format!("base {} differs from Btm", base.render(p)),
        });
    }
    if !collapsed.is_empty() && !is_01_isolating(&k, &theta) {
        return Err(Error::ContractViolation {
            clause: "isolating".into(),
            detail: format!("{} is not {{0,1}}-isolating", theta.render(&k)),
        });
    }
    let (_, q_hom) = quotient(&k, &theta)?;
    Ok(SurjectiveRepresentation { triple: LatticeTriple::new(q_hom)?, theta, base })
}

/// Every intermediate object of one pipeline run.
#[derive(Clone, Debug)]
pub struct Representation {
    pub variant: Variant,
    /// `φ = embedding ∘ q_hom : K → L`.
    pub triple: LatticeTriple,
    /// `K ↠ M = K/θ`.
    pub q_hom: LatticeHom,
    /// `M ↪ L`.
    pub embedding: LatticeHom,
    pub theta: Congruence,
    /// Role pairs joined by Equi gadgets in the second step.
    pub equi_links: Vec<(String, String)>,
    pub second_step_added: usize,
}

impl Representation {
    pub fn k(&self) -> &Arc<FiniteLattice> {
        self.triple.k()
    }

    pub fn m(&self) -> &Arc<FiniteLattice> {
        self.q_hom.target()
    }

    pub fn l(&self) -> &Arc<FiniteLattice> {
        self.triple.l()
    }
}

/// ψ = βα; the α-step is a surjective representation of `(P, Top, α)`, the
/// β-step extends its quotient M to L over the target order Q.
pub fn represent(t: &OrderTriple, variant: Variant, catalog: &Catalog) -> Result<Representation> {
    let alpha = alpha_map(t);
    let beta = beta_map(t);
    let alpha_triple = OrderTriple::new(alpha)?;
    let surj = represent_surjective(&alpha_triple, variant.comparability_kind(), catalog)?;
    let q_hom = surj.triple.phi().clone();
    let m = q_hom.target().clone();
    let r = beta.source();
    let links: Vec<(String, Elem)> = r.middle().map(|x| (r.name(x).to_string(), beta.apply(x))).collect();
    let ext = extend(&m, &links, t.q(), variant, catalog)?;
    let phi = ext.embedding.after(&q_hom)?;
    Ok(Representation {
        variant,
        triple: LatticeTriple::new(phi)?,
        q_hom,
        embedding: ext.embedding,
        theta: surj.theta,
        equi_links: ext.equi_links,
        second_step_added: ext.added_by_gadgets,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSizes {
    pub k: usize,
    pub m: usize,
    pub l: usize,
}

/// Outcome of [`verify_representation`]; failures are entries, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    pub variant: Variant,
    pub catalog_hash: String,
    pub p_size: usize,
    pub q_size: usize,
    pub sizes: Option<LatticeSizes>,
    /// Counts for Lat P in the first step.
    pub first_step: Option<ConstructionReport>,
    /// Counts for the standalone disjoint-union construction on `(Top, Q, β)`.
    pub disjoint_union_step: Option<ConstructionReport>,
    pub clauses: Vec<ClauseResult>,
    pub passed: bool,
    pub timings_ms: BTreeMap<String, f64>,
}

impl RepresentationReport {
    pub fn failed_clauses(&self) -> Vec<&ClauseResult> {
        self.clauses.iter().filter(|c| !c.passed).collect()
    }
}

fn clause(name: &str, ok: bool, detail: impl Into<String>) -> ClauseResult {
    ClauseResult { clause: name.to_string(), passed: ok, detail: detail.into() }
}

fn iso_clause(name: &str, got: Result<OrderTriple>, want: &OrderTriple) -> ClauseResult {
    match got.and_then(|g| triple_isomorphism(&g, want)) {
        Ok(Some(_)) => clause(name, true, "isomorphic"),
        Ok(None) => clause(name, false, "no commuting isomorphism pair"),
        Err(e) => clause(name, false, e.to_string()),
    }
}

fn lap(timings: &mut BTreeMap<String, f64>, name: &str, start: Instant) {
    timings.insert(name.to_string(), start.elapsed().as_secs_f64() * 1e3);
}

/// Run the pipeline and check every stage.
pub fn verify_representation(t: &OrderTriple, variant: Variant, catalog: &Catalog) -> RepresentationReport {
    let mut timings = BTreeMap::new();
    let mut clauses = Vec::new();
    let mut report = RepresentationReport {
        variant,
        catalog_hash: catalog.hash(),
        p_size: t.p().len(),
        q_size: t.q().len(),
        sizes: None,
        first_step: None,
        disjoint_union_step: None,
        clauses: Vec::new(),
        passed: false,
        timings_ms: BTreeMap::new(),
    };

    let alpha = alpha_map(t);
    let beta = beta_map(t);
    let factor_ok = compose(&beta, &alpha).map(|c| &c == t.psi()).unwrap_or(false)
        && alpha.is_surjective()
        && is_zero_separating(&beta);
    clauses.push(clause("factorization", factor_ok, "psi = beta . alpha, alpha onto, beta 0-separating"));

    let start = Instant::now();
    let rep = represent(t, variant, catalog);
    lap(&mut timings, "represent", start);
    let rep = match rep {
        Ok(rep) => rep,
        Err(e) => {
            clauses.push(clause("represent", false, e.to_string()));
            report.clauses = clauses;
            report.timings_ms = timings;
            return report;
        }
    };
    report.sizes = Some(LatticeSizes { k: rep.k().len(), m: rep.m().len(), l: rep.l().len() });

    let start = Instant::now();
    let kind = variant.comparability_kind();
    clauses.push(ClauseResult { clause: "C1 (Lat P)".into(), ..check_c1(t.p(), rep.k()) });
    let first = lat_report(t.p(), &[], kind, catalog, rep.k());
    clauses.push(ClauseResult { clause: "C5 (Lat P)".into(), ..check_c5(&first) });
    report.first_step = Some(first);
    lap(&mut timings, "first-step checks", start);

    let start = Instant::now();
    let surj = LatticeTriple::new(rep.q_hom.clone()).and_then(|s| {
        let o = ordc(&s)?;
        Ok((o.is_surjective(), o))
    });
    match surj {
        Ok((onto, o)) => {
            clauses.push(clause("surjective step onto", onto, "induced Princ map of K -> M is onto"));
            clauses.push(iso_clause(
                "surjective step",
                Ok(o),
                &OrderTriple::new(alpha.clone()).expect("alpha bounded"),
            ));
        }
        Err(e) => clauses.push(clause("surjective step", false, e.to_string())),
    }
    let sub = LatticeTriple::new(rep.embedding.clone()).and_then(|s| ordc(&s));
    clauses.push(iso_clause("sublattice step", sub, &OrderTriple::new(beta.clone()).expect("beta bounded")));
    if variant == Variant::Reduced {
        clauses.push(check_c4(rep.l(), &rep.equi_links));
    }
    lap(&mut timings, "step checks", start);

    let start = Instant::now();
    clauses.push(iso_clause("round-trip", ordc(&rep.triple), t));
    lap(&mut timings, "round-trip", start);

    let start = Instant::now();
    match two_order_construct(&beta, variant, catalog) {
        Ok(c) => {
            clauses.push(ClauseResult { clause: "C5 (disjoint union)".into(), ..check_c5(&c.report) });
            if variant == Variant::Reduced {
                clauses.push(ClauseResult { clause: "C4 (disjoint union)".into(), ..check_c4(&c.l, &c.equi_links) });
            }
            let inst = LatticeTriple::new(c.embedding.clone()).and_then(|s| ordc(&s));
            clauses.push(iso_clause("disjoint union instance", inst, &OrderTriple::new(beta).expect("beta bounded")));
            report.disjoint_union_step = Some(c.report);
        }
        Err(e) => clauses.push(clause("disjoint union instance", false, e.to_string())),
    }
    lap(&mut timings, "disjoint union", start);

    report.passed = clauses.iter().all(|c| c.passed);
    report.clauses = clauses;
    report.timings_ms = timings;
    report
}
