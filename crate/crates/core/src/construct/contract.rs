//! Mechanical checks of what the constructions promise (clauses C1-C5).

use serde::Serialize;

use crate::congruence::{all_congruences, base_of, is_01_isolating, princ_order, principal_congruence, Congruence};
use crate::error::Result;
use crate::lattice::{is_universal_complement, FiniteLattice};
use crate::order::{middle_down_sets, BoundedOrder, DownSet, Elem};

use super::{lat_of, lat_report, Catalog, ConstructionReport, GadgetKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub passed: bool,
    pub detail: String,
}

impl ClauseResult {
    fn new(clause: &str, outcome: std::result::Result<String, String>) -> Self {
        match outcome {
            Ok(detail) => ClauseResult { clause: clause.to_string(), passed: true, detail },
            Err(detail) => ClauseResult { clause: clause.to_string(), passed: false, detail },
        }
    }
}

fn chain_congruence(l: &FiniteLattice, role: &str) -> std::result::Result<Congruence, String> {
    let a = l.label(&format!("a:{role}")).ok_or(format!("missing label a:{role}"))?;
    let b = l.label(&format!("b:{role}")).ok_or(format!("missing label b:{role}"))?;
    Ok(principal_congruence(l, a, b))
}

/// `0 ↦ Δ`, `1 ↦ ∇`, `p ↦ con(a:p, b:p)`, one entry per element of P.
pub fn chain_images(p: &BoundedOrder, l: &FiniteLattice) -> std::result::Result<Vec<Congruence>, String> {
    p.elements()
        .map(|x| {
            if x == p.bottom() {
                Ok(Congruence::discrete(l.len()))
            } else if x == p.top() {
                Ok(Congruence::total(l.len()))
            } else {
                chain_congruence(l, p.name(x))
            }
        })
        .collect()
}

/// C1: the chain map is an order isomorphism `P → Princ L`.
pub fn check_c1(p: &BoundedOrder, l: &FiniteLattice) -> ClauseResult {
    ClauseResult::new("C1", c1(p, l))
}

fn c1(p: &BoundedOrder, l: &FiniteLattice) -> std::result::Result<String, String> {
    let images = chain_images(p, l)?;
    let princ = princ_order(l);
    if princ.len() != p.len() {
        return Err(format!("|Princ L| = {} but |P| = {}", princ.len(), p.len()));
    }
    for (x, img) in images.iter().enumerate() {
        if princ.index_of(img).is_none() {
            return Err(format!("image of {} is not principal", p.name(x)));
        }
    }
    for x in p.elements() {
        for y in p.elements() {
            if p.leq(x, y) != images[x].refines(&images[y]) {
                return Err(format!("order between {} and {} not reflected", p.name(x), p.name(y)));
            }
        }
    }
    Ok(format!("Princ L has {} elements, isomorphic to P", princ.len()))
}

fn is_principal_down_set(p: &BoundedOrder, d: &DownSet) -> bool {
    d.is_empty()
        || p.middle().any(|x| {
            let below: Vec<Elem> = p.middle().filter(|&y| p.leq(y, x)).collect();
            d.carrier().iter().copied().eq(below)
        })
}

/// C2: isolating congruences ↔ nonempty down-sets of P⁻ (Δ ↦ ∅, ∇ ↦ top),
/// an isomorphism `Con L ≅ (Down P⁻)^t` preserving principality.
pub fn check_c2(p: &BoundedOrder, l: &FiniteLattice) -> ClauseResult {
    ClauseResult::new("C2", c2(p, l))
}

fn c2(p: &BoundedOrder, l: &FiniteLattice) -> std::result::Result<String, String> {
    let con = all_congruences(l);
    let princ = princ_order(l);
    let downs = middle_down_sets(p).map_err(|e| e.to_string())?;
    // None stands for the adjoined top.
    let mut image: Vec<Option<DownSet>> = Vec::with_capacity(con.len());
    for theta in &con {
        if theta.is_total() {
            image.push(None);
            continue;
        }
        if !theta.is_discrete() && !is_01_isolating(l, theta) {
            return Err(format!("{} is neither Δ, ∇ nor isolating", theta.render(l)));
        }
        let base = base_of(l, theta, p).map_err(|e| e.to_string())?;
        if theta.is_discrete() != base.is_empty() {
            return Err(format!("{} has base {}", theta.render(l), base.render(p)));
        }
        image.push(Some(base));
    }
    if con.len() != downs.len() + 1 {
        return Err(format!("|Con L| = {} but |(Down P-)^t| = {}", con.len(), downs.len() + 1));
    }
    for d in &downs {
        if image.iter().filter(|i| i.as_ref() == Some(d)).count() != 1 {
            return Err(format!("down-set {} is not hit exactly once", d.render(p)));
        }
    }
    let below = |a: &Option<DownSet>, b: &Option<DownSet>| match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x.is_subset(y),
    };
    for (i, a) in con.iter().enumerate() {
        for (j, b) in con.iter().enumerate() {
            if a.refines(b) != below(&image[i], &image[j]) {
                return Err(format!("order between {} and {} not preserved", a.render(l), b.render(l)));
            }
        }
        let principal_theta = princ.index_of(a).is_some();
        let principal_image = image[i].as_ref().is_none_or(|d| is_principal_down_set(p, d));
        if principal_theta != principal_image {
            return Err(format!("principality of {} not preserved", a.render(l)));
        }
    }
    let isolating = con.iter().filter(|t| is_01_isolating(l, t)).count();
    Ok(format!("{} congruences, {isolating} isolating, {} down-sets", con.len(), downs.len()))
}

/// C3: every listed element is a universal complement.
pub fn check_c3(l: &FiniteLattice, xs: &[String]) -> ClauseResult {
    let outcome = xs
        .iter()
        .map(|x| {
            let id = l.id(x).ok_or(format!("{x} missing"))?;
            match is_universal_complement(l, id) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("{x} is not a universal complement")),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect::<std::result::Result<Vec<()>, String>>()
        .map(|_| format!("{} universal complements", xs.len()));
    ClauseResult::new("C3", outcome)
}

/// C4: every Equi link identifies the two chain congruences.
pub fn check_c4(l: &FiniteLattice, links: &[(String, String)]) -> ClauseResult {
    let outcome = links
        .iter()
        .map(|(p, q)| {
            if chain_congruence(l, p)? == chain_congruence(l, q)? {
                Ok(())
            } else {
                Err(format!("con(a:{p},b:{p}) != con(a:{q},b:{q})"))
            }
        })
        .collect::<std::result::Result<Vec<()>, String>>()
        .map(|_| format!("{} Equi links", links.len()));
    ClauseResult::new("C4", outcome)
}

/// C5: the size delta matches the catalog-parameterized count formula.
pub fn check_c5(report: &ConstructionReport) -> ClauseResult {
    let note = if report.deviates_from_nominal() {
        format!(
            "; catalog coefficients {:?} deviate from nominal {:?} (nominal formula gives {})",
            report.catalog_coefficients, report.nominal_coefficients, report.formula_expected
        )
    } else {
        String::new()
    };
    let outcome = if report.matches_catalog() {
        Ok(format!("added {} = expected {}{note}", report.added_by_gadgets, report.catalog_expected))
    } else {
        Err(format!("added {} != expected {}{note}", report.added_by_gadgets, report.catalog_expected))
    };
    ClauseResult::new("C5", outcome)
}

/// Build `lat_of(P, X, kind)` and run C1, C3, C5, plus C2 when X is empty.
pub fn check_lat_contract(
    p: &BoundedOrder,
    xs: &[String],
    kind: GadgetKind,
    catalog: &Catalog,
) -> Result<Vec<ClauseResult>> {
    let l = lat_of(p, xs, kind, catalog)?;
    let mut out = vec![check_c1(p, &l)];
    if xs.is_empty() {
        out.push(check_c2(p, &l));
    }
    out.push(check_c3(&l, xs));
    out.push(check_c5(&lat_report(p, xs, kind, catalog, &l)));
    Ok(out)
}
