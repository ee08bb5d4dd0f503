//! Frame_X P, gadget insertion, Lat_X P and the disjoint-union construction.
//!
//! Naming: `0`, `1` for the bounds, `a:p < b:p` for the chain of `p`, `x:i`
//! style identifiers for caller-supplied universal complements, `f:0`, `f:1`
//! for the two fixed frame complements, `g:p<q:k` (or `g:p=q:k` for Equi) for
//! the k-th internal element of a gadget. The target order of the
//! disjoint-union step uses `Q.` prefixed roles (`a:Q.q`).

mod catalog;
pub mod contract;

pub use catalog::{added_element_count, Catalog, GadgetKind, GadgetTemplate, Variant, PORTS};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{disjoint_union_bounded, lattice_from_order, FiniteLattice, LatticeHom};
use crate::order::{is_zero_separating, BoundedOrder, Elem, IsotoneMap};

pub const FRAME_COMPLEMENTS: [&str; 2] = ["f:0", "f:1"];

/// Prefix for roles of the target order in the disjoint-union step.
pub const TARGET_PREFIX: &str = "Q.";

/// One gadget to insert: forces `con(a:forced, b:forced) <= con(a:forcing, b:forcing)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSite {
    pub forced: String,
    pub forcing: String,
    pub kind: GadgetKind,
}

impl GadgetSite {
    pub fn new(forced: impl Into<String>, forcing: impl Into<String>, kind: GadgetKind) -> Self {
        GadgetSite { forced: forced.into(), forcing: forcing.into(), kind }
    }

    fn internal_name(&self, k: usize) -> String {
        let sep = if self.kind == GadgetKind::Equi { '=' } else { '<' };
        format!("g:{}{}{}:{}", self.forced, sep, self.forcing, k)
    }
}

/// Cover diagram under construction; existing element indices never move.
struct Draft {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    covers: Vec<(Elem, Elem)>,
    labels: BTreeMap<String, Elem>,
}

impl Draft {
    fn bounds() -> Self {
        let mut d = Draft { names: Vec::new(), index: HashMap::new(), covers: Vec::new(), labels: BTreeMap::new() };
        d.add("0").expect("fresh draft");
        d.add("1").expect("fresh draft");
        d.covers.push((0, 1));
        d
    }

    fn from_lattice(l: &FiniteLattice) -> Self {
        let names: Vec<String> = l.elements().map(|x| l.name(x).to_string()).collect();
        let index = names.iter().cloned().zip(0..).collect();
        Draft { names, index, covers: l.order().covers(), labels: l.labels().clone() }
    }

    fn bottom(&self) -> Elem {
        0
    }

    fn top(&self) -> Elem {
        1
    }

    fn add(&mut self, name: &str) -> Result<Elem> {
        if self.index.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    /// A new element strictly between `lower` and `upper`.
    fn add_between(&mut self, name: &str, lower: Elem, upper: Elem) -> Result<Elem> {
        let id = self.add(name)?;
        self.covers.push((lower, id));
        self.covers.push((id, upper));
        Ok(id)
    }

    /// `0 < a:role < b:role < 1`, labelled.
    fn add_chain(&mut self, role: &str) -> Result<()> {
        let (zero, one) = (self.bottom(), self.top());
        let a = self.add_between(&format!("a:{role}"), zero, one)?;
        let b = self.add_between(&format!("b:{role}"), a, one)?;
        self.labels.insert(format!("a:{role}"), a);
        self.labels.insert(format!("b:{role}"), b);
        Ok(())
    }

    fn port(&self, tag: String) -> Result<Elem> {
        self.labels.get(&tag).copied().ok_or(Error::MissingLabels(tag))
    }

    fn insert(&mut self, site: &GadgetSite, catalog: &Catalog) -> Result<()> {
        let template = catalog.get(site.kind);
        let mut local: HashMap<&str, Elem> = HashMap::new();
        local.insert("0", self.bottom());
        local.insert("1", self.top());
        local.insert("a:p", self.port(format!("a:{}", site.forced))?);
        local.insert("b:p", self.port(format!("b:{}", site.forced))?);
        local.insert("a:q", self.port(format!("a:{}", site.forcing))?);
        local.insert("b:q", self.port(format!("b:{}", site.forcing))?);
        let (zero, one) = (self.bottom(), self.top());
        for (k, internal) in template.internals.iter().enumerate() {
            let id = self.add_between(&site.internal_name(k), zero, one)?;
            local.insert(internal.as_str(), id);
        }
        for (a, b) in &template.covers {
            self.covers.push((local[a.as_str()], local[b.as_str()]));
        }
        Ok(())
    }

    fn finish(self) -> Result<FiniteLattice> {
        let n = self.names.len();
        let mut rel = vec![vec![false; n]; n];
        for (a, b) in self.covers {
            rel[a][b] = true;
        }
        let order = BoundedOrder::from_relation(self.names, rel)?;
        lattice_from_order(&order)?.with_labels(self.labels)
    }
}

/// Frame_X P: chains `a:p < b:p` for `p ∈ P⁻` and atoms-and-coatoms `X` in a
/// horizontal sum, plus `f:0`, `f:1` whenever the sum is not empty. The
/// frame complements keep at least three summands, so the sum has no
/// homomorphism onto the two-element lattice.
pub fn frame(p: &BoundedOrder, xs: &[String]) -> Result<FiniteLattice> {
    let mut d = Draft::bounds();
    for x in p.middle() {
        d.add_chain(p.name(x))?;
    }
    if p.middle_len() > 0 || !xs.is_empty() {
        for x in xs.iter().map(String::as_str).chain(FRAME_COMPLEMENTS) {
            d.add_between(x, 0, 1)?;
        }
    }
    d.finish()
}

/// Insert one gadget; ports are found through the labels of `l`.
pub fn insert_gadget(l: &FiniteLattice, site: &GadgetSite, catalog: &Catalog) -> Result<FiniteLattice> {
    insert_gadgets(l, std::slice::from_ref(site), catalog)
}

/// Insert several gadgets and verify the result once.
pub fn insert_gadgets(l: &FiniteLattice, sites: &[GadgetSite], catalog: &Catalog) -> Result<FiniteLattice> {
    let mut d = Draft::from_lattice(l);
    if d.bottom() != l.bottom() || d.top() != l.top() {
        return insert_gadgets(&rebase_bounds(l)?, sites, catalog);
    }
    for site in sites {
        d.insert(site, catalog)?;
    }
    d.finish()
}

/// Lattices built here keep `0`, `1` at indices 0 and 1; others are reordered.
fn rebase_bounds(l: &FiniteLattice) -> Result<FiniteLattice> {
    let mut order: Vec<Elem> = vec![l.bottom(), l.top()];
    order.extend(l.elements().filter(|&x| x != l.bottom() && x != l.top()));
    let pos: Vec<Elem> = {
        let mut pos = vec![0; l.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        pos
    };
    let names = order.iter().map(|&x| l.name(x).to_string()).collect();
    let rel = order.iter().map(|&x| order.iter().map(|&y| l.leq(x, y)).collect()).collect();
    let labels = l.labels().iter().map(|(t, &e)| (t.clone(), pos[e])).collect();
    lattice_from_order(&BoundedOrder::from_relation(names, rel)?)?.with_labels(labels)
}

/// Gadget sites for every strict comparability `p < q` of P⁻.
pub fn comparability_sites(p: &BoundedOrder, kind: GadgetKind, prefix: &str) -> Vec<GadgetSite> {
    p.middle_comparabilities()
        .into_iter()
        .map(|(a, b)| GadgetSite::new(format!("{prefix}{}", p.name(a)), format!("{prefix}{}", p.name(b)), kind))
        .collect()
}

/// Lat_X P: the frame with a comparability gadget on every `p < q` in P⁻.
pub fn lat_of(p: &BoundedOrder, xs: &[String], kind: GadgetKind, catalog: &Catalog) -> Result<FiniteLattice> {
    if kind == GadgetKind::Equi {
        return Err(Error::HypothesisViolated("Lat_X P needs a G or GExt gadget".into()));
    }
    insert_gadgets(&frame(p, xs)?, &comparability_sites(p, kind, ""), catalog)
}

/// Element accounting for one construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub variant: Option<Variant>,
    pub base_size: usize,
    pub total_size: usize,
    pub added_by_gadgets: usize,
    pub n_p: usize,
    pub c_p: usize,
    pub c_q: usize,
    /// Count predicted by the published formula at nominal gadget sizes.
    pub formula_expected: usize,
    /// Count predicted with the active catalog's gadget sizes.
    pub catalog_expected: usize,
    /// `(coefficient of c_P and c_Q, coefficient of n_P)` for the active catalog.
    pub catalog_coefficients: (usize, usize),
    pub nominal_coefficients: (usize, usize),
}

impl ConstructionReport {
    pub fn matches_catalog(&self) -> bool {
        self.added_by_gadgets == self.catalog_expected
    }

    pub fn deviates_from_nominal(&self) -> bool {
        self.catalog_coefficients != self.nominal_coefficients
    }
}

/// Count report for `lat_of(P, X, kind)`.
pub fn lat_report(
    p: &BoundedOrder,
    xs: &[String],
    kind: GadgetKind,
    catalog: &Catalog,
    built: &FiniteLattice,
) -> ConstructionReport {
    let base = frame(p, xs).map(|f| f.len()).unwrap_or(0);
    let c_p = p.middle_comparabilities().len();
    ConstructionReport {
        variant: None,
        base_size: base,
        total_size: built.len(),
        added_by_gadgets: built.len() - base,
        n_p: p.middle_len(),
        c_p,
        c_q: 0,
        formula_expected: kind.nominal_size() * c_p,
        catalog_expected: catalog.size(kind) * c_p,
        catalog_coefficients: (catalog.size(kind), 0),
        nominal_coefficients: (kind.nominal_size(), 0),
    }
}

/// Result of extending a lattice M by a target order Q.
#[derive(Clone, Debug)]
pub struct Extension {
    pub lattice: Arc<FiniteLattice>,
    /// M as a {0,1}-sublattice of the result.
    pub embedding: LatticeHom,
    /// Role pairs `(source, target)` joined by an Equi gadget.
    pub equi_links: Vec<(String, String)>,
    /// Whether the top pair was added for links to `1_Q`.
    pub top_pair: bool,
    pub added_by_gadgets: usize,
}

/// Role name of `y ∈ Q` inside the extension.
pub fn target_role(q: &BoundedOrder, y: Elem) -> String {
    format!("{TARGET_PREFIX}{}", q.name(y))
}

/// Extend `m` by chains for Q⁻, comparability gadgets of Q, and link gadgets
/// tying each source role (chain `a:r < b:r` of `m`) to its image in Q.
///
/// Links to `1_Q` attach to a top pair `a < b` with an extra atom `n < b`,
/// whose principal congruence is ∇. Links to `0_Q` are not allowed.
pub fn extend(
    m: &Arc<FiniteLattice>,
    links: &[(String, Elem)],
    q: &BoundedOrder,
    variant: Variant,
    catalog: &Catalog,
) -> Result<Extension> {
    let mut d = Draft::from_lattice(m);
    if d.bottom() != m.bottom() || d.top() != m.top() {
        return Err(Error::HypothesisViolated("source lattice must keep its bounds at indices 0 and 1".into()));
    }
    if q.middle_len() > 0 && FRAME_COMPLEMENTS.iter().any(|f| !d.index.contains_key(*f)) {
        for f in FRAME_COMPLEMENTS {
            d.add_between(f, 0, 1)?;
        }
    }
    for y in q.middle() {
        d.add_chain(&target_role(q, y))?;
    }
    let top_pair = links.iter().any(|&(_, y)| y == q.top());
    if top_pair {
        let role = target_role(q, q.top());
        d.add_chain(&role)?;
        let b = d.labels[&format!("b:{role}")];
        d.add_between(&format!("n:{role}"), 0, b)?;
    }
    let base_end = d.names.len();
    let kind = variant.comparability_kind();
    let mut sites = comparability_sites(q, kind, TARGET_PREFIX);
    let mut equi_links = Vec::new();
    for (role, y) in links {
        if *y == q.bottom() {
            return Err(Error::NotZeroSeparating(role.clone()));
        }
        let target = target_role(q, *y);
        match variant {
            Variant::Reduced => {
                sites.push(GadgetSite::new(role.clone(), target.clone(), GadgetKind::Equi));
                equi_links.push((role.clone(), target));
            }
            Variant::Original => {
                sites.push(GadgetSite::new(role.clone(), target.clone(), GadgetKind::GExt));
                sites.push(GadgetSite::new(target, role.clone(), GadgetKind::GExt));
            }
        }
    }
    for site in &sites {
        d.insert(site, catalog)?;
    }
    let added = d.names.len() - base_end;
    let lattice = Arc::new(d.finish()?);
    let embedding = LatticeHom::new_bounded(m.clone(), lattice.clone(), m.elements().collect())?;
    Ok(Extension { lattice, embedding, equi_links, top_pair, added_by_gadgets: added })
}

/// Output of [`two_order_construct`].
#[derive(Clone, Debug)]
pub struct TwoOrderConstruction {
    pub m: Arc<FiniteLattice>,
    pub l: Arc<FiniteLattice>,
    pub embedding: LatticeHom,
    pub equi_links: Vec<(String, String)>,
    pub report: ConstructionReport,
}

/// A lattice L with a {0,1}-sublattice M such that `Princ M ≅ P`,
/// `Princ L ≅ Q` and the induced map realizes β.
///
/// M is Lat P; L extends it over the frame of `R = P ⊎ Q`.
pub fn two_order_construct(beta: &IsotoneMap, variant: Variant, catalog: &Catalog) -> Result<TwoOrderConstruction> {
    if !beta.preserves_bounds() {
        return Err(Error::NotBoundsPreserving("bounds"));
    }
    if !is_zero_separating(beta) {
        let p = beta.source();
        let culprit = p
            .middle()
            .find(|&x| beta.apply(x) == beta.target().bottom())
            .map(|x| p.name(x).to_string())
            .unwrap_or_default();
        return Err(Error::NotZeroSeparating(culprit));
    }
    let (p, q) = (beta.source(), beta.target());
    let m = Arc::new(lat_of(p, &[], variant.comparability_kind(), catalog)?);
    let links: Vec<(String, Elem)> = p.middle().map(|x| (p.name(x).to_string(), beta.apply(x))).collect();
    let ext = extend(&m, &links, q, variant, catalog)?;
    let report = two_order_report(p, q, variant, catalog, &ext);
    Ok(TwoOrderConstruction { m, l: ext.lattice.clone(), embedding: ext.embedding, equi_links: ext.equi_links, report })
}

fn two_order_report(
    p: &BoundedOrder,
    q: &BoundedOrder,
    variant: Variant,
    catalog: &Catalog,
    ext: &Extension,
) -> ConstructionReport {
    let r = disjoint_union_bounded(p, q).order;
    let frame_r = frame(&r, &[]).map(|f| f.len()).unwrap_or(0);
    let base_size = frame_r + if ext.top_pair { 3 } else { 0 };
    let (n_p, c_p, c_q) = (p.middle_len(), p.middle_comparabilities().len(), q.middle_comparabilities().len());
    let nominal_coefficients = match variant {
        Variant::Original => (15, 30),
        Variant::Reduced => (7, 4),
    };
    ConstructionReport {
        variant: Some(variant),
        base_size,
        total_size: ext.lattice.len(),
        added_by_gadgets: ext.lattice.len() - base_size,
        n_p,
        c_p,
        c_q,
        formula_expected: added_element_count(variant, n_p, c_p, c_q),
        catalog_expected: catalog.added_element_count(variant, n_p, c_p, c_q),
        catalog_coefficients: catalog.coefficients(variant),
        nominal_coefficients,
    }
}
