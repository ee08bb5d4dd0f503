//! Maps between Princ orders induced by homomorphisms and embeddings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, LatticeHom};
use crate::order::{BoundedOrder, DownSet, Elem, IsotoneMap};

use super::{princ_order, principal_congruence, Congruence, PrincOrder};

/// con_K(a,b) ↦ con_L(φa, φb) as a map Princ K → Princ L.
pub fn induced_hom_map(phi: &LatticeHom) -> Result<IsotoneMap> {
    let pk = princ_order(phi.source());
    let pl = princ_order(phi.target());
    induced_hom_map_with(phi, &pk, &pl)
}

/// As [`induced_hom_map`] with precomputed Princ orders.
///
/// Every generating pair of every principal congruence is mapped, not just
/// the witness, and all of them must agree.
pub fn induced_hom_map_with(phi: &LatticeHom, pk: &PrincOrder, pl: &PrincOrder) -> Result<IsotoneMap> {
    if !phi.preserves_bounds() {
        return Err(Error::NotBoundsPreserving("bounds"));
    }
    let k = phi.source();
    let l = phi.target();
    let k_index: HashMap<&Congruence, Elem> = pk.congruences.iter().zip(0..).collect();
    let l_index: HashMap<&Congruence, Elem> = pl.congruences.iter().zip(0..).collect();
    let mut image_cache: HashMap<(Elem, Elem), Elem> = HashMap::new();
    let mut assignment: Vec<Option<Elem>> = vec![None; pk.len()];
    for a in k.elements() {
        for b in k.elements() {
            if !k.leq(a, b) {
                continue;
            }
            let source = k_index[&principal_congruence(k, a, b)];
            let (fa, fb) = (phi.apply(a), phi.apply(b));
            let target = *image_cache.entry((fa, fb)).or_insert_with(|| {
                *l_index.get(&principal_congruence(l, fa, fb)).expect("con_L of a pair is principal")
            });
            match assignment[source] {
                Some(prev) if prev != target => {
                    return Err(Error::WellDefinednessViolation(format!(
                        "{} is sent to both {} and {}",
                        pk.order.name(source),
                        pl.order.name(prev),
                        pl.order.name(target)
                    )))
                }
                _ => assignment[source] = Some(target),
            }
        }
    }
    let assignment =
        assignment.into_iter().map(|x| x.expect("every principal congruence has a generating pair")).collect();
    IsotoneMap::new_bounded(pk.order.clone(), pl.order.clone(), assignment)
}

/// con_K(x,y) ↦ con_L(x,y) for a {0,1}-sublattice embedding.
pub fn induced_sub_map(embedding: &LatticeHom) -> Result<IsotoneMap> {
    if !embedding.is_injective() {
        return Err(Error::HypothesisViolated("embedding is not injective".into()));
    }
    induced_hom_map(embedding)
}

/// Nontrivial, with `{0}` and `{1}` singleton blocks.
pub fn is_01_isolating(l: &FiniteLattice, theta: &Congruence) -> bool {
    if theta.is_discrete() {
        return false;
    }
    let (zero, one) = (l.bottom(), l.top());
    l.elements().all(|x| (x == zero || !theta.same(x, zero)) && (x == one || !theta.same(x, one)))
}

/// Base θ = `{p ∈ P⁻ : a:p ≡ b:p (θ)}`, checked to be a down-set of P⁻.
pub fn base_of(l: &FiniteLattice, theta: &Congruence, p: &BoundedOrder) -> Result<DownSet> {
    let mut members = Vec::new();
    for x in p.middle() {
        let a = l.require_label(&format!("a:{}", p.name(x)))?;
        let b = l.require_label(&format!("b:{}", p.name(x)))?;
        if theta.same(a, b) {
            members.push(x);
        }
    }
    DownSet::in_middle(p, members)
}
