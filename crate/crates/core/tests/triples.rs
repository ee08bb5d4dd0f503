mod common;

use std::sync::Arc;

use common::*;
use princ_core::construct::GadgetKind;
use princ_core::construct::{Catalog, Variant};
use princ_core::enumerate::order_triples;
use princ_core::iso::triple_isomorphism;
use princ_core::lattice::LatticeHom;
use princ_core::order::{IsotoneMap, OrderTriple};
use princ_core::triples::{ordc, represent, represent_surjective, verify_representation, LatticeTriple};
use princ_core::Error;

fn triple(
    p: &princ_core::order::BoundedOrder,
    q: &princ_core::order::BoundedOrder,
    psi: &[(&str, &str)],
) -> OrderTriple {
    let f = IsotoneMap::from_named(Arc::new(p.clone()), Arc::new(q.clone()), psi).expect("valid psi");
    OrderTriple::new(f).expect("bounded")
}

fn p_chain() -> princ_core::order::BoundedOrder {
    order(&["0", "p", "1"], &[("0", "p"), ("p", "1")])
}

fn q_chain() -> princ_core::order::BoundedOrder {
    order(&["0", "q", "1"], &[("0", "q"), ("q", "1")])
}

#[test]
fn ordc_of_identity_on_two_chain() {
    let l = Arc::new(chain(2));
    let t = LatticeTriple::new(LatticeHom::identity(l)).unwrap();
    let o = ordc(&t).unwrap();
    assert_eq!(o.p().len(), 2);
    assert_eq!(o.psi().assignment(), &[0, 1]);
}

#[test]
fn ordc_of_collapse_sends_lower_cover_to_nabla() {
    let k = Arc::new(chain(3));
    let l = Arc::new(chain(2));
    let t = LatticeTriple::new(hom(&k, &l, vec![0, 1, 1])).unwrap();
    let o = ordc(&t).unwrap();
    let p = o.p();
    let lower = p.require("con(c0,c1)").unwrap();
    let upper = p.require("con(c1,c2)").unwrap();
    assert_eq!(o.psi().apply(lower), o.q().top());
    assert_eq!(o.psi().apply(upper), o.q().bottom());
    assert!(t.is_surjective());
    assert!(o.is_surjective());
}

#[test]
fn surjectivity_of_order_triples() {
    let c2 = chain_order(2);
    let c3 = chain_order(3);
    let id = triple(&c3, &c3, &[("c0", "c0"), ("c1", "c1"), ("c2", "c2")]);
    assert!(id.is_surjective());
    let collapse = triple(&c3, &c2, &[("c0", "c0"), ("c1", "c1"), ("c2", "c1")]);
    assert!(collapse.is_surjective());
    let inclusion = triple(&c2, &c3, &[("c0", "c0"), ("c1", "c2")]);
    assert!(!inclusion.is_surjective());
}

#[test]
fn surjective_representation_of_identity_has_empty_base() {
    let p = p_chain();
    let t = triple(&p, &p, &[("0", "0"), ("p", "p"), ("1", "1")]);
    let rep = represent_surjective(&t, GadgetKind::G, &Catalog::default()).unwrap();
    assert!(rep.base.is_empty());
    assert!(rep.theta.is_discrete());
    assert!(triple_isomorphism(&ordc(&rep.triple).unwrap(), &t).unwrap().is_some());
}

#[test]
fn surjective_representation_collapses_bottom_part() {
    let p = p_chain();
    let c2 = chain_order(2);
    let t = triple(&p, &c2, &[("0", "c0"), ("p", "c0"), ("1", "c1")]);
    let rep = represent_surjective(&t, GadgetKind::G, &Catalog::default()).unwrap();
    assert_eq!(rep.base.len(), 1);
    let o = ordc(&rep.triple).unwrap();
    assert!(triple_isomorphism(&o, &t).unwrap().is_some());
    assert!(o.is_surjective());
}

#[test]
fn surjective_representation_rejects_non_surjective_input() {
    let c2 = chain_order(2);
    let t = triple(&c2, &p_chain(), &[("c0", "0"), ("c1", "1")]);
    let err = represent_surjective(&t, GadgetKind::G, &Catalog::default()).unwrap_err();
    assert!(matches!(err, Error::HypothesisViolated(_)));
}

#[test]
fn pipeline_examples_round_trip_in_both_variants() {
    let catalog = Catalog::default();
    let c2 = chain_order(2);
    let cases = [
        triple(&c2, &c2, &[("c0", "c0"), ("c1", "c1")]),
        triple(&p_chain(), &q_chain(), &[("0", "0"), ("p", "q"), ("1", "1")]),
        triple(&p_chain(), &q_chain(), &[("0", "0"), ("p", "0"), ("1", "1")]),
    ];
    for t in &cases {
        for variant in [Variant::Original, Variant::Reduced] {
            let rep = represent(t, variant, &catalog).unwrap();
            let o = ordc(&rep.triple).unwrap();
            assert!(triple_isomorphism(&o, t).unwrap().is_some(), "{variant} {t:?}");
        }
    }
}

#[test]
fn equi_link_is_observed_in_the_reduced_pipeline() {
    let t = triple(&p_chain(), &q_chain(), &[("0", "0"), ("p", "q"), ("1", "1")]);
    let rep = represent(&t, Variant::Reduced, &Catalog::default()).unwrap();
    assert_eq!(rep.equi_links, vec![("p".to_string(), "Q.q".to_string())]);
    let l = rep.l();
    let con = |role: &str| {
        princ_core::congruence::principal_congruence(
            l,
            l.label(&format!("a:{role}")).unwrap(),
            l.label(&format!("b:{role}")).unwrap(),
        )
    };
    assert_eq!(con("p"), con("Q.q"));
}

#[test]
fn all_triples_up_to_three_verify() {
    let catalog = Catalog::default();
    let triples = order_triples(3);
    assert!(!triples.is_empty());
    for t in &triples {
        for variant in [Variant::Original, Variant::Reduced] {
            let report = verify_representation(t, variant, &catalog);
            assert!(report.passed, "{t:?} {variant}: {:?}", report.failed_clauses());
        }
    }
}

#[test]
fn report_is_deterministic_apart_from_timings() {
    let catalog = Catalog::default();
    let t = triple(&p_chain(), &q_chain(), &[("0", "0"), ("p", "q"), ("1", "1")]);
    let strip = |mut r: princ_core::triples::RepresentationReport| {
        r.timings_ms.clear();
        serde_json::to_string(&r).unwrap()
    };
    let a = strip(verify_representation(&t, Variant::Reduced, &catalog));
    let b = strip(verify_representation(&t, Variant::Reduced, &catalog));
    assert_eq!(a, b);
}
