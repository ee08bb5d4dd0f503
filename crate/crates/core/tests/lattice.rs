mod common;

use std::sync::Arc;

use common::*;
use princ_core::congruence::{principal_congruence, Congruence};
use princ_core::iso::order_isomorphism;
use princ_core::lattice::*;
use princ_core::Error;

#[test]
fn chains_and_diamond_are_lattices() {
    let c3 = chain(3);
    assert_eq!(c3.join(0, 1), 1);
    assert_eq!(c3.meet(1, 2), 1);
    let b = b2();
    assert_eq!(b.meet(el(&b, "a"), el(&b, "b")), el(&b, "0"));
    assert_eq!(b.join(el(&b, "a"), el(&b, "b")), el(&b, "1"));
    b.verify_axioms().unwrap();
    n5().verify_axioms().unwrap();
    m3().verify_axioms().unwrap();
}

#[test]
fn bowtie_is_not_a_lattice() {
    let bowtie = order(
        &["0", "a", "b", "c", "d", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
    );
    match lattice_from_order(&bowtie) {
        Err(Error::NotALattice(x, y, what)) => {
            assert_eq!((x.as_str(), y.as_str(), what), ("a", "b", "join"));
        }
        other => panic!("expected NotALattice, got {other:?}"),
    }
}

#[test]
fn alternating_term_examples() {
    let l = n5();
    let x = el(&l, "c");
    assert_eq!(eval_alternating_term(&l, x, &[]), x);
    for y in l.elements() {
        assert_eq!(eval_alternating_term(&l, y, &[l.bottom(), l.top()]), y);
    }
    let ps = [el(&l, "o"), el(&l, "b"), el(&l, "o"), el(&l, "a")];
    assert_eq!(eval_alternating_term(&l, el(&l, "c"), &ps), el(&l, "o"));
    assert_eq!(eval_alternating_term(&l, el(&l, "i"), &ps), el(&l, "a"));
}

#[test]
fn quotient_examples() {
    let l = Arc::new(n5());
    let (q, h) = quotient(&l, &Congruence::discrete(l.len())).unwrap();
    assert!(order_isomorphism(q.order(), l.order()).unwrap().is_some());
    assert!(h.is_surjective() && h.is_injective());

    assert!(matches!(quotient(&l, &Congruence::total(l.len())), Err(Error::TrivialOrder)));

    let c3 = Arc::new(lattice(&["o", "m", "i"], &[("o", "m"), ("m", "i")]));
    let theta = partition(&c3, &[&["o", "m"], &["i"]]);
    let (q, h) = quotient(&c3, &theta).unwrap();
    assert_eq!(q.len(), 2);
    assert!(h.preserves_bounds() && h.is_surjective());

    let not_congruence = partition(&c3, &[&["o", "i"], &["m"]]);
    assert!(matches!(quotient(&c3, &not_congruence), Err(Error::NotACongruence(_))));
}

#[test]
fn quotient_keeps_every_label() {
    let l = Arc::new(n5().self_labelled());
    let theta = principal_congruence(&l, el(&l, "a"), el(&l, "b"));
    let (q, h) = quotient(&l, &theta).unwrap();
    assert_eq!(q.labels().len(), 5);
    assert_eq!(q.label("a"), q.label("b"));
    assert_eq!(q.label("b"), Some(h.apply(el(&l, "b"))));
    let collisions = q.label_collisions();
    assert_eq!(collisions.len(), 1);
    assert_eq!(collisions[0].1, vec!["a".to_string(), "b".to_string()]);
}

#[test]
fn sublattice_examples() {
    let l = n5();
    let id: Vec<_> = l.elements().collect();
    assert!(is_01_sublattice(&l, &l, &id));

    let two = chain(2);
    assert!(is_01_sublattice(&two, &l, &[l.bottom(), l.top()]));

    let b = b2();
    let c3 = chain(3);
    assert!(is_01_sublattice(&c3, &b, &[el(&b, "0"), el(&b, "a"), el(&b, "1")]));

    let c4 = chain(4);
    let chain_in_n5 = [el(&l, "o"), el(&l, "a"), el(&l, "b"), el(&l, "i")];
    assert!(is_01_sublattice(&c4, &l, &chain_in_n5));

    let square = b2();
    let oaci = [el(&l, "o"), el(&l, "a"), el(&l, "c"), el(&l, "i")];
    assert!(is_01_sublattice(&square, &l, &oaci));

    assert!(!is_01_subset(&l, &[el(&l, "o"), el(&l, "a"), el(&l, "c")]));
    assert!(is_01_subset(&l, &oaci));
}

#[test]
fn disjoint_union_examples() {
    let c2 = chain_order(2);
    let c3 = chain_order(3);
    assert_eq!(disjoint_union_bounded(&c2, &c2).order.len(), 2);
    let r = disjoint_union_bounded(&c3, &c3);
    assert!(order_isomorphism(&r.order, b2().order()).unwrap().is_some());
    for p in princ_core::enumerate::bounded_orders(5) {
        for q in princ_core::enumerate::bounded_orders(4) {
            let u = disjoint_union_bounded(&p, &q);
            assert_eq!(u.order.len(), p.len() + q.len() - 2);
            for x in p.elements() {
                for y in p.elements() {
                    assert_eq!(p.leq(x, y), u.order.leq(u.from_p[x], u.from_p[y]));
                }
            }
            for x in p.middle() {
                for y in q.middle() {
                    assert!(!u.order.comparable(u.from_p[x], u.from_q[y]));
                }
            }
        }
    }
}

#[test]
fn universal_complement_examples() {
    let l = n5();
    assert!(is_universal_complement(&l, el(&l, "c")).unwrap());
    assert!(!is_universal_complement(&l, el(&l, "a")).unwrap());
    let m = m3();
    for atom in ["a", "b", "c"] {
        assert!(is_universal_complement(&m, el(&m, atom)).unwrap());
    }
    assert!(matches!(is_universal_complement(&l, l.bottom()), Err(Error::BoundElement(_))));
}

#[test]
fn homomorphism_checks() {
    let k = Arc::new(chain(3));
    let l = Arc::new(chain(2));
    assert!(LatticeHom::new_bounded(k.clone(), l.clone(), vec![0, 1, 1]).is_ok());
    let n = Arc::new(n5());
    let b = Arc::new(b2());
    // Collapsing only a with c breaks meets.
    assert!(matches!(LatticeHom::new(n.clone(), b.clone(), vec![0, 1, 3, 1, 3]), Err(Error::NotAHomomorphism(_))));
}
