mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use princ_core::congruence::*;
use princ_core::enumerate::{homomorphisms, isotone_maps, random_bounded_order, random_lattice};
use princ_core::iso::{order_isomorphism, triple_isomorphism};
use princ_core::lattice::*;
use princ_core::order::*;
use princ_core::triples::{ordc, LatticeTriple};

fn lattice_from_seed(seed: u64, max_size: usize) -> FiniteLattice {
    random_lattice(&mut ChaCha8Rng::seed_from_u64(seed), max_size)
}

fn order_from_seed(seed: u64, max_size: usize) -> BoundedOrder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.gen_range(2..=max_size);
    let density = rng.gen_range(0.0..1.0);
    random_bounded_order(&mut rng, size, density)
}

/// A random {0,1}-homomorphism between two random lattices, if one beyond
/// the trivial cases exists in the first few found.
fn hom_from_seed(seed: u64) -> LatticeHom {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = Arc::new(random_lattice(&mut rng, 7));
    let l = Arc::new(random_lattice(&mut rng, 7));
    let homs = homomorphisms(&k, &l, 64);
    if homs.is_empty() {
        // K always maps onto its own quotient by ∇.
        return LatticeHom::identity(k);
    }
    homs[rng.gen_range(0..homs.len())].clone()
}

fn permuted(p: &BoundedOrder, seed: u64) -> BoundedOrder {
    use rand::seq::SliceRandom;
    let mut perm: Vec<Elem> = p.elements().collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let names = perm.iter().map(|&x| format!("r{}", p.name(x))).collect();
    let rel = perm.iter().map(|&x| perm.iter().map(|&y| p.leq(x, y)).collect()).collect();
    BoundedOrder::from_relation(names, rel).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alternating_terms_are_isotone(seed in any::<u64>(), raw in prop::collection::vec(any::<usize>(), 0..6)) {
        let l = lattice_from_seed(seed, 8);
        let ps: Vec<Elem> = raw.iter().map(|r| r % l.len()).collect();
        for x in l.elements() {
            for y in l.elements() {
                if l.leq(x, y) {
                    prop_assert!(l.leq(eval_alternating_term(&l, x, &ps), eval_alternating_term(&l, y, &ps)));
                }
            }
        }
    }

    #[test]
    fn principal_congruence_is_monotone_in_the_interval(seed in any::<u64>()) {
        let l = lattice_from_seed(seed, 8);
        let ivs = Interval::all(&l);
        let cons: Vec<Congruence> = ivs.iter().map(|i| principal_congruence(&l, i.low, i.high)).collect();
        for (i, a) in ivs.iter().enumerate() {
            prop_assert!(cons[i].same(a.low, a.high));
            for (j, b) in ivs.iter().enumerate() {
                if l.leq(b.low, a.low) && l.leq(a.high, b.high) {
                    prop_assert!(cons[i].refines(&cons[j]));
                }
            }
        }
    }

    #[test]
    fn closure_is_the_least_congruence(seed in any::<u64>()) {
        let l = lattice_from_seed(seed, 7);
        let all = common::oracle_congruences(&l);
        for a in l.elements() {
            for b in l.elements() {
                let con = principal_congruence(&l, a, b);
                prop_assert!(con.has_substitution_property(&l));
                prop_assert_eq!(&con, &common::oracle_con(&l, &all, a, b));
            }
        }
    }

    #[test]
    fn projectivity_witnesses_are_sound(seed in any::<u64>()) {
        let l = lattice_from_seed(seed, 7);
        let ivs = Interval::all(&l);
        for &src in &ivs {
            let con_src = principal_congruence(&l, src.low, src.high);
            for &dst in &ivs {
                if let Some(w) = is_cong_projective(&l, src, dst) {
                    prop_assert_eq!(eval_alternating_term(&l, src.low, &w), dst.low);
                    prop_assert_eq!(eval_alternating_term(&l, src.high, &w), dst.high);
                    prop_assert!(principal_congruence(&l, dst.low, dst.high).refines(&con_src));
                }
            }
        }
    }

    #[test]
    fn homomorphisms_transport_principal_congruences(seed in any::<u64>()) {
        let phi = hom_from_seed(seed);
        let (k, l) = (phi.source(), phi.target());
        for a in k.elements() {
            for b in k.elements() {
                let src = principal_congruence(k, a, b);
                let dst = principal_congruence(l, phi.apply(a), phi.apply(b));
                for x in k.elements() {
                    for y in k.elements() {
                        if src.same(x, y) {
                            prop_assert!(dst.same(phi.apply(x), phi.apply(y)));
                        }
                    }
                }
            }
        }
        let induced = induced_hom_map(&phi);
        prop_assert!(induced.is_ok(), "{:?}", induced.err());
        prop_assert!(induced.unwrap().preserves_bounds());
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(seed in any::<u64>(), pick in any::<usize>()) {
        let l = Arc::new(lattice_from_seed(seed, 8));
        // The quotient by ∇ is trivial and not a bounded lattice here.
        let cons: Vec<Congruence> = all_congruences(&l).into_iter().filter(|t| !t.is_total()).collect();
        let theta = &cons[pick % cons.len()];
        let (m, q) = quotient(&l, theta).unwrap();
        prop_assert_eq!(m.len(), theta.block_count());
        prop_assert!(q.is_surjective());
        prop_assert!(LatticeHom::new(l.clone(), m.clone(), q.assignment().to_vec()).is_ok());
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(theta.same(x, y), q.apply(x) == q.apply(y));
            }
        }
        let onto = induced_hom_map(&q).unwrap();
        prop_assert!(onto.is_surjective());
    }

    #[test]
    fn order_isomorphism_is_an_equivalence(seed in any::<u64>(), shuffle in any::<u64>()) {
        let p = order_from_seed(seed, 7);
        prop_assert!(order_isomorphism(&p, &p).unwrap().is_some());
        let q = permuted(&p, shuffle);
        let there = order_isomorphism(&p, &q).unwrap();
        prop_assert!(there.is_some());
        let there = there.unwrap();
        for x in p.elements() {
            for y in p.elements() {
                prop_assert_eq!(p.leq(x, y), q.leq(there[x], there[y]));
            }
        }
        prop_assert!(order_isomorphism(&q, &p).unwrap().is_some());
        let other = order_from_seed(seed ^ 0x9e37_79b9, 7);
        prop_assert_eq!(
            order_isomorphism(&p, &other).unwrap().is_some(),
            order_isomorphism(&other, &q).unwrap().is_some()
        );
    }

    #[test]
    fn disjoint_union_restricts_to_each_summand(a in any::<u64>(), b in any::<u64>()) {
        let p = order_from_seed(a, 6);
        let q = order_from_seed(b, 6);
        let u = disjoint_union_bounded(&p, &q);
        prop_assert_eq!(u.order.len(), p.len() + q.len() - 2);
        for (src, map) in [(&p, &u.from_p), (&q, &u.from_q)] {
            for x in src.elements() {
                for y in src.elements() {
                    prop_assert_eq!(src.leq(x, y), u.order.leq(map[x], map[y]));
                }
            }
        }
        for x in p.middle() {
            for y in q.middle() {
                prop_assert!(!u.order.comparable(u.from_p[x], u.from_q[y]));
            }
        }
    }

    #[test]
    fn ordc_of_identity_is_identity(seed in any::<u64>()) {
        let l = Arc::new(lattice_from_seed(seed, 8));
        let t = ordc(&LatticeTriple::new(LatticeHom::identity(l.clone())).unwrap()).unwrap();
        prop_assert!(t.psi().assignment().iter().copied().eq(t.p().elements()));
        let princ = Arc::new(princ_order(&l).order.as_ref().clone());
        if princ.len() <= 12 {
            let want = OrderTriple::new(IsotoneMap::identity(princ)).unwrap();
            prop_assert!(triple_isomorphism(&t, &want).unwrap().is_some());
        }
    }

    #[test]
    fn psi_factors_through_top(a in any::<u64>(), b in any::<u64>(), pick in any::<usize>()) {
        let p = Arc::new(order_from_seed(a, 5));
        let q = Arc::new(order_from_seed(b, 5));
        let maps = isotone_maps(&p, &q);
        let psi = maps[pick % maps.len()].clone();
        let t = OrderTriple::new(psi).unwrap();
        let (alpha, beta) = (alpha_map(&t), beta_map(&t));
        prop_assert_eq!(&compose(&beta, &alpha).unwrap(), t.psi());
        prop_assert!(alpha.is_surjective());
        prop_assert!(is_zero_separating(&beta));
        let btm = btm_of_triple(&t);
        for x in p.elements() {
            prop_assert_eq!(btm.contains(x), t.psi().apply(x) == q.bottom());
        }
    }
}
