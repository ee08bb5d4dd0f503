//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's closure algorithm and
//! its own partition enumerator: partitions are built block by block and
//! congruence membership is checked on the raw pair relation.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use princ_core::congruence::Congruence;
use princ_core::lattice::{lattice_from_order, FiniteLattice, LatticeHom};
use princ_core::order::{validate_bounded_order, BoundedOrder, Elem};

pub fn order(elements: &[&str], pairs: &[(&str, &str)]) -> BoundedOrder {
    validate_bounded_order(elements, pairs).expect("fixture is a bounded order")
}

pub fn lattice(elements: &[&str], pairs: &[(&str, &str)]) -> FiniteLattice {
    lattice_from_order(&order(elements, pairs)).expect("fixture is a lattice")
}

pub fn chain(n: usize) -> FiniteLattice {
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = refs.windows(2).map(|w| (w[0], w[1])).collect();
    lattice(&refs, &pairs)
}

pub fn chain_order(n: usize) -> BoundedOrder {
    chain(n).order().clone()
}

pub fn b2() -> FiniteLattice {
    lattice(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// o < a < b < i, o < c < i.
pub fn n5() -> FiniteLattice {
    lattice(&["o", "a", "b", "c", "i"], &[("o", "a"), ("a", "b"), ("b", "i"), ("o", "c"), ("c", "i")])
}

pub fn m3() -> FiniteLattice {
    lattice(&["o", "a", "b", "c", "i"], &[("o", "a"), ("o", "b"), ("o", "c"), ("a", "i"), ("b", "i"), ("c", "i")])
}

/// C2..C5, B2, N5, M3.
pub fn named_fixtures() -> Vec<(String, FiniteLattice)> {
    let mut out: Vec<(String, FiniteLattice)> = (2..=5).map(|n| (format!("C{n}"), chain(n))).collect();
    out.push(("B2".into(), b2()));
    out.push(("N5".into(), n5()));
    out.push(("M3".into(), m3()));
    out
}

pub fn el(l: &FiniteLattice, name: &str) -> Elem {
    l.id(name).unwrap_or_else(|| panic!("no element {name}"))
}

/// Blocks given by names, as a canonical congruence (no substitution check).
pub fn partition(l: &FiniteLattice, blocks: &[&[&str]]) -> Congruence {
    let mut labels = vec![usize::MAX; l.len()];
    for (i, block) in blocks.iter().enumerate() {
        for name in *block {
            labels[el(l, name)] = i;
        }
    }
    assert!(!labels.contains(&usize::MAX), "blocks must cover the lattice");
    Congruence::from_labels(&labels)
}

/// Every set partition, grown one element at a time into existing or new blocks.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![Vec::new()];
    for x in 0..n {
        let mut next = Vec::new();
        for p in out {
            for i in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[i].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Pair-relation form of a partition.
fn relation(blocks: &[Vec<usize>]) -> BTreeSet<(usize, usize)> {
    blocks.iter().flat_map(|b| b.iter().flat_map(move |&x| b.iter().map(move |&y| (x, y)))).collect()
}

fn is_congruence_relation(l: &FiniteLattice, rel: &BTreeSet<(usize, usize)>) -> bool {
    rel.iter().all(|&(x, y)| {
        l.elements().all(|s| rel.contains(&(l.join(x, s), l.join(y, s))) && rel.contains(&(l.meet(x, s), l.meet(y, s))))
    })
}

fn to_congruence(n: usize, blocks: &[Vec<usize>]) -> Congruence {
    let mut labels = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            labels[x] = i;
        }
    }
    Congruence::from_labels(&labels)
}

/// All congruences of `l` by exhaustive partition search.
pub fn oracle_congruences(l: &FiniteLattice) -> BTreeSet<Congruence> {
    assert!(l.len() <= 10, "oracle is exponential");
    set_partitions(l.len())
        .into_iter()
        .filter(|p| is_congruence_relation(l, &relation(p)))
        .map(|p| to_congruence(l.len(), &p))
        .collect()
}

/// The least oracle congruence relating `a` and `b`: the intersection of all
/// congruences that relate them.
pub fn oracle_con(l: &FiniteLattice, all: &BTreeSet<Congruence>, a: Elem, b: Elem) -> Congruence {
    let containing: Vec<&Congruence> = all.iter().filter(|c| c.same(a, b)).collect();
    let labels: Vec<Vec<usize>> = l.elements().map(|x| containing.iter().map(|c| c.block_of(x)).collect()).collect();
    let mut ids: Vec<Vec<usize>> = labels.clone();
    ids.sort();
    ids.dedup();
    let flat: Vec<usize> = labels.iter().map(|v| ids.binary_search(v).expect("present")).collect();
    Congruence::from_labels(&flat)
}

/// Every {0,1}-homomorphism by trying all maps (small lattices only).
pub fn brute_homs(k: &Arc<FiniteLattice>, l: &Arc<FiniteLattice>) -> Vec<Vec<Elem>> {
    let n = k.len();
    assert!(l.len().pow(n.saturating_sub(2) as u32) <= 2_000_000, "too many maps");
    let middle: Vec<Elem> = k.elements().filter(|&x| x != k.bottom() && x != k.top()).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; middle.len()];
    loop {
        let mut a = vec![0; n];
        a[k.bottom()] = l.bottom();
        a[k.top()] = l.top();
        for (&x, &d) in middle.iter().zip(&digits) {
            a[x] = d;
        }
        let ok = k.elements().all(|x| {
            k.elements().all(|y| a[k.meet(x, y)] == l.meet(a[x], a[y]) && a[k.join(x, y)] == l.join(a[x], a[y]))
        });
        if ok {
            out.push(a);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < l.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn hom(k: &Arc<FiniteLattice>, l: &Arc<FiniteLattice>, a: Vec<Elem>) -> LatticeHom {
    LatticeHom::new_bounded(k.clone(), l.clone(), a).expect("valid homomorphism")
}
