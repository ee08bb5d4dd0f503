//! Corpora of small orders, maps and lattices, exhaustive or seeded-random.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::lattice::{lattice_from_order, FiniteLattice, LatticeHom};
use crate::order::{BoundedOrder, Elem, IsotoneMap, OrderTriple};

/// Middle elements are named `p1, p2, …`; the bounds `0` and `1`.
fn order_from_middle(m: usize, lt: &[Vec<bool>]) -> Result<BoundedOrder> {
    let mut names = vec!["0".to_string()];
    names.extend((1..=m).map(|i| format!("p{i}")));
    names.push("1".to_string());
    let n = m + 2;
    let mut rel = vec![vec![false; n]; n];
    rel[0].fill(true);
    for row in &mut rel {
        row[n - 1] = true;
    }
    for (row, strict) in rel[1..=m].iter_mut().zip(lt) {
        row[1..=m].copy_from_slice(strict);
    }
    BoundedOrder::from_relation(names, rel)
}

/// All bounded orders with `2..=max_size` elements, one per isomorphism class.
///
/// A strict order on the middle elements is kept when it is transitively
/// closed and its adjacency matrix is lexicographically least among all
/// relabellings.
pub fn bounded_orders(max_size: usize) -> Vec<BoundedOrder> {
    let mut out = Vec::new();
    for n in 2..=max_size {
        let m = n - 2;
        let pairs: Vec<(usize, usize)> = (0..m).cartesian_product(0..m).filter(|(i, j)| i != j).collect();
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut lt = vec![vec![false; m]; m];
            for (k, &(i, j)) in pairs.iter().enumerate() {
                lt[i][j] = mask & (1 << k) != 0;
            }
            let closed_strict = (0..m).all(|i| {
                (0..m).all(|j| !(lt[i][j] && lt[j][i]) && (0..m).all(|k| !(lt[i][j] && lt[j][k]) || lt[i][k]))
            });
            if !closed_strict {
                continue;
            }
            let key = (0..m)
                .permutations(m)
                .map(|perm| {
                    (0..m)
                        .flat_map(|i| (0..m).map(move |j| (i, j)))
                        .map(|(i, j)| lt[perm[i]][perm[j]])
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap_or_default();
            if seen.insert(key) {
                out.push(order_from_middle(m, &lt).expect("strict order on the middle is valid"));
            }
        }
    }
    out
}

/// Every isotone {0,1}-map `P → Q`.
pub fn isotone_maps(p: &Arc<BoundedOrder>, q: &Arc<BoundedOrder>) -> Vec<IsotoneMap> {
    let middle: Vec<Elem> = p.middle().collect();
    let mut out = Vec::new();
    let mut assignment = vec![0; p.len()];
    assignment[p.bottom()] = q.bottom();
    assignment[p.top()] = q.top();
    if middle.is_empty() {
        out.push(IsotoneMap::new_bounded(p.clone(), q.clone(), assignment).expect("bounds map is isotone"));
        return out;
    }
    for images in std::iter::repeat_n(q.elements(), middle.len()).multi_cartesian_product() {
        for (&x, &y) in middle.iter().zip(&images) {
            assignment[x] = y;
        }
        if let Ok(f) = IsotoneMap::new_bounded(p.clone(), q.clone(), assignment.clone()) {
            out.push(f);
        }
    }
    out
}

/// Every order-triple with `|P|, |Q| <= max_size`, P and Q up to isomorphism.
pub fn order_triples(max_size: usize) -> Vec<OrderTriple> {
    let orders: Vec<Arc<BoundedOrder>> = bounded_orders(max_size).into_iter().map(Arc::new).collect();
    let mut out = Vec::new();
    for p in &orders {
        for q in &orders {
            for f in isotone_maps(p, q) {
                out.push(OrderTriple::new(f).expect("maps are bounds-preserving"));
            }
        }
    }
    out
}

/// A random bounded order with `size` elements; each middle pair `i < j`
/// (in index order) is related with probability `density`.
pub fn random_bounded_order<R: Rng>(rng: &mut R, size: usize, density: f64) -> BoundedOrder {
    let m = size.max(2) - 2;
    let mut lt = vec![vec![false; m]; m];
    for (i, row) in lt.iter_mut().enumerate() {
        for cell in &mut row[i + 1..] {
            *cell = rng.gen_bool(density);
        }
    }
    // Close transitively; index order keeps it acyclic.
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if lt[i][k] && lt[k][j] {
                    lt[i][j] = true;
                }
            }
        }
    }
    // Shuffle so that labels carry no order information.
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let shuffled: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| lt[perm[i]][perm[j]]).collect()).collect();
    order_from_middle(m, &shuffled).expect("random strict order is valid")
}

/// A random lattice with `2..=max_size` elements.
pub fn random_lattice<R: Rng>(rng: &mut R, max_size: usize) -> FiniteLattice {
    loop {
        let size = rng.gen_range(2..=max_size);
        let density = rng.gen_range(0.1..0.9);
        if let Ok(l) = lattice_from_order(&random_bounded_order(rng, size, density)) {
            return l;
        }
    }
}

/// Every {0,1}-homomorphism `K → L`, by backtracking with partial checks.
pub fn homomorphisms(k: &Arc<FiniteLattice>, l: &Arc<FiniteLattice>, limit: usize) -> Vec<LatticeHom> {
    let n = k.len();
    let mut assignment: Vec<Option<Elem>> = vec![None; n];
    assignment[k.bottom()] = Some(l.bottom());
    assignment[k.top()] = Some(l.top());
    let order: Vec<Elem> = k.elements().filter(|&x| x != k.bottom() && x != k.top()).collect();
    let mut out = Vec::new();
    fn consistent(k: &FiniteLattice, l: &FiniteLattice, a: &[Option<Elem>], x: Elem) -> bool {
        let fx = a[x].expect("just assigned");
        k.elements().all(|y| {
            let Some(fy) = a[y] else { return true };
            let m = a[k.meet(x, y)].is_none_or(|v| v == l.meet(fx, fy));
            let j = a[k.join(x, y)].is_none_or(|v| v == l.join(fx, fy));
            m && j && (!k.leq(x, y) || l.leq(fx, fy)) && (!k.leq(y, x) || l.leq(fy, fx))
        })
    }
    fn go(
        k: &Arc<FiniteLattice>,
        l: &Arc<FiniteLattice>,
        order: &[Elem],
        a: &mut Vec<Option<Elem>>,
        out: &mut Vec<LatticeHom>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let Some((&x, rest)) = order.split_first() else {
            let assignment = a.iter().map(|v| v.expect("complete")).collect();
            if let Ok(h) = LatticeHom::new_bounded(k.clone(), l.clone(), assignment) {
                out.push(h);
            }
            return;
        };
        for y in l.elements() {
            a[x] = Some(y);
            if consistent(k, l, a, x) {
                go(k, l, rest, a, out, limit);
            }
        }
        a[x] = None;
    }
    go(k, l, &order, &mut assignment, &mut out, limit);
    out
}
