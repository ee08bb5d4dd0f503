//! Congruences of finite lattices.

mod induced;
mod oracle;
mod projective;

pub use induced::{base_of, induced_hom_map, induced_hom_map_with, induced_sub_map, is_01_isolating};
pub use oracle::{oracle_all_congruences, oracle_min_congruence, ORACLE_LIMIT};
pub use projective::{is_cong_projective, spreading_chain, SpreadingChain};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::order::{BoundedOrder, Elem};

/// A partition of a lattice's elements in canonical form.
///
/// `class[x]` is the block index of `x`; blocks are numbered in order of
/// their least member, so equal partitions have equal vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    class: Vec<u32>,
}

impl Congruence {
    /// Δ on `n` elements.
    pub fn discrete(n: usize) -> Self {
        Congruence { class: (0..n as u32).collect() }
    }

    /// ∇ on `n` elements.
    pub fn total(n: usize) -> Self {
        Congruence { class: vec![0; n] }
    }

    /// Canonicalise an arbitrary block labelling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renum: HashMap<usize, u32> = HashMap::new();
        let class = labels
            .iter()
            .map(|l| {
                let next = renum.len() as u32;
                *renum.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { class }
    }

    /// Build from explicit blocks and check the substitution property.
    pub fn from_blocks(l: &FiniteLattice, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; l.len()];
        for (i, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= l.len() || labels[x] != usize::MAX {
                    return Err(Error::NotACongruence("blocks do not partition the lattice".into()));
                }
                labels[x] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::NotACongruence("blocks do not cover the lattice".into()));
        }
        let theta = Self::from_labels(&labels);
        if !theta.has_substitution_property(l) {
            return Err(Error::NotACongruence(theta.render(l)));
        }
        Ok(theta)
    }

    pub fn len(&self) -> usize {
        self.class.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class.is_empty()
    }

    pub fn block_of(&self, x: Elem) -> usize {
        self.class[x] as usize
    }

    pub fn same(&self, x: Elem, y: Elem) -> bool {
        self.class[x] == self.class[y]
    }

    pub fn block_count(&self) -> usize {
        self.class.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &c) in self.class.iter().enumerate() {
            out[c as usize].push(x);
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count() == self.len()
    }

    pub fn is_total(&self) -> bool {
        self.block_count() == 1
    }

    /// Is every block of `self` inside a block of `other`?
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.block_count()];
        self.class.iter().zip(&other.class).all(|(&a, &b)| {
            let slot = &mut image[a as usize];
            if *slot == u32::MAX {
                *slot = b;
            }
            *slot == b
        })
    }

    pub fn has_substitution_property(&self, l: &FiniteLattice) -> bool {
        l.elements().all(|x| {
            l.elements().all(|y| {
                !self.same(x, y)
                    || l.elements()
                        .all(|s| self.same(l.join(x, s), l.join(y, s)) && self.same(l.meet(x, s), l.meet(y, s)))
            })
        })
    }

    /// `{o | a,b | c | i}` style rendering.
    pub fn render(&self, l: &FiniteLattice) -> String {
        let blocks = self.blocks().into_iter().map(|b| b.into_iter().map(|x| l.name(x)).join(",")).join(" | ");
        format!("{{{blocks}}}")
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing all `pairs`.
///
/// Every merged pair pushes its translates by every element; translates of
/// pairs that were already equivalent follow from the chains that made them
/// equivalent, so they are skipped.
pub fn congruence_generated(l: &FiniteLattice, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(Elem, Elem)> = pairs.iter().copied().collect();
    while let Some((x, y)) = queue.pop_front() {
        if !uf.union(x, y) {
            continue;
        }
        for s in 0..n {
            queue.push_back((l.join(x, s), l.join(y, s)));
            queue.push_back((l.meet(x, s), l.meet(y, s)));
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    Congruence::from_labels(&labels)
}

/// con(a, b): the least congruence collapsing `a` and `b`.
pub fn principal_congruence(l: &FiniteLattice, a: Elem, b: Elem) -> Congruence {
    congruence_generated(l, &[(l.meet(a, b), l.join(a, b))])
}

/// con(a, b) as the join of the cover congruences along one maximal chain of
/// `[a∧b, a∨b]`. Agrees with [`principal_congruence`].
pub fn principal_congruence_by_covers(l: &FiniteLattice, a: Elem, b: Elem) -> Congruence {
    let (lo, hi) = (l.meet(a, b), l.join(a, b));
    let mut pairs = Vec::new();
    let mut cur = lo;
    while cur != hi {
        let next = l
            .order()
            .upper_covers(cur)
            .into_iter()
            .find(|&c| l.leq(c, hi))
            .expect("a cover below hi exists while cur < hi");
        pairs.push((cur, next));
        cur = next;
    }
    congruence_generated(l, &pairs)
}

/// θ ∧ φ: the common refinement.
pub fn congruence_meet(theta: &Congruence, phi: &Congruence) -> Congruence {
    let labels: Vec<usize> =
        theta.class.iter().zip(&phi.class).map(|(&a, &b)| ((a as usize) << 32) | b as usize).collect();
    Congruence::from_labels(&labels)
}

/// θ ∨ φ: closure of the union.
pub fn congruence_join(l: &FiniteLattice, theta: &Congruence, phi: &Congruence) -> Congruence {
    let mut pairs = Vec::new();
    for c in [theta, phi] {
        for block in c.blocks() {
            pairs.extend(block.windows(2).map(|w| (w[0], w[1])));
        }
    }
    congruence_generated(l, &pairs)
}

/// Con L: Δ plus the join-closure of the cover congruences, sorted canonically.
pub fn all_congruences(l: &FiniteLattice) -> Vec<Congruence> {
    let generators: BTreeSet<Congruence> =
        l.order().covers().into_iter().map(|(u, v)| principal_congruence(l, u, v)).collect();
    let mut seen: BTreeSet<Congruence> = BTreeSet::new();
    let delta = Congruence::discrete(l.len());
    seen.insert(delta.clone());
    let mut frontier = vec![delta];
    while let Some(theta) = frontier.pop() {
        for g in &generators {
            if g.refines(&theta) {
                continue;
            }
            let joined = congruence_join(l, &theta, g);
            if seen.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    seen.into_iter().collect()
}

/// Princ L ordered by refinement, one witness pair per congruence.
#[derive(Clone, Debug)]
pub struct PrincOrder {
    pub order: Arc<BoundedOrder>,
    pub congruences: Vec<Congruence>,
    pub witness: Vec<(Elem, Elem)>,
}

impl PrincOrder {
    pub fn index_of(&self, theta: &Congruence) -> Option<Elem> {
        self.congruences.iter().position(|c| c == theta)
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }
}

/// All principal congruences of `l`, deduplicated.
///
/// Elements are named `con(a,b)` after the first generating pair `a ≤ b` in
/// index order; Δ is `con(0,0)` with the lattice's bottom name.
pub fn princ_order(l: &FiniteLattice) -> PrincOrder {
    let mut index: HashMap<Congruence, usize> = HashMap::new();
    let mut congruences = Vec::new();
    let mut witness = Vec::new();
    let mut consider = |a: Elem, b: Elem, theta: Congruence| {
        if !index.contains_key(&theta) {
            index.insert(theta.clone(), congruences.len());
            congruences.push(theta);
            witness.push((a, b));
        }
    };
    consider(l.bottom(), l.bottom(), Congruence::discrete(l.len()));
    for a in l.elements() {
        for b in l.elements() {
            if a != b && l.leq(a, b) {
                consider(a, b, principal_congruence(l, a, b));
            }
        }
    }
    let names = witness.iter().map(|&(a, b)| format!("con({},{})", l.name(a), l.name(b))).collect();
    let rel = congruences.iter().map(|x| congruences.iter().map(|y| x.refines(y)).collect()).collect();
    let order = BoundedOrder::from_relation(names, rel).expect("Princ L is bounded by Δ and ∇");
    PrincOrder { order: Arc::new(order), congruences, witness }
}
