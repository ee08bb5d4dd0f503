//! Finite lattices, homomorphisms, quotients and the alternating term.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::order::{BoundedOrder, Elem};

/// A bounded order with total meet and join tables.
///
/// `labels` maps role tags such as `a:p` to elements; several tags may share
/// an element (after a quotient, for instance).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    order: BoundedOrder,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    labels: BTreeMap<String, Elem>,
}

/// Compute meet and join tables; fails naming a pair without unique bounds.
pub fn lattice_from_order(p: &BoundedOrder) -> Result<FiniteLattice> {
    let n = p.len();
    let ups: Vec<usize> = p.elements().map(|x| p.up_count(x)).collect();
    let downs: Vec<usize> = p.elements().map(|x| p.down_count(x)).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            // The join is the upper bound whose up-set is the whole common up-set.
            let common_up = (0..n).filter(|&u| p.leq(a, u) && p.leq(b, u)).count();
            let j = (0..n).find(|&u| p.leq(a, u) && p.leq(b, u) && ups[u] == common_up);
            let common_down = (0..n).filter(|&d| p.leq(d, a) && p.leq(d, b)).count();
            let m = (0..n).find(|&d| p.leq(d, a) && p.leq(d, b) && downs[d] == common_down);
            let j = j.ok_or_else(|| Error::NotALattice(p.name(a).into(), p.name(b).into(), "join"))?;
            let m = m.ok_or_else(|| Error::NotALattice(p.name(a).into(), p.name(b).into(), "meet"))?;
            join[a * n + b] = j;
            join[b * n + a] = j;
            meet[a * n + b] = m;
            meet[b * n + a] = m;
        }
    }
    let lattice = FiniteLattice { order: p.clone(), meet, join, labels: BTreeMap::new() };
    lattice.spot_check()?;
    Ok(lattice)
}

impl FiniteLattice {
    pub fn order(&self) -> &BoundedOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.order.elements()
    }

    pub fn name(&self, x: Elem) -> &str {
        self.order.name(x)
    }

    pub fn id(&self, name: &str) -> Option<Elem> {
        self.order.id(name)
    }

    pub fn require(&self, name: &str) -> Result<Elem> {
        self.order.require(name)
    }

    pub fn bottom(&self) -> Elem {
        self.order.bottom()
    }

    pub fn top(&self) -> Elem {
        self.order.top()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.order.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.len() + b]
    }

    pub fn labels(&self) -> &BTreeMap<String, Elem> {
        &self.labels
    }

    pub fn label(&self, tag: &str) -> Option<Elem> {
        self.labels.get(tag).copied()
    }

    pub fn require_label(&self, tag: &str) -> Result<Elem> {
        self.label(tag).ok_or_else(|| Error::MissingLabels(tag.to_string()))
    }

    /// Tags attached to `x`, in tag order.
    pub fn labels_at(&self, x: Elem) -> Vec<&str> {
        self.labels.iter().filter(|(_, &e)| e == x).map(|(t, _)| t.as_str()).collect()
    }

    /// Elements carrying more than one tag, with their tags.
    pub fn label_collisions(&self) -> Vec<(Elem, Vec<String>)> {
        let mut by_elem: BTreeMap<Elem, Vec<String>> = BTreeMap::new();
        for (tag, &e) in &self.labels {
            by_elem.entry(e).or_default().push(tag.clone());
        }
        by_elem.into_iter().filter(|(_, tags)| tags.len() > 1).collect()
    }

    pub fn with_labels(mut self, labels: BTreeMap<String, Elem>) -> Result<Self> {
        if let Some((tag, _)) = labels.iter().find(|(_, &e)| e >= self.len()) {
            return Err(Error::MissingLabels(tag.clone()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Label every element by its own name.
    pub fn self_labelled(self) -> Self {
        let labels = self.elements().map(|x| (self.name(x).to_string(), x)).collect();
        FiniteLattice { labels, ..self }
    }

    /// Absorption on all pairs.
    pub fn spot_check(&self) -> Result<()> {
        for x in self.elements() {
            for y in self.elements() {
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return Err(Error::NotALattice(self.name(x).into(), self.name(y).into(), "absorption"));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of the lattice laws and of the bound property of the tables.
    pub fn verify_axioms(&self) -> Result<()> {
        self.spot_check()?;
        let fail = |x: Elem, y: Elem, what| Err(Error::NotALattice(self.name(x).into(), self.name(y).into(), what));
        for x in self.elements() {
            if self.meet(x, x) != x || self.join(x, x) != x {
                return fail(x, x, "idempotence");
            }
            for y in self.elements() {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return fail(x, y, "commutativity");
                }
                let (m, j) = (self.meet(x, y), self.join(x, y));
                if !(self.leq(m, x) && self.leq(m, y) && self.leq(x, j) && self.leq(y, j)) {
                    return fail(x, y, "bound");
                }
                for z in self.elements() {
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                        || self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                    {
                        return fail(x, y, "associativity");
                    }
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, m) {
                        return fail(x, y, "greatest lower bound");
                    }
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(j, z) {
                        return fail(x, y, "least upper bound");
                    }
                }
            }
        }
        Ok(())
    }
}

/// A closed interval `[low, high]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub low: Elem,
    pub high: Elem,
}

impl Interval {
    pub fn new(l: &FiniteLattice, low: Elem, high: Elem) -> Result<Self> {
        if !l.leq(low, high) {
            return Err(Error::HypothesisViolated(format!("[{}, {}] is not an interval", l.name(low), l.name(high))));
        }
        Ok(Interval { low, high })
    }

    /// All intervals of `l`.
    pub fn all(l: &FiniteLattice) -> Vec<Interval> {
        l.elements()
            .cartesian_product(l.elements())
            .filter(|&(a, b)| l.leq(a, b))
            .map(|(low, high)| Interval { low, high })
            .collect()
    }
}

/// `t(x, p₀, …, p_{m−1}) = ⋯(((x ∨ p₀) ∧ p₁) ∨ p₂) ∧ ⋯`.
pub fn eval_alternating_term(l: &FiniteLattice, x: Elem, ps: &[Elem]) -> Elem {
    ps.iter().enumerate().fold(x, |acc, (i, &p)| if i % 2 == 0 { l.join(acc, p) } else { l.meet(acc, p) })
}

/// A lattice homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeHom {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    assignment: Vec<Elem>,
}

impl LatticeHom {
    /// Checks meet and join preservation exhaustively.
    pub fn new(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, assignment: Vec<Elem>) -> Result<Self> {
        if assignment.len() != source.len() || assignment.iter().any(|&y| y >= target.len()) {
            return Err(Error::NotTotal("assignment does not match the lattices".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                let (fx, fy) = (assignment[x], assignment[y]);
                if assignment[source.meet(x, y)] != target.meet(fx, fy) {
                    return Err(Error::NotAHomomorphism(format!("meet of {} and {}", source.name(x), source.name(y))));
                }
                if assignment[source.join(x, y)] != target.join(fx, fy) {
                    return Err(Error::NotAHomomorphism(format!("join of {} and {}", source.name(x), source.name(y))));
                }
            }
        }
        Ok(LatticeHom { source, target, assignment })
    }

    /// A homomorphism that must also preserve both bounds.
    pub fn new_bounded(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, assignment: Vec<Elem>) -> Result<Self> {
        let h = Self::new(source, target, assignment)?;
        if !h.preserves_bounds() {
            return Err(Error::NotBoundsPreserving("bounds"));
        }
        Ok(h)
    }

    pub fn identity(l: Arc<FiniteLattice>) -> Self {
        let assignment = l.elements().collect();
        LatticeHom { source: l.clone(), target: l, assignment }
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn assignment(&self) -> &[Elem] {
        &self.assignment
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.assignment[x]
    }

    pub fn preserves_bounds(&self) -> bool {
        self.assignment[self.source.bottom()] == self.target.bottom()
            && self.assignment[self.source.top()] == self.target.top()
    }

    pub fn is_surjective(&self) -> bool {
        self.assignment.iter().collect::<BTreeSet<_>>().len() == self.target.len()
    }

    pub fn is_injective(&self) -> bool {
        self.assignment.iter().all_unique()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LatticeHom) -> Result<LatticeHom> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::HypothesisViolated("homomorphisms are not composable".into()));
        }
        let assignment = first.assignment.iter().map(|&y| self.assignment[y]).collect();
        Ok(LatticeHom { source: first.source.clone(), target: self.target.clone(), assignment })
    }
}

/// `L/θ` with the block projection.
///
/// Each block is named after its least-index member and inherits every label
/// of its members.
pub fn quotient(l: &Arc<FiniteLattice>, theta: &Congruence) -> Result<(Arc<FiniteLattice>, LatticeHom)> {
    if theta.len() != l.len() {
        return Err(Error::NotACongruence("partition is over a different element set".into()));
    }
    if !theta.has_substitution_property(l) {
        return Err(Error::NotACongruence(theta.render(l)));
    }
    let blocks = theta.blocks();
    let names: Vec<String> = blocks.iter().map(|b| l.name(b[0]).to_string()).collect();
    let rel: Vec<Vec<bool>> =
        blocks.iter().map(|a| blocks.iter().map(|b| theta.same(l.join(a[0], b[0]), b[0])).collect()).collect();
    let order = BoundedOrder::from_relation(names, rel)?;
    let labels = l.labels().iter().map(|(tag, &e)| (tag.clone(), theta.block_of(e))).collect();
    let m = Arc::new(lattice_from_order(&order)?.with_labels(labels)?);
    let assignment = l.elements().map(|x| theta.block_of(x)).collect();
    let hom = LatticeHom::new_bounded(l.clone(), m.clone(), assignment)?;
    Ok((m, hom))
}

/// Does `embedding` preserve meet, join, bottom and top?
pub fn is_01_sublattice(k: &FiniteLattice, l: &FiniteLattice, embedding: &[Elem]) -> bool {
    if embedding.len() != k.len() || embedding.iter().any(|&y| y >= l.len()) {
        return false;
    }
    if embedding[k.bottom()] != l.bottom() || embedding[k.top()] != l.top() {
        return false;
    }
    k.elements().all(|x| {
        k.elements().all(|y| {
            embedding[k.meet(x, y)] == l.meet(embedding[x], embedding[y])
                && embedding[k.join(x, y)] == l.join(embedding[x], embedding[y])
        })
    })
}

/// Does the subset `members` form a {0,1}-sublattice of `l`?
pub fn is_01_subset(l: &FiniteLattice, members: &[Elem]) -> bool {
    let set: BTreeSet<Elem> = members.iter().copied().collect();
    set.contains(&l.bottom())
        && set.contains(&l.top())
        && set.iter().all(|&x| set.iter().all(|&y| set.contains(&l.meet(x, y)) && set.contains(&l.join(x, y))))
}

/// `P ⊎ Q` with bounds identified.
#[derive(Clone, Debug)]
pub struct DisjointUnion {
    pub order: BoundedOrder,
    /// Image of each element of P.
    pub from_p: Vec<Elem>,
    /// Image of each element of Q.
    pub from_q: Vec<Elem>,
}

/// Bounds keep P's names; middles are renamed `P.x` and `Q.y`.
pub fn disjoint_union_bounded(p: &BoundedOrder, q: &BoundedOrder) -> DisjointUnion {
    let mut names = vec![p.name(p.bottom()).to_string(), p.name(p.top()).to_string()];
    let mut from_p = vec![0; p.len()];
    let mut from_q = vec![0; q.len()];
    from_p[p.top()] = 1;
    from_q[q.top()] = 1;
    for x in p.middle() {
        from_p[x] = names.len();
        names.push(format!("P.{}", p.name(x)));
    }
    for y in q.middle() {
        from_q[y] = names.len();
        names.push(format!("Q.{}", q.name(y)));
    }
    let n = names.len();
    let mut rel = vec![vec![false; n]; n];
    for (src, map) in [(p, &from_p), (q, &from_q)] {
        for a in src.elements() {
            for b in src.elements() {
                if src.leq(a, b) {
                    rel[map[a]][map[b]] = true;
                }
            }
        }
    }
    let order = BoundedOrder::from_relation(names, rel).expect("union of bounded orders is bounded");
    DisjointUnion { order, from_p, from_q }
}

/// Is `u` complementary to every element outside `{0, 1, u}`?
pub fn is_universal_complement(l: &FiniteLattice, u: Elem) -> Result<bool> {
    if u == l.bottom() || u == l.top() {
        return Err(Error::BoundElement(l.name(u).to_string()));
    }
    Ok(l.elements()
        .filter(|&v| v != l.bottom() && v != l.top() && v != u)
        .all(|v| l.meet(u, v) == l.bottom() && l.join(u, v) == l.top()))
}
