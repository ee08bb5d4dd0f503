//! Finite bounded orders, down-sets, isotone maps and order-triples.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Index of an element inside its order or lattice.
pub type Elem = usize;

/// A finite poset with distinct least and greatest elements.
///
/// The order relation is stored transitively closed; covers are derived.
#[derive(Clone, PartialEq, Eq)]
pub struct BoundedOrder {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    leq: Vec<Vec<bool>>,
    bottom: Elem,
    top: Elem,
}

impl fmt::Debug for BoundedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers = self.covers().into_iter().map(|(a, b)| format!("{}<{}", self.names[a], self.names[b])).join(", ");
        write!(f, "BoundedOrder[{}]{{{}}}", self.names.join(","), covers)
    }
}

/// Build a bounded order from identifiers and a generating relation.
///
/// The relation is closed reflexively and transitively before the checks run.
pub fn validate_bounded_order<S: AsRef<str>>(raw_elements: &[S], raw_leq_pairs: &[(S, S)]) -> Result<BoundedOrder> {
    let names: Vec<String> = raw_elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    let n = names.len();
    let mut rel = vec![vec![false; n]; n];
    for (a, b) in raw_leq_pairs {
        let ia = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownElement(a.as_ref().to_string()))?;
        let ib = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownElement(b.as_ref().to_string()))?;
        rel[ia][ib] = true;
    }
    BoundedOrder::from_relation(names, rel)
}

impl BoundedOrder {
    /// Close `rel` and check it is a bounded partial order.
    pub fn from_relation(names: Vec<String>, mut rel: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyOrder);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        transitive_closure(&mut rel);
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i][j] && rel[j][i] {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        let bottom = (0..n).find(|&i| (0..n).all(|j| rel[i][j]));
        let top = (0..n).find(|&i| (0..n).all(|j| rel[j][i]));
        let (bottom, top) = match (bottom, top) {
            (Some(b), Some(t)) => (b, t),
            (None, _) => return Err(Error::NoBounds("minimum")),
            (_, None) => return Err(Error::NoBounds("maximum")),
        };
        if bottom == top {
            return Err(Error::TrivialOrder);
        }
        Ok(BoundedOrder { names, index, leq: rel, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.names.len()
    }

    /// Elements other than the bounds (the P⁻ of an order P).
    pub fn middle(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(move |&x| x != self.bottom && x != self.top)
    }

    pub fn middle_len(&self) -> usize {
        self.len() - 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn id(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<Elem> {
        self.id(name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn is_bound(&self, x: Elem) -> bool {
        x == self.bottom || x == self.top
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn down_count(&self, x: Elem) -> usize {
        self.elements().filter(|&y| self.leq[y][x]).count()
    }

    pub fn up_count(&self, x: Elem) -> usize {
        self.elements().filter(|&y| self.leq[x][y]).count()
    }

    /// Cover pairs `(a, b)` with `a ≺ b`, sorted by index.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Upper covers of `a`.
    pub fn upper_covers(&self, a: Elem) -> Vec<Elem> {
        let n = self.len();
        (0..n).filter(|&b| self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b))).collect()
    }

    /// Strict comparable pairs `p < q` with both in P⁻.
    pub fn middle_comparabilities(&self) -> Vec<(Elem, Elem)> {
        self.middle().cartesian_product(self.middle().collect::<Vec<_>>()).filter(|&(p, q)| self.lt(p, q)).collect()
    }

    /// Suborder on `members`, which must contain both bounds.
    pub fn suborder(&self, members: &[Elem]) -> Result<BoundedOrder> {
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let rel = members.iter().map(|&x| members.iter().map(|&y| self.leq[x][y]).collect()).collect();
        BoundedOrder::from_relation(names, rel)
    }

    /// The same order with element names rewritten.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<BoundedOrder> {
        let names = self.names.iter().map(|s| f(s)).collect();
        BoundedOrder::from_relation(names, self.leq.clone())
    }
}

pub(crate) fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        let through = rel[k].clone();
        for row in rel.iter_mut().filter(|row| row[k]) {
            for (cell, &reach) in row.iter_mut().zip(&through) {
                *cell |= reach;
            }
        }
    }
}

/// A downward closed subset of an order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DownSet {
    carrier: BTreeSet<Elem>,
}

impl DownSet {
    /// Down-set of the whole order.
    pub fn new(order: &BoundedOrder, carrier: impl IntoIterator<Item = Elem>) -> Result<Self> {
        Self::checked(order, carrier.into_iter().collect(), false)
    }

    /// Down-set of P⁻: closure is only required among middle elements.
    pub fn in_middle(order: &BoundedOrder, carrier: impl IntoIterator<Item = Elem>) -> Result<Self> {
        Self::checked(order, carrier.into_iter().collect(), true)
    }

    fn checked(order: &BoundedOrder, carrier: BTreeSet<Elem>, middle_only: bool) -> Result<Self> {
        for &x in &carrier {
            if middle_only && order.is_bound(x) {
                return Err(Error::HypothesisViolated(format!("{} is a bound, not in P-", order.name(x))));
            }
            for y in order.elements() {
                if middle_only && order.is_bound(y) {
                    continue;
                }
                if order.leq(y, x) && !carrier.contains(&y) {
                    return Err(Error::HypothesisViolated(format!(
                        "{} is below {} but not in the down-set",
                        order.name(y),
                        order.name(x)
                    )));
                }
            }
        }
        Ok(DownSet { carrier })
    }

    pub fn carrier(&self) -> &BTreeSet<Elem> {
        &self.carrier
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.carrier.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn is_subset(&self, other: &DownSet) -> bool {
        self.carrier.is_subset(&other.carrier)
    }

    pub fn render(&self, order: &BoundedOrder) -> String {
        format!("{{{}}}", self.carrier.iter().map(|&x| order.name(x)).join(","))
    }
}

/// All down-sets of P⁻, in increasing bitmask order of the middle elements.
pub fn middle_down_sets(p: &BoundedOrder) -> Result<Vec<DownSet>> {
    const LIMIT: usize = 20;
    let middle: Vec<Elem> = p.middle().collect();
    if middle.len() > LIMIT {
        return Err(Error::SizeLimitExceeded { size: middle.len(), limit: LIMIT });
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << middle.len()) {
        let members = middle.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &x)| x);
        if let Ok(d) = DownSet::in_middle(p, members) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Down P⁻ ordered by inclusion, optionally with a new greatest element `top`.
///
/// Elements are named `{p,q}` after their members. Without the extra top and
/// with P⁻ empty the result would have one element, which is rejected.
pub fn down_set_order(p: &BoundedOrder, with_top: bool) -> Result<BoundedOrder> {
    let sets = middle_down_sets(p)?;
    let mut names: Vec<String> = sets.iter().map(|d| d.render(p)).collect();
    let n = sets.len() + usize::from(with_top);
    let mut rel = vec![vec![false; n]; n];
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            rel[i][j] = a.is_subset(b);
        }
        if with_top {
            rel[i][n - 1] = true;
        }
    }
    if with_top {
        names.push("top".to_string());
        rel[n - 1][n - 1] = true;
    }
    BoundedOrder::from_relation(names, rel)
}

/// An order-preserving map between bounded orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotoneMap {
    source: Arc<BoundedOrder>,
    target: Arc<BoundedOrder>,
    assignment: Vec<Elem>,
}

impl IsotoneMap {
    pub fn new(source: Arc<BoundedOrder>, target: Arc<BoundedOrder>, assignment: Vec<Elem>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::NotTotal(format!("{} images for {} elements", assignment.len(), source.len())));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::NotTotal(format!("image index {bad} out of range")));
        }
        for x in source.elements() {
            for y in source.elements() {
                if source.leq(x, y) && !target.leq(assignment[x], assignment[y]) {
                    return Err(Error::NotIsotone(source.name(x).to_string(), source.name(y).to_string()));
                }
            }
        }
        Ok(IsotoneMap { source, target, assignment })
    }

    /// An isotone map that must also send 0 to 0 and 1 to 1.
    pub fn new_bounded(source: Arc<BoundedOrder>, target: Arc<BoundedOrder>, assignment: Vec<Elem>) -> Result<Self> {
        let f = Self::new(source, target, assignment)?;
        if f.assignment[f.source.bottom()] != f.target.bottom() {
            return Err(Error::NotBoundsPreserving("bottom"));
        }
        if f.assignment[f.source.top()] != f.target.top() {
            return Err(Error::NotBoundsPreserving("top"));
        }
        Ok(f)
    }

    /// Build from `(source name, target name)` pairs.
    pub fn from_named<S: AsRef<str>>(
        source: Arc<BoundedOrder>,
        target: Arc<BoundedOrder>,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut assignment = vec![None; source.len()];
        for (a, b) in pairs {
            let x = source.require(a.as_ref())?;
            let y = target.require(b.as_ref())?;
            match assignment[x] {
                Some(prev) if prev != y => return Err(Error::NotTotal(format!("{} mapped twice", a.as_ref()))),
                _ => assignment[x] = Some(y),
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::NotTotal(format!("{} unmapped", source.name(x)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new_bounded(source, target, assignment)
    }

    pub fn identity(order: Arc<BoundedOrder>) -> Self {
        let assignment = order.elements().collect();
        IsotoneMap { source: order.clone(), target: order, assignment }
    }

    pub fn source(&self) -> &Arc<BoundedOrder> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BoundedOrder> {
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
        let image: BTreeSet<Elem> = self.assignment.iter().copied().collect();
        image.len() == self.target.len()
    }

    pub fn is_injective(&self) -> bool {
        self.assignment.iter().all_unique()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &IsotoneMap) -> Result<IsotoneMap> {
        if first.target.as_ref() != self.source.as_ref() {
            return Err(Error::HypothesisViolated("maps are not composable".into()));
        }
        let assignment = first.assignment.iter().map(|&y| self.assignment[y]).collect();
        Ok(IsotoneMap { source: first.source.clone(), target: self.target.clone(), assignment })
    }
}

/// `g ∘ f`.
pub fn compose(g: &IsotoneMap, f: &IsotoneMap) -> Result<IsotoneMap> {
    g.after(f)
}

/// True iff only the bottom is sent to the bottom.
pub fn is_zero_separating(f: &IsotoneMap) -> bool {
    let zero = f.target().bottom();
    f.source().elements().all(|x| f.apply(x) != zero || x == f.source().bottom())
}

/// An order-triple `(P, Q, ψ)` with ψ an isotone {0,1}-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTriple {
    psi: IsotoneMap,
}

impl OrderTriple {
    pub fn new(psi: IsotoneMap) -> Result<Self> {
        if !psi.preserves_bounds() {
            return Err(Error::NotBoundsPreserving("bounds"));
        }
        Ok(OrderTriple { psi })
    }

    pub fn p(&self) -> &Arc<BoundedOrder> {
        self.psi.source()
    }

    pub fn q(&self) -> &Arc<BoundedOrder> {
        self.psi.target()
    }

    pub fn psi(&self) -> &IsotoneMap {
        &self.psi
    }

    pub fn is_surjective(&self) -> bool {
        self.psi.is_surjective()
    }

    fn top_members(&self) -> Vec<Elem> {
        let p = self.p();
        let zero = self.q().bottom();
        p.elements().filter(|&x| x == p.bottom() || self.psi.apply(x) != zero).collect()
    }
}

/// Top: the suborder of P on `{x : ψ(x) > 0} ∪ {0}`.
pub fn top_of_triple(t: &OrderTriple) -> BoundedOrder {
    t.p().suborder(&t.top_members()).expect("Top contains both bounds of P")
}

/// Btm: `ψ⁻¹(0)`, a down-set of P.
pub fn btm_of_triple(t: &OrderTriple) -> DownSet {
    let zero = t.q().bottom();
    let members = t.p().elements().filter(|&x| t.psi().apply(x) == zero);
    DownSet::new(t.p(), members).expect("preimage of 0 under an isotone map is a down-set")
}

/// α: P → Top, identity on Top and 0 elsewhere.
pub fn alpha_map(t: &OrderTriple) -> IsotoneMap {
    let members = t.top_members();
    let r = Arc::new(t.p().suborder(&members).expect("Top contains both bounds"));
    let assignment = t.p().elements().map(|x| members.iter().position(|&m| m == x).unwrap_or(r.bottom())).collect();
    IsotoneMap::new_bounded(t.p().clone(), r, assignment).expect("alpha is an isotone {0,1}-map")
}

/// β: Top → Q, the restriction of ψ.
pub fn beta_map(t: &OrderTriple) -> IsotoneMap {
    let members = t.top_members();
    let r = Arc::new(t.p().suborder(&members).expect("Top contains both bounds"));
    let assignment = members.iter().map(|&x| t.psi().apply(x)).collect();
    IsotoneMap::new_bounded(r, t.q().clone(), assignment).expect("beta is an isotone {0,1}-map")
}

/// Order-triple `(Top, Q, β)`.
pub fn beta_triple(t: &OrderTriple) -> OrderTriple {
    OrderTriple::new(beta_map(t)).expect("beta preserves bounds")
}
