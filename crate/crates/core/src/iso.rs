//! Isomorphism search for bounded orders and order-triples.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::order::{BoundedOrder, Elem, OrderTriple};

/// Bound on the search; beyond it the search refuses to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoConfig {
    pub max_elements: usize,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig { max_elements: 24 }
    }
}

/// A bottom/top-preserving order isomorphism `P → Q`, if one exists.
pub fn order_isomorphism(p: &BoundedOrder, q: &BoundedOrder) -> Result<Option<Vec<Elem>>> {
    order_isomorphism_with(p, q, IsoConfig::default())
}

pub fn order_isomorphism_with(p: &BoundedOrder, q: &BoundedOrder, config: IsoConfig) -> Result<Option<Vec<Elem>>> {
    let mut found = None;
    for_each_isomorphism(p, q, &vec![None; p.len()], config, &mut |sigma| {
        found = Some(sigma.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Order isomorphisms `σ: P_s → P_t`, `τ: Q_s → Q_t` with `τ ∘ ψ_s = ψ_t ∘ σ`.
pub fn triple_isomorphism(s: &OrderTriple, t: &OrderTriple) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
    triple_isomorphism_with(s, t, IsoConfig::default())
}

pub fn triple_isomorphism_with(
    s: &OrderTriple,
    t: &OrderTriple,
    config: IsoConfig,
) -> Result<Option<(Vec<Elem>, Vec<Elem>)>> {
    let (ps, qs, pt, qt) = (s.p(), s.q(), t.p(), t.q());
    check_size(ps, pt, config)?;
    check_size(qs, qt, config)?;
    let mut found = None;
    let mut inner_error = None;
    for_each_isomorphism(ps, pt, &vec![None; ps.len()], config, &mut |sigma| {
        // τ is pinned on the image of ψ_s.
        let mut fixed: Vec<Option<Elem>> = vec![None; qs.len()];
        for x in ps.elements() {
            let from = s.psi().apply(x);
            let to = t.psi().apply(sigma[x]);
            match fixed[from] {
                Some(prev) if prev != to => return ControlFlow::Continue(()),
                _ => fixed[from] = Some(to),
            }
        }
        match order_isomorphism_pinned(qs, qt, &fixed, config) {
            Ok(Some(tau)) => {
                found = Some((sigma.to_vec(), tau));
                ControlFlow::Break(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                inner_error = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = inner_error {
        return Err(e);
    }
    Ok(found)
}

fn order_isomorphism_pinned(
    p: &BoundedOrder,
    q: &BoundedOrder,
    fixed: &[Option<Elem>],
    config: IsoConfig,
) -> Result<Option<Vec<Elem>>> {
    let mut found = None;
    for_each_isomorphism(p, q, fixed, config, &mut |sigma| {
        found = Some(sigma.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

fn check_size(p: &BoundedOrder, q: &BoundedOrder, config: IsoConfig) -> Result<()> {
    let size = p.len().max(q.len());
    if size > config.max_elements {
        return Err(Error::SizeLimitExceeded { size, limit: config.max_elements });
    }
    Ok(())
}

/// Enumerate isomorphisms extending the partial assignment `fixed`.
pub fn for_each_isomorphism(
    p: &BoundedOrder,
    q: &BoundedOrder,
    fixed: &[Option<Elem>],
    config: IsoConfig,
    visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>,
) -> Result<()> {
    check_size(p, q, config)?;
    if p.len() != q.len() {
        return Ok(());
    }
    let sig = |o: &BoundedOrder, x: Elem| (o.down_count(x), o.up_count(x));
    let sig_p: Vec<_> = p.elements().map(|x| sig(p, x)).collect();
    let sig_q: Vec<_> = q.elements().map(|x| sig(q, x)).collect();
    let mut sorted_p = sig_p.clone();
    let mut sorted_q = sig_q.clone();
    sorted_p.sort_unstable();
    sorted_q.sort_unstable();
    if sorted_p != sorted_q {
        return Ok(());
    }
    // Pinned elements first, then by increasing down-set size.
    let mut seq: Vec<Elem> = p.elements().collect();
    seq.sort_by_key(|&x| (fixed[x].is_none(), sig_p[x].0, x));
    let mut state = Search {
        p,
        q,
        sig_p: &sig_p,
        sig_q: &sig_q,
        fixed,
        seq: &seq,
        sigma: vec![usize::MAX; p.len()],
        used: vec![false; q.len()],
    };
    let _ = state.extend(0, visit);
    Ok(())
}

struct Search<'a> {
    p: &'a BoundedOrder,
    q: &'a BoundedOrder,
    sig_p: &'a [(usize, usize)],
    sig_q: &'a [(usize, usize)],
    fixed: &'a [Option<Elem>],
    seq: &'a [Elem],
    sigma: Vec<Elem>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize, visit: &mut dyn FnMut(&[Elem]) -> ControlFlow<()>) -> ControlFlow<()> {
        if depth == self.seq.len() {
            return visit(&self.sigma);
        }
        let x = self.seq[depth];
        let candidates: Vec<Elem> = match self.fixed[x] {
            Some(y) => vec![y],
            None => self.q.elements().collect(),
        };
        for y in candidates {
            if self.used[y] || self.sig_p[x] != self.sig_q[y] {
                continue;
            }
            let consistent = self.seq[..depth].iter().all(|&u| {
                let v = self.sigma[u];
                self.p.leq(u, x) == self.q.leq(v, y) && self.p.leq(x, u) == self.q.leq(y, v)
            });
            if !consistent {
                continue;
            }
            self.sigma[x] = y;
            self.used[y] = true;
            let flow = self.extend(depth + 1, visit);
            self.used[y] = false;
            self.sigma[x] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
}
