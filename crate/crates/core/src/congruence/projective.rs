//! Congruence-projectivity of intervals and spreading chains.

use std::collections::{HashMap, VecDeque};

use crate::lattice::{FiniteLattice, Interval};
use crate::order::Elem;

#[derive(Clone, Copy)]
enum Step {
    Join(Elem),
    Meet(Elem),
}

/// A witness `p⃗` with `t(src.low, p⃗) = dst.low` and `t(src.high, p⃗) = dst.high`.
///
/// Breadth-first over pairs, so the number of join/meet steps is minimal;
/// ties go to the smaller element index, joins before meets. The step list is
/// padded to strict alternation with neutral elements (join 0, meet 1).
pub fn is_cong_projective(l: &FiniteLattice, src: Interval, dst: Interval) -> Option<Vec<Elem>> {
    let n = l.len();
    let key = |x: Elem, y: Elem| x * n + y;
    let start = key(src.low, src.high);
    let goal = key(dst.low, dst.high);
    let mut parent: HashMap<usize, (usize, Step)> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = vec![false; n * n];
    seen[start] = true;
    while let Some(state) = queue.pop_front() {
        if state == goal {
            break;
        }
        let (x, y) = (state / n, state % n);
        for s in 0..n {
            for step in [Step::Join(s), Step::Meet(s)] {
                let next = match step {
                    Step::Join(s) => key(l.join(x, s), l.join(y, s)),
                    Step::Meet(s) => key(l.meet(x, s), l.meet(y, s)),
                };
                if !seen[next] {
                    seen[next] = true;
                    parent.insert(next, (state, step));
                    queue.push_back(next);
                }
            }
        }
    }
    if !seen[goal] {
        return None;
    }
    let mut steps = Vec::new();
    let mut cur = goal;
    while cur != start {
        let (prev, step) = parent[&cur];
        steps.push(step);
        cur = prev;
    }
    steps.reverse();
    Some(pad_alternating(l, &steps))
}

fn pad_alternating(l: &FiniteLattice, steps: &[Step]) -> Vec<Elem> {
    let mut ps = Vec::with_capacity(2 * steps.len());
    for step in steps {
        // Even positions join, odd positions meet.
        match *step {
            Step::Join(s) => {
                if ps.len() % 2 == 1 {
                    ps.push(l.top());
                }
                ps.push(s);
            }
            Step::Meet(s) => {
                if ps.len() % 2 == 0 {
                    ps.push(l.bottom());
                }
                ps.push(s);
            }
        }
    }
    ps
}

/// An ascending chain `c = e₀ ≤ … ≤ eₙ = d` with a projectivity witness per step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadingChain {
    pub chain: Vec<Elem>,
    pub witnesses: Vec<Vec<Elem>>,
}

/// Walk cover chains of `[tgt.low, tgt.high]` whose every step is projective
/// from `gen`. Present iff `tgt.low ≡ tgt.high` modulo con(gen).
pub fn spreading_chain(l: &FiniteLattice, gen: Interval, tgt: Interval) -> Option<SpreadingChain> {
    if tgt.low == tgt.high {
        return Some(SpreadingChain { chain: vec![tgt.low], witnesses: Vec::new() });
    }
    // reach[e]: a projective cover step out of e that still reaches tgt.high.
    let mut reach: HashMap<Elem, Option<(Elem, Vec<Elem>)>> = HashMap::new();
    fn solve(
        l: &FiniteLattice,
        gen: Interval,
        high: Elem,
        e: Elem,
        reach: &mut HashMap<Elem, Option<(Elem, Vec<Elem>)>>,
    ) -> bool {
        if e == high {
            return true;
        }
        if let Some(r) = reach.get(&e) {
            return r.is_some();
        }
        let mut found = None;
        for c in l.order().upper_covers(e) {
            if !l.leq(c, high) {
                continue;
            }
            let Some(w) = is_cong_projective(l, gen, Interval { low: e, high: c }) else {
                continue;
            };
            if solve(l, gen, high, c, reach) {
                found = Some((c, w));
                break;
            }
        }
        let ok = found.is_some();
        reach.insert(e, found);
        ok
    }
    if !solve(l, gen, tgt.high, tgt.low, &mut reach) {
        return None;
    }
    let mut chain = vec![tgt.low];
    let mut witnesses = Vec::new();
    let mut cur = tgt.low;
    while cur != tgt.high {
        let (next, w) = reach[&cur].clone().expect("solved path");
        witnesses.push(w);
        chain.push(next);
        cur = next;
    }
    Some(SpreadingChain { chain, witnesses })
}
