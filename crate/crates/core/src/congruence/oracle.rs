//! Brute-force congruence enumeration over all set partitions.

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::order::Elem;

use super::Congruence;

/// Largest lattice the oracle accepts (Bell(10) = 115975 partitions).
pub const ORACLE_LIMIT: usize = 10;

/// Every partition with the substitution property, sorted canonically.
pub fn oracle_all_congruences(l: &FiniteLattice) -> Result<Vec<Congruence>> {
    let n = l.len();
    if n > ORACLE_LIMIT {
        return Err(Error::SizeLimitExceeded { size: n, limit: ORACLE_LIMIT });
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    partitions(&mut rgs, 1, 0, &mut |labels| {
        let theta = Congruence::from_labels(labels);
        if theta.has_substitution_property(l) {
            out.push(theta);
        }
    });
    out.sort();
    Ok(out)
}

/// The least oracle congruence collapsing `a` and `b`.
pub fn oracle_min_congruence(l: &FiniteLattice, a: Elem, b: Elem) -> Result<Congruence> {
    let candidates: Vec<Congruence> = oracle_all_congruences(l)?.into_iter().filter(|c| c.same(a, b)).collect();
    let least = candidates.iter().find(|c| candidates.iter().all(|d| c.refines(d))).cloned();
    Ok(least.expect("the congruences containing a pair have a least member"))
}

/// Restricted growth strings: `rgs[i] <= 1 + max(rgs[..i])`.
fn partitions(rgs: &mut Vec<usize>, i: usize, max: usize, visit: &mut dyn FnMut(&[usize])) {
    if i >= rgs.len() {
        visit(rgs);
        return;
    }
    for v in 0..=max + 1 {
        rgs[i] = v;
        partitions(rgs, i + 1, max.max(v), visit);
    }
}
