//! Batch verification over an enumerated corpus plus a seeded random sample.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use princ_core::congruence::{
    all_congruences, induced_hom_map, is_cong_projective, oracle_all_congruences, oracle_min_congruence,
    principal_congruence, spreading_chain, Congruence,
};
use princ_core::construct::contract::check_lat_contract;
use princ_core::construct::{Catalog, GadgetKind, Variant};
use princ_core::enumerate::{bounded_orders, homomorphisms, order_triples, random_lattice};
use princ_core::lattice::{eval_alternating_term, lattice_from_order, quotient, FiniteLattice, Interval, LatticeHom};
use princ_core::triples::verify_representation;

use crate::doc::SCHEMA_VERSION;

/// Largest `--max-size` accepted; beyond it the triple enumeration explodes.
pub const MAX_CORPUS_SIZE: usize = 5;
const RANDOM_LATTICES: usize = 40;
const RANDOM_LATTICE_SIZE: usize = 8;
const PARTNERS: usize = 4;
const HOMS_PER_PAIR: usize = 2;
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failure_count: usize,
    /// The first few failure messages.
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub max_size: usize,
    pub seed: u64,
    pub catalog_hash: String,
    pub catalog_matches_nominal: bool,
    /// `(coefficient of c_P and c_Q, coefficient of n_P)` per variant.
    pub catalog_coefficients: Vec<(Variant, (usize, usize))>,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

#[derive(Default)]
struct Suite {
    checked: usize,
    failures: Vec<String>,
}

impl Suite {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(message());
        }
    }

    fn finish(self, name: &str) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            checked: self.checked,
            failure_count: self.failures.len(),
            passed: self.failures.is_empty(),
            failures: self.failures.into_iter().take(KEPT_FAILURES).collect(),
        }
    }
}

fn corpus_lattices(max_size: usize, rng: &mut ChaCha8Rng) -> Vec<(String, Arc<FiniteLattice>)> {
    let mut out: Vec<(String, Arc<FiniteLattice>)> = bounded_orders(max_size)
        .iter()
        .enumerate()
        .filter_map(|(i, p)| lattice_from_order(p).ok().map(|l| (format!("order #{i}"), Arc::new(l))))
        .collect();
    let random_size = (max_size + 3).min(RANDOM_LATTICE_SIZE);
    for i in 0..RANDOM_LATTICES {
        out.push((format!("random #{i}"), Arc::new(random_lattice(rng, random_size))));
    }
    out
}

fn oracle_suite(lattices: &[(String, Arc<FiniteLattice>)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, l) in lattices {
        match oracle_all_congruences(l) {
            Ok(oracle) => {
                let oracle: BTreeSet<Congruence> = oracle.into_iter().collect();
                let ours: BTreeSet<Congruence> = all_congruences(l).into_iter().collect();
                s.check(ours == oracle, || format!("{name}: Con L differs from the oracle"));
                for a in l.elements() {
                    for b in l.elements() {
                        let want = oracle_min_congruence(l, a, b);
                        let ok = want.as_ref().is_ok_and(|w| *w == principal_congruence(l, a, b));
                        s.check(ok, || format!("{name}: con({},{}) differs from the oracle", l.name(a), l.name(b)));
                    }
                }
            }
            Err(e) => s.check(false, || format!("{name}: {e}")),
        }
    }
    s.finish("oracle equivalence")
}

fn coherence_suite(lattices: &[(String, Arc<FiniteLattice>)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, l) in lattices {
        let ivs = Interval::all(l);
        for &src in &ivs {
            let con = principal_congruence(l, src.low, src.high);
            for &dst in &ivs {
                let collapses = con.same(dst.low, dst.high);
                if let Some(w) = is_cong_projective(l, src, dst) {
                    let ok = collapses
                        && eval_alternating_term(l, src.low, &w) == dst.low
                        && eval_alternating_term(l, src.high, &w) == dst.high;
                    s.check(ok, || format!("{name}: unsound projectivity witness"));
                }
                s.check(collapses == spreading_chain(l, src, dst).is_some(), || {
                    format!("{name}: spreading chain disagrees with con")
                });
            }
        }
    }
    s.finish("projectivity coherence")
}

fn transport_suite(lattices: &[(String, Arc<FiniteLattice>)], rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::default();
    for (kn, k) in lattices {
        let ivs = Interval::all(k);
        let cons: Vec<Congruence> = ivs.iter().map(|iv| principal_congruence(k, iv.low, iv.high)).collect();
        for (ln, l) in lattices.choose_multiple(rng, PARTNERS).cloned().collect::<Vec<_>>() {
            let l = &l;
            let homs = homomorphisms(k, l, 64);
            for phi in homs.choose_multiple(rng, HOMS_PER_PAIR) {
                let images: Vec<Congruence> =
                    ivs.iter().map(|iv| principal_congruence(l, phi.apply(iv.low), phi.apply(iv.high))).collect();
                for (i, &src) in ivs.iter().enumerate() {
                    for (j, &dst) in ivs.iter().enumerate() {
                        if let Some(w) = is_cong_projective(k, src, dst) {
                            let mapped: Vec<_> = w.iter().map(|&x| phi.apply(x)).collect();
                            let ok = eval_alternating_term(l, phi.apply(src.low), &mapped) == phi.apply(dst.low)
                                && eval_alternating_term(l, phi.apply(src.high), &mapped) == phi.apply(dst.high);
                            s.check(ok, || format!("{kn} -> {ln}: mapped witness fails"));
                        }
                        if cons[j].refines(&cons[i]) {
                            s.check(images[j].refines(&images[i]), || format!("{kn} -> {ln}: containment lost"));
                        }
                    }
                }
                let induced = induced_hom_map(phi);
                s.check(induced.is_ok(), || format!("{kn} -> {ln}: {}", induced.as_ref().unwrap_err()));
            }
        }
    }
    s.finish("homomorphism transport")
}

fn onto_suite(lattices: &[(String, Arc<FiniteLattice>)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, l) in lattices {
        for theta in all_congruences(l).iter().filter(|t| !t.is_total()) {
            let q: Option<LatticeHom> = quotient(l, theta).ok().map(|(_, q)| q);
            let onto = q.as_ref().and_then(|q| induced_hom_map(q).ok()).is_some_and(|f| f.is_surjective());
            s.check(onto, || format!("{name}: induced map of L -> L/{} is not onto", theta.render(l)));
        }
    }
    s.finish("surjective homs induce onto maps")
}

fn contract_suite(max_size: usize, catalog: &Catalog) -> SuiteResult {
    let mut s = Suite::default();
    let xs = ["x:1".to_string()];
    for p in bounded_orders(max_size) {
        for kind in [GadgetKind::G, GadgetKind::GExt] {
            for x in [&[][..], &xs[..]] {
                match check_lat_contract(&p, x, kind, catalog) {
                    Ok(clauses) => {
                        for c in clauses {
                            s.check(c.passed, || format!("{kind} on {:?}: {}: {}", p.names(), c.clause, c.detail));
                        }
                    }
                    Err(e) => s.check(false, || format!("{kind} on {:?}: {e}", p.names())),
                }
            }
        }
    }
    s.finish("construction contract")
}

fn round_trip_suite(max_size: usize, catalog: &Catalog) -> SuiteResult {
    let mut s = Suite::default();
    for (i, t) in order_triples(max_size).iter().enumerate() {
        for variant in [Variant::Original, Variant::Reduced] {
            let report = verify_representation(t, variant, catalog);
            for c in &report.clauses {
                s.check(c.passed, || format!("triple #{i} ({variant}): {}: {}", c.clause, c.detail));
            }
        }
    }
    s.finish("representation round-trip")
}

/// Run every suite; deterministic for a fixed `(max_size, seed, catalog)`.
pub fn verify_corpus(max_size: usize, seed: u64, catalog: &Catalog) -> CorpusReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattices = corpus_lattices(max_size, &mut rng);
    let suites = vec![
        oracle_suite(&lattices),
        coherence_suite(&lattices),
        transport_suite(&lattices, &mut rng),
        onto_suite(&lattices),
        contract_suite(max_size, catalog),
        round_trip_suite(max_size, catalog),
    ];
    CorpusReport {
        schema_version: SCHEMA_VERSION,
        max_size,
        seed,
        catalog_hash: catalog.hash(),
        catalog_matches_nominal: catalog.matches_nominal(),
        catalog_coefficients: [Variant::Original, Variant::Reduced]
            .into_iter()
            .map(|v| (v, catalog.coefficients(v)))
            .collect(),
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}
