//! JSON documents for bounded orders, lattices and order-triples.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use princ_core::order::{validate_bounded_order, BoundedOrder, IsotoneMap, OrderTriple};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn check_version(found: u32) -> CliResult<()> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("unsupported schema_version {found}, expected {SCHEMA_VERSION}")))
    }
}

/// A bounded order (or lattice) given by elements and a generating relation.
///
/// `leq` may list covers or any generating pairs; it is closed transitively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

impl PosetDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical form: elements in index order, covers only, explicit bounds.
    pub fn from_order(p: &BoundedOrder) -> Self {
        PosetDocument {
            schema_version: SCHEMA_VERSION,
            elements: p.names().to_vec(),
            leq: p.covers().into_iter().map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string())).collect(),
            bottom: Some(p.name(p.bottom()).to_string()),
            top: Some(p.name(p.top()).to_string()),
        }
    }

    pub fn to_order(&self) -> CliResult<BoundedOrder> {
        check_version(self.schema_version)?;
        for (i, (a, b)) in self.leq.iter().enumerate() {
            for end in [a, b] {
                if !self.elements.contains(end) {
                    return Err(CliError::Invalid(format!("leq[{i}]: unknown element {end:?}")));
                }
            }
        }
        let p = validate_bounded_order(&self.elements, &self.leq)?;
        for (what, given, actual) in [("bottom", &self.bottom, p.bottom()), ("top", &self.top, p.top())] {
            if let Some(name) = given {
                if name != p.name(actual) {
                    return Err(CliError::Invalid(format!(
                        "declared {what} {name:?} but the order's {what} is {:?}",
                        p.name(actual)
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

/// `(P, Q, ψ)` with ψ given as a total list of `(p, q)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDocument {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub p: PosetDocument,
    pub q: PosetDocument,
    pub psi: Vec<(String, String)>,
}

impl TripleDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_triple(t: &OrderTriple) -> Self {
        let (p, q) = (t.p(), t.q());
        TripleDocument {
            schema_version: SCHEMA_VERSION,
            p: PosetDocument::from_order(p),
            q: PosetDocument::from_order(q),
            psi: p.elements().map(|x| (p.name(x).to_string(), q.name(t.psi().apply(x)).to_string())).collect(),
        }
    }

    pub fn to_triple(&self) -> CliResult<OrderTriple> {
        check_version(self.schema_version)?;
        let p = Arc::new(self.p.to_order().map_err(|e| prefix("p", e))?);
        let q = Arc::new(self.q.to_order().map_err(|e| prefix("q", e))?);
        for (i, (a, b)) in self.psi.iter().enumerate() {
            if p.id(a).is_none() {
                return Err(CliError::Invalid(format!("psi[{i}]: {a:?} is not an element of p")));
            }
            if q.id(b).is_none() {
                return Err(CliError::Invalid(format!("psi[{i}]: {b:?} is not an element of q")));
            }
        }
        let psi = IsotoneMap::from_named(p, q, &self.psi).map_err(|e| prefix("psi", e.into()))?;
        Ok(OrderTriple::new(psi)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}

fn prefix(part: &str, e: CliError) -> CliError {
    match e {
        CliError::Invalid(m) => CliError::Invalid(format!("{part}: {m}")),
        CliError::NotALattice(m) => CliError::NotALattice(format!("{part}: {m}")),
        other => other,
    }
}
