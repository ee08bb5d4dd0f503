//! Data-driven gadget catalog.
//!
//! A gadget is a cover diagram over the ports `0`, `1`, `a:p`, `b:p`, `a:q`,
//! `b:q` and its own internal elements. Inserted on a pair `(p, q)` of chains
//! it must force `con(a:p, b:p) <= con(a:q, b:q)` (G, GExt) or equality (Equi).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const PORTS: [&str; 6] = ["0", "1", "a:p", "b:p", "a:q", "b:q"];

const DEFAULT_CATALOG: &str = include_str!("../../catalog/default.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GadgetKind {
    G,
    GExt,
    Equi,
}

impl GadgetKind {
    /// Added-size targets from the published count formulas.
    pub fn nominal_size(self) -> usize {
        match self {
            GadgetKind::G => 7,
            GadgetKind::GExt => 15,
            GadgetKind::Equi => 4,
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetKind::G => "G",
            GadgetKind::GExt => "GExt",
            GadgetKind::Equi => "Equi",
        })
    }
}

impl FromStr for GadgetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G" => Ok(GadgetKind::G),
            "GExt" => Ok(GadgetKind::GExt),
            "Equi" => Ok(GadgetKind::Equi),
            other => Err(Error::Catalog(format!("unknown gadget kind {other:?}"))),
        }
    }
}

/// Which two-chain construction the disjoint-union step uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// GExt gadgets, two per linked element.
    Original,
    /// G gadgets, one Equi per linked element.
    Reduced,
}

impl Variant {
    /// Gadget used for comparabilities inside one order.
    pub fn comparability_kind(self) -> GadgetKind {
        match self {
            Variant::Original => GadgetKind::GExt,
            Variant::Reduced => GadgetKind::G,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Original => "original",
            Variant::Reduced => "reduced",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Variant::Original),
            "reduced" => Ok(Variant::Reduced),
            other => Err(Error::Catalog(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetTemplate {
    pub kind: GadgetKind,
    pub nominal_size: usize,
    pub internals: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl GadgetTemplate {
    pub fn size(&self) -> usize {
        self.internals.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema_version: u32,
    pub gadgets: Vec<GadgetTemplate>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::from_json(DEFAULT_CATALOG).expect("built-in catalog is valid")
    }
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        let catalog: Catalog = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        catalog.validate()?;
        Ok(catalog)
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != 1 {
            return Err(Error::Catalog(format!("unsupported schema version {}", self.schema_version)));
        }
        for kind in [GadgetKind::G, GadgetKind::GExt, GadgetKind::Equi] {
            let count = self.gadgets.iter().filter(|g| g.kind == kind).count();
            if count != 1 {
                return Err(Error::Catalog(format!("{count} entries for kind {kind}")));
            }
        }
        for g in &self.gadgets {
            let mut known: BTreeSet<&str> = PORTS.into_iter().collect();
            for s in &g.internals {
                if !known.insert(s) {
                    return Err(Error::Catalog(format!("{}: duplicate or port-named internal {s:?}", g.kind)));
                }
            }
            for (a, b) in &g.covers {
                for end in [a, b] {
                    if !known.contains(end.as_str()) {
                        return Err(Error::Catalog(format!("{}: unknown element {end:?} in covers", g.kind)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, kind: GadgetKind) -> &GadgetTemplate {
        self.gadgets.iter().find(|g| g.kind == kind).expect("validated catalog has every kind")
    }

    pub fn size(&self, kind: GadgetKind) -> usize {
        self.get(kind).size()
    }

    pub fn matches_nominal(&self) -> bool {
        self.gadgets.iter().all(|g| g.size() == g.kind.nominal_size())
    }

    /// Elements the disjoint-union construction adds with this catalog's sizes.
    pub fn added_element_count(&self, variant: Variant, n_p: usize, c_p: usize, c_q: usize) -> usize {
        let (comparability, link) = self.coefficients(variant);
        comparability * (c_p + c_q) + link * n_p
    }

    /// `(coefficient of c_P and c_Q, coefficient of n_P)`.
    pub fn coefficients(&self, variant: Variant) -> (usize, usize) {
        match variant {
            Variant::Original => (self.size(GadgetKind::GExt), 2 * self.size(GadgetKind::GExt)),
            Variant::Reduced => (self.size(GadgetKind::G), self.size(GadgetKind::Equi)),
        }
    }

    /// SHA-256 of the canonical form: kinds in order, covers sorted.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.gadgets.sort_by_key(|g| g.kind);
        for g in &mut canonical.gadgets {
            g.covers.sort();
        }
        let bytes = serde_json::to_vec(&canonical).expect("catalog serializes");
        Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Elements added by the disjoint-union construction at the nominal sizes:
/// `15c_P + 15c_Q + 30n_P` (original) or `7c_P + 7c_Q + 4n_P` (reduced).
pub fn added_element_count(variant: Variant, n_p: usize, c_p: usize, c_q: usize) -> usize {
    match variant {
        Variant::Original => 15 * c_p + 15 * c_q + 30 * n_p,
        Variant::Reduced => 7 * c_p + 7 * c_q + 4 * n_p,
    }
}
