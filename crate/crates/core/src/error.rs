use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order has no elements")]
    EmptyOrder,
    #[error("bottom and top coincide")]
    TrivialOrder,
    #[error("relation is not antisymmetric: {0} <= {1} <= {0}")]
    CycleDetected(String, String),
    #[error("order has no unique {0}")]
    NoBounds(&'static str),
    #[error("duplicate element identifier {0:?}")]
    DuplicateElement(String),
    #[error("unknown element identifier {0:?}")]
    UnknownElement(String),
    #[error("map is not isotone: {0} <= {1} but images are not comparable that way")]
    NotIsotone(String, String),
    #[error("map does not preserve {0}")]
    NotBoundsPreserving(&'static str),
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("size {size} exceeds configured limit {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("not a lattice: {0} and {1} have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("not a congruence: {0}")]
    NotACongruence(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("induced map is not well defined: {0}")]
    WellDefinednessViolation(String),
    #[error("{0} is a bound of the lattice")]
    BoundElement(String),
    #[error("missing label {0:?}")]
    MissingLabels(String),
    #[error("map is not 0-separating: {0} is sent to 0")]
    NotZeroSeparating(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("generated name {0:?} collides with an existing element")]
    NameCollision(String),
    #[error("gadget catalog: {0}")]
    Catalog(String),
    #[error("contract clause {clause} failed: {detail}")]
    ContractViolation { clause: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
