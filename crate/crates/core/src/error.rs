use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NomError {
    #[error(
        "not enough probe atoms: need {needed} outside the candidate support, have {available}"
    )]
    InsufficientProbes { needed: usize, available: usize },
    #[error("operation requires an equivariant set or relation (empty pinned support)")]
    NotEquivariant,
    #[error("pinned support {requested} does not contain the current pinned support {current}")]
    NotARefinement { current: String, requested: String },
    #[error("codomain of the first relation differs from the domain of the second")]
    CodomainMismatch,
    #[error("property is only defined for endo-relations (domain equal to codomain)")]
    DomainMismatch,
    #[error("value {value} is not a member of {side}")]
    NotAMember { value: String, side: &'static str },
    #[error("relation `inc` needs an explicit size bound")]
    BoundRequired,
    #[error("rho must have domain equal to the codomain of R and image inside R->(S)")]
    BadRho,
    #[error("S is not a subset of the domain of R")]
    BadS,
    #[error("relation is not a total, well-defined map")]
    NotAFunction,
    #[error("invalid binding operator: {0}")]
    InvalidBinder(String),
    #[error("set is not an element of the requested presheaf level")]
    NotALevelElement,
    #[error("presheaf levels do not form a chain")]
    NotAChain,
    #[error("descriptor count {count} exceeds the size guard {limit}")]
    SizeGuard { count: usize, limit: usize },
    #[error("set-valued assignment is not equivariant: {0}")]
    NotEquivariantAssignment(String),
}

pub type Result<T> = std::result::Result<T, NomError>;
