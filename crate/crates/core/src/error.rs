use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group enumeration exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("unknown catalog group `{0}`")]
    UnknownCatalogName(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("subgroup does not belong to this group")]
    SubgroupNotInParent,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("group ring element does not belong to this group ring")]
    GroupMismatch,
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: i64, b: i64 },
    #[error("element has order {0}; need order at least 2")]
    TrivialOrder(usize),
    #[error("element is not a central unit")]
    NotCentralUnit,
    #[error("lattice of {size} spanning vectors exceeds the cap of {cap}")]
    LatticeCapExceeded { size: usize, cap: usize },
    #[error("integer overflow in exact lattice arithmetic")]
    ArithmeticOverflow,
    #[error("group is finite; use the finite-group pipeline")]
    NotInfinite,
    #[error("invalid metacyclic action: {0}")]
    NotMetacyclicAction(String),
    #[error("group is abelian: {0}")]
    Abelian(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("missing structural flags: {0}")]
    MissingFlags(String),
    #[error("r^{k} is not 1 modulo {m}")]
    IncompatibleExponent { m: u64, k: u64 },
    #[error("group spec: {0}")]
    Spec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
