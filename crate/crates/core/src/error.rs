use thiserror::Error;

/// Errors raised by the rewriting engine and its instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArsError {
    #[error("paths do not compose: first path ends at `{left}`, second starts at `{right}`")]
    NonComposable { left: String, right: String },

    #[error("invalid tile application at index {index}: {reason}")]
    InvalidApplication { index: usize, reason: String },

    #[error("standardisation trace is broken at application {position}")]
    BrokenChain { position: usize },

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("`{redex}` is not a redex of `{term}`")]
    NotARedex { term: String, redex: String },

    #[error("residuals of a redex along itself are undefined (`{0}`)")]
    SamePosition(String),

    #[error("invalid occurrence: {0}")]
    InvalidOccurrence(String),

    #[error("tile does not commute: `{source_end}` differs from `{target_end}`")]
    TileNotCofinal { source_end: String, target_end: String },

    #[error("invalid tile: {0}")]
    InvalidTile(String),

    #[error("invalid ancestor function: {0}")]
    InvalidAncestor(String),

    #[error("reversible closure exceeded {budget} paths")]
    ClosureBudgetExceeded { budget: usize },

    #[error("standardisation fuel exhausted after {fuel} tile applications")]
    FuelExhausted { fuel: usize },

    #[error("path is not standard")]
    NotStandard,

    #[error("path enumeration exceeded {budget} paths")]
    EnumerationBudgetExceeded { budget: usize },

    #[error("factorisation check failed: {0}")]
    FactorisationCheckFailed(String),

    #[error("path does not factor through any cone branch")]
    NoFactorisation,

    #[error("path factors through several cone branches or residues: {0}")]
    MultipleFactorisations(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("rule `{rule}` is not left-linear (variable `{var}` repeated)")]
    NonLeftLinear { rule: String, var: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("invalid rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },
}

pub type Result<T, E = ArsError> = std::result::Result<T, E>;
