use thiserror::Error;

/// Errors raised by the group, cube and homology layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group of order {order} exceeds the order cap {cap}")]
    ClosureCapExceeded { order: usize, cap: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("subgroups live in different parent groups")]
    ParentMismatch,

    #[error("neither subgroup normalizes the other")]
    NotPermutable,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("codomain of the first map does not match the domain of the second")]
    CompositionMismatch,

    #[error("square does not commute")]
    NonCommutingSquare,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("cube is not functorial: {0}")]
    NotFunctorial(String),

    #[error("not an extension: {0}")]
    NotAnExtension(String),

    #[error("not surjective: {0}")]
    NotSurjective(String),

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimCapExceeded { dim: usize, cap: usize },

    #[error("radical is not functorial along {0}")]
    RadicalNotFunctorial(String),

    #[error("expected an iota-shaped cube: vertex {0} is nontrivial")]
    NotIotaShaped(String),

    #[error("independent computations disagree: {0}")]
    AgreementFailure(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("computation needs {needed} matrix entries, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("integer overflow in fixed-width arithmetic")]
    OverflowDetected,

    #[error("group is not abelian")]
    NotAbelian,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Resource-limit errors, as opposed to malformed input or logic failures.
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. }
                | Error::DimCapExceeded { .. }
                | Error::CapExceeded { .. }
                | Error::BudgetExceeded { .. }
                | Error::OverflowDetected
        )
    }
}
