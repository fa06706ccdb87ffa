use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a group: {axiom} fails at {witness}")]
    NotAGroup { axiom: String, witness: String },

    #[error("not a homomorphism: fails on pair {0}")]
    NotAHomomorphism(String),

    #[error("operands belong to different groups: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("not a subgroup of the given group")]
    NotASubgroup,

    #[error("not a category: {axiom} fails at {witness}")]
    NotACategory { axiom: String, witness: String },

    #[error("not a groupoid: morphism {0} has no inverse")]
    NotAGroupoid(String),

    #[error("group action is not free at object {0}")]
    ActionNotFree(String),

    #[error("size budget exceeded: {need} needed, budget {budget}")]
    SizeBudgetExceeded { need: usize, budget: usize },

    #[error("not an injective map: {0}")]
    NotInjective(String),

    #[error("expression shapes do not match: {0}")]
    ShapeMismatch(String),

    #[error("domain shape mismatch: {0}")]
    DomainShapeMismatch(String),

    #[error("the two characterizations disagree: {0}")]
    MismatchBetweenCharacterizations(String),

    #[error("isomorphism check failed: {0}")]
    IsoFailure(String),

    #[error("equivalence check failed: {0}")]
    EquivalenceFailure(String),

    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
