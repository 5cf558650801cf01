use thiserror::Error as ThisError;

use crate::category::SetObj;
use crate::derived::EquivLaw;
use crate::value::Value;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("composition mismatch: codomain {found} does not match domain {expected}")]
    CompositionMismatch { expected: SetObj, found: SetObj },
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("not an element: {0}")]
    NotAnElement(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{witness} is not sent into the fibre")]
    NotInFibre { witness: Value },
    #[error("not injective: {first} and {second} have the same image")]
    NotInjective { first: Value, second: Value },
    #[error("not surjective: {missing} has an empty fibre")]
    NotSurjective { missing: Value },
    #[error("index {index} is outside the natural-number bound {bound}")]
    BoundExceeded { index: u64, bound: u64 },
    #[error("unsupported infinite construction: {0}")]
    UnsupportedInfinite(String),
    #[error("not an equivalence relation: {law} fails at {witness}")]
    NotEquivalence { law: EquivLaw, witness: String },
    #[error("instance budget exceeded: {count} work units exceed the ceiling of {ceiling}")]
    BudgetExceeded { count: u64, ceiling: u64 },
    #[error("mutation {mutation} does not apply to {construction}")]
    InapplicableMutation { mutation: String, construction: String },
    #[error("{value} is not in the domain")]
    NotInDomain { value: Value },
    #[error("{value} is not in the codomain {cod}")]
    NotInCodomain { value: Value, cod: SetObj },
    #[error("mapping is not total: {missing} has no image")]
    NotTotal { missing: Value },
    #[error("duplicate entry for {key}")]
    DuplicateEntry { key: Value },
    #[error("no mediating function exists: {0}")]
    NoMediator(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}
