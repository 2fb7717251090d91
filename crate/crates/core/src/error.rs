use thiserror::Error;

use crate::fincat::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("relation is not a partial order: {0}")]
    RelationNotPartialOrder(String),
    #[error("table is not a monoid: {0}")]
    NotAMonoid(String),
    #[error("object {object} out of range (category has {n_objects} objects)")]
    ObjectOutOfRange { object: usize, n_objects: usize },
    #[error("invalid category:\n{0}")]
    InvalidCategory(ValidationReport),
    #[error("data is not a functor:\n{0}")]
    NotAFunctor(ValidationReport),
    #[error("invalid natural system:\n{0}")]
    InvalidNaturalSystem(ValidationReport),
    #[error("invalid adjunction:\n{0}")]
    InvalidAdjunction(ValidationReport),
    #[error("invalid diagram:\n{0}")]
    InvalidDiagram(ValidationReport),
    #[error("element {element} is not in T({object}) (size {size})")]
    ElementNotInT { object: usize, element: usize, size: usize },
    #[error("degree {degree} is beyond the trusted degree {trusted}")]
    DegreeBeyondTrusted { degree: usize, trusted: isize },
    #[error("differentials do not square to zero: {0}")]
    NotAComplex(String),
    #[error("map is not a cochain map: {0}")]
    NotAChainMap(String),
    #[error("total rank {needed} exceeds the budget {budget}")]
    RankOverflowBudget { needed: usize, budget: usize },
    #[error("operation needs field coefficients, got {0}")]
    NotAField(crate::homalg::Ring),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}
