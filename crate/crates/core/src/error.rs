use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group order exceeds the bound of {bound} elements")]
    OrderBoundExceeded { bound: usize },

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("subgroup of order {order} is not a {prime}-group")]
    NotPSubgroup { order: usize, prime: u32 },

    #[error("object {object} is not {prime}-centric")]
    NotCentric { object: String, prime: u32 },

    #[error("basis in degree {degree} would hold {count} elements, budget is {budget}")]
    BudgetExceeded {
        degree: usize,
        count: u128,
        budget: usize,
    },

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("collection is not closed upward: {0}")]
    UpwardClosureViolated(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("point {point} is outside 1..={degree}")]
    OutOfRangePoint { point: usize, degree: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
