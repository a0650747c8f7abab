use alloc::string::String;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("operands live over different algebra signatures")]
    SignatureMismatch,
    #[error("operator contains variables outside the Weyl algebra")]
    NotWeyl,
    #[error("operation requires a commutative signature")]
    NonCommutative,
    #[error("order is not a term order; route the computation through the homogenized algebra")]
    NonTermOrder,
    #[error("weight vector violates u + v >= 0 on pair ({0}, {1})")]
    WeightConstraint(String, String),
    #[error("retained variables do not form a subalgebra")]
    NotSubalgebra,
    #[error("invalid signature: {0}")]
    InvalidSignature(&'static str),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("at most {0} variables are supported")]
    TooManyVariables(usize),
    #[error("input polynomial is constant")]
    ConstantInput,
    #[error("degree cap exceeded ({0} iterations)")]
    DegreeCap(usize),
    #[error("polynomial has an irreducible factor of degree >= 2 over Q")]
    NonRationalFactor,
    #[error("input polynomial is not reduced")]
    NonReduced,
    #[error("precondition violated: integral root {root} of b_f is below {gamma}")]
    IntegralRootBelow { root: Rational, gamma: Rational },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
