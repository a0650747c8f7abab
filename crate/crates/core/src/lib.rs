//! Exact computations with D-modules attached to a polynomial `f`:
//! annihilators of `f^s`, Bernstein-Sato polynomials (global, local and
//! generalized), log-canonical thresholds, characteristic varieties and
//! logarithmic derivations.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod annihilator;
pub mod apply;
pub mod bfunction;
pub mod charvariety;
pub mod element;
pub mod error;
pub mod groebner;
pub mod int;
pub mod logarithmic;
pub mod monomial;
pub mod multiplier;
mod product;
pub mod rational;
pub mod signature;
pub mod univariate;

pub use element::{Algebra, Element};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder, TieBreak};
pub use rational::Rational;
pub use groebner::{GroebnerBasis, LeftIdeal, WeightVector};
pub use signature::{Role, Signature};
pub use univariate::{Root, UnivariatePoly};
