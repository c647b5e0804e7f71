//! Combinatorics of irreducible elements in rings of integers.
//!
//! The crate splits into a general combinatorial layer and an exact
//! arithmetic backend for imaginary quadratic fields:
//!
//! * [`group`]: finite abelian groups in invariant-factor form and the fixed
//!   ordering of their elements that plays the role of an ordering of ideal
//!   classes.
//! * [`types`]: types (class-count tuples), principality, the subtype order,
//!   irreducible and maximal types, and the Davenport constant.
//! * [`extremal`]: the polynomial built from the maximal irreducible types,
//!   its maximum `M` over the simplex, and the main term for the maximal
//!   number of irreducible divisors.
//! * [`progression`]: exact constants `C'` and `L` governing irreducibles in
//!   an arithmetic progression.
//! * [`quadfield`]: class groups from reduced binary quadratic forms, ideals
//!   in Hermite normal form, prime splitting, ray classes and exact counting
//!   oracles.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

mod error;
pub mod extremal;
pub mod group;
pub mod progression;
pub mod quadfield;
pub mod rational;
pub mod types;

pub use error::{Error, Result};
pub use extremal::{MaximizationResult, PolynomialP, SimplexPoint};
pub use group::{ClassOrdering, FiniteAbelianGroup, GroupElement};
pub use progression::{ProgressionConstants, ProgressionInstance};
pub use quadfield::{Ideal, PrimeIdealRec, QuadElement, QuadField, RayModulus};
pub use rational::Rational;
pub use types::{DavenportResult, TypeSet, TypeSetKind, TypeVec};
