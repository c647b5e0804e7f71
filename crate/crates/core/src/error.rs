use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::extremal::MaximizationResult;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid invariant factors {0:?}: need d_i >= 2 and d_i | d_(i+1)")]
    InvalidInvariants(Vec<u64>),
    #[error("group element shape does not match the group")]
    GroupMismatch,
    #[error("class ordering is not a bijection onto the group")]
    InvalidOrdering,
    #[error("type has a nonzero principal subtype")]
    HasPrincipalSubtype,
    #[error("empty type set")]
    EmptyTypeSet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simplex maximization did not reach stationarity (best M = {}, residual {:e})", .0.m, .0.kkt_residual)]
    NonConvergence(Box<MaximizationResult>),
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("{0} is not squarefree")]
    NotSquarefree(i64),
    #[error("{0} is not negative; only imaginary quadratic fields are supported")]
    NotImaginary(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("the zero ideal is not allowed")]
    ZeroIdeal,
    #[error("norm {0} exceeds the 2^62 factorization ceiling")]
    FactorizationOverflow(u128),
    #[error("divisor lattice has {0} nodes, above the 10^7 ceiling")]
    DivisorExplosion(u128),
    #[error("ideal is not coprime to the modulus")]
    NotCoprimeToModulus,
    #[error("scan bound {x} exceeds the limit {limit}")]
    ScanTooLarge { x: u64, limit: u64 },
}
