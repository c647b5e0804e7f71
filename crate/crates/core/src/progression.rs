//! Exact constants for irreducibles in an arithmetic progression.
//!
//! With `τ'` the type of the gcd ideal `𝔤 = (α, 𝔪)`, the count of irreducible
//! `π ≡ α (mod 𝔪)` of norm at most `x` behaves like
//! `C'·x/log x·(log log x)^{L-1}` where
//!
//! ```text
//! C' = 1/(N(𝔤)·Φ(𝔪𝔤⁻¹)) · L/h^L · Σ_τ Π_j 1/(τ-τ')_j!
//! ```
//!
//! the sum running over the irreducible types maximal with respect to `τ'`.

use alloc::format;

use crate::group::ClassOrdering;
use crate::rational::Rational;
use crate::types::{types_maximal_wrt, TypeSet, TypeVec};
use crate::{Error, Result};

pub use crate::types::is_weakly_coprime_type;

#[derive(Debug, Clone)]
pub struct ProgressionInstance {
    pub ordering: ClassOrdering,
    /// Type of the gcd ideal `𝔤`.
    pub tau_prime: TypeVec,
    /// `N(𝔤)`.
    pub norm_g: u64,
    /// `Φ(𝔪𝔤⁻¹)`.
    pub phi: Rational,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProgressionConstants {
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub l: u32,
    #[cfg_attr(feature = "serde", serde(with = "crate::rational::serde_num_den"))]
    pub type_sum: Rational,
    #[cfg_attr(feature = "serde", serde(rename = "C_prime", with = "crate::rational::serde_num_den"))]
    pub c_prime: Rational,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub maximal_types: TypeSet,
}

pub fn progression_constants(inst: &ProgressionInstance) -> Result<ProgressionConstants> {
    if inst.norm_g == 0 {
        return Err(Error::DomainError("N(g) must be positive".into()));
    }
    if *inst.phi.numer() <= 0 {
        return Err(Error::DomainError(format!("phi must be positive, got {}", inst.phi)));
    }
    let (maximal, l) = types_maximal_wrt(&inst.ordering, &inst.tau_prime)?;
    let type_sum: Rational = maximal
        .iter()
        .map(|t| {
            t.checked_sub(&inst.tau_prime)
                .expect("maximal types contain tau'")
                .inv_factorial_weight()
        })
        .sum();
    let h = inst.ordering.h() as i128;
    let h_pow = (0..l).fold(1i128, |acc, _| acc * h);
    let c_prime = Rational::from_integer(1) / (Rational::from_integer(inst.norm_g as i128) * inst.phi)
        * Rational::new(l as i128, h_pow)
        * type_sum;
    Ok(ProgressionConstants {
        l,
        type_sum,
        c_prime,
        maximal_types: maximal,
    })
}

/// `C'·(x/log x)·(log log x)^{L-1}` for `x > e^e`.
pub fn predicted_progression_count(c: &ProgressionConstants, x: f64) -> Result<f64> {
    predicted_count(crate::rational::to_f64(&c.c_prime), c.l, x)
}

pub fn predicted_count(c_prime: f64, l: u32, x: f64) -> Result<f64> {
    if !(x > libm::exp(core::f64::consts::E)) {
        return Err(Error::DomainError(format!("predicted count needs x > e^e, got {x}")));
    }
    let lx = libm::log(x);
    let loglog = if l > 1 { libm::pow(libm::log(lx), (l - 1) as f64) } else { 1.0 };
    Ok(c_prime * x / lx * loglog)
}
