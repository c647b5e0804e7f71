//! Strict ray classes modulo an integral ideal. With no real places the
//! positivity condition is empty, so strict and ordinary ray classes agree.

use alloc::vec::Vec;

use super::field::{PrimeIdealRec, QuadField};
use super::ideal::{Ideal, QuadElement};
use crate::rational::Rational;
use crate::{Error, Result};

/// A modulus `𝔣` with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayModulus {
    ideal: Ideal,
    factors: Vec<(PrimeIdealRec, u32)>,
}

impl RayModulus {
    pub fn new(k: &QuadField, ideal: Ideal) -> Result<Self> {
        Ok(RayModulus {
            ideal,
            factors: k.factorize(&ideal)?,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn factors(&self) -> &[(PrimeIdealRec, u32)] {
        &self.factors
    }
}

/// Exponent of the prime `p` in the integral ideal `a`.
pub fn ord_p(k: &QuadField, p: &Ideal, a: &Ideal) -> u32 {
    let mut a = *a;
    let mut e = 0;
    while k.divides(p, &a) {
        a = k.exact_div(&a, p).expect("divisibility was checked");
        e += 1;
    }
    e
}

/// `ord_p(e)` for a nonzero element; `None` for zero.
pub fn ord_p_element(k: &QuadField, p: &Ideal, e: QuadElement) -> Option<u32> {
    k.principal(e).ok().map(|i| ord_p(k, p, &i))
}

fn coprime(k: &QuadField, a: &Ideal, f: &Ideal) -> bool {
    k.gcd_ideal(a, f).is_unit()
}

/// Whether `a` and `b` lie in the same strict ray class modulo `f`, i.e.
/// `a = γ·b` for some `γ` with `ord_p(γ − 1) ≥ ord_p(f)` at every `p | f`.
pub fn same_strict_ray_class(k: &QuadField, a: &Ideal, b: &Ideal, f: &RayModulus) -> Result<bool> {
    if !coprime(k, a, &f.ideal) || !coprime(k, b, &f.ideal) {
        return Err(Error::NotCoprimeToModulus);
    }
    let ab = k.multiply(a, &k.conjugate(b))?;
    let Some(delta) = k.is_principal_with_generator(&ab) else {
        return Ok(false);
    };
    // γ = u·δ/N(b), so γ − 1 = (u·δ − N(b))/N(b)
    let nb = b.norm() as i64;
    let nb_ideal = Ideal::rational(nb);
    for &u in k.units() {
        let num = k.ring().sub(k.mul(u, delta), QuadElement::rational(nb));
        if num.is_zero() {
            return Ok(true);
        }
        let num_ideal = k.principal(num)?;
        let ok = f.factors.iter().all(|(rec, e)| {
            let top = ord_p(k, &rec.ideal, &num_ideal) as i64;
            let bottom = ord_p(k, &rec.ideal, &nb_ideal) as i64;
            top - bottom >= *e as i64
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Φ(𝔣) = h_𝔣/h`: the Euler function of `𝔣` divided by the number of unit
/// classes modulo `𝔣`.
pub fn ray_phi(k: &QuadField, f: &RayModulus) -> Rational {
    let mut phi = Rational::from_integer(f.ideal.norm() as i128);
    for (rec, _) in &f.factors {
        let np = rec.norm as i128;
        phi *= Rational::new(np - 1, np);
    }
    let w = k.unit_count() as i128;
    let one_mod_f = k
        .units()
        .iter()
        .filter(|&&u| f.ideal.contains(k.ring().sub(u, QuadElement::ONE)))
        .count() as i128;
    phi / Rational::new(w, one_mod_f)
}
