//! Exact counts of irreducible `π ≡ α (mod 𝔪)` with `N(π) ≤ x`, up to
//! associates, by two independent routes: a direct element scan and a walk
//! over the ideals `𝔧 = (π)𝔤⁻¹`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::arith::isqrt;
use super::field::{PrimeIdealRec, QuadField};
use super::ideal::{Ideal, QuadElement};
use super::ray::{same_strict_ray_class, RayModulus};
use crate::types::{is_irreducible_type, is_weakly_coprime_type, TypeVec};
use crate::{Error, Result};

/// Largest norm bound accepted by the counting scans.
pub const SCAN_LIMIT: u64 = 10_000_000;

fn check_scan(x: u64) -> Result<()> {
    if x > SCAN_LIMIT {
        return Err(Error::ScanTooLarge { x, limit: SCAN_LIMIT });
    }
    Ok(())
}

/// Calls `f` on every nonzero `x + yω` with norm at most `bound`.
pub fn for_each_element_up_to(k: &QuadField, bound: u64, mut f: impl FnMut(QuadElement, u64)) {
    let ring = k.ring();
    let (t, n) = (ring.trace as i128, ring.norm as i128);
    let disc = -(k.disc() as i128);
    let bound = bound as i128;
    // N(x + yω) = (x + ty/2)² + |Δ|y²/4
    let ymax = isqrt((4 * bound / disc) as u128) as i128;
    for y in -ymax..=ymax {
        let rest = 4 * bound - disc * y * y;
        if rest < 0 {
            continue;
        }
        // (2x + ty)² ≤ rest
        let r = isqrt(rest as u128) as i128;
        let lo = (-r - t * y).div_euclid(2) - 1;
        let hi = (r - t * y).div_euclid(2) + 1;
        for x in lo..=hi {
            let norm = x * x + t * x * y + n * y * y;
            if norm == 0 || norm > bound {
                continue;
            }
            f(QuadElement::new(x as i64, y as i64), norm as u64);
        }
    }
}

/// Whether `e` is the lexicographically least member of its unit orbit.
fn is_orbit_minimum(k: &QuadField, e: QuadElement) -> bool {
    k.units().iter().all(|&u| k.mul(u, e) >= e)
}

/// Direct scan over lattice points of norm at most `x`.
pub fn count_progression_elements(k: &QuadField, x: u64, m: &Ideal, alpha: QuadElement) -> Result<u64> {
    check_scan(x)?;
    if alpha.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let ord = k.ordering();
    let mut count = 0u64;
    let mut failure = None;
    for_each_element_up_to(k, x, |pi, norm| {
        if failure.is_some() || norm == 1 || !is_orbit_minimum(k, pi) {
            return;
        }
        let congruent = k
            .units()
            .iter()
            .any(|&u| m.contains(k.ring().sub(k.mul(u, pi), alpha)));
        if !congruent {
            return;
        }
        let typ = match k.principal(pi).and_then(|i| k.ideal_type(&i)) {
            Ok(t) => t,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        if is_irreducible_type(ord, &typ) {
            count += 1;
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Irreducible,
    Open,
    Dead,
}

/// Walk over `𝔧` coprime to `𝔪𝔤⁻¹` with `𝔤𝔧` of irreducible type, keeping
/// those in the strict ray class of `(α)𝔤⁻¹`.
pub fn count_progression_ideals(k: &QuadField, x: u64, m: &Ideal, alpha: QuadElement) -> Result<u64> {
    check_scan(x)?;
    let alpha_ideal = k.principal(alpha)?;
    let g = k.gcd_ideal(&alpha_ideal, m);
    let ord = k.ordering();
    let tau_prime = k.ideal_type(&g)?;
    if !is_weakly_coprime_type(ord, &tau_prime) {
        return count_progression_elements(k, x, m, alpha);
    }
    let norm_g = g.norm();
    if norm_g > x {
        return Ok(0);
    }
    let bound = x / norm_g;
    let f = RayModulus::new(k, k.exact_div(m, &g)?)?;
    let j0 = k.exact_div(&alpha_ideal, &g)?;
    let primes: Vec<PrimeIdealRec> = k
        .enumerate_prime_ideals(bound)
        .into_iter()
        .filter(|r| !k.divides(&r.ideal, f.ideal()))
        .collect();

    let mut walk = Walk {
        k,
        f: &f,
        j0,
        primes: &primes,
        bound,
        memo: BTreeMap::new(),
        count: 0,
    };
    walk.descend(0, Ideal::UNIT, 1, tau_prime)?;
    Ok(walk.count)
}

struct Walk<'a> {
    k: &'a QuadField,
    f: &'a RayModulus,
    j0: Ideal,
    primes: &'a [PrimeIdealRec],
    bound: u64,
    memo: BTreeMap<TypeVec, Status>,
    count: u64,
}

impl Walk<'_> {
    fn status(&mut self, t: &TypeVec) -> Status {
        if let Some(&s) = self.memo.get(t) {
            return s;
        }
        let ord = self.k.ordering();
        let s = if is_irreducible_type(ord, t) {
            Status::Irreducible
        } else if is_weakly_coprime_type(ord, t) {
            Status::Open
        } else {
            Status::Dead
        };
        self.memo.insert(t.clone(), s);
        s
    }

    /// Extends `j` by primes with index at least `start`.
    fn descend(&mut self, start: usize, j: Ideal, norm: u64, t: TypeVec) -> Result<()> {
        for i in start..self.primes.len() {
            let p = &self.primes[i];
            let Some(next_norm) = norm.checked_mul(p.norm).filter(|&n| n <= self.bound) else {
                break;
            };
            let mut next_t = t.clone();
            next_t.increment(p.class_index);
            match self.status(&next_t) {
                Status::Dead => continue,
                Status::Irreducible => {
                    let next = self.k.multiply(&j, &p.ideal)?;
                    if same_strict_ray_class(self.k, &next, &self.j0, self.f)? {
                        self.count += 1;
                    }
                }
                Status::Open => {
                    let next = self.k.multiply(&j, &p.ideal)?;
                    self.descend(i, next, next_norm, next_t)?;
                }
            }
        }
        Ok(())
    }
}
