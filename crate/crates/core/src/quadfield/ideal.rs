//! Elements and ideals of an imaginary quadratic ring of integers `Z[ω]`.
//!
//! Ideals are lattices `aZ + (b + cω)Z` in Hermite normal form. All lattice
//! arithmetic runs in `i128`.

use super::arith::{ext_gcd, gcd_i128};
use crate::{Error, Result};

/// Norms above this are refused.
pub const NORM_CEILING: u128 = 1 << 62;

/// The multiplication table of `Z[ω]`: `ω² = trace·ω − norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring {
    /// `Tr(ω)`: 1 when `d ≡ 1 (mod 4)`, else 0.
    pub trace: i64,
    /// `N(ω)`: `(1 − d)/4` or `−d`.
    pub norm: i64,
}

/// `x + y·ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "ElementRepr", try_from = "ElementRepr"))]
pub struct QuadElement {
    pub x: i64,
    pub y: i64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct ElementRepr {
    x: i64,
    y: i64,
    basis: alloc::string::String,
}

#[cfg(feature = "serde")]
impl From<QuadElement> for ElementRepr {
    fn from(e: QuadElement) -> Self {
        ElementRepr {
            x: e.x,
            y: e.y,
            basis: "omega".into(),
        }
    }
}

#[cfg(feature = "serde")]
impl TryFrom<ElementRepr> for QuadElement {
    type Error = alloc::string::String;
    fn try_from(r: ElementRepr) -> core::result::Result<Self, Self::Error> {
        if r.basis != "omega" {
            return Err(alloc::format!("unsupported basis {:?}", r.basis));
        }
        Ok(QuadElement { x: r.x, y: r.y })
    }
}

impl QuadElement {
    pub const ZERO: QuadElement = QuadElement { x: 0, y: 0 };
    pub const ONE: QuadElement = QuadElement { x: 1, y: 0 };

    pub fn new(x: i64, y: i64) -> Self {
        QuadElement { x, y }
    }

    pub fn rational(n: i64) -> Self {
        QuadElement { x: n, y: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl Ring {
    pub fn element_norm(&self, e: QuadElement) -> u128 {
        let (x, y) = (e.x as i128, e.y as i128);
        (x * x + self.trace as i128 * x * y + self.norm as i128 * y * y) as u128
    }

    pub fn mul(&self, a: QuadElement, b: QuadElement) -> QuadElement {
        let (x, y) = mul_coords(*self, (a.x as i128, a.y as i128), (b.x as i128, b.y as i128));
        QuadElement {
            x: x as i64,
            y: y as i64,
        }
    }

    pub fn sub(&self, a: QuadElement, b: QuadElement) -> QuadElement {
        QuadElement {
            x: a.x - b.x,
            y: a.y - b.y,
        }
    }

    pub fn conjugate(&self, e: QuadElement) -> QuadElement {
        QuadElement {
            x: e.x + e.y * self.trace,
            y: -e.y,
        }
    }

    pub fn hnf(&self, gens: &[(i128, i128)]) -> Result<Ideal> {
        let (a, b, c) = lattice_hnf(gens).ok_or(Error::ZeroIdeal)?;
        let ideal = Ideal {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        };
        if (a as u128) * (c as u128) > NORM_CEILING {
            return Err(Error::FactorizationOverflow(a as u128 * c as u128));
        }
        Ok(ideal)
    }

    /// The principal ideal `(e)`.
    pub fn principal(&self, e: QuadElement) -> Result<Ideal> {
        if e.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let v = (e.x as i128, e.y as i128);
        let w = mul_coords(*self, (0, 1), v);
        self.hnf(&[v, w])
    }

    pub fn multiply(&self, i: &Ideal, j: &Ideal) -> Result<Ideal> {
        let mut gens = [(0i128, 0i128); 4];
        let mut k = 0;
        for u in i.basis() {
            for v in j.basis() {
                gens[k] = mul_coords(*self, u, v);
                k += 1;
            }
        }
        self.hnf(&gens)
    }

    pub fn conjugate_ideal(&self, i: &Ideal) -> Ideal {
        let (a, b, c) = (i.a as i128, i.b as i128, i.c as i128);
        self.hnf(&[(a, 0), (b + c * self.trace as i128, -c)])
            .expect("conjugate of a nonzero ideal")
    }

    /// `i + j`, the gcd of the two ideals.
    pub fn gcd(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let [u1, u2] = i.basis();
        let [v1, v2] = j.basis();
        self.hnf(&[u1, u2, v1, v2]).expect("sum of nonzero ideals")
    }

    /// Whether `i` divides `j`, i.e. `j ⊆ i`.
    pub fn divides(&self, i: &Ideal, j: &Ideal) -> bool {
        j.basis().iter().all(|&v| i.contains_coords(v))
    }

    /// `j / i` for `i | j`, computed as `j·ī / N(i)`.
    pub fn exact_div(&self, j: &Ideal, i: &Ideal) -> Result<Ideal> {
        if !self.divides(i, j) {
            return Err(Error::DomainError(alloc::format!("{i:?} does not divide {j:?}")));
        }
        let prod = self.multiply(j, &self.conjugate_ideal(i))?;
        let n = i.norm() as i64;
        debug_assert!(prod.a % n == 0 && prod.b % n == 0 && prod.c % n == 0);
        Ok(Ideal {
            a: prod.a / n,
            b: prod.b / n,
            c: prod.c / n,
        })
    }

    /// Whether the lattice is closed under multiplication by `ω`.
    pub fn is_ideal(&self, i: &Ideal) -> bool {
        i.basis()
            .iter()
            .all(|&v| i.contains_coords(mul_coords(*self, (0, 1), v)))
    }
}

pub(crate) fn mul_coords(ring: Ring, a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    let (t, n) = (ring.trace as i128, ring.norm as i128);
    let yy = a.1 * b.1;
    (a.0 * b.0 - yy * n, a.0 * b.1 + a.1 * b.0 + yy * t)
}

/// Hermite normal form `(a, b, c)` of the lattice spanned by `gens`, or
/// `None` if the span is not of full rank.
pub fn lattice_hnf(gens: &[(i128, i128)]) -> Option<(i128, i128, i128)> {
    // `ax` generates the lattice ∩ (Z, 0); `v` carries the gcd of the y's.
    let mut ax: i128 = 0;
    let mut v = (0i128, 0i128);
    for &(x, y) in gens {
        if y == 0 {
            ax = gcd_i128(ax, x);
        } else if v.1 == 0 {
            ax = gcd_i128(ax, v.0);
            v = (x, y);
        } else {
            let (g, s, t) = ext_gcd(v.1, y);
            let other = (y / g) * v.0 - (v.1 / g) * x;
            v = (s * v.0 + t * x, g);
            ax = gcd_i128(ax, other);
        }
        if ax != 0 {
            v.0 = v.0.rem_euclid(ax);
        }
    }
    if ax == 0 || v.1 == 0 {
        return None;
    }
    if v.1 < 0 {
        v = (-v.0, -v.1);
    }
    Some((ax, v.0.rem_euclid(ax), v.1))
}

/// `aZ + (b + cω)Z` with `0 ≤ b < a`, `c | a`, `c | b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Ideal {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Ideal {
    pub const UNIT: Ideal = Ideal { a: 1, b: 0, c: 1 };

    pub fn norm(&self) -> u64 {
        (self.a as u64) * (self.c as u64)
    }

    pub fn is_unit(&self) -> bool {
        *self == Ideal::UNIT
    }

    pub fn basis(&self) -> [(i128, i128); 2] {
        [(self.a as i128, 0), (self.b as i128, self.c as i128)]
    }

    fn contains_coords(&self, (x, y): (i128, i128)) -> bool {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        y % c == 0 && (x - b * (y / c)) % a == 0
    }

    pub fn contains(&self, e: QuadElement) -> bool {
        self.contains_coords((e.x as i128, e.y as i128))
    }

    /// The ideal `(n)` for a positive rational integer `n`.
    pub fn rational(n: i64) -> Ideal {
        Ideal { a: n, b: 0, c: n }
    }
}
