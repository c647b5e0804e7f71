//! Imaginary quadratic fields: class group, prime splitting, factorization,
//! principality and the count `ν` of nonassociate irreducible divisors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::arith::{factor, is_prime, is_squarefree, kronecker, pow_mod, primes_up_to, sqrt_mod};
use super::form::{reduced_forms, Form};
use super::ideal::{Ideal, QuadElement, Ring};
use crate::group::{ClassOrdering, FiniteAbelianGroup, GroupElement};
use crate::types::TypeVec;
use crate::{Error, Result};

/// Divisor lattices larger than this are refused by [`QuadField::nu`].
pub const DIVISOR_LATTICE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PrimeKind {
    Split,
    Ramified,
    Inert,
}

/// A prime ideal together with its splitting data and class.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrimeIdealRec {
    pub p: u64,
    pub kind: PrimeKind,
    pub ideal: Ideal,
    pub norm: u64,
    /// 1-based position of the class in the field's ordering.
    pub class_index: usize,
    /// The other prime above `p` when `p` splits.
    pub conjugate: Option<Ideal>,
}

#[derive(Debug, Clone)]
pub struct QuadField {
    d: i64,
    disc: i64,
    ring: Ring,
    units: Vec<QuadElement>,
    ordering: ClassOrdering,
    class_forms: Vec<Form>,
    form_pos: BTreeMap<Form, usize>,
}

/// Shorthand for [`QuadField::new`].
pub fn make_field(d: i64) -> Result<QuadField> {
    QuadField::new(d)
}

fn form_key(f: &Form) -> (i128, i128, bool) {
    (f.a, f.b.abs(), f.b < 0)
}

impl QuadField {
    /// `Q(√d)` for squarefree `d < 0`.
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return Err(Error::NotImaginary(d));
        }
        if !is_squarefree(d.unsigned_abs()) {
            return Err(Error::NotSquarefree(d));
        }
        let (ring, disc) = if d.rem_euclid(4) == 1 {
            (Ring { trace: 1, norm: (1 - d) / 4 }, d)
        } else {
            (Ring { trace: 0, norm: -d }, 4 * d)
        };
        let units = match d {
            -1 => vec![
                QuadElement::new(1, 0),
                QuadElement::new(-1, 0),
                QuadElement::new(0, 1),
                QuadElement::new(0, -1),
            ],
            -3 => vec![
                QuadElement::new(1, 0),
                QuadElement::new(-1, 0),
                QuadElement::new(0, 1),
                QuadElement::new(0, -1),
                QuadElement::new(-1, 1),
                QuadElement::new(1, -1),
            ],
            _ => vec![QuadElement::new(1, 0), QuadElement::new(-1, 0)],
        };

        let mut forms = reduced_forms(disc);
        forms.sort_by_key(form_key);
        let raw_of: BTreeMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let reps: Vec<Ideal> = forms.iter().map(|f| form_ideal(ring, f)).collect();
        let classify = |i: &Ideal| raw_of[&ideal_form(ring, i).reduce()];
        let n = forms.len();
        let mut table = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i..n {
                let k = classify(&ring.multiply(&reps[i], &reps[j])?);
                table[i][j] = k;
                table[j][i] = k;
            }
        }
        debug_assert_eq!(raw_of[&forms[0]], 0);

        let group = FiniteAbelianGroup::new(invariant_factors(&table))?;
        let basis = find_basis(&table, group.invariant_factors())
            .expect("a finite abelian group has a basis matching its invariant factors");
        let ordering = ClassOrdering::canonical(&group);
        let mut class_forms = Vec::with_capacity(n);
        for pos in 1..=n {
            let e = ordering.class(pos);
            let mut raw = 0;
            for (g, &c) in basis.iter().zip(e.coords()) {
                for _ in 0..c {
                    raw = table[raw][*g];
                }
            }
            class_forms.push(forms[raw]);
        }
        let form_pos = class_forms.iter().enumerate().map(|(i, f)| (*f, i + 1)).collect();
        Ok(QuadField {
            d,
            disc,
            ring,
            units,
            ordering,
            class_forms,
            form_pos,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// `ω` as an element: `(1+√d)/2` or `√d`.
    pub fn omega(&self) -> QuadElement {
        QuadElement::new(0, 1)
    }

    pub fn units(&self) -> &[QuadElement] {
        &self.units
    }

    pub fn unit_count(&self) -> usize {
        self.units.len()
    }

    pub fn class_group(&self) -> &FiniteAbelianGroup {
        self.ordering.group()
    }

    pub fn ordering(&self) -> &ClassOrdering {
        &self.ordering
    }

    pub fn class_number(&self) -> usize {
        self.class_forms.len()
    }

    /// Reduced forms indexed by class position (the last is principal).
    pub fn class_forms(&self) -> &[Form] {
        &self.class_forms
    }

    pub fn element_norm(&self, e: QuadElement) -> u128 {
        self.ring.element_norm(e)
    }

    pub fn mul(&self, a: QuadElement, b: QuadElement) -> QuadElement {
        self.ring.mul(a, b)
    }

    pub fn principal(&self, e: QuadElement) -> Result<Ideal> {
        self.ring.principal(e)
    }

    pub fn multiply(&self, a: &Ideal, b: &Ideal) -> Result<Ideal> {
        self.ring.multiply(a, b)
    }

    pub fn conjugate(&self, a: &Ideal) -> Ideal {
        self.ring.conjugate_ideal(a)
    }

    pub fn gcd_ideal(&self, a: &Ideal, b: &Ideal) -> Ideal {
        self.ring.gcd(a, b)
    }

    /// Whether `a | b`.
    pub fn divides(&self, a: &Ideal, b: &Ideal) -> bool {
        self.ring.divides(a, b)
    }

    /// `b / a` when `a | b`.
    pub fn exact_div(&self, b: &Ideal, a: &Ideal) -> Result<Ideal> {
        self.ring.exact_div(b, a)
    }

    /// The reduced form attached to an ideal class, before lookup.
    pub fn ideal_form(&self, a: &Ideal) -> Form {
        ideal_form(self.ring, a).reduce()
    }

    /// 1-based class position; `h` iff principal.
    pub fn ideal_class(&self, a: &Ideal) -> usize {
        self.form_pos[&self.ideal_form(a)]
    }

    pub fn class_element(&self, a: &Ideal) -> &GroupElement {
        self.ordering.class(self.ideal_class(a))
    }

    pub fn is_principal(&self, a: &Ideal) -> bool {
        self.ideal_class(a) == self.ordering.identity_position()
    }

    /// A generator of `a` when it is principal.
    pub fn is_principal_with_generator(&self, a: &Ideal) -> Option<QuadElement> {
        let (c, ap, bp) = (a.c as i128, (a.a / a.c) as i128, (a.b / a.c) as i128);
        let (reduced, m) = ideal_form(self.ring, a).reduce_with_transform();
        if reduced.a != 1 {
            return None;
        }
        // the standard form is N(x·a' − y·β)/a' with β = b' + ω
        let (x, y) = m.first_column();
        let g = QuadElement::new((c * (x * ap - y * bp)) as i64, (-c * y) as i64);
        debug_assert_eq!(self.ring.principal(g).ok(), Some(*a));
        Some(g)
    }

    /// The prime ideals above a rational prime `p`, smaller root first.
    pub fn split_prime(&self, p: u64) -> Result<Vec<PrimeIdealRec>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let kind = match kronecker(self.disc, p) {
            1 => PrimeKind::Split,
            0 => PrimeKind::Ramified,
            _ => PrimeKind::Inert,
        };
        let pi = p as i64;
        let rec = |ideal: Ideal, norm: u64, conjugate: Option<Ideal>| PrimeIdealRec {
            p,
            kind,
            ideal,
            norm,
            class_index: self.ideal_class(&ideal),
            conjugate,
        };
        Ok(match kind {
            PrimeKind::Inert => vec![rec(Ideal::rational(pi), p * p, None)],
            _ => {
                let (b1, b2) = self.residue_roots(p);
                let first = Ideal { a: pi, b: b1, c: 1 };
                if kind == PrimeKind::Ramified {
                    vec![rec(first, p, None)]
                } else {
                    let second = Ideal { a: pi, b: b2, c: 1 };
                    vec![rec(first, p, Some(second)), rec(second, p, Some(first))]
                }
            }
        })
    }

    /// Roots `b₁ ≤ b₂` in `[0, p)` of `b² + Tr·b + N(ω) ≡ 0 (mod p)`.
    fn residue_roots(&self, p: u64) -> (i64, i64) {
        let pi = p as i64;
        let (t, n) = (self.ring.trace, self.ring.norm);
        let b1 = if p == 2 {
            (0..2).find(|b| (b * b + t * b + n).rem_euclid(2) == 0).expect("not inert at 2")
        } else {
            let s = sqrt_mod(self.disc.rem_euclid(pi) as u64, p).expect("not inert") as i64;
            let inv2 = pow_mod(2, p - 2, p) as i64;
            (((s - t).rem_euclid(pi) as i128 * inv2 as i128) % pi as i128) as i64
        };
        let b2 = (-t - b1).rem_euclid(pi);
        (b1.min(b2), b1.max(b2))
    }

    /// Every prime ideal of norm at most `x`, ordered by `(norm, HNF)`.
    pub fn enumerate_prime_ideals(&self, x: u64) -> Vec<PrimeIdealRec> {
        let mut out = Vec::new();
        for p in primes_up_to(x) {
            for rec in self.split_prime(p).expect("sieve output is prime") {
                if rec.norm <= x {
                    out.push(rec);
                }
            }
        }
        out.sort_by_key(|r| (r.norm, r.ideal));
        out
    }

    /// Prime ideal factorization with multiplicities, ordered by `(norm, HNF)`.
    pub fn factorize(&self, a: &Ideal) -> Result<Vec<(PrimeIdealRec, u32)>> {
        let norm = a.norm();
        if norm as u128 > super::ideal::NORM_CEILING {
            return Err(Error::FactorizationOverflow(norm as u128));
        }
        let mut rest = *a;
        let mut out = Vec::new();
        for (p, _) in factor(norm) {
            for rec in self.split_prime(p)? {
                let mut e = 0;
                while self.divides(&rec.ideal, &rest) {
                    rest = self.exact_div(&rest, &rec.ideal)?;
                    e += 1;
                }
                if e > 0 {
                    out.push((rec, e));
                }
            }
        }
        debug_assert!(rest.is_unit());
        out.sort_by_key(|(r, _)| (r.norm, r.ideal));
        Ok(out)
    }

    /// Prime factors counted with multiplicity per class position.
    pub fn ideal_type(&self, a: &Ideal) -> Result<TypeVec> {
        let mut t = TypeVec::zero(self.class_number());
        for (rec, e) in self.factorize(a)? {
            for _ in 0..e {
                t.increment(rec.class_index);
            }
        }
        Ok(t)
    }

    /// Distinct prime factors per class position.
    pub fn omega_by_class(&self, a: &Ideal) -> Result<Vec<u32>> {
        let mut w = vec![0u32; self.class_number()];
        for (rec, _) in self.factorize(a)? {
            w[rec.class_index - 1] += 1;
        }
        Ok(w)
    }

    /// Number of nonassociate irreducible elements whose principal ideal
    /// divides `a`.
    pub fn nu(&self, a: &Ideal) -> Result<u64> {
        let factors = self.factorize(a)?;
        let nodes = factors.iter().map(|(_, e)| *e as u128 + 1).product::<u128>();
        if nodes > DIVISOR_LATTICE_LIMIT {
            return Err(Error::DivisorExplosion(nodes));
        }
        let ord = &self.ordering;
        let radix: Vec<usize> = factors.iter().map(|(_, e)| *e as usize + 1).collect();
        let cls: Vec<usize> = factors.iter().map(|(r, _)| ord.idx_of_pos0(r.class_index - 1)).collect();
        let nodes = nodes as usize;
        // mixed radix, first factor fastest
        let mut stride = vec![1usize; radix.len()];
        for i in 1..radix.len() {
            stride[i] = stride[i - 1] * radix[i - 1];
        }
        let mut class_of = vec![0usize; nodes];
        let mut has_principal_le = vec![false; nodes];
        let mut digits = vec![0usize; radix.len()];
        let mut count = 0u64;
        for f in 0..nodes {
            if f > 0 {
                let mut k = 0;
                while digits[k] + 1 == radix[k] {
                    digits[k] = 0;
                    k += 1;
                }
                digits[k] += 1;
                class_of[f] = ord.idx_add(class_of[f - stride[k]], cls[k]);
            }
            let below = (0..radix.len()).any(|i| digits[i] > 0 && has_principal_le[f - stride[i]]);
            let principal = f != 0 && class_of[f] == 0;
            if principal && !below {
                count += 1;
            }
            has_principal_le[f] = principal || below;
        }
        Ok(count)
    }
}

/// `N(x·a' + y·β)/a'` orientation of the primitive part `a'Z + βZ`.
fn ideal_form(ring: Ring, i: &Ideal) -> Form {
    let t = ring.trace as i128;
    let (ap, bp) = ((i.a / i.c) as i128, (i.b / i.c) as i128);
    let nb = bp * bp + t * bp + ring.norm as i128;
    debug_assert_eq!(nb % ap, 0);
    Form::new(ap, -(2 * bp + t), nb / ap)
}

/// A primitive ideal whose form is equivalent to `f`.
fn form_ideal(ring: Ring, f: &Form) -> Ideal {
    let b = (-f.b - ring.trace as i128) / 2;
    Ideal {
        a: f.a as i64,
        b: b.rem_euclid(f.a) as i64,
        c: 1,
    }
}

fn element_order(table: &[Vec<usize>], x: usize) -> u64 {
    let (mut acc, mut n) = (x, 1);
    while acc != 0 {
        acc = table[acc][x];
        n += 1;
    }
    n
}

fn multiple(table: &[Vec<usize>], x: usize, k: u64) -> usize {
    (0..k).fold(0, |acc, _| table[acc][x])
}

/// Invariant factors, ascending, of the group with Cayley table `table`.
fn invariant_factors(table: &[Vec<usize>]) -> Vec<u64> {
    let h = table.len() as u64;
    if h == 1 {
        return Vec::new();
    }
    let mut by_rank: Vec<u64> = Vec::new();
    for (p, _) in factor(h) {
        // the number of cyclic p-factors of order ≥ p^j is log_p of
        // #{x : p^j·x = 0} / #{x : p^(j-1)·x = 0}
        let mut prev = 1u64;
        let mut pk = p;
        let mut counts = Vec::new();
        loop {
            let killed = (0..table.len()).filter(|&x| multiple(table, x, pk) == 0).count() as u64;
            if killed == prev {
                break;
            }
            let mut ratio = killed / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            counts.push(r);
            prev = killed;
            pk *= p;
        }
        // counts[j] = number of factors with order ≥ p^(j+1)
        let rank = counts[0];
        while by_rank.len() < rank {
            by_rank.push(1);
        }
        for k in 0..rank {
            let e = counts.iter().filter(|&&c| c > k).count() as u32;
            by_rank[k] *= p.pow(e);
        }
    }
    by_rank.retain(|&d| d > 1);
    by_rank.sort_unstable();
    by_rank
}

/// Generators `g_k` of the given orders with `⊕⟨g_k⟩` the whole group,
/// preferring earlier elements and starting from the largest factor.
fn find_basis(table: &[Vec<usize>], factors: &[u64]) -> Option<Vec<usize>> {
    fn go(table: &[Vec<usize>], factors: &[u64], span: &BTreeSet<usize>, chosen: &mut Vec<usize>) -> bool {
        let k = factors.len() - chosen.len();
        if k == 0 {
            return true;
        }
        let n = factors[k - 1];
        for g in 0..table.len() {
            if element_order(table, g) != n {
                continue;
            }
            let cyclic: Vec<usize> = (1..n).map(|j| multiple(table, g, j)).collect();
            if cyclic.iter().any(|c| span.contains(c)) {
                continue;
            }
            let mut next = span.clone();
            for &s in span {
                let mut acc = s;
                for _ in 1..n {
                    acc = table[acc][g];
                    next.insert(acc);
                }
            }
            chosen.push(g);
            if go(table, factors, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let span: BTreeSet<usize> = core::iter::once(0).collect();
    if go(table, factors, &span, &mut chosen) {
        chosen.reverse();
        Some(chosen)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_generator(k: &QuadField, a: &Ideal) -> Option<QuadElement> {
        let n = a.norm() as i64;
        let r = (4 * n) as f64;
        let bound = libm::sqrt(r) as i64 + 2;
        for y in -bound..=bound {
            for x in -bound..=bound {
                let e = QuadElement::new(x, y);
                if k.element_norm(e) == n as u128 && a.contains(e) {
                    return Some(e);
                }
            }
        }
        None
    }

    #[test]
    fn class_numbers() {
        for (d, h, w) in [(-1, 1, 4), (-2, 1, 2), (-3, 1, 6), (-5, 2, 2), (-23, 3, 2), (-47, 5, 2), (-14, 4, 2), (-21, 4, 2)] {
            let k = QuadField::new(d).unwrap();
            assert_eq!((k.class_number(), k.unit_count()), (h, w), "d = {d}");
        }
        assert!(QuadField::new(-23).unwrap().class_group().is_cyclic());
        assert_eq!(QuadField::new(-21).unwrap().class_group().invariant_factors(), &[2, 2]);
        assert_eq!(QuadField::new(-14).unwrap().class_group().invariant_factors(), &[4]);
        assert_eq!(QuadField::new(-4).err(), Some(Error::NotSquarefree(-4)));
        assert_eq!(QuadField::new(7).err(), Some(Error::NotImaginary(7)));
    }

    #[test]
    fn class_law_on_prime_ideals() {
        for d in [-5, -21, -23, -47, -65] {
            let k = QuadField::new(d).unwrap();
            let primes = k.enumerate_prime_ideals(60);
            for p in &primes {
                for q in &primes {
                    let pq = k.multiply(&p.ideal, &q.ideal).unwrap();
                    let expect = k
                        .class_group()
                        .add(k.class_element(&p.ideal), k.class_element(&q.ideal))
                        .unwrap();
                    assert_eq!(k.class_element(&pq), &expect);
                }
            }
        }
    }

    #[test]
    fn worked_example_primes() {
        let k = QuadField::new(-23).unwrap();
        let two = k.split_prime(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|r| r.kind == PrimeKind::Split && r.norm == 2 && r.class_index != 3));
        let three = k.split_prime(3).unwrap();
        let p1 = three[0].ideal;
        assert_eq!(p1, Ideal { a: 3, b: 0, c: 1 });
        assert_eq!(k.ideal_class(&p1), 1);
        let alpha = k.principal(QuadElement::new(0, 1)).unwrap();
        let fac = k.factorize(&alpha).unwrap();
        let norms: Vec<u64> = fac.iter().map(|(r, _)| r.norm).collect();
        assert_eq!(norms, vec![2, 3]);
        assert_eq!(fac[1].0.ideal, p1);
        assert_eq!(k.gcd_ideal(&alpha, &Ideal::rational(3)), p1);
        assert_eq!(k.ideal_type(&p1).unwrap(), TypeVec::new(vec![1, 0, 0]));
        assert!(k.is_principal_with_generator(&fac[0].0.ideal).is_none());
        assert!(k.split_prime(9).is_err());
    }

    #[test]
    fn gaussian_splitting() {
        let k = QuadField::new(-1).unwrap();
        let ps = k.enumerate_prime_ideals(5);
        let norms: Vec<u64> = ps.iter().map(|r| r.norm).collect();
        assert_eq!(norms, vec![2, 5, 5]);
        assert_eq!(ps[0].kind, PrimeKind::Ramified);
        let three = k.split_prime(3).unwrap();
        assert_eq!((three[0].kind, three[0].norm, three[0].class_index), (PrimeKind::Inert, 9, 1));
    }

    #[test]
    fn generators_match_search() {
        for d in [-1, -3, -5, -23] {
            let k = QuadField::new(d).unwrap();
            for n in 1..60i64 {
                for b in 0..n {
                    for c in 1..=n {
                        let i = Ideal { a: n, b, c };
                        if n % c != 0 || b % c != 0 || !k.ring().is_ideal(&i) {
                            continue;
                        }
                        let g = k.is_principal_with_generator(&i);
                        assert_eq!(g.is_some(), brute_generator(&k, &i).is_some(), "{d} {i:?}");
                        assert_eq!(g.is_some(), k.is_principal(&i));
                        if let Some(g) = g {
                            assert_eq!(k.principal(g).unwrap(), i);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nu_examples() {
        let k = QuadField::new(-5).unwrap();
        assert_eq!(k.nu(&Ideal::rational(6)).unwrap(), 4);
        let gauss = QuadField::new(-1).unwrap();
        assert_eq!(gauss.nu(&Ideal::rational(3)).unwrap(), 1);
        assert_eq!(gauss.nu(&Ideal::UNIT).unwrap(), 0);
        let t = k.ideal_type(&Ideal::rational(6)).unwrap();
        assert_eq!(t, TypeVec::new(vec![4, 0]));
        assert_eq!(k.omega_by_class(&Ideal::rational(6)).unwrap(), vec![3, 0]);
    }
}
