//! Types, principality, the subtype order and irreducible types.
//!
//! A type is an `h`-tuple counting prime ideals per class. In group terms an
//! irreducible type is a minimal zero-sum sequence over the class group, read
//! as a multiset of class positions, which is how every scan here works.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{ClassOrdering, FiniteAbelianGroup, GroupElement};
use crate::rational::{inv_factorial, Rational};
use crate::{Error, Result};

/// An `h`-tuple of nonnegative counts, indexed by class position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct TypeVec {
    counts: Vec<u32>,
}

impl TypeVec {
    pub fn new(counts: Vec<u32>) -> Self {
        TypeVec { counts }
    }

    pub fn zero(h: usize) -> Self {
        TypeVec { counts: vec![0; h] }
    }

    /// The type with a single 1 at a 1-based position.
    pub fn unit(h: usize, position: usize) -> Self {
        let mut t = Self::zero(h);
        t.counts[position - 1] = 1;
        t
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn h(&self) -> usize {
        self.counts.len()
    }

    /// Sum of the entries.
    pub fn length(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// Bumps the count at a 1-based position.
    pub fn increment(&mut self, position: usize) {
        self.counts[position - 1] += 1;
    }

    /// Componentwise difference `self - other`, if `other ⪯ self`.
    pub fn checked_sub(&self, other: &TypeVec) -> Option<TypeVec> {
        if !is_subtype(other, self) {
            return None;
        }
        Some(TypeVec {
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a - b).collect(),
        })
    }

    /// `Π 1/t_i!`.
    pub fn inv_factorial_weight(&self) -> Rational {
        self.counts.iter().map(|&t| inv_factorial(t)).product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeSetKind {
    Irreducible,
    Maximal,
    /// Irreducible types of greatest length among those containing the given subtype.
    MaximalWrt(TypeVec),
}

/// A sorted set of types sharing one class ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSet {
    pub kind: TypeSetKind,
    pub types: BTreeSet<TypeVec>,
}

impl TypeSet {
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TypeVec> {
        self.types.iter()
    }

    pub fn contains(&self, t: &TypeVec) -> bool {
        self.types.contains(t)
    }

    /// `Σ_τ Π_i 1/t_i!` over the members.
    pub fn inv_factorial_sum(&self) -> Rational {
        self.types.iter().map(TypeVec::inv_factorial_weight).sum()
    }

    pub fn max_length(&self) -> Option<u32> {
        self.types.iter().map(TypeVec::length).max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DavenportResult {
    pub d: u32,
    /// A minimal zero-sum sequence of length `d`.
    pub witness: Vec<GroupElement>,
}

fn check_dim(ord: &ClassOrdering, t: &TypeVec) {
    assert_eq!(t.h(), ord.h(), "type dimension does not match the class ordering");
}

/// Mixed-radix index of `Σ t_i C_i`.
fn sum_idx(ord: &ClassOrdering, counts: &[u32]) -> usize {
    counts.iter().enumerate().fold(0, |acc, (pos0, &t)| {
        if t == 0 {
            acc
        } else {
            ord.idx_add(acc, ord.idx_mul(t as u64, ord.idx_of_pos0(pos0)))
        }
    })
}

/// `Σ t_i·C_i` in the group.
pub fn class_sum(ord: &ClassOrdering, t: &TypeVec) -> GroupElement {
    check_dim(ord, t);
    ord.group().element_at(sum_idx(ord, &t.counts))
}

pub fn is_principal(ord: &ClassOrdering, t: &TypeVec) -> bool {
    check_dim(ord, t);
    sum_idx(ord, &t.counts) == 0
}

/// `sub ⪯ sup` componentwise.
pub fn is_subtype(sub: &TypeVec, sup: &TypeVec) -> bool {
    assert_eq!(sub.h(), sup.h(), "types of different dimension");
    sub.counts.iter().zip(&sup.counts).all(|(a, b)| a <= b)
}

/// Scans every nonzero subtype of `t` (excluding `t` itself when
/// `proper_only`) for a principal one.
fn has_principal_subtype(ord: &ClassOrdering, t: &TypeVec, proper_only: bool) -> bool {
    check_dim(ord, t);
    let support: Vec<usize> = (0..t.h()).filter(|&i| t.counts[i] > 0).collect();
    let mut digits = vec![0u32; support.len()];
    loop {
        // odometer increment over the support coordinates
        let mut k = 0;
        while k < support.len() {
            if digits[k] < t.counts[support[k]] {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == support.len() {
            return false;
        }
        let full = digits.iter().zip(&support).all(|(&d, &i)| d == t.counts[i]);
        if proper_only && full {
            continue;
        }
        let sum = digits.iter().zip(&support).fold(0, |acc, (&d, &i)| {
            ord.idx_add(acc, ord.idx_mul(d as u64, ord.idx_of_pos0(i)))
        });
        if sum == 0 {
            return true;
        }
    }
}

/// Nonzero, principal, and without a nonzero proper principal subtype.
pub fn is_irreducible_type(ord: &ClassOrdering, t: &TypeVec) -> bool {
    !t.is_zero() && is_principal(ord, t) && !has_principal_subtype(ord, t, true)
}

/// True iff no nonzero subtype of `t` (including `t`) is principal; the type
/// of a gcd ideal `(α, 𝔪)` has this property exactly when `α` and `𝔪` are
/// weakly relatively prime.
pub fn is_weakly_coprime_type(ord: &ClassOrdering, t: &TypeVec) -> bool {
    !has_principal_subtype(ord, t, false)
}

/// Set of group elements, stored as a bitmask over mixed-radix indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct IdxSet(Vec<u64>);

impl IdxSet {
    fn new(h: usize) -> Self {
        IdxSet(vec![0; h.div_ceil(64)])
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    /// `self ∪ (self + g)`.
    fn extend_by(&self, ord: &ClassOrdering, g: usize) -> Self {
        let mut out = self.clone();
        for i in 0..ord.h() {
            if self.contains(i) {
                out.insert(ord.idx_add(i, g));
            }
        }
        out
    }
}

/// Subsums of all sub-multisets (including the empty one) of the base type.
/// `None` when some nonempty sub-multiset already sums to zero.
fn zero_sum_free_subsums(ord: &ClassOrdering, base: &TypeVec) -> Option<IdxSet> {
    let mut set = IdxSet::new(ord.h());
    set.insert(0);
    for (pos0, &t) in base.counts.iter().enumerate() {
        let g = ord.idx_of_pos0(pos0);
        for _ in 0..t {
            if set.contains(ord.idx_neg(g)) {
                return None;
            }
            set = set.extend_by(ord, g);
        }
    }
    Some(set)
}

/// Visits every minimal zero-sum sequence that contains `base` (which must be
/// zero-sum free), each exactly once, as a type.
///
/// The part beyond `base` is written `S·c` with `c` its largest position;
/// `S` grows in nondecreasing position order and `c = -σ(base·S)` is forced.
fn for_each_irreducible_extension(ord: &ClassOrdering, base: &TypeVec, f: &mut dyn FnMut(&TypeVec)) {
    let Some(subsums) = zero_sum_free_subsums(ord, base) else {
        return;
    };
    let start_sum = sum_idx(ord, &base.counts);
    let mut current = base.clone();
    walk_extensions(ord, &mut current, &subsums, start_sum, 0, f);
}

fn walk_extensions(
    ord: &ClassOrdering,
    current: &mut TypeVec,
    subsums: &IdxSet,
    sum: usize,
    min_pos0: usize,
    f: &mut dyn FnMut(&TypeVec),
) {
    let closing = ord.pos0_of_idx(ord.idx_neg(sum));
    if closing >= min_pos0 {
        current.counts[closing] += 1;
        f(current);
        current.counts[closing] -= 1;
    }
    for pos0 in min_pos0..ord.h() {
        let g = ord.idx_of_pos0(pos0);
        if subsums.contains(ord.idx_neg(g)) {
            continue;
        }
        let next = subsums.extend_by(ord, g);
        current.counts[pos0] += 1;
        walk_extensions(ord, current, &next, ord.idx_add(sum, g), pos0, f);
        current.counts[pos0] -= 1;
    }
}

/// Davenport constant with a witness, by exhaustive search over zero-sum-free
/// sequences memoized on their subsum sets.
///
/// Whether a sequence can be extended only depends on the set of its subsums,
/// so the longest extension is a function of that set.
pub fn davenport(group: &FiniteAbelianGroup) -> DavenportResult {
    let ord = ClassOrdering::canonical(group);
    let h = group.order() as usize;
    let mut start = IdxSet::new(h);
    start.insert(0);
    let mut memo: BTreeMap<IdxSet, (u32, usize)> = BTreeMap::new();
    longest_zero_sum_free(&ord, &start, &mut memo);

    let mut witness_idx = Vec::new();
    let mut state = start;
    let mut total = 0usize;
    while let Some(&(len, g)) = memo.get(&state) {
        if len == 0 {
            break;
        }
        witness_idx.push(g);
        total = ord.idx_add(total, g);
        state = state.extend_by(&ord, g);
    }
    witness_idx.push(ord.idx_neg(total));
    DavenportResult {
        d: witness_idx.len() as u32,
        witness: witness_idx.into_iter().map(|i| group.element_at(i)).collect(),
    }
}

fn longest_zero_sum_free(ord: &ClassOrdering, state: &IdxSet, memo: &mut BTreeMap<IdxSet, (u32, usize)>) -> u32 {
    if let Some(&(len, _)) = memo.get(state) {
        return len;
    }
    let mut best = (0u32, 0usize);
    for g in 1..ord.h() {
        if state.contains(ord.idx_neg(g)) {
            continue;
        }
        let next = state.extend_by(ord, g);
        let len = 1 + longest_zero_sum_free(ord, &next, memo);
        if len > best.0 {
            best = (len, g);
        }
    }
    memo.insert(state.clone(), best);
    best.0
}

/// All irreducible types for the ordering (finite, each of length at most `D`).
pub fn enumerate_irreducible_types(ord: &ClassOrdering) -> TypeSet {
    let mut types = BTreeSet::new();
    for_each_irreducible_extension(ord, &TypeVec::zero(ord.h()), &mut |t| {
        types.insert(t.clone());
    });
    TypeSet {
        kind: TypeSetKind::Irreducible,
        types,
    }
}

/// Irreducible types of length `D`.
pub fn maximal_types(ord: &ClassOrdering) -> TypeSet {
    let all = enumerate_irreducible_types(ord);
    let d = all.max_length().expect("there is always an irreducible type");
    TypeSet {
        kind: TypeSetKind::Maximal,
        types: all.types.into_iter().filter(|t| t.length() == d).collect(),
    }
}

/// An irreducible type containing `base`: `base` itself when it is already
/// irreducible, otherwise `base` with one more prime in the class inverse to
/// its class sum.
pub fn extend_to_irreducible(ord: &ClassOrdering, base: &TypeVec) -> Result<TypeVec> {
    check_dim(ord, base);
    if has_principal_subtype(ord, base, true) {
        return Err(Error::HasPrincipalSubtype);
    }
    if is_irreducible_type(ord, base) {
        return Ok(base.clone());
    }
    let inverse = ord.idx_neg(sum_idx(ord, &base.counts));
    let mut out = base.clone();
    out.counts[ord.pos0_of_idx(inverse)] += 1;
    Ok(out)
}

/// Irreducible types of greatest length containing `base`, together with
/// `L = (that length) - length(base)`.
pub fn types_maximal_wrt(ord: &ClassOrdering, base: &TypeVec) -> Result<(TypeSet, u32)> {
    check_dim(ord, base);
    if !is_weakly_coprime_type(ord, base) {
        return Err(Error::HasPrincipalSubtype);
    }
    let mut best_len = 0u32;
    let mut types = BTreeSet::new();
    for_each_irreducible_extension(ord, base, &mut |t| {
        let len = t.length();
        if len > best_len {
            best_len = len;
            types.clear();
        }
        if len == best_len {
            types.insert(t.clone());
        }
    });
    debug_assert!(!types.is_empty());
    Ok((
        TypeSet {
            kind: TypeSetKind::MaximalWrt(base.clone()),
            types,
        },
        best_len - base.length(),
    ))
}
