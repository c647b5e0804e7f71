//! Finite abelian groups in invariant-factor form.
//!
//! A group `Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k` is the stand-in for
//! a class group. Elements are coordinate vectors; the fixed
//! [`ClassOrdering`] numbers the elements `1..=h` with the identity last.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "GroupSpec", into = "GroupSpec"))]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    order: u64,
}

#[cfg(feature = "serde")]
#[derive(serde::Serialize, serde::Deserialize)]
struct GroupSpec {
    invariant_factors: Vec<u64>,
}

#[cfg(feature = "serde")]
impl TryFrom<GroupSpec> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(spec: GroupSpec) -> Result<Self> {
        FiniteAbelianGroup::new(spec.invariant_factors)
    }
}

#[cfg(feature = "serde")]
impl From<FiniteAbelianGroup> for GroupSpec {
    fn from(g: FiniteAbelianGroup) -> Self {
        GroupSpec {
            invariant_factors: g.invariant_factors,
        }
    }
}

/// Element of a [`FiniteAbelianGroup`], one residue per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl FiniteAbelianGroup {
    /// Builds `Z/d_1 ⊕ … ⊕ Z/d_k`. The empty list is the trivial group.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let valid = invariant_factors.iter().all(|&d| d >= 2)
            && invariant_factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !valid {
            return Err(Error::InvalidInvariants(invariant_factors));
        }
        let order = invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::InvalidInvariants(invariant_factors.clone()))?;
        Ok(FiniteAbelianGroup {
            invariant_factors,
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Self::new(vec![])
        } else {
            Self::new(vec![n])
        }
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            order: 1,
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// The group order `h`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Exponent of the group (the largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() <= 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::GroupMismatch);
        }
        let coords = coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = g.coords.len() == self.rank()
            && g.coords.iter().zip(&self.invariant_factors).all(|(&c, &d)| c < d);
        if ok {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.invariant_factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let coords = g
            .coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn scalar_mul(&self, n: i64, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        let coords = g
            .coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| {
                let n = n.rem_euclid(d as i64) as u128;
                ((n * x as u128) % d as u128) as u64
            })
            .collect();
        Ok(GroupElement { coords })
    }

    /// Least `n >= 1` with `n·g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        Ok(g.coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| d / num_integer::gcd(x, d))
            .fold(1, num_integer::lcm))
    }

    /// Mixed-radix index, last coordinate fastest; the identity has index 0.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.radix_index(&g.coords))
    }

    fn radix_index(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    /// Inverse of [`Self::index_of`].
    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (c, &d) in coords.iter_mut().zip(&self.invariant_factors).rev() {
            *c = (index % d as usize) as u64;
            index /= d as usize;
        }
        GroupElement { coords }
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }
}

/// A numbering `C_1, …, C_h` of the group elements.
///
/// Positions are 1-based in the public API. Internally every position maps to
/// its mixed-radix index so that arithmetic runs on small integer tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOrdering {
    group: FiniteAbelianGroup,
    classes: Vec<GroupElement>,
    /// position (0-based) -> mixed-radix index
    pos_to_idx: Vec<usize>,
    /// mixed-radix index -> position (0-based)
    idx_to_pos: Vec<usize>,
}

impl ClassOrdering {
    /// The fixed ordering: mixed-radix enumeration with the identity moved
    /// to position `h`. For `Z/h` this is `C_i ↔ i mod h`.
    pub fn canonical(group: &FiniteAbelianGroup) -> Self {
        let h = group.order() as usize;
        let classes: Vec<_> = (1..h).chain(core::iter::once(0)).map(|i| group.element_at(i)).collect();
        Self::from_classes(group, classes).expect("canonical ordering is a bijection")
    }

    /// Wraps an arbitrary numbering; rejects anything that is not a bijection.
    pub fn from_classes(group: &FiniteAbelianGroup, classes: Vec<GroupElement>) -> Result<Self> {
        let h = group.order() as usize;
        if classes.len() != h {
            return Err(Error::InvalidOrdering);
        }
        let mut idx_to_pos = vec![usize::MAX; h];
        let mut pos_to_idx = Vec::with_capacity(h);
        for (pos, g) in classes.iter().enumerate() {
            let idx = group.index_of(g).map_err(|_| Error::InvalidOrdering)?;
            if idx_to_pos[idx] != usize::MAX {
                return Err(Error::InvalidOrdering);
            }
            idx_to_pos[idx] = pos;
            pos_to_idx.push(idx);
        }
        Ok(ClassOrdering {
            group: group.clone(),
            classes,
            pos_to_idx,
            idx_to_pos,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn h(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[GroupElement] {
        &self.classes
    }

    /// Element `C_i` for a 1-based position.
    pub fn class(&self, position: usize) -> &GroupElement {
        &self.classes[position - 1]
    }

    /// 1-based position of an element.
    pub fn position(&self, g: &GroupElement) -> Result<usize> {
        Ok(self.idx_to_pos[self.group.index_of(g)?] + 1)
    }

    /// 1-based position of the identity.
    pub fn identity_position(&self) -> usize {
        self.idx_to_pos[0] + 1
    }

    /// Reorders by a permutation: new position `i` holds old position `perm[i]`
    /// (both 1-based).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.h() {
            return Err(Error::InvalidOrdering);
        }
        let classes = perm
            .iter()
            .map(|&p| {
                self.classes
                    .get(p.wrapping_sub(1))
                    .cloned()
                    .ok_or(Error::InvalidOrdering)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_classes(&self.group, classes)
    }

    // Index-level helpers used by the combinatorial scans. Indices here are
    // mixed-radix indices, not positions.

    pub(crate) fn idx_of_pos0(&self, pos0: usize) -> usize {
        self.pos_to_idx[pos0]
    }

    pub(crate) fn pos0_of_idx(&self, idx: usize) -> usize {
        self.idx_to_pos[idx]
    }

    pub(crate) fn idx_add(&self, a: usize, b: usize) -> usize {
        let mut out = 0usize;
        let mut a = a;
        let mut b = b;
        let mut scale = 1usize;
        for &d in self.group.invariant_factors.iter().rev() {
            let d = d as usize;
            out += ((a % d + b % d) % d) * scale;
            a /= d;
            b /= d;
            scale *= d;
        }
        out
    }

    pub(crate) fn idx_neg(&self, a: usize) -> usize {
        let mut out = 0usize;
        let mut a = a;
        let mut scale = 1usize;
        for &d in self.group.invariant_factors.iter().rev() {
            let d = d as usize;
            out += ((d - a % d) % d) * scale;
            a /= d;
            scale *= d;
        }
        out
    }

    pub(crate) fn idx_mul(&self, n: u64, a: usize) -> usize {
        let mut out = 0usize;
        let mut a = a;
        let mut scale = 1usize;
        for &d in self.group.invariant_factors.iter().rev() {
            let du = d as usize;
            let c = ((n % d) as u128 * (a % du) as u128 % d as u128) as usize;
            out += c * scale;
            a /= du;
            scale *= du;
        }
        out
    }
}

/// The fixed ordering of a group; see [`ClassOrdering::canonical`].
pub fn canonical_ordering(group: &FiniteAbelianGroup) -> ClassOrdering {
    ClassOrdering::canonical(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &FiniteAbelianGroup, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    #[test]
    fn make_group_examples() {
        assert_eq!(FiniteAbelianGroup::new(vec![]).unwrap().order(), 1);
        assert_eq!(FiniteAbelianGroup::new(vec![3]).unwrap().order(), 3);
        assert_eq!(FiniteAbelianGroup::new(vec![2, 2]).unwrap().order(), 4);
        assert_eq!(FiniteAbelianGroup::new(vec![2, 3]), Err(Error::InvalidInvariants(vec![2, 3])));
        assert!(FiniteAbelianGroup::new(vec![1, 2]).is_err());
        assert!(FiniteAbelianGroup::new(vec![0]).is_err());
        assert!(FiniteAbelianGroup::new(vec![4, 2]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = FiniteAbelianGroup::new(vec![3]).unwrap();
        assert_eq!(z3.add(&el(&z3, &[1]), &el(&z3, &[2])).unwrap(), z3.identity());
        assert_eq!(z3.element_order(&el(&z3, &[1])).unwrap(), 3);
        let v4 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(v4.inverse(&el(&v4, &[1, 0])).unwrap(), el(&v4, &[1, 0]));
        assert_eq!(v4.scalar_mul(-3, &el(&v4, &[1, 1])).unwrap(), el(&v4, &[1, 1]));
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let z3 = FiniteAbelianGroup::new(vec![3]).unwrap();
        let v4 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let g = el(&v4, &[1, 1]);
        assert_eq!(z3.add(&g, &z3.identity()), Err(Error::GroupMismatch));
        assert_eq!(z3.element_order(&GroupElement { coords: vec![5] }), Err(Error::GroupMismatch));
    }

    #[test]
    fn canonical_ordering_examples() {
        let triv = FiniteAbelianGroup::trivial();
        let o = canonical_ordering(&triv);
        assert_eq!(o.classes(), &[triv.identity()]);
        assert_eq!(o.identity_position(), 1);

        let z3 = FiniteAbelianGroup::new(vec![3]).unwrap();
        let o = canonical_ordering(&z3);
        assert_eq!(o.classes(), &[el(&z3, &[1]), el(&z3, &[2]), el(&z3, &[0])]);

        let v4 = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let o = canonical_ordering(&v4);
        assert_eq!(
            o.classes(),
            &[el(&v4, &[0, 1]), el(&v4, &[1, 0]), el(&v4, &[1, 1]), el(&v4, &[0, 0])]
        );
        assert_eq!(o.position(&el(&v4, &[1, 0])).unwrap(), 2);
    }

    #[test]
    fn index_helpers_match_group_law() {
        let g = FiniteAbelianGroup::new(vec![2, 6]).unwrap();
        let o = canonical_ordering(&g);
        for a in 0..12 {
            for b in 0..12 {
                let sum = g.add(&g.element_at(a), &g.element_at(b)).unwrap();
                assert_eq!(o.idx_add(a, b), g.index_of(&sum).unwrap());
            }
            let neg = g.inverse(&g.element_at(a)).unwrap();
            assert_eq!(o.idx_neg(a), g.index_of(&neg).unwrap());
            let tri = g.scalar_mul(7, &g.element_at(a)).unwrap();
            assert_eq!(o.idx_mul(7, a), g.index_of(&tri).unwrap());
        }
    }

    #[test]
    fn from_classes_rejects_non_bijections() {
        let z3 = FiniteAbelianGroup::new(vec![3]).unwrap();
        let dup = vec![el(&z3, &[1]), el(&z3, &[1]), el(&z3, &[0])];
        assert_eq!(ClassOrdering::from_classes(&z3, dup), Err(Error::InvalidOrdering));
        let short = vec![el(&z3, &[1])];
        assert_eq!(ClassOrdering::from_classes(&z3, short), Err(Error::InvalidOrdering));
    }
}
