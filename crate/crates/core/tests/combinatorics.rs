use irreducibles::group::FiniteAbelianGroup;
use irreducibles::types::{
    class_sum, davenport, enumerate_irreducible_types, is_irreducible_type, maximal_types,
    types_maximal_wrt,
};
use irreducibles::{ClassOrdering, TypeVec};
use proptest::prelude::*;

fn group(factors: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(factors.to_vec()).unwrap()
}

/// Longest sequence without a nonempty zero-sum subsequence, by brute force
/// over multisets, plus one.
fn davenport_brute(g: &FiniteAbelianGroup) -> u32 {
    let h = g.order() as usize;
    let elems: Vec<_> = g.elements().collect();
    let idx = |e: &irreducibles::GroupElement| g.index_of(e).unwrap();
    let mut best = 0;
    // multisets as nondecreasing index sequences of nonzero elements
    let mut stack: Vec<(Vec<usize>, Vec<bool>)> = vec![(Vec::new(), {
        let mut s = vec![false; h];
        s[0] = true;
        s
    })];
    while let Some((seq, sums)) = stack.pop() {
        best = best.max(seq.len());
        let from = seq.last().copied().unwrap_or(1);
        for j in from..h {
            let mut next = sums.clone();
            let mut zero = false;
            for (s, &present) in sums.iter().enumerate() {
                if present {
                    let t = idx(&g.add(&elems[s], &elems[j]).unwrap());
                    if t == 0 {
                        zero = true;
                    }
                    next[t] = true;
                }
            }
            if !zero {
                let mut seq = seq.clone();
                seq.push(j);
                stack.push((seq, next));
            }
        }
    }
    best as u32 + 1
}

#[test]
fn davenport_of_cyclic_groups() {
    for n in 1..=10u64 {
        let g = FiniteAbelianGroup::cyclic(n).unwrap();
        let r = davenport(&g);
        assert_eq!(r.d as u64, n);
        let sum = r.witness.iter().fold(g.identity(), |acc, e| g.add(&acc, e).unwrap());
        assert_eq!(sum, g.identity());
        assert_eq!(r.witness.len() as u32, r.d);
    }
}

#[test]
fn davenport_of_rank_two_groups() {
    for d1 in 2..=6u64 {
        for d2 in (d1..=36 / d1).filter(|d2| d2 % d1 == 0) {
            let g = group(&[d1, d2]);
            assert_eq!(davenport(&g).d as u64, d1 + d2 - 1, "Z/{d1} x Z/{d2}");
        }
    }
}

#[test]
fn davenport_agrees_with_brute_force() {
    for f in [vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![6]] {
        let g = group(&f);
        assert_eq!(davenport(&g).d, davenport_brute(&g), "{f:?}");
    }
}

#[test]
fn maximal_types_of_cyclic_groups_sit_on_units() {
    for h in 2..=8u64 {
        let ord = ClassOrdering::canonical(&FiniteAbelianGroup::cyclic(h).unwrap());
        let got: Vec<TypeVec> = maximal_types(&ord).iter().cloned().collect();
        let mut want: Vec<TypeVec> = (1..h)
            .filter(|&i| num_integer::gcd(i, h) == 1)
            .map(|i| {
                let mut t = vec![0u32; h as usize];
                t[i as usize - 1] = h as u32;
                TypeVec::new(t)
            })
            .collect();
        want.sort();
        assert_eq!(got, want, "h = {h}");
    }
}

#[test]
fn relative_lengths_never_exceed_davenport() {
    for f in [vec![3], vec![4], vec![2, 2], vec![5], vec![2, 4]] {
        let g = group(&f);
        let ord = ClassOrdering::canonical(&g);
        let d = davenport(&g).d;
        let (_, l0) = types_maximal_wrt(&ord, &TypeVec::zero(ord.h())).unwrap();
        assert_eq!(l0, d);
        for pos in 1..=ord.h() {
            if pos == ord.identity_position() {
                continue;
            }
            let (set, l) = types_maximal_wrt(&ord, &TypeVec::unit(ord.h(), pos)).unwrap();
            assert!(l <= d && l >= 1);
            assert!(set.iter().all(|t| is_irreducible_type(&ord, t)));
        }
    }
}

fn arb_group() -> impl Strategy<Value = FiniteAbelianGroup> {
    prop_oneof![
        (1u64..=9).prop_map(|n| FiniteAbelianGroup::cyclic(n).unwrap()),
        Just(group(&[2, 2])),
        Just(group(&[2, 4])),
        Just(group(&[3, 3])),
        Just(group(&[2, 2, 2])),
    ]
}

proptest! {
    #[test]
    fn group_axioms(g in arb_group(), a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let h = g.order() as usize;
        let (a, b, c) = (g.element_at(a % h), g.element_at(b % h), g.element_at(c % h));
        let ab = g.add(&a, &b).unwrap();
        prop_assert_eq!(&ab, &g.add(&b, &a).unwrap());
        prop_assert_eq!(
            g.add(&ab, &c).unwrap(),
            g.add(&a, &g.add(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(g.add(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
        let n = g.element_order(&a).unwrap();
        prop_assert_eq!(g.exponent() % n, 0);
        prop_assert_eq!(g.scalar_mul(n as i64, &a).unwrap(), g.identity());
    }

    #[test]
    fn irreducible_sets_are_permutation_invariant(g in arb_group(), seed in any::<u64>()) {
        let ord = ClassOrdering::canonical(&g);
        let h = ord.h();
        let mut perm: Vec<usize> = (1..=h).collect();
        let mut s = seed;
        for i in (1..h).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let permuted = ord.permuted(&perm).unwrap();
        let base: Vec<TypeVec> = enumerate_irreducible_types(&ord).iter().cloned().collect();
        let moved: std::collections::BTreeSet<TypeVec> = base
            .iter()
            .map(|t| TypeVec::new(perm.iter().map(|&p| t.counts()[p - 1]).collect()))
            .collect();
        let direct: std::collections::BTreeSet<TypeVec> =
            enumerate_irreducible_types(&permuted).iter().cloned().collect();
        prop_assert_eq!(moved, direct);
        prop_assert_eq!(
            maximal_types(&ord).len(),
            maximal_types(&permuted).len()
        );
    }

    #[test]
    fn irreducible_types_are_zero_sum(g in arb_group()) {
        let ord = ClassOrdering::canonical(&g);
        let d = davenport(&g).d;
        let all = enumerate_irreducible_types(&ord);
        prop_assert_eq!(all.max_length(), Some(d));
        for t in all.iter() {
            prop_assert_eq!(class_sum(&ord, t), g.identity());
        }
    }
}
