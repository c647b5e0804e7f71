use std::collections::BTreeMap;

use irreducibles::quadfield::{
    count_progression_elements, count_progression_ideals, ray_phi, same_strict_ray_class, PrimeIdealRec,
};
use irreducibles::types::enumerate_irreducible_types;
use irreducibles::{Ideal, QuadElement, QuadField, RayModulus, TypeVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every nonzero ideal of norm at most `bound`, as products of prime ideals.
fn ideals_up_to(k: &QuadField, bound: u64) -> Vec<Ideal> {
    fn go(k: &QuadField, primes: &[PrimeIdealRec], start: usize, cur: Ideal, norm: u64, bound: u64, out: &mut Vec<Ideal>) {
        out.push(cur);
        for i in start..primes.len() {
            let n = norm * primes[i].norm;
            if n > bound {
                break;
            }
            go(k, primes, i, k.multiply(&cur, &primes[i].ideal).unwrap(), n, bound, out);
        }
    }
    let primes = k.enumerate_prime_ideals(bound);
    let mut out = Vec::new();
    go(k, &primes, 0, Ideal::UNIT, 1, bound, &mut out);
    out
}

/// All elements of `a` with norm exactly `N(a)`, i.e. all generators.
fn generators_by_search(k: &QuadField, a: &Ideal) -> Vec<QuadElement> {
    let n = a.norm() as u128;
    let bound = (4.0 * n as f64).sqrt() as i64 + 2;
    let mut out = Vec::new();
    for y in -bound..=bound {
        for x in -bound..=bound {
            let e = QuadElement::new(x, y);
            if k.element_norm(e) == n && a.contains(e) {
                out.push(e);
            }
        }
    }
    out
}

fn random_ideal(k: &QuadField, primes: &[PrimeIdealRec], rng: &mut ChaCha8Rng, max_norm: u64) -> Ideal {
    let mut a = Ideal::UNIT;
    for _ in 0..rng.random_range(0..8) {
        let p = &primes[rng.random_range(0..primes.len())];
        if a.norm() * p.norm > max_norm {
            break;
        }
        a = k.multiply(&a, &p.ideal).unwrap();
    }
    if rng.random_bool(0.2) {
        let n = rng.random_range(1..20i64);
        if a.norm() * (n * n) as u64 <= max_norm {
            a = k.multiply(&a, &Ideal::rational(n)).unwrap();
        }
    }
    a
}

#[test]
fn factorization_round_trips_and_norms_multiply() {
    for d in [-1, -5, -23, -47] {
        let k = QuadField::new(d).unwrap();
        let primes = k.enumerate_prime_ideals(1000);
        let mut rng = ChaCha8Rng::seed_from_u64(d.unsigned_abs());
        for _ in 0..10_000 {
            let a = random_ideal(&k, &primes, &mut rng, 1_000_000);
            assert!(k.ring().is_ideal(&a));
            let fac = k.factorize(&a).unwrap();
            let back = fac.iter().fold(Ideal::UNIT, |acc, (p, e)| {
                (0..*e).fold(acc, |acc, _| k.multiply(&acc, &p.ideal).unwrap())
            });
            assert_eq!(back, a);
            let b = random_ideal(&k, &primes, &mut rng, 1000);
            let ab = k.multiply(&a, &b).unwrap();
            assert_eq!(ab.norm(), a.norm() * b.norm());
            assert!(k.divides(&a, &ab) && k.divides(&b, &ab));
            assert_eq!(k.exact_div(&ab, &b).unwrap(), a);
            let conj = k.conjugate(&a);
            assert_eq!(k.multiply(&a, &conj).unwrap(), Ideal::rational(a.norm() as i64));
        }
    }
}

#[test]
fn class_of_a_product_is_the_sum_of_classes() {
    for d in [-5, -23, -47, -21, -65] {
        let k = QuadField::new(d).unwrap();
        let primes = k.enumerate_prime_ideals(500);
        let mut rng = ChaCha8Rng::seed_from_u64(7 + d.unsigned_abs());
        let g = k.class_group();
        for _ in 0..10_000 {
            let a = random_ideal(&k, &primes, &mut rng, 100_000);
            let b = random_ideal(&k, &primes, &mut rng, 100_000);
            let ab = k.multiply(&a, &b).unwrap();
            let want = g.add(k.class_element(&a), k.class_element(&b)).unwrap();
            assert_eq!(k.class_element(&ab), &want);
        }
    }
}

#[test]
fn generators_exist_exactly_for_principal_ideals() {
    for d in [-1, -3, -5, -23, -47] {
        let k = QuadField::new(d).unwrap();
        for a in ideals_up_to(&k, 400) {
            let found = generators_by_search(&k, &a);
            let g = k.is_principal_with_generator(&a);
            assert_eq!(g.is_some(), !found.is_empty(), "d = {d}, {a:?}");
            assert_eq!(g.is_some(), k.ideal_class(&a) == k.class_number());
            if let Some(g) = g {
                assert_eq!(k.principal(g).unwrap(), a);
                assert_eq!(found.len(), k.unit_count());
            }
        }
    }
}

fn binom(n: u32, r: u32) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[test]
fn irreducible_divisors_follow_the_binomial_product() {
    let mut checked = 0;
    for d in [-5, -23] {
        let k = QuadField::new(d).unwrap();
        let ord = k.ordering();
        let types: Vec<TypeVec> = enumerate_irreducible_types(ord).iter().cloned().collect();
        let primes: Vec<PrimeIdealRec> = k
            .enumerate_prime_ideals(200)
            .into_iter()
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1234 + d.unsigned_abs());
        for _ in 0..60 {
            let count = rng.random_range(1..=8);
            let mut chosen: Vec<&PrimeIdealRec> = Vec::new();
            while chosen.len() < count {
                let p = &primes[rng.random_range(0..primes.len())];
                if !chosen.iter().any(|q| q.ideal == p.ideal) {
                    chosen.push(p);
                }
            }
            // brute force over the 2^n subproducts, principality decided on ideals
            let n = chosen.len();
            let mut principal = vec![false; 1 << n];
            let mut ideal_of = vec![Ideal::UNIT; 1 << n];
            for mask in 1usize..1 << n {
                let low = mask.trailing_zeros() as usize;
                ideal_of[mask] = k.multiply(&ideal_of[mask & (mask - 1)], &chosen[low].ideal).unwrap();
                principal[mask] = k.is_principal_with_generator(&ideal_of[mask]).is_some();
            }
            let mut by_type: BTreeMap<TypeVec, u64> = BTreeMap::new();
            for mask in 1usize..1 << n {
                if !principal[mask] {
                    continue;
                }
                let mut sub = (mask - 1) & mask;
                let mut minimal = true;
                while sub > 0 {
                    if principal[sub] {
                        minimal = false;
                        break;
                    }
                    sub = (sub - 1) & mask;
                }
                if minimal {
                    let mut t = TypeVec::zero(k.class_number());
                    for (i, p) in chosen.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            t.increment(p.class_index);
                        }
                    }
                    *by_type.entry(t).or_default() += 1;
                }
            }
            let a = ideal_of[(1 << n) - 1];
            let omega = k.omega_by_class(&a).unwrap();
            let mut total = 0;
            for t in &types {
                let formula: u64 = t.counts().iter().zip(&omega).map(|(&ti, &wi)| binom(wi, ti)).product();
                assert_eq!(by_type.get(t).copied().unwrap_or(0), formula, "d = {d}, {t:?}");
                total += formula;
            }
            assert_eq!(k.nu(&a).unwrap(), total);
            checked += 1;
        }
    }
    assert!(checked >= 100);
}

struct WorkedExample {
    k: QuadField,
    m: Ideal,
    alpha: QuadElement,
    g: Ideal,
}

fn worked_example() -> WorkedExample {
    let k = QuadField::new(-23).unwrap();
    let m = Ideal::rational(3);
    let alpha = QuadElement::new(0, 1);
    let g = k.gcd_ideal(&k.principal(alpha).unwrap(), &m);
    WorkedExample { k, m, alpha, g }
}

#[test]
fn ray_class_membership_matches_congruent_generators() {
    let WorkedExample { k, m, alpha, g } = worked_example();
    let f = RayModulus::new(&k, k.exact_div(&m, &g).unwrap()).unwrap();
    let j0 = k.exact_div(&k.principal(alpha).unwrap(), &g).unwrap();
    let mut agree = 0;
    for a in ideals_up_to(&k, 500) {
        if !k.divides(&g, &a) {
            continue;
        }
        let has_congruent_generator = generators_by_search(&k, &a)
            .into_iter()
            .any(|rho| m.contains(k.ring().sub(rho, alpha)));
        let j = k.exact_div(&a, &g).unwrap();
        let in_class = match same_strict_ray_class(&k, &j, &j0, &f) {
            Ok(v) => v,
            Err(irreducibles::Error::NotCoprimeToModulus) => false,
            Err(e) => panic!("{e:?}"),
        };
        assert_eq!(has_congruent_generator, in_class, "{a:?}");
        agree += 1;
    }
    assert!(agree > 50);
}

/// Classes under pairwise comparison against one representative each.
fn ray_partition(k: &QuadField, f: &RayModulus, bound: u64) -> usize {
    let mut reps: Vec<Ideal> = Vec::new();
    for a in ideals_up_to(k, bound) {
        if !k.gcd_ideal(&a, f.ideal()).is_unit() {
            continue;
        }
        let mut found = false;
        for r in &reps {
            if same_strict_ray_class(k, &a, r, f).unwrap() {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(a);
        }
    }
    reps.len()
}

#[test]
fn ray_class_partition_has_h_times_phi_classes() {
    let WorkedExample { k, .. } = worked_example();
    let p2 = k.split_prime(3).unwrap()[1].ideal;
    let f = RayModulus::new(&k, p2).unwrap();
    let phi = ray_phi(&k, &f);
    assert_eq!(ray_partition(&k, &f, 300) as i128, 3 * phi.to_integer());

    let gauss = QuadField::new(-1).unwrap();
    let ramified = gauss.split_prime(2).unwrap()[0].ideal;
    for modulus in [ramified, Ideal::rational(2), Ideal::rational(3), Ideal::rational(5)] {
        let f = RayModulus::new(&gauss, modulus).unwrap();
        let phi = ray_phi(&gauss, &f);
        assert!(phi.is_integer());
        assert_eq!(ray_partition(&gauss, &f, 300) as i128, phi.to_integer(), "{modulus:?}");
    }
}

#[test]
fn element_and_ideal_counts_agree() {
    let WorkedExample { k, m, alpha, .. } = worked_example();
    for x in [1_000, 5_000, 10_000] {
        assert_eq!(
            count_progression_elements(&k, x, &m, alpha).unwrap(),
            count_progression_ideals(&k, x, &m, alpha).unwrap(),
            "x = {x}"
        );
    }
    let cases: [(i64, Ideal, QuadElement); 5] = [
        (-5, Ideal::rational(2), QuadElement::new(1, 0)),
        (-23, Ideal::rational(5), QuadElement::new(1, 1)),
        (-23, Ideal::rational(4), QuadElement::new(0, 1)),
        (-47, Ideal::rational(3), QuadElement::new(2, 1)),
        (-1, Ideal::rational(3), QuadElement::new(1, 1)),
    ];
    for (d, m, alpha) in cases {
        let k = QuadField::new(d).unwrap();
        for x in [500, 3_000] {
            assert_eq!(
                count_progression_elements(&k, x, &m, alpha).unwrap(),
                count_progression_ideals(&k, x, &m, alpha).unwrap(),
                "d = {d}, m = {m:?}, alpha = {alpha:?}, x = {x}"
            );
        }
    }
    for d in [-1, -5, -23] {
        let k = QuadField::new(d).unwrap();
        let one = QuadElement::ONE;
        assert_eq!(
            count_progression_elements(&k, 5_000, &Ideal::UNIT, one).unwrap(),
            count_progression_ideals(&k, 5_000, &Ideal::UNIT, one).unwrap(),
            "d = {d}"
        );
    }
}

#[test]
fn prime_counts_match_a_rational_sieve() {
    let k = QuadField::new(-23).unwrap();
    let x = 10_000u64;
    let mut want = 0;
    for p in 2..=x {
        if !(2..p).take_while(|q| q * q <= p).all(|q| p % q != 0) {
            continue;
        }
        let r = (-23i64).rem_euclid(p as i64) as u64;
        let kron = if p == 2 {
            1
        } else if r == 0 {
            0
        } else if (1..p).any(|s| s * s % p == r) {
            1
        } else {
            -1
        };
        want += match kron {
            1 => 2,
            0 => 1,
            _ => (p * p <= x) as usize,
        };
    }
    assert_eq!(k.enumerate_prime_ideals(x).len(), want);
}
