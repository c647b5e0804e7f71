//! Quick invariant suites behind `irred verify`.

use irreducibles::extremal::{build_p, maximize_on_simplex_with, DEFAULT_RANDOM_STARTS};
use irreducibles::group::FiniteAbelianGroup;
use irreducibles::quadfield::{count_progression_elements, count_progression_ideals, same_strict_ray_class};
use irreducibles::types::{davenport, enumerate_irreducible_types, maximal_types};
use irreducibles::{ClassOrdering, Error, Ideal, QuadElement, QuadField, Rational, RayModulus, TypeVec};

use crate::experiments::FieldProgression;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<String, String>) -> Outcome {
    match result {
        Ok(detail) => Outcome { name, passed: true, detail },
        Err(detail) => Outcome { name, passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

/// Small deterministic generator for sampling test inputs.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn cyclic_constants(seed: u64) -> Result<String, String> {
    for h in 2..=6u64 {
        let g = FiniteAbelianGroup::cyclic(h).map_err(e2s)?;
        let ord = ClassOrdering::canonical(&g);
        let d = davenport(&g).d;
        ensure(d as u64 == h, || format!("D(Z/{h}) = {d}"))?;
        let p = build_p(&maximal_types(&ord)).map_err(e2s)?;
        let m = maximize_on_simplex_with(&p, h as usize, DEFAULT_RANDOM_STARTS, seed).map_err(e2s)?.m;
        let want = (1..=h).fold(1.0, |acc, i| acc * h as f64 / i as f64);
        ensure((m - want).abs() <= 1e-8, || format!("M(Z/{h}) = {m}, expected {want}"))?;
    }
    Ok("D = h and M = h^h/h! for h = 2..6".into())
}

fn davenport_suite() -> Result<String, String> {
    for n in 1..=10u64 {
        let d = davenport(&FiniteAbelianGroup::cyclic(n).map_err(e2s)?).d;
        ensure(d as u64 == n, || format!("D(Z/{n}) = {d}"))?;
    }
    for (a, b) in [(2u64, 2u64), (2, 4), (3, 3), (2, 6), (4, 4)] {
        let d = davenport(&FiniteAbelianGroup::new(vec![a, b]).map_err(e2s)?).d;
        ensure(d as u64 == a + b - 1, || format!("D(Z/{a} x Z/{b}) = {d}"))?;
    }
    Ok("cyclic and small rank-two values".into())
}

fn worked_example() -> Result<String, String> {
    let k = QuadField::new(-23).map_err(e2s)?;
    ensure(k.class_group().invariant_factors() == [3], || "class group is not Z/3".into())?;
    let fp = FieldProgression::new(&k, &Ideal::rational(3), QuadElement::new(0, 1)).map_err(e2s)?;
    ensure(fp.g.norm() == 3, || format!("N(g) = {}", fp.g.norm()))?;
    ensure(fp.tau_prime == TypeVec::new(vec![1, 0, 0]), || format!("tau' = {:?}", fp.tau_prime))?;
    ensure(fp.instance.phi == Rational::from_integer(1), || format!("phi = {}", fp.instance.phi))?;
    let c = fp.constants().map_err(e2s)?;
    let maximal: Vec<_> = c.maximal_types.iter().cloned().collect();
    ensure(maximal == [TypeVec::new(vec![3, 0, 0])], || format!("maximal types {maximal:?}"))?;
    ensure(c.l == 2 && c.c_prime == Rational::new(1, 27), || format!("L = {}, C' = {}", c.l, c.c_prime))?;
    Ok("C' = 1/27, L = 2".into())
}

fn prodformula(seed: u64) -> Result<String, String> {
    let mut rng = SplitMix(seed);
    let mut checked = 0;
    for d in [-5, -23] {
        let k = QuadField::new(d).map_err(e2s)?;
        let types = enumerate_irreducible_types(k.ordering());
        let primes = k.enumerate_prime_ideals(100);
        for _ in 0..15 {
            let mut a = Ideal::UNIT;
            let mut used = Vec::new();
            for _ in 0..1 + rng.below(6) {
                let p = &primes[rng.below(primes.len())];
                if !used.contains(&p.ideal) {
                    used.push(p.ideal);
                    a = k.multiply(&a, &p.ideal).map_err(e2s)?;
                }
            }
            let omega = k.omega_by_class(&a).map_err(e2s)?;
            let formula: u64 = types
                .iter()
                .map(|t| {
                    t.counts()
                        .iter()
                        .zip(&omega)
                        .map(|(&ti, &wi)| binomial(wi as u64, ti as u64))
                        .product::<u64>()
                })
                .sum();
            let nu = k.nu(&a).map_err(e2s)?;
            ensure(nu == formula, || format!("d = {d}, {a:?}: nu {nu} vs formula {formula}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} squarefree ideals"))
}

fn binomial(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dual_path() -> Result<String, String> {
    let mut cases = vec![(-23, Ideal::rational(3), QuadElement::new(0, 1))];
    for d in [-1, -5, -23] {
        cases.push((d, Ideal::UNIT, QuadElement::ONE));
    }
    for (d, m, alpha) in cases {
        let k = QuadField::new(d).map_err(e2s)?;
        let a = count_progression_elements(&k, 2000, &m, alpha).map_err(e2s)?;
        let b = count_progression_ideals(&k, 2000, &m, alpha).map_err(e2s)?;
        ensure(a == b, || format!("d = {d}, {m:?}: elements {a}, ideals {b}"))?;
    }
    Ok("element and ideal counts agree at x = 2000".into())
}

fn ray_classes() -> Result<String, String> {
    let k = QuadField::new(-23).map_err(e2s)?;
    let m = Ideal::rational(3);
    let alpha = QuadElement::new(0, 1);
    let fp = FieldProgression::new(&k, &m, alpha).map_err(e2s)?;
    let j0 = k.exact_div(&k.principal(alpha).map_err(e2s)?, &fp.g).map_err(e2s)?;
    let f: &RayModulus = &fp.f;
    let mut checked = 0;
    for x in -30i64..=30 {
        for y in -10i64..=10 {
            let rho = QuadElement::new(x, y);
            if rho.is_zero() || k.element_norm(rho) > 300 {
                continue;
            }
            let a = k.principal(rho).map_err(e2s)?;
            if !k.divides(&fp.g, &a) {
                continue;
            }
            let j = k.exact_div(&a, &fp.g).map_err(e2s)?;
            let congruent = k.units().iter().any(|&u| m.contains(k.ring().sub(k.mul(u, rho), alpha)));
            let same = match same_strict_ray_class(&k, &j, &j0, f) {
                Ok(v) => v,
                Err(Error::NotCoprimeToModulus) => false,
                Err(e) => return Err(e.to_string()),
            };
            ensure(congruent == same, || format!("{rho:?}: congruent {congruent}, ray class {same}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} principal ideals"))
}

fn class_law(seed: u64) -> Result<String, String> {
    let mut rng = SplitMix(seed ^ 0xc1a55);
    for d in [-23, -47, -65] {
        let k = QuadField::new(d).map_err(e2s)?;
        let primes = k.enumerate_prime_ideals(300);
        for _ in 0..500 {
            let p = &primes[rng.below(primes.len())];
            let q = &primes[rng.below(primes.len())];
            let pq = k.multiply(&p.ideal, &q.ideal).map_err(e2s)?;
            let want = k
                .class_group()
                .add(k.class_element(&p.ideal), k.class_element(&q.ideal))
                .map_err(e2s)?;
            ensure(k.class_element(&pq) == &want, || format!("d = {d}: {:?} * {:?}", p.ideal, q.ideal))?;
        }
    }
    Ok("class of products".into())
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    vec![
        outcome("cyclic_constants", cyclic_constants(seed)),
        outcome("davenport", davenport_suite()),
        outcome("worked_example", worked_example()),
        outcome("prodformula", prodformula(seed)),
        outcome("ray_classes", ray_classes()),
        outcome("dual_path", dual_path()),
        outcome("class_law", class_law(seed)),
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_suites_pass() {
        for o in super::run_all(1) {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }
}
