use irreducibles::extremal::{build_p, maximize_on_simplex, project_to_face, max_nu_main_term};
use irreducibles::group::FiniteAbelianGroup;
use irreducibles::types::{davenport, maximal_types};
use irreducibles::ClassOrdering;

fn groups_up_to_8() -> Vec<FiniteAbelianGroup> {
    let mut out: Vec<_> = (1..=8).map(|n| FiniteAbelianGroup::cyclic(n).unwrap()).collect();
    for f in [vec![2, 2], vec![2, 4], vec![2, 2, 2]] {
        out.push(FiniteAbelianGroup::new(f).unwrap());
    }
    out
}

/// Compositions of `n` into `k` nonnegative parts.
fn compositions(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(left: usize, k: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if buf.len() + 1 == k {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for v in 0..=left {
            buf.push(v);
            go(left - v, k, buf, f);
            buf.pop();
        }
    }
    go(n, k, &mut Vec::with_capacity(k), f);
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

#[test]
fn cyclic_maximum_is_h_pow_h_over_h_factorial() {
    for h in 2..=6u64 {
        let ord = ClassOrdering::canonical(&FiniteAbelianGroup::cyclic(h).unwrap());
        let p = build_p(&maximal_types(&ord)).unwrap();
        let r = maximize_on_simplex(&p, h as usize).unwrap();
        let want = (h as f64).powi(h as i32) / factorial(h);
        assert!((r.m - want).abs() <= 1e-8, "h = {h}: {} vs {want}", r.m);
    }
}

#[test]
fn gradient_matches_central_differences() {
    for g in groups_up_to_8() {
        let h = g.order() as usize;
        let ord = ClassOrdering::canonical(&g);
        let p = build_p(&maximal_types(&ord)).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..20 {
            let x: Vec<f64> = (0..h)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    0.2 + (state >> 11) as f64 / (1u64 << 53) as f64 * 1.6
                })
                .collect();
            let grad = p.grad(&x).unwrap();
            for i in 0..h {
                let step = 1e-5 * x[i].max(1.0);
                let mut up = x.clone();
                let mut down = x.clone();
                up[i] += step;
                down[i] -= step;
                let fd = (p.eval(&up).unwrap() - p.eval(&down).unwrap()) / (2.0 * step);
                let scale = grad[i].abs().max(1e-8 * p.eval(&x).unwrap().abs()).max(1e-300);
                assert!(((fd - grad[i]) / scale).abs() <= 1e-5, "{g:?} coord {i}: {fd} vs {}", grad[i]);
            }
        }
    }
}

#[test]
fn maximum_dominates_a_grid() {
    for g in groups_up_to_8() {
        let h = g.order() as usize;
        let ord = ClassOrdering::canonical(&g);
        let p = build_p(&maximal_types(&ord)).unwrap();
        let r = maximize_on_simplex(&p, h).unwrap();
        let n = if h <= 4 { 24 } else { 8 };
        let mut worst = f64::NEG_INFINITY;
        compositions(n, h, &mut |c| {
            let x: Vec<f64> = c.iter().map(|&v| v as f64 * h as f64 / n as f64).collect();
            worst = worst.max(p.eval(&x).unwrap());
        });
        assert!(worst <= r.m * (1.0 + 1e-12), "{g:?}: grid {worst} above {}", r.m);
        let s: f64 = r.argmax.coords().iter().sum();
        assert!((s - h as f64).abs() < 1e-9);
    }
}

#[test]
fn klein_four_maximum() {
    let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    let ord = ClassOrdering::canonical(&g);
    let p = build_p(&maximal_types(&ord)).unwrap();
    let r = maximize_on_simplex(&p, 4).unwrap();
    assert!((r.m - 64.0 / 27.0).abs() < 1e-9);
    assert_eq!(davenport(&g).d, p.degree());
}

#[test]
fn projection_lands_on_the_face() {
    let v = [3.0, -1.0, 0.5, 2.0];
    let x = project_to_face(&v, 2.0);
    assert!((x.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    assert!(x.iter().all(|&c| c >= 0.0));
    assert!(max_nu_main_term(4.5, 3, 3, 1e6).unwrap() > 0.0);
}
