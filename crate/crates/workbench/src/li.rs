//! The offset logarithmic integral `Li(x) = ∫_2^x dt/log t`.

const REL_TOL: f64 = 1e-10;

fn integrand(t: f64) -> f64 {
    1.0 / t.ln()
}

fn simpson(a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = integrand(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adapt(a: f64, fa: f64, b: f64, fb: f64, m: f64, fm: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let (lm, flm, left) = simpson(a, fa, m, fm);
    let (rm, frm, right) = simpson(m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
        + adapt(m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
}

/// `∫_2^x dt/log t` by adaptive Simpson quadrature; zero for `x ≤ 2`.
pub fn li(x: f64) -> f64 {
    if x <= 2.0 {
        return 0.0;
    }
    // split geometrically so each piece has comparable relative size
    let mut total = 0.0;
    let mut a = 2.0f64;
    while a < x {
        let b = (a * 4.0).min(x);
        let (fa, fb) = (integrand(a), integrand(b));
        let (m, fm, whole) = simpson(a, fa, b, fb);
        let tol = REL_TOL * 0.1 * whole.abs();
        total += adapt(a, fa, b, fb, m, fm, whole, tol, 48);
        a = b;
    }
    total
}
