//! The polynomial `P = Σ_{τ ∈ T_max} Π x_i^{t_i}/t_i!`, its maximum `M` on
//! the simplex `{x ≥ 0, Σ x_i ≤ h}`, and the main term
//! `M·(log x / (h log log x))^D`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{inv_factorial, to_f64, Rational};
use crate::types::TypeSet;
use crate::{Error, Result};

/// Tolerance for simplex membership.
pub const SIMPLEX_TOL: f64 = 1e-12;
/// Target projected-gradient norm for each ascent run.
pub const STATIONARITY_TOL: f64 = 1e-10;
/// Largest KKT residual accepted for the reported maximizer.
pub const KKT_TOL: f64 = 1e-8;
pub const DEFAULT_RANDOM_STARTS: usize = 50;
pub const DEFAULT_SEED: u64 = 0x5eed;
const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub exponents: Vec<u32>,
    pub coeff: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialP {
    dim: usize,
    monomials: Vec<Monomial>,
    coeffs_f64: Vec<f64>,
}

/// A point of `{x ≥ 0, Σ x_i ≤ h}`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct SimplexPoint {
    x: Vec<f64>,
}

impl SimplexPoint {
    /// Checks membership in the simplex of size `h` (to [`SIMPLEX_TOL`]).
    pub fn new(x: Vec<f64>, h: f64) -> Result<Self> {
        let sum: f64 = x.iter().sum();
        if x.iter().any(|&v| !(v >= -SIMPLEX_TOL)) || sum > h + SIMPLEX_TOL {
            return Err(Error::DomainError(format!("point outside the simplex of size {h}")));
        }
        Ok(SimplexPoint { x })
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn sum(&self) -> f64 {
        self.x.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MaximizationResult {
    pub m: f64,
    pub argmax: SimplexPoint,
    pub kkt_residual: f64,
    pub restarts_used: usize,
    pub seed: u64,
}

impl PolynomialP {
    /// One monomial `Π x_i^{t_i}/t_i!` per type in the set.
    pub fn from_types(types: &TypeSet) -> Result<Self> {
        let first = types.iter().next().ok_or(Error::EmptyTypeSet)?;
        let dim = first.h();
        let monomials: Vec<Monomial> = types
            .iter()
            .map(|t| Monomial {
                exponents: t.counts().to_vec(),
                coeff: t.counts().iter().map(|&e| inv_factorial(e)).product(),
            })
            .collect();
        let coeffs_f64 = monomials.iter().map(|m| to_f64(&m.coeff)).collect();
        Ok(PolynomialP {
            dim,
            monomials,
            coeffs_f64,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Common total degree of the monomials (`D` for `T_max`).
    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.exponents.iter().sum()).max().unwrap_or(0)
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.monomials
            .iter()
            .zip(&self.coeffs_f64)
            .map(|(m, &c)| {
                m.exponents
                    .iter()
                    .zip(x)
                    .fold(c, |acc, (&e, &xi)| if e == 0 { acc } else { acc * libm::pow(xi, e as f64) })
            })
            .sum()
    }

    /// Analytic gradient.
    pub fn grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut g = vec![0.0; self.dim];
        self.grad_into(x, &mut g);
        Ok(g)
    }

    /// Row-major Hessian restricted to the coordinates in `idx`.
    fn hess_on(&self, x: &[f64], idx: &[usize]) -> Vec<f64> {
        let k = idx.len();
        let mut hm = vec![0.0; k * k];
        for (m, &c) in self.monomials.iter().zip(&self.coeffs_f64) {
            let e = &m.exponents;
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate().skip(a) {
                    let mut ex = e.clone();
                    let mut term = c;
                    for &v in &[i, j] {
                        if ex[v] == 0 {
                            term = 0.0;
                            break;
                        }
                        term *= ex[v] as f64;
                        ex[v] -= 1;
                    }
                    if term == 0.0 {
                        continue;
                    }
                    for (&ev, &xv) in ex.iter().zip(x) {
                        if ev > 0 {
                            term *= libm::pow(xv, ev as f64);
                        }
                    }
                    hm[a * k + b] += term;
                    if a != b {
                        hm[b * k + a] += term;
                    }
                }
            }
        }
        hm
    }

    fn grad_into(&self, x: &[f64], g: &mut [f64]) {
        g.iter_mut().for_each(|v| *v = 0.0);
        for (m, &c) in self.monomials.iter().zip(&self.coeffs_f64) {
            for (k, &ek) in m.exponents.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let mut term = c * ek as f64;
                for (i, (&e, &xi)) in m.exponents.iter().zip(x).enumerate() {
                    let e = if i == k { e - 1 } else { e };
                    if e > 0 {
                        term *= libm::pow(xi, e as f64);
                    }
                }
                g[k] += term;
            }
        }
    }
}

/// `P` for a set of maximal types.
pub fn build_p(t_max: &TypeSet) -> Result<PolynomialP> {
    PolynomialP::from_types(t_max)
}

/// Euclidean projection onto `{x ≥ 0, Σ x_i = s}` (sort-and-threshold).
pub fn project_to_face(v: &[f64], s: f64) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite coordinates"));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumulative += uj;
        let t = (cumulative - s) / (j + 1) as f64;
        if uj - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&vi| (vi - theta).max(0.0)).collect()
}

/// Fixed-point residual `‖x − Π(x + ∇P(x))‖_∞`, zero exactly at KKT points
/// of the face `Σ x_i = h`.
pub fn kkt_residual(p: &PolynomialP, x: &[f64], h: f64) -> Result<f64> {
    let g = p.grad(x)?;
    Ok(residual_with(x, &g, h))
}

fn residual_with(x: &[f64], g: &[f64], h: f64) -> f64 {
    let shifted: Vec<f64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
    let proj = project_to_face(&shifted, h);
    x.iter().zip(&proj).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max)
}

struct AscentRun {
    x: Vec<f64>,
    value: f64,
    residual: f64,
}

/// Solves `a·z = rhs` in place by Gaussian elimination with partial pivoting.
fn solve_dense(mut a: Vec<f64>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| libm::fabs(a[r * n + col]).total_cmp(&libm::fabs(a[s * n + col])))?;
        if libm::fabs(a[piv * n + col]) < 1e-300 {
            return None;
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            rhs.swap(piv, col);
        }
        for r in col + 1..n {
            let f = a[r * n + col] / a[col * n + col];
            if f != 0.0 {
                for c in col..n {
                    a[r * n + c] -= f * a[col * n + c];
                }
                rhs[r] -= f * rhs[col];
            }
        }
    }
    let mut z = vec![0.0; n];
    for r in (0..n).rev() {
        let tail: f64 = (r + 1..n).map(|c| a[r * n + c] * z[c]).sum();
        z[r] = (rhs[r] - tail) / a[r * n + r];
    }
    Some(z)
}

/// Newton iterations on `∇_S P = λ·1, Σ_S x = h` over the support `S` of a
/// near-stationary point. Gradient ascent crawls at degenerate maxima, where
/// `P` is flat to higher than second order; Newton still converges there.
fn polish(p: &PolynomialP, run: AscentRun, h: f64) -> AscentRun {
    let n = p.dim();
    let support: Vec<usize> = (0..n).filter(|&i| run.x[i] > 1e-9 * h).collect();
    let k = support.len();
    if k < 2 {
        return run;
    }
    let mut x = vec![0.0; n];
    for &i in &support {
        x[i] = run.x[i];
    }
    let mut g = vec![0.0; n];
    let mut best = run;
    for _ in 0..200 {
        p.grad_into(&x, &mut g);
        let lambda = support.iter().map(|&i| g[i]).sum::<f64>() / k as f64;
        let hs = p.hess_on(&x, &support);
        // bordered system [[H, -1], [1ᵀ, 0]]
        let m = k + 1;
        let mut a = vec![0.0; m * m];
        let mut rhs = vec![0.0; m];
        for r in 0..k {
            a[r * m..r * m + k].copy_from_slice(&hs[r * k..(r + 1) * k]);
            a[r * m + k] = -1.0;
            a[k * m + r] = 1.0;
            rhs[r] = -(g[support[r]] - lambda);
        }
        rhs[k] = h - support.iter().map(|&i| x[i]).sum::<f64>();
        let Some(z) = solve_dense(a, rhs) else { break };
        let mut t = 1.0;
        while support.iter().enumerate().any(|(r, &i)| x[i] + t * z[r] <= 0.0) {
            t *= 0.5;
            if t < 1e-12 {
                return best;
            }
        }
        for (r, &i) in support.iter().enumerate() {
            x[i] += t * z[r];
        }
        let value = p.eval_unchecked(&x);
        p.grad_into(&x, &mut g);
        let residual = residual_with(&x, &g, h);
        if residual < best.residual && value >= best.value - 1e-12 * best.value.abs() {
            best = AscentRun {
                x: x.clone(),
                value,
                residual,
            };
        }
        if best.residual < STATIONARITY_TOL {
            break;
        }
    }
    best
}

/// Projected gradient ascent with backtracking from one start.
fn ascend(p: &PolynomialP, start: Vec<f64>, h: f64) -> AscentRun {
    let n = p.dim();
    let mut x = project_to_face(&start, h);
    let mut fx = p.eval_unchecked(&x);
    let mut g = vec![0.0; n];
    let mut step = 1.0;
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        p.grad_into(&x, &mut g);
        residual = residual_with(&x, &g, h);
        if residual < STATIONARITY_TOL {
            break;
        }
        step *= 2.0;
        let mut accepted = None;
        while step > 1e-30 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + step * b).collect();
            let y = project_to_face(&trial, h);
            let dist2: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
            let fy = p.eval_unchecked(&y);
            if fy >= fx + 1e-4 / step * dist2 {
                accepted = Some((y, fy));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((y, fy)) => {
                let moved = y.iter().zip(&x).any(|(a, b)| a != b);
                x = y;
                fx = fy;
                if !moved {
                    p.grad_into(&x, &mut g);
                    residual = residual_with(&x, &g, h);
                    break;
                }
            }
            None => break,
        }
    }
    AscentRun { x, value: fx, residual }
}

/// Deterministic start list: the vertices `h·e_i`, the barycenter, then
/// `random_starts` uniform points of the face drawn from a seeded stream.
pub fn start_points(h: usize, random_starts: usize, seed: u64) -> Vec<Vec<f64>> {
    let hf = h as f64;
    let mut starts = Vec::with_capacity(h + 1 + random_starts);
    for i in 0..h {
        let mut v = vec![0.0; h];
        v[i] = hf;
        starts.push(v);
    }
    starts.push(vec![1.0; h]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_starts {
        // normalized exponentials are uniform on the simplex
        let e: Vec<f64> = (0..h).map(|_| -libm::log(1.0 - rng.random::<f64>())).collect();
        let total: f64 = e.iter().sum();
        starts.push(e.iter().map(|v| hf * v / total).collect());
    }
    starts
}

/// Maximum of `P` on the simplex of size `h`.
///
/// All coefficients are positive, so `P` is nondecreasing in every coordinate
/// and some maximizer lies on the face `Σ x_i = h`; the search runs there.
pub fn maximize_on_simplex(p: &PolynomialP, h: usize) -> Result<MaximizationResult> {
    maximize_on_simplex_with(p, h, DEFAULT_RANDOM_STARTS, DEFAULT_SEED)
}

pub fn maximize_on_simplex_with(p: &PolynomialP, h: usize, random_starts: usize, seed: u64) -> Result<MaximizationResult> {
    if p.monomials().is_empty() {
        return Err(Error::EmptyTypeSet);
    }
    if p.dim() != h {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: h,
        });
    }
    let hf = h as f64;
    let starts = start_points(h, random_starts, seed);
    let restarts_used = starts.len();
    let mut best: Option<AscentRun> = None;
    for start in starts {
        let mut run = ascend(p, start, hf);
        if run.residual >= STATIONARITY_TOL {
            run = polish(p, run, hf);
        }
        let better = match &best {
            None => true,
            Some(b) => run.value > b.value + 1e-12 * b.value.abs().max(1.0),
        };
        if better {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");
    let result = MaximizationResult {
        m: best.value,
        argmax: SimplexPoint { x: best.x },
        kkt_residual: best.residual,
        restarts_used,
        seed,
    };
    if !(result.kkt_residual < KKT_TOL) || !(result.m > 0.0) {
        return Err(Error::NonConvergence(alloc::boxed::Box::new(result)));
    }
    Ok(result)
}

/// `M · (log x / (h log log x))^D`, defined for `x > e^e`.
pub fn max_nu_main_term(m: f64, h: u64, d: u32, x: f64) -> Result<f64> {
    if !(x > libm::exp(core::f64::consts::E)) {
        return Err(Error::DomainError(format!("main term needs x > e^e, got {x}")));
    }
    let lx = libm::log(x);
    Ok(m * libm::pow(lx / (h as f64 * libm::log(lx)), d as f64))
}
