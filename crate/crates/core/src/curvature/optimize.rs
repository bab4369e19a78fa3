//! Constrained optimization of sectional values over orthonormal pairs.
//!
//! The Bishop-Goldberg strata are parametrized by `θ = arccos⟨X,JY⟩`: given
//! a unit `X` and a unit `W ⊥ X, JX`, the vector
//! `Y = −cosθ·JX + sinθ·W` is a unit vector with `⟨X,Y⟩ = 0` and
//! `⟨X,JY⟩ = cosθ`. The degenerate stratum `θ = 0` forces `Y = −JX`, where
//! the objective reduces to the holomorphic value `H(X)`.
//!
//! Optimization is projected gradient ascent/descent with backtracking line
//! search and random restarts; gradients are analytic single-slot
//! contractions of the tensor.

use super::tensor::{ComplexStructure, CurvatureTensor};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct OptimizeConfig {
    pub restarts: usize,
    /// Tolerance for bound membership.
    pub tol: f64,
    /// Convergence threshold on the projected gradient norm.
    pub grad_tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        OptimizeConfig {
            restarts: 64,
            tol: 1e-7,
            grad_tol: 1e-10,
            max_iters: 600,
            seed: 0,
        }
    }
}

/// Result of one stratum `θ = arccos⟨X,JY⟩`.
#[derive(Debug, Clone)]
pub struct StratumReport {
    pub theta: f64,
    pub found_min: f64,
    pub found_max: f64,
    /// `−(1 − (3/4)λ sin²θ)` from Eq. (2.9)
    pub lower_bound: f64,
    /// `−(1/4)(3(1+cos²θ)λ − 2)` from Eq. (2.9)
    pub upper_bound: f64,
    pub within_bounds: bool,
    pub grad_norm: f64,
    pub witness_min: (Vec<f64>, Vec<f64>),
    pub witness_max: (Vec<f64>, Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct PinchReport {
    pub lambda: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub sec_min: f64,
    pub sec_max: f64,
    pub strata: Vec<StratumReport>,
    /// Eq. (2.10): `−1 − tol ≤ R̄ ≤ −(3λ−2)/4 + tol` over all pairs found.
    pub global_bounds_hold: bool,
    /// For `λ ≥ 2/3`: sectional δ-pinching with `δ = (3λ−2)/4`.
    pub delta_pinched: Option<bool>,
    pub restarts: usize,
    pub converged: bool,
}

impl PinchReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.global_bounds_hold
            && self.strata.iter().all(|s| s.within_bounds)
            && self.delta_pinched.unwrap_or(true)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn normalize(v: &mut [f64]) {
    let n = norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

/// Standard normal sample via Box-Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
    normalize(&mut v);
    v
}

/// Contraction with one free slot: `out[a] = R(..., e_a, ...)` where the
/// other three slots are fixed to `u, v, w` in slot order.
fn contract_free(r: &CurvatureTensor<f64>, free: usize, u: &[f64], v: &[f64], w: &[f64]) -> Vec<f64> {
    let n = r.dim();
    let mut out = vec![0.0; n];
    let slot = |a: usize, pos: usize| -> f64 {
        // value of the fixed vector occupying position `pos` skipping `free`
        let vecs = [u, v, w];
        vecs[pos][a]
    };
    let _ = slot;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let c = *r.get(i, j, k, l);
                    if c == 0.0 {
                        continue;
                    }
                    let idx = [i, j, k, l];
                    let mut fixed = [0usize; 3];
                    let mut t = 0;
                    for (pos, id) in idx.iter().enumerate() {
                        if pos != free {
                            fixed[t] = *id;
                            t += 1;
                        }
                    }
                    let prod = c * u[fixed[0]] * v[fixed[1]] * w[fixed[2]];
                    out[idx[free]] += prod;
                }
            }
        }
    }
    out
}

/// Applies `J` to an `f64` vector.
fn j_apply(j: &ComplexStructure, x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (col, xc) in x.iter().enumerate() {
        let (row, sign) = j.image_of_basis(col);
        out[row] = sign as f64 * xc;
    }
    out
}

/// `Jᵀ v = −J v` for our orthogonal `J`.
fn jt_apply(j: &ComplexStructure, v: &[f64]) -> Vec<f64> {
    j_apply(j, v).iter().map(|x| -x).collect()
}

/// Holomorphic objective and gradient: `H(X) = R(X,JX,JX,X)`.
fn h_value_grad(
    r: &CurvatureTensor<f64>,
    j: &ComplexStructure,
    x: &[f64],
) -> (f64, Vec<f64>) {
    let jx = j_apply(j, x);
    let value = r.eval(x, &jx, &jx, x);
    let v1 = contract_free(r, 0, &jx, &jx, x);
    let v2 = contract_free(r, 1, x, &jx, x);
    let v3 = contract_free(r, 2, x, &jx, x);
    let v4 = contract_free(r, 3, x, &jx, &jx);
    let mut grad = v1;
    axpy(&mut grad, 1.0, &jt_apply(j, &v2));
    axpy(&mut grad, 1.0, &jt_apply(j, &v3));
    axpy(&mut grad, 1.0, &v4);
    (value, grad)
}

/// Maximizes (or minimizes) `H(X)` over the unit sphere. Returns
/// `(value, witness, projected gradient norm)`.
pub fn optimize_holomorphic(
    r: &CurvatureTensor<f64>,
    j: &ComplexStructure,
    maximize: bool,
    cfg: &OptimizeConfig,
) -> (f64, Vec<f64>, f64) {
    let n = r.dim();
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0001);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_x = vec![0.0; n];
    let mut best_grad = f64::INFINITY;
    for restart in 0..cfg.restarts.max(1) {
        let mut x = if restart < n {
            let mut e = vec![0.0; n];
            e[restart] = 1.0;
            e
        } else {
            random_unit(&mut rng, n)
        };
        let mut step = 0.5;
        let mut gnorm = f64::INFINITY;
        for _ in 0..cfg.max_iters {
            let (f, g) = h_value_grad(r, j, &x);
            let mut pg: Vec<f64> = g.iter().map(|v| sign * v).collect();
            let along = dot(&pg, &x);
            axpy(&mut pg, -along, &x);
            gnorm = norm(&pg);
            if gnorm < cfg.grad_tol {
                break;
            }
            // backtracking line search on the sphere
            let mut t = step;
            let mut improved = false;
            for _ in 0..40 {
                let mut cand = x.clone();
                axpy(&mut cand, t, &pg);
                normalize(&mut cand);
                let (fc, _) = h_value_grad(r, j, &cand);
                if sign * fc > sign * f + 0.25 * t * gnorm * gnorm {
                    x = cand;
                    improved = true;
                    step = (t * 1.5).min(1.0);
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let (f, _) = h_value_grad(r, j, &x);
        if sign * f > sign * best_val || best_val == f64::NEG_INFINITY {
            best_val = f;
            best_x = x;
            best_grad = gnorm;
        }
    }
    (best_val, best_x, best_grad)
}

/// Objective and gradients on a stratum: `Y = −cosθ·JX + sinθ·W`,
/// `f = R(X,Y,Y,X)` as a function of `(X, W)`.
fn stratum_value_grads(
    r: &CurvatureTensor<f64>,
    j: &ComplexStructure,
    theta: f64,
    x: &[f64],
    w: &[f64],
) -> (f64, Vec<f64>, Vec<f64>) {
    let (ct, st) = (theta.cos(), theta.sin());
    let jx = j_apply(j, x);
    let mut y = vec![0.0; x.len()];
    axpy(&mut y, -ct, &jx);
    axpy(&mut y, st, w);
    let value = r.eval(x, &y, &y, x);
    let c0 = contract_free(r, 0, &y, &y, x);
    let c3 = contract_free(r, 3, x, &y, &y);
    let m1 = contract_free(r, 1, x, &y, x);
    let m2 = contract_free(r, 2, x, &y, x);
    let mut msum = m1;
    axpy(&mut msum, 1.0, &m2);
    // dX = c0 + c3 − cosθ·Jᵀ(msum)
    let mut dx = c0;
    axpy(&mut dx, 1.0, &c3);
    axpy(&mut dx, -ct, &jt_apply(j, &msum));
    // dW = sinθ·msum
    let dw: Vec<f64> = msum.iter().map(|v| st * v).collect();
    (value, dx, dw)
}

fn project_w(j: &ComplexStructure, x: &[f64], w: &mut Vec<f64>) {
    let jx = j_apply(j, x);
    let a = dot(w, x);
    axpy(w, -a, x);
    let b = dot(w, &jx);
    axpy(w, -b, &jx);
    normalize(w);
}

/// Optimizes `R̄(X,Y)` on the stratum of fixed `θ`. Returns
/// `(value, X, Y, projected gradient norm)`.
#[allow(clippy::type_complexity)]
pub fn optimize_stratum(
    r: &CurvatureTensor<f64>,
    j: &ComplexStructure,
    theta: f64,
    maximize: bool,
    cfg: &OptimizeConfig,
) -> (f64, Vec<f64>, Vec<f64>, f64) {
    let n = r.dim();
    if theta.sin().abs() < 1e-12 {
        // Degenerate stratum: Y = ±JX is forced; the objective is H(X).
        let (v, x, g) = optimize_holomorphic(r, j, maximize, cfg);
        let y: Vec<f64> = j_apply(j, &x).iter().map(|t| -t).collect();
        return (v, x, y, g);
    }
    let sign = if maximize { 1.0 } else { -1.0 };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0002 ^ theta.to_bits());
    let mut best = f64::NEG_INFINITY;
    let mut best_x = vec![0.0; n];
    let mut best_w = vec![0.0; n];
    let mut best_grad = f64::INFINITY;
    for _ in 0..cfg.restarts.max(1) {
        let mut x = random_unit(&mut rng, n);
        let mut w = random_unit(&mut rng, n);
        project_w(j, &x, &mut w);
        if norm(&w) < 0.5 {
            continue;
        }
        let mut step = 0.5;
        let mut gnorm = f64::INFINITY;
        for _ in 0..cfg.max_iters {
            let (f, dx, dw) = stratum_value_grads(r, j, theta, &x, &w);
            let mut px: Vec<f64> = dx.iter().map(|v| sign * v).collect();
            let along = dot(&px, &x);
            axpy(&mut px, -along, &x);
            let jx = j_apply(j, &x);
            let mut pw: Vec<f64> = dw.iter().map(|v| sign * v).collect();
            let aw = dot(&pw, &w);
            axpy(&mut pw, -aw, &w);
            let ax = dot(&pw, &x);
            axpy(&mut pw, -ax, &x);
            let ajx = dot(&pw, &jx);
            axpy(&mut pw, -ajx, &jx);
            gnorm = (dot(&px, &px) + dot(&pw, &pw)).sqrt();
            if gnorm < cfg.grad_tol {
                break;
            }
            let mut t = step;
            let mut improved = false;
            for _ in 0..40 {
                let mut cx = x.clone();
                axpy(&mut cx, t, &px);
                normalize(&mut cx);
                let mut cw = w.clone();
                axpy(&mut cw, t, &pw);
                project_w(j, &cx, &mut cw);
                if norm(&cw) < 0.5 {
                    t *= 0.5;
                    continue;
                }
                let (fc, _, _) = stratum_value_grads(r, j, theta, &cx, &cw);
                if sign * fc > sign * f + 0.25 * t * gnorm * gnorm {
                    x = cx;
                    w = cw;
                    improved = true;
                    step = (t * 1.5).min(1.0);
                    break;
                }
                t *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let (f, _, _) = stratum_value_grads(r, j, theta, &x, &w);
        if sign * f > sign * best || best == f64::NEG_INFINITY {
            best = f;
            best_x = x;
            best_w = w;
            best_grad = gnorm;
        }
    }
    let (ct, st) = (theta.cos(), theta.sin());
    let jx = j_apply(j, &best_x);
    let mut y = vec![0.0; n];
    axpy(&mut y, -ct, &jx);
    axpy(&mut y, st, &best_w);
    (best, best_x, y, best_grad)
}

/// Verifies the Bishop-Goldberg bounds (Lemma 2.3) on the strata
/// `θ ∈ {0, π/8, π/4, 3π/8, π/2}`, the θ-free bounds of Eq. (2.10), and
/// (for `λ ≥ 2/3`) the sectional `δ = (3λ−2)/4` pinching consequence.
pub fn verify_bishop_goldberg(
    r: &CurvatureTensor<f64>,
    j: &ComplexStructure,
    lambda: f64,
    cfg: &OptimizeConfig,
) -> PinchReport {
    let thetas: Vec<f64> = (0..=4)
        .map(|i| i as f64 * std::f64::consts::FRAC_PI_8)
        .collect();
    let mut strata = Vec::new();
    let mut sec_min = f64::INFINITY;
    let mut sec_max = f64::NEG_INFINITY;
    let mut h_min = f64::INFINITY;
    let mut h_max = f64::NEG_INFINITY;
    let mut converged = true;
    for theta in thetas {
        let (lo, xlo, ylo, glo) = optimize_stratum(r, j, theta, false, cfg);
        let (hi, xhi, yhi, ghi) = optimize_stratum(r, j, theta, true, cfg);
        let s2 = theta.sin().powi(2);
        let c2 = theta.cos().powi(2);
        let lower_bound = -(1.0 - 0.75 * lambda * s2);
        let upper_bound = -0.25 * (3.0 * (1.0 + c2) * lambda - 2.0);
        let within = lo >= lower_bound - cfg.tol && hi <= upper_bound + cfg.tol;
        if theta == 0.0 {
            h_min = lo;
            h_max = hi;
        }
        sec_min = sec_min.min(lo);
        sec_max = sec_max.max(hi);
        converged &= glo <= 1e-6 && ghi <= 1e-6;
        strata.push(StratumReport {
            theta,
            found_min: lo,
            found_max: hi,
            lower_bound,
            upper_bound,
            within_bounds: within,
            grad_norm: glo.max(ghi),
            witness_min: (xlo, ylo),
            witness_max: (xhi, yhi),
        });
    }
    let global_bounds_hold =
        sec_min >= -1.0 - cfg.tol && sec_max <= -0.25 * (3.0 * lambda - 2.0) + cfg.tol;
    let delta_pinched = if lambda >= 2.0 / 3.0 {
        let delta = 0.25 * (3.0 * lambda - 2.0);
        Some(sec_max <= -delta + cfg.tol && sec_min >= -1.0 - cfg.tol)
    } else {
        None
    };
    PinchReport {
        lambda,
        h_min,
        h_max,
        sec_min,
        sec_max,
        strata,
        global_bounds_hold,
        delta_pinched,
        restarts: cfg.restarts,
        converged,
    }
}
