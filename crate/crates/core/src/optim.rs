//! Classical optimizers behind a single objective interface.
//!
//! Three minimizers cover the stochastic, derivative-free, and gradient-based
//! roles: SPSA with the classic gain schedule, a Nelder-Mead simplex, and
//! BFGS driven by central finite-difference gradients. All of them report
//! through [`OptimizerResult`] and track the best point actually evaluated,
//! so the reported value is never worse than the evaluated start.
//!
//! Evaluation counting is part of the contract: SPSA spends exactly
//! `2 * max_iter + 1` evaluations (one on the start point, two per
//! iteration), and the finite-difference gradient spends `2 * arity`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A deterministic objective with an evaluation counter.
pub struct Objective<'a> {
    arity: usize,
    n_evaluations: u64,
    f: Box<dyn FnMut(&[f64]) -> f64 + 'a>,
}

impl<'a> Objective<'a> {
    pub fn new<F: FnMut(&[f64]) -> f64 + 'a>(arity: usize, f: F) -> Objective<'a> {
        Objective { arity, n_evaluations: 0, f: Box::new(f) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn n_evaluations(&self) -> u64 {
        self.n_evaluations
    }

    pub fn eval(&mut self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.arity);
        self.n_evaluations += 1;
        (self.f)(x)
    }
}

/// Outcome of a minimization run. `best_value` is the objective value that
/// was actually evaluated at `best_parameters`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerResult {
    pub best_parameters: Vec<f64>,
    pub best_value: f64,
    pub n_evaluations: u64,
    pub n_iterations: u64,
    pub converged: bool,
    /// Best value seen up to each iteration; non-increasing.
    pub trace: Vec<f64>,
}

/// Records the best evaluated point across an optimizer run.
struct BestTracker {
    x: Vec<f64>,
    value: f64,
}

impl BestTracker {
    fn new(x: &[f64], value: f64) -> BestTracker {
        BestTracker { x: x.to_vec(), value }
    }

    fn observe(&mut self, x: &[f64], value: f64) {
        if value < self.value {
            self.x.clear();
            self.x.extend_from_slice(x);
            self.value = value;
        }
    }
}

/// SPSA gains `a_k = a / (k+1)^alpha`, `c_k = c / (k+1)^gamma` with the
/// classic published exponents.
#[derive(Debug, Clone)]
pub struct SpsaConfig {
    pub a: f64,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for SpsaConfig {
    fn default() -> SpsaConfig {
        SpsaConfig { a: 0.1, c: 0.1, alpha: 0.602, gamma: 0.101, max_iter: 200, seed: 0 }
    }
}

/// Simultaneous-perturbation stochastic approximation with Rademacher
/// perturbations: two evaluations per iteration regardless of dimension,
/// plus one on the start point.
pub fn spsa(f: &mut Objective, x0: &[f64], cfg: &SpsaConfig) -> Result<OptimizerResult> {
    if x0.len() != f.arity() || f.arity() == 0 {
        return Err(Error::InvalidConfig(format!(
            "objective arity {} vs start point of length {}",
            f.arity(),
            x0.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = x0.len();
    let mut x = x0.to_vec();

    let f0 = f.eval(&x);
    if !f0.is_finite() {
        return Err(Error::Diverged("objective not finite at start point".into()));
    }
    let mut best = BestTracker::new(&x, f0);
    let mut trace = Vec::with_capacity(cfg.max_iter);

    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for k in 0..cfg.max_iter {
        let ak = cfg.a / libm::pow(k as f64 + 1.0, cfg.alpha);
        let ck = cfg.c / libm::pow(k as f64 + 1.0, cfg.gamma);
        let delta: Vec<f64> = (0..n)
            .map(|_| if rng.next_u32() & 1 == 0 { 1.0 } else { -1.0 })
            .collect();
        for i in 0..n {
            plus[i] = x[i] + ck * delta[i];
            minus[i] = x[i] - ck * delta[i];
        }
        let fp = f.eval(&plus);
        let fm = f.eval(&minus);
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::Diverged(format!("objective not finite at iteration {k}")));
        }
        best.observe(&plus, fp);
        best.observe(&minus, fm);
        let scale = (fp - fm) / (2.0 * ck);
        for i in 0..n {
            x[i] -= ak * scale / delta[i];
        }
        trace.push(best.value);
    }

    Ok(OptimizerResult {
        best_parameters: best.x,
        best_value: best.value,
        n_evaluations: f.n_evaluations(),
        n_iterations: cfg.max_iter as u64,
        converged: true,
        trace,
    })
}

#[derive(Debug, Clone)]
pub struct NelderMeadConfig {
    pub tol_f: f64,
    pub tol_x: f64,
    pub max_evals: u64,
    /// Offset used to build the initial simplex around the start point.
    pub init_step: f64,
}

impl Default for NelderMeadConfig {
    fn default() -> NelderMeadConfig {
        NelderMeadConfig { tol_f: 1e-10, tol_x: 1e-8, max_evals: 3000, init_step: 0.1 }
    }
}

/// Nelder-Mead simplex with standard reflect/expand/contract/shrink moves.
/// Converges when both the f-spread and the simplex diameter fall under
/// their tolerances; exceeding `max_evals` returns the best vertex with
/// `converged = false`.
pub fn nelder_mead(f: &mut Objective, x0: &[f64], cfg: &NelderMeadConfig) -> Result<OptimizerResult> {
    if x0.len() != f.arity() || f.arity() == 0 {
        return Err(Error::InvalidConfig(format!(
            "objective arity {} vs start point of length {}",
            f.arity(),
            x0.len()
        )));
    }
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += cfg.init_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = Vec::with_capacity(n + 1);
    for v in &simplex {
        values.push(f.eval(v));
    }
    let mut best = BestTracker::new(&simplex[0], values[0]);
    for (v, &fv) in simplex.iter().zip(values.iter()) {
        best.observe(v, fv);
    }

    let mut trace = Vec::new();
    let mut iterations = 0u64;
    let mut converged = false;

    loop {
        // Sort vertices by value, best first.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(core::cmp::Ordering::Equal));
        let reordered: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let revalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reordered;
        values = revalues;

        let spread = values[n] - values[0];
        let diameter = simplex[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(simplex[0].iter())
                    .map(|(a, b)| libm::fabs(a - b))
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if spread < cfg.tol_f && diameter < cfg.tol_x {
            converged = true;
            break;
        }
        if f.n_evaluations() + 2 > cfg.max_evals {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|i| simplex[..n].iter().map(|v| v[i]).sum::<f64>() / n as f64)
            .collect();
        let worst = values[n];
        let second_worst = values[n - 1];

        let reflected: Vec<f64> = (0..n).map(|i| 2.0 * centroid[i] - simplex[n][i]).collect();
        let f_reflected = f.eval(&reflected);
        best.observe(&reflected, f_reflected);

        if f_reflected < values[0] {
            // Try expanding past the reflection.
            let expanded: Vec<f64> = (0..n).map(|i| 3.0 * centroid[i] - 2.0 * simplex[n][i]).collect();
            let f_expanded = f.eval(&expanded);
            best.observe(&expanded, f_expanded);
            if f_expanded < f_reflected {
                simplex[n] = expanded;
                values[n] = f_expanded;
            } else {
                simplex[n] = reflected;
                values[n] = f_reflected;
            }
        } else if f_reflected < second_worst {
            simplex[n] = reflected;
            values[n] = f_reflected;
        } else {
            let outside = f_reflected < worst;
            let contracted: Vec<f64> = if outside {
                (0..n).map(|i| centroid[i] + 0.5 * (reflected[i] - centroid[i])).collect()
            } else {
                (0..n).map(|i| centroid[i] + 0.5 * (simplex[n][i] - centroid[i])).collect()
            };
            let f_contracted = f.eval(&contracted);
            best.observe(&contracted, f_contracted);
            let accept = if outside { f_contracted <= f_reflected } else { f_contracted < worst };
            if accept {
                simplex[n] = contracted;
                values[n] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                if f.n_evaluations() + n as u64 > cfg.max_evals {
                    break;
                }
                for k in 1..=n {
                    for i in 0..n {
                        simplex[k][i] = simplex[0][i] + 0.5 * (simplex[k][i] - simplex[0][i]);
                    }
                    values[k] = f.eval(&simplex[k]);
                    best.observe(&simplex[k], values[k]);
                }
            }
        }
        trace.push(best.value);
    }

    Ok(OptimizerResult {
        best_parameters: best.x,
        best_value: best.value,
        n_evaluations: f.n_evaluations(),
        n_iterations: iterations,
        converged,
        trace,
    })
}

#[derive(Debug, Clone)]
pub struct FdBfgsConfig {
    pub fd_step: f64,
    pub gtol: f64,
    pub max_iter: usize,
    /// Hard cap on objective evaluations; the run stops (not converged)
    /// before an evaluation would exceed it.
    pub max_evals: u64,
}

impl Default for FdBfgsConfig {
    fn default() -> FdBfgsConfig {
        FdBfgsConfig { fd_step: 1e-6, gtol: 1e-8, max_iter: 200, max_evals: u64::MAX }
    }
}

/// Central finite differences: `2 * arity` evaluations.
pub fn finite_difference_gradient(f: &mut Objective, x: &[f64], step: f64) -> Vec<f64> {
    let n = x.len();
    let mut grad = vec![0.0; n];
    let mut probe = x.to_vec();
    for i in 0..n {
        probe[i] = x[i] + step;
        let fp = f.eval(&probe);
        probe[i] = x[i] - step;
        let fm = f.eval(&probe);
        probe[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * step);
    }
    grad
}

fn norm2(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// BFGS with central finite-difference gradients and a backtracking line
/// search under the sufficient-decrease condition. A failed line search
/// returns the best point so far with `converged = false`.
pub fn fd_bfgs(f: &mut Objective, x0: &[f64], cfg: &FdBfgsConfig) -> Result<OptimizerResult> {
    if x0.len() != f.arity() || f.arity() == 0 {
        return Err(Error::InvalidConfig(format!(
            "objective arity {} vs start point of length {}",
            f.arity(),
            x0.len()
        )));
    }
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f.eval(&x);
    let mut best = BestTracker::new(&x, fx);
    let mut trace = Vec::new();

    if f.n_evaluations() + 2 * n as u64 > cfg.max_evals {
        return Ok(OptimizerResult {
            best_parameters: best.x,
            best_value: best.value,
            n_evaluations: f.n_evaluations(),
            n_iterations: 0,
            converged: false,
            trace,
        });
    }

    // Inverse Hessian approximation, row-major.
    let mut h = vec![0.0; n * n];
    for i in 0..n {
        h[i * n + i] = 1.0;
    }
    let mut grad = finite_difference_gradient(f, &x, cfg.fd_step);

    let mut converged = false;
    let mut iterations = 0u64;

    for _ in 0..cfg.max_iter {
        if norm2(&grad) < cfg.gtol {
            converged = true;
            break;
        }
        // A productive iteration needs a line search plus one more gradient.
        if f.n_evaluations() + 2 * n as u64 + 1 > cfg.max_evals {
            break;
        }
        iterations += 1;

        // Search direction d = -H g.
        let mut d = vec![0.0; n];
        for i in 0..n {
            d[i] = -(0..n).map(|j| h[i * n + j] * grad[j]).sum::<f64>();
        }
        let mut slope: f64 = d.iter().zip(grad.iter()).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            // Not a descent direction; reset to steepest descent.
            for i in 0..n {
                h[i * n + i] = 1.0;
                for j in 0..n {
                    if i != j {
                        h[i * n + j] = 0.0;
                    }
                }
                d[i] = -grad[i];
            }
            slope = -grad.iter().map(|g| g * g).sum::<f64>();
        }

        // Backtracking Armijo line search.
        let mut t = 1.0;
        let mut x_new = vec![0.0; n];
        let mut f_new = f64::INFINITY;
        let mut ok = false;
        for _ in 0..40 {
            if f.n_evaluations() >= cfg.max_evals {
                break;
            }
            for i in 0..n {
                x_new[i] = x[i] + t * d[i];
            }
            f_new = f.eval(&x_new);
            best.observe(&x_new, f_new);
            if f_new.is_finite() && f_new <= fx + 1e-4 * t * slope {
                ok = true;
                break;
            }
            t *= 0.5;
        }
        if !ok {
            break;
        }
        if f.n_evaluations() + 2 * n as u64 > cfg.max_evals {
            break;
        }

        let grad_new = finite_difference_gradient(f, &x_new, cfg.fd_step);
        let s: Vec<f64> = (0..n).map(|i| x_new[i] - x[i]).collect();
        let y: Vec<f64> = (0..n).map(|i| grad_new[i] - grad[i]).collect();
        let sy: f64 = s.iter().zip(y.iter()).map(|(a, b)| a * b).sum();

        if sy > 1e-12 * norm2(&s) * norm2(&y) {
            // H <- (I - s y^T / sy) H (I - y s^T / sy) + s s^T / sy
            let rho = 1.0 / sy;
            let mut hy = vec![0.0; n];
            for i in 0..n {
                hy[i] = (0..n).map(|j| h[i * n + j] * y[j]).sum();
            }
            let yhy: f64 = y.iter().zip(hy.iter()).map(|(a, b)| a * b).sum();
            let mut new_h = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    new_h[i * n + j] = h[i * n + j] - rho * (s[i] * hy[j] + hy[i] * s[j])
                        + rho * rho * yhy * s[i] * s[j]
                        + rho * s[i] * s[j];
                }
            }
            h = new_h;
        }

        x = x_new;
        fx = f_new;
        grad = grad_new;
        trace.push(best.value);
    }

    if !converged && norm2(&grad) < cfg.gtol {
        converged = true;
    }

    Ok(OptimizerResult {
        best_parameters: best.x,
        best_value: best.value,
        n_evaluations: f.n_evaluations(),
        n_iterations: iterations,
        converged,
        trace,
    })
}

/// Optimizer selection plus hyperparameters, the pluggable interface used by
/// the adaptive loops and the front end.
#[derive(Debug, Clone)]
pub enum OptimizerKind {
    Spsa(SpsaConfig),
    NelderMead(NelderMeadConfig),
    FdBfgs(FdBfgsConfig),
}

impl OptimizerKind {
    pub fn minimize(&self, f: &mut Objective, x0: &[f64]) -> Result<OptimizerResult> {
        match self {
            OptimizerKind::Spsa(cfg) => spsa(f, x0, cfg),
            OptimizerKind::NelderMead(cfg) => nelder_mead(f, x0, cfg),
            OptimizerKind::FdBfgs(cfg) => fd_bfgs(f, x0, cfg),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OptimizerKind::Spsa(_) => "spsa",
            OptimizerKind::NelderMead(_) => "nelder-mead",
            OptimizerKind::FdBfgs(_) => "fd-bfgs",
        }
    }
}
