//! Box-constrained quasi-Newton minimization: limited-memory BFGS
//! directions, gradient projection onto the box, backtracking Armijo line
//! search, and central finite-difference gradients. Deterministic for a
//! given objective and start.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::simulator::finite_diff_gradient;

#[derive(Debug, Clone)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::InvalidParameter("lower bound above upper".into()));
        }
        Ok(Self { lower, upper })
    }

    pub fn unbounded(n: usize) -> Self {
        Self {
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
        }
    }

    pub fn projected(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&l, &u))| v.clamp(l, u))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct OptimSettings {
    /// Optimizer iterations, not function evaluations.
    pub max_iter: usize,
    /// Convergence threshold on the projected-gradient infinity norm.
    pub grad_tol: f64,
    /// Central finite-difference step.
    pub fd_step: f64,
    /// L-BFGS history length.
    pub memory: usize,
}

impl Default for OptimSettings {
    fn default() -> Self {
        Self {
            max_iter: 150,
            grad_tol: 1e-8,
            fd_step: 1e-6,
            memory: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimResult {
    /// Best parameters seen (line search only accepts descent, so this is
    /// also the last iterate).
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
    /// (iterate, value) per accepted step, starting with the initial point.
    pub trace: Vec<(Vec<f64>, f64)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// -H*g via the two-loop recursion over the stored (s, y) pairs.
fn lbfgs_direction(history: &VecDeque<(Vec<f64>, Vec<f64>, f64)>, g: &[f64]) -> Vec<f64> {
    if history.is_empty() {
        return g.iter().map(|x| -x).collect();
    }
    let mut q = g.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y, rho) in history.iter().rev() {
        let alpha = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= alpha * yi;
        }
        alphas.push(alpha);
    }
    let (s_last, y_last, _) = history.back().unwrap();
    let scale = dot(s_last, y_last) / dot(y_last, y_last);
    for qi in q.iter_mut() {
        *qi *= scale;
    }
    for ((s, y, rho), alpha) in history.iter().zip(alphas.into_iter().rev()) {
        let beta = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (alpha - beta) * si;
        }
    }
    q.iter_mut().for_each(|x| *x = -*x);
    q
}

/// Minimize `f` over the box from `x0`.
pub fn minimize(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    bounds: &Bounds,
    settings: &OptimSettings,
) -> Result<OptimResult> {
    let check = |v: f64, x: &[f64]| -> Result<f64> {
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteObjective {
                context: format!("{x:?}"),
            })
        }
    };

    let mut x = bounds.projected(x0);
    let mut fx = check(f(&x), &x)?;
    let mut trace = vec![(x.clone(), fx)];
    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
    let mut g = finite_diff_gradient(f, &x, settings.fd_step);
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..settings.max_iter {
        iterations += 1;

        // Projected-gradient convergence test.
        let pg_norm = x
            .iter()
            .zip(g.iter().zip(bounds.lower.iter().zip(&bounds.upper)))
            .map(|(&xi, (&gi, (&l, &u)))| (xi - (xi - gi).clamp(l, u)).abs())
            .fold(0.0f64, f64::max);
        if pg_norm < settings.grad_tol {
            converged = true;
            break;
        }

        let mut d = lbfgs_direction(&history, &g);
        if dot(&d, &g) >= 0.0 {
            // Fall back to steepest descent when the model loses descent.
            history.clear();
            d = g.iter().map(|v| -v).collect();
        }

        // Backtracking Armijo search along the projected path.
        let mut alpha = 1.0;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        for _ in 0..30 {
            let cand: Vec<f64> = bounds.projected(
                &x.iter()
                    .zip(&d)
                    .map(|(xi, di)| xi + alpha * di)
                    .collect::<Vec<_>>(),
            );
            if cand == x {
                alpha *= 0.5;
                continue;
            }
            let fc = check(f(&cand), &cand)?;
            let slope: f64 = g
                .iter()
                .zip(cand.iter().zip(&x))
                .map(|(gi, (ci, xi))| gi * (ci - xi))
                .sum();
            if fc <= fx + 1e-4 * slope.min(0.0) && fc < fx {
                accepted = Some((cand, fc));
                break;
            }
            alpha *= 0.5;
        }

        let Some((xn, fn_)) = accepted else {
            break; // no descent progress possible along this direction
        };

        let gn = finite_diff_gradient(f, &xn, settings.fd_step);
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let curvature_ok =
            sy > 1e-10 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() && sy.is_finite();
        if curvature_ok {
            if history.len() == settings.memory {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        x = xn;
        fx = fn_;
        g = gn;
        trace.push((x.clone(), fx));
    }

    Ok(OptimResult {
        x,
        f: fx,
        iterations,
        converged,
        trace,
    })
}
