//! Variational parameter initialization (random, trotterized-annealing,
//! layer interpolation, sine re-parameterization), the box-constrained
//! optimization loop, and the precomputed-parameter pipeline that optimizes
//! an ensemble of statistically similar models offline and reuses the
//! component-wise median.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::circuit::{ParamVector, QaoaAnsatz};
use crate::error::{Error, Result};
use crate::ising::{normalize, IsingModel};
use crate::optim::{minimize, Bounds, OptimSettings};
use crate::simulator::QaoaSimulator;

/// Trotterized-annealing schedule: step size and layer count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TqaSchedule {
    pub dt: f64,
    pub p: usize,
}

impl TqaSchedule {
    /// Total anneal time T = p * dt.
    pub fn total_time(&self) -> f64 {
        self.p as f64 * self.dt
    }
}

/// The concentration value for the Trotter step that works well across
/// instances.
pub const TQA_DT_DEFAULT: f64 = 0.75;

/// gamma_l ~ U[-pi, pi), beta_l ~ U[-pi/2, pi/2), all gammas drawn first.
pub fn init_random(p: usize, seed: u64) -> ParamVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gamma = (0..p).map(|_| rng.gen_range(-PI..PI)).collect();
    let beta = (0..p).map(|_| rng.gen_range(-FRAC_PI_2..FRAC_PI_2)).collect();
    ParamVector::Standard { gamma, beta }
}

/// Linear annealing ramp: gamma_j = (j/p) dt, beta_j = (1 - j/p) dt for
/// j = 1..p, so gamma_p = dt and beta_p = 0 exactly.
pub fn init_tqa(p: usize, dt: f64) -> ParamVector {
    let gamma = (1..=p).map(|j| j as f64 / p as f64 * dt).collect();
    let beta = (1..=p)
        .map(|j| (1.0 - j as f64 / p as f64) * dt)
        .collect();
    ParamVector::Standard { gamma, beta }
}

/// `n` equally spaced Trotter steps over [lo, hi), first value exactly `lo`.
pub fn tqa_dt_grid(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n)
        .map(|i| lo + i as f64 * (hi - lo) / n as f64)
        .collect()
}

/// Midpoint-fraction resampling of one schedule from p to p+1 points with
/// linear interpolation and flat extrapolation at the ends.
fn resample_schedule(vals: &[f64]) -> Vec<f64> {
    let p = vals.len();
    let src: Vec<f64> = (0..p).map(|l| (l as f64 + 0.5) / p as f64).collect();
    (0..p + 1)
        .map(|l| {
            let t = (l as f64 + 0.5) / (p as f64 + 1.0);
            if t <= src[0] {
                vals[0]
            } else if t >= src[p - 1] {
                vals[p - 1]
            } else {
                let k = src.partition_point(|&s| s <= t) - 1;
                let w = (t - src[k]) / (src[k + 1] - src[k]);
                vals[k] + w * (vals[k + 1] - vals[k])
            }
        })
        .collect()
}

/// Grow a p-layer schedule to p+1 layers by treating the angles as samples
/// of a continuous schedule and resampling it.
pub fn init_interp(prev: &ParamVector) -> Result<ParamVector> {
    match prev {
        ParamVector::Standard { gamma, beta } => {
            if gamma.is_empty() {
                return Err(Error::InvalidParameter("empty schedule".into()));
            }
            Ok(ParamVector::Standard {
                gamma: resample_schedule(gamma),
                beta: resample_schedule(beta),
            })
        }
        ParamVector::MultiAngle { .. } => Err(Error::InvalidParameter(
            "schedule interpolation needs standard parameters".into(),
        )),
    }
}

/// Which kernel expands the beta coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaKernel {
    /// The sine kernel for both schedules.
    #[default]
    Sin,
    /// Cosine kernel for beta, as in the original re-parameterization.
    Cos,
}

/// Low-frequency re-parameterization coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierParams {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl FourierParams {
    pub fn q(&self) -> usize {
        self.u.len()
    }
}

/// Expand (u, v) into p layers:
/// gamma_i = sum_k u_k sin((k - 1/2)(i - 1/2) pi / p), beta_i likewise with
/// v_k and the configured kernel.
pub fn fourier_expand(f: &FourierParams, p: usize, kernel: BetaKernel) -> Result<ParamVector> {
    let q = f.q();
    if q == 0 || f.v.len() != q {
        return Err(Error::InvalidParameter(
            "need matching nonempty u and v".into(),
        ));
    }
    if q > p {
        return Err(Error::InvalidParameter(format!(
            "truncation q = {q} exceeds layer count p = {p}"
        )));
    }
    let angle = |k: usize, i: usize| {
        (k as f64 - 0.5) * (i as f64 - 0.5) * PI / p as f64
    };
    let gamma = (1..=p)
        .map(|i| (1..=q).map(|k| f.u[k - 1] * angle(k, i).sin()).sum())
        .collect();
    let beta = (1..=p)
        .map(|i| {
            (1..=q)
                .map(|k| {
                    let a = angle(k, i);
                    f.v[k - 1] * match kernel {
                        BetaKernel::Sin => a.sin(),
                        BetaKernel::Cos => a.cos(),
                    }
                })
                .sum()
        })
        .collect();
    Ok(ParamVector::Standard { gamma, beta })
}

/// Invert the q = 1 expansion at p = 1: the single-layer angles determine
/// (u_1, v_1) directly.
pub fn fourier_fit_p1(gamma_1: f64, beta_1: f64, kernel: BetaKernel) -> FourierParams {
    let a = PI / 4.0;
    FourierParams {
        u: vec![gamma_1 / a.sin()],
        v: vec![
            beta_1
                / match kernel {
                    BetaKernel::Sin => a.sin(),
                    BetaKernel::Cos => a.cos(),
                },
        ],
    }
}

/// Accepted iterates of one optimization run.
#[derive(Debug, Clone)]
pub struct OptimizationTrace {
    pub iterates: Vec<(ParamVector, f64)>,
    pub iterations: usize,
    pub converged: bool,
}

impl OptimizationTrace {
    pub fn initial_value(&self) -> f64 {
        self.iterates.first().expect("nonempty trace").1
    }

    /// Line search only accepts descent, so the last iterate is the best.
    pub fn final_params(&self) -> &ParamVector {
        &self.iterates.last().expect("nonempty trace").0
    }

    pub fn final_value(&self) -> f64 {
        self.iterates.last().expect("nonempty trace").1
    }

    /// Cumulative best value per accepted iterate.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.iterates
            .iter()
            .map(|(_, f)| {
                best = best.min(*f);
                best
            })
            .collect()
    }
}

/// Box for standard-mode optimization: gamma in [-pi, pi], beta in
/// [-pi/2, pi/2]; multi-angle parameters are unconstrained (canonicalize
/// afterwards).
pub fn bounds_for(init: &ParamVector) -> Bounds {
    match init {
        ParamVector::Standard { gamma, beta } => {
            let p = gamma.len();
            let _ = beta;
            Bounds::new(
                [vec![-PI; p], vec![-FRAC_PI_2; p]].concat(),
                [vec![PI; p], vec![FRAC_PI_2; p]].concat(),
            )
            .expect("constant box is valid")
        }
        ParamVector::MultiAngle { .. } => Bounds::unbounded(init.n_params()),
    }
}

/// Minimize <H_C> from `init` under the mode's box constraints.
pub fn optimize(
    sim: &QaoaSimulator,
    init: &ParamVector,
    settings: &OptimSettings,
) -> Result<OptimizationTrace> {
    let bounds = bounds_for(init);
    let mut failure = None;
    let mut objective = |x: &[f64]| match sim.expectation_flat(init, x) {
        Ok(v) => v,
        Err(e) => {
            failure = Some(e);
            f64::NAN
        }
    };
    let result = minimize(&mut objective, &init.to_flat(), &bounds, settings);
    if let Some(e) = failure {
        return Err(e);
    }
    let result = result?;
    let iterates = result
        .trace
        .into_iter()
        .map(|(flat, f)| Ok((init.from_flat(&flat)?, f)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OptimizationTrace {
        iterates,
        iterations: result.iterations,
        converged: result.converged,
    })
}

/// Best (gamma, beta) on an n x n grid of cell centers over the standard
/// box; the usual warm start for single-layer optimization.
pub fn grid_search_p1(sim: &QaoaSimulator, n_grid: usize) -> Result<ParamVector> {
    if sim.ansatz.p != 1 || sim.ansatz.multi_angle {
        return Err(Error::InvalidParameter(
            "grid search applies to single-layer standard ansatz".into(),
        ));
    }
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..n_grid {
        let gamma = -PI + (i as f64 + 0.5) * 2.0 * PI / n_grid as f64;
        for j in 0..n_grid {
            let beta = -FRAC_PI_2 + (j as f64 + 0.5) * PI / n_grid as f64;
            let e = sim.expectation(&ParamVector::standard(vec![gamma], vec![beta]))?;
            if e < best.0 {
                best = (e, gamma, beta);
            }
        }
    }
    Ok(ParamVector::standard(vec![best.1], vec![best.2]))
}

/// Pooled mean/std of the Ising coefficients across an ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffStats {
    pub j_mean: f64,
    pub j_std: f64,
    pub h_mean: f64,
    pub h_std: f64,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Measure coefficient statistics over (typically normalized) models.
pub fn measure_coeff_stats(models: &[IsingModel]) -> CoeffStats {
    let j: Vec<f64> = models.iter().flat_map(|m| m.j.values().copied()).collect();
    let h: Vec<f64> = models.iter().flat_map(|m| m.h.values().copied()).collect();
    let (j_mean, j_std) = mean_std(&j);
    let (h_mean, h_std) = mean_std(&h);
    CoeffStats {
        j_mean,
        j_std,
        h_mean,
        h_std,
    }
}

/// Draw a fully connected Ising model with Normal(mean, std) coefficients.
pub fn sample_ising(stats: &CoeffStats, n_qubits: usize, seed: u64) -> Result<IsingModel> {
    if stats.j_std < 0.0 || stats.h_std < 0.0 {
        return Err(Error::InvalidParameter(
            "coefficient std must be nonnegative".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jd = Normal::new(stats.j_mean, stats.j_std)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let hd = Normal::new(stats.h_mean, stats.h_std)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut j = BTreeMap::new();
    for u in 0..n_qubits {
        for v in u + 1..n_qubits {
            j.insert((u, v), jd.sample(&mut rng));
        }
    }
    let mut h = BTreeMap::new();
    for u in 0..n_qubits {
        h.insert(u, hd.sample(&mut rng));
    }
    Ok(IsingModel {
        n_qubits,
        j,
        h,
        constant: 0.0,
        norm_factor: 1.0,
    })
}

/// Optimize an ensemble of sampled fully connected models from a TQA start
/// and return the component-wise median of the optimized parameters.
pub fn precompute_params(
    stats: &CoeffStats,
    p: usize,
    n_samples: usize,
    n_qubits: usize,
    seed: u64,
    settings: &OptimSettings,
    sim_cap: usize,
) -> Result<ParamVector> {
    use rayon::prelude::*;
    if n_samples == 0 {
        return Err(Error::EmptyInput("precompute ensemble"));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let sample_seeds: Vec<u64> = (0..n_samples).map(|_| master.gen()).collect();

    let optimized: Vec<Vec<f64>> = sample_seeds
        .par_iter()
        .map(|&s| -> Result<Vec<f64>> {
            let model = normalize(&sample_ising(stats, n_qubits, s)?)?;
            let sim = QaoaSimulator::new(&model, QaoaAnsatz::standard(&model, p), sim_cap)?;
            let trace = optimize(&sim, &init_tqa(p, TQA_DT_DEFAULT), settings)?;
            Ok(trace.final_params().to_flat())
        })
        .collect::<Result<Vec<_>>>()?;

    let dim = 2 * p;
    let mut median_flat = vec![0.0; dim];
    for (k, slot) in median_flat.iter_mut().enumerate() {
        let mut column: Vec<f64> = optimized.iter().map(|v| v[k]).collect();
        column.sort_by(f64::total_cmp);
        let mid = column.len() / 2;
        *slot = if column.len() % 2 == 1 {
            column[mid]
        } else {
            0.5 * (column[mid - 1] + column[mid])
        };
    }
    ParamVector::standard(vec![0.0; p], vec![0.0; p]).from_flat(&median_flat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::DEFAULT_SIM_CAP;

    #[test]
    fn random_init_ranges_and_determinism() {
        assert_eq!(init_random(3, 5), init_random(3, 5));
        let mut gmin: f64 = f64::INFINITY;
        let mut gmax: f64 = f64::NEG_INFINITY;
        let mut gsum = 0.0;
        let draws = 10_000;
        for seed in 0..draws {
            if let ParamVector::Standard { gamma, beta } = init_random(1, seed) {
                gmin = gmin.min(gamma[0]);
                gmax = gmax.max(gamma[0]);
                gsum += gamma[0];
                assert!((-PI..PI).contains(&gamma[0]));
                assert!((-FRAC_PI_2..FRAC_PI_2).contains(&beta[0]));
            }
        }
        // Mean of U[-pi, pi) is 0 with sigma/sqrt(n) = pi/sqrt(3)/100.
        let tol = 3.0 * PI / (3.0f64).sqrt() / (draws as f64).sqrt();
        assert!((gsum / draws as f64).abs() < tol);
        assert!(gmin < -3.0 && gmax > 3.0);
    }

    #[test]
    fn tqa_schedule_values() {
        let v = init_tqa(2, 0.75);
        match v {
            ParamVector::Standard { gamma, beta } => {
                assert_eq!(gamma, vec![0.375, 0.75]);
                assert_eq!(beta, vec![0.375, 0.0]);
            }
            _ => unreachable!(),
        }
        assert_eq!(
            init_tqa(1, 1.0),
            ParamVector::standard(vec![1.0], vec![0.0])
        );
        // Endpoint identities hold for every p.
        for p in 1..8 {
            if let ParamVector::Standard { gamma, beta } = init_tqa(p, 0.6) {
                assert_eq!(gamma[p - 1], 0.6);
                assert_eq!(beta[p - 1], 0.0);
            }
        }
    }

    #[test]
    fn dt_grid_shape() {
        let grid = tqa_dt_grid(50, 0.1, 1.0);
        assert_eq!(grid.len(), 50);
        assert_eq!(grid[0], 0.1);
        assert!(grid.iter().all(|&dt| (0.1..1.0).contains(&dt)));
        let unique: std::collections::BTreeSet<u64> = grid.iter().map(|f| f.to_bits()).collect();
        assert_eq!(unique.len(), 50);
    }

    #[test]
    fn interp_preserves_constants() {
        let v = ParamVector::standard(vec![0.7, 0.7], vec![0.2, 0.2]);
        let w = init_interp(&v).unwrap();
        assert_eq!(
            w,
            ParamVector::standard(vec![0.7, 0.7, 0.7], vec![0.2, 0.2, 0.2])
        );
        let single = ParamVector::standard(vec![0.4], vec![0.1]);
        assert_eq!(
            init_interp(&single).unwrap(),
            ParamVector::standard(vec![0.4, 0.4], vec![0.1, 0.1])
        );
    }

    #[test]
    fn interp_linear_ramp_hand_computed() {
        // Source fractions {1/6, 3/6, 5/6} with values (1, 2, 3); targets at
        // {1/8, 3/8, 5/8, 7/8} give (1, 1.625, 2.375, 3).
        let v = ParamVector::standard(vec![1.0, 2.0, 3.0], vec![0.0; 3]);
        match init_interp(&v).unwrap() {
            ParamVector::Standard { gamma, .. } => {
                let expect = [1.0, 1.625, 2.375, 3.0];
                for (g, e) in gamma.iter().zip(expect) {
                    assert!((g - e).abs() < 1e-12);
                }
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fourier_single_term() {
        let f = FourierParams {
            u: vec![1.0],
            v: vec![0.0],
        };
        match fourier_expand(&f, 1, BetaKernel::Sin).unwrap() {
            ParamVector::Standard { gamma, .. } => {
                assert!((gamma[0] - (PI / 4.0).sin()).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn fourier_zero_is_zero() {
        let f = FourierParams {
            u: vec![0.0, 0.0],
            v: vec![0.0, 0.0],
        };
        let v = fourier_expand(&f, 4, BetaKernel::Sin).unwrap();
        assert!(v.to_flat().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn fourier_matches_naive_double_loop() {
        let f = FourierParams {
            u: vec![0.3, -0.8],
            v: vec![1.1, 0.4],
        };
        let (p, q) = (3usize, 2usize);
        for kernel in [BetaKernel::Sin, BetaKernel::Cos] {
            let got = fourier_expand(&f, p, kernel).unwrap();
            // independent summation
            let mut gamma = vec![0.0; p];
            let mut beta = vec![0.0; p];
            for i in 1..=p {
                for k in 1..=q {
                    let a = (k as f64 - 0.5) * (i as f64 - 0.5) * PI / p as f64;
                    gamma[i - 1] += f.u[k - 1] * a.sin();
                    beta[i - 1] += f.v[k - 1]
                        * match kernel {
                            BetaKernel::Sin => a.sin(),
                            BetaKernel::Cos => a.cos(),
                        };
                }
            }
            let expect = ParamVector::Standard { gamma, beta };
            for (a, b) in got.to_flat().iter().zip(expect.to_flat()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_is_linear() {
        let f = FourierParams {
            u: vec![0.2, 0.5],
            v: vec![-0.3, 0.9],
        };
        let scaled = FourierParams {
            u: f.u.iter().map(|x| 2.5 * x).collect(),
            v: f.v.iter().map(|x| 2.5 * x).collect(),
        };
        let a = fourier_expand(&f, 4, BetaKernel::Sin).unwrap();
        let b = fourier_expand(&scaled, 4, BetaKernel::Sin).unwrap();
        for (x, y) in a.to_flat().iter().zip(b.to_flat()) {
            assert!((2.5 * x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_fit_round_trips_at_p1() {
        for kernel in [BetaKernel::Sin, BetaKernel::Cos] {
            let f = fourier_fit_p1(0.8, -0.3, kernel);
            match fourier_expand(&f, 1, kernel).unwrap() {
                ParamVector::Standard { gamma, beta } => {
                    assert!((gamma[0] - 0.8).abs() < 1e-12);
                    assert!((beta[0] + 0.3).abs() < 1e-12);
                }
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn fourier_rejects_q_above_p() {
        let f = FourierParams {
            u: vec![1.0, 2.0],
            v: vec![0.0, 0.0],
        };
        assert!(fourier_expand(&f, 1, BetaKernel::Sin).is_err());
    }

    fn single_field_sim() -> QaoaSimulator {
        let m = IsingModel {
            n_qubits: 1,
            j: BTreeMap::new(),
            h: [(0, 1.0)].into(),
            constant: 0.25,
            norm_factor: 1.0,
        };
        QaoaSimulator::new(&m, QaoaAnsatz::standard(&m, 1), DEFAULT_SIM_CAP).unwrap()
    }

    #[test]
    fn optimize_single_qubit_reaches_global_minimum() {
        // <H> = c - sin(2 beta) sin(2 gamma), global minimum c - 1.
        let sim = single_field_sim();
        let trace = optimize(
            &sim,
            &ParamVector::standard(vec![0.5], vec![0.3]),
            &OptimSettings::default(),
        )
        .unwrap();
        assert!(trace.final_value() < 0.25 - 1.0 + 1e-8);
        // Stationarity at the optimum.
        let grad = crate::simulator::gradient(
            &sim,
            trace.final_params(),
            crate::simulator::DEFAULT_FD_STEP,
        )
        .unwrap();
        let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        assert!(norm < 1e-4, "gradient norm {norm}");
    }

    #[test]
    fn optimize_from_stationary_point_stops() {
        let sim = single_field_sim();
        let init = ParamVector::standard(vec![0.0], vec![0.0]);
        let trace = optimize(&sim, &init, &OptimSettings::default()).unwrap();
        assert!(trace.iterates.len() <= 2);
        assert_eq!(trace.final_params(), &init);
    }

    #[test]
    fn optimize_trace_is_monotone() {
        let sim = single_field_sim();
        let trace = optimize(
            &sim,
            &init_random(1, 33),
            &OptimSettings::default(),
        )
        .unwrap();
        let best = trace.best_so_far();
        for (i, w) in trace.iterates.windows(2).enumerate() {
            assert!(w[1].1 <= w[0].1 + 1e-15);
            assert!(best[i + 1] <= best[i]);
        }
        assert!(trace.final_value() <= trace.initial_value());
    }

    #[test]
    fn optimized_standard_params_respect_box() {
        let sim = single_field_sim();
        let trace = optimize(&sim, &init_random(1, 4), &OptimSettings::default()).unwrap();
        if let ParamVector::Standard { gamma, beta } = trace.final_params() {
            assert!(gamma.iter().all(|g| (-PI..=PI).contains(g)));
            assert!(beta.iter().all(|b| (-FRAC_PI_2..=FRAC_PI_2).contains(b)));
        }
    }

    #[test]
    fn grid_search_lands_near_optimum() {
        let sim = single_field_sim();
        let v = grid_search_p1(&sim, 64).unwrap();
        let e = sim.expectation(&v).unwrap();
        // 64x64 cells over the box bracket the optimum well.
        assert!(e < 0.25 - 0.98);
    }

    #[test]
    fn coeff_stats_pooled() {
        let m1 = IsingModel {
            n_qubits: 2,
            j: [((0, 1), 2.0)].into(),
            h: [(0, 1.0), (1, 3.0)].into(),
            constant: 0.0,
            norm_factor: 1.0,
        };
        let stats = measure_coeff_stats(&[m1]);
        assert_eq!(stats.j_mean, 2.0);
        assert_eq!(stats.j_std, 0.0);
        assert_eq!(stats.h_mean, 2.0);
        assert!((stats.h_std - (2.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sampled_ising_is_fully_connected_and_seeded() {
        let stats = CoeffStats {
            j_mean: 0.1,
            j_std: 0.5,
            h_mean: -0.2,
            h_std: 0.3,
        };
        let a = sample_ising(&stats, 5, 9).unwrap();
        assert_eq!(a.j.len(), 10);
        assert_eq!(a.h.len(), 5);
        assert_eq!(sample_ising(&stats, 5, 9).unwrap(), a);
    }

    #[test]
    fn precompute_single_sample_is_that_optimum() {
        let stats = CoeffStats {
            j_mean: 0.2,
            j_std: 0.4,
            h_mean: 0.5,
            h_std: 0.8,
        };
        let settings = OptimSettings {
            max_iter: 60,
            ..Default::default()
        };
        let median =
            precompute_params(&stats, 2, 1, 4, 7, &settings, DEFAULT_SIM_CAP).unwrap();
        // Recompute the single sample's optimization directly.
        let mut master = ChaCha8Rng::seed_from_u64(7);
        let s: u64 = master.gen();
        let model = normalize(&sample_ising(&stats, 4, s).unwrap()).unwrap();
        let sim = QaoaSimulator::new(&model, QaoaAnsatz::standard(&model, 2), DEFAULT_SIM_CAP)
            .unwrap();
        let trace = optimize(&sim, &init_tqa(2, TQA_DT_DEFAULT), &settings).unwrap();
        assert_eq!(&median, trace.final_params());
    }

    #[test]
    fn precompute_is_reproducible() {
        let stats = CoeffStats {
            j_mean: 0.0,
            j_std: 0.3,
            h_mean: 0.1,
            h_std: 0.2,
        };
        let settings = OptimSettings {
            max_iter: 30,
            ..Default::default()
        };
        let a = precompute_params(&stats, 1, 4, 3, 11, &settings, DEFAULT_SIM_CAP).unwrap();
        let b = precompute_params(&stats, 1, 4, 3, 11, &settings, DEFAULT_SIM_CAP).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_stats_rejected() {
        let stats = CoeffStats {
            j_mean: 0.0,
            j_std: -1.0,
            h_mean: 0.0,
            h_std: 0.1,
        };
        assert!(sample_ising(&stats, 3, 0).is_err());
    }
}
