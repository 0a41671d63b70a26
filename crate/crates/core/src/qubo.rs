//! QUBO assembly for traffic instances: congestion cost A, one-route-per-car
//! constraints B, penalty weight lambda, and the combined cost C = A + lambda*B
//! over binary route variables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roadnet::TrafficInstance;

/// Whether two cars traversing a segment in opposite directions congest the
/// same counter. Undirected is the default reading of the problem setup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DirectionMode {
    #[default]
    Undirected,
    Directed,
}

/// How the penalty weight is calibrated from the cost ranges.
///
/// `TrueRange` uses the exact ranges of A and B (B minimum 0 at one-hot
/// assignments). `ArgmaxLiteral` evaluates both ranges at the all-zeros /
/// all-ones corners; for B that corner claim is not its true extremum, so
/// this mode exists for comparison only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum LambdaMode {
    #[default]
    TrueRange,
    ArgmaxLiteral,
}

/// A quadratic polynomial over binary variables, kept in expanded sparse
/// form: sum of linear terms, pairwise terms on unordered distinct pairs,
/// and a constant.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadraticTerms {
    pub linear: BTreeMap<usize, f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub constant: f64,
}

impl QuadraticTerms {
    pub fn add_linear(&mut self, u: usize, coeff: f64) {
        *self.linear.entry(u).or_insert(0.0) += coeff;
    }

    /// Adds `coeff * q_u * q_v`; self-pairs collapse to linear via q^2 = q.
    pub fn add_quadratic(&mut self, u: usize, v: usize, coeff: f64) {
        if u == v {
            self.add_linear(u, coeff);
        } else {
            let key = (u.min(v), u.max(v));
            *self.quadratic.entry(key).or_insert(0.0) += coeff;
        }
    }

    pub fn add(&mut self, other: &QuadraticTerms, scale: f64) {
        for (&u, &c) in &other.linear {
            self.add_linear(u, scale * c);
        }
        for (&(u, v), &c) in &other.quadratic {
            self.add_quadratic(u, v, scale * c);
        }
        self.constant += scale * other.constant;
    }

    /// Evaluate on the assignment encoded as bits of `bits` (bit u = q_u).
    pub fn evaluate(&self, bits: u64) -> f64 {
        let mut total = self.constant;
        for (&u, &c) in &self.linear {
            if bits >> u & 1 == 1 {
                total += c;
            }
        }
        for (&(u, v), &c) in &self.quadratic {
            if bits >> u & 1 == 1 && bits >> v & 1 == 1 {
                total += c;
            }
        }
        total
    }
}

/// Expanded QUBO cost for one traffic instance.
#[derive(Debug, Clone)]
pub struct QuboModel {
    pub n_vars: usize,
    /// Combined C = A + lambda * B in expanded form.
    pub linear: BTreeMap<usize, f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub constant: f64,
    pub lambda: f64,
    /// Variable u -> (car i, route j), with j increasing first and then i.
    pub var_map: Vec<(usize, usize)>,
    /// Congestion part A, kept for range checks and diagnostics.
    pub congestion: QuadraticTerms,
    /// Constraint part B (unweighted).
    pub constraints: QuadraticTerms,
}

impl QuboModel {
    /// C(bits) = A(bits) + lambda * B(bits), from the expanded coefficients.
    pub fn evaluate(&self, bits: u64) -> f64 {
        let mut total = self.constant;
        for (&u, &c) in &self.linear {
            if bits >> u & 1 == 1 {
                total += c;
            }
        }
        for (&(u, v), &c) in &self.quadratic {
            if bits >> u & 1 == 1 && bits >> v & 1 == 1 {
                total += c;
            }
        }
        total
    }

    /// Checked evaluation from an explicit bit vector.
    pub fn evaluate_bits(&self, bits: &[u8]) -> Result<f64> {
        if bits.len() != self.n_vars {
            return Err(Error::LengthMismatch {
                expected: self.n_vars,
                got: bits.len(),
            });
        }
        let mut packed = 0u64;
        for (u, &b) in bits.iter().enumerate() {
            if b > 1 {
                return Err(Error::InvalidParameter(format!(
                    "bit {u} is {b}, expected 0 or 1"
                )));
            }
            packed |= (b as u64) << u;
        }
        Ok(self.evaluate(packed))
    }

    /// Cost of every assignment, indexed by packed bits. Chunked so the table
    /// stays cache-friendly; used by the exhaustive checks.
    pub fn cost_table(&self) -> Vec<f64> {
        use rayon::prelude::*;
        let n = self.n_vars;
        let size = 1usize << n;
        let linear: Vec<(usize, f64)> = self.linear.iter().map(|(&u, &c)| (u, c)).collect();
        let quad: Vec<(usize, usize, f64)> = self
            .quadratic
            .iter()
            .map(|(&(u, v), &c)| (u, v, c))
            .collect();
        let constant = self.constant;
        let chunk = 1usize << 14.min(n);
        let mut table = vec![0.0f64; size];
        table
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(ci, slice)| {
                let base = ci * chunk;
                for (off, out) in slice.iter_mut().enumerate() {
                    let bits = (base + off) as u64;
                    let mut total = constant;
                    for &(u, c) in &linear {
                        if bits >> u & 1 == 1 {
                            total += c;
                        }
                    }
                    for &(u, v, c) in &quad {
                        if bits >> u & 1 == 1 && bits >> v & 1 == 1 {
                            total += c;
                        }
                    }
                    *out = total;
                }
            });
        table
    }
}

/// Variables of `instance` whose route contains segment `k`, grouped by
/// traversal direction when the mode is directed.
fn occupant_groups(
    instance: &TrafficInstance,
    k: usize,
    mode: DirectionMode,
) -> Vec<Vec<usize>> {
    let seg = instance.network.segment(k);
    let mut forward = Vec::new();
    let mut backward = Vec::new();
    let mut var = 0usize;
    for car in &instance.cars {
        for route in &car.routes {
            if let Some(pos) = route.segments.iter().position(|&s| s == k) {
                if route.nodes[pos] == seg.u {
                    forward.push(var);
                } else {
                    backward.push(var);
                }
            }
            var += 1;
        }
    }
    match mode {
        DirectionMode::Undirected => {
            let mut all = forward;
            all.extend(backward);
            all.sort_unstable();
            vec![all]
        }
        DirectionMode::Directed => vec![forward, backward],
    }
}

/// Congestion contribution of one segment: d_k * (sum of occupying q)^2,
/// expanded with q^2 = q.
pub fn segment_cost_terms(
    instance: &TrafficInstance,
    k: usize,
    mode: DirectionMode,
) -> QuadraticTerms {
    let d = instance.network.segment(k).weight;
    let mut terms = QuadraticTerms::default();
    for group in occupant_groups(instance, k, mode) {
        for (a, &u) in group.iter().enumerate() {
            terms.add_linear(u, d);
            for &v in &group[a + 1..] {
                terms.add_quadratic(u, v, 2.0 * d);
            }
        }
    }
    terms
}

/// Total congestion cost A over all segments.
pub fn congestion_terms(instance: &TrafficInstance, mode: DirectionMode) -> QuadraticTerms {
    let mut total = QuadraticTerms::default();
    for k in 0..instance.network.n_segments() {
        total.add(&segment_cost_terms(instance, k, mode), 1.0);
    }
    total
}

/// Constraint cost B = sum_i (1 - sum_j q_ij)^2, expanded. Zero exactly on
/// one-route-per-car assignments.
pub fn constraint_terms(instance: &TrafficInstance) -> QuadraticTerms {
    let mut terms = QuadraticTerms::default();
    let mut var = 0usize;
    for car in &instance.cars {
        let vars: Vec<usize> = (var..var + car.routes.len()).collect();
        var += car.routes.len();
        terms.constant += 1.0;
        for (a, &u) in vars.iter().enumerate() {
            // -2q + q^2 = -q
            terms.add_linear(u, -1.0);
            for &v in &vars[a + 1..] {
                terms.add_quadratic(u, v, 2.0);
            }
        }
    }
    terms
}

fn all_ones(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Penalty weight equating the value range of lambda*B with the range of A.
///
/// A's coefficients are all nonnegative, so its range is A(1..1) - 0. For B
/// the true range is [0, sum_i max((m_i-1)^2, 1)]; the argmax-literal mode
/// instead evaluates B at the all-ones and all-zeros corners. A degenerate
/// (nonpositive or non-finite) ratio falls back to lambda = 1 with a warning.
pub fn calibrate_lambda(
    instance: &TrafficInstance,
    congestion: &QuadraticTerms,
    mode: LambdaMode,
) -> f64 {
    let n = instance.n_vars();
    let range_a = congestion.evaluate(all_ones(n));
    let range_b = match mode {
        LambdaMode::TrueRange => instance
            .cars
            .iter()
            .map(|c| {
                let m = c.routes.len() as f64;
                ((m - 1.0) * (m - 1.0)).max(1.0)
            })
            .sum::<f64>(),
        LambdaMode::ArgmaxLiteral => {
            let b = constraint_terms(instance);
            b.evaluate(all_ones(n)) - b.evaluate(0)
        }
    };
    let lambda = range_a / range_b;
    if !lambda.is_finite() || lambda <= 0.0 {
        log::warn!(
            "degenerate lambda calibration (range_A={range_a}, range_B={range_b}); using lambda = 1"
        );
        return 1.0;
    }
    lambda
}

/// Assemble the full QUBO for a traffic instance.
pub fn build_qubo(
    instance: &TrafficInstance,
    direction: DirectionMode,
    lambda_mode: LambdaMode,
) -> QuboModel {
    let congestion = congestion_terms(instance, direction);
    let constraints = constraint_terms(instance);
    let lambda = calibrate_lambda(instance, &congestion, lambda_mode);
    let mut combined = QuadraticTerms::default();
    combined.add(&congestion, 1.0);
    combined.add(&constraints, lambda);
    QuboModel {
        n_vars: instance.n_vars(),
        linear: combined.linear,
        quadratic: combined.quadratic,
        constant: combined.constant,
        lambda,
        var_map: instance.var_map(),
        congestion,
        constraints,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roadnet::{build_instance, CarRoutes, CarSpec, RoadNetwork, Route, TrafficInstance};

    /// Direct evaluation of the congestion sum without expansion.
    fn congestion_direct(instance: &TrafficInstance, bits: u64, mode: DirectionMode) -> f64 {
        let mut total = 0.0;
        for k in 0..instance.network.n_segments() {
            let d = instance.network.segment(k).weight;
            for group in occupant_groups(instance, k, mode) {
                let occupancy = group.iter().filter(|&&u| bits >> u & 1 == 1).count() as f64;
                total += d * occupancy * occupancy;
            }
        }
        total
    }

    /// Direct evaluation of the constraint sum without expansion.
    fn constraints_direct(instance: &TrafficInstance, bits: u64) -> f64 {
        let mut total = 0.0;
        let mut var = 0usize;
        for car in &instance.cars {
            let chosen = (0..car.routes.len())
                .filter(|j| bits >> (var + j) & 1 == 1)
                .count() as f64;
            total += (1.0 - chosen) * (1.0 - chosen);
            var += car.routes.len();
        }
        total
    }

    fn nine_var_instance(seed: u64) -> TrafficInstance {
        let net = RoadNetwork::grid(4, 4, Some(11));
        let o = net.node_idx("n0_0").unwrap();
        let d = net.node_idx("n3_3").unwrap();
        build_instance(
            net,
            &[CarSpec {
                origin: o,
                dest: d,
                route_count: 3,
            }; 3],
            seed,
            100,
        )
        .unwrap()
    }

    /// 2 cars x 2 routes, all four routes the same single segment of weight 1.
    fn shared_segment_instance() -> TrafficInstance {
        let net = RoadNetwork::from_text("node a\nnode b\nedge s a b 1\n").unwrap();
        let route = |car, j| Route {
            car,
            route_index: j,
            nodes: vec![0, 1],
            segments: vec![0],
        };
        TrafficInstance {
            network: net,
            cars: vec![
                CarRoutes {
                    origin: 0,
                    dest: 1,
                    routes: vec![route(0, 0), route(0, 1)],
                },
                CarRoutes {
                    origin: 0,
                    dest: 1,
                    routes: vec![route(1, 0), route(1, 1)],
                },
            ],
            seed: 0,
            pool_size: 2,
        }
    }

    #[test]
    fn single_route_segment_gives_linear_weight() {
        let net = RoadNetwork::from_text("node a\nnode b\nedge s a b 2\n").unwrap();
        let inst = build_instance(
            net,
            &[CarSpec {
                origin: 0,
                dest: 1,
                route_count: 1,
            }],
            0,
            5,
        )
        .unwrap();
        let terms = segment_cost_terms(&inst, 0, DirectionMode::Undirected);
        assert_eq!(terms.linear.get(&0), Some(&2.0));
        assert!(terms.quadratic.is_empty());
        assert_eq!(terms.constant, 0.0);
    }

    #[test]
    fn shared_segment_gives_cross_term() {
        // Two cars, one route each, on the same unit segment.
        let net = RoadNetwork::from_text("node a\nnode b\nedge s a b 1\n").unwrap();
        let inst = build_instance(
            net,
            &[
                CarSpec {
                    origin: 0,
                    dest: 1,
                    route_count: 1,
                },
                CarSpec {
                    origin: 0,
                    dest: 1,
                    route_count: 1,
                },
            ],
            0,
            5,
        )
        .unwrap();
        let terms = segment_cost_terms(&inst, 0, DirectionMode::Undirected);
        assert_eq!(terms.linear.get(&0), Some(&1.0));
        assert_eq!(terms.linear.get(&1), Some(&1.0));
        assert_eq!(terms.quadratic.get(&(0, 1)), Some(&2.0));
    }

    #[test]
    fn constraint_expansion_one_car_two_routes() {
        let inst = shared_segment_instance();
        let single_car = TrafficInstance {
            cars: vec![inst.cars[0].clone()],
            ..inst
        };
        let b = constraint_terms(&single_car);
        // (1 - q0 - q1)^2 = 1 - q0 - q1 + 2 q0 q1
        assert_eq!(b.constant, 1.0);
        assert_eq!(b.linear.get(&0), Some(&-1.0));
        assert_eq!(b.linear.get(&1), Some(&-1.0));
        assert_eq!(b.quadratic.get(&(0, 1)), Some(&2.0));
    }

    #[test]
    fn constraint_values_at_corners() {
        let inst = nine_var_instance(5);
        let b = constraint_terms(&inst);
        assert_eq!(b.evaluate(0), 3.0); // all-zeros: one unit per car
        // one-hot per car (route 0 of each): vars 0, 3, 6
        let one_hot = 1u64 | 1 << 3 | 1 << 6;
        assert_eq!(b.evaluate(one_hot), 0.0);
    }

    #[test]
    fn expanded_matches_direct_on_all_assignments() {
        for seed in [1u64, 2, 3] {
            let inst = nine_var_instance(seed);
            for mode in [DirectionMode::Undirected, DirectionMode::Directed] {
                let a = congestion_terms(&inst, mode);
                let b = constraint_terms(&inst);
                for bits in 0u64..1 << 9 {
                    let da = congestion_direct(&inst, bits, mode);
                    let db = constraints_direct(&inst, bits);
                    assert!((a.evaluate(bits) - da).abs() < 1e-9);
                    assert!((b.evaluate(bits) - db).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn lambda_true_range_on_shared_segment_case() {
        // Brute-force over the 4-variable case: max A = 16, range B = 2.
        let inst = shared_segment_instance();
        let a = congestion_terms(&inst, DirectionMode::Undirected);
        let b = constraint_terms(&inst);
        let mut max_a: f64 = 0.0;
        let mut min_b = f64::INFINITY;
        let mut max_b = f64::NEG_INFINITY;
        for bits in 0u64..16 {
            max_a = max_a.max(a.evaluate(bits));
            min_b = min_b.min(b.evaluate(bits));
            max_b = max_b.max(b.evaluate(bits));
        }
        assert_eq!(max_a, 16.0);
        assert_eq!(min_b, 0.0);
        assert_eq!(max_b, 2.0);
        let lambda = calibrate_lambda(&inst, &a, LambdaMode::TrueRange);
        assert!((lambda - 8.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_matches_brute_force_ratio_on_fixture() {
        let inst = nine_var_instance(7);
        let a = congestion_terms(&inst, DirectionMode::Undirected);
        let b = constraint_terms(&inst);
        let mut range_a = f64::NEG_INFINITY;
        let mut min_a = f64::INFINITY;
        let mut min_b = f64::INFINITY;
        let mut max_b = f64::NEG_INFINITY;
        for bits in 0u64..1 << 9 {
            let va = a.evaluate(bits);
            let vb = b.evaluate(bits);
            range_a = range_a.max(va);
            min_a = min_a.min(va);
            min_b = min_b.min(vb);
            max_b = max_b.max(vb);
        }
        assert_eq!(min_a, 0.0);
        let expect = (range_a - min_a) / (max_b - min_b);
        let lambda = calibrate_lambda(&inst, &a, LambdaMode::TrueRange);
        assert!((lambda - expect).abs() < 1e-9);
    }

    #[test]
    fn lambda_argmax_literal_degenerates_to_one_for_two_route_cars() {
        // With two routes per car, B(1..1) equals B(0..0), so the literal
        // corner recipe has zero denominator and falls back to 1.
        let inst = shared_segment_instance();
        let a = congestion_terms(&inst, DirectionMode::Undirected);
        let lambda = calibrate_lambda(&inst, &a, LambdaMode::ArgmaxLiteral);
        assert_eq!(lambda, 1.0);
    }

    #[test]
    fn evaluate_combined_model() {
        let inst = nine_var_instance(3);
        let model = build_qubo(&inst, DirectionMode::Undirected, LambdaMode::TrueRange);
        // all-zeros: C = lambda * n_cars
        assert!((model.evaluate(0) - model.lambda * 3.0).abs() < 1e-12);
        // spot-check random assignments against the parts
        for bits in [0b101010101u64, 0b110011001, 0b111000111] {
            let direct = model.congestion.evaluate(bits) + model.lambda * model.constraints.evaluate(bits);
            assert!((model.evaluate(bits) - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn evaluate_bits_checks_length() {
        let inst = nine_var_instance(3);
        let model = build_qubo(&inst, DirectionMode::Undirected, LambdaMode::TrueRange);
        assert!(matches!(
            model.evaluate_bits(&[0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
        let bits = vec![0u8; 9];
        assert!((model.evaluate_bits(&bits).unwrap() - model.lambda * 3.0).abs() < 1e-12);
    }

    #[test]
    fn minimizers_satisfy_constraints() {
        for seed in [10u64, 20, 30] {
            let inst = nine_var_instance(seed);
            let model = build_qubo(&inst, DirectionMode::Undirected, LambdaMode::TrueRange);
            let table = model.cost_table();
            let min = table.iter().cloned().fold(f64::INFINITY, f64::min);
            for (bits, &cost) in table.iter().enumerate() {
                if cost == min {
                    assert_eq!(model.constraints.evaluate(bits as u64), 0.0);
                }
            }
        }
    }

    #[test]
    fn cost_table_matches_evaluate() {
        let inst = nine_var_instance(1);
        let model = build_qubo(&inst, DirectionMode::Undirected, LambdaMode::TrueRange);
        let table = model.cost_table();
        for bits in 0u64..1 << 9 {
            assert!((table[bits as usize] - model.evaluate(bits)).abs() < 1e-9);
        }
    }
}
