//! Noiseless statevector simulation: gate-by-gate execution of circuit IR,
//! a diagonal fast path for QAOA layers (one phase pass per cost layer plus
//! N mixer rotations), diagonal-Hamiltonian expectation values, and
//! multinomial shot sampling.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuit::{Circuit, Gate, ParamVector, QaoaAnsatz};
use crate::error::{Error, Result};
use crate::ising::IsingModel;

/// Default cap on simulated qubits (2^24 amplitudes).
pub const DEFAULT_SIM_CAP: usize = 24;

/// Below this size the elementwise kernels run sequentially; rayon overhead
/// dominates on small registers.
const PAR_THRESHOLD: usize = 18;

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone)]
pub struct StateVector {
    pub n_qubits: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    /// |0...0>
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    /// |+>^N with amplitudes 2^(-N/2).
    pub fn uniform(n_qubits: usize) -> Self {
        let a = (1.0 / (1u64 << n_qubits) as f64).sqrt();
        Self {
            n_qubits,
            amps: vec![Complex64::new(a, 0.0); 1 << n_qubits],
        }
    }

    pub fn basis(n_qubits: usize, bits: u64) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[bits as usize] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability(&self, bits: u64) -> f64 {
        self.amps[bits as usize].norm_sqr()
    }

    /// <self|other>
    pub fn overlap(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Apply a 2x2 unitary [[m00, m01], [m10, m11]] to qubit `t`.
    fn apply_one_qubit(&mut self, t: usize, m: [Complex64; 4]) {
        let mask = 1usize << t;
        let step = mask << 1;
        let kernel = |chunk: &mut [Complex64]| {
            for base in (0..chunk.len()).step_by(step) {
                for off in base..base + mask {
                    let a = chunk[off];
                    let b = chunk[off + mask];
                    chunk[off] = m[0] * a + m[1] * b;
                    chunk[off + mask] = m[2] * a + m[3] * b;
                }
            }
        };
        if self.n_qubits < PAR_THRESHOLD {
            kernel(&mut self.amps);
        } else if step <= CHUNK {
            // Power-of-two chunks stay aligned to the pair blocks.
            self.amps.par_chunks_mut(CHUNK).for_each(kernel);
        } else {
            // High target qubit: parallelize within each block instead.
            let len = self.amps.len();
            for base in (0..len).step_by(step) {
                let block = &mut self.amps[base..base + step];
                let (lo, hi) = block.split_at_mut(mask);
                lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(|(a, b)| {
                    let (x, y) = (*a, *b);
                    *a = m[0] * x + m[1] * y;
                    *b = m[2] * x + m[3] * y;
                });
            }
        }
    }

    pub fn apply_h(&mut self, t: usize) {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.apply_one_qubit(t, [s, s, s, -s]);
    }

    /// RX(t) = exp(-i t X / 2)
    pub fn apply_rx(&mut self, t: usize, theta: f64) {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        self.apply_one_qubit(t, [c, s, s, c]);
    }

    /// RZ(t) = exp(-i t Z / 2)
    pub fn apply_rz(&mut self, t: usize, theta: f64) {
        let lo = Complex64::from_polar(1.0, -theta / 2.0);
        let hi = Complex64::from_polar(1.0, theta / 2.0);
        let z = Complex64::new(0.0, 0.0);
        self.apply_one_qubit(t, [lo, z, z, hi]);
    }

    /// RZZ(t) = exp(-i t ZZ / 2)
    pub fn apply_rzz(&mut self, a: usize, b: usize, theta: f64) {
        let same = Complex64::from_polar(1.0, -theta / 2.0);
        let diff = Complex64::from_polar(1.0, theta / 2.0);
        let kernel = |(i, amp): (usize, &mut Complex64)| {
            let parity = (i >> a ^ i >> b) & 1;
            *amp *= if parity == 0 { same } else { diff };
        };
        if self.n_qubits >= PAR_THRESHOLD {
            self.amps.par_iter_mut().enumerate().for_each(kernel);
        } else {
            self.amps.iter_mut().enumerate().for_each(kernel);
        }
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) {
        let cm = 1usize << control;
        let tm = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cm != 0 && i & tm == 0 {
                self.amps.swap(i, i | tm);
            }
        }
    }

    pub fn apply_swap(&mut self, a: usize, b: usize) {
        let am = 1usize << a;
        let bm = 1usize << b;
        for i in 0..self.amps.len() {
            if i & am != 0 && i & bm == 0 {
                self.amps.swap(i, (i & !am) | bm);
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate, params: &ParamVector) -> Result<()> {
        match *gate {
            Gate::H(q) => self.apply_h(q),
            Gate::Rx(q, a) => self.apply_rx(q, a.resolve(params)?),
            Gate::Rz(q, a) => self.apply_rz(q, a.resolve(params)?),
            Gate::Rzz(q, r, a) => self.apply_rzz(q, r, a.resolve(params)?),
            Gate::Cnot(c, t) => self.apply_cnot(c, t),
            Gate::Swap(a, b) => self.apply_swap(a, b),
        }
        Ok(())
    }

    /// Relabel qubits: bit `u` of the result reads bit `perm[u]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> StateVector {
        let n = self.n_qubits;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, &amp) in self.amps.iter().enumerate() {
            let mut j = 0usize;
            for (u, &p) in perm.iter().enumerate() {
                if i >> p & 1 == 1 {
                    j |= 1 << u;
                }
            }
            out[j] = amp;
        }
        StateVector {
            n_qubits: n,
            amps: out,
        }
    }
}

/// Gate-by-gate execution from |0...0>.
pub fn simulate(circuit: &Circuit, params: &ParamVector, cap: usize) -> Result<StateVector> {
    if circuit.n_qubits > cap {
        return Err(Error::QubitCapExceeded {
            n_qubits: circuit.n_qubits,
            cap,
        });
    }
    let mut sv = StateVector::zero(circuit.n_qubits);
    for gate in &circuit.gates {
        sv.apply_gate(gate, params)?;
    }
    Ok(sv)
}

/// Per-basis value of sum_terms over z in {-1, +1}: the diagonal phase and
/// objective tables.
fn pauli_table(
    n_qubits: usize,
    rz: &[(usize, f64)],
    rzz: &[(usize, usize, f64)],
) -> Vec<f64> {
    let size = 1usize << n_qubits;
    let mut table = vec![0.0f64; size];
    let fill = |(ci, slice): (usize, &mut [f64])| {
        let base = ci * CHUNK;
        for (off, out) in slice.iter_mut().enumerate() {
            let bits = (base + off) as u64;
            let mut e = 0.0;
            for &(u, v, c) in rzz {
                let same = (bits >> u ^ bits >> v) & 1 == 0;
                e += if same { c } else { -c };
            }
            for &(u, c) in rz {
                e += if bits >> u & 1 == 1 { -c } else { c };
            }
            *out = e;
        }
    };
    if n_qubits >= PAR_THRESHOLD {
        table.par_chunks_mut(CHUNK).enumerate().for_each(fill);
    } else {
        table.chunks_mut(CHUNK).enumerate().for_each(fill);
    }
    table
}

/// Fast QAOA executor for one Ising model and ansatz: the cost layer is a
/// single diagonal phase pass over a precomputed table, the mixer is N
/// single-qubit rotations. Expectations are evaluated against the full
/// model even when the ansatz keeps only a subset of pairs.
#[derive(Debug, Clone)]
pub struct QaoaSimulator {
    pub ansatz: QaoaAnsatz,
    /// Circuit phase per basis state at unit gamma (standard mode).
    circuit_table: Vec<f64>,
    /// Pauli part of the objective Hamiltonian per basis state.
    obj_table: Vec<f64>,
    pub constant: f64,
}

impl QaoaSimulator {
    pub fn new(model: &IsingModel, ansatz: QaoaAnsatz, cap: usize) -> Result<Self> {
        if model.n_qubits > cap {
            return Err(Error::QubitCapExceeded {
                n_qubits: model.n_qubits,
                cap,
            });
        }
        if ansatz.n_qubits != model.n_qubits {
            return Err(Error::LengthMismatch {
                expected: model.n_qubits,
                got: ansatz.n_qubits,
            });
        }
        let circuit_table = pauli_table(ansatz.n_qubits, &ansatz.rz, &ansatz.rzz);
        let obj_table = model.energy_table(false);
        Ok(Self {
            ansatz,
            circuit_table,
            obj_table,
            constant: model.constant,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.ansatz.n_qubits
    }

    fn phase_pass(&self, sv: &mut StateVector, table: &[f64], scale: f64) {
        let kernel = |(amp, &e): (&mut Complex64, &f64)| {
            *amp *= Complex64::from_polar(1.0, -scale * e);
        };
        if sv.n_qubits >= PAR_THRESHOLD {
            sv.amps.par_iter_mut().zip(table).for_each(kernel);
        } else {
            sv.amps.iter_mut().zip(table).for_each(kernel);
        }
    }

    /// exp(i beta X) on every qubit (the mixer exp(-i beta H_B) with
    /// H_B = -sum X), with per-qubit angles in multi-angle mode.
    fn mixer_pass(&self, sv: &mut StateVector, betas: &[f64]) {
        for (q, &beta) in betas.iter().enumerate() {
            sv.apply_rx(q, -2.0 * beta);
        }
    }

    /// The prepared state for `params` via the diagonal fast path.
    pub fn state(&self, params: &ParamVector) -> Result<StateVector> {
        let n = self.n_qubits();
        let mut sv = StateVector::uniform(n);
        match params {
            ParamVector::Standard { gamma, beta } => {
                if gamma.len() != self.ansatz.p || beta.len() != self.ansatz.p {
                    return Err(Error::LengthMismatch {
                        expected: self.ansatz.p,
                        got: gamma.len(),
                    });
                }
                for l in 0..self.ansatz.p {
                    self.phase_pass(&mut sv, &self.circuit_table, gamma[l]);
                    self.mixer_pass(&mut sv, &vec![beta[l]; n]);
                }
            }
            ParamVector::MultiAngle { layers } => {
                if layers.len() != self.ansatz.p {
                    return Err(Error::LengthMismatch {
                        expected: self.ansatz.p,
                        got: layers.len(),
                    });
                }
                for layer in layers {
                    if layer.rz.len() != self.ansatz.rz.len()
                        || layer.rzz.len() != self.ansatz.rzz.len()
                        || layer.rx.len() != n
                    {
                        return Err(Error::InvalidParameter(
                            "multi-angle layer shape does not match ansatz".into(),
                        ));
                    }
                    let rz: Vec<(usize, f64)> = self
                        .ansatz
                        .rz
                        .iter()
                        .zip(&layer.rz)
                        .map(|(&(q, _), &a)| (q, a))
                        .collect();
                    let rzz: Vec<(usize, usize, f64)> = self
                        .ansatz
                        .rzz
                        .iter()
                        .zip(&layer.rzz)
                        .map(|(&(u, v, _), &a)| (u, v, a))
                        .collect();
                    let table = pauli_table(n, &rz, &rzz);
                    self.phase_pass(&mut sv, &table, 1.0);
                    self.mixer_pass(&mut sv, &layer.rx);
                }
            }
        }
        Ok(sv)
    }

    /// <H_C> of an explicit state against the full objective.
    pub fn expectation_of(&self, sv: &StateVector) -> f64 {
        expectation_with_table(sv, &self.obj_table) + self.constant
    }

    /// <H_C> at `params` via the fast path.
    pub fn expectation(&self, params: &ParamVector) -> Result<f64> {
        Ok(self.expectation_of(&self.state(params)?))
    }

    /// Flat-parameter objective for the optimizer; `template` fixes the shape.
    pub fn expectation_flat(&self, template: &ParamVector, flat: &[f64]) -> Result<f64> {
        self.expectation(&template.from_flat(flat)?)
    }
}

fn expectation_with_table(sv: &StateVector, table: &[f64]) -> f64 {
    let kernel = |pairs: (&[Complex64], &[f64])| {
        let (amps, es) = pairs;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (a, &e) in amps.iter().zip(es) {
            let y = a.norm_sqr() * e - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    };
    if sv.n_qubits >= PAR_THRESHOLD {
        sv.amps
            .par_chunks(CHUNK)
            .zip(table.par_chunks(CHUNK))
            .map(kernel)
            .collect::<Vec<_>>()
            .into_iter()
            .sum()
    } else {
        kernel((&sv.amps, table))
    }
}

/// <sv| H |sv> for a diagonal Hamiltonian, full table built on the fly.
pub fn expectation(sv: &StateVector, model: &IsingModel) -> Result<f64> {
    if sv.n_qubits != model.n_qubits {
        return Err(Error::LengthMismatch {
            expected: model.n_qubits,
            got: sv.n_qubits,
        });
    }
    let table = model.energy_table(false);
    Ok(expectation_with_table(sv, &table) + model.constant)
}

/// Measurement counts from repeated shots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotDistribution {
    pub n_qubits: usize,
    pub counts: BTreeMap<u64, u64>,
    pub shots: u64,
}

impl ShotDistribution {
    pub fn frequency(&self, bits: u64) -> f64 {
        *self.counts.get(&bits).unwrap_or(&0) as f64 / self.shots as f64
    }

    /// `<bitstring> <count>` per line, qubit 0 leftmost.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&bits, &count) in &self.counts {
            out.push_str(&crate::bits::format_bits(bits, self.n_qubits));
            out.push(' ');
            out.push_str(&count.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, n_qubits: usize) -> Result<Self> {
        let mut counts = BTreeMap::new();
        let mut shots = 0u64;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let bits = crate::bits::parse_bits(
                it.next().ok_or(Error::Parse {
                    line: lineno + 1,
                    msg: "missing bitstring".into(),
                })?,
                n_qubits,
            )?;
            let count: u64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: lineno + 1,
                    msg: "missing count".into(),
                })?;
            *counts.entry(bits).or_insert(0) += count;
            shots += count;
        }
        Ok(Self {
            n_qubits,
            counts,
            shots,
        })
    }
}

/// Multinomial sample of `shots` measurements from |amps|^2.
pub fn sample(sv: &StateVector, shots: u64, seed: u64) -> ShotDistribution {
    let probs: Vec<f64> = sv.amps.iter().map(|a| a.norm_sqr()).collect();
    let dist = WeightedIndex::new(&probs).expect("state norm is positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let outcome = dist.sample(&mut rng) as u64;
        *counts.entry(outcome).or_insert(0u64) += 1;
    }
    ShotDistribution {
        n_qubits: sv.n_qubits,
        counts,
        shots,
    }
}

/// Central finite differences of `f` at `x`.
pub fn finite_diff_gradient(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x: &[f64],
    step: f64,
) -> Vec<f64> {
    let mut grad = vec![0.0; x.len()];
    let mut probe = x.to_vec();
    for i in 0..x.len() {
        probe[i] = x[i] + step;
        let hi = f(&probe);
        probe[i] = x[i] - step;
        let lo = f(&probe);
        probe[i] = x[i];
        grad[i] = (hi - lo) / (2.0 * step);
    }
    grad
}

/// Default finite-difference step for expectation gradients.
pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Gradient of <H_C> with respect to the flattened parameters.
pub fn gradient(sim: &QaoaSimulator, params: &ParamVector, step: f64) -> Result<Vec<f64>> {
    let flat = params.to_flat();
    let mut err = None;
    let mut f = |x: &[f64]| match sim.expectation_flat(params, x) {
        Ok(v) => v,
        Err(e) => {
            err = Some(e);
            f64::NAN
        }
    };
    let grad = finite_diff_gradient(&mut f, &flat, step);
    match err {
        Some(e) => Err(e),
        None => Ok(grad),
    }
}
