//! Ising form of the QUBO cost: H_C = sum J_uv Z_u Z_v + sum h_u Z_u + c,
//! mean-absolute-coefficient normalization, and the exhaustive spectrum
//! oracle used in place of an external solver at desk scale.
//!
//! Spin convention: measurement bit 1 corresponds to eigenvalue z = -1, so
//! q_u = (1 - z_u) / 2 maps bit values onto binary variables unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubo::QuboModel;

/// Default cap on exhaustive enumeration (2^24 states).
pub const DEFAULT_SPECTRUM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsingModel {
    pub n_qubits: usize,
    /// Pair couplings on unordered distinct pairs (u < v).
    pub j: BTreeMap<(usize, usize), f64>,
    /// Single-qubit fields.
    pub h: BTreeMap<usize, f64>,
    /// Scalar offset c.
    pub constant: f64,
    /// Factor the raw (QUBO-equivalent) coefficients were divided by.
    pub norm_factor: f64,
}

/// Exact spectrum summary from exhaustive enumeration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    pub e_min: f64,
    pub e_max: f64,
    /// All minimizing basis states, as packed bits (bit u = qubit u).
    pub ground_states: Vec<u64>,
    /// Mean energy over all 2^N states; equals the constant c analytically.
    pub e_random: f64,
}

/// Map an expanded QUBO onto the Ising Hamiltonian via q_u = (1 - Z_u)/2.
pub fn to_ising(q: &QuboModel) -> IsingModel {
    let mut j: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut h: BTreeMap<usize, f64> = BTreeMap::new();
    let mut c = q.constant;
    for (&u, &a) in &q.linear {
        // a*q = a/2 - (a/2) Z
        *h.entry(u).or_insert(0.0) -= a / 2.0;
        c += a / 2.0;
    }
    for (&(u, v), &b) in &q.quadratic {
        // b*qq = b/4 (1 - Z_u - Z_v + Z_u Z_v)
        *j.entry((u, v)).or_insert(0.0) += b / 4.0;
        *h.entry(u).or_insert(0.0) -= b / 4.0;
        *h.entry(v).or_insert(0.0) -= b / 4.0;
        c += b / 4.0;
    }
    IsingModel {
        n_qubits: q.n_vars,
        j,
        h,
        constant: c,
        norm_factor: 1.0,
    }
}

impl IsingModel {
    /// Mean absolute value over the stored J and h entries (zero-valued
    /// stored entries count toward the denominator).
    pub fn mean_abs_coefficient(&self) -> f64 {
        let n = self.j.len() + self.h.len();
        if n == 0 {
            return 0.0;
        }
        let sum: f64 = self
            .j
            .values()
            .chain(self.h.values())
            .map(|c| c.abs())
            .sum();
        sum / n as f64
    }

    /// Energy of a basis state, bits packed as bit u = qubit u.
    pub fn energy(&self, bits: u64) -> f64 {
        let z = |u: usize| if bits >> u & 1 == 1 { -1.0 } else { 1.0 };
        let mut e = self.constant;
        for (&(u, v), &jc) in &self.j {
            e += jc * z(u) * z(v);
        }
        for (&u, &hc) in &self.h {
            e += hc * z(u);
        }
        e
    }

    /// Checked energy from an explicit bit vector.
    pub fn energy_bits(&self, bits: &[u8]) -> Result<f64> {
        if bits.len() != self.n_qubits {
            return Err(Error::LengthMismatch {
                expected: self.n_qubits,
                got: bits.len(),
            });
        }
        let mut packed = 0u64;
        for (u, &b) in bits.iter().enumerate() {
            packed |= ((b & 1) as u64) << u;
        }
        Ok(self.energy(packed))
    }

    /// Energy of every basis state. `include_constant` excludes c for the
    /// phase tables of the simulator fast path.
    pub fn energy_table(&self, include_constant: bool) -> Vec<f64> {
        use rayon::prelude::*;
        let n = self.n_qubits;
        let size = 1usize << n;
        let j: Vec<(usize, usize, f64)> = self.j.iter().map(|(&(u, v), &c)| (u, v, c)).collect();
        let h: Vec<(usize, f64)> = self.h.iter().map(|(&u, &c)| (u, c)).collect();
        let base_c = if include_constant { self.constant } else { 0.0 };
        let chunk = 1usize << 14.min(n);
        let mut table = vec![0.0f64; size];
        table
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(ci, slice)| {
                let base = ci * chunk;
                for (off, out) in slice.iter_mut().enumerate() {
                    let bits = (base + off) as u64;
                    let mut e = base_c;
                    for &(u, v, c) in &j {
                        let same = (bits >> u ^ bits >> v) & 1 == 0;
                        e += if same { c } else { -c };
                    }
                    for &(u, c) in &h {
                        e += if bits >> u & 1 == 1 { -c } else { c };
                    }
                    *out = e;
                }
            });
        table
    }
}

/// Rescale so the mean absolute J/h coefficient is exactly 1; the factor
/// accumulates into `norm_factor`. Equivalent to rescaling the gamma angles.
pub fn normalize(m: &IsingModel) -> Result<IsingModel> {
    let s = m.mean_abs_coefficient();
    if s == 0.0 {
        return Err(Error::AllZeroModel);
    }
    Ok(IsingModel {
        n_qubits: m.n_qubits,
        j: m.j.iter().map(|(&k, &v)| (k, v / s)).collect(),
        h: m.h.iter().map(|(&k, &v)| (k, v / s)).collect(),
        constant: m.constant / s,
        norm_factor: m.norm_factor * s,
    })
}

/// Exhaustively enumerate all 2^N states: exact minimum, maximum, every
/// ground state, and the mean energy (which must equal c).
pub fn exhaustive_spectrum(m: &IsingModel, cap: usize) -> Result<Spectrum> {
    use rayon::prelude::*;
    if m.n_qubits > cap {
        return Err(Error::QubitCapExceeded {
            n_qubits: m.n_qubits,
            cap,
        });
    }
    let table = m.energy_table(true);
    let chunk = 1usize << 14.min(m.n_qubits);

    struct ChunkStat {
        min: f64,
        max: f64,
        sum: f64,
    }
    let stats: Vec<ChunkStat> = table
        .par_chunks(chunk)
        .map(|slice| {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            // Kahan summation keeps the 2^N average well under the 1e-9
            // tolerance on the E_random = c identity.
            let mut sum = 0.0f64;
            let mut comp = 0.0f64;
            for &e in slice {
                min = min.min(e);
                max = max.max(e);
                let y = e - comp;
                let t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            ChunkStat { min, max, sum }
        })
        .collect();

    let e_min = stats.iter().fold(f64::INFINITY, |a, s| a.min(s.min));
    let e_max = stats.iter().fold(f64::NEG_INFINITY, |a, s| a.max(s.max));
    let total: f64 = stats.iter().map(|s| s.sum).sum();
    let e_random = total / table.len() as f64;

    let ground_states: Vec<u64> = table
        .iter()
        .enumerate()
        .filter(|(_, &e)| e == e_min)
        .map(|(i, _)| i as u64)
        .collect();

    assert!(
        (e_random - m.constant).abs() < 1e-9,
        "mean energy {} deviates from constant {}",
        e_random,
        m.constant
    );
    Ok(Spectrum {
        e_min,
        e_max,
        ground_states,
        e_random,
    })
}
