//! Solution quality and runtime measures: the spectrum-normalized
//! approximation measure, the random-baseline measure, solution extraction
//! from measured distributions, acceptable-state probability, and the shot
//! bound for a target confidence.

use serde::{Deserialize, Serialize};

use crate::bits::cmp_lexicographic;
use crate::error::{Error, Result};
use crate::ising::{IsingModel, Spectrum};
use crate::simulator::{ShotDistribution, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectationMode {
    /// <H_C> from exact amplitudes.
    Exact,
    /// <H_C> from measured shot frequencies.
    Sampled,
}

/// Normalized quality of one expectation value against the exact spectrum.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ApproxReport {
    /// (E_max - <H>) / (E_max - E_min): 1 at the ground state, 0 at the top.
    pub r_true: f64,
    /// (E_random - <H>) / (E_random - E_min): 1 near-optimal, 0 for random
    /// guessing, negative when worse than random.
    pub r_random: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub e_random: f64,
    pub expectation: f64,
    pub mode: ExpectationMode,
}

/// Both approximation measures for a given expectation value.
pub fn approx_measures(
    expectation: f64,
    spectrum: &Spectrum,
    mode: ExpectationMode,
) -> Result<ApproxReport> {
    if spectrum.e_max == spectrum.e_min {
        return Err(Error::DegenerateSpectrum);
    }
    Ok(ApproxReport {
        r_true: (spectrum.e_max - expectation) / (spectrum.e_max - spectrum.e_min),
        r_random: (spectrum.e_random - expectation) / (spectrum.e_random - spectrum.e_min),
        e_min: spectrum.e_min,
        e_max: spectrum.e_max,
        e_random: spectrum.e_random,
        expectation,
        mode,
    })
}

/// Frequency-weighted mean energy of a measured distribution.
pub fn expectation_from_distribution(
    dist: &ShotDistribution,
    m: &IsingModel,
) -> Result<f64> {
    if dist.n_qubits != m.n_qubits {
        return Err(Error::LengthMismatch {
            expected: m.n_qubits,
            got: dist.n_qubits,
        });
    }
    if dist.shots == 0 {
        return Err(Error::EmptyInput("shot distribution"));
    }
    let total: f64 = dist
        .counts
        .iter()
        .map(|(&bits, &count)| count as f64 * m.energy(bits))
        .sum();
    Ok(total / dist.shots as f64)
}

/// (lowest-energy observed string, most frequent string); ties resolve to
/// the lexicographically smallest bitstring.
pub fn extract_solutions(dist: &ShotDistribution, m: &IsingModel) -> Result<(u64, u64)> {
    if dist.counts.is_empty() {
        return Err(Error::EmptyInput("shot distribution"));
    }
    let n = dist.n_qubits;
    let mut best: Option<(u64, f64)> = None;
    let mut probable: Option<(u64, u64)> = None;
    for (&bits, &count) in &dist.counts {
        let e = m.energy(bits);
        best = Some(match best {
            None => (bits, e),
            Some((b, be)) => {
                if e < be || (e == be && cmp_lexicographic(bits, b, n).is_lt()) {
                    (bits, e)
                } else {
                    (b, be)
                }
            }
        });
        probable = Some(match probable {
            None => (bits, count),
            Some((b, bc)) => {
                if count > bc || (count == bc && cmp_lexicographic(bits, b, n).is_lt()) {
                    (bits, count)
                } else {
                    (b, bc)
                }
            }
        });
    }
    Ok((best.unwrap().0, probable.unwrap().0))
}

/// Acceptable-state probability mass and its uniform-sampling baseline.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AcceptabilityReport {
    /// Probability of measuring a state with per-state measure >= threshold.
    pub p_single: f64,
    /// Number of qualifying states divided by 2^N.
    pub random_baseline: f64,
    pub qualifying_states: u64,
    pub threshold: f64,
}

fn qualifying_table(m: &IsingModel, spectrum: &Spectrum, threshold: f64) -> Result<Vec<bool>> {
    if spectrum.e_max == spectrum.e_min {
        return Err(Error::DegenerateSpectrum);
    }
    let range = spectrum.e_max - spectrum.e_min;
    Ok(m
        .energy_table(true)
        .into_iter()
        .map(|e| (spectrum.e_max - e) / range >= threshold)
        .collect())
}

/// Acceptable probability from exact amplitudes.
pub fn acceptable_probability_state(
    sv: &StateVector,
    m: &IsingModel,
    spectrum: &Spectrum,
    threshold: f64,
) -> Result<AcceptabilityReport> {
    if sv.n_qubits != m.n_qubits {
        return Err(Error::LengthMismatch {
            expected: m.n_qubits,
            got: sv.n_qubits,
        });
    }
    let qualifies = qualifying_table(m, spectrum, threshold)?;
    let p_single: f64 = sv
        .amps
        .iter()
        .zip(&qualifies)
        .filter(|(_, &q)| q)
        .map(|(a, _)| a.norm_sqr())
        .sum();
    let qualifying_states = qualifies.iter().filter(|&&q| q).count() as u64;
    Ok(AcceptabilityReport {
        p_single,
        random_baseline: qualifying_states as f64 / qualifies.len() as f64,
        qualifying_states,
        threshold,
    })
}

/// Acceptable probability from measured shot frequencies.
pub fn acceptable_probability_dist(
    dist: &ShotDistribution,
    m: &IsingModel,
    spectrum: &Spectrum,
    threshold: f64,
) -> Result<AcceptabilityReport> {
    if dist.n_qubits != m.n_qubits {
        return Err(Error::LengthMismatch {
            expected: m.n_qubits,
            got: dist.n_qubits,
        });
    }
    if dist.shots == 0 {
        return Err(Error::EmptyInput("shot distribution"));
    }
    let qualifies = qualifying_table(m, spectrum, threshold)?;
    let hits: u64 = dist
        .counts
        .iter()
        .filter(|(&bits, _)| qualifies[bits as usize])
        .map(|(_, &c)| c)
        .sum();
    let qualifying_states = qualifies.iter().filter(|&&q| q).count() as u64;
    Ok(AcceptabilityReport {
        p_single: hits as f64 / dist.shots as f64,
        random_baseline: qualifying_states as f64 / qualifies.len() as f64,
        qualifying_states,
        threshold,
    })
}

/// Smallest K with 1 - (1 - p_single)^K >= confidence.
pub fn shots_for_confidence(p_single: f64, confidence: f64) -> Result<u64> {
    if !(0.0..1.0).contains(&confidence) || confidence == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "confidence {confidence} outside (0, 1)"
        )));
    }
    if p_single >= 1.0 {
        return Ok(1);
    }
    if p_single <= 0.0 {
        return Err(Error::UnboundedShots(p_single));
    }
    let bound = (1.0 - confidence).ln() / (1.0 - p_single).ln();
    let mut k = bound.ceil().max(1.0) as u64;
    // Fix up floating-point edges around the analytic bound.
    let total = |k: u64| 1.0 - (1.0 - p_single).powi(k as i32);
    while k > 1 && total(k - 1) >= confidence {
        k -= 1;
    }
    while total(k) < confidence {
        k += 1;
    }
    Ok(k)
}

/// Expected sampling cost for one experiment.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RuntimeEstimate {
    pub p_single: f64,
    pub k99: u64,
    /// Seconds per shot.
    pub t_single: f64,
    /// t_single * k99.
    pub t_total: f64,
    pub threshold: f64,
}

impl RuntimeEstimate {
    pub fn new(report: &AcceptabilityReport, confidence: f64, t_single: f64) -> Result<Self> {
        let k99 = shots_for_confidence(report.p_single, confidence)?;
        Ok(Self {
            p_single: report.p_single,
            k99,
            t_single,
            t_total: t_single * k99 as f64,
            threshold: report.threshold,
        })
    }
}

/// Each total runtime divided by the series minimum, so every curve starts
/// near 1 and the per-shot time cancels when it is constant.
pub fn runtime_ratio(series: &[RuntimeEstimate]) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(Error::EmptyInput("runtime series"));
    }
    let min = series
        .iter()
        .map(|r| r.t_total)
        .fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::InvalidParameter(
            "runtime series must be positive".into(),
        ));
    }
    Ok(series.iter().map(|r| r.t_total / min).collect())
}
