//! Gate-list circuit IR, the QAOA ansatz over an Ising model, variational
//! parameter vectors (standard and multi-angle), and parameter
//! canonicalization.
//!
//! Gate conventions: RZ(t) = exp(-i t Z / 2), RX(t) = exp(-i t X / 2),
//! RZZ(t) = exp(-i t ZZ / 2). One QAOA layer implements
//! exp(-i beta H_B) exp(-i gamma H_C) with mixer H_B = -sum_u X_u, so the
//! cost terms bind as RZ(2 gamma h_u) / RZZ(2 gamma J_uv) and the mixer
//! binds as RX(-2 beta) on every qubit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ising::IsingModel;

/// An angle that is either fixed or resolved against a [`ParamVector`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Angle {
    Literal(f64),
    /// scale * gamma[layer]
    Gamma { layer: usize, scale: f64 },
    /// scale * beta[layer]
    Beta { layer: usize, scale: f64 },
    /// 2 * layers[layer].rz[index]
    MaRz { layer: usize, index: usize },
    /// 2 * layers[layer].rzz[index]
    MaRzz { layer: usize, index: usize },
    /// -2 * layers[layer].rx[index]
    MaRx { layer: usize, index: usize },
}

impl Angle {
    pub fn resolve(&self, params: &ParamVector) -> Result<f64> {
        let bad = || Error::InvalidParameter("angle reference does not match parameter mode".into());
        Ok(match (*self, params) {
            (Angle::Literal(x), _) => x,
            (Angle::Gamma { layer, scale }, ParamVector::Standard { gamma, .. }) => {
                scale * *gamma.get(layer).ok_or_else(bad)?
            }
            (Angle::Beta { layer, scale }, ParamVector::Standard { beta, .. }) => {
                scale * *beta.get(layer).ok_or_else(bad)?
            }
            (Angle::MaRz { layer, index }, ParamVector::MultiAngle { layers }) => {
                2.0 * *layers.get(layer).ok_or_else(bad)?.rz.get(index).ok_or_else(bad)?
            }
            (Angle::MaRzz { layer, index }, ParamVector::MultiAngle { layers }) => {
                2.0 * *layers.get(layer).ok_or_else(bad)?.rzz.get(index).ok_or_else(bad)?
            }
            (Angle::MaRx { layer, index }, ParamVector::MultiAngle { layers }) => {
                -2.0 * *layers.get(layer).ok_or_else(bad)?.rx.get(index).ok_or_else(bad)?
            }
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    Rx(usize, Angle),
    Rz(usize, Angle),
    Rzz(usize, usize, Angle),
    Cnot(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::Rx(q, _) | Gate::Rz(q, _) => (q, None),
            Gate::Rzz(a, b, _) | Gate::Cnot(a, b) | Gate::Swap(a, b) => (a, Some(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        let (a, b) = gate.qubits();
        debug_assert!(a < self.n_qubits);
        debug_assert!(b.map_or(true, |b| b < self.n_qubits && b != a));
        self.gates.push(gate);
    }

    /// Replace every angle reference with its value under `params`.
    pub fn bind(&self, params: &ParamVector) -> Result<Circuit> {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            gates.push(match *g {
                Gate::Rx(q, a) => Gate::Rx(q, Angle::Literal(a.resolve(params)?)),
                Gate::Rz(q, a) => Gate::Rz(q, Angle::Literal(a.resolve(params)?)),
                Gate::Rzz(q, r, a) => Gate::Rzz(q, r, Angle::Literal(a.resolve(params)?)),
                other => other,
            });
        }
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    /// One gate per line: `kind qubit [qubit] [angle]`, with a `qubits N`
    /// header. Only bound circuits serialize.
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for g in &self.gates {
            let line = match *g {
                Gate::H(q) => format!("h {q}"),
                Gate::Rx(q, Angle::Literal(a)) => format!("rx {q} {a:.17}"),
                Gate::Rz(q, Angle::Literal(a)) => format!("rz {q} {a:.17}"),
                Gate::Rzz(q, r, Angle::Literal(a)) => format!("rzz {q} {r} {a:.17}"),
                Gate::Cnot(a, b) => format!("cnot {a} {b}"),
                Gate::Swap(a, b) => format!("swap {a} {b}"),
                _ => {
                    return Err(Error::InvalidParameter(
                        "cannot serialize an unbound angle reference".into(),
                    ))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
            let l = raw.split('#').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        });
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let (line, header) = lines
            .next()
            .ok_or_else(|| err(1, "empty circuit file".into()))?;
        let n_qubits: usize = header
            .strip_prefix("qubits ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| err(line, format!("expected `qubits N`, got `{header}`")))?;
        let mut circuit = Circuit::new(n_qubits);
        for (lineno, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            let q = |i: usize| -> Result<usize> {
                t.get(i)
                    .and_then(|s| s.parse().ok())
                    .filter(|&q| q < n_qubits)
                    .ok_or_else(|| err(lineno, format!("bad qubit in `{l}`")))
            };
            let a = |i: usize| -> Result<Angle> {
                t.get(i)
                    .and_then(|s| s.parse().ok())
                    .map(Angle::Literal)
                    .ok_or_else(|| err(lineno, format!("bad angle in `{l}`")))
            };
            let gate = match t[0] {
                "h" => Gate::H(q(1)?),
                "rx" => Gate::Rx(q(1)?, a(2)?),
                "rz" => Gate::Rz(q(1)?, a(2)?),
                "rzz" => Gate::Rzz(q(1)?, q(2)?, a(3)?),
                "cnot" => Gate::Cnot(q(1)?, q(2)?),
                "swap" => Gate::Swap(q(1)?, q(2)?),
                other => return Err(err(lineno, format!("unknown gate `{other}`"))),
            };
            circuit.push(gate);
        }
        Ok(circuit)
    }
}

/// Per-layer angles in multi-angle mode, aligned with the ansatz term order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaLayer {
    pub rz: Vec<f64>,
    pub rzz: Vec<f64>,
    pub rx: Vec<f64>,
}

/// The variational angles: (gamma, beta) per layer, or one angle per gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ParamVector {
    Standard { gamma: Vec<f64>, beta: Vec<f64> },
    MultiAngle { layers: Vec<MaLayer> },
}

impl ParamVector {
    pub fn standard(gamma: Vec<f64>, beta: Vec<f64>) -> Self {
        assert_eq!(gamma.len(), beta.len());
        ParamVector::Standard { gamma, beta }
    }

    pub fn p(&self) -> usize {
        match self {
            ParamVector::Standard { gamma, .. } => gamma.len(),
            ParamVector::MultiAngle { layers } => layers.len(),
        }
    }

    pub fn n_params(&self) -> usize {
        match self {
            ParamVector::Standard { gamma, beta } => gamma.len() + beta.len(),
            ParamVector::MultiAngle { layers } => layers
                .iter()
                .map(|l| l.rz.len() + l.rzz.len() + l.rx.len())
                .sum(),
        }
    }

    /// Flatten for the optimizer: standard as gamma_1..gamma_p beta_1..beta_p,
    /// multi-angle as rz|rzz|rx per layer in order.
    pub fn to_flat(&self) -> Vec<f64> {
        match self {
            ParamVector::Standard { gamma, beta } => {
                gamma.iter().chain(beta.iter()).copied().collect()
            }
            ParamVector::MultiAngle { layers } => layers
                .iter()
                .flat_map(|l| l.rz.iter().chain(l.rzz.iter()).chain(l.rx.iter()))
                .copied()
                .collect(),
        }
    }

    /// Rebuild from a flat vector with the same shape as `self`.
    pub fn from_flat(&self, flat: &[f64]) -> Result<ParamVector> {
        if flat.len() != self.n_params() {
            return Err(Error::LengthMismatch {
                expected: self.n_params(),
                got: flat.len(),
            });
        }
        Ok(match self {
            ParamVector::Standard { gamma, .. } => {
                let p = gamma.len();
                ParamVector::Standard {
                    gamma: flat[..p].to_vec(),
                    beta: flat[p..].to_vec(),
                }
            }
            ParamVector::MultiAngle { layers } => {
                let mut at = 0;
                let mut out = Vec::with_capacity(layers.len());
                for l in layers {
                    let take = |at: &mut usize, n: usize| {
                        let v = flat[*at..*at + n].to_vec();
                        *at += n;
                        v
                    };
                    out.push(MaLayer {
                        rz: take(&mut at, l.rz.len()),
                        rzz: take(&mut at, l.rzz.len()),
                        rx: take(&mut at, l.rx.len()),
                    });
                }
                ParamVector::MultiAngle { layers: out }
            }
        })
    }
}

fn wrap(x: f64, lo: f64, hi: f64) -> f64 {
    if (lo..hi).contains(&x) {
        return x;
    }
    let w = (x - lo).rem_euclid(hi - lo) + lo;
    // rem_euclid can land exactly on hi through rounding
    if w >= hi {
        lo
    } else {
        w
    }
}

/// Canonical parameter ranges. Standard mode: beta shifts by multiples of pi
/// into [-pi/2, pi/2), which leaves the prepared state unchanged up to a
/// global phase; gamma reduces modulo 2 pi into [-pi, pi). Multi-angle mode:
/// every per-gate angle has the same pi-translation symmetry, so all entries
/// reduce into [-pi/2, pi/2).
pub fn canonicalize_params(v: &ParamVector) -> ParamVector {
    use std::f64::consts::{FRAC_PI_2, PI};
    match v {
        ParamVector::Standard { gamma, beta } => ParamVector::Standard {
            gamma: gamma.iter().map(|&g| wrap(g, -PI, PI)).collect(),
            beta: beta.iter().map(|&b| wrap(b, -FRAC_PI_2, FRAC_PI_2)).collect(),
        },
        ParamVector::MultiAngle { layers } => ParamVector::MultiAngle {
            layers: layers
                .iter()
                .map(|l| MaLayer {
                    rz: l.rz.iter().map(|&x| wrap(x, -FRAC_PI_2, FRAC_PI_2)).collect(),
                    rzz: l.rzz.iter().map(|&x| wrap(x, -FRAC_PI_2, FRAC_PI_2)).collect(),
                    rx: l.rx.iter().map(|&x| wrap(x, -FRAC_PI_2, FRAC_PI_2)).collect(),
                })
                .collect(),
        },
    }
}

/// Problem-derived ansatz structure: which RZ/RZZ terms appear in each cost
/// layer (all of them for plain QAOA, the kept pairs for compressed
/// circuits), in a fixed deterministic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaAnsatz {
    pub n_qubits: usize,
    /// (qubit, h_u) in ascending qubit order.
    pub rz: Vec<(usize, f64)>,
    /// (u, v, J_uv) in ascending pair order.
    pub rzz: Vec<(usize, usize, f64)>,
    pub p: usize,
    pub multi_angle: bool,
}

impl QaoaAnsatz {
    /// The full ansatz with every stored Ising term.
    pub fn standard(m: &IsingModel, p: usize) -> Self {
        Self {
            n_qubits: m.n_qubits,
            rz: m.h.iter().map(|(&u, &h)| (u, h)).collect(),
            rzz: m.j.iter().map(|(&(u, v), &j)| (u, v, j)).collect(),
            p,
            multi_angle: false,
        }
    }

    pub fn with_multi_angle(mut self) -> Self {
        self.multi_angle = true;
        self
    }

    /// Parameters per layer in multi-angle mode: |rz| + |rzz| + N.
    pub fn ma_params_per_layer(&self) -> usize {
        self.rz.len() + self.rzz.len() + self.n_qubits
    }

    /// Zero parameters of the right shape.
    pub fn param_template(&self) -> ParamVector {
        if self.multi_angle {
            ParamVector::MultiAngle {
                layers: (0..self.p)
                    .map(|_| MaLayer {
                        rz: vec![0.0; self.rz.len()],
                        rzz: vec![0.0; self.rzz.len()],
                        rx: vec![0.0; self.n_qubits],
                    })
                    .collect(),
            }
        } else {
            ParamVector::Standard {
                gamma: vec![0.0; self.p],
                beta: vec![0.0; self.p],
            }
        }
    }

    /// Multi-angle parameters that reproduce the standard circuit at
    /// (gamma, beta): per-gate angles gamma_l * h_u, gamma_l * J_uv, beta_l.
    pub fn broadcast(&self, gamma: &[f64], beta: &[f64]) -> Result<ParamVector> {
        if gamma.len() != self.p || beta.len() != self.p {
            return Err(Error::LengthMismatch {
                expected: self.p,
                got: gamma.len().min(beta.len()),
            });
        }
        Ok(ParamVector::MultiAngle {
            layers: (0..self.p)
                .map(|l| MaLayer {
                    rz: self.rz.iter().map(|&(_, h)| gamma[l] * h).collect(),
                    rzz: self.rzz.iter().map(|&(_, _, j)| gamma[l] * j).collect(),
                    rx: vec![beta[l]; self.n_qubits],
                })
                .collect(),
        })
    }

    /// Emit the gate list: Hadamards, then per layer the RZ and RZZ cost
    /// rotations followed by the RX mixer on every qubit.
    pub fn build_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.n_qubits);
        for q in 0..self.n_qubits {
            c.push(Gate::H(q));
        }
        for l in 0..self.p {
            if self.multi_angle {
                for (i, &(q, _)) in self.rz.iter().enumerate() {
                    c.push(Gate::Rz(q, Angle::MaRz { layer: l, index: i }));
                }
                for (i, &(u, v, _)) in self.rzz.iter().enumerate() {
                    c.push(Gate::Rzz(u, v, Angle::MaRzz { layer: l, index: i }));
                }
                for q in 0..self.n_qubits {
                    c.push(Gate::Rx(q, Angle::MaRx { layer: l, index: q }));
                }
            } else {
                for &(q, h) in &self.rz {
                    c.push(Gate::Rz(q, Angle::Gamma { layer: l, scale: 2.0 * h }));
                }
                for &(u, v, j) in &self.rzz {
                    c.push(Gate::Rzz(u, v, Angle::Gamma { layer: l, scale: 2.0 * j }));
                }
                for q in 0..self.n_qubits {
                    c.push(Gate::Rx(q, Angle::Beta { layer: l, scale: -2.0 }));
                }
            }
        }
        c
    }
}

/// Plain QAOA circuit for an Ising model: `p` alternating cost/mixer layers
/// on the uniform superposition.
pub fn build_qaoa(m: &IsingModel, p: usize) -> Circuit {
    QaoaAnsatz::standard(m, p).build_circuit()
}
