//! Connectivity-forced ansatz compression: drop every ZZ rotation whose
//! endpoints are not adjacent on the hardware under a chosen layout, so the
//! circuit needs no SWAPs. The objective Hamiltonian keeps all of its terms;
//! only the circuit loses gates. The multi-angle variant gives each
//! remaining rotation its own parameter.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, ParamVector, QaoaAnsatz};
use crate::coupling::CouplingMap;
use crate::error::{Error, Result};
use crate::ising::IsingModel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionPlan {
    /// Logical qubit -> physical qubit.
    pub layout: Vec<usize>,
    /// Interaction pairs placed on coupling-map edges, ascending.
    pub kept: Vec<(usize, usize)>,
    /// Excised pairs, ascending.
    pub removed: Vec<(usize, usize)>,
}

/// Identity layout along the BFS ordering of the map: logical u sits on the
/// u-th qubit discovered from physical qubit 0.
pub fn bfs_identity_layout(map: &CouplingMap, n_logical: usize) -> Result<Vec<usize>> {
    if n_logical > map.n_phys {
        return Err(Error::InvalidLayout(format!(
            "{n_logical} logical qubits exceed {} physical",
            map.n_phys
        )));
    }
    Ok(map.bfs_order(0)[..n_logical].to_vec())
}

/// Greedy alternative: fill physical sites in BFS order, each time placing
/// the unplaced logical qubit with the largest total |J| to already placed
/// neighbors of the new site (ties to the lowest index).
pub fn greedy_weight_layout(m: &IsingModel, map: &CouplingMap) -> Result<Vec<usize>> {
    let n = m.n_qubits;
    if n > map.n_phys {
        return Err(Error::InvalidLayout(format!(
            "{n} logical qubits exceed {} physical",
            map.n_phys
        )));
    }
    let weight = |a: usize, b: usize| -> f64 {
        m.j.get(&(a.min(b), a.max(b))).map_or(0.0, |j| j.abs())
    };
    let order = map.bfs_order(0);
    let mut phys_of = vec![usize::MAX; n];
    let mut placed: Vec<usize> = Vec::new(); // logical indices in placement order

    // Seed with the logical qubit of largest total coupling weight.
    let first = (0..n)
        .max_by(|&a, &b| {
            let wa: f64 = (0..n).map(|o| weight(a, o)).sum();
            let wb: f64 = (0..n).map(|o| weight(b, o)).sum();
            wa.total_cmp(&wb).then(b.cmp(&a))
        })
        .expect("nonempty model");
    phys_of[first] = order[0];
    placed.push(first);

    for &site in order.iter().skip(1).take(n - 1) {
        let gain = |cand: usize| -> f64 {
            placed
                .iter()
                .filter(|&&l| map.has_edge(phys_of[l], site))
                .map(|&l| weight(cand, l))
                .sum()
        };
        let next = (0..n)
            .filter(|&l| phys_of[l] == usize::MAX)
            .max_by(|&a, &b| gain(a).total_cmp(&gain(b)).then(b.cmp(&a)))
            .expect("an unplaced qubit remains");
        phys_of[next] = site;
        placed.push(next);
    }
    Ok(phys_of)
}

/// Partition the model's pairs into kept (adjacent under the layout) and
/// removed.
pub fn plan_compression(
    m: &IsingModel,
    map: &CouplingMap,
    layout: &[usize],
) -> Result<CompressionPlan> {
    if layout.len() != m.n_qubits {
        return Err(Error::InvalidLayout(format!(
            "layout covers {} qubits, model has {}",
            layout.len(),
            m.n_qubits
        )));
    }
    let mut seen = vec![false; map.n_phys];
    for &p in layout {
        if p >= map.n_phys {
            return Err(Error::InvalidLayout(format!("physical qubit {p} out of range")));
        }
        if seen[p] {
            return Err(Error::InvalidLayout(format!("physical qubit {p} assigned twice")));
        }
        seen[p] = true;
    }
    let mut kept = Vec::new();
    let mut removed = Vec::new();
    for &(u, v) in m.j.keys() {
        if map.has_edge(layout[u], layout[v]) {
            kept.push((u, v));
        } else {
            removed.push((u, v));
        }
    }
    Ok(CompressionPlan {
        layout: layout.to_vec(),
        kept,
        removed,
    })
}

/// Ansatz restricted to the kept pairs; all RZ and RX gates stay.
pub fn cf_ansatz(m: &IsingModel, plan: &CompressionPlan, p: usize, multi_angle: bool) -> QaoaAnsatz {
    let kept: std::collections::BTreeSet<(usize, usize)> = plan.kept.iter().copied().collect();
    QaoaAnsatz {
        n_qubits: m.n_qubits,
        rz: m.h.iter().map(|(&u, &h)| (u, h)).collect(),
        rzz: m
            .j
            .iter()
            .filter(|(k, _)| kept.contains(k))
            .map(|(&(u, v), &j)| (u, v, j))
            .collect(),
        p,
        multi_angle,
    }
}

/// Compressed circuit with the standard 2p parameters.
pub fn build_cf_qaoa(m: &IsingModel, plan: &CompressionPlan, p: usize) -> Circuit {
    cf_ansatz(m, plan, p, false).build_circuit()
}

/// Compressed circuit where every rotation carries its own angle; returns
/// the zero parameter template alongside.
pub fn build_cf_maqaoa(
    m: &IsingModel,
    plan: &CompressionPlan,
    p: usize,
) -> (Circuit, ParamVector) {
    let ansatz = cf_ansatz(m, plan, p, true);
    let template = ansatz.param_template();
    (ansatz.build_circuit(), template)
}
