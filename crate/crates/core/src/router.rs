//! Deterministic greedy routing onto a coupling map, and the transpilation
//! cost model: SWAP insertion, CNOT counts, and dependency depth.
//!
//! Within each run of commuting RZZ gates the router repeatedly picks the
//! interacting pair whose mapped endpoints are farthest apart (ties to the
//! lowest logical pair), walks one endpoint along the lexicographically
//! smallest shortest path until the pair is adjacent, and emits the gate.
//! RZZ decomposes as CNOT-RZ-CNOT and each SWAP costs three CNOTs.

use crate::circuit::{Circuit, Gate};
use crate::coupling::CouplingMap;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RoutedCircuit {
    /// Routed gates on physical qubits, SWAPs explicit, RZZ intact.
    pub circuit: Circuit,
    /// The same gates with RZZ and SWAP expanded to CNOT granularity.
    pub decomposed: Circuit,
    pub depth: usize,
    pub cnot_count: usize,
    pub swap_count: usize,
    pub initial_layout: Vec<usize>,
    /// Logical -> physical after all routing SWAPs.
    pub final_layout: Vec<usize>,
}

fn validate_layout(layout: &[usize], n_logical: usize, n_phys: usize) -> Result<()> {
    if layout.len() != n_logical {
        return Err(Error::InvalidLayout(format!(
            "layout covers {} qubits, circuit has {n_logical}",
            layout.len()
        )));
    }
    let mut seen = vec![false; n_phys];
    for &p in layout {
        if p >= n_phys {
            return Err(Error::InvalidLayout(format!(
                "physical qubit {p} out of range ({n_phys} available)"
            )));
        }
        if seen[p] {
            return Err(Error::InvalidLayout(format!(
                "physical qubit {p} assigned twice"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Route `circuit` onto `map` starting from `initial_layout` and report the
/// cost-model numbers.
pub fn route_and_count(
    circuit: &Circuit,
    map: &CouplingMap,
    initial_layout: &[usize],
) -> Result<RoutedCircuit> {
    if circuit.n_qubits > map.n_phys {
        return Err(Error::InvalidLayout(format!(
            "{} logical qubits exceed {} physical",
            circuit.n_qubits, map.n_phys
        )));
    }
    validate_layout(initial_layout, circuit.n_qubits, map.n_phys)?;

    let mut state = RouteState {
        log2phys: initial_layout.to_vec(),
        routed: Circuit::new(map.n_phys),
        swap_count: 0,
    };

    let mut pending: Vec<(usize, usize, Gate)> = Vec::new();
    for gate in &circuit.gates {
        match *gate {
            Gate::Rzz(u, v, _) | Gate::Cnot(u, v) | Gate::Swap(u, v) => {
                pending.push((u, v, *gate));
            }
            one_qubit => {
                flush_batch(map, &mut state, &mut pending);
                let (q, _) = one_qubit.qubits();
                let p = state.log2phys[q];
                state.routed.push(match one_qubit {
                    Gate::H(_) => Gate::H(p),
                    Gate::Rx(_, a) => Gate::Rx(p, a),
                    Gate::Rz(_, a) => Gate::Rz(p, a),
                    g => unreachable!("{g:?} is not a one-qubit gate"),
                });
            }
        }
    }
    flush_batch(map, &mut state, &mut pending);
    let RouteState {
        log2phys,
        routed,
        swap_count,
    } = state;

    let decomposed = decompose(&routed);
    let cnot_count = decomposed
        .gates
        .iter()
        .filter(|g| matches!(g, Gate::Cnot(..)))
        .count();
    let depth = dependency_depth(&decomposed);

    Ok(RoutedCircuit {
        circuit: routed,
        decomposed,
        depth,
        cnot_count,
        swap_count,
        initial_layout: initial_layout.to_vec(),
        final_layout: log2phys,
    })
}

struct RouteState {
    log2phys: Vec<usize>,
    routed: Circuit,
    swap_count: usize,
}

impl RouteState {
    fn swap(&mut self, a: usize, b: usize) {
        self.routed.push(Gate::Swap(a, b));
        self.swap_count += 1;
        for p in self.log2phys.iter_mut() {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }
}

/// Drain a batch of commuting two-qubit interactions, farthest pair first.
fn flush_batch(map: &CouplingMap, state: &mut RouteState, pending: &mut Vec<(usize, usize, Gate)>) {
    while !pending.is_empty() {
        let (pos, _) = pending
            .iter()
            .enumerate()
            .map(|(i, &(u, v, _))| {
                let d = map.distance(state.log2phys[u], state.log2phys[v]);
                (i, (std::cmp::Reverse(d), u.min(v), u.max(v)))
            })
            .min_by_key(|&(_, key)| key)
            .expect("pending is nonempty");
        let (u, v, gate) = pending.remove(pos);
        if map.distance(state.log2phys[u], state.log2phys[v]) > 1 {
            let (pa, pb) = (state.log2phys[u], state.log2phys[v]);
            let path = map.shortest_path(pa.min(pb), pa.max(pb));
            for w in path.windows(2).take(path.len() - 2) {
                state.swap(w[0], w[1]);
            }
        }
        let (pa, pb) = (state.log2phys[u], state.log2phys[v]);
        debug_assert_eq!(map.distance(pa, pb), 1);
        state.routed.push(match gate {
            Gate::Rzz(_, _, a) => Gate::Rzz(pa, pb, a),
            Gate::Cnot(..) => Gate::Cnot(pa, pb),
            Gate::Swap(..) => Gate::Swap(pa, pb),
            g => unreachable!("{g:?} is not a two-qubit gate"),
        });
    }
}

/// Expand RZZ into CNOT-RZ-CNOT and SWAP into three CNOTs.
pub fn decompose(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.n_qubits);
    for g in &c.gates {
        match *g {
            Gate::Rzz(a, b, angle) => {
                out.push(Gate::Cnot(a, b));
                out.push(Gate::Rz(b, angle));
                out.push(Gate::Cnot(a, b));
            }
            Gate::Swap(a, b) => {
                out.push(Gate::Cnot(a, b));
                out.push(Gate::Cnot(b, a));
                out.push(Gate::Cnot(a, b));
            }
            other => out.push(other),
        }
    }
    out
}

/// Longest dependency chain: each gate lands one level after the busiest
/// qubit it touches.
pub fn dependency_depth(c: &Circuit) -> usize {
    let mut busy = vec![0usize; c.n_qubits];
    for g in &c.gates {
        let (a, b) = g.qubits();
        let level = match b {
            Some(b) => busy[a].max(busy[b]) + 1,
            None => busy[a] + 1,
        };
        busy[a] = level;
        if let Some(b) = b {
            busy[b] = level;
        }
    }
    busy.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Angle;

    fn rzz(u: usize, v: usize) -> Gate {
        Gate::Rzz(u, v, Angle::Literal(0.5))
    }

    #[test]
    fn adjacent_rzz_needs_no_swap() {
        let map = CouplingMap::linear(3);
        let mut c = Circuit::new(3);
        c.push(rzz(0, 1));
        let r = route_and_count(&c, &map, &[0, 1, 2]).unwrap();
        assert_eq!(r.swap_count, 0);
        assert_eq!(r.cnot_count, 2);
        assert_eq!(r.final_layout, vec![0, 1, 2]);
    }

    #[test]
    fn distance_two_costs_one_swap() {
        let map = CouplingMap::linear(3);
        let mut c = Circuit::new(3);
        c.push(rzz(0, 2));
        let r = route_and_count(&c, &map, &[0, 1, 2]);
        let r = r.unwrap();
        assert_eq!(r.swap_count, 1);
        assert_eq!(r.cnot_count, 5); // 3 for the SWAP + 2 for the RZZ
        // Logical 0 moved to physical 1.
        assert_eq!(r.final_layout, vec![1, 0, 2]);
    }

    #[test]
    fn farthest_pair_first() {
        let map = CouplingMap::linear(4);
        let mut c = Circuit::new(4);
        c.push(rzz(0, 1)); // distance 1
        c.push(rzz(0, 3)); // distance 3: handled first
        let r = route_and_count(&c, &map, &[0, 1, 2, 3]).unwrap();
        // The far pair routes first (two swaps); that displaces the near
        // pair, which then needs one more.
        assert_eq!(r.swap_count, 3);
        let first_two_q = r
            .circuit
            .gates
            .iter()
            .find(|g| matches!(g, Gate::Swap(..) | Gate::Rzz(..)))
            .unwrap();
        assert!(matches!(first_two_q, Gate::Swap(0, 1)));
        // Both interactions were ultimately emitted on adjacent qubits.
        let rzz_count = r
            .circuit
            .gates
            .iter()
            .filter(|g| matches!(g, Gate::Rzz(..)))
            .count();
        assert_eq!(rzz_count, 2);
    }

    #[test]
    fn depth_counts_dependency_chains() {
        let mut c = Circuit::new(3);
        c.push(Gate::H(0));
        c.push(Gate::H(1));
        c.push(Gate::Cnot(0, 1)); // level 2
        c.push(Gate::H(2)); // level 1, parallel
        assert_eq!(dependency_depth(&c), 2);
    }

    #[test]
    fn layout_validation() {
        let map = CouplingMap::linear(3);
        let c = Circuit::new(2);
        assert!(matches!(
            route_and_count(&c, &map, &[0, 0]),
            Err(Error::InvalidLayout(_))
        ));
        assert!(matches!(
            route_and_count(&c, &map, &[0, 7]),
            Err(Error::InvalidLayout(_))
        ));
        assert!(matches!(
            route_and_count(&c, &map, &[0]),
            Err(Error::InvalidLayout(_))
        ));
    }

    #[test]
    fn too_many_logical_qubits() {
        let map = CouplingMap::linear(2);
        let c = Circuit::new(3);
        assert!(matches!(
            route_and_count(&c, &map, &[0, 1, 2]),
            Err(Error::InvalidLayout(_))
        ));
    }
}
