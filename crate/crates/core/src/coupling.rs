//! Physical qubit connectivity: linear chains, complete graphs, heavy-hex
//! lattices, and custom maps, plus the BFS utilities the router and layout
//! strategies rely on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    Linear,
    HeavyHex,
    Complete,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingMap {
    pub n_phys: usize,
    pub kind: MapKind,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingMap {
    fn from_edges(n_phys: usize, kind: MapKind, raw: &[(usize, usize)]) -> Result<Self> {
        let mut edges = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); n_phys];
        for &(a, b) in raw {
            if a == b || a >= n_phys || b >= n_phys {
                return Err(Error::InvalidParameter(format!(
                    "bad edge ({a}, {b}) for {n_phys} qubits"
                )));
            }
            let e = (a.min(b), a.max(b));
            if edges.insert(e) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let map = Self {
            n_phys,
            kind,
            edges,
            adjacency,
        };
        if !map.is_connected() {
            return Err(Error::DisconnectedMap);
        }
        Ok(map)
    }

    pub fn linear(n: usize) -> Self {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Self::from_edges(n, MapKind::Linear, &edges).expect("chain is connected")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::from_edges(n, MapKind::Complete, &edges).expect("complete graph is connected")
    }

    pub fn custom(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, MapKind::Custom, edges)
    }

    /// Heavy-hex lattice built from `rows` qubit rows of `4*cols + 1` sites
    /// each, joined by degree-2 bridge qubits every fourth column with the
    /// offset alternating between row gaps. Row sites have degree 2-3 and
    /// bridges degree 2, averaging about 2.5.
    pub fn heavy_hex(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1);
        let row_len = 4 * cols + 1;
        // Row sites occupy [r*row_len, (r+1)*row_len); bridge qubits are
        // appended after all rows.
        let mut edges = Vec::new();
        let mut bridge_at = rows * row_len;
        for r in 0..rows {
            let s = r * row_len;
            for i in 0..row_len - 1 {
                edges.push((s + i, s + i + 1));
            }
            if r + 1 < rows {
                let offset = if r % 2 == 0 { 0 } else { 2 };
                let mut c = offset;
                while c < row_len {
                    edges.push((s + c, bridge_at));
                    edges.push((bridge_at, s + row_len + c));
                    bridge_at += 1;
                    c += 4;
                }
            }
        }
        Self::from_edges(bridge_at, MapKind::HeavyHex, &edges).expect("lattice is connected")
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn average_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n_phys as f64
    }

    pub fn is_connected(&self) -> bool {
        if self.n_phys == 0 {
            return false;
        }
        self.bfs_order(0).len() == self.n_phys
    }

    /// BFS visit order from `start`, neighbors explored in ascending index
    /// order; the canonical qubit ordering for identity layouts.
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n_phys];
        let mut order = Vec::with_capacity(self.n_phys);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(start);
        seen[start] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for &nb in &self.adjacency[q] {
                if !seen[nb] {
                    seen[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        order
    }

    /// Hop distances from `src` to every qubit.
    pub fn distances_from(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n_phys];
        let mut queue = std::collections::VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(q) = queue.pop_front() {
            for &nb in &self.adjacency[q] {
                if dist[nb] == u32::MAX {
                    dist[nb] = dist[q] + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: usize, b: usize) -> u32 {
        self.distances_from(a)[b]
    }

    /// The lexicographically smallest shortest path from `a` to `b`: walk
    /// from `a`, always taking the lowest-indexed neighbor that moves one
    /// hop closer to `b`.
    pub fn shortest_path(&self, a: usize, b: usize) -> Vec<usize> {
        let dist_to_b = self.distances_from(b);
        let mut path = vec![a];
        let mut at = a;
        while at != b {
            let next = self.adjacency[at]
                .iter()
                .copied()
                .find(|&nb| dist_to_b[nb] == dist_to_b[at] - 1)
                .expect("connected map has a descending neighbor");
            path.push(next);
            at = next;
        }
        path
    }
}
