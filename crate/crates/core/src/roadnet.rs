//! Road networks, candidate route generation, and traffic instance assembly.
//!
//! A network is an undirected weighted graph of road segments between
//! intersection nodes. A route is a contiguous segment path from a car's
//! origin to its destination; an instance assigns every car a set of
//! candidate routes, always including the shortest path as route 0.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// One road segment: an undirected weighted edge between two nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Segment {
    /// The endpoint opposite to `node`.
    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected weighted road graph.
#[derive(Debug, Clone, Default)]
pub struct RoadNetwork {
    nodes: Vec<String>,
    segments: Vec<Segment>,
    node_index: HashMap<String, usize>,
    /// Per node: incident (segment index, neighbor node) sorted by segment index.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl RoadNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: &str) -> Result<usize> {
        if self.node_index.contains_key(id) {
            return Err(Error::DuplicateId {
                kind: "node",
                id: id.to_string(),
            });
        }
        let idx = self.nodes.len();
        self.nodes.push(id.to_string());
        self.node_index.insert(id.to_string(), idx);
        self.adjacency.push(Vec::new());
        Ok(idx)
    }

    pub fn add_segment(&mut self, id: &str, u: &str, v: &str, weight: f64) -> Result<usize> {
        if self.segments.iter().any(|s| s.id == id) {
            return Err(Error::DuplicateId {
                kind: "segment",
                id: id.to_string(),
            });
        }
        let ui = *self.node_index.get(u).ok_or_else(|| Error::DanglingNode {
            segment: id.to_string(),
            node: u.to_string(),
        })?;
        let vi = *self.node_index.get(v).ok_or_else(|| Error::DanglingNode {
            segment: id.to_string(),
            node: v.to_string(),
        })?;
        if !(weight > 0.0) {
            return Err(Error::NonpositiveWeight {
                segment: id.to_string(),
                weight,
            });
        }
        let k = self.segments.len();
        self.segments.push(Segment {
            id: id.to_string(),
            u: ui,
            v: vi,
            weight,
        });
        self.adjacency[ui].push((k, vi));
        self.adjacency[vi].push((k, ui));
        Ok(k)
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_segments(&self) -> usize {
        self.segments.len()
    }

    pub fn node_id(&self, idx: usize) -> &str {
        &self.nodes[idx]
    }

    pub fn node_idx(&self, id: &str) -> Result<usize> {
        self.node_index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn segment(&self, k: usize) -> &Segment {
        &self.segments[k]
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    /// Rank of each node in lexicographic id order; comparing rank sequences
    /// is equivalent to comparing node-id sequences without allocating
    /// strings in the path-search hot loop.
    fn lex_ranks(&self) -> Vec<u32> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| self.nodes[a].cmp(&self.nodes[b]));
        let mut rank = vec![0u32; self.nodes.len()];
        for (r, &idx) in order.iter().enumerate() {
            rank[idx] = r as u32;
        }
        rank
    }

    /// Parse the line-oriented network format: `node <id>`,
    /// `edge <id> <u> <v> <weight>`, `#` comments, blank lines ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut net = Self::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            match toks[0] {
                "node" => {
                    if toks.len() != 2 {
                        return Err(err(format!("expected `node <id>`, got `{line}`")));
                    }
                    net.add_node(toks[1])?;
                }
                "edge" => {
                    if toks.len() != 5 {
                        return Err(err(format!(
                            "expected `edge <id> <u> <v> <weight>`, got `{line}`"
                        )));
                    }
                    let weight: f64 = toks[4]
                        .parse()
                        .map_err(|_| err(format!("bad weight `{}`", toks[4])))?;
                    net.add_segment(toks[1], toks[2], toks[3], weight)?;
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        Ok(net)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for id in &self.nodes {
            out.push_str(&format!("node {id}\n"));
        }
        for s in &self.segments {
            out.push_str(&format!(
                "edge {} {} {} {}\n",
                s.id, self.nodes[s.u], self.nodes[s.v], s.weight
            ));
        }
        out
    }

    /// rows x cols grid of intersections. With a seed, weights are drawn
    /// uniformly from [0.5, 1.5); without, every segment has weight 1.
    pub fn grid(rows: usize, cols: usize, seed: Option<u64>) -> Self {
        use rand::Rng;
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut net = Self::new();
        for r in 0..rows {
            for c in 0..cols {
                net.add_node(&format!("n{r}_{c}")).unwrap();
            }
        }
        let w = |rng: &mut Option<ChaCha8Rng>| match rng {
            Some(r) => r.gen_range(0.5..1.5),
            None => 1.0,
        };
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    let weight = w(&mut rng);
                    net.add_segment(
                        &format!("h{r}_{c}"),
                        &format!("n{r}_{c}"),
                        &format!("n{r}_{}", c + 1),
                        weight,
                    )
                    .unwrap();
                }
                if r + 1 < rows {
                    let weight = w(&mut rng);
                    net.add_segment(
                        &format!("v{r}_{c}"),
                        &format!("n{r}_{c}"),
                        &format!("n{}_{c}", r + 1),
                        weight,
                    )
                    .unwrap();
                }
            }
        }
        net
    }
}

/// A loopless path between two nodes, as parallel node and segment sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutePath {
    pub nodes: Vec<usize>,
    pub segments: Vec<usize>,
    pub cost: f64,
}

impl RoutePath {
    fn recost(mut self, net: &RoadNetwork) -> Self {
        // Canonical left-to-right sum so identical paths always carry
        // identical floating-point costs.
        self.cost = self.segments.iter().map(|&k| net.segment(k).weight).sum();
        self
    }
}

/// Ordering key for a candidate path: cost first (nonnegative finite, so the
/// bit pattern orders numerically), then the node-id rank sequence, then the
/// segment indices to split parallel-edge ties.
type PathOrd = (u64, Vec<u32>, Vec<usize>);

fn path_ord(path: &RoutePath, ranks: &[u32]) -> PathOrd {
    (
        path.cost.to_bits(),
        path.nodes.iter().map(|&n| ranks[n]).collect(),
        path.segments.clone(),
    )
}

/// Dijkstra from `origin` to `dest` avoiding `banned_nodes` and
/// `banned_segments`. Ties on cost resolve to the lexicographically
/// smallest node-id sequence.
fn shortest_path(
    net: &RoadNetwork,
    ranks: &[u32],
    origin: usize,
    dest: usize,
    banned_nodes: &BTreeSet<usize>,
    banned_segments: &BTreeSet<usize>,
) -> Option<RoutePath> {
    let mut best: Vec<Option<RoutePath>> = vec![None; net.n_nodes()];
    let mut settled = vec![false; net.n_nodes()];
    // (key, endpoint node); BTreeSet supports the decrease-key removal.
    let mut queue: BTreeSet<(PathOrd, usize)> = BTreeSet::new();

    let start = RoutePath {
        nodes: vec![origin],
        segments: vec![],
        cost: 0.0,
    };
    queue.insert((path_ord(&start, ranks), origin));
    best[origin] = Some(start);

    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, node) = entry;
        if settled[node] {
            continue;
        }
        settled[node] = true;
        if node == dest {
            break;
        }
        let cur = best[node].clone().expect("queued node has a path");
        for &(seg_idx, next) in net.neighbors(node) {
            if banned_segments.contains(&seg_idx) || banned_nodes.contains(&next) || settled[next]
            {
                continue;
            }
            let mut cand_nodes = cur.nodes.clone();
            cand_nodes.push(next);
            let mut cand_segs = cur.segments.clone();
            cand_segs.push(seg_idx);
            let cand = RoutePath {
                nodes: cand_nodes,
                segments: cand_segs,
                cost: 0.0,
            }
            .recost(net);
            let better = match &best[next] {
                None => true,
                Some(old) => path_ord(&cand, ranks) < path_ord(old, ranks),
            };
            if better {
                if let Some(old) = &best[next] {
                    queue.remove(&(path_ord(old, ranks), next));
                }
                queue.insert((path_ord(&cand, ranks), next));
                best[next] = Some(cand);
            }
        }
    }
    if settled[dest] {
        best[dest].take()
    } else {
        None
    }
}

/// Yen's algorithm: up to `k` loopless paths from `origin` to `dest`, sorted
/// by total weight ascending with the lexicographic node-id tie-break.
pub fn k_shortest_routes(
    net: &RoadNetwork,
    origin: usize,
    dest: usize,
    k: usize,
) -> Result<Vec<RoutePath>> {
    if origin == dest {
        return Err(Error::InvalidParameter(
            "origin and destination must differ".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let ranks = net.lex_ranks();
    let first = shortest_path(net, &ranks, origin, dest, &BTreeSet::new(), &BTreeSet::new())
        .ok_or_else(|| Error::NoPath {
            origin: net.node_id(origin).to_string(),
            dest: net.node_id(dest).to_string(),
        })?;

    let mut accepted: Vec<RoutePath> = vec![first];
    let mut candidates: BTreeSet<PathOrd> = BTreeSet::new();

    while accepted.len() < k {
        let prev = accepted.last().unwrap().clone();
        for spur_pos in 0..prev.nodes.len() - 1 {
            let spur_node = prev.nodes[spur_pos];
            let root_nodes = &prev.nodes[..=spur_pos];
            let root_segs = &prev.segments[..spur_pos];

            let mut banned_segments = BTreeSet::new();
            for p in &accepted {
                if p.nodes.len() > spur_pos && p.nodes[..=spur_pos] == *root_nodes {
                    banned_segments.insert(p.segments[spur_pos]);
                }
            }
            let banned_nodes: BTreeSet<usize> = root_nodes[..spur_pos].iter().copied().collect();

            if let Some(spur) =
                shortest_path(net, &ranks, spur_node, dest, &banned_nodes, &banned_segments)
            {
                let mut nodes = root_nodes.to_vec();
                nodes.extend_from_slice(&spur.nodes[1..]);
                let mut segments = root_segs.to_vec();
                segments.extend_from_slice(&spur.segments);
                let total = RoutePath {
                    nodes,
                    segments,
                    cost: 0.0,
                }
                .recost(net);
                if !accepted.iter().any(|p| p.segments == total.segments) {
                    candidates.insert(path_ord(&total, &ranks));
                }
            }
        }
        match candidates.iter().next().cloned() {
            None => break,
            Some(key) => {
                candidates.remove(&key);
                let (_, _, segments) = key;
                let mut nodes = vec![origin];
                let mut at = origin;
                for &s in &segments {
                    at = net.segment(s).other(at);
                    nodes.push(at);
                }
                let path = RoutePath {
                    nodes,
                    segments,
                    cost: 0.0,
                }
                .recost(net);
                accepted.push(path);
            }
        }
    }
    Ok(accepted)
}

/// One candidate route of one car.
#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub car: usize,
    pub route_index: usize,
    pub nodes: Vec<usize>,
    pub segments: Vec<usize>,
}

/// Requested origin/destination/route-count for one car.
#[derive(Debug, Clone, Copy)]
pub struct CarSpec {
    pub origin: usize,
    pub dest: usize,
    pub route_count: usize,
}

#[derive(Debug, Clone)]
pub struct CarRoutes {
    pub origin: usize,
    pub dest: usize,
    pub routes: Vec<Route>,
}

/// A full traffic problem: network, per-car candidate routes, and the seed
/// that produced the selection.
#[derive(Debug, Clone)]
pub struct TrafficInstance {
    pub network: RoadNetwork,
    pub cars: Vec<CarRoutes>,
    pub seed: u64,
    pub pool_size: usize,
}

impl TrafficInstance {
    /// Total number of binary decision variables, one per (car, route).
    pub fn n_vars(&self) -> usize {
        self.cars.iter().map(|c| c.routes.len()).sum()
    }

    /// Variable order: route index increases first, then car index.
    pub fn var_map(&self) -> Vec<(usize, usize)> {
        let mut map = Vec::with_capacity(self.n_vars());
        for (i, car) in self.cars.iter().enumerate() {
            for j in 0..car.routes.len() {
                map.push((i, j));
            }
        }
        map
    }

    pub fn var_of(&self, car: usize, route: usize) -> usize {
        self.cars[..car]
            .iter()
            .map(|c| c.routes.len())
            .sum::<usize>()
            + route
    }

    pub fn route_of_var(&self, var: usize) -> &Route {
        let mut u = var;
        for c in &self.cars {
            if u < c.routes.len() {
                return &c.routes[u];
            }
            u -= c.routes.len();
        }
        panic!("variable index {var} out of range");
    }

    pub fn validate(&self) -> Result<()> {
        for (i, car) in self.cars.iter().enumerate() {
            if car.routes.is_empty() {
                return Err(Error::InvalidParameter(format!("car {i} has no routes")));
            }
            for route in &car.routes {
                if route.nodes.first() != Some(&car.origin)
                    || route.nodes.last() != Some(&car.dest)
                {
                    return Err(Error::InvalidParameter(format!(
                        "car {i} route {} does not run origin to destination",
                        route.route_index
                    )));
                }
                let mut at = car.origin;
                for (step, &k) in route.segments.iter().enumerate() {
                    let seg = self.network.segment(k);
                    if seg.u != at && seg.v != at {
                        return Err(Error::InvalidParameter(format!(
                            "car {i} route {} breaks contiguity at step {step}",
                            route.route_index
                        )));
                    }
                    at = seg.other(at);
                    if route.nodes[step + 1] != at {
                        return Err(Error::InvalidParameter(format!(
                            "car {i} route {} node sequence mismatch at step {step}",
                            route.route_index
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Assemble a traffic instance: route 0 of each car is the shortest path,
/// the rest are drawn uniformly without replacement from the k-shortest
/// candidate pool. Pure in (net, specs, seed, pool_size).
pub fn build_instance(
    net: RoadNetwork,
    specs: &[CarSpec],
    seed: u64,
    pool_size: usize,
) -> Result<TrafficInstance> {
    use rand::seq::index::sample;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pools: HashMap<(usize, usize), Vec<RoutePath>> = HashMap::new();
    let mut cars = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        if spec.route_count == 0 {
            return Err(Error::InvalidParameter(format!(
                "car {i}: route_count must be at least 1"
            )));
        }
        let key = (spec.origin, spec.dest);
        if !pools.contains_key(&key) {
            let p = k_shortest_routes(&net, spec.origin, spec.dest, pool_size)?;
            pools.insert(key, p);
        }
        let pool = &pools[&key];
        if pool.len() < spec.route_count {
            return Err(Error::InsufficientRoutes {
                car: i,
                requested: spec.route_count,
                available: pool.len(),
            });
        }
        let mut routes = vec![pool[0].clone()];
        if spec.route_count > 1 {
            let picks = sample(&mut rng, pool.len() - 1, spec.route_count - 1);
            routes.extend(picks.iter().map(|idx| pool[idx + 1].clone()));
        }
        cars.push(CarRoutes {
            origin: spec.origin,
            dest: spec.dest,
            routes: routes
                .into_iter()
                .enumerate()
                .map(|(j, p)| Route {
                    car: i,
                    route_index: j,
                    nodes: p.nodes,
                    segments: p.segments,
                })
                .collect(),
        });
    }
    let instance = TrafficInstance {
        network: net,
        cars,
        seed,
        pool_size,
    };
    instance.validate()?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> RoadNetwork {
        // a--b weight 1, b--c weight 1, a--c weight 3
        let mut net = RoadNetwork::new();
        net.add_node("a").unwrap();
        net.add_node("b").unwrap();
        net.add_node("c").unwrap();
        net.add_segment("ab", "a", "b", 1.0).unwrap();
        net.add_segment("bc", "b", "c", 1.0).unwrap();
        net.add_segment("ac", "a", "c", 3.0).unwrap();
        net
    }

    /// Brute-force oracle: every simple path from origin to dest by DFS.
    fn all_simple_paths(net: &RoadNetwork, origin: usize, dest: usize) -> Vec<RoutePath> {
        fn dfs(
            net: &RoadNetwork,
            at: usize,
            dest: usize,
            nodes: &mut Vec<usize>,
            segs: &mut Vec<usize>,
            out: &mut Vec<RoutePath>,
        ) {
            if at == dest {
                out.push(
                    RoutePath {
                        nodes: nodes.clone(),
                        segments: segs.clone(),
                        cost: 0.0,
                    }
                    .recost(net),
                );
                return;
            }
            for &(k, next) in net.neighbors(at) {
                if nodes.contains(&next) {
                    continue;
                }
                nodes.push(next);
                segs.push(k);
                dfs(net, next, dest, nodes, segs, out);
                nodes.pop();
                segs.pop();
            }
        }
        let mut out = Vec::new();
        dfs(
            net,
            origin,
            dest,
            &mut vec![origin],
            &mut Vec::new(),
            &mut out,
        );
        let ranks = net.lex_ranks();
        out.sort_by_key(|p| path_ord(p, &ranks));
        out
    }

    #[test]
    fn parse_minimal_network() {
        let net = RoadNetwork::from_text("# two nodes\nnode a\nnode b\nedge s1 a b 1.0\n").unwrap();
        assert_eq!(net.n_nodes(), 2);
        assert_eq!(net.n_segments(), 1);
        assert_eq!(net.segment(0).weight, 1.0);
    }

    #[test]
    fn parse_rejects_unknown_node() {
        let err = RoadNetwork::from_text("node a\nedge s1 a b 1.0\n").unwrap_err();
        assert!(matches!(err, Error::DanglingNode { .. }));
    }

    #[test]
    fn parse_rejects_nonpositive_weight() {
        let err = RoadNetwork::from_text("node a\nnode b\nedge s1 a b 0\n").unwrap_err();
        assert!(matches!(err, Error::NonpositiveWeight { .. }));
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = RoadNetwork::from_text("node a\n\nedge oops\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn grid_4x4_counts() {
        // A 4x4 grid graph has 16 nodes and 2*4*3 = 24 edges.
        let net = RoadNetwork::grid(4, 4, None);
        assert_eq!(net.n_nodes(), 16);
        assert_eq!(net.n_segments(), 24);
        // Round-trips through the text format.
        let again = RoadNetwork::from_text(&net.to_text()).unwrap();
        assert_eq!(again.n_nodes(), 16);
        assert_eq!(again.n_segments(), 24);
    }

    #[test]
    fn triangle_two_shortest() {
        let net = triangle();
        let a = net.node_idx("a").unwrap();
        let c = net.node_idx("c").unwrap();
        let paths = k_shortest_routes(&net, a, c, 2).unwrap();
        assert_eq!(paths.len(), 2);
        assert_eq!(paths[0].cost, 2.0);
        assert_eq!(paths[1].cost, 3.0);
        assert_eq!(paths[0].nodes, vec![0, 1, 2]);
    }

    #[test]
    fn single_edge_graph() {
        let net = RoadNetwork::from_text("node a\nnode b\nedge s a b 2.5\n").unwrap();
        let paths = k_shortest_routes(&net, 0, 1, 1).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].segments, vec![0]);
    }

    #[test]
    fn no_path_is_an_error() {
        let net = RoadNetwork::from_text("node a\nnode b\nnode c\nedge s a b 1\n").unwrap();
        let err = k_shortest_routes(&net, 0, 2, 1).unwrap_err();
        assert!(matches!(err, Error::NoPath { .. }));
    }

    #[test]
    fn k_exceeding_path_count_returns_all() {
        let net = triangle();
        let paths = k_shortest_routes(&net, 0, 2, 50).unwrap();
        assert_eq!(paths.len(), 2); // only two simple a->c paths exist
    }

    #[test]
    fn yen_matches_exhaustive_enumeration() {
        // Seeded grids small enough to enumerate by brute force.
        for seed in 0..4u64 {
            let net = RoadNetwork::grid(2, 4, Some(seed));
            let origin = net.node_idx("n0_0").unwrap();
            let dest = net.node_idx("n1_3").unwrap();
            let oracle = all_simple_paths(&net, origin, dest);
            let got = k_shortest_routes(&net, origin, dest, oracle.len() + 5).unwrap();
            assert_eq!(got.len(), oracle.len());
            for (g, o) in got.iter().zip(&oracle) {
                assert!((g.cost - o.cost).abs() < 1e-12);
            }
            // Sorted nondecreasing and all simple.
            for w in got.windows(2) {
                assert!(w[0].cost <= w[1].cost + 1e-12);
            }
            for p in &got {
                let unique: BTreeSet<_> = p.nodes.iter().collect();
                assert_eq!(unique.len(), p.nodes.len());
            }
        }
    }

    #[test]
    fn instance_three_cars_three_routes() {
        let net = RoadNetwork::grid(4, 4, Some(7));
        let o = net.node_idx("n0_0").unwrap();
        let d = net.node_idx("n3_3").unwrap();
        let specs = vec![
            CarSpec {
                origin: o,
                dest: d,
                route_count: 3,
            };
            3
        ];
        let inst = build_instance(net, &specs, 42, 100).unwrap();
        assert_eq!(inst.n_vars(), 9);
        // Route 0 of every car is the same shortest path.
        let r0 = inst.cars[0].routes[0].segments.clone();
        assert_eq!(inst.cars[1].routes[0].segments, r0);
        assert_eq!(inst.cars[2].routes[0].segments, r0);
    }

    #[test]
    fn instance_single_car_single_route_is_shortest() {
        let net = RoadNetwork::grid(3, 3, Some(1));
        let o = net.node_idx("n0_0").unwrap();
        let d = net.node_idx("n2_2").unwrap();
        let shortest = k_shortest_routes(&net, o, d, 1).unwrap()[0].clone();
        let inst = build_instance(
            net,
            &[CarSpec {
                origin: o,
                dest: d,
                route_count: 1,
            }],
            9,
            50,
        )
        .unwrap();
        assert_eq!(inst.n_vars(), 1);
        assert_eq!(inst.cars[0].routes[0].segments, shortest.segments);
    }

    #[test]
    fn instance_deterministic_under_seed() {
        let mk = || {
            let net = RoadNetwork::grid(4, 4, Some(3));
            let o = net.node_idx("n0_0").unwrap();
            let d = net.node_idx("n3_3").unwrap();
            build_instance(
                net,
                &[
                    CarSpec {
                        origin: o,
                        dest: d,
                        route_count: 3,
                    },
                    CarSpec {
                        origin: o,
                        dest: d,
                        route_count: 2,
                    },
                ],
                1234,
                200,
            )
            .unwrap()
        };
        let a = mk();
        let b = mk();
        for (ca, cb) in a.cars.iter().zip(&b.cars) {
            for (ra, rb) in ca.routes.iter().zip(&cb.routes) {
                assert_eq!(ra.segments, rb.segments);
            }
        }
    }

    #[test]
    fn insufficient_routes_is_an_error() {
        let net = RoadNetwork::from_text("node a\nnode b\nedge s a b 1\n").unwrap();
        let err = build_instance(
            net,
            &[CarSpec {
                origin: 0,
                dest: 1,
                route_count: 2,
            }],
            0,
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InsufficientRoutes { .. }));
    }
}
