//! Named graphs, the edge-delete/vertex-split composition chain, and the
//! one-extension families.
//!
//! All constructions are deterministic on labels, so repeated calls build
//! identical graphs.

use crate::graph::Graph;
use std::str::FromStr;
use thiserror::Error;

/// Errors from construction operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid construction: {reason}")]
    InvalidConstruction { reason: String },
    #[error("invalid composition: {reason}")]
    InvalidComposition { reason: String },
}

fn invalid(reason: impl Into<String>) -> ConstructError {
    ConstructError::InvalidConstruction {
        reason: reason.into(),
    }
}

fn invalid_comp(reason: impl Into<String>) -> ConstructError {
    ConstructError::InvalidComposition {
        reason: reason.into(),
    }
}

/// The named graphs [`make_named`] can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    /// Cycle on `k >= 3` vertices.
    Cycle(usize),
    /// Path with `k` edges (`k + 1` vertices).
    Path(usize),
    /// Two hub vertices joined by three internally disjoint paths of
    /// lengths `a <= b <= c`.
    Theta(usize, usize, usize),
    /// 9-cycle `0..=8` plus vertex 9 adjacent to 0, 3, and 6.
    E1,
    /// Pentagons `0-1-2-3-4` and `0-1-5-6-7` sharing the edge `0-1`, plus
    /// the path `3-8-9-6`.
    E2,
    /// The Petersen graph (outer cycle 0..=4, inner star 5..=9).
    Petersen,
    /// Complete graph on 6 vertices.
    K6,
}

impl FromStr for NamedGraph {
    type Err = ConstructError;

    /// Parses `e1`, `e2`, `petersen`, `k6`, `cycle:K`, `path:K`, or
    /// `theta:A:B:C`.
    fn from_str(s: &str) -> Result<NamedGraph, ConstructError> {
        let lower = s.to_ascii_lowercase();
        let mut parts = lower.split(':');
        let head = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let arity = |want: usize| -> Result<Vec<usize>, ConstructError> {
            if args.len() != want {
                return Err(invalid(format!(
                    "{head} takes {want} parameter(s), got {}",
                    args.len()
                )));
            }
            args.iter()
                .map(|a| {
                    a.parse::<usize>()
                        .map_err(|_| invalid(format!("bad parameter {a:?} in {s:?}")))
                })
                .collect()
        };
        match head {
            "cycle" => Ok(NamedGraph::Cycle(arity(1)?[0])),
            "path" => Ok(NamedGraph::Path(arity(1)?[0])),
            "theta" => {
                let a = arity(3)?;
                Ok(NamedGraph::Theta(a[0], a[1], a[2]))
            }
            "e1" if args.is_empty() => Ok(NamedGraph::E1),
            "e2" if args.is_empty() => Ok(NamedGraph::E2),
            "petersen" if args.is_empty() => Ok(NamedGraph::Petersen),
            "k6" if args.is_empty() => Ok(NamedGraph::K6),
            _ => Err(invalid(format!("unknown graph name {s:?}"))),
        }
    }
}

/// Builds a named graph with its documented labeling.
pub fn make_named(which: NamedGraph) -> Result<Graph, ConstructError> {
    match which {
        NamedGraph::Cycle(k) => {
            if k < 3 {
                return Err(invalid(format!("cycle needs at least 3 vertices, got {k}")));
            }
            let edges: Vec<(u32, u32)> =
                (0..k).map(|i| (i as u32, ((i + 1) % k) as u32)).collect();
            Ok(Graph::from_edges(k, &edges).unwrap())
        }
        NamedGraph::Path(k) => {
            let edges: Vec<(u32, u32)> = (0..k).map(|i| (i as u32, i as u32 + 1)).collect();
            Ok(Graph::from_edges(k + 1, &edges).unwrap())
        }
        NamedGraph::Theta(a, b, c) => {
            if a < 1 || a > b || b > c {
                return Err(invalid(format!(
                    "theta arms must satisfy 1 <= a <= b <= c, got ({a},{b},{c})"
                )));
            }
            if b == 1 {
                return Err(invalid(
                    "theta: at most one arm may have length 1 (parallel edges otherwise)",
                ));
            }
            let mut edges = Vec::new();
            let mut next = 2u32;
            for len in [a, b, c] {
                if len == 1 {
                    edges.push((0, 1));
                    continue;
                }
                let mut prev = 0u32;
                for _ in 0..len - 1 {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
                edges.push((prev, 1));
            }
            Ok(Graph::from_edges(next as usize, &edges).unwrap())
        }
        NamedGraph::E1 => {
            let mut edges: Vec<(u32, u32)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
            edges.extend([(9, 0), (9, 3), (9, 6)]);
            Ok(Graph::from_edges(10, &edges).unwrap())
        }
        NamedGraph::E2 => Ok(Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (1, 5),
                (5, 6),
                (6, 7),
                (7, 0),
                (3, 8),
                (8, 9),
                (9, 6),
            ],
        )
        .unwrap()),
        NamedGraph::Petersen => {
            let mut edges = Vec::new();
            for i in 0..5u32 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((i + 5, (i + 2) % 5 + 5));
            }
            Ok(Graph::from_edges(10, &edges).unwrap())
        }
        NamedGraph::K6 => {
            let mut edges = Vec::new();
            for u in 0..6u32 {
                for v in (u + 1)..6 {
                    edges.push((u, v));
                }
            }
            Ok(Graph::from_edges(6, &edges).unwrap())
        }
    }
}

/// One composition step in an [`OreState`] history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreStep {
    /// Edge removed from the accumulated graph.
    pub removed_edge: (u32, u32),
    /// Vertex of the incoming graph that was split.
    pub split_vertex: u32,
    /// Neighbors of the split vertex wired to the removed edge's first end.
    pub part_a: Vec<u32>,
    /// Neighbors wired to the removed edge's second end.
    pub part_b: Vec<u32>,
}

/// A graph produced by repeated composition, with its build history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OreState {
    /// Number of composition layers (1 = plain `K6`).
    pub m: usize,
    pub graph: Graph,
    /// One entry per composition after the first layer.
    pub history: Vec<OreStep>,
}

/// Composes two graphs: deletes the edge `xy` from `g1`, splits `z` in
/// `g2` into two vertices covering the neighbor parts `(a, b)`, and
/// identifies the `a`-side with `x` and the `b`-side with `y`.
///
/// The result keeps `g1`'s labels and appends `g2`'s remaining vertices in
/// ascending order, so `n = n1 + n2 - 1` and `e = e1 + e2 - 1`.
pub fn ore_compose(
    g1: &Graph,
    xy: (u32, u32),
    g2: &Graph,
    z: u32,
    part_a: &[u32],
    part_b: &[u32],
) -> Result<Graph, ConstructError> {
    let (x, y) = xy;
    if !g1.has_edge(x, y) {
        return Err(invalid_comp(format!("({x}, {y}) is not an edge of the first graph")));
    }
    if z as usize >= g2.n() {
        return Err(invalid_comp(format!("split vertex {z} out of range")));
    }
    if part_a.is_empty() || part_b.is_empty() {
        return Err(invalid_comp("both neighbor parts must be nonempty"));
    }
    let mut claimed: Vec<u32> = part_a.iter().chain(part_b).copied().collect();
    claimed.sort_unstable();
    let mut expected: Vec<u32> = g2.neighbors(z).to_vec();
    expected.sort_unstable();
    if claimed != expected {
        return Err(invalid_comp(
            "neighbor parts must partition the split vertex's neighborhood",
        ));
    }

    let n1 = g1.n();
    // g2's vertices other than z, in ascending order, take ids n1, n1+1, ...
    let mut map = vec![u32::MAX; g2.n()];
    let mut next = n1 as u32;
    for v in g2.vertices() {
        if v != z {
            map[v as usize] = next;
            next += 1;
        }
    }

    let mut edges: Vec<(u32, u32)> = g1.edges().filter(|&e| e != (x.min(y), x.max(y))).collect();
    for (u, v) in g2.edges() {
        if u != z && v != z {
            edges.push((map[u as usize], map[v as usize]));
        }
    }
    for &a in part_a {
        edges.push((x, map[a as usize]));
    }
    for &b in part_b {
        edges.push((y, map[b as usize]));
    }
    Graph::from_edges(n1 + g2.n() - 1, &edges)
        .map_err(|e| invalid_comp(format!("composition produced an invalid graph: {e}")))
}

/// Builds the depth-`m` composition chain: `K6` at depth 1, then each
/// further layer composes the accumulated graph (lowest-index edge) with a
/// fresh `K6` (vertex 0 split, neighbors {1,2} vs {3,4,5}).
///
/// The result always has `5m + 1` vertices and `14m + 1` edges.
pub fn ore_6critical(m: usize) -> OreState {
    assert!(m >= 1, "composition depth must be at least 1");
    let k6 = make_named(NamedGraph::K6).unwrap();
    let mut state = OreState {
        m: 1,
        graph: k6.clone(),
        history: Vec::new(),
    };
    while state.m < m {
        let edge = state.graph.edges().next().expect("composite has edges");
        let part_a = vec![1u32, 2];
        let part_b = vec![3u32, 4, 5];
        let graph = ore_compose(&state.graph, edge, &k6, 0, &part_a, &part_b)
            .expect("canonical composition step is valid");
        state.history.push(OreStep {
            removed_edge: edge,
            split_vertex: 0,
            part_a,
            part_b,
        });
        state.graph = graph;
        state.m += 1;
    }
    assert_eq!(state.graph.n(), 5 * m + 1, "vertex count invariant");
    assert_eq!(state.graph.e(), 14 * m + 1, "edge count invariant");
    state
}

/// The one-extension families over a base graph `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionFamily {
    /// Add a length-2 path joining two distinct vertices of `H`.
    P2,
    /// Add a length-3 path joining two distinct vertices of `H`.
    P3,
    /// Add a vertex joined to three distinct vertices of `H` by paths with
    /// (1,3,3) or (2,2,3) edges.
    Q,
    /// The (2,2,3) case of `Q` restricted to adjacent first targets, one
    /// of degree at least 3.
    Qprime,
    /// Split a degree-2 or degree-3 vertex of the `E1` graph and graft the
    /// loose ends onto vertices of `H`, not all equal.
    E1Fam,
    /// Same with `E2`.
    E2Fam,
}

impl FromStr for ExtensionFamily {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<ExtensionFamily, ConstructError> {
        match s.to_ascii_lowercase().as_str() {
            "p2" => Ok(ExtensionFamily::P2),
            "p3" => Ok(ExtensionFamily::P3),
            "q" => Ok(ExtensionFamily::Q),
            "qprime" | "q'" => Ok(ExtensionFamily::Qprime),
            "e1fam" => Ok(ExtensionFamily::E1Fam),
            "e2fam" => Ok(ExtensionFamily::E2Fam),
            _ => Err(invalid(format!("unknown family {s:?}"))),
        }
    }
}

/// Emits every labeled member of the chosen family over `H`, in a fixed
/// deterministic order. No isomorphism deduplication is performed.
///
/// `H`'s labels are preserved; new vertices take ids `n(H), n(H)+1, ...`.
pub fn family_x(h: &Graph, which: ExtensionFamily) -> Vec<Graph> {
    match which {
        ExtensionFamily::P2 => added_paths(h, 2),
        ExtensionFamily::P3 => added_paths(h, 3),
        ExtensionFamily::Q => tripods(h),
        ExtensionFamily::Qprime => restricted_tripods(h),
        ExtensionFamily::E1Fam => grafts(h, &make_named(NamedGraph::E1).unwrap()),
        ExtensionFamily::E2Fam => grafts(h, &make_named(NamedGraph::E2).unwrap()),
    }
}

/// All graphs obtained from `h` by adding a path of `len` edges between
/// two distinct vertices. Internal path vertices are labeled from the
/// smaller endpoint toward the larger.
fn added_paths(h: &Graph, len: usize) -> Vec<Graph> {
    let n = h.n() as u32;
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let mut edges: Vec<(u32, u32)> = h.edges().collect();
            let mut prev = u;
            for i in 0..len - 1 {
                let inner = n + i as u32;
                edges.push((prev, inner));
                prev = inner;
            }
            edges.push((prev, v));
            out.push(Graph::from_edges(h.n() + len - 1, &edges).unwrap());
        }
    }
    out
}

/// Adds a new center joined to the three targets by paths whose edge
/// counts realize `lengths`; path internals are labeled center-first,
/// target by target.
fn tripod(h: &Graph, targets: [u32; 3], lengths: [usize; 3]) -> Graph {
    let mut edges: Vec<(u32, u32)> = h.edges().collect();
    let z = h.n() as u32;
    let mut next = z + 1;
    for (i, &len) in lengths.iter().enumerate() {
        let mut prev = z;
        for _ in 0..len - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, targets[i]));
    }
    Graph::from_edges(next as usize, &edges).unwrap()
}

/// Every member arising from path-length tuples (1,3,3) and (2,2,3) over
/// distinct target triples, deduplicated by the (target, length)
/// assignment (the two equal-length paths are interchangeable).
fn tripods(h: &Graph) -> Vec<Graph> {
    let n = h.n() as u32;
    let mut out = Vec::new();
    for x1 in 0..n {
        for x2 in (x1 + 1)..n {
            for x3 in (x2 + 1)..n {
                let targets = [x1, x2, x3];
                for (odd_len, pair_len) in [(1usize, 3usize), (3, 2)] {
                    for solo in 0..3 {
                        let mut lengths = [pair_len; 3];
                        lengths[solo] = odd_len;
                        out.push(tripod(h, targets, lengths));
                    }
                }
            }
        }
    }
    out
}

/// The adjacent-target (2,2,3) members: the two length-2 paths land on
/// the ends of an edge of `h` whose larger-degree end has degree at least
/// 3, and the length-3 path lands elsewhere.
fn restricted_tripods(h: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for (x1, x2) in h.edges().collect::<Vec<_>>() {
        if h.degree(x1).max(h.degree(x2)) < 3 {
            continue;
        }
        for x3 in h.vertices() {
            if x3 == x1 || x3 == x2 {
                continue;
            }
            out.push(tripod(h, [x1, x2, x3], [2, 2, 3]));
        }
    }
    out
}

/// Splits each degree-2 or degree-3 vertex `v` of `donor`, keeps
/// `donor - v` with ids appended after `h` (ascending), and rewires each
/// of `v`'s former edges to an `h`-vertex; all ordered target tuples that
/// are not constant are emitted.
fn grafts(h: &Graph, donor: &Graph) -> Vec<Graph> {
    let nh = h.n() as u32;
    let mut out = Vec::new();
    for v in donor.vertices() {
        let k = donor.degree(v);
        if !(2..=3).contains(&k) {
            continue;
        }
        // donor - v keeps its relative order, shifted after h.
        let mut map = vec![u32::MAX; donor.n()];
        let mut next = nh;
        for w in donor.vertices() {
            if w != v {
                map[w as usize] = next;
                next += 1;
            }
        }
        let base: Vec<(u32, u32)> = h
            .edges()
            .chain(
                donor
                    .edges()
                    .filter(|&(a, b)| a != v && b != v)
                    .map(|(a, b)| (map[a as usize], map[b as usize])),
            )
            .collect();
        let stubs: Vec<u32> = donor.neighbors(v).iter().map(|&w| map[w as usize]).collect();
        let mut tuple = vec![0u32; k];
        loop {
            if !tuple.iter().all(|&u| u == tuple[0]) {
                let mut edges = base.clone();
                for (i, &stub) in stubs.iter().enumerate() {
                    edges.push((tuple[i], stub));
                }
                out.push(Graph::from_edges(h.n() + donor.n() - 1, &edges).unwrap());
            }
            // Advance the odometer over V(h)^k.
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tuple[pos] += 1;
                if tuple[pos] < nh {
                    break;
                }
                tuple[pos] = 0;
            }
            if tuple.iter().all(|&u| u == 0) {
                break;
            }
        }
    }
    out
}
