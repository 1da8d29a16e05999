//! Simple undirected graphs with the exact arithmetic used throughout the
//! toolkit: the potential `p(G) = 5 n(G) - 4 e(G)`, girth and odd girth,
//! biconnectivity, and the vertex surgeries (identification, subdivision)
//! that the constructions build on.
//!
//! Vertices are `0..n`. Graphs are immutable; every surgery returns a new
//! graph with a documented, deterministic relabeling.

use serde::Serialize;
use thiserror::Error;

/// Errors raised while building or editing a graph.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is not in `0..n`.
    #[error("vertex {v} out of range (n = {n})")]
    InvalidVertex { v: u32, n: usize },
    /// A loop `u == v` was supplied where a proper edge is required.
    #[error("loop at vertex {v} rejected")]
    LoopRejected { v: u32 },
    /// Vertex identification was asked to merge a vertex with itself.
    #[error("cannot identify vertex {v} with itself")]
    SameVertex { v: u32 },
    /// Vertex identification of two adjacent vertices would create a loop.
    #[error("identifying adjacent vertices {u} and {v} would create a loop")]
    WouldCreateLoop { u: u32, v: u32 },
}

/// An undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted ascending, so iteration order is
/// deterministic everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, e={}; ", self.n(), self.e())?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Duplicate edges are collapsed. Loops are rejected, as are endpoints
    /// outside `0..n`.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::InvalidVertex { v: u, n });
            }
            if v as usize >= n {
                return Err(GraphError::InvalidVertex { v, n });
            }
            if u == v {
                return Err(GraphError::LoopRejected { v });
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    /// The empty graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn e(&self) -> usize {
        self.edge_count
    }

    /// Degree of `v`.
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    /// Whether `u` and `v` are adjacent.
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Iterator over vertices `0..n`.
    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.n() as u32
    }

    /// Iterator over edges as pairs `(u, v)` with `u < v`, in ascending
    /// lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| {
                let u = u as u32;
                list.iter().filter_map(move |&v| if u < v { Some((u, v)) } else { None })
            })
    }

    /// The potential `p(G) = 5 n(G) - 4 e(G)`.
    pub fn potential(&self) -> i64 {
        5 * self.n() as i64 - 4 * self.e() as i64
    }

    /// Minimum degree, or `None` for the empty vertex set.
    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    /// Maximum degree, or `None` for the empty vertex set.
    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        let mut queue = std::collections::VecDeque::new();
        dist[src as usize] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &w in self.neighbors(u) {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as u32];
            seen[s] = true;
            let mut stack = vec![s as u32];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the graph is connected (vacuously true for `n == 0`).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the graph is 2-connected: connected, `n >= 3`, and without a
    /// cutvertex.
    pub fn is_biconnected(&self) -> bool {
        let n = self.n();
        if n < 3 || !self.is_connected() {
            return false;
        }
        // Iterative articulation-point scan (DFS low-links).
        let mut disc = vec![0u32; n];
        let mut low = vec![0u32; n];
        let mut visited = vec![false; n];
        let mut timer = 1u32;
        // Stack entries: (vertex, parent, next neighbor index).
        let mut stack: Vec<(u32, Option<u32>, usize)> = vec![(0, None, 0)];
        visited[0] = true;
        disc[0] = timer;
        low[0] = timer;
        let mut root_children = 0usize;
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < self.degree(u) {
                let w = self.adj[u as usize][*idx];
                *idx += 1;
                if !visited[w as usize] {
                    if parent.is_none() {
                        root_children += 1;
                        if root_children > 1 {
                            return false;
                        }
                    }
                    visited[w as usize] = true;
                    timer += 1;
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    stack.push((w, Some(u), 0));
                } else if Some(w) != parent {
                    low[u as usize] = low[u as usize].min(disc[w as usize]);
                }
            } else {
                stack.pop();
                if let Some(&(p, pp, _)) = stack.last() {
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                    // Non-root p is a cutvertex if some child cannot reach
                    // above it.
                    if pp.is_some() && low[u as usize] >= disc[p as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Copy with edge `(u, v)` removed (no-op if absent).
    pub fn with_edge_removed(&self, u: u32, v: u32) -> Graph {
        let mut g = self.clone();
        let before = g.adj[u as usize].len();
        g.adj[u as usize].retain(|&w| w != v);
        if g.adj[u as usize].len() < before {
            g.adj[v as usize].retain(|&w| w != u);
            g.edge_count -= 1;
        }
        g
    }

    /// Copy with edge `(u, v)` added (no-op if present).
    pub fn with_edge_added(&self, u: u32, v: u32) -> Result<Graph, GraphError> {
        let n = self.n();
        if u as usize >= n {
            return Err(GraphError::InvalidVertex { v: u, n });
        }
        if v as usize >= n {
            return Err(GraphError::InvalidVertex { v, n });
        }
        if u == v {
            return Err(GraphError::LoopRejected { v });
        }
        let mut g = self.clone();
        if !g.has_edge(u, v) {
            let pos = g.adj[u as usize].binary_search(&v).unwrap_err();
            g.adj[u as usize].insert(pos, v);
            let pos = g.adj[v as usize].binary_search(&u).unwrap_err();
            g.adj[v as usize].insert(pos, u);
            g.edge_count += 1;
        }
        Ok(g)
    }

    /// Copy with vertex `v` removed; vertices above `v` shift down by one.
    pub fn with_vertex_removed(&self, v: u32) -> Graph {
        let relabel = |w: u32| if w > v { w - 1 } else { w };
        let mut adj: Vec<Vec<u32>> = Vec::with_capacity(self.n() - 1);
        let mut edge_count = 0;
        for (u, list) in self.adj.iter().enumerate() {
            if u as u32 == v {
                continue;
            }
            let filtered: Vec<u32> =
                list.iter().filter(|&&w| w != v).map(|&w| relabel(w)).collect();
            edge_count += filtered.len();
            adj.push(filtered);
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }

    /// Identifies vertices `u` and `v` into one vertex.
    ///
    /// The merged vertex takes id `min(u, v)`; ids above `max(u, v)` shift
    /// down by one. The two vertices must be distinct and non-adjacent
    /// (identifying adjacent vertices would create a loop). Parallel edges
    /// arising from common neighbors are collapsed.
    pub fn identify_vertices(&self, u: u32, v: u32) -> Result<Graph, GraphError> {
        let n = self.n();
        if u as usize >= n {
            return Err(GraphError::InvalidVertex { v: u, n });
        }
        if v as usize >= n {
            return Err(GraphError::InvalidVertex { v, n });
        }
        if u == v {
            return Err(GraphError::SameVertex { v });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::WouldCreateLoop { u, v });
        }
        let a = u.min(v);
        let b = u.max(v);
        let relabel = |w: u32| {
            if w == b {
                a
            } else if w > b {
                w - 1
            } else {
                w
            }
        };
        let mut edges = Vec::with_capacity(self.e());
        for (x, y) in self.edges() {
            edges.push((relabel(x), relabel(y)));
        }
        Graph::from_edges(n - 1, &edges)
    }

    /// Replaces every edge by a path with `k` internal new vertices.
    ///
    /// Original vertices keep their ids. Edges are processed in ascending
    /// `(u, v)` lexicographic order; edge `i` receives internal ids
    /// `n + i*k .. n + i*k + k`, laid out along the path from the smaller
    /// endpoint to the larger. `k = 0` returns the graph unchanged.
    pub fn subdivide_all_edges(&self, k: usize) -> Graph {
        if k == 0 {
            return self.clone();
        }
        let n = self.n();
        let mut edges = Vec::with_capacity(self.e() * (k + 1));
        for (i, (u, v)) in self.edges().enumerate() {
            let base = (n + i * k) as u32;
            let mut prev = u;
            for j in 0..k as u32 {
                edges.push((prev, base + j));
                prev = base + j;
            }
            edges.push((prev, v));
        }
        Graph::from_edges(n + self.e() * k, &edges).expect("subdivision edges are valid")
    }

    /// Copy with vertices renamed by `perm` (`perm[old] = new`), which must
    /// be a permutation of `0..n`.
    pub fn relabeled(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length must equal n");
        let edges: Vec<(u32, u32)> = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_edges(self.n(), &edges).expect("relabeling preserves validity")
    }
}

/// Girth-style quantities; `Infinite` means no cycle of the relevant parity
/// exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CycleLength {
    /// A shortest cycle of this length exists.
    Finite(u32),
    /// No such cycle.
    Infinite,
}

impl CycleLength {
    /// Whether this length is at least `bound` (infinite counts as yes).
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            CycleLength::Finite(g) => g >= bound,
            CycleLength::Infinite => true,
        }
    }
}

/// Girth, odd girth, a shortest-cycle witness, and the exhaustive list of
/// short even cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    /// Length of a shortest cycle.
    pub girth: CycleLength,
    /// Length of a shortest odd cycle.
    pub odd_girth: CycleLength,
    /// A shortest cycle as a vertex sequence, if any cycle exists.
    pub witness_cycle: Option<Vec<u32>>,
}

impl Graph {
    /// Computes girth, odd girth, a shortest-cycle witness, and every even
    /// cycle of length at most `max_even_length` (each as a vertex sequence,
    /// deduplicated by edge set).
    ///
    /// `max_even_length` must be at least 4.
    pub fn cycle_report(&self, max_even_length: usize) -> (CycleReport, Vec<Vec<u32>>) {
        assert!(max_even_length >= 4, "even-cycle bound must be at least 4");
        let (girth, witness_cycle) = self.shortest_cycle();
        let odd_girth = self.shortest_odd_cycle_length();
        let even_cycles = self.cycles_up_to(max_even_length, true);
        (
            CycleReport {
                girth,
                odd_girth,
                witness_cycle,
            },
            even_cycles,
        )
    }

    /// All cycles of length at most `bound` as vertex sequences; with
    /// `even_only`, odd cycles are dropped. Each cycle appears exactly once:
    /// sequences start at the cycle's smallest vertex and run toward the
    /// smaller of its two neighbors on the cycle.
    pub fn cycles_up_to(&self, bound: usize, even_only: bool) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut path: Vec<u32> = Vec::with_capacity(bound);
        let mut on_path = vec![false; self.n()];
        for s in self.vertices() {
            path.push(s);
            on_path[s as usize] = true;
            self.cycle_dfs(s, bound, even_only, &mut path, &mut on_path, &mut out);
            on_path[s as usize] = false;
            path.pop();
        }
        out
    }

    fn cycle_dfs(
        &self,
        start: u32,
        bound: usize,
        even_only: bool,
        path: &mut Vec<u32>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let last = *path.last().unwrap();
        for &w in self.neighbors(last) {
            if w == start && path.len() >= 3 {
                // Close the cycle; canonical orientation: second vertex
                // smaller than last vertex.
                if path[1] < last && (!even_only || path.len() % 2 == 0) {
                    out.push(path.clone());
                }
                continue;
            }
            // Only the start may be revisited; all other vertices exceed it,
            // making the start the cycle minimum.
            if w <= start || on_path[w as usize] || path.len() == bound {
                continue;
            }
            path.push(w);
            on_path[w as usize] = true;
            self.cycle_dfs(start, bound, even_only, path, on_path, out);
            on_path[w as usize] = false;
            path.pop();
        }
    }

    /// Shortest cycle length and one witness cycle (the first shortest cycle
    /// in the deterministic enumeration order of [`Graph::cycles_up_to`]).
    fn shortest_cycle(&self) -> (CycleLength, Option<Vec<u32>>) {
        let mut bound: Option<u32> = None;
        // BFS from every root. Every non-tree edge closes a walk
        // d(u) + d(v) + 1 that contains a cycle no longer than itself, and
        // for a root on a shortest cycle some edge achieves at most g + 1;
        // the scan therefore yields an upper bound within one of the girth,
        // which seeds an exhaustive short-cycle enumeration below.
        for root in self.vertices() {
            let mut dist = vec![u32::MAX; self.n()];
            let mut parent = vec![u32::MAX; self.n()];
            let mut queue = std::collections::VecDeque::new();
            dist[root as usize] = 0;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[u as usize] + 1;
                        parent[w as usize] = u;
                        queue.push_back(w);
                    }
                }
            }
            for (u, v) in self.edges() {
                if dist[u as usize] == u32::MAX || dist[v as usize] == u32::MAX {
                    continue;
                }
                if parent[u as usize] == v || parent[v as usize] == u {
                    continue;
                }
                let len = dist[u as usize] + dist[v as usize] + 1;
                if bound.map_or(true, |b| len < b) {
                    bound = Some(len);
                }
            }
        }
        match bound {
            None => (CycleLength::Infinite, None),
            Some(b) => {
                let mut girth = u32::MAX;
                let mut witness = None;
                for c in self.cycles_up_to(b as usize, false) {
                    if (c.len() as u32) < girth {
                        girth = c.len() as u32;
                        witness = Some(c);
                    }
                }
                (CycleLength::Finite(girth), witness)
            }
        }
    }

    /// Shortest odd cycle length.
    fn shortest_odd_cycle_length(&self) -> CycleLength {
        let mut best: Option<u32> = None;
        // An edge inside one BFS level closes an odd closed walk of length
        // 2d + 1; the minimum over roots is the odd girth.
        for root in self.vertices() {
            let dist = self.bfs_distances(root);
            for (u, v) in self.edges() {
                if let (Some(du), Some(dv)) = (dist[u as usize], dist[v as usize]) {
                    if du == dv {
                        let len = du + dv + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        match best {
            None => CycleLength::Infinite,
            Some(g) => CycleLength::Finite(g),
        }
    }
}
