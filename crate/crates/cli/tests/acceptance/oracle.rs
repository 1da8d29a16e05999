//! Independent reference implementations the acceptance tests check the
//! library against: subset-based graph generation, brute-force
//! homomorphism counting and pinned search, a proper-coloring backtracker,
//! and a second graph6 codec. Everything here favors directness over
//! speed and shares no search machinery with the main crate.

use circ52_core::{canonical_form, CanonicalCode, Graph};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Number of isomorphism classes of simple graphs on n vertices, the
/// standard published sequence; validates the generators below.
pub const SIMPLE_GRAPH_CLASS_COUNTS: [usize; 8] = [1, 1, 2, 4, 11, 34, 156, 1044];

pub struct ClassEntry {
    /// Canonical representative.
    pub graph: Graph,
    pub e: usize,
    pub biconnected: bool,
}

/// Isomorphism classes keyed by canonical code.
pub struct ClassTable {
    pub classes: BTreeMap<CanonicalCode, ClassEntry>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.classes.values().map(|c| &c.graph)
    }

    /// Codes of the classes with exactly `e` edges, optionally restricted
    /// to 2-connected ones.
    pub fn bundle(&self, e: usize, biconnected_only: bool) -> BTreeSet<CanonicalCode> {
        self.classes
            .iter()
            .filter(|(_, c)| c.e == e && (!biconnected_only || c.biconnected))
            .map(|(code, _)| code.clone())
            .collect()
    }

    pub fn max_e(&self) -> usize {
        self.classes.values().map(|c| c.e).max().unwrap_or(0)
    }
}

fn pair_list(n: usize) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            pairs.push((u, v));
        }
    }
    pairs
}

fn classify(n: usize, masks: &[u64], pairs: &[(u32, u32)]) -> ClassTable {
    let keyed: Vec<(CanonicalCode, usize, bool, Graph)> = masks
        .par_iter()
        .map(|&mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(n, &edges).expect("subset is simple");
            let (code, labeling) = canonical_form(&g);
            (code, g.e(), g.is_biconnected(), g.relabeled(&labeling))
        })
        .collect();
    let mut classes = BTreeMap::new();
    for (code, e, biconnected, graph) in keyed {
        classes.entry(code).or_insert(ClassEntry {
            graph,
            e,
            biconnected,
        });
    }
    ClassTable { classes }
}

/// All isomorphism classes of graphs on exactly `n` labeled vertices with
/// girth at least `min_girth`, by filtering edge subsets of the complete
/// graph. Subsets only lose cycles, so the recursion can refuse any edge
/// that closes a short cycle and still reach every valid graph.
pub fn generate_classes(n: usize, min_girth: usize) -> ClassTable {
    let pairs = pair_list(n);
    assert!(pairs.len() <= 64, "mask width");
    let mut masks = Vec::new();
    let mut adj = vec![Vec::<u32>::new(); n];
    grow(&pairs, 0, 0, min_girth, &mut adj, &mut masks);
    classify(n, &masks, &pairs)
}

fn grow(
    pairs: &[(u32, u32)],
    idx: usize,
    mask: u64,
    min_girth: usize,
    adj: &mut Vec<Vec<u32>>,
    out: &mut Vec<u64>,
) {
    if idx == pairs.len() {
        out.push(mask);
        return;
    }
    grow(pairs, idx + 1, mask, min_girth, adj, out);
    let (u, v) = pairs[idx];
    // Adding uv creates cycles of length dist(u, v) + 1 and longer.
    if min_girth > 3 {
        if let Some(d) = bfs_distance(adj, u, v) {
            if (d + 1) < min_girth {
                return;
            }
        }
    }
    adj[u as usize].push(v);
    adj[v as usize].push(u);
    grow(pairs, idx + 1, mask | 1 << idx, min_girth, adj, out);
    adj[u as usize].pop();
    adj[v as usize].pop();
}

fn bfs_distance(adj: &[Vec<u32>], src: u32, dst: u32) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[src as usize] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        if x == dst {
            return Some(dist[dst as usize]);
        }
        for &y in &adj[x as usize] {
            if dist[y as usize] == usize::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Same classes by plain mask iteration with a whole-graph girth filter;
/// cross-checks the pruned recursion on small orders.
pub fn generate_classes_by_mask_scan(n: usize, min_girth: usize) -> ClassTable {
    let pairs = pair_list(n);
    assert!(pairs.len() <= 22, "scan is exponential in pairs");
    let masks: Vec<u64> = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter(|&mask| {
            let mut adj = vec![Vec::new(); n];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                }
            }
            naive_girth(&adj).is_none_or(|g| g >= min_girth)
        })
        .collect();
    classify(n, &masks, &pairs)
}

/// Shortest cycle length via one BFS per start vertex.
fn naive_girth(adj: &[Vec<u32>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for src in 0..adj.len() as u32 {
        let mut dist = vec![usize::MAX; adj.len()];
        let mut parent = vec![u32::MAX; adj.len()];
        dist[src as usize] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x as usize] {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    parent[y as usize] = x;
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    let len = dist[x as usize] + dist[y as usize] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// All permutations of 0..n.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    fn rec(k: usize, perm: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, &mut out);
    out
}

/// Colors adjacent on the cycle C_m.
fn cycle_adjacent(m: u8, a: u8, b: u8) -> bool {
    (a + 1) % m == b || (b + 1) % m == a
}

/// Counts homomorphisms into C_{2t+1} by checking every one of the
/// (2t+1)^n assignments against every edge.
pub fn brute_count_homs(g: &Graph, t: u32) -> u64 {
    let m = (2 * t + 1) as u8;
    let n = g.n();
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let mut digits = vec![0u8; n];
    let mut count = 0u64;
    loop {
        if edges
            .iter()
            .all(|&(u, v)| cycle_adjacent(m, digits[u as usize], digits[v as usize]))
        {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return count;
            }
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Whether a homomorphism into C5 exists that honors every pin; simple
/// backtracking in vertex order. Contradictory pins on one vertex make
/// the answer false.
pub fn brute_pinned_hom_exists(g: &Graph, pins: &[(u32, u8)]) -> bool {
    let n = g.n();
    let mut forced: Vec<Option<u8>> = vec![None; n];
    for &(v, c) in pins {
        match forced[v as usize] {
            Some(prev) if prev != c => return false,
            _ => forced[v as usize] = Some(c),
        }
    }
    let mut colors = vec![0u8; n];
    assign(g, &forced, &mut colors, 0)
}

fn assign(g: &Graph, forced: &[Option<u8>], colors: &mut [u8], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    'next: for c in 0..5u8 {
        if forced[v].is_some_and(|f| f != c) {
            continue 'next;
        }
        for &u in g.neighbors(v as u32) {
            if (u as usize) < v && !cycle_adjacent(5, colors[u as usize], c) {
                continue 'next;
            }
        }
        colors[v] = c;
        if assign(g, forced, colors, v + 1) {
            return true;
        }
    }
    false
}

/// Smallest-first proper-coloring backtracker.
pub fn colorable(g: &Graph, k: usize) -> bool {
    let mut colors = vec![usize::MAX; g.n()];
    color(g, k, &mut colors, 0)
}

fn color(g: &Graph, k: usize, colors: &mut [usize], v: usize) -> bool {
    if v == g.n() {
        return true;
    }
    // New colors are interchangeable, so only the first unused one is tried.
    let used = colors[..v].iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..k.min(used + 1) {
        if g.neighbors(v as u32)
            .iter()
            .all(|&u| (u as usize) >= v || colors[u as usize] != c)
        {
            colors[v] = c;
            if color(g, k, colors, v + 1) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Chromatic number 6 and every single-edge deletion 5-colorable.
pub fn is_6critical(g: &Graph) -> bool {
    if colorable(g, 5) || !colorable(g, 6) {
        return false;
    }
    g.edges()
        .collect::<Vec<_>>()
        .par_iter()
        .all(|&(u, v)| colorable(&g.with_edge_removed(u, v), 5))
}

/// Second graph6 encoder: explicit bit vector over the column-major upper
/// triangle, padded and packed six bits per character.
pub fn ref_encode(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62, "single-byte order prefix only");
    let mut bits = Vec::new();
    for v in 1..n as u32 {
        for u in 0..v {
            bits.push(g.has_edge(u, v));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut s = String::new();
    s.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let value = chunk.iter().fold(0u8, |acc, &b| acc << 1 | b as u8);
        s.push((value + 63) as char);
    }
    s
}

pub fn ref_decode(s: &str) -> Graph {
    let bytes = s.as_bytes();
    assert!(!bytes.is_empty());
    let n = (bytes[0] - 63) as usize;
    assert!(n <= 62, "single-byte order prefix only");
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        let value = b - 63;
        for shift in (0..6).rev() {
            bits.push(value >> shift & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut at = 0;
    for v in 1..n as u32 {
        for u in 0..v {
            if bits[at] {
                edges.push((u, v));
            }
            at += 1;
        }
    }
    assert!(bits[at..].iter().all(|&b| !b), "padding must be zero");
    Graph::from_edges(n, &edges).expect("decoded edges are simple")
}
