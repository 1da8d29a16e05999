//! Structural vocabulary: strings, vertex signatures, cells, bad paths,
//! and the structural audit.
//!
//! A *k-string* is a path whose `k` internal vertices all have degree 2 and
//! whose endpoints have degree at least 3; a 0-string is an edge between
//! two such branch vertices. A vertex of degree `d >= 3` is a
//! `(k1, ..., kd)-vertex` when its incident strings have those parameters
//! (descending); its weight is their sum. A *cell* is a 5-cycle; its degree
//! counts the strings that intersect it without being contained in it, its
//! signature lists their parameters, and its weight is their sum.

use crate::graph::Graph;
use serde::Serialize;
use thiserror::Error;

/// Errors for structural queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    /// Signatures are defined only for branch vertices (degree >= 3).
    #[error("vertex {v} has degree {degree} < 3 and no signature")]
    NoSignature { v: u32, degree: usize },
    /// The supplied vertex sequence is not a cycle of the graph.
    #[error("vertex sequence is not a cycle: {reason}")]
    NotACycle { reason: String },
    /// A vertex argument is out of range.
    #[error("vertex {v} out of range (n = {n})")]
    InvalidVertex { v: u32, n: usize },
}

/// One string of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringPath {
    /// Full vertex sequence from one endpoint to the other; internal
    /// vertices have degree 2. Stored in canonical orientation (the
    /// lexicographically smaller of the two readings).
    pub vertices: Vec<u32>,
    /// The string parameter: number of internal vertices (= edges - 1).
    pub k: usize,
}

impl StringPath {
    /// The two endpoints (equal for a closed string through one branch
    /// vertex).
    pub fn endpoints(&self) -> (u32, u32) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// Whether vertex `v` is one of the endpoints.
    pub fn has_endpoint(&self, v: u32) -> bool {
        let (a, b) = self.endpoints();
        a == v || b == v
    }

    /// Number of endpoint slots at `v`: 1 normally, 2 for a closed string
    /// that starts and ends at `v`.
    fn endpoint_multiplicity(&self, v: u32) -> usize {
        let (a, b) = self.endpoints();
        (a == v) as usize + (b == v) as usize
    }

    /// Edges of the string as `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.vertices
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }
}

/// The string decomposition of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StringDecomposition {
    /// All strings, sorted by (min endpoint, max endpoint, k, sequence).
    pub strings: Vec<StringPath>,
    /// Components in which every vertex has degree exactly 2 (bare
    /// cycles), each as a vertex sequence starting at its smallest vertex
    /// toward its smaller neighbor.
    pub cycle_components: Vec<Vec<u32>>,
    /// Vertices of degree at most 1 (the decomposition treats them as
    /// endpoints, but they fall outside the clean branch-vertex setting).
    pub degenerate_vertices: Vec<u32>,
}

/// Computes the string decomposition.
///
/// Every edge incident with a degree-2 vertex lies in exactly one string or
/// cycle component, and every edge between two non-degree-2 vertices is a
/// 0-string, so the strings and cycle components partition `E(G)`.
pub fn string_decomposition(g: &Graph) -> StringDecomposition {
    let mut strings: Vec<StringPath> = Vec::new();
    let degenerate_vertices: Vec<u32> =
        g.vertices().filter(|&v| g.degree(v) <= 1).collect();

    // Walk from every non-degree-2 vertex through degree-2 chains.
    for b in g.vertices() {
        if g.degree(b) == 2 {
            continue;
        }
        for &w in g.neighbors(b) {
            let mut seq = vec![b, w];
            let (mut prev, mut cur) = (b, w);
            while g.degree(cur) == 2 {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .expect("degree-2 vertex has a second neighbor");
                seq.push(next);
                prev = cur;
                cur = next;
            }
            let rev: Vec<u32> = seq.iter().rev().copied().collect();
            let canonical = if rev < seq { rev } else { seq };
            let k = canonical.len() - 2;
            let s = StringPath {
                vertices: canonical,
                k,
            };
            if !strings.contains(&s) {
                strings.push(s);
            }
        }
    }
    strings.sort_by(|a, b| {
        let (a1, a2) = a.endpoints();
        let (b1, b2) = b.endpoints();
        (a1.min(a2), a1.max(a2), a.k, &a.vertices).cmp(&(
            b1.min(b2),
            b1.max(b2),
            b.k,
            &b.vertices,
        ))
    });

    // Components made entirely of degree-2 vertices are bare cycles.
    let mut cycle_components = Vec::new();
    for comp in g.components() {
        if comp.iter().all(|&v| g.degree(v) == 2) && !comp.is_empty() && g.degree(comp[0]) == 2
        {
            let start = comp[0];
            let mut seq = vec![start];
            let mut prev = start;
            let mut cur = g.neighbors(start)[0];
            while cur != start {
                seq.push(cur);
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| x != prev)
                    .expect("degree-2 vertex has a second neighbor");
                prev = cur;
                cur = next;
            }
            cycle_components.push(seq);
        }
    }

    StringDecomposition {
        strings,
        cycle_components,
        degenerate_vertices,
    }
}

impl StringDecomposition {
    /// Strings with an endpoint at `v`, each repeated by endpoint
    /// multiplicity (a closed string at `v` counts twice).
    pub fn strings_at(&self, v: u32) -> Vec<&StringPath> {
        let mut out = Vec::new();
        for s in &self.strings {
            for _ in 0..s.endpoint_multiplicity(v) {
                out.push(s);
            }
        }
        out
    }
}

/// The signature of a branch vertex: the parameters of its incident
/// strings in descending order. Its length equals the degree, and the
/// weight is the sum.
pub fn vertex_signature(g: &Graph, v: u32) -> Result<Vec<usize>, StructureError> {
    if (v as usize) >= g.n() {
        return Err(StructureError::InvalidVertex { v, n: g.n() });
    }
    let degree = g.degree(v);
    if degree < 3 {
        return Err(StructureError::NoSignature { v, degree });
    }
    let dec = string_decomposition(g);
    let mut sig: Vec<usize> = dec.strings_at(v).iter().map(|s| s.k).collect();
    sig.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sig)
}

/// The weight of a branch vertex: sum of its signature.
pub fn vertex_weight(g: &Graph, v: u32) -> Result<usize, StructureError> {
    Ok(vertex_signature(g, v)?.iter().sum())
}

/// A cell: a 5-cycle together with its degree, signature, and weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// The cycle as a vertex sequence (starting at its smallest vertex,
    /// toward its smaller neighbor on the cycle).
    pub cycle: Vec<u32>,
    /// Whether the 5-cycle is induced (no chords).
    pub induced: bool,
    /// Number of strings that intersect the cell without being contained
    /// in it (a string with both ends on the cell still counts once).
    pub degree: usize,
    /// Parameters of those strings, descending.
    pub signature: Vec<usize>,
    /// Sum of the signature.
    pub weight: usize,
}

impl Cell {
    /// Sorted vertex set of the cell.
    pub fn vertex_set(&self) -> Vec<u32> {
        let mut s = self.cycle.clone();
        s.sort_unstable();
        s
    }

    /// Whether `v` lies on the cell.
    pub fn contains(&self, v: u32) -> bool {
        self.cycle.contains(&v)
    }
}

/// All cells plus the pairwise-disjointness summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    /// Cells ordered by their sorted vertex sets.
    pub cells: Vec<Cell>,
    /// Whether all cells are pairwise vertex-disjoint.
    pub pairwise_vertex_disjoint: bool,
    /// Index pairs of cells sharing a vertex.
    pub overlapping_pairs: Vec<(usize, usize)>,
}

/// Finds every cell (5-cycle) of the graph.
pub fn find_cells(g: &Graph) -> CellReport {
    let dec = string_decomposition(g);
    find_cells_with(g, &dec)
}

/// As [`find_cells`], reusing a precomputed string decomposition.
pub fn find_cells_with(g: &Graph, dec: &StringDecomposition) -> CellReport {
    let mut cells: Vec<Cell> = g
        .cycles_up_to(5, false)
        .into_iter()
        .filter(|c| c.len() == 5)
        .map(|cycle| make_cell(g, dec, cycle))
        .collect();
    cells.sort_by_key(|c| c.vertex_set());
    let mut overlapping_pairs = Vec::new();
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            if cells[i].cycle.iter().any(|v| cells[j].contains(*v)) {
                overlapping_pairs.push((i, j));
            }
        }
    }
    CellReport {
        pairwise_vertex_disjoint: overlapping_pairs.is_empty(),
        cells,
        overlapping_pairs,
    }
}

fn make_cell(g: &Graph, dec: &StringDecomposition, cycle: Vec<u32>) -> Cell {
    let cycle_edges: Vec<(u32, u32)> = (0..5)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % 5]);
            (a.min(b), a.max(b))
        })
        .collect();
    let induced = {
        let mut chords = 0;
        for i in 0..5 {
            for j in (i + 1)..5 {
                if g.has_edge(cycle[i], cycle[j])
                    && !cycle_edges.contains(&(cycle[i].min(cycle[j]), cycle[i].max(cycle[j])))
                {
                    chords += 1;
                }
            }
        }
        chords == 0
    };
    let mut signature = Vec::new();
    for s in &dec.strings {
        let touches = s.vertices.iter().any(|v| cycle.contains(v));
        if !touches {
            continue;
        }
        let contained = s.edges().iter().all(|e| cycle_edges.contains(e));
        if !contained {
            signature.push(s.k);
        }
    }
    signature.sort_unstable_by(|a, b| b.cmp(a));
    Cell {
        degree: signature.len(),
        weight: signature.iter().sum(),
        cycle,
        induced,
        signature,
    }
}

/// Paths of length 3 that meet the cycle `k_cycle` exactly in their two
/// endpoints. Each path is reported once, oriented so its first endpoint is
/// the smaller; the list is sorted.
pub fn find_bad_paths(g: &Graph, k_cycle: &[u32]) -> Result<Vec<Vec<u32>>, StructureError> {
    let n = g.n();
    if k_cycle.len() < 3 {
        return Err(StructureError::NotACycle {
            reason: format!("length {} < 3", k_cycle.len()),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for &v in k_cycle {
        if v as usize >= n {
            return Err(StructureError::InvalidVertex { v, n });
        }
        if !seen.insert(v) {
            return Err(StructureError::NotACycle {
                reason: format!("repeated vertex {v}"),
            });
        }
    }
    for i in 0..k_cycle.len() {
        let (a, b) = (k_cycle[i], k_cycle[(i + 1) % k_cycle.len()]);
        if !g.has_edge(a, b) {
            return Err(StructureError::NotACycle {
                reason: format!("missing edge {a}-{b}"),
            });
        }
    }
    let on_cycle = |v: u32| k_cycle.contains(&v);
    let mut out = Vec::new();
    for &a in k_cycle {
        for &x in g.neighbors(a) {
            if on_cycle(x) {
                continue;
            }
            for &y in g.neighbors(x) {
                if y == a || on_cycle(y) {
                    continue;
                }
                for &b in g.neighbors(y) {
                    if b == x || !on_cycle(b) || b == a {
                        continue;
                    }
                    if a < b {
                        out.push(vec![a, x, y, b]);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Result of one audit predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    /// Whether the predicate holds.
    pub holds: bool,
    /// Human-readable witnesses for each violation.
    pub witnesses: Vec<String>,
}

impl PredicateResult {
    fn from_witnesses(witnesses: Vec<String>) -> PredicateResult {
        PredicateResult {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// The structural audit: each field checks one conclusion of the
/// structure theory for graphs in its scope, reporting witnesses when the
/// input violates it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    /// Girth at least 5.
    pub girth_at_least_5: PredicateResult,
    /// No k-string with k >= 3.
    pub no_long_strings: PredicateResult,
    /// No 6-cycles.
    pub no_6_cycles: PredicateResult,
    /// No even cycles of length at most 8.
    pub no_short_even_cycles: PredicateResult,
    /// Every two cells are vertex-disjoint.
    pub cells_vertex_disjoint: PredicateResult,
    /// No cell of degree at most 3.
    pub no_low_degree_cells: PredicateResult,
    /// No (2,2,k)-vertex.
    pub no_22k_vertex: PredicateResult,
    /// Every degree-3 vertex outside all cells has weight at most 3, and
    /// weight exactly 3 only as a (1,1,1)-vertex.
    pub degree3_weight_bound: PredicateResult,
    /// Every degree-4 vertex outside all cells has weight at most 6.
    pub degree4_weight_bound: PredicateResult,
    /// Every (2,k2,k3,k4)-cell has k4 = 0.
    pub cell_22k_bound: PredicateResult,
}

impl AuditReport {
    /// Whether every predicate holds.
    pub fn all_hold(&self) -> bool {
        self.girth_at_least_5.holds
            && self.no_long_strings.holds
            && self.no_6_cycles.holds
            && self.no_short_even_cycles.holds
            && self.cells_vertex_disjoint.holds
            && self.no_low_degree_cells.holds
            && self.no_22k_vertex.holds
            && self.degree3_weight_bound.holds
            && self.degree4_weight_bound.holds
            && self.cell_22k_bound.holds
    }
}

/// Runs the full structural audit.
pub fn audit_structure(g: &Graph) -> AuditReport {
    let dec = string_decomposition(g);
    let cells = find_cells_with(g, &dec);
    let (cycle_rep, even_cycles) = g.cycle_report(8);

    let girth_at_least_5 = PredicateResult {
        holds: cycle_rep.girth.at_least(5),
        witnesses: if cycle_rep.girth.at_least(5) {
            Vec::new()
        } else {
            vec![format!(
                "short cycle {:?}",
                cycle_rep.witness_cycle.as_deref().unwrap_or(&[])
            )]
        },
    };

    let no_long_strings = PredicateResult::from_witnesses(
        dec.strings
            .iter()
            .filter(|s| s.k >= 3)
            .map(|s| format!("{}-string {:?}", s.k, s.vertices))
            .collect(),
    );

    let six_cycles: Vec<String> = even_cycles
        .iter()
        .filter(|c| c.len() == 6)
        .map(|c| format!("6-cycle {c:?}"))
        .collect();
    let no_6_cycles = PredicateResult::from_witnesses(six_cycles);

    let no_short_even_cycles = PredicateResult::from_witnesses(
        even_cycles
            .iter()
            .map(|c| format!("{}-cycle {c:?}", c.len()))
            .collect(),
    );

    let cells_vertex_disjoint = PredicateResult::from_witnesses(
        cells
            .overlapping_pairs
            .iter()
            .map(|&(i, j)| {
                format!(
                    "cells {:?} and {:?} share a vertex",
                    cells.cells[i].cycle, cells.cells[j].cycle
                )
            })
            .collect(),
    );

    let no_low_degree_cells = PredicateResult::from_witnesses(
        cells
            .cells
            .iter()
            .filter(|c| c.degree <= 3)
            .map(|c| format!("cell {:?} has degree {}", c.cycle, c.degree))
            .collect(),
    );

    let in_some_cell: Vec<bool> = {
        let mut f = vec![false; g.n()];
        for c in &cells.cells {
            for &v in &c.cycle {
                f[v as usize] = true;
            }
        }
        f
    };

    let mut no_22k = Vec::new();
    let mut deg3 = Vec::new();
    let mut deg4 = Vec::new();
    for v in g.vertices() {
        if g.degree(v) < 3 {
            continue;
        }
        let mut sig: Vec<usize> = dec.strings_at(v).iter().map(|s| s.k).collect();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        let weight: usize = sig.iter().sum();
        if g.degree(v) == 3 && sig.len() == 3 && sig[0] == 2 && sig[1] == 2 {
            no_22k.push(format!("vertex {v} is a {sig:?}-vertex"));
        }
        if !in_some_cell[v as usize] {
            if g.degree(v) == 3 && (weight > 3 || (weight == 3 && sig != [1, 1, 1])) {
                deg3.push(format!("vertex {v} has signature {sig:?} (weight {weight})"));
            }
            if g.degree(v) == 4 && weight > 6 {
                deg4.push(format!("vertex {v} has signature {sig:?} (weight {weight})"));
            }
        }
    }

    let cell_22k_bound = PredicateResult::from_witnesses(
        cells
            .cells
            .iter()
            .filter(|c| {
                c.degree == 4 && c.signature[0] == 2 && *c.signature.last().unwrap() != 0
            })
            .map(|c| format!("cell {:?} has signature {:?}", c.cycle, c.signature))
            .collect(),
    );

    AuditReport {
        girth_at_least_5,
        no_long_strings,
        no_6_cycles,
        no_short_even_cycles,
        cells_vertex_disjoint,
        no_low_degree_cells,
        no_22k_vertex: PredicateResult::from_witnesses(no_22k),
        degree3_weight_bound: PredicateResult::from_witnesses(deg3),
        degree4_weight_bound: PredicateResult::from_witnesses(deg4),
        cell_22k_bound,
    }
}
