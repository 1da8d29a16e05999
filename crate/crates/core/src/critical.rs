//! Criticality with respect to homomorphisms into odd cycles, critical
//! subgraph extraction, and the potential-bound report.
//!
//! A graph is critical for the target `C_{2t+1}` when it admits no
//! homomorphism into that cycle but every proper subgraph does. Because
//! colorability is monotone under subgraphs, it suffices that every
//! single-edge deletion is colorable and that no vertex is isolated.

use crate::canon::{canonical_code, CanonicalCode};
use crate::construct::{make_named, NamedGraph};
use crate::graph::Graph;
use crate::hom::{find_hom, HomAssignment, HomError, Pinning};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

/// Errors from criticality operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CriticalityError {
    /// The operation needs a non-colorable input.
    #[error("graph admits a homomorphism to the target cycle")]
    NotApplicable,
    /// The operation needs a critical input.
    #[error("graph is not critical for the target cycle")]
    NotCritical,
    /// Invalid target parameter, forwarded from the solver.
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// Why a graph is or is not critical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CriticalityWitness {
    /// The graph itself is colorable.
    Colorable(HomAssignment),
    /// Deleting this edge leaves the graph non-colorable.
    RedundantEdge((u32, u32)),
    /// This isolated vertex can be dropped without restoring colorability.
    IsolatedVertex(u32),
    /// Non-colorable, and every proper subgraph is colorable.
    Critical,
}

/// The outcome of [`is_critical`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub is_colorable: bool,
    pub is_critical: bool,
    pub witness: CriticalityWitness,
}

/// Decides criticality for the target `C_{2t+1}`.
///
/// Edge deletions are tested in parallel; the reported redundant edge is
/// always the lowest-indexed one, so the verdict is deterministic.
pub fn is_critical(g: &Graph, t: u32) -> Result<CriticalityVerdict, CriticalityError> {
    if let Some(witness) = find_hom(g, t, &Pinning::empty())? {
        return Ok(CriticalityVerdict {
            is_colorable: true,
            is_critical: false,
            witness: CriticalityWitness::Colorable(witness),
        });
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Ok(CriticalityVerdict {
            is_colorable: false,
            is_critical: false,
            witness: CriticalityWitness::IsolatedVertex(v),
        });
    }
    let edges: Vec<(u32, u32)> = g.edges().collect();
    let redundant = edges
        .par_iter()
        .enumerate()
        .filter_map(|(i, &(u, v))| {
            let reduced = g.with_edge_removed(u, v);
            match find_hom(&reduced, t, &Pinning::empty()) {
                Ok(None) => Some(Ok(i)),
                Ok(Some(_)) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .min_by_key(|r| match r {
            Ok(i) => *i,
            Err(_) => 0,
        });
    match redundant {
        Some(Err(e)) => Err(e.into()),
        Some(Ok(i)) => Ok(CriticalityVerdict {
            is_colorable: false,
            is_critical: false,
            witness: CriticalityWitness::RedundantEdge(edges[i]),
        }),
        None => Ok(CriticalityVerdict {
            is_colorable: false,
            is_critical: true,
            witness: CriticalityWitness::Critical,
        }),
    }
}

/// Extracts a critical subgraph from a non-colorable graph.
///
/// Scans edges in ascending order, deletes the first one whose removal
/// keeps the graph non-colorable, restarts the scan, and finally drops
/// isolated vertices (remaining ids shift down). The procedure is fully
/// deterministic.
pub fn extract_critical_subgraph(g: &Graph, t: u32) -> Result<Graph, CriticalityError> {
    if find_hom(g, t, &Pinning::empty())?.is_some() {
        return Err(CriticalityError::NotApplicable);
    }
    let mut current = g.clone();
    loop {
        let edges: Vec<(u32, u32)> = current.edges().collect();
        let hit = edges
            .par_iter()
            .enumerate()
            .filter_map(|(i, &(u, v))| {
                match find_hom(&current.with_edge_removed(u, v), t, &Pinning::empty()) {
                    Ok(None) => Some(Ok(i)),
                    Ok(Some(_)) => None,
                    Err(e) => Some(Err(e)),
                }
            })
            .min_by_key(|r| match r {
                Ok(i) => *i,
                Err(_) => 0,
            });
        match hit {
            Some(Err(e)) => return Err(e.into()),
            Some(Ok(i)) => {
                let (u, v) = edges[i];
                current = current.with_edge_removed(u, v);
            }
            None => break,
        }
    }
    while let Some(v) = current.vertices().find(|&v| current.degree(v) == 0) {
        current = current.with_vertex_removed(v);
    }
    Ok(current)
}

/// Report of [`theorem_predicate`]: how a critical graph sits relative to
/// the potential bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `p(G) = 5n - 4e`.
    pub potential: i64,
    /// Whether the graph is isomorphic to the triangle or to one of the
    /// two potential-2 graphs (`E1`, `E2`).
    pub is_exception: bool,
    /// `p(G) <= 1`, or the graph is one of the three exceptions.
    pub satisfies_bound: bool,
    /// The quantity `14 n(G) - 11 e(G)`, reported for reference.
    pub measure_14n_11e: i64,
}

fn exception_codes() -> &'static [CanonicalCode; 3] {
    static CODES: OnceLock<[CanonicalCode; 3]> = OnceLock::new();
    CODES.get_or_init(|| {
        let triangle = make_named(NamedGraph::Cycle(3)).unwrap();
        let e1 = make_named(NamedGraph::E1).unwrap();
        let e2 = make_named(NamedGraph::E2).unwrap();
        [
            canonical_code(&triangle),
            canonical_code(&e1),
            canonical_code(&e2),
        ]
    })
}

/// Evaluates the potential bound on a 5/2-critical graph (target `C5`).
///
/// Returns an error unless the input is critical for `t = 2`.
pub fn theorem_predicate(g: &Graph) -> Result<BoundReport, CriticalityError> {
    if !is_critical(g, 2)?.is_critical {
        return Err(CriticalityError::NotCritical);
    }
    let potential = g.potential();
    let is_exception = exception_codes().contains(&canonical_code(g));
    Ok(BoundReport {
        potential,
        is_exception,
        satisfies_bound: potential <= 1 || is_exception,
        measure_14n_11e: 14 * g.n() as i64 - 11 * g.e() as i64,
    })
}
