//! Exact-computation toolkit for circular 5/2-coloring.
//!
//! A graph has a circular coloring with circumference 5/2 exactly when it
//! admits a homomorphism to the pentagon `C5`, and more generally circular
//! chromatic number at most `2 + 1/t` means a homomorphism to `C_{2t+1}`.
//! This crate provides the exact machinery around that fact:
//!
//! * [`graph`] — simple graphs, the potential `p(G) = 5n - 4e`, girth/odd
//!   girth, biconnectivity, and vertex surgeries;
//! * [`hom`] — deterministic homomorphism search into odd cycles, counting,
//!   and the pinning plausibility predicate;
//! * [`critical`] — edge-criticality testing, critical-subgraph extraction,
//!   and the potential-bound report;
//! * [`structure`] — strings, vertex signatures, cells (5-cycles) and their
//!   weights, bad paths, and the structural audit;
//! * [`discharge`] — the exact half-integer discharging ledger;
//! * [`construct`] — named graphs, the edge-delete/vertex-split composition
//!   chain, and the one-vertex extension families;
//! * [`canon`] — canonical codes under isomorphism;
//! * [`enumerate`] — isomorph-free exhaustive generation with budgets and
//!   checkpoints, and the small-order criticality sweep;
//! * [`graph6`] / [`edgelist`] — interchange formats.

pub mod graph;
pub mod canon;
pub mod construct;
pub mod critical;
pub mod discharge;
pub mod edgelist;
pub mod enumerate;
pub mod graph6;
pub mod hom;
pub mod structure;

pub use canon::{are_isomorphic, canonical_code, canonical_form, CanonicalCode};
pub use construct::{
    family_x, make_named, ore_6critical, ore_compose, ConstructError, ExtensionFamily,
    NamedGraph, OreState, OreStep,
};
pub use critical::{
    extract_critical_subgraph, is_critical, theorem_predicate, BoundReport, CriticalityError,
    CriticalityVerdict, CriticalityWitness,
};
pub use discharge::{
    run_discharging, ChargeLedger, DischargeError, DischargeMode, Entity, Half, Transfer,
};
pub use enumerate::{
    enumerate, verify_small_critical, Checkpoint, EnumerateError, EnumerateOutcome,
    EnumerationTask, SmallOrderEntry, SmallOrderReport,
};
pub use graph::{CycleLength, CycleReport, Graph, GraphError};
pub use hom::{
    count_homs, find_hom, for_each_hom, plausible_pair, HomAssignment, HomError, Pinning,
};
pub use structure::{
    audit_structure, find_bad_paths, find_cells, string_decomposition, vertex_signature,
    vertex_weight, AuditReport, Cell, CellReport, StringDecomposition, StringPath,
    StructureError,
};
