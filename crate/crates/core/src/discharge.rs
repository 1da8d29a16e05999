//! Exact discharging over vertices and cells.
//!
//! Every vertex starts with charge `10 - 4 deg(v)`, so the total charge is
//! `2 p(G)` where `p(G) = 5n - 4e`. Three redistribution stages follow:
//!
//! 1. every degree-2 vertex sends 1 to each end of its string;
//! 2. every vertex lying on a cell sends its entire charge to that cell;
//! 3. along each 1-string `v1 - m - v3` with `v3` outside all cells, `v3`
//!    sends 1/2 toward `v1` when `v1` lies on a cell (the cell receives),
//!    or `deg(v1) >= 5`, or `deg(v1) = 4` and `v1` meets a 0-string, or
//!    `deg(v1) = 4` and `v3` is a (1,1,1)-vertex.
//!
//! Each stage conserves the total, so the final charges still sum to
//! `2 p(G)`. All charges are half-integers and are tracked exactly.

use crate::graph::Graph;
use crate::structure::{find_cells_with, string_decomposition, CellReport};
use serde::{Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i64);

impl Half {
    /// Zero.
    pub const ZERO: Half = Half(0);
    /// One half.
    pub const HALF: Half = Half(1);

    /// The integer `i`.
    pub fn from_int(i: i64) -> Half {
        Half(2 * i)
    }

    /// The value `h / 2`.
    pub fn from_halves(h: i64) -> Half {
        Half(h)
    }

    /// Twice the value (always an integer).
    pub fn halves(self) -> i64 {
        self.0
    }

    /// Whether the value is strictly positive.
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl AddAssign for Half {
    fn add_assign(&mut self, rhs: Half) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Half {
    fn sub_assign(&mut self, rhs: Half) {
        self.0 -= rhs.0;
    }
}

impl Sum for Half {
    fn sum<I: Iterator<Item = Half>>(iter: I) -> Half {
        Half(iter.map(|h| h.0).sum())
    }
}

impl From<i64> for Half {
    fn from(i: i64) -> Half {
        Half::from_int(i)
    }
}

/// A charge holder: a vertex or a cell (indexed into the ledger's cell
/// report).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Entity {
    Vertex(u32),
    Cell(usize),
}

/// One logged charge movement. Zero-amount movements are never logged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transfer {
    /// Stage that produced the movement (1, 2, or 3).
    pub stage: u8,
    pub from: Entity,
    pub to: Entity,
    pub amount: Half,
}

/// How to treat inputs the redistribution rules do not cover cleanly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DischargeMode {
    /// Extend the rules deterministically and record a note.
    Lenient,
    /// Refuse such inputs with [`DischargeError::AmbiguousRule`].
    Strict,
}

/// Errors from [`run_discharging`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DischargeError {
    /// Strict mode met a configuration the rules do not determine.
    #[error("ambiguous rule application: {reason}")]
    AmbiguousRule { reason: String },
}

/// The complete record of a discharging run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub mode: DischargeMode,
    /// `p(G) = 5n - 4e`; every stage's total equals twice this.
    pub potential: i64,
    /// The cells charge flows into (sorted by vertex set).
    pub cells: CellReport,
    /// Per-stage vertex charges; index 0 is the initial assignment.
    pub vertex_charges: [Vec<Half>; 4],
    /// Per-stage cell charges, parallel to `cells.cells`.
    pub cell_charges: [Vec<Half>; 4],
    /// Every nonzero charge movement, in application order.
    pub transfers: Vec<Transfer>,
    /// For each vertex, the cell its charge funds (the first cell in
    /// vertex-set order containing it), if any.
    pub cell_assignment: Vec<Option<usize>>,
    /// Components that are bare cycles (every vertex of degree 2).
    pub bare_cycle_components: Vec<Vec<u32>>,
    /// Notes recording where the input leaves the clean setting the rules
    /// were designed for (empty for clean inputs).
    pub context_notes: Vec<String>,
}

impl ChargeLedger {
    /// Total charge at a stage (vertices plus cells).
    pub fn stage_total(&self, stage: usize) -> Half {
        self.vertex_charges[stage].iter().copied().sum::<Half>()
            + self.cell_charges[stage].iter().copied().sum::<Half>()
    }

    /// Entities whose final charge is strictly positive, vertices first.
    pub fn violators(&self) -> Vec<Entity> {
        let mut out: Vec<Entity> = Vec::new();
        for (v, &c) in self.vertex_charges[3].iter().enumerate() {
            if c.is_positive() {
                out.push(Entity::Vertex(v as u32));
            }
        }
        for (ci, &c) in self.cell_charges[3].iter().enumerate() {
            if c.is_positive() {
                out.push(Entity::Cell(ci));
            }
        }
        out
    }

    /// Final charge of an entity.
    pub fn final_charge(&self, e: Entity) -> Half {
        match e {
            Entity::Vertex(v) => self.vertex_charges[3][v as usize],
            Entity::Cell(ci) => self.cell_charges[3][ci],
        }
    }
}

/// Runs the three-stage discharging and returns the full ledger.
///
/// Strict mode rejects graphs containing a bare cycle component, where the
/// stage-1 rule has no string to send along; lenient mode lets those
/// vertices keep their charge and records a note.
pub fn run_discharging(g: &Graph, mode: DischargeMode) -> Result<ChargeLedger, DischargeError> {
    let n = g.n();
    let dec = string_decomposition(g);
    if mode == DischargeMode::Strict && !dec.cycle_components.is_empty() {
        return Err(DischargeError::AmbiguousRule {
            reason: format!(
                "component {:?} is a bare cycle: its degree-2 vertices lie on no string",
                dec.cycle_components[0]
            ),
        });
    }
    let cells = find_cells_with(g, &dec);

    let mut context_notes = Vec::new();
    if !dec.cycle_components.is_empty() {
        context_notes
            .push("bare cycle components keep their charge at every stage".to_string());
    }
    if !dec.degenerate_vertices.is_empty() {
        context_notes.push(format!(
            "vertices of degree at most 1 present: {:?}",
            dec.degenerate_vertices
        ));
    }
    if !cells.pairwise_vertex_disjoint {
        context_notes.push(
            "cells overlap; each vertex funds the first cell (in vertex-set order) containing it"
                .to_string(),
        );
    }

    // Which cell each vertex funds.
    let mut cell_assignment: Vec<Option<usize>> = vec![None; n];
    for (ci, c) in cells.cells.iter().enumerate() {
        for &v in &c.cycle {
            if cell_assignment[v as usize].is_none() {
                cell_assignment[v as usize] = Some(ci);
            }
        }
    }

    let mut transfers = Vec::new();
    let zero_cells = vec![Half::ZERO; cells.cells.len()];

    // Stage 0: ch(v) = 10 - 4 deg(v).
    let ch0: Vec<Half> = (0..n)
        .map(|v| Half::from_int(10 - 4 * g.degree(v as u32) as i64))
        .collect();

    // Stage 1: internal vertices pay 1 to each end of their string.
    let mut ch1 = ch0.clone();
    for s in &dec.strings {
        let (a, b) = s.endpoints();
        for &u in &s.vertices[1..s.vertices.len() - 1] {
            for end in [a, b] {
                ch1[u as usize] -= Half::from_int(1);
                ch1[end as usize] += Half::from_int(1);
                transfers.push(Transfer {
                    stage: 1,
                    from: Entity::Vertex(u),
                    to: Entity::Vertex(end),
                    amount: Half::from_int(1),
                });
            }
        }
    }

    // Stage 2: cell vertices hand everything to their cell.
    let mut ch2 = ch1.clone();
    let mut cell_ch2 = zero_cells.clone();
    for v in 0..n {
        if let Some(ci) = cell_assignment[v] {
            let amount = ch2[v];
            if amount != Half::ZERO {
                ch2[v] = Half::ZERO;
                cell_ch2[ci] += amount;
                transfers.push(Transfer {
                    stage: 2,
                    from: Entity::Vertex(v as u32),
                    to: Entity::Cell(ci),
                    amount,
                });
            }
        }
    }

    // For pairwise-disjoint cells whose incident strings each leave the
    // cell at exactly one end, the collected charge must equal
    // 10 - 4 deg(K) + wt(K).
    if cells.pairwise_vertex_disjoint {
        for (ci, c) in cells.cells.iter().enumerate() {
            let cycle_edges: Vec<(u32, u32)> = (0..5)
                .map(|i| {
                    let (x, y) = (c.cycle[i], c.cycle[(i + 1) % 5]);
                    (x.min(y), x.max(y))
                })
                .collect();
            let mut both_ended = false;
            for s in &dec.strings {
                if !s.vertices.iter().any(|v| c.contains(*v)) {
                    continue;
                }
                if s.edges().iter().all(|e| cycle_edges.contains(e)) {
                    continue;
                }
                let (a, b) = s.endpoints();
                if c.contains(a) && c.contains(b) {
                    both_ended = true;
                }
            }
            if !both_ended {
                let expected =
                    Half::from_int(10 - 4 * c.degree as i64 + c.weight as i64);
                assert_eq!(
                    cell_ch2[ci], expected,
                    "cell {:?} collected {} instead of {}",
                    c.cycle, cell_ch2[ci], expected
                );
            }
        }
    }

    // Stage 3: payments of 1/2 along 1-strings from outside the cells.
    let mut ch3 = ch2.clone();
    let mut cell_ch3 = cell_ch2.clone();
    let on_cell: Vec<bool> = (0..n).map(|v| cell_assignment[v].is_some()).collect();
    let has_zero_string: Vec<bool> = {
        let mut f = vec![false; n];
        for s in dec.strings.iter().filter(|s| s.k == 0) {
            let (a, b) = s.endpoints();
            f[a as usize] = true;
            f[b as usize] = true;
        }
        f
    };
    let is_111: Vec<bool> = (0..n as u32)
        .map(|v| {
            let ks: Vec<usize> = dec.strings_at(v).iter().map(|s| s.k).collect();
            ks.len() == 3 && ks.iter().all(|&k| k == 1)
        })
        .collect();
    for s in dec.strings.iter().filter(|s| s.k == 1) {
        let (a, b) = s.endpoints();
        if a == b {
            continue;
        }
        for (v1, v3) in [(a, b), (b, a)] {
            if on_cell[v3 as usize] {
                continue;
            }
            let to = if let Some(ci) = cell_assignment[v1 as usize] {
                Some(Entity::Cell(ci))
            } else if g.degree(v1) >= 5
                || (g.degree(v1) == 4 && has_zero_string[v1 as usize])
                || (g.degree(v1) == 4 && is_111[v3 as usize])
            {
                Some(Entity::Vertex(v1))
            } else {
                None
            };
            if let Some(to) = to {
                ch3[v3 as usize] -= Half::HALF;
                match to {
                    Entity::Vertex(v) => ch3[v as usize] += Half::HALF,
                    Entity::Cell(ci) => cell_ch3[ci] += Half::HALF,
                }
                transfers.push(Transfer {
                    stage: 3,
                    from: Entity::Vertex(v3),
                    to,
                    amount: Half::HALF,
                });
            }
        }
    }

    let ledger = ChargeLedger {
        mode,
        potential: g.potential(),
        cells,
        vertex_charges: [ch0, ch1, ch2, ch3],
        cell_charges: [zero_cells.clone(), zero_cells, cell_ch2, cell_ch3],
        transfers,
        cell_assignment,
        bare_cycle_components: dec.cycle_components,
        context_notes,
    };
    for stage in 0..4 {
        assert_eq!(
            ledger.stage_total(stage),
            Half::from_int(2 * ledger.potential),
            "stage {stage} total diverged from 2 p(G)"
        );
    }
    Ok(ledger)
}
