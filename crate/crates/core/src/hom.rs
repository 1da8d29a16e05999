//! Homomorphisms into odd cycles.
//!
//! The target graph is always the odd cycle `C_{2t+1}` with colors
//! `0..2t+1`; an edge of the source must map to an edge of the cycle, i.e.
//! adjacent vertices receive colors differing by exactly 1 mod `2t+1`.
//! A homomorphism to `C_{2t+1}` exists exactly when the circular chromatic
//! number is at most `2 + 1/t`; `t = 2` is the pentagon case the rest of the
//! toolkit revolves around.
//!
//! The solver is a deterministic backtracking search: vertices are visited
//! in a fixed order built greedily to maximize back-degree (ties broken by
//! degree, then lowest id), colors are tried in ascending order, and after
//! every assignment domains are pruned to arc-consistency. With no pins,
//! rotation/reflection symmetry of the cycle is broken per component by
//! fixing the component's first vertex to color 0 and its first neighbor to
//! color 1. Counting never breaks symmetry.

use crate::graph::Graph;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

/// Largest supported `t` (domains are stored as `u64` bitmasks).
pub const MAX_T: u32 = 31;

/// Errors for homomorphism queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    /// A pin's vertex or color is out of range.
    #[error("invalid pin: vertex {v} to color {color}")]
    InvalidPin { v: u32, color: u8 },
    /// A vertex argument is out of range.
    #[error("vertex {v} out of range (n = {n})")]
    InvalidVertex { v: u32, n: usize },
    /// `t` outside `1..=MAX_T`.
    #[error("target parameter t = {t} unsupported (must be 1..={MAX_T})")]
    InvalidTarget { t: u32 },
}

/// A total assignment `V(G) -> V(C_{2t+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomAssignment {
    t: u32,
    colors: Vec<u8>,
}

impl HomAssignment {
    /// The `t` of the target cycle `C_{2t+1}`.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// Number of target colors, `2t + 1`.
    pub fn target_size(&self) -> u32 {
        2 * self.t + 1
    }

    /// Color of vertex `v`.
    pub fn color(&self, v: u32) -> u8 {
        self.colors[v as usize]
    }

    /// All colors, indexed by vertex.
    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Checks in linear time that this is a homomorphism of `g` into
    /// `C_{2t+1}`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.colors.len() != g.n() {
            return false;
        }
        let q = self.target_size();
        g.edges().all(|(u, v)| {
            let a = self.colors[u as usize] as u32;
            let b = self.colors[v as usize] as u32;
            a < q && b < q && {
                let d = (a + q - b) % q;
                d == 1 || d == q - 1
            }
        })
    }
}

/// A partial map pinning some vertices to colors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pinning {
    pins: BTreeMap<u32, u8>,
}

impl Pinning {
    /// The empty pinning.
    pub fn empty() -> Pinning {
        Pinning::default()
    }

    /// Adds (or overwrites) a pin.
    pub fn pin(mut self, v: u32, color: u8) -> Pinning {
        self.pins.insert(v, color);
        self
    }

    /// Whether no vertex is pinned.
    pub fn is_empty(&self) -> bool {
        self.pins.is_empty()
    }

    /// Iterates pins in ascending vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.pins.iter().map(|(&v, &c)| (v, c))
    }
}

impl FromIterator<(u32, u8)> for Pinning {
    fn from_iter<I: IntoIterator<Item = (u32, u8)>>(iter: I) -> Pinning {
        Pinning {
            pins: iter.into_iter().collect(),
        }
    }
}

/// Finds a homomorphism of `g` into `C_{2t+1}` extending `pins`, or `None`.
///
/// Deterministic: the same input always yields the same witness.
pub fn find_hom(g: &Graph, t: u32, pins: &Pinning) -> Result<Option<HomAssignment>, HomError> {
    let mut searcher = Searcher::new(g, t, pins, pins.is_empty())?;
    let mut found = None;
    searcher.run(&mut |colors| {
        found = Some(colors.to_vec());
        true
    });
    Ok(found.map(|colors| HomAssignment { t, colors }))
}

/// Counts all homomorphisms of `g` into `C_{2t+1}` extending `pins`.
pub fn count_homs(g: &Graph, t: u32, pins: &Pinning) -> Result<u64, HomError> {
    let mut count = 0u64;
    for_each_hom(g, t, pins, |_| {
        count += 1;
    })?;
    Ok(count)
}

/// Calls `f` once per homomorphism of `g` into `C_{2t+1}` extending `pins`,
/// in a deterministic order. No symmetry is broken: every homomorphism is
/// visited.
pub fn for_each_hom(
    g: &Graph,
    t: u32,
    pins: &Pinning,
    mut f: impl FnMut(&HomAssignment),
) -> Result<(), HomError> {
    let mut searcher = Searcher::new(g, t, pins, false)?;
    searcher.run(&mut |colors| {
        f(&HomAssignment {
            t,
            colors: colors.to_vec(),
        });
        false
    });
    Ok(())
}

/// The plausibility predicate for pinning two vertices on the pentagon
/// target (`t = 2`): a pinned pair `(v1, c1), (v2, c2)` is plausible when
///
/// * `d(v1, v2) = 0` and `c1 = c2`, or
/// * `d(v1, v2) = 1` and `c1 c2` is an edge of `C5`, or
/// * `d(v1, v2) = 2` and `c1 c2` is not an edge of `C5`, or
/// * `d(v1, v2) = 3` and `c1 != c2`, or
/// * `d(v1, v2) >= 4` (including unreachable).
///
/// Plausibility is necessary for a pinned homomorphism to exist; on planar
/// graphs of girth at least 10 it is also sufficient.
pub fn plausible_pair(
    g: &Graph,
    v1: u32,
    v2: u32,
    c1: u8,
    c2: u8,
) -> Result<bool, HomError> {
    let n = g.n();
    if v1 as usize >= n {
        return Err(HomError::InvalidVertex { v: v1, n });
    }
    if v2 as usize >= n {
        return Err(HomError::InvalidVertex { v: v2, n });
    }
    if c1 >= 5 {
        return Err(HomError::InvalidPin { v: v1, color: c1 });
    }
    if c2 >= 5 {
        return Err(HomError::InvalidPin { v: v2, color: c2 });
    }
    let adjacent = {
        let d = (c1 as u32 + 5 - c2 as u32) % 5;
        d == 1 || d == 4
    };
    let dist = g.bfs_distances(v1)[v2 as usize];
    Ok(match dist {
        Some(0) => c1 == c2,
        Some(1) => adjacent,
        Some(2) => !adjacent,
        Some(3) => c1 != c2,
        _ => true,
    })
}

/// Backtracking searcher over `u64` color-domain masks.
struct Searcher<'g> {
    g: &'g Graph,
    q: u32,
    full: u64,
    /// Static visit order.
    order: Vec<u32>,
    /// Initial domains (pins and symmetry breaking applied).
    init: Vec<u64>,
    feasible: bool,
}

impl<'g> Searcher<'g> {
    fn new(
        g: &'g Graph,
        t: u32,
        pins: &Pinning,
        break_symmetry: bool,
    ) -> Result<Searcher<'g>, HomError> {
        if t < 1 || t > MAX_T {
            return Err(HomError::InvalidTarget { t });
        }
        let q = 2 * t + 1;
        let full = (1u64 << q) - 1;
        let n = g.n();
        let mut init = vec![full; n];
        for (v, c) in pins.iter() {
            if v as usize >= n || c as u32 >= q {
                return Err(HomError::InvalidPin { v, color: c });
            }
            init[v as usize] &= 1u64 << c;
        }

        // Greedy static order: maximize (back-degree, degree), lowest id on
        // ties. Back-degree 0 starts a new component; the first vertex
        // placed after a start is adjacent to it.
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let mut back = vec![0usize; n];
        let mut expect_second = false;
        for _ in 0..n {
            let mut pick = None;
            for v in 0..n {
                if placed[v] {
                    continue;
                }
                let key = (back[v], g.degree(v as u32), std::cmp::Reverse(v));
                if pick.map_or(true, |(best, _)| key > best) {
                    pick = Some((key, v));
                }
            }
            let (key, v) = pick.unwrap();
            if break_symmetry {
                if key.0 == 0 {
                    // Component start: rotation symmetry.
                    init[v] &= 1;
                    expect_second = true;
                } else if expect_second {
                    // Adjacent to the start: reflection symmetry.
                    init[v] &= 2;
                    expect_second = false;
                }
            }
            placed[v] = true;
            order.push(v as u32);
            for &w in g.neighbors(v as u32) {
                back[w as usize] += 1;
            }
        }

        let mut s = Searcher {
            g,
            q,
            full,
            order,
            init: Vec::new(),
            feasible: true,
        };
        // Initial arc-consistency pass from every vertex.
        let mut work: Vec<u32> = (0..n as u32).collect();
        if !s.propagate(&mut init, &mut work) {
            s.feasible = false;
        }
        s.init = init;
        Ok(s)
    }

    /// Mask of colors adjacent on the cycle to any color in `m`.
    fn nb(&self, m: u64) -> u64 {
        let q = self.q;
        (((m << 1) | (m >> (q - 1))) | ((m >> 1) | (m << (q - 1)))) & self.full
    }

    /// AC fixpoint; `work` seeds the vertices whose domains changed.
    /// Returns false on a domain wipeout.
    fn propagate(&self, dom: &mut [u64], work: &mut Vec<u32>) -> bool {
        while let Some(u) = work.pop() {
            let support = self.nb(dom[u as usize]);
            for &w in self.g.neighbors(u) {
                let new = dom[w as usize] & support;
                if new != dom[w as usize] {
                    if new == 0 {
                        return false;
                    }
                    dom[w as usize] = new;
                    work.push(w);
                }
            }
        }
        true
    }

    /// Runs the search; `emit` receives each complete assignment (colors by
    /// vertex) and returns true to stop early.
    fn run(&mut self, emit: &mut dyn FnMut(&[u8]) -> bool) {
        if !self.feasible {
            return;
        }
        let n = self.g.n();
        if n == 0 {
            emit(&[]);
            return;
        }
        let mut stack: Vec<Vec<u64>> = vec![vec![0; n]; n + 1];
        stack[0].copy_from_slice(&self.init);
        let mut colors = vec![0u8; n];
        let mut work = Vec::with_capacity(n);
        self.dfs(0, &mut stack, &mut colors, &mut work, emit);
    }

    fn dfs(
        &self,
        depth: usize,
        stack: &mut Vec<Vec<u64>>,
        colors: &mut Vec<u8>,
        work: &mut Vec<u32>,
        emit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        let n = self.g.n();
        if depth == n {
            for v in 0..n {
                colors[v] = stack[n][v].trailing_zeros() as u8;
            }
            return emit(colors);
        }
        let v = self.order[depth] as usize;
        let mut candidates = stack[depth][v];
        while candidates != 0 {
            let c = candidates.trailing_zeros();
            candidates &= candidates - 1;
            let (lo, hi) = stack.split_at_mut(depth + 1);
            hi[0].copy_from_slice(&lo[depth]);
            hi[0][v] = 1u64 << c;
            work.clear();
            work.push(v as u32);
            if self.propagate(&mut hi[0], work) {
                if self.dfs(depth + 1, stack, colors, work, emit) {
                    return true;
                }
            }
        }
        false
    }
}
