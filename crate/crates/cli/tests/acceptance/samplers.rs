//! Deterministic graph samplers for the acceptance tests. Every function
//! seeds its own RNG, so each run sees the same instances.

use circ52_core::{family_x, make_named, ore_6critical, ExtensionFamily, Graph, NamedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xACCE_5500 + stream)
}

/// Connected graphs with 1..=16 vertices: a random attachment tree plus
/// random extra edges.
pub fn random_connected(count: usize) -> Vec<Graph> {
    let mut rng = rng(1);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=16usize);
            let mut edges = Vec::new();
            for v in 1..n as u32 {
                edges.push((rng.gen_range(0..v), v));
            }
            let mut g = Graph::from_edges(n, &edges).unwrap();
            for _ in 0..rng.gen_range(0..=n) {
                let u = rng.gen_range(0..n as u32);
                let v = rng.gen_range(0..n as u32);
                if u != v && !g.has_edge(u, v) {
                    g = g.with_edge_added(u, v).unwrap();
                }
            }
            g
        })
        .collect()
}

/// Graphs on 0..=max_n vertices with a per-graph random edge density.
pub fn random_graphs(count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = rng(2);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=max_n);
            let p: f64 = rng.gen_range(0.05..0.95);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// Builder that grows a graph by whole paths.
struct PathBuilder {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl PathBuilder {
    fn fresh_vertex(&mut self) -> u32 {
        self.n += 1;
        self.n - 1
    }

    /// Connects `a` to `b` through `internal` fresh degree-2 vertices.
    fn add_path(&mut self, a: u32, b: u32, internal: usize) {
        let mut prev = a;
        for _ in 0..internal {
            let next = self.fresh_vertex();
            self.edges.push((prev, next));
            prev = next;
        }
        self.edges.push((prev, b));
    }

    fn build(self) -> Graph {
        Graph::from_edges(self.n as usize, &self.edges).unwrap()
    }
}

/// Graphs whose 5-cycles are exactly a set of pairwise vertex-disjoint
/// pentagons, joined by strings with 2 or 3 internal vertices. Strings
/// run between distinct pentagons or from a pentagon to a 3-way hub, so
/// no string has both endpoints on one pentagon, every pentagon meets at
/// least one string, and every new cycle has length at least 6.
pub fn disjoint_cell_graphs(count: usize) -> Vec<Graph> {
    let mut rng = rng(3);
    (0..count)
        .map(|_| {
            let cells = rng.gen_range(2..=3usize);
            let mut b = PathBuilder {
                n: 5 * cells as u32,
                edges: (0..cells as u32)
                    .flat_map(|c| (0..5).map(move |i| (5 * c + i, 5 * c + (i + 1) % 5)))
                    .collect(),
            };
            let cell_vertex =
                |rng: &mut ChaCha8Rng, cell: usize| 5 * cell as u32 + rng.gen_range(0..5u32);
            for cell in 1..cells {
                let a = cell_vertex(&mut rng, cell - 1);
                let z = cell_vertex(&mut rng, cell);
                b.add_path(a, z, rng.gen_range(2..=3));
            }
            for _ in 0..rng.gen_range(0..=2usize) {
                let from = rng.gen_range(0..cells);
                let to = (from + rng.gen_range(1..cells)) % cells;
                let a = cell_vertex(&mut rng, from);
                let z = cell_vertex(&mut rng, to);
                b.add_path(a, z, rng.gen_range(2..=3));
            }
            if cells == 3 && rng.gen_bool(0.5) {
                let hub = b.fresh_vertex();
                for cell in 0..3 {
                    let a = cell_vertex(&mut rng, cell);
                    b.add_path(a, hub, rng.gen_range(2..=3));
                }
            }
            b.build()
        })
        .collect()
}

/// Planar graphs of girth at least 15: K4, the triangular prism, or the
/// cube, with every edge replaced by a path of 5 to 7 edges.
pub fn planar_high_girth(count: usize) -> Vec<Graph> {
    let k4: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let prism: Vec<(u32, u32)> = vec![
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    let cube: Vec<(u32, u32)> = (0u32..8)
        .flat_map(|u| (0..3).map(move |bit| (u, u ^ (1 << bit))))
        .filter(|&(u, v)| u < v)
        .collect();
    let bases = [(4u32, k4), (6, prism), (8, cube)];
    let mut rng = rng(4);
    (0..count)
        .map(|i| {
            let (n, edges) = &bases[i % bases.len()];
            let mut b = PathBuilder {
                n: *n,
                edges: Vec::new(),
            };
            for &(u, v) in edges {
                b.add_path(u, v, rng.gen_range(4..=6));
            }
            b.build()
        })
        .collect()
}

/// The named constructions plus the first three composition layers.
pub fn named_zoo() -> Vec<Graph> {
    let named = [
        NamedGraph::Cycle(3),
        NamedGraph::Cycle(4),
        NamedGraph::Cycle(5),
        NamedGraph::Cycle(7),
        NamedGraph::Cycle(9),
        NamedGraph::Path(1),
        NamedGraph::Path(2),
        NamedGraph::Path(5),
        NamedGraph::Theta(1, 2, 2),
        NamedGraph::Theta(2, 2, 3),
        NamedGraph::Theta(2, 3, 3),
        NamedGraph::Theta(3, 3, 3),
        NamedGraph::E1,
        NamedGraph::E2,
        NamedGraph::Petersen,
        NamedGraph::K6,
    ];
    let mut zoo: Vec<Graph> = named
        .into_iter()
        .map(|w| make_named(w).expect("zoo entries are valid"))
        .collect();
    zoo.extend((1..=3).map(|m| ore_6critical(m).graph));
    zoo
}

/// The named zoo, every extension family over the pentagon and over a
/// theta graph (whose degree-3 hubs make the restricted family nonempty),
/// and two subdivision depths of the first composite.
pub fn construction_zoo() -> Vec<Graph> {
    let mut zoo = named_zoo();
    let pentagon = make_named(NamedGraph::Cycle(5)).unwrap();
    let theta = make_named(NamedGraph::Theta(2, 3, 3)).unwrap();
    for family in [
        ExtensionFamily::P2,
        ExtensionFamily::P3,
        ExtensionFamily::Q,
        ExtensionFamily::Qprime,
        ExtensionFamily::E1Fam,
        ExtensionFamily::E2Fam,
    ] {
        zoo.extend(family_x(&pentagon, family));
        zoo.extend(family_x(&theta, family));
    }
    let k6 = ore_6critical(1).graph;
    zoo.push(k6.subdivide_all_edges(1));
    zoo.push(k6.subdivide_all_edges(2));
    zoo
}
