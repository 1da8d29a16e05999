//! Canonical codes under isomorphism.
//!
//! `canonical_code` maps a graph to a byte string that is equal for two
//! graphs exactly when they are isomorphic, and is stable across runs and
//! platforms. The algorithm is the classic individualization-refinement
//! search: equitable ordered-partition refinement, branching on the first
//! non-singleton cell, a refinement-trace invariant to order branches, and
//! pruning by discovered automorphisms. The canonical labeled form is the
//! minimum (trace, adjacency-bits) pair over the search tree.

use crate::graph::Graph;
use serde::Serialize;

/// Opaque canonical code; equal codes mean isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    /// The raw code bytes.
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Hex rendering (used in reports).
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in &self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl std::fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Canonical code of `g`.
pub fn canonical_code(g: &Graph) -> CanonicalCode {
    canonical_form(g).0
}

/// Canonical code together with a labeling `old -> new` realizing it.
pub fn canonical_form(g: &Graph) -> (CanonicalCode, Vec<u32>) {
    let n = g.n();
    if n == 0 {
        return (CanonicalCode(vec![0, 0, 0, 0]), Vec::new());
    }
    let bits = Bits::from_graph(g);
    let mut search = Search {
        bits: &bits,
        best: None,
        auts: Vec::new(),
    };
    let mut parts: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    let h = refine(&bits, &mut parts);
    let mut inv = vec![h];
    let mut base = Vec::new();
    search.dfs(parts, &mut inv, &mut base);
    let leaf = search.best.expect("search visits at least one leaf");
    (CanonicalCode(leaf.code), leaf.labeling)
}

/// Whether two graphs are isomorphic (by canonical code).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.e() == b.e() && canonical_code(a) == canonical_code(b)
}

/// Flat bit-adjacency, `words` words per row.
struct Bits {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Bits {
    fn from_graph(g: &Graph) -> Bits {
        let n = g.n();
        let words = n.div_ceil(64);
        let mut rows = vec![0u64; n * words];
        for (u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Bits { n, words, rows }
    }

    fn adj(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    fn count_in(&self, v: usize, mask: &[u64]) -> u32 {
        let row = &self.rows[v * self.words..(v + 1) * self.words];
        row.iter().zip(mask).map(|(r, m)| (r & m).count_ones()).sum()
    }
}

const FNV_OFFSET: u64 = 0xcbf29ce484222325;
const FNV_PRIME: u64 = 0x100000001b3;

fn fnv(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(FNV_PRIME)
}

/// Refines `parts` to an equitable ordered partition. Returns a trace hash
/// of the refinement events; the trace depends only on the partition
/// structure, never on vertex ids, so isomorphic configurations hash alike.
fn refine(bits: &Bits, parts: &mut Vec<Vec<u32>>) -> u64 {
    let mut h = FNV_OFFSET;
    let mut mask = vec![0u64; bits.words];
    'scan: loop {
        for si in 0..parts.len() {
            mask.fill(0);
            for &v in &parts[si] {
                mask[v as usize / 64] |= 1 << (v as usize % 64);
            }
            for ci in 0..parts.len() {
                if parts[ci].len() <= 1 {
                    continue;
                }
                let counts: Vec<u32> = parts[ci]
                    .iter()
                    .map(|&v| bits.count_in(v as usize, &mask))
                    .collect();
                if counts.iter().all(|&c| c == counts[0]) {
                    continue;
                }
                // Split by count, ascending; members stay in ascending id
                // order inside each subcell.
                let mut keyed: Vec<(u32, u32)> = counts
                    .iter()
                    .copied()
                    .zip(parts[ci].iter().copied())
                    .collect();
                keyed.sort_unstable();
                let mut subcells: Vec<Vec<u32>> = Vec::new();
                let mut keys: Vec<u32> = Vec::new();
                for (k, v) in keyed {
                    if keys.last() != Some(&k) {
                        keys.push(k);
                        subcells.push(Vec::new());
                    }
                    subcells.last_mut().unwrap().push(v);
                }
                h = fnv(h, si as u64);
                h = fnv(h, ci as u64);
                for (sc, k) in subcells.iter().zip(&keys) {
                    h = fnv(h, sc.len() as u64);
                    h = fnv(h, *k as u64);
                }
                parts.splice(ci..=ci, subcells);
                continue 'scan;
            }
        }
        break;
    }
    h = fnv(h, parts.len() as u64);
    for p in parts.iter() {
        h = fnv(h, p.len() as u64);
    }
    h
}

struct Leaf {
    inv: Vec<u64>,
    code: Vec<u8>,
    labeling: Vec<u32>,
}

struct Search<'a> {
    bits: &'a Bits,
    best: Option<Leaf>,
    auts: Vec<Vec<u32>>,
}

impl<'a> Search<'a> {
    fn dfs(&mut self, parts: Vec<Vec<u32>>, inv: &mut Vec<u64>, base: &mut Vec<u32>) {
        if let Some(best) = &self.best {
            let len = inv.len().min(best.inv.len());
            match inv[..len].cmp(&best.inv[..len]) {
                std::cmp::Ordering::Greater => return,
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    // Equal prefix but the best leaf sits higher: the best
                    // (a strict prefix) sorts first, so this branch loses.
                    if best.inv.len() < inv.len() {
                        return;
                    }
                }
            }
        }
        let target = parts.iter().position(|c| c.len() > 1);
        let Some(ti) = target else {
            self.visit_leaf(&parts, inv);
            return;
        };
        let cell = parts[ti].clone();
        let mut explored: Vec<u32> = Vec::new();
        for &v in &cell {
            if self.in_explored_orbit(base, &explored, v) {
                continue;
            }
            let mut child: Vec<Vec<u32>> = parts.clone();
            let rest: Vec<u32> = cell.iter().copied().filter(|&w| w != v).collect();
            child.splice(ti..=ti, [vec![v], rest]);
            let h = refine(self.bits, &mut child);
            inv.push(h);
            base.push(v);
            self.dfs(child, inv, base);
            base.pop();
            inv.pop();
            explored.push(v);
        }
    }

    fn visit_leaf(&mut self, parts: &[Vec<u32>], inv: &[u64]) {
        let n = self.bits.n;
        let mut labeling = vec![0u32; n];
        let mut orig = vec![0u32; n];
        for (pos, cell) in parts.iter().enumerate() {
            labeling[cell[0] as usize] = pos as u32;
            orig[pos] = cell[0];
        }
        let code = self.pack_code(&orig);
        let replace = match &self.best {
            None => true,
            Some(best) => {
                match inv.cmp(&best.inv[..]).then_with(|| code.cmp(&best.code)) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => {
                        // Two labelings of the same canonical form compose
                        // to an automorphism.
                        let mut alpha = vec![0u32; n];
                        let mut inv_best = vec![0u32; n];
                        for v in 0..n {
                            inv_best[best.labeling[v] as usize] = v as u32;
                        }
                        for v in 0..n {
                            alpha[v] = inv_best[labeling[v] as usize];
                        }
                        if alpha.iter().enumerate().any(|(v, &w)| v as u32 != w) {
                            self.auts.push(alpha);
                        }
                        false
                    }
                }
            }
        };
        if replace {
            self.best = Some(Leaf {
                inv: inv.to_vec(),
                code,
                labeling,
            });
        }
    }

    fn pack_code(&self, orig: &[u32]) -> Vec<u8> {
        let n = self.bits.n;
        let nbits = n * (n - 1) / 2;
        let mut code = Vec::with_capacity(4 + nbits.div_ceil(8));
        code.extend_from_slice(&(n as u32).to_be_bytes());
        let mut acc = 0u8;
        let mut filled = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc <<= 1;
                if self.bits.adj(orig[i] as usize, orig[j] as usize) {
                    acc |= 1;
                }
                filled += 1;
                if filled == 8 {
                    code.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            code.push(acc << (8 - filled));
        }
        code
    }

    /// Whether `v` lies in the orbit of an already-explored sibling under
    /// automorphisms that fix the current base pointwise.
    fn in_explored_orbit(&self, base: &[u32], explored: &[u32], v: u32) -> bool {
        if explored.is_empty() || self.auts.is_empty() {
            return false;
        }
        let applicable: Vec<&Vec<u32>> = self
            .auts
            .iter()
            .filter(|a| base.iter().all(|&b| a[b as usize] == b))
            .collect();
        if applicable.is_empty() {
            return false;
        }
        let n = self.bits.n;
        let mut in_set = vec![false; n];
        let mut queue: Vec<u32> = explored.to_vec();
        for &x in explored {
            in_set[x as usize] = true;
        }
        while let Some(x) = queue.pop() {
            if x == v {
                return true;
            }
            for a in &applicable {
                let y = a[x as usize];
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    queue.push(y);
                }
            }
        }
        in_set[v as usize]
    }
}
