//! Exhaustive enumeration of small graphs, independent of the group-based
//! census, used to cross-check it.
//!
//! Two generators are provided. Canonical augmentation grows connected
//! graphs one vertex at a time, accepting a child only when the new vertex
//! lies in the orbit of a canonically chosen non-cut vertex. Orderly
//! generation grows all graphs, keeping those whose column-order adjacency
//! string is lexicographically maximal over all relabellings.

use alloc::vec;
use alloc::vec::Vec;

use crate::census::{merge, CensusRecord, Provenance, TableRow};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, canonical_labeling, Graph};

/// Largest order enumerated without the long-run override.
pub const DEFAULT_ORACLE_CAP: usize = 9;
/// Largest order enumerated at all.
pub const LONG_ORACLE_CAP: usize = 10;

const MAX: usize = 16;

/// Adjacency rows as bitmasks, for graphs on at most 16 vertices.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Rows {
    n: usize,
    adj: [u16; MAX],
}

impl Rows {
    fn from_graph(g: &Graph) -> Rows {
        let mut adj = [0u16; MAX];
        for (v, a) in adj.iter_mut().enumerate().take(g.order()) {
            *a = g.row(v)[0] as u16;
        }
        Rows { n: g.order(), adj }
    }

    fn to_graph(self) -> Graph {
        let rows: Vec<u64> = self.adj[..self.n].iter().map(|&r| r as u64).collect();
        Graph::from_small_rows(&rows).expect("symmetric rows")
    }

    fn with_vertex(&self, nbrs: u16) -> Rows {
        let mut c = *self;
        let v = self.n;
        c.adj[v] = nbrs;
        let mut m = nbrs;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            c.adj[u] |= 1 << v;
        }
        c.n += 1;
        c
    }

    fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    fn all(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    /// Whether the graph minus `v` is connected.
    fn connected_without(&self, v: usize) -> bool {
        let rest = self.all() & !(1 << v);
        if rest == 0 {
            return true;
        }
        let start = rest & rest.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[u] & rest & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == rest
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = 1u16;
        let mut frontier = 1u16;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[u] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen == self.all()
    }

    /// Degree followed by the neighbour degrees in decreasing order.
    fn key(&self, v: usize) -> u64 {
        let mut ds: Vec<u32> = Vec::with_capacity(MAX);
        let mut m = self.adj[v];
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            ds.push(self.degree(u));
        }
        ds.sort_unstable_by(|a, b| b.cmp(a));
        let mut key = self.degree(v) as u64;
        for d in ds {
            key = key << 4 | d as u64;
        }
        key << (4 * (MAX - 1 - self.degree(v) as usize).min(15))
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(parent, a), find(parent, b));
    if a != b {
        parent[a.max(b)] = a.min(b);
    }
}

/// Children of a connected graph under canonical augmentation: one
/// representative per orbit of neighbour sets, kept when the new vertex is
/// the canonical deletion.
pub fn augment_connected(parent: &Graph) -> Vec<Graph> {
    let p = Rows::from_graph(parent);
    assert!(p.n < MAX, "augmentation supports fewer than {MAX} vertices");
    let aut = automorphism_group(parent);
    let gens: Vec<Vec<usize>> = aut
        .generators()
        .iter()
        .map(|g| g.images().iter().map(|&x| x as usize).collect())
        .collect();
    let masks = 1usize << p.n;
    let mut uf: Vec<usize> = (0..masks).collect();
    for g in &gens {
        for s in 1..masks {
            let mut t = 0usize;
            let mut m = s;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                t |= 1 << g[i];
            }
            union(&mut uf, s, t);
        }
    }
    let mut out = Vec::new();
    for s in 1..masks {
        if find(&mut uf, s) != s {
            continue;
        }
        let child = p.with_vertex(s as u16);
        if accepts(&child) {
            out.push(child.to_graph());
        }
    }
    out
}

/// Whether the last vertex is a canonical deletion of `g`.
fn accepts(g: &Rows) -> bool {
    let last = g.n - 1;
    if g.n == 1 {
        return true;
    }
    if !g.connected_without(last) {
        return false;
    }
    let last_key = g.key(last);
    let mut ties: Vec<usize> = Vec::new();
    for v in 0..last {
        let k = g.key(v);
        if k < last_key {
            continue;
        }
        if !g.connected_without(v) {
            continue;
        }
        if k > last_key {
            return false;
        }
        ties.push(v);
    }
    if ties.is_empty() {
        return true;
    }
    ties.push(last);
    let graph = g.to_graph();
    let lab = canonical_labeling(&graph, None);
    let mut pos = vec![0usize; g.n];
    for (i, &v) in lab.lab.iter().enumerate() {
        pos[v] = i;
    }
    let chosen = *ties.iter().max_by_key(|&&v| pos[v]).unwrap();
    if chosen == last {
        return true;
    }
    let mut uf: Vec<usize> = (0..g.n).collect();
    for a in &lab.generators {
        for v in 0..g.n {
            union(&mut uf, v, a.image(v));
        }
    }
    find(&mut uf, chosen) == find(&mut uf, last)
}

/// Fails with `CapExceeded` when `n` is above the applicable cap.
pub fn check_cap(n: usize, long: bool) -> Result<()> {
    let cap = if long { LONG_ORACLE_CAP } else { DEFAULT_ORACLE_CAP };
    if n == 0 {
        return Err(Error::BadParameter("order must be positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    Ok(())
}

/// Calls `f` on one representative of every connected graph of order `n`.
pub fn for_each_connected_graph(n: usize, f: &mut dyn FnMut(&Graph)) {
    fn walk(g: &Graph, n: usize, f: &mut dyn FnMut(&Graph)) {
        if g.order() == n {
            f(g);
            return;
        }
        for c in augment_connected(g) {
            walk(&c, n, f);
        }
    }
    if n == 0 {
        return;
    }
    walk(&Graph::empty(1), n, f);
}

/// One representative of every connected graph of order `n`, in generation order.
pub fn exhaustive_connected_graphs(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_connected_graph(n, &mut |g| out.push(g.clone()));
    out
}

/// Column-order upper-triangle bits `(0,1), (0,2), (1,2), (0,3), ...` of
/// the graph relabelled so that position `i` holds vertex `order[i]`; the
/// search looks for a relabelling whose string beats the identity's.
fn is_max_string(g: &Rows) -> bool {
    fn search(g: &Rows, placed: &mut Vec<usize>, used: u16) -> bool {
        let j = placed.len();
        if j == g.n {
            return true;
        }
        for v in 0..g.n {
            if used >> v & 1 == 1 {
                continue;
            }
            // Compare column j of the relabelled graph with the original.
            let mut cmp = core::cmp::Ordering::Equal;
            for (i, &pi) in placed.iter().enumerate() {
                let a = g.adj[pi] >> v & 1;
                let b = g.adj[i] >> j & 1;
                if a != b {
                    cmp = a.cmp(&b);
                    break;
                }
            }
            match cmp {
                core::cmp::Ordering::Greater => return false,
                core::cmp::Ordering::Less => continue,
                core::cmp::Ordering::Equal => {
                    placed.push(v);
                    let ok = search(g, placed, used | 1 << v);
                    placed.pop();
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
    search(g, &mut Vec::with_capacity(g.n), 0)
}

/// All graphs of order `n` (connected or not) by orderly generation, one
/// per isomorphism class.
pub fn orderly_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    assert!(n <= MAX);
    let mut level = vec![Rows {
        n: 1,
        adj: [0; MAX],
    }];
    for size in 1..n {
        let mut next = Vec::new();
        for p in &level {
            for s in 0..1u32 << size {
                let c = p.with_vertex(s as u16);
                if is_max_string(&c) {
                    next.push(c);
                }
            }
        }
        level = next;
    }
    level.into_iter().map(Rows::to_graph).collect()
}

pub fn orderly_connected_graphs(n: usize) -> Vec<Graph> {
    orderly_graphs(n)
        .into_iter()
        .filter(|g| Rows::from_graph(g).is_connected())
        .collect()
}

/// Necessary conditions for a connected graph to be edge-transitive: at
/// most two distinct degrees, no edge inside a degree class when there are
/// two, and the same number of triangles on every edge.
pub fn may_be_edge_transitive(g: &Graph) -> bool {
    if g.order() > 64 {
        return true;
    }
    let n = g.order();
    let row = |v: usize| g.row(v)[0];
    let mut degrees: Vec<u32> = (0..n).map(|v| row(v).count_ones()).collect();
    let first = degrees.first().copied().unwrap_or(0);
    let two = degrees.iter().any(|&d| d != first);
    let mut tri: Option<u32> = None;
    for (u, v) in g.edges() {
        if two && degrees[u] == degrees[v] {
            return false;
        }
        let t = (row(u) & row(v)).count_ones();
        if *tri.get_or_insert(t) != t {
            return false;
        }
    }
    degrees.sort_unstable();
    degrees.dedup();
    degrees.len() <= 2
}

/// Edge-transitive graphs among `graphs`, classified, with the flags
/// checked against `may_be_edge_transitive` first.
pub fn edge_transitive_records(graphs: impl IntoIterator<Item = Graph>) -> Vec<CensusRecord> {
    graphs
        .into_iter()
        .filter(may_be_edge_transitive)
        .map(|g| CensusRecord::new(g, Provenance::Exhaustive))
        .filter(|r| r.flags.edge_transitive)
        .collect()
}

/// Result of an exhaustive census of one order.
#[derive(Clone, Debug)]
pub struct OracleCensus {
    pub n: usize,
    pub connected_graphs: usize,
    pub row: TableRow,
    pub records: Vec<CensusRecord>,
}

impl OracleCensus {
    pub fn from_records(n: usize, connected_graphs: usize, records: Vec<CensusRecord>) -> OracleCensus {
        let records = merge(records);
        OracleCensus {
            n,
            connected_graphs,
            row: TableRow::from_flags(records.iter().map(|r| &r.flags)),
            records,
        }
    }
}

/// Every connected edge-transitive graph of order `n`, found by
/// classifying all connected graphs of that order.
pub fn oracle_census(n: usize, long: bool) -> Result<OracleCensus> {
    check_cap(n, long)?;
    let mut count = 0usize;
    let mut records = Vec::new();
    for_each_connected_graph(n, &mut |g| {
        count += 1;
        if may_be_edge_transitive(g) {
            let r = CensusRecord::new(g.clone(), Provenance::Exhaustive);
            if r.flags.edge_transitive {
                records.push(r);
            }
        }
    });
    Ok(OracleCensus::from_records(n, count, records))
}
