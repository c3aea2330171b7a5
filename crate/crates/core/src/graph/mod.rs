//! Simple undirected graphs on `0..n` with bitset adjacency rows.

mod canon;
mod classify;

pub use canon::{
    automorphism_group, automorphism_group_colored, canonical_form, canonical_form_colored,
    canonical_labeling, CanonicalForm, Labeling,
};
pub use classify::{
    blow_up, classify, classify_canonical, classify_with_group, edge_orbits, is_bipartite, part_preserving_subgroup, twin_classes,
    twin_quotient, ClassificationFlags,
};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which side of a designated bipartition a vertex lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    U,
    W,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    sides: Option<Vec<Side>>,
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            adj: vec![0; n * words],
            sides: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// From single-word adjacency rows (`n <= 64`); rows must be symmetric
    /// and loopless.
    pub fn from_small_rows(rows: &[u64]) -> Result<Graph> {
        let n = rows.len();
        if n > 64 {
            return Err(Error::BadParameter("more than 64 rows".into()));
        }
        for (u, &r) in rows.iter().enumerate() {
            if r >> u & 1 == 1 {
                return Err(Error::BadParameter("loop".into()));
            }
            if n < 64 && r >> n != 0 {
                return Err(Error::PointOutOfRange { point: 63 - r.leading_zeros() as usize, degree: n });
            }
            if bits(&[r]).any(|v| rows[v] >> u & 1 == 0) {
                return Err(Error::BadParameter("asymmetric adjacency".into()));
            }
        }
        let mut g = Graph::empty(n);
        g.adj.copy_from_slice(rows);
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` (U) and `a..a+b` (W).
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for w in a..a + b {
                g.add_edge(u, w);
            }
        }
        let sides = (0..a + b).map(|v| if v < a { Side::U } else { Side::W }).collect();
        g.sides = Some(sides);
        g
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::BadParameter(alloc::format!("loop at vertex {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u * self.words + v / 64] |= 1 << (v % 64);
        self.adj[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u * self.words + v / 64] &= !(1 << (v % 64));
        self.adj[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Degree multiset as `degree -> count`.
    pub fn valency_multiset(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for v in 0..self.n {
            *m.entry(self.degree(v)).or_insert(0) += 1;
        }
        m
    }

    pub fn is_regular(&self) -> bool {
        self.valency_multiset().len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![0u64; self.words];
        seen[0] |= 1;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for (i, &w) in self.row(v).iter().enumerate() {
                let mut fresh = w & !seen[i];
                seen[i] |= fresh;
                while fresh != 0 {
                    let b = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    stack.push(i * 64 + b);
                    count += 1;
                }
            }
        }
        count == self.n
    }

    /// Distinct vertices have distinct neighbourhoods.
    pub fn is_worthy(&self) -> bool {
        let mut rows: Vec<&[u64]> = (0..self.n).map(|v| self.row(v)).collect();
        rows.sort_unstable();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// The graph with vertex `v` renamed `perm(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        assert_eq!(perm.degree(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm.image(u), perm.image(v));
        }
        if let Some(s) = &self.sides {
            let mut sides = vec![Side::U; self.n];
            for v in 0..self.n {
                sides[perm.image(v)] = s[v];
            }
            g.sides = Some(sides);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.n
            && self
                .edges()
                .iter()
                .all(|&(u, v)| self.has_edge(perm.image(u), perm.image(v)))
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    /// The designated parts `(U, W)`, if any.
    pub fn parts(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let s = self.sides.as_ref()?;
        let u = (0..self.n).filter(|&v| s[v] == Side::U).collect();
        let w = (0..self.n).filter(|&v| s[v] == Side::W).collect();
        Some((u, w))
    }

    /// Attaches a bipartition, checking it is a proper 2-colouring.
    pub fn with_sides(mut self, sides: Vec<Side>) -> Result<Graph> {
        if sides.len() != self.n {
            return Err(Error::InvalidBipartition(alloc::format!(
                "{} labels for {} vertices",
                sides.len(),
                self.n
            )));
        }
        for (u, v) in self.edges() {
            if sides[u] == sides[v] {
                return Err(Error::InvalidBipartition(alloc::format!(
                    "edge {u}-{v} inside a part"
                )));
            }
        }
        self.sides = Some(sides);
        Ok(self)
    }

    pub fn with_parts(self, u: &[usize], w: &[usize]) -> Result<Graph> {
        let n = self.n;
        let mut sides: Vec<Option<Side>> = vec![None; n];
        for (set, side) in [(u, Side::U), (w, Side::W)] {
            for &v in set {
                if v >= n || sides[v].is_some() {
                    return Err(Error::InvalidBipartition(alloc::format!(
                        "vertex {v} repeated or out of range"
                    )));
                }
                sides[v] = Some(side);
            }
        }
        let sides: Option<Vec<Side>> = sides.into_iter().collect();
        match sides {
            Some(s) => self.with_sides(s),
            None => Err(Error::InvalidBipartition("parts do not cover all vertices".into())),
        }
    }

    pub fn without_sides(mut self) -> Graph {
        self.sides = None;
        self
    }

    /// A proper 2-colouring: each component's least vertex goes to U.
    pub fn two_colouring(&self) -> Option<Vec<Side>> {
        let mut side: Vec<Option<Side>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(Side::U);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let other = if side[v] == Some(Side::U) { Side::W } else { Side::U };
                for w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(other);
                            stack.push(w);
                        }
                        Some(x) if x != other => return None,
                        _ => {}
                    }
                }
            }
        }
        side.into_iter().collect()
    }

    /// Induced subgraph on `verts`, relabelled in the given order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::empty(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * 64 + b)
        })
    })
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}
