//! Symmetry classification, twin quotients and blow-ups.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{
    automorphism_group, automorphism_group_colored, canonical_labeling, CanonicalForm, Graph, Side,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Per-graph flags matching the census table columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationFlags {
    pub connected: bool,
    pub regular: bool,
    pub bipartite: bool,
    pub worthy: bool,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    pub arc_transitive: bool,
    pub half_arc_transitive: bool,
    pub semi_symmetric: bool,
    /// `degree -> number of vertices of that degree`.
    pub valency_multiset: BTreeMap<usize, usize>,
    pub aut_order: u128,
}

/// Bipartite in the census sense: at least two vertices and 2-colourable.
/// `K_1` is therefore not bipartite.
pub fn is_bipartite(g: &Graph) -> bool {
    g.order() >= 2 && g.two_colouring().is_some()
}

fn union_find_orbits(count: usize, maps: impl Iterator<Item = Vec<usize>>) -> usize {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut orbits = count;
    for map in maps {
        for (x, &y) in map.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
                orbits -= 1;
            }
        }
    }
    orbits
}

/// Orbits of `group` on the edges of `g`, as lists of `(u, v)` with `u < v`.
pub fn edge_orbits(g: &Graph, gens: &[Permutation]) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let n = g.order();
    let mut id = vec![usize::MAX; n * n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        id[u * n + v] = i;
        id[v * n + u] = i;
    }
    let mut orbit_of = vec![usize::MAX; edges.len()];
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    for start in 0..edges.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let k = out.len();
        orbit_of[start] = k;
        let mut list = vec![start];
        let mut i = 0;
        while i < list.len() {
            let (u, v) = edges[list[i]];
            for p in gens {
                let j = id[p.image(u) * n + p.image(v)];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = k;
                    list.push(j);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        out.push(list.into_iter().map(|e| edges[e]).collect());
    }
    out
}

pub fn classify(g: &Graph) -> ClassificationFlags {
    let aut = automorphism_group(g);
    classify_with_group(g, &aut)
}

/// Canonical form and flags from a single search.
pub fn classify_canonical(g: &Graph) -> (CanonicalForm, ClassificationFlags) {
    let lab = canonical_labeling(g, None);
    let aut = PermGroup::new(g.order(), lab.generators).expect("automorphisms");
    (lab.form, classify_with_group(g, &aut))
}

/// Flags computed from a known automorphism group of `g`.
pub fn classify_with_group(g: &Graph, aut: &PermGroup) -> ClassificationFlags {
    let n = g.order();
    let gens = aut.generators();
    let vertex_orbits = aut.orbits().len();
    let edges = g.edges();
    let edge_orbit_count = if edges.is_empty() {
        0
    } else {
        edge_orbits(g, gens).len()
    };
    // Arcs: 2i is (u, v), 2i+1 is (v, u) for edge i.
    let arc_orbit_count = if edges.is_empty() {
        0
    } else {
        let mut arc_id = vec![usize::MAX; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            arc_id[u * n + v] = 2 * i;
            arc_id[v * n + u] = 2 * i + 1;
        }
        union_find_orbits(
            2 * edges.len(),
            gens.iter().map(|p| {
                (0..2 * edges.len())
                    .map(|a| {
                        let (u, v) = edges[a / 2];
                        let (x, y) = if a % 2 == 0 { (u, v) } else { (v, u) };
                        arc_id[p.image(x) * n + p.image(y)]
                    })
                    .collect()
            }),
        )
    };
    let valency_multiset = g.valency_multiset();
    let regular = valency_multiset.len() <= 1;
    let vt = vertex_orbits <= 1;
    let et = edge_orbit_count <= 1;
    let at = arc_orbit_count <= 1 && vt;
    let hat = vt && et && !at && !edges.is_empty();
    ClassificationFlags {
        connected: g.is_connected(),
        regular,
        bipartite: is_bipartite(g),
        worthy: g.is_worthy(),
        vertex_transitive: vt,
        edge_transitive: et,
        arc_transitive: at,
        half_arc_transitive: hat,
        semi_symmetric: regular && et && !vt,
        valency_multiset,
        aut_order: aut.order(),
    }
}

/// Classes of vertices with identical neighbourhoods, ordered by least member.
pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut by_row: BTreeMap<&[u64], Vec<usize>> = BTreeMap::new();
    for v in 0..g.order() {
        by_row.entry(g.row(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_row.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

/// Collapses each twin class to one vertex. A designated bipartition is
/// carried over (twins of a connected bipartite graph share a part).
pub fn twin_quotient(g: &Graph) -> Graph {
    let classes = twin_classes(g);
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let q = g.induced(&reps);
    match g.sides() {
        Some(s) => {
            let sides = reps.iter().map(|&r| s[r]).collect();
            q.with_sides(sides).unwrap_or_else(|_| g.induced(&reps))
        }
        None => q,
    }
}

/// Replaces every U vertex by `k` copies and every W vertex by `m` copies,
/// each edge by a complete bipartite block. Copies of vertex `v` are
/// numbered consecutively, in vertex order.
pub fn blow_up(g: &Graph, k: usize, m: usize) -> Result<Graph> {
    if k == 0 || m == 0 {
        return Err(Error::ZeroBlowUp);
    }
    let sides = g.sides().ok_or(Error::NotBipartite)?;
    let n = g.order();
    let mut start = vec![0usize; n + 1];
    for v in 0..n {
        start[v + 1] = start[v] + if sides[v] == Side::U { k } else { m };
    }
    let total = start[n];
    let mut out = Graph::empty(total);
    for (u, v) in g.edges() {
        for a in start[u]..start[u + 1] {
            for b in start[v]..start[v + 1] {
                out.add_edge(a, b);
            }
        }
    }
    let mut new_sides = Vec::with_capacity(total);
    for v in 0..n {
        for _ in start[v]..start[v + 1] {
            new_sides.push(sides[v]);
        }
    }
    out.with_sides(new_sides)
}

/// The subgroup of `Aut(X)` fixing each part setwise. Uses the designated
/// bipartition when present, otherwise the 2-colouring.
pub fn part_preserving_subgroup(g: &Graph) -> Result<PermGroup> {
    let sides: Vec<Side> = match g.sides() {
        Some(s) => s.to_vec(),
        None => g.two_colouring().ok_or(Error::NotBipartite)?,
    };
    if g.order() < 2 {
        return Err(Error::NotBipartite);
    }
    let colours: Vec<u32> = sides.iter().map(|&s| (s == Side::W) as u32).collect();
    Ok(automorphism_group_colored(g, &colours))
}
