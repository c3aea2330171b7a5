//! Edge-transitive graph census: worthy bipartite graphs from pairs of
//! faithful transitive actions, their blow-ups, and vertex-transitive graphs
//! from orbital graphs.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{blow_up, classify_canonical, CanonicalForm, ClassificationFlags, Graph, Side};
use crate::group::{coset_action, corefree_subgroups_of_index, generated_subgroup, PermGroup};
use crate::perm::Permutation;
use crate::transcat::{Catalogue, CatalogueEntry};

/// How a record was produced.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    /// Catalogue group `degree.index` acting on `cosets` cosets of its
    /// `subgroup`-th core-free subgroup class; `orbits` lists the chosen
    /// `w` (one orbit, or two of equal length).
    Worthy {
        degree: usize,
        index: usize,
        cosets: usize,
        subgroup: usize,
        orbits: Vec<usize>,
    },
    /// `(s, t)`-blow-up of a worthy graph with parts `(k, m)`.
    BlowUp {
        parts: (usize, usize),
        factors: (usize, usize),
        source: Box<Provenance>,
    },
    /// Union of basic orbital graphs of catalogue group `degree.index`,
    /// named by the least point of each suborbit used.
    Orbital {
        degree: usize,
        index: usize,
        suborbits: Vec<usize>,
    },
    /// Found by exhaustive enumeration of all connected graphs.
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct CensusRecord {
    pub graph: Graph,
    pub canonical: CanonicalForm,
    pub flags: ClassificationFlags,
    pub provenance: Provenance,
}

impl CensusRecord {
    pub fn new(graph: Graph, provenance: Provenance) -> CensusRecord {
        let (canonical, flags) = classify_canonical(&graph);
        CensusRecord {
            graph,
            canonical,
            flags,
            provenance,
        }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

/// Sorts by canonical form and keeps, for each isomorphism class, the
/// record with the least provenance. Independent of input order.
pub fn merge(mut records: Vec<CensusRecord>) -> Vec<CensusRecord> {
    records.sort_by(|a, b| {
        (a.order(), &a.canonical)
            .cmp(&(b.order(), &b.canonical))
            .then_with(|| a.provenance.cmp(&b.provenance))
    });
    records.dedup_by(|later, first| later.canonical == first.canonical);
    records
}

/// The `G`-orbit of the unordered pair `{u, w}`, as sorted `(a, b)` with `a < b`.
fn pair_orbit(n: usize, gens: &[Permutation], u: usize, w: usize) -> Vec<(usize, usize)> {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut seen = vec![false; n * n];
    let start = key(u, w);
    seen[start.0 * n + start.1] = true;
    let mut list = vec![start];
    let mut i = 0;
    while i < list.len() {
        let (a, b) = list[i];
        for g in gens {
            let e = key(g.image(a), g.image(b));
            if !seen[e.0 * n + e.1] {
                seen[e.0 * n + e.1] = true;
                list.push(e);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

fn bipartite_graph(k: usize, m: usize, edges: &[(usize, usize)]) -> Graph {
    let mut sides = vec![Side::U; k];
    sides.resize(k + m, Side::W);
    Graph::from_edges(k + m, edges)
        .and_then(|g| g.with_sides(sides))
        .expect("edges join the two parts")
}

/// Worthy connected edge-transitive bipartite graphs with parts `(k, m)`
/// whose part-preserving group contains catalogue group `entry` acting on
/// the `k` side. Duplicates across entries are not removed.
pub fn worthy_for_entry(entry: &CatalogueEntry, m: usize) -> Result<Vec<CensusRecord>> {
    let k = entry.degree;
    let group = entry.group();
    let bound = group.order().max(1);
    let mut out: Vec<CensusRecord> = Vec::new();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    for (si, h) in corefree_subgroups_of_index(&group, m, bound)?.into_iter().enumerate() {
        let act = coset_action(&group, &h)?;
        let combined = act.combined_group();
        let gens = combined.generators().to_vec();
        let n = k + m;
        let gu = combined.stabilizer(0)?;
        let orbits: Vec<Vec<usize>> = gu.orbits().into_iter().filter(|o| o[0] >= k).collect();
        let provenance = |ws: Vec<usize>| Provenance::Worthy {
            degree: k,
            index: entry.index,
            cosets: m,
            subgroup: si + 1,
            orbits: ws,
        };
        let mut push = |g: Graph, p: Provenance, need_et: bool| {
            if !g.is_connected() || !g.is_worthy() {
                return;
            }
            let rec = CensusRecord::new(g, p);
            if need_et && !rec.flags.edge_transitive {
                return;
            }
            if seen.insert(rec.canonical.clone()) {
                out.push(rec);
            }
        };
        let edge_sets: Vec<Vec<(usize, usize)>> =
            orbits.iter().map(|o| pair_orbit(n, &gens, 0, o[0])).collect();
        // One G_u-orbit of neighbours: G is edge-transitive.
        for (o, edges) in orbits.iter().zip(&edge_sets) {
            let w = o[0];
            let gw = combined.stabilizer(w)?;
            let mut both = gu.generators().to_vec();
            both.extend_from_slice(gw.generators());
            if generated_subgroup(n, &both)?.order() != combined.order() {
                continue;
            }
            push(bipartite_graph(k, m, edges), provenance(vec![w]), false);
        }
        // Two G_u-orbits of equal length: edge-transitivity needs a part swap.
        for i in 0..orbits.len() {
            for j in i + 1..orbits.len() {
                if orbits[i].len() != orbits[j].len() {
                    continue;
                }
                let mut edges = edge_sets[i].clone();
                edges.extend_from_slice(&edge_sets[j]);
                push(
                    bipartite_graph(k, m, &edges),
                    provenance(vec![orbits[i][0], orbits[j][0]]),
                    true,
                );
            }
        }
    }
    Ok(out)
}

/// All connected worthy edge-transitive bipartite graphs with parts of
/// sizes `k` and `m`, one per isomorphism class. The smaller part is taken
/// as the `U` side.
pub fn enumerate_bipartite_worthy(k: usize, m: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    let (k, m) = if k <= m { (k, m) } else { (m, k) };
    if k == 0 {
        return Err(Error::BadParameter("part sizes must be positive".into()));
    }
    if k > cat.max_degree {
        return Err(Error::PartsBeyondCap {
            k,
            m,
            cap: cat.max_degree,
        });
    }
    let mut all = Vec::new();
    for entry in cat.degree(k) {
        all.extend(worthy_for_entry(entry, m)?);
    }
    Ok(merge(all))
}

/// Part-size pairs `(a, b)`, `a <= b`, of worthy graphs whose blow-ups can
/// have order `n`.
pub fn needed_part_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..=n / 2 {
        for b in a..=n - a {
            if reachable(a, b, n) {
                out.push((a, b));
            }
        }
    }
    out
}

fn reachable(a: usize, b: usize, n: usize) -> bool {
    (1..=n / a).any(|s| s * a < n && (n - s * a).is_multiple_of(b))
}

/// Blow-ups of order `n` of the given worthy bipartite records, one per
/// isomorphism class. Every factor pair `(s, t)` with `s|U| + t|W| = n` is
/// used, so both orientations of each record are covered.
pub fn blowup_closure(worthy: &[CensusRecord], n: usize) -> Vec<CensusRecord> {
    let mut out = Vec::new();
    for rec in worthy {
        let Some((u, w)) = rec.graph.parts() else {
            continue;
        };
        let (p1, p2) = (u.len(), w.len());
        for s in 1..=n / p1 {
            if s * p1 >= n || !(n - s * p1).is_multiple_of(p2) {
                continue;
            }
            let t = (n - s * p1) / p2;
            let graph = blow_up(&rec.graph, s, t).expect("worthy records carry parts");
            let provenance = Provenance::BlowUp {
                parts: (p1, p2),
                factors: (s, t),
                source: Box::new(rec.provenance.clone()),
            };
            out.push(CensusRecord::new(graph, provenance));
        }
    }
    merge(out)
}

/// Worthy records for every part-size pair needed by orders up to `max_order`.
#[derive(Clone, Debug, Default)]
pub struct WorthyCensus {
    pub pairs: BTreeMap<(usize, usize), Vec<CensusRecord>>,
}

impl WorthyCensus {
    pub fn build(max_order: usize, cat: &Catalogue) -> Result<WorthyCensus> {
        let mut wc = WorthyCensus::default();
        for n in 2..=max_order {
            wc.extend_to(n, cat)?;
        }
        Ok(wc)
    }

    /// Adds the pairs needed for order `n` that are not yet present.
    pub fn extend_to(&mut self, n: usize, cat: &Catalogue) -> Result<()> {
        for (a, b) in needed_part_pairs(n) {
            if let alloc::collections::btree_map::Entry::Vacant(e) = self.pairs.entry((a, b)) {
                let recs = enumerate_bipartite_worthy(a, b, cat)?;
                e.insert(recs);
            }
        }
        Ok(())
    }

    pub fn records_for(&self, n: usize) -> Vec<CensusRecord> {
        needed_part_pairs(n)
            .into_iter()
            .filter_map(|p| self.pairs.get(&p))
            .flatten()
            .cloned()
            .collect()
    }

    /// The first needed pair not yet computed.
    pub fn missing_for(&self, n: usize) -> Option<(usize, usize)> {
        needed_part_pairs(n)
            .into_iter()
            .find(|p| !self.pairs.contains_key(p))
    }
}

/// Part-size pairs needed for order `n` whose smaller part exceeds the cap.
pub fn blocking_pairs(n: usize, cap: usize) -> Vec<(usize, usize)> {
    needed_part_pairs(n)
        .into_iter()
        .filter(|&(a, _)| a > cap)
        .collect()
}

/// All connected bipartite edge-transitive graphs of order `n`.
pub fn bipartite_census(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    if let Some(&(k, m)) = blocking_pairs(n, cat.max_degree).first() {
        return Err(Error::PartsBeyondCap {
            k,
            m,
            cap: cat.max_degree,
        });
    }
    let mut wc = WorthyCensus::default();
    wc.extend_to(n, cat)?;
    Ok(blowup_closure(&wc.records_for(n), n))
}

/// Suborbit representatives and the edge set they generate.
pub type OrbitalGraph = (Vec<usize>, Vec<(usize, usize)>);

/// The basic undirected orbital graphs of a transitive group, as edge sets,
/// each with the least point of every suborbit it contains.
pub fn basic_orbital_graphs(group: &PermGroup) -> Result<Vec<OrbitalGraph>> {
    let n = group.degree();
    let gens = group.generators().to_vec();
    let stab = group.stabilizer(0)?;
    let mut out: Vec<OrbitalGraph> = Vec::new();
    for o in stab.orbits() {
        if o[0] == 0 {
            continue;
        }
        let edges = pair_orbit(n, &gens, 0, o[0]);
        match out.iter_mut().find(|(_, e)| *e == edges) {
            Some((names, _)) => names.push(o[0]),
            None => out.push((vec![o[0]], edges)),
        }
    }
    Ok(out)
}

/// Connected vertex-transitive graphs admitting catalogue group `entry`,
/// one per isomorphism class.
pub fn orbital_graphs_for_entry(entry: &CatalogueEntry) -> Result<Vec<CensusRecord>> {
    let n = entry.degree;
    let basics = basic_orbital_graphs(&entry.group())?;
    let r = basics.len();
    if r >= usize::BITS as usize - 1 {
        return Err(Error::BadParameter("too many orbital graphs".into()));
    }
    let mut out = Vec::new();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    for mask in 0usize..1 << r {
        let mut edges = Vec::new();
        let mut names = Vec::new();
        for (i, (nm, e)) in basics.iter().enumerate() {
            if mask >> i & 1 == 1 {
                edges.extend_from_slice(e);
                names.extend_from_slice(nm);
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if !g.is_connected() {
            continue;
        }
        names.sort_unstable();
        let rec = CensusRecord::new(
            g,
            Provenance::Orbital {
                degree: n,
                index: entry.index,
                suborbits: names,
            },
        );
        if seen.insert(rec.canonical.clone()) {
            out.push(rec);
        }
    }
    Ok(out)
}

/// All connected vertex-transitive graphs of order `n`.
pub fn enumerate_vertex_transitive(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    let entries = cat.require(n)?;
    let mut all = Vec::new();
    for e in entries {
        all.extend(orbital_graphs_for_entry(e)?);
    }
    Ok(merge(all))
}

/// Edge-transitive non-bipartite graphs from a vertex-transitive census.
pub fn nonbipartite_edge_transitive(vt: Vec<CensusRecord>) -> Vec<CensusRecord> {
    vt.into_iter()
        .filter(|r| r.flags.edge_transitive && !r.flags.bipartite)
        .collect()
}

/// All connected edge-transitive graphs of order `n`.
pub fn full_census(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    if n == 0 {
        return Err(Error::BadParameter("order must be positive".into()));
    }
    let mut all = nonbipartite_edge_transitive(enumerate_vertex_transitive(n, cat)?);
    if n >= 2 {
        all.extend(bipartite_census(n, cat)?);
    }
    Ok(merge(all))
}

/// One row of the census summary table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TableRow {
    pub tot: usize,
    pub reg: usize,
    pub bpte: usize,
    pub vt: usize,
    pub at: usize,
    pub wthy: usize,
}

impl TableRow {
    pub fn from_flags<'a>(flags: impl IntoIterator<Item = &'a ClassificationFlags>) -> TableRow {
        let mut row = TableRow::default();
        for f in flags {
            row.tot += 1;
            row.reg += f.regular as usize;
            row.bpte += f.bipartite as usize;
            row.vt += f.vertex_transitive as usize;
            row.at += f.arc_transitive as usize;
            row.wthy += f.worthy as usize;
        }
        row
    }

    pub fn as_array(&self) -> [usize; 6] {
        [self.tot, self.reg, self.bpte, self.vt, self.at, self.wthy]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusTable {
    pub rows: BTreeMap<usize, TableRow>,
}

impl CensusTable {
    pub fn row(&self, n: usize) -> TableRow {
        self.rows.get(&n).copied().unwrap_or_default()
    }
}

/// Per-order counts of the records.
pub fn tabulate(records: &[CensusRecord]) -> CensusTable {
    let mut by_order: BTreeMap<usize, Vec<&ClassificationFlags>> = BTreeMap::new();
    for r in records {
        by_order.entry(r.order()).or_default().push(&r.flags);
    }
    CensusTable {
        rows: by_order
            .into_iter()
            .map(|(n, fs)| (n, TableRow::from_flags(fs)))
            .collect(),
    }
}
