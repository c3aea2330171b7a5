//! Parallel versions of the core pipelines.
//!
//! Work items are independent; every result passes through `merge`, so the
//! output does not depend on the number of workers.

use std::collections::BTreeMap;

use etcensus_core::census::{
    blocking_pairs, blowup_closure, merge, needed_part_pairs, nonbipartite_edge_transitive,
    orbital_graphs_for_entry, worthy_for_entry, CensusRecord,
};
use etcensus_core::graph::Graph;
use etcensus_core::oracle::{
    augment_connected, check_cap, exhaustive_connected_graphs, may_be_edge_transitive, OracleCensus,
};
use etcensus_core::census::Provenance;
use etcensus_core::transcat::{
    transitive_groups, Catalogue, CatalogueEntry, DEFAULT_DEGREE_CAP, LONG_DEGREE_CAP,
};
use etcensus_core::{Error, Result};
use rayon::prelude::*;

/// Runs `f` on a pool of `workers` threads, or the global pool for `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

/// Same result as [`etcensus_core::transcat::build_catalogue`], one degree per task.
pub fn build_catalogue(max_degree: usize, long: bool) -> Result<Catalogue> {
    let cap = if long { LONG_DEGREE_CAP } else { DEFAULT_DEGREE_CAP };
    if max_degree == 0 {
        return Err(Error::BadParameter("max degree must be positive".into()));
    }
    if max_degree > cap {
        return Err(Error::CapExceeded {
            requested: max_degree,
            cap,
        });
    }
    let lists = (1..=max_degree)
        .into_par_iter()
        .map(transitive_groups)
        .collect::<Result<Vec<_>>>()?;
    Ok(etcensus_core::transcat::assemble(lists))
}

/// Worthy records for each part-size pair, one task per (pair, catalogue entry).
pub fn worthy_pairs(
    pairs: &[(usize, usize)],
    cat: &Catalogue,
) -> Result<BTreeMap<(usize, usize), Vec<CensusRecord>>> {
    let mut items: Vec<((usize, usize), &CatalogueEntry)> = Vec::new();
    for &(a, b) in pairs {
        let (k, m) = if a <= b { (a, b) } else { (b, a) };
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
        items.extend(cat.degree(k).iter().map(|e| ((k, m), e)));
    }
    let found = items
        .into_par_iter()
        .map(|(p, e)| worthy_for_entry(e, p.1).map(|r| (p, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut out: BTreeMap<(usize, usize), Vec<CensusRecord>> = pairs
        .iter()
        .map(|&(a, b)| ((a.min(b), a.max(b)), Vec::new()))
        .collect();
    for (p, recs) in found {
        out.get_mut(&p).expect("pair listed").extend(recs);
    }
    for recs in out.values_mut() {
        *recs = merge(std::mem::take(recs));
    }
    Ok(out)
}

fn check_blocking(n: usize, cat: &Catalogue) -> Result<()> {
    match blocking_pairs(n, cat.max_degree).first() {
        Some(&(k, m)) => Err(Error::PartsBeyondCap {
            k,
            m,
            cap: cat.max_degree,
        }),
        None => Ok(()),
    }
}

/// Bipartite censuses for several orders, sharing the worthy records.
pub fn bipartite_censuses(
    orders: &[usize],
    cat: &Catalogue,
) -> Result<BTreeMap<usize, Vec<CensusRecord>>> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for &n in orders {
        check_blocking(n, cat)?;
        pairs.extend(needed_part_pairs(n));
    }
    pairs.sort_unstable();
    pairs.dedup();
    let worthy = worthy_pairs(&pairs, cat)?;
    orders
        .par_iter()
        .map(|&n| {
            let recs: Vec<CensusRecord> = needed_part_pairs(n)
                .iter()
                .flat_map(|p| worthy[p].iter().cloned())
                .collect();
            Ok((n, blowup_closure(&recs, n)))
        })
        .collect()
}

pub fn bipartite_census(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    Ok(bipartite_censuses(&[n], cat)?.remove(&n).unwrap_or_default())
}

pub fn vertex_transitive(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    let entries = cat.require(n)?;
    let found = entries
        .par_iter()
        .map(orbital_graphs_for_entry)
        .collect::<Result<Vec<_>>>()?;
    Ok(merge(found.into_iter().flatten().collect()))
}

pub fn full_census(n: usize, cat: &Catalogue) -> Result<Vec<CensusRecord>> {
    if n == 0 {
        return Err(Error::BadParameter("order must be positive".into()));
    }
    cat.require(n)?;
    let mut all = nonbipartite_edge_transitive(vertex_transitive(n, cat)?);
    if n >= 2 {
        all.extend(bipartite_census(n, cat)?);
    }
    Ok(merge(all))
}

fn descendants(g: &Graph, n: usize, count: &mut usize, out: &mut Vec<CensusRecord>) {
    if g.order() == n {
        *count += 1;
        if may_be_edge_transitive(g) {
            let r = CensusRecord::new(g.clone(), Provenance::Exhaustive);
            if r.flags.edge_transitive {
                out.push(r);
            }
        }
        return;
    }
    for c in augment_connected(g) {
        descendants(&c, n, count, out);
    }
}

/// Same result as [`etcensus_core::oracle::oracle_census`], one task per
/// connected graph of order `n - 1`.
pub fn oracle(n: usize, long: bool) -> Result<OracleCensus> {
    check_cap(n, long)?;
    let parents = if n == 1 {
        vec![Graph::empty(1)]
    } else {
        exhaustive_connected_graphs(n - 1)
    };
    let parts: Vec<(usize, Vec<CensusRecord>)> = parents
        .par_iter()
        .map(|p| {
            let mut count = 0;
            let mut out = Vec::new();
            descendants(p, n, &mut count, &mut out);
            (count, out)
        })
        .collect();
    let count = parts.iter().map(|p| p.0).sum();
    let records = parts.into_iter().flat_map(|p| p.1).collect();
    Ok(OracleCensus::from_records(n, count, records))
}
