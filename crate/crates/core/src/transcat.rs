//! Transitive permutation groups of small degree, up to conjugacy in the
//! symmetric group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{are_conjugate_subgroups, subgroups_up_to_conjugacy, PermGroup};
use crate::perm::Permutation;

/// Largest degree built without the long-run override.
pub const DEFAULT_DEGREE_CAP: usize = 8;
/// Largest degree built at all.
pub const LONG_DEGREE_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub degree: usize,
    /// Position within its degree, from 1.
    pub index: usize,
    pub order: u128,
    pub generators: Vec<Permutation>,
}

impl CatalogueEntry {
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators.clone()).expect("catalogue entry generators")
    }

    /// Generators in cycle notation, one per line.
    pub fn generator_text(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            s.push_str(&format!("{g}\n"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalogue {
    pub max_degree: usize,
    pub entries: BTreeMap<usize, Vec<CatalogueEntry>>,
    pub provenance: String,
}

impl Catalogue {
    pub fn degree(&self, k: usize) -> &[CatalogueEntry] {
        self.entries.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> Vec<(usize, usize)> {
        self.entries.iter().map(|(&k, v)| (k, v.len())).collect()
    }

    /// Fails with `CapExceeded` unless degree `k` is present.
    pub fn require(&self, k: usize) -> Result<&[CatalogueEntry]> {
        if k == 0 || k > self.max_degree {
            return Err(Error::CapExceeded {
                requested: k,
                cap: self.max_degree,
            });
        }
        Ok(self.degree(k))
    }

    /// Checks transitivity of every entry and pairwise non-conjugacy within
    /// each degree. Returns a description of the first failure.
    pub fn verify(&self) -> core::result::Result<(), String> {
        for (&k, list) in &self.entries {
            let sym = PermGroup::symmetric(k);
            let groups: Vec<PermGroup> = list.iter().map(CatalogueEntry::group).collect();
            for (e, g) in list.iter().zip(&groups) {
                if e.degree != k || g.degree() != k {
                    return Err(format!("entry {k}.{} has the wrong degree", e.index));
                }
                if g.order() != e.order {
                    return Err(format!(
                        "entry {k}.{} has order {}, recorded {}",
                        e.index,
                        g.order(),
                        e.order
                    ));
                }
                if !g.is_transitive() {
                    return Err(format!("entry {k}.{} is not transitive", e.index));
                }
            }
            for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    if groups[i].order() == groups[j].order()
                        && are_conjugate_subgroups(&sym, &groups[i], &groups[j])
                            .map_err(|e| format!("{e}"))?
                    {
                        return Err(format!(
                            "entries {k}.{} and {k}.{} are conjugate",
                            list[i].index, list[j].index
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A small generating set: keeps each generator that enlarges the group so far.
fn reduce_generators(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut kept: Vec<Permutation> = Vec::new();
    let mut cur = PermGroup::trivial(degree);
    for g in gens {
        if !cur.contains(g) {
            kept.push(g.clone());
            cur = PermGroup::new(degree, kept.clone()).unwrap();
        }
    }
    kept
}

/// The transitive groups of degree `k`, sorted by order and then by
/// generator text, indexed from 1.
pub fn transitive_groups(k: usize) -> Result<Vec<CatalogueEntry>> {
    if k == 0 {
        return Err(Error::BadParameter("degree must be positive".into()));
    }
    if k > LONG_DEGREE_CAP {
        return Err(Error::CapExceeded {
            requested: k,
            cap: LONG_DEGREE_CAP,
        });
    }
    let sym = PermGroup::symmetric(k);
    let bound = sym.order().max(1);
    let mut list: Vec<(u128, String, Vec<Permutation>)> = subgroups_up_to_conjugacy(&sym, bound)?
        .into_iter()
        .filter(|c| c.representative.is_transitive())
        .map(|c| {
            let gens = reduce_generators(k, c.representative.generators());
            let text: String = gens.iter().map(|g| format!("{g}\n")).collect();
            (c.order, text, gens)
        })
        .collect();
    list.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(list
        .into_iter()
        .enumerate()
        .map(|(i, (order, _, generators))| CatalogueEntry {
            degree: k,
            index: i + 1,
            order,
            generators,
        })
        .collect())
}

pub fn provenance(max_degree: usize) -> String {
    format!(
        "etcensus-core {} subgroup-lattice max_degree={max_degree}",
        env!("CARGO_PKG_VERSION")
    )
}

/// Builds degrees `1..=max_degree`. Degrees above [`DEFAULT_DEGREE_CAP`]
/// require `long`.
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
    let mut entries = BTreeMap::new();
    for k in 1..=max_degree {
        entries.insert(k, transitive_groups(k)?);
    }
    Ok(Catalogue {
        max_degree,
        entries,
        provenance: provenance(max_degree),
    })
}

/// Assembles a catalogue from per-degree lists built elsewhere.
pub fn assemble(lists: Vec<Vec<CatalogueEntry>>) -> Catalogue {
    let max_degree = lists.len();
    let entries = lists
        .into_iter()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .collect();
    Catalogue {
        max_degree,
        entries,
        provenance: provenance(max_degree),
    }
}
