//! Plain-text catalogue cache.
//!
//! ```text
//! # etcensus transitive group catalogue
//! # max-degree: 4
//! # provenance: ...
//! # degree 4: 5 groups
//! DEGREE 4 INDEX 1 ORDER 4
//! (1,2,3,4)
//!
//! ```
//!
//! Each record is a `DEGREE k INDEX i ORDER n` line, one generator per line
//! in 1-indexed cycle notation, and a terminating blank line.

use std::collections::BTreeMap;
use std::path::Path;

use etcensus_core::perm::Permutation;
use etcensus_core::transcat::{provenance, Catalogue, CatalogueEntry};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogueFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("entry {degree}.{index}: {message}")]
    Invalid {
        degree: usize,
        index: usize,
        message: String,
    },
}

pub fn to_text(cat: &Catalogue) -> String {
    let mut s = String::from("# etcensus transitive group catalogue\n");
    s.push_str(&format!("# max-degree: {}\n", cat.max_degree));
    s.push_str(&format!("# provenance: {}\n", cat.provenance));
    for (k, c) in cat.counts() {
        s.push_str(&format!("# degree {k}: {c} groups\n"));
    }
    for list in cat.entries.values() {
        for e in list {
            s.push_str(&format!(
                "DEGREE {} INDEX {} ORDER {}\n",
                e.degree, e.index, e.order
            ));
            s.push_str(&e.generator_text());
            s.push('\n');
        }
    }
    s
}

struct Pending {
    line: usize,
    degree: usize,
    index: usize,
    order: u128,
    gens: Vec<String>,
}

fn finish(p: Pending) -> Result<CatalogueEntry, CatalogueFileError> {
    let invalid = |message: String| CatalogueFileError::Invalid {
        degree: p.degree,
        index: p.index,
        message,
    };
    let generators = p
        .gens
        .iter()
        .map(|g| Permutation::parse_cycles(g, p.degree).map_err(|e| invalid(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let entry = CatalogueEntry {
        degree: p.degree,
        index: p.index,
        order: p.order,
        generators,
    };
    let g = entry.group();
    if g.order() != p.order {
        return Err(invalid(format!(
            "generators give order {}, header says {} (line {})",
            g.order(),
            p.order,
            p.line
        )));
    }
    if !g.is_transitive() {
        return Err(invalid("group is not transitive".into()));
    }
    Ok(entry)
}

pub fn from_text(text: &str) -> Result<Catalogue, CatalogueFileError> {
    let parse_err = |line: usize, message: &str| CatalogueFileError::Parse {
        line,
        message: message.into(),
    };
    let mut max_degree: Option<usize> = None;
    let mut prov: Option<String> = None;
    let mut entries: BTreeMap<usize, Vec<CatalogueEntry>> = BTreeMap::new();
    let mut pending: Option<Pending> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("max-degree:") {
                max_degree = Some(v.trim().parse().map_err(|_| parse_err(line_no, "bad max-degree"))?);
            } else if let Some(v) = rest.strip_prefix("provenance:") {
                prov = Some(v.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            if let Some(p) = pending.take() {
                let e = finish(p)?;
                entries.entry(e.degree).or_default().push(e);
            }
            continue;
        }
        if line.starts_with("DEGREE") {
            if pending.is_some() {
                return Err(parse_err(line_no, "record not terminated by a blank line"));
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 6 || f[2] != "INDEX" || f[4] != "ORDER" {
                return Err(parse_err(line_no, "expected DEGREE k INDEX i ORDER n"));
            }
            let num = |s: &str| s.parse::<u128>().map_err(|_| parse_err(line_no, "bad number"));
            let degree = num(f[1])? as usize;
            if degree == 0 {
                return Err(parse_err(line_no, "degree must be positive"));
            }
            pending = Some(Pending {
                line: line_no,
                degree,
                index: num(f[3])? as usize,
                order: num(f[5])?,
                gens: Vec::new(),
            });
            continue;
        }
        match pending.as_mut() {
            Some(p) => p.gens.push(line.to_string()),
            None => return Err(parse_err(line_no, "generator outside a record")),
        }
    }
    if let Some(p) = pending.take() {
        let e = finish(p)?;
        entries.entry(e.degree).or_default().push(e);
    }
    for (&k, list) in &entries {
        for (i, e) in list.iter().enumerate() {
            if e.index != i + 1 {
                return Err(CatalogueFileError::Invalid {
                    degree: k,
                    index: e.index,
                    message: format!("expected index {}", i + 1),
                });
            }
        }
    }
    let max_degree = max_degree.unwrap_or_else(|| entries.keys().copied().max().unwrap_or(0));
    for k in 1..=max_degree {
        entries.entry(k).or_default();
    }
    Ok(Catalogue {
        max_degree,
        entries,
        provenance: prov.unwrap_or_else(|| provenance(max_degree)),
    })
}

pub fn save(cat: &Catalogue, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, to_text(cat))
}

pub fn load(path: &Path) -> Result<Catalogue, CatalogueFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogueFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_text(&text)
}
