//! Computed census rows against the published table.

use std::fmt;

use etcensus_core::census::{blocking_pairs, TableRow};
use etcensus_core::oracle::{DEFAULT_ORACLE_CAP, LONG_ORACLE_CAP};
use etcensus_core::transcat::Catalogue;
use etcensus_core::Result;

use crate::drivers;
use crate::table::{published, COLUMNS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Choose per order: group pipeline, then oracle, then bipartite only.
    Auto,
    Group,
    Oracle,
    Bipartite,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Method, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "group" => Ok(Method::Group),
            "oracle" => Ok(Method::Oracle),
            "bipartite" => Ok(Method::Bipartite),
            _ => Err(format!("unknown method {s:?} (auto, group, oracle, bipartite)")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Group => "group",
            Method::Oracle => "oracle",
            Method::Bipartite => "bipartite",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct RowReport {
    pub n: usize,
    pub method: Option<Method>,
    /// `None` marks a column that the method does not compute.
    pub computed: [Option<usize>; 6],
    pub published: Option<[usize; 6]>,
    pub status: Status,
}

fn choose(n: usize, method: Method, cat: &Catalogue, long: bool) -> std::result::Result<Method, String> {
    let oracle_cap = if long { LONG_ORACLE_CAP } else { DEFAULT_ORACLE_CAP };
    let bipartite_ok = n >= 2 && blocking_pairs(n, cat.max_degree).is_empty();
    match method {
        Method::Auto if n <= cat.max_degree => Ok(Method::Group),
        Method::Auto if n <= oracle_cap => Ok(Method::Oracle),
        Method::Auto if bipartite_ok => Ok(Method::Bipartite),
        Method::Auto => Err(format!(
            "order {n} is beyond the catalogue cap {} and the oracle cap {oracle_cap}",
            cat.max_degree
        )),
        Method::Group if n > cat.max_degree => {
            Err(format!("catalogue covers degrees up to {}", cat.max_degree))
        }
        Method::Oracle if n > oracle_cap => Err(format!("oracle cap is {oracle_cap}")),
        Method::Bipartite if !bipartite_ok => Err(format!(
            "part sizes {:?} exceed the catalogue cap {}",
            blocking_pairs(n, cat.max_degree).first(),
            cat.max_degree
        )),
        m => Ok(m),
    }
}

fn compute(n: usize, method: Method, cat: &Catalogue, long: bool) -> Result<[Option<usize>; 6]> {
    let full = |r: TableRow| r.as_array().map(Some);
    Ok(match method {
        Method::Group => full(TableRow::from_flags(
            drivers::full_census(n, cat)?.iter().map(|r| &r.flags),
        )),
        Method::Oracle => full(drivers::oracle(n, long)?.row),
        Method::Bipartite => {
            let mut c = [None; 6];
            c[2] = Some(drivers::bipartite_census(n, cat)?.len());
            c
        }
        Method::Auto => unreachable!("resolved by choose"),
    })
}

/// Verifies one order. Orders without a published row, or out of reach of
/// the requested method, are reported as skipped.
pub fn verify_order(n: usize, method: Method, cat: &Catalogue, long: bool) -> Result<RowReport> {
    let published = published(n).map(|r| r.as_array());
    let skipped = |why: String| RowReport {
        n,
        method: None,
        computed: [None; 6],
        published,
        status: Status::Skipped(why),
    };
    if published.is_none() {
        return Ok(skipped("no published row".into()));
    }
    let method = match choose(n, method, cat, long) {
        Ok(m) => m,
        Err(why) => return Ok(skipped(why)),
    };
    let computed = compute(n, method, cat, long)?;
    let p = published.expect("checked above");
    let agree = computed
        .iter()
        .zip(p)
        .all(|(c, v)| c.is_none_or(|c| c == v));
    Ok(RowReport {
        n,
        method: Some(method),
        computed,
        published,
        status: if agree { Status::Match } else { Status::Mismatch },
    })
}

pub fn verify_orders(
    orders: &[usize],
    method: Method,
    cat: &Catalogue,
    long: bool,
) -> Result<Vec<RowReport>> {
    orders
        .iter()
        .map(|&n| verify_order(n, method, cat, long))
        .collect()
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// Side-by-side text report, one line per order.
pub fn render(reports: &[RowReport]) -> String {
    let mut s = format!("{:>3}  {:<9}", "n", "method");
    for c in COLUMNS {
        s.push_str(&format!(" {:>11}", c));
    }
    s.push_str("  status\n");
    for r in reports {
        s.push_str(&format!(
            "{:>3}  {:<9}",
            r.n,
            r.method.map_or("-".into(), |m| m.to_string())
        ));
        for i in 0..6 {
            let p = r.published.map(|p| p[i]);
            s.push_str(&format!(" {:>11}", format!("{}/{}", cell(r.computed[i]), cell(p))));
        }
        match &r.status {
            Status::Match => s.push_str("  MATCH\n"),
            Status::Mismatch => s.push_str("  MISMATCH\n"),
            Status::Skipped(why) => s.push_str(&format!("  SKIPPED ({why})\n")),
        }
    }
    s
}
