//! CSV output for classified graphs and summary tables.

use etcensus_core::census::{CensusTable, TableRow};
use etcensus_core::graph::{ClassificationFlags, Graph};

use crate::graph6;

pub const RECORD_HEADER: &str = "n,graph6,connected,regular,bipartite,worthy,vt,et,at,hat,semisym,aut_order";
pub const TABLE_HEADER: &str = "n,Tot,Reg,Bpte,VT,AT,Wthy";

pub fn record_row(g: &Graph, f: &ClassificationFlags) -> String {
    let b = |x: bool| if x { "1" } else { "0" };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        g.order(),
        graph6::encode(g).expect("order within graph6 range"),
        b(f.connected),
        b(f.regular),
        b(f.bipartite),
        b(f.worthy),
        b(f.vertex_transitive),
        b(f.edge_transitive),
        b(f.arc_transitive),
        b(f.half_arc_transitive),
        b(f.semi_symmetric),
        f.aut_order
    )
}

pub fn table_row(n: usize, r: &TableRow) -> String {
    format!("{n},{},{},{},{},{},{}", r.tot, r.reg, r.bpte, r.vt, r.at, r.wthy)
}

pub fn table(t: &CensusTable) -> String {
    let mut s = format!("{TABLE_HEADER}\n");
    for (n, r) in &t.rows {
        s.push_str(&table_row(*n, r));
        s.push('\n');
    }
    s
}
