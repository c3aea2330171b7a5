use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use etcensus::{catalogue_file, csv, drivers, edgelist, graph6, verify};
use etcensus_core::census::{blocking_pairs, tabulate, CensusRecord, CensusTable};
use etcensus_core::constructions::{folkman_blowup, levi_and_complement, symplectic_gq};
use etcensus_core::graph::{classify, twin_classes, ClassificationFlags, Graph};
use etcensus_core::oracle::{DEFAULT_ORACLE_CAP, LONG_ORACLE_CAP};
use etcensus_core::transcat::{Catalogue, DEFAULT_DEGREE_CAP, LONG_DEGREE_CAP};

#[derive(Parser)]
#[command(name = "etcensus", version, about = "Census of connected edge-transitive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or check the transitive group catalogue.
    #[command(subcommand)]
    Catalogue(CatalogueCmd),
    /// Enumerate connected edge-transitive graphs of the given orders.
    Census(CensusArgs),
    /// Classify graph6 graphs read from a file or standard input.
    Classify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Build one of the semi-symmetric families and report on it.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Exhaustive census of one order by classifying every connected graph.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        long: bool,
        /// Write the edge-transitive graphs as CSV records.
        #[arg(long)]
        emit_et: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compare computed rows with the published summary table.
    VerifyTable {
        #[arg(long, value_parser = parse_orders)]
        orders: RangeInclusive<usize>,
        #[arg(long)]
        long: bool,
        #[arg(long)]
        catalogue: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        method: verify::Method,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CatalogueCmd {
    Build {
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow degrees 9 and 10.
        #[arg(long)]
        long: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    Verify { path: PathBuf },
}

#[derive(Subcommand)]
enum ConstructCmd {
    Folkman {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
    Gq {
        #[arg(long)]
        q: usize,
        /// Report on the bipartite complement instead of the Levi graph.
        #[arg(long)]
        complement: bool,
        /// Compute automorphism groups for q = 9.
        #[arg(long)]
        long: bool,
        #[command(flatten)]
        out: ConstructOut,
    },
}

#[derive(Args)]
struct ConstructOut {
    /// Write the graph here instead of printing graph6 in the report.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "graph6", value_parser = ["graph6", "edgelist"])]
    format: String,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, conflicts_with = "orders")]
    order: Option<usize>,
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_orders)]
    orders: Option<RangeInclusive<usize>>,
    #[arg(long)]
    bipartite_only: bool,
    #[arg(long)]
    catalogue: Option<PathBuf>,
    /// Allow in-memory catalogues of degree 9 and 10.
    #[arg(long)]
    long: bool,
    #[arg(long)]
    out_graph6: Option<PathBuf>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_table: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_orders(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad order {t:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok(a..=b)
}

enum Failure {
    Usage(String),
    Missing(String),
    Capability(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Missing(_) => 2,
            Failure::Capability(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Missing(m) | Failure::Capability(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<etcensus_core::Error> for Failure {
    fn from(e: etcensus_core::Error) -> Failure {
        use etcensus_core::Error as E;
        match e {
            E::CapExceeded { .. } | E::PartsBeyondCap { .. } | E::OrderBoundExceeded { .. } => {
                Failure::Capability(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text)
        .map_err(|e| Failure::Missing(format!("cannot write {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Catalogue(c) => cmd_catalogue(c),
        Command::Census(a) => {
            let workers = a.workers;
            drivers::with_workers(workers, || cmd_census(a))
        }
        Command::Classify { input } => cmd_classify(input.as_deref()),
        Command::Construct(c) => cmd_construct(c),
        Command::Oracle {
            n,
            long,
            emit_et,
            workers,
        } => drivers::with_workers(workers, || cmd_oracle(n, long, emit_et.as_deref())),
        Command::VerifyTable {
            orders,
            long,
            catalogue,
            method,
            workers,
        } => drivers::with_workers(workers, || {
            cmd_verify_table(orders, long, catalogue.as_deref(), method)
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn cmd_catalogue(c: CatalogueCmd) -> Outcome {
    match c {
        CatalogueCmd::Build {
            max_degree,
            out,
            long,
            workers,
        } => {
            let start = Instant::now();
            let cat = drivers::with_workers(workers, || drivers::build_catalogue(max_degree, long))?;
            for (k, c) in cat.counts().into_iter().rev() {
                println!("degree {k}: {c} groups");
            }
            eprintln!("built in {:.1?}", start.elapsed());
            if let Some(path) = out {
                write_file(&path, &catalogue_file::to_text(&cat))?;
            }
            Ok(())
        }
        CatalogueCmd::Verify { path } => {
            let cat = load_catalogue(&path)?;
            cat.verify()
                .map_err(|e| Failure::Mismatch(format!("{}: {e}", path.display())))?;
            for (k, c) in cat.counts() {
                println!("degree {k}: {c} groups");
            }
            println!("ok");
            Ok(())
        }
    }
}

fn load_catalogue(path: &Path) -> Result<Catalogue, Failure> {
    catalogue_file::load(path).map_err(|e| match e {
        catalogue_file::CatalogueFileError::Io { .. } => Failure::Missing(format!(
            "{e}\nbuild one with `etcensus catalogue build --max-degree K --out {}`",
            path.display()
        )),
        other => Failure::Usage(other.to_string()),
    })
}

/// A catalogue reaching `degree`: from `path`, or built in memory when the
/// degree is within the applicable cap.
fn obtain_catalogue(path: Option<&Path>, degree: usize, long: bool) -> Result<Catalogue, Failure> {
    let degree = degree.max(1);
    if let Some(p) = path {
        let cat = load_catalogue(p)?;
        if cat.max_degree < degree {
            return Err(Failure::Missing(format!(
                "{} covers degrees up to {}, degree {degree} is needed\nrebuild with `etcensus catalogue build --max-degree {degree}{} --out {}`",
                p.display(),
                cat.max_degree,
                if degree > DEFAULT_DEGREE_CAP { " --long" } else { "" },
                p.display()
            )));
        }
        return Ok(cat);
    }
    if degree > LONG_DEGREE_CAP {
        return Err(Failure::Capability(format!(
            "degree {degree} transitive groups are beyond the catalogue cap {LONG_DEGREE_CAP}"
        )));
    }
    if degree > DEFAULT_DEGREE_CAP && !long {
        return Err(Failure::Missing(format!(
            "degree {degree} transitive groups are not built by default\nrun `etcensus catalogue build --max-degree {degree} --long --out cat.txt` and pass `--catalogue cat.txt`, or add --long"
        )));
    }
    Ok(drivers::build_catalogue(degree, long)?)
}

fn cmd_census(a: CensusArgs) -> Outcome {
    let orders: Vec<usize> = match (a.order, a.orders.clone()) {
        (Some(n), None) => vec![n],
        (None, Some(r)) => r.collect(),
        _ => return Err(Failure::Usage("give --order N or --orders A..B".into())),
    };
    if orders.contains(&0) {
        return Err(Failure::Usage("orders must be positive".into()));
    }
    let max_order = *orders.iter().max().expect("non-empty");
    let degree = if a.bipartite_only {
        for &n in &orders {
            if let Some(&(k, m)) = blocking_pairs(n, LONG_DEGREE_CAP).first() {
                return Err(Failure::Capability(format!(
                    "order {n} needs worthy graphs with parts ({k}, {m}), beyond the catalogue cap {LONG_DEGREE_CAP}"
                )));
            }
        }
        orders
            .iter()
            .flat_map(|&n| etcensus_core::census::needed_part_pairs(n))
            .map(|p| p.0)
            .max()
            .unwrap_or(1)
    } else {
        if max_order > LONG_DEGREE_CAP {
            let blocking = blocking_pairs(max_order, LONG_DEGREE_CAP);
            let detail = match blocking.first() {
                Some((k, m)) => format!(" and worthy graphs with parts ({k}, {m})"),
                None => String::new(),
            };
            return Err(Failure::Capability(format!(
                "order {max_order} needs transitive groups of degree {max_order}{detail}, beyond the catalogue cap {LONG_DEGREE_CAP}; try --bipartite-only"
            )));
        }
        max_order
    };
    let cat = obtain_catalogue(a.catalogue.as_deref(), degree, a.long)?;
    let records: Vec<CensusRecord> = if a.bipartite_only {
        let orders: Vec<usize> = orders.iter().copied().filter(|&n| n >= 2).collect();
        drivers::bipartite_censuses(&orders, &cat)?
            .into_values()
            .flatten()
            .collect()
    } else {
        let mut all = Vec::new();
        for &n in &orders {
            all.extend(drivers::full_census(n, &cat)?);
        }
        all
    };
    let mut g6 = String::new();
    for r in &records {
        g6.push_str(&graph6::encode(&r.graph).expect("small order"));
        g6.push('\n');
    }
    match &a.out_graph6 {
        Some(p) => write_file(p, &g6)?,
        None => print!("{g6}"),
    }
    if let Some(p) = &a.out_csv {
        let mut s = format!("{}\n", csv::RECORD_HEADER);
        for r in &records {
            s.push_str(&csv::record_row(&r.graph, &r.flags));
            s.push('\n');
        }
        write_file(p, &s)?;
    }
    if let Some(p) = &a.out_table {
        let mut table = tabulate(&records);
        for &n in &orders {
            table.rows.entry(n).or_default();
        }
        let text = if a.bipartite_only {
            bipartite_table(&table)
        } else {
            csv::table(&table)
        };
        write_file(p, &text)?;
    }
    Ok(())
}

fn bipartite_table(t: &CensusTable) -> String {
    let mut s = String::from("n,Bpte\n");
    for (n, r) in &t.rows {
        s.push_str(&format!("{n},{}\n", r.bpte));
    }
    s
}

fn cmd_classify(input: Option<&Path>) -> Outcome {
    let mut text = String::new();
    match input {
        Some(p) => {
            text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Missing(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Missing(format!("cannot read standard input: {e}")))?;
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut header = false;
    let mut bad = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match graph6::decode(line) {
            Ok(g) => {
                if !header {
                    let _ = writeln!(out, "{}", csv::RECORD_HEADER);
                    header = true;
                }
                let _ = writeln!(out, "{}", csv::record_row(&g, &classify(&g)));
            }
            Err(e) => {
                eprintln!("line {}: {e}", i + 1);
                bad += 1;
            }
        }
    }
    if bad > 0 {
        return Err(Failure::Usage(format!("{bad} malformed graph6 lines")));
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn ratio(d: usize, n: usize) -> String {
    let g = gcd(d, n).max(1);
    format!("{}/{}", d / g, n / g)
}

fn multiset(m: &BTreeMap<usize, usize>) -> String {
    m.iter()
        .map(|(v, c)| format!("{v}^{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report(name: &str, g: &Graph, flags: Option<&ClassificationFlags>) -> String {
    let b = |x: bool| if x { 1 } else { 0 };
    let mut s = format!("graph: {name}\norder: {}\nedges: {}\n", g.order(), g.edge_count());
    s.push_str(&format!("valencies: {}\n", multiset(&g.valency_multiset())));
    if g.is_regular() && g.order() > 0 {
        s.push_str(&format!("valency: {}\n", g.degree(0)));
        if let Some((u, _)) = g.parts() {
            s.push_str(&format!("ratio d/n: {}\n", ratio(g.degree(0), u.len())));
        }
    }
    let mut twins: BTreeMap<usize, usize> = BTreeMap::new();
    for c in twin_classes(g) {
        *twins.entry(c.len()).or_default() += 1;
    }
    s.push_str(&format!("twin-class sizes: {}\n", multiset(&twins)));
    s.push_str(&format!("connected: {}\nworthy: {}\n", b(g.is_connected()), b(g.is_worthy())));
    match flags {
        Some(f) => {
            s.push_str(&format!(
                "bipartite: {}\nvt: {}\net: {}\nat: {}\nsemisym: {}\naut_order: {}\n",
                b(f.bipartite),
                b(f.vertex_transitive),
                b(f.edge_transitive),
                b(f.arc_transitive),
                b(f.semi_symmetric),
                f.aut_order
            ));
        }
        None => s.push_str("aut_order: not computed (use --long)\n"),
    }
    s
}

fn emit(name: &str, g: &Graph, flags: Option<&ClassificationFlags>, out: &ConstructOut) -> Outcome {
    let text = match out.format.as_str() {
        "edgelist" => edgelist::write(g),
        _ => format!("{}\n", graph6::encode(g).expect("order within graph6 range")),
    };
    let mut rep = report(name, g, flags);
    match &out.out {
        Some(p) => write_file(p, &text)?,
        None if out.format == "graph6" => rep.push_str(&format!("graph6: {text}")),
        None => rep.push_str(&text),
    }
    print!("{rep}");
    Ok(())
}

fn cmd_construct(c: ConstructCmd) -> Outcome {
    match c {
        ConstructCmd::Folkman { k, out } => {
            let fam = folkman_blowup(k)?;
            let flags = classify(&fam.y);
            emit(&format!("folkman blow-up k={k}"), &fam.y, Some(&flags), &out)
        }
        ConstructCmd::Gq {
            q,
            complement,
            long,
            out,
        } => {
            let gq = symplectic_gq(q)?;
            let (levi, comp) = levi_and_complement(&gq);
            let (name, g) = if complement {
                ("symplectic quadrangle complement", comp)
            } else {
                ("symplectic quadrangle incidence", levi)
            };
            let flags = (q <= 7 || long).then(|| classify(&g));
            emit(&format!("{name} q={q}"), &g, flags.as_ref(), &out)
        }
    }
}

fn cmd_oracle(n: usize, long: bool, emit_et: Option<&Path>) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("order must be positive".into()));
    }
    let cap = if long { LONG_ORACLE_CAP } else { DEFAULT_ORACLE_CAP };
    if n > cap {
        return Err(Failure::Capability(format!(
            "exhaustive enumeration of order {n} is beyond the cap {cap}{}",
            if long { "" } else { " (order 10 needs --long)" }
        )));
    }
    let start = Instant::now();
    let census = drivers::oracle(n, long)?;
    let r = census.row;
    println!("n: {n}");
    println!("connected graphs: {}", census.connected_graphs);
    println!("{}", csv::TABLE_HEADER);
    println!("{}", csv::table_row(n, &r));
    eprintln!("finished in {:.1?}", start.elapsed());
    if let Some(p) = emit_et {
        let mut s = format!("{}\n", csv::RECORD_HEADER);
        for rec in &census.records {
            s.push_str(&csv::record_row(&rec.graph, &rec.flags));
            s.push('\n');
        }
        write_file(p, &s)?;
    }
    Ok(())
}

fn cmd_verify_table(
    orders: RangeInclusive<usize>,
    long: bool,
    catalogue: Option<&Path>,
    method: verify::Method,
) -> Outcome {
    let cat = match catalogue {
        Some(p) => load_catalogue(p)?,
        None => drivers::build_catalogue(DEFAULT_DEGREE_CAP, false)?,
    };
    let orders: Vec<usize> = orders.collect();
    let reports = verify::verify_orders(&orders, method, &cat, long)?;
    print!("{}", verify::render(&reports));
    let bad: Vec<usize> = reports
        .iter()
        .filter(|r| r.status == verify::Status::Mismatch)
        .map(|r| r.n)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("rows {bad:?} differ from the published table")))
    }
}
