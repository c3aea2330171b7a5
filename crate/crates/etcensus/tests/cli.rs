use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use etcensus::graph6;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_etcensus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_with_input(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("etcensus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn census_of_order_one() {
    let o = run(&["census", "--order", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "@\n");
}

#[test]
fn census_of_order_eight_with_sidecars() {
    let csv = scratch("census8.csv");
    let table = scratch("census8-table.csv");
    let o = run(&[
        "census",
        "--order",
        "8",
        "--out-csv",
        csv.to_str().unwrap(),
        "--out-table",
        table.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 8);
    for l in &lines {
        let g = graph6::decode(l).unwrap();
        assert_eq!(&graph6::encode(&g).unwrap(), l);
    }
    assert_eq!(
        std::fs::read_to_string(&table).unwrap(),
        "n,Tot,Reg,Bpte,VT,AT,Wthy\n8,8,5,6,5,5,3\n"
    );
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("n,graph6,connected,regular,bipartite,worthy,vt,et,at,hat,semisym,aut_order\n"));
    assert_eq!(rows.lines().count(), 9);
}

#[test]
fn census_is_deterministic_across_worker_counts() {
    let one = run(&["census", "--orders", "2..7", "--workers", "1"]);
    let four = run(&["census", "--orders", "2..7", "--workers", "4"]);
    let default = run(&["census", "--orders", "2..7"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout, default.stdout);
    assert_eq!(stdout(&one).lines().count(), 1 + 2 + 3 + 4 + 6 + 5);
}

#[test]
fn bipartite_only_order_fourteen() {
    let o = run(&["census", "--bipartite-only", "--order", "14"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);
}

#[test]
fn census_exit_codes() {
    let o = run(&["census", "--order", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("catalogue build --max-degree 10 --long"));

    let o = run(&["census", "--order", "12"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["census", "--bipartite-only", "--order", "22"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("(11, 11)"), "{}", stderr(&o));

    let o = run(&["census", "--order", "5", "--catalogue", "/nonexistent/cat.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("catalogue build"));

    assert_eq!(run(&["census"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--order", "3", "--orders", "1..4"]).status.code(), Some(1));
    assert_eq!(run(&["census", "--orders", "5..2"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn census_with_catalogue_file() {
    let path = scratch("cat6.txt");
    let o = run(&["catalogue", "build", "--max-degree", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["census", "--order", "6", "--catalogue", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["census", "--order", "7", "--catalogue", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_known_graphs() {
    let o = run_with_input(&["classify"], "IsP@OkWHG\nA_\n");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1], "10,IsP@OkWHG,1,1,0,1,1,1,1,0,0,120");
    assert_eq!(lines[2], "2,A_,1,1,1,1,1,1,1,0,0,2");
}

#[test]
fn classify_edge_cases() {
    let o = run_with_input(&["classify"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    let o = run_with_input(&["classify"], "A_\nA~~\n@\n");
    assert_ne!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("line 2"));
    assert_eq!(stdout(&o).lines().count(), 3);

    let path = scratch("k2.g6");
    std::fs::write(&path, ">>graph6<<A_\n").unwrap();
    let o = run(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2,A_,"));
}

#[test]
fn construct_reports() {
    let o = run(&["construct", "folkman", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in ["order: 36\n", "valency: 12\n", "semisym: 1\n", "worthy: 0\n", "ratio d/n: 2/3\n"] {
        assert!(out.contains(needle), "missing {needle:?} in\n{out}");
    }
    let g6 = out.lines().find_map(|l| l.strip_prefix("graph6: ")).unwrap();
    assert_eq!(graph6::decode(g6).unwrap().order(), 36);

    let o = run(&["construct", "gq", "--q", "3", "--complement"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for needle in ["order: 80\n", "valency: 36\n", "worthy: 1\n", "semisym: 1\n", "aut_order: 51840\n"] {
        assert!(out.contains(needle), "missing {needle:?} in\n{out}");
    }

    let path = scratch("levi.txt");
    let o = run(&[
        "construct", "gq", "--q", "3", "--format", "edgelist", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let levi = etcensus::edgelist::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((levi.order(), levi.edge_count()), (80, 160));

    assert_eq!(run(&["construct", "folkman", "--k", "2"]).status.code(), Some(1));
    assert_eq!(run(&["construct", "gq", "--q", "4"]).status.code(), Some(1));
}

#[test]
fn catalogue_build_and_verify() {
    let o = run(&["catalogue", "build", "--max-degree", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "degree 5: 5 groups\ndegree 4: 5 groups\ndegree 3: 2 groups\ndegree 2: 1 groups\ndegree 1: 1 groups\n"
    );

    let path = scratch("cat5.txt");
    run(&["catalogue", "build", "--max-degree", "5", "--out", path.to_str().unwrap()]);
    let o = run(&["catalogue", "verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("ok\n"));

    let text = std::fs::read_to_string(&path).unwrap();
    let broken = scratch("cat5-broken.txt");
    std::fs::write(&broken, text.replacen("ORDER 24", "ORDER 25", 1)).unwrap();
    let o = run(&["catalogue", "verify", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("entry 4."));

    assert_eq!(run(&["catalogue", "verify", "/nonexistent/cat.txt"]).status.code(), Some(2));
    assert_eq!(run(&["catalogue", "build", "--max-degree", "9"]).status.code(), Some(3));
    assert_eq!(run(&["catalogue", "build", "--max-degree", "11", "--long"]).status.code(), Some(3));
}

#[test]
fn verify_table_rows() {
    let o = run(&["verify-table", "--orders", "1..8"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("  MATCH").count(), 8);

    let o = run(&["verify-table", "--orders", "11..11", "--method", "bipartite"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("5/5"));

    let o = run(&["verify-table", "--orders", "47..48"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("SKIPPED").count(), 2);
}

#[test]
fn verify_table_reports_mismatch() {
    let path = scratch("cat6-truncated.txt");
    run(&["catalogue", "build", "--max-degree", "6", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let cut = text.find("DEGREE 6 INDEX 1").unwrap();
    std::fs::write(&path, &text[..cut]).unwrap();
    let o = run(&["verify-table", "--orders", "6..6", "--catalogue", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn oracle_command() {
    let path = scratch("et6.csv");
    let o = run(&["oracle", "--n", "6", "--emit-et", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("connected graphs: 112\n"));
    assert!(out.contains("6,6,4,4,4,4,2\n"));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 7);
    assert_eq!(run(&["oracle", "--n", "10"]).status.code(), Some(3));
    assert_eq!(run(&["oracle", "--n", "11", "--long"]).status.code(), Some(3));
}

#[test]
fn census_of_order_ten_with_long_catalogue() {
    if std::env::var_os("ETCENSUS_LONG").is_none() {
        eprintln!("skipped: set ETCENSUS_LONG=1");
        return;
    }
    let o = run(&["census", "--order", "10", "--long"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 13);
}
