//! Command-line front end: enumerate counts, verify results against expected
//! table data, and classify user-supplied lists.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
//! 3 checkpoint corruption, 4 internal consistency failure.

use clap::{Args, Parser, Subcommand};
use mnols::canonical::{
    canonical_form, classify_type, find_row_intercalates, is_list_reduced, is_set_canonical,
    stabilizer_counts,
};
use mnols::counting::{aggregate, consistency_check, table_from_quad, CountTable};
use mnols::enumerate::ClassStore;
use mnols::error::Error;
use mnols::parallel::{run_partitioned, Algorithm, RunConfig, TaskResult};
use mnols::report::{from_json, to_csv, to_json, Document};
use mnols::{is_mnols_list, CyclicColumn, MnolsList, Order};
use num_bigint::BigUint;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CHECKPOINT: u8 = 3;
const EXIT_CONSISTENCY: u8 = 4;

#[derive(Parser)]
#[command(
    name = "mnols",
    about = "Enumerate and classify lists and sets of cyclic mutually nearly orthogonal Latin squares",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the enumeration algorithms and write count tables
    Enumerate(EnumerateArgs),
    /// Compare a results file against expected table data
    Verify {
        /// JSON results produced by `enumerate --format json`
        results: PathBuf,
        /// Expected-value file (see data/expected_tables.json)
        expected: PathBuf,
    },
    /// Validate and classify a list of columns, e.g. "0,1,2,3;1,3,0,2"
    Classify {
        /// Columns of the squares, ';'-separated, entries ','-separated
        list: String,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    /// Even order of the squares
    #[arg(long)]
    n: usize,
    /// Number of squares per list (at least 2); depths 2..=mu are reported
    #[arg(long)]
    mu: usize,
    /// a, b, c, or all (run every algorithm and cross-check)
    #[arg(long, default_value = "all")]
    algorithm: String,
    /// Worker threads
    #[arg(long, env = "MNOLS_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Directory for per-branch checkpoint files
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Skip branches already recorded in the checkpoint
    #[arg(long)]
    resume: bool,
    /// Output file (stdout when omitted)
    #[arg(long)]
    output: Option<PathBuf>,
    /// json or csv
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Verify { results, expected } => cmd_verify(&results, &expected),
        Command::Classify { list } => cmd_classify(&list),
    };
    match code {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::CorruptCheckpoint(_) => EXIT_CHECKPOINT,
        Error::CorruptStabilizer(_) => EXIT_CONSISTENCY,
        _ => EXIT_USAGE,
    }
}

fn checkpoint_file(dir: &Path, algorithm: Algorithm, n: usize, mu: usize) -> PathBuf {
    dir.join(format!("{}_n{n}_mu{mu}.jsonl", algorithm.name()))
}

fn run_one(args: &EnumerateArgs, algorithm: Algorithm) -> Result<TaskResult, u8> {
    let checkpoint = args
        .checkpoint
        .as_ref()
        .map(|dir| checkpoint_file(dir, algorithm, args.n, args.mu));
    let config = RunConfig::new(args.n, args.mu, algorithm)
        .with_workers(args.workers)
        .with_checkpoint(checkpoint, args.resume);
    run_partitioned(&config).map_err(|e| {
        eprintln!("error: {e}");
        exit_for(&e)
    })
}

fn tables_for_stores(
    stores: &[ClassStore],
    order: Order,
) -> Result<Vec<(CountTable, &ClassStore)>, u8> {
    stores
        .iter()
        .enumerate()
        .map(|(idx, s)| match aggregate(s, order, idx + 2) {
            Ok(t) => Ok((t, s)),
            Err(e) => {
                eprintln!("error: {e}");
                Err(exit_for(&e))
            }
        })
        .collect()
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<(), u8> {
    let order = Order::new(args.n).map_err(|e| usage_error(&e.to_string()))?;
    if args.mu < 2 {
        return Err(usage_error(&format!(
            "mu must be at least 2, got {}",
            args.mu
        )));
    }
    if args.workers < 1 {
        return Err(usage_error("workers must be at least 1"));
    }
    let format = args.format.to_ascii_lowercase();
    if format != "json" && format != "csv" {
        return Err(usage_error(&format!("unknown format {:?}", args.format)));
    }

    let algo = args.algorithm.to_ascii_lowercase();
    let docs: Vec<Document> = match algo.as_str() {
        "a" => {
            let run = run_one(args, Algorithm::A)?;
            let quads = run.quads().expect("algorithm a yields quadruples");
            quads
                .iter()
                .enumerate()
                .map(|(idx, q)| {
                    table_from_quad(q, order, idx + 2)
                        .map(|t| Document::new(&t, None, "a"))
                        .map_err(|e| {
                            eprintln!("error: {e}");
                            exit_for(&e)
                        })
                })
                .collect::<Result<_, u8>>()?
        }
        "b" | "c" => {
            let kind = if algo == "b" { Algorithm::B } else { Algorithm::C };
            let run = run_one(args, kind)?;
            let stores = run.stores().expect("class algorithms yield stores");
            tables_for_stores(stores, order)?
                .into_iter()
                .map(|(t, s)| Document::new(&t, Some(s), kind.name()))
                .collect()
        }
        "all" => {
            let run_a = run_one(args, Algorithm::A)?;
            let run_b = run_one(args, Algorithm::B)?;
            let run_c = run_one(args, Algorithm::C)?;
            let quads = run_a.quads().expect("algorithm a yields quadruples");
            let stores_b = run_b.stores().expect("class algorithms yield stores");
            let stores_c = run_c.stores().expect("class algorithms yield stores");
            let mut docs = Vec::new();
            for (idx, (b, c)) in stores_b.iter().zip(stores_c).enumerate() {
                let mu = idx + 2;
                if b != c {
                    eprintln!(
                        "error: depth-first and clique-search stores disagree at n={} mu={mu}",
                        args.n
                    );
                    return Err(EXIT_CONSISTENCY);
                }
                let t = aggregate(b, order, mu).map_err(|e| {
                    eprintln!("error: {e}");
                    exit_for(&e)
                })?;
                let report = consistency_check(&t, &quads[idx]);
                if !report.pass() {
                    for entry in report.entries.iter().filter(|e| !e.pass) {
                        eprintln!(
                            "error: algorithms disagree at n={} mu={mu}: {} ({})",
                            args.n, entry.name, entry.detail
                        );
                    }
                    return Err(EXIT_CONSISTENCY);
                }
                docs.push(Document::new(&t, Some(b), "all"));
            }
            docs
        }
        other => return Err(usage_error(&format!("unknown algorithm {other:?}"))),
    };

    let rendered = if format == "json" {
        to_json(&docs).map_err(|e| {
            eprintln!("error: {e}");
            exit_for(&e)
        })?
    } else {
        to_csv(&docs)
    };
    match &args.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            EXIT_USAGE
        })?,
        None => println!("{rendered}"),
    }
    Ok(())
}

#[derive(Deserialize)]
struct ExpectedFile {
    tables: Vec<ExpectedTable>,
    #[serde(default)]
    distributions: Vec<ExpectedDistribution>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ExpectedTable {
    #[allow(dead_code)]
    table: u32,
    n: usize,
    mu: usize,
    set_isotopy: u64,
    set_reduced: u64,
    list_isotopy: u64,
    list_reduced: u64,
}

#[derive(Deserialize)]
struct ExpectedDistribution {
    #[allow(dead_code)]
    table: u32,
    n: usize,
    mu: usize,
    rows: Vec<ExpectedDistRow>,
}

#[derive(Deserialize)]
struct ExpectedDistRow {
    is_s: u64,
    is_l: u64,
    red_s: u64,
    #[serde(rename = "type")]
    ty: u8,
    count: u64,
}

fn factorial(k: usize) -> BigUint {
    let mut f = BigUint::from(1u32);
    for i in 2..=k {
        f *= BigUint::from(i);
    }
    f
}

fn cmd_verify(results_path: &Path, expected_path: &Path) -> Result<(), u8> {
    let results_text = std::fs::read_to_string(results_path)
        .map_err(|e| usage_error(&format!("cannot read {}: {e}", results_path.display())))?;
    let docs = from_json(&results_text)
        .map_err(|e| usage_error(&format!("cannot parse {}: {e}", results_path.display())))?;
    let expected_text = std::fs::read_to_string(expected_path)
        .map_err(|e| usage_error(&format!("cannot read {}: {e}", expected_path.display())))?;
    let expected: ExpectedFile = serde_json::from_str(&expected_text)
        .map_err(|e| usage_error(&format!("cannot parse {}: {e}", expected_path.display())))?;

    let mut mismatches = 0usize;
    let mut compared = 0usize;
    let mut check = |name: &str, n: usize, mu: usize, want: &str, got: &str| {
        compared += 1;
        if want != got {
            mismatches += 1;
            println!("MISMATCH n={n} mu={mu} {name}: expected {want}, got {got}");
        }
    };

    for doc in &docs {
        let Some(exp) = expected
            .tables
            .iter()
            .find(|t| t.n == doc.n && t.mu == doc.mu)
        else {
            println!("SKIP n={} mu={}: no expected data", doc.n, doc.mu);
            continue;
        };
        check(
            "set-isotopy",
            doc.n,
            doc.mu,
            &exp.set_isotopy.to_string(),
            &doc.tables.set_isotopy.to_string(),
        );
        check(
            "set-reduced",
            doc.n,
            doc.mu,
            &exp.set_reduced.to_string(),
            &doc.tables.set_reduced.to_string(),
        );
        check(
            "list-isotopy",
            doc.n,
            doc.mu,
            &exp.list_isotopy.to_string(),
            &doc.tables.list_isotopy.to_string(),
        );
        check(
            "list-reduced",
            doc.n,
            doc.mu,
            &exp.list_reduced.to_string(),
            &doc.tables.list_reduced.to_string(),
        );
        let sets = BigUint::from(exp.list_reduced) * factorial(doc.n) / factorial(doc.mu);
        let lists = BigUint::from(exp.list_reduced) * factorial(doc.n);
        check(
            "set-classes",
            doc.n,
            doc.mu,
            &sets.to_string(),
            &doc.tables.set_classes,
        );
        check(
            "list-classes",
            doc.n,
            doc.mu,
            &lists.to_string(),
            &doc.tables.list_classes,
        );

        if let Some(dist) = expected
            .distributions
            .iter()
            .find(|d| d.n == doc.n && d.mu == doc.mu)
        {
            if doc.distribution.is_empty() {
                println!(
                    "SKIP n={} mu={} distribution: results carry no class data",
                    doc.n, doc.mu
                );
            } else {
                let got: BTreeMap<(u64, u64, u64, u8), u64> = doc
                    .distribution
                    .iter()
                    .map(|r| ((r.is_s, r.is_l, r.red_s, r.ty), r.count))
                    .collect();
                let want: BTreeMap<(u64, u64, u64, u8), u64> = dist
                    .rows
                    .iter()
                    .map(|r| ((r.is_s, r.is_l, r.red_s, r.ty), r.count))
                    .collect();
                check(
                    "distribution",
                    doc.n,
                    doc.mu,
                    &format!("{want:?}"),
                    &format!("{got:?}"),
                );
            }
        }
    }

    if mismatches > 0 {
        println!("{mismatches} mismatching field(s) out of {compared} compared");
        Err(EXIT_MISMATCH)
    } else {
        println!("all {compared} compared fields match");
        Ok(())
    }
}

fn cmd_classify(text: &str) -> Result<(), u8> {
    let columns: Vec<CyclicColumn> = text
        .split(';')
        .map(|t| t.trim().parse::<CyclicColumn>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage_error(&e.to_string()))?;
    if columns.is_empty() {
        return Err(usage_error("empty list"));
    }
    let n = columns[0].order().n();
    if columns.iter().any(|c| c.order().n() != n) {
        return Err(usage_error("columns have differing orders"));
    }

    println!("order n = {n}, mu = {}", columns.len());
    if !is_mnols_list(&columns) {
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                if !mnols::nearly_orthogonal(&columns[i], &columns[j]).expect("orders equal") {
                    println!(
                        "not a valid collection: squares {} and {} are not nearly orthogonal",
                        i + 1,
                        j + 1
                    );
                }
            }
        }
        return Ok(());
    }
    let list = MnolsList::new(columns).expect("pairwise condition just checked");
    println!("valid collection of {} cyclic MNOLS", list.mu());
    println!("list-reduced: {}", is_list_reduced(&list));
    let canon = canonical_form(&list);
    let canonical_already = is_list_reduced(&list) && is_set_canonical(&list);
    println!("set-canonical: {canonical_already}");
    println!("canonical form: {canon}");
    let sc = stabilizer_counts(&canon);
    println!(
        "autotopy group sizes: is_s = {}, is_l = {}, red_s = {}",
        sc.is_s, sc.is_l, sc.red_s
    );
    println!("type: {}", classify_type(&canon).as_u8());
    let intercalates = find_row_intercalates(&list);
    if intercalates.is_empty() {
        println!("row-intercalates: none");
    } else {
        println!("row-intercalates:");
        for ic in intercalates {
            println!(
                "  squares ({}, {}) rows ({}, {}): difference {}, symbol delta {}",
                ic.square_a, ic.square_b, ic.row, ic.row_prime, ic.difference, ic.symbol_delta
            );
        }
    }
    Ok(())
}
