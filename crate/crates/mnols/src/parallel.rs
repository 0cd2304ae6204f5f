//! Deterministic partitioned runs with checkpoint and resume.
//!
//! The search is split into independent branches: one per second column for
//! Algorithms A and B, one per canonical second column for Algorithm C.
//! Workers pull branches from a shared cursor; results are merged in branch
//! order and class stores are sorted before emission, so the final output is
//! byte-identical for any worker count and schedule. A checkpoint file holds
//! one JSON line per completed branch and a resumed run skips those branches.

use crate::column::{CyclicColumn, Order};
use crate::enumerate::{
    branch_a, branch_b, branch_c, build_lists_c, candidate_columns, ClassStore, QuadCount,
};
use crate::error::{Error, Result};
use crate::list::MnolsList;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Which search a partitioned run executes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Algorithm {
    A,
    B,
    C,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::A => "a",
            Algorithm::B => "b",
            Algorithm::C => "c",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Algorithm::A),
            "b" => Ok(Algorithm::B),
            "c" => Ok(Algorithm::C),
            other => Err(Error::Parse(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Per-depth results of one full run: quadruples for Algorithm A, class
/// stores for B and C. Index `d` covers lists of `d + 2` squares.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TaskResult {
    Quads(Vec<QuadCount>),
    Stores(Vec<ClassStore>),
}

impl TaskResult {
    pub fn quads(&self) -> Option<&[QuadCount]> {
        match self {
            TaskResult::Quads(q) => Some(q),
            TaskResult::Stores(_) => None,
        }
    }

    pub fn stores(&self) -> Option<&[ClassStore]> {
        match self {
            TaskResult::Stores(s) => Some(s),
            TaskResult::Quads(_) => None,
        }
    }
}

/// One line of the checkpoint file: a branch key (column text) and the
/// branch's per-depth results in the same JSON shapes the CLI emits.
#[derive(Serialize, Deserialize)]
struct CheckpointLine {
    branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quads: Option<Vec<QuadCount>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stores: Option<Vec<ClassStore>>,
}

enum BranchOutput {
    Quads(Vec<QuadCount>),
    Stores(Vec<ClassStore>),
}

impl BranchOutput {
    fn to_line(&self, branch: &str) -> CheckpointLine {
        match self {
            BranchOutput::Quads(q) => CheckpointLine {
                branch: branch.to_string(),
                quads: Some(q.clone()),
                stores: None,
            },
            BranchOutput::Stores(s) => CheckpointLine {
                branch: branch.to_string(),
                quads: None,
                stores: Some(s.clone()),
            },
        }
    }
}

/// Load completed branches from a checkpoint file. A trailing line without a
/// newline is treated as a torn write and ignored; any other malformed line is
/// corruption.
fn load_checkpoint(path: &Path) -> Result<HashMap<String, BranchOutput>> {
    let mut map = HashMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(map),
        Err(e) => return Err(e.into()),
    };
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 {
            break;
        }
        if !line.ends_with('\n') {
            // Torn final write from an interrupted run; redo that branch.
            break;
        }
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let parsed: CheckpointLine = serde_json::from_str(trimmed)
            .map_err(|e| Error::CorruptCheckpoint(format!("{}: {e}", path.display())))?;
        let output = match (parsed.quads, parsed.stores) {
            (Some(q), None) => BranchOutput::Quads(q),
            (None, Some(s)) => BranchOutput::Stores(s),
            _ => {
                return Err(Error::CorruptCheckpoint(format!(
                    "{}: branch {} has neither quads nor stores",
                    path.display(),
                    parsed.branch
                )))
            }
        };
        if map.insert(parsed.branch.clone(), output).is_some() {
            return Err(Error::CorruptCheckpoint(format!(
                "{}: branch {} recorded twice",
                path.display(),
                parsed.branch
            )));
        }
    }
    Ok(map)
}

/// Configuration of a partitioned run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub n: usize,
    pub mu: usize,
    pub algorithm: Algorithm,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
}

impl RunConfig {
    pub fn new(n: usize, mu: usize, algorithm: Algorithm) -> Self {
        RunConfig {
            n,
            mu,
            algorithm,
            workers: 1,
            checkpoint: None,
            resume: false,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_checkpoint(mut self, path: Option<PathBuf>, resume: bool) -> Self {
        self.checkpoint = path;
        self.resume = resume;
        self
    }
}

struct Shared<'a> {
    order: Order,
    mu: usize,
    algorithm: Algorithm,
    branches: &'a [CyclicColumn],
    list2: &'a [CyclicColumn],
    cursor: AtomicUsize,
    results: Mutex<Vec<Option<BranchOutput>>>,
    writer: Option<Mutex<File>>,
}

impl Shared<'_> {
    fn run_branch(&self, column: &CyclicColumn) -> BranchOutput {
        match self.algorithm {
            Algorithm::A => BranchOutput::Quads(branch_a(self.order, self.mu, column)),
            Algorithm::B => BranchOutput::Stores(branch_b(self.order, self.mu, column)),
            Algorithm::C => {
                BranchOutput::Stores(branch_c(self.order, self.mu, column, self.list2))
            }
        }
    }

    fn work(&self) -> Result<()> {
        loop {
            let idx = self.cursor.fetch_add(1, Ordering::Relaxed);
            if idx >= self.branches.len() {
                return Ok(());
            }
            let column = &self.branches[idx];
            let output = self.run_branch(column);
            if let Some(writer) = &self.writer {
                let line = serde_json::to_string(&output.to_line(&column.to_string()))?;
                let mut guard = writer.lock().expect("checkpoint writer poisoned");
                writeln!(guard, "{line}")?;
                guard.flush()?;
            }
            self.results.lock().expect("results poisoned")[idx] = Some(output);
        }
    }
}

/// Run the configured algorithm, partitioned by top-level branch, and merge
/// deterministically.
pub fn run_partitioned(config: &RunConfig) -> Result<TaskResult> {
    if config.mu < 2 {
        return Err(Error::Parse(format!(
            "mu must be at least 2, got {}",
            config.mu
        )));
    }
    let order = Order::new(config.n)?;
    let identity = CyclicColumn::identity(order);

    let (branches, list2): (Vec<CyclicColumn>, Vec<CyclicColumn>) = match config.algorithm {
        Algorithm::A | Algorithm::B => (
            candidate_columns(std::slice::from_ref(&identity)).collect(),
            Vec::new(),
        ),
        Algorithm::C => {
            let lists = build_lists_c(order);
            (lists.list1, lists.list2)
        }
    };

    let mut completed: HashMap<String, BranchOutput> = HashMap::new();
    if let Some(path) = &config.checkpoint {
        if config.resume {
            completed = load_checkpoint(path)?;
            let known: std::collections::HashSet<String> =
                branches.iter().map(|b| b.to_string()).collect();
            for key in completed.keys() {
                if !known.contains(key) {
                    return Err(Error::CorruptCheckpoint(format!(
                        "{}: branch {key} does not belong to this run",
                        path.display()
                    )));
                }
            }
        } else if path.exists() {
            std::fs::remove_file(path)?;
        }
    }

    let writer = match &config.checkpoint {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            let file = OpenOptions::new().create(true).append(true).open(path)?;
            Some(Mutex::new(file))
        }
        None => None,
    };

    let mut results: Vec<Option<BranchOutput>> = Vec::with_capacity(branches.len());
    let mut pending: Vec<CyclicColumn> = Vec::new();
    let mut pending_slots: Vec<usize> = Vec::new();
    for (i, b) in branches.iter().enumerate() {
        match completed.remove(&b.to_string()) {
            Some(done) => results.push(Some(done)),
            None => {
                results.push(None);
                pending.push(b.clone());
                pending_slots.push(i);
            }
        }
    }

    let shared = Shared {
        order,
        mu: config.mu,
        algorithm: config.algorithm,
        branches: &pending,
        list2: &list2,
        cursor: AtomicUsize::new(0),
        results: Mutex::new(pending.iter().map(|_| None).collect()),
        writer,
    };

    let workers = config.workers.max(1).min(pending.len().max(1));
    if workers <= 1 {
        shared.work()?;
    } else {
        std::thread::scope(|scope| -> Result<()> {
            let mut handles = Vec::new();
            for _ in 0..workers {
                handles.push(scope.spawn(|| shared.work()));
            }
            for h in handles {
                h.join()
                    .map_err(|_| Error::WorkerFailed("worker panicked".into()))??;
            }
            Ok(())
        })?;
    }

    let fresh = shared.results.into_inner().expect("results poisoned");
    for (slot, output) in pending_slots.into_iter().zip(fresh) {
        results[slot] = Some(output.ok_or_else(|| Error::WorkerFailed("missing branch".into()))?);
    }

    merge(results, config)
}

fn merge(results: Vec<Option<BranchOutput>>, config: &RunConfig) -> Result<TaskResult> {
    let depths = config.mu - 1;
    match config.algorithm {
        Algorithm::A => {
            let mut quads = vec![QuadCount::default(); depths];
            for r in results {
                match r {
                    Some(BranchOutput::Quads(q)) if q.len() == depths => {
                        for (acc, q) in quads.iter_mut().zip(&q) {
                            acc.add(q);
                        }
                    }
                    _ => return Err(Error::CorruptCheckpoint("branch shape mismatch".into())),
                }
            }
            Ok(TaskResult::Quads(quads))
        }
        Algorithm::B | Algorithm::C => {
            let mut stores = vec![ClassStore::new(); depths];
            for r in results {
                match r {
                    Some(BranchOutput::Stores(s)) if s.len() == depths => {
                        for (acc, s) in stores.iter_mut().zip(s) {
                            acc.merge(s);
                        }
                    }
                    _ => return Err(Error::CorruptCheckpoint("branch shape mismatch".into())),
                }
            }
            for s in &mut stores {
                s.finalize()?;
            }
            Ok(TaskResult::Stores(stores))
        }
    }
}

/// Classes of every list in the store must re-validate; used as a final guard
/// by callers that persist stores.
pub fn validate_store(stores: &[ClassStore]) -> Result<()> {
    for s in stores {
        for r in s.records() {
            let _ = MnolsList::new(r.columns.columns().to_vec())?;
        }
    }
    Ok(())
}
