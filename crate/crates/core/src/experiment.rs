//! Experiment tables: one `n k lambda mu strategy limit_s` row per line,
//! `#` starts a comment. Rows run independently, optionally in parallel.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use crate::encode::EncodeOptions;
use crate::params::SrgParams;
use crate::solve::{solve_and_verify, Backend, Status, Strategy};

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// 1-based line in the table file.
    pub line: usize,
    pub params: SrgParams,
    pub strategy: Strategy,
    pub limit: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub params: SrgParams,
    pub strategy: Strategy,
    pub status: Status,
    pub wall_time: Duration,
    pub comment: String,
}

impl ExperimentRow {
    pub fn csv_line(&self) -> String {
        let p = self.params;
        format!("{},{},{},{},{},{},{:.3}", p.n, p.k, p.lambda, p.mu, self.strategy, self.status, self.wall_time.as_secs_f64())
    }
}

pub const CSV_HEADER: &str = "n,k,lambda,mu,strategy,status,time_s";

fn parse_row(line: &str) -> Result<(SrgParams, Strategy, Duration), String> {
    let f: Vec<&str> = line.split_whitespace().collect();
    if f.len() != 6 {
        return Err(format!("expected 6 fields, found {}", f.len()));
    }
    let num = |i: usize, name: &str| f[i].parse::<u64>().map_err(|_| format!("{name}: not a number: {:?}", f[i]));
    let params = SrgParams::new(num(0, "n")?, num(1, "k")?, num(2, "lambda")?, num(3, "mu")?).map_err(|e| e.to_string())?;
    let strategy = f[4].parse::<Strategy>()?;
    let limit = f[5]
        .parse::<f64>()
        .ok()
        .filter(|t| t.is_finite() && *t > 0.0)
        .ok_or_else(|| format!("limit_s: expected a positive number, got {:?}", f[5]))?;
    Ok((params, strategy, Duration::from_secs_f64(limit)))
}

/// Parses a table; bad rows are collected rather than aborting.
pub fn parse_table(text: &str) -> (Vec<TableRow>, Vec<RowError>) {
    let (mut rows, mut errs) = (Vec::new(), Vec::new());
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        match parse_row(body) {
            Ok((params, strategy, limit)) => rows.push(TableRow { line: i + 1, params, strategy, limit }),
            Err(message) => errs.push(RowError { line: i + 1, message }),
        }
    }
    (rows, errs)
}

/// Runs one row. The row limit is handed to the backend; solver errors
/// become `unknown` with the error as comment.
pub fn run_row(row: &TableRow, backend: &Backend, opts: &EncodeOptions) -> ExperimentRow {
    let backend = match backend {
        Backend::Builtin { decision_limit, .. } => {
            Backend::Builtin { decision_limit: *decision_limit, time_limit: Some(row.limit) }
        }
        Backend::External(cfg) => {
            let mut cfg = cfg.clone();
            cfg.time_limit = row.limit;
            Backend::External(cfg)
        }
    };
    let start = std::time::Instant::now();
    match solve_and_verify(&row.params, row.strategy, &backend, opts) {
        Ok(o) => ExperimentRow {
            params: row.params,
            strategy: row.strategy,
            status: o.status,
            wall_time: o.wall_time,
            comment: o.note.unwrap_or_default(),
        },
        Err(e) => ExperimentRow {
            params: row.params,
            strategy: row.strategy,
            status: Status::Unknown,
            wall_time: start.elapsed(),
            comment: e.to_string(),
        },
    }
}

/// Runs all rows with at most `jobs` in flight; results keep table order.
pub fn run_table(rows: &[TableRow], backend: &Backend, opts: &EncodeOptions, jobs: usize) -> Vec<ExperimentRow> {
    let next = AtomicUsize::new(0);
    let out: Mutex<Vec<Option<ExperimentRow>>> = Mutex::new(vec![None; rows.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, rows.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(row) = rows.get(i) else { break };
                let r = run_row(row, backend, opts);
                out.lock().expect("no panics while holding the lock")[i] = Some(r);
            });
        }
    });
    out.into_inner().expect("threads joined").into_iter().map(|r| r.expect("every row ran")).collect()
}
