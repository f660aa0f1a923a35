//! Batch scans over ranges of `(n, q)`.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use cqdef_core::chains::enumerate_k;
use cqdef_core::fibers::is_smoothing;
use cqdef_core::{all_deformations, valid_models, Error, Model, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: i64,
    pub q: i64,
    pub e: Option<usize>,
    pub k_count: Option<usize>,
    pub deformations: Option<usize>,
    pub smoothings: Option<usize>,
    pub t_singularity: Option<bool>,
    /// Set when the row could not be computed; the other fields are empty.
    pub error: Option<String>,
}

fn compute(n: i64, q: i64) -> Result<ScanRow> {
    let m = Model::from_i64(n, q)?;
    let defs = all_deformations(&m)?;
    let mut smoothings = 0;
    for d in &defs {
        if is_smoothing(d)? {
            smoothings += 1;
        }
    }
    Ok(ScanRow {
        n,
        q,
        e: Some(m.e()),
        k_count: Some(enumerate_k(m.a_chain()).len()),
        deformations: Some(defs.len()),
        smoothings: Some(smoothings),
        t_singularity: Some(m.is_t_singularity()),
        error: None,
    })
}

pub fn scan_row(n: i64, q: i64) -> ScanRow {
    compute(n, q).unwrap_or_else(|err| ScanRow {
        n,
        q,
        e: None,
        k_count: None,
        deformations: None,
        smoothings: None,
        t_singularity: None,
        error: Some(err.to_string()),
    })
}

/// Parse `A:B` (inclusive). `A > B` is an empty range.
pub fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || Error::InvalidInput(format!("range {s:?} is not of the form A:B"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    Ok(a..=b)
}

fn load_checkpoint(path: &Path) -> std::io::Result<BTreeMap<(i64, i64), ScanRow>> {
    let mut done = BTreeMap::new();
    if !path.exists() {
        return Ok(done);
    }
    for line in BufReader::new(File::open(path)?).lines() {
        let line = line?;
        // a torn last line from an interrupted run is recomputed
        if let Ok(row) = serde_json::from_str::<ScanRow>(&line) {
            done.insert((row.n, row.q), row);
        }
    }
    Ok(done)
}

/// Scan every valid `(n, q)` with `n` in `n_range` and, if given, `q` in
/// `q_range`. Rows are computed in parallel per `n` and emitted in order.
/// With a checkpoint file, finished rows are appended as JSON lines and
/// reused on the next run.
pub fn scan(
    n_range: RangeInclusive<i64>,
    q_range: Option<RangeInclusive<i64>>,
    checkpoint: Option<&Path>,
) -> std::io::Result<Vec<ScanRow>> {
    let lo = (*n_range.start()).max(3);
    let models: Vec<(i64, i64)> = valid_models(lo..=*n_range.end())
        .into_iter()
        .filter(|(_, q)| q_range.as_ref().is_none_or(|r| r.contains(q)))
        .collect();
    let mut done = match checkpoint {
        Some(p) => load_checkpoint(p)?,
        None => BTreeMap::new(),
    };
    let mut sink = match checkpoint {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    let mut by_n: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &(n, q) in &models {
        if !done.contains_key(&(n, q)) {
            by_n.entry(n).or_default().push(q);
        }
    }
    for (n, qs) in by_n {
        let rows: Vec<ScanRow> = qs.par_iter().map(|&q| scan_row(n, q)).collect();
        for row in rows {
            if let Some(err) = &row.error {
                eprintln!("warning: ({}, {}): {err}", row.n, row.q);
            }
            if let Some(f) = sink.as_mut() {
                writeln!(f, "{}", serde_json::to_string(&row).expect("row serializes"))?;
            }
            done.insert((row.n, row.q), row);
        }
        if let Some(f) = sink.as_mut() {
            f.flush()?;
        }
    }
    Ok(models.iter().map(|k| done[k].clone()).collect())
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["n", "q", "e", "k_count", "deformations", "smoothings", "t_singularity", "error"])
        .expect("in-memory writer");
    for r in rows {
        w.serialize(r).expect("row serializes");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
}

pub fn to_json(rows: &[ScanRow]) -> String {
    serde_json::to_string_pretty(rows).expect("rows serialize")
}
