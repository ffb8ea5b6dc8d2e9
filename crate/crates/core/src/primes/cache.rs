//! Version-tagged CSV cache of checkpoint prefix sums. Compensated sums are
//! stored as their two binary64 components so a reload is bit-exact.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};

use super::accum::{PrimeAccumulator, PrimePowerAccumulator, Span};
use super::checkpoint::PrefixSums;

pub const CACHE_VERSION: &str = "primint-checkpoints v1";

const PRIME_FIELDS: [&str; 5] = ["sum_log", "sum_inv", "sum_log_over_p", "sum_inv_logp1", "sum_p_log"];
const POWER_FIELDS: [&str; 5] =
    ["pp_sum_log", "pp_sum_pm_log", "pp_sum_log_over_pm", "pp_sum_inv_m", "pp_sum_pm_over_m"];

fn header() -> Vec<String> {
    let mut h = vec!["x".to_string(), "n".into(), "count".into(), "sum_p".into()];
    for f in PRIME_FIELDS {
        h.push(format!("{f}_hi"));
        h.push(format!("{f}_lo"));
    }
    h.push("pp_count".into());
    for f in POWER_FIELDS {
        h.push(format!("{f}_hi"));
        h.push(format!("{f}_lo"));
    }
    h
}

fn push_sum(rec: &mut Vec<String>, s: &CompensatedSum) {
    rec.push(format!("{:?}", s.sum));
    rec.push(format!("{:?}", s.comp));
}

pub fn write_checkpoints(path: &Path, rows: &[PrefixSums]) -> Result<()> {
    let mut file = File::create(path)?;
    writeln!(file, "# {CACHE_VERSION}")?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header())?;
    for ps in rows {
        let p = &ps.primes;
        let q = &ps.powers;
        let mut rec = vec![format!("{:?}", ps.x), ps.n().to_string(), p.count.to_string(), p.sum_p.to_string()];
        for s in [&p.sum_log, &p.sum_inv, &p.sum_log_over_p, &p.sum_inv_logp1, &p.sum_p_log] {
            push_sum(&mut rec, s);
        }
        rec.push(q.count.to_string());
        for s in [&q.sum_log, &q.sum_pm_log, &q.sum_log_over_pm, &q.sum_inv_m, &q.sum_pm_over_m] {
            push_sum(&mut rec, s);
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    rec.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Cache(format!("row {line}: bad field {i}")))
}

pub fn read_checkpoints(path: &Path) -> Result<Vec<PrefixSums>> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut first = String::new();
    reader.read_line(&mut first)?;
    if first.trim_end() != format!("# {CACHE_VERSION}") {
        return Err(Error::Cache(format!("unsupported cache header `{}`", first.trim_end())));
    }
    let mut r = csv::Reader::from_reader(reader);
    if r.headers()?.iter().ne(header().iter().map(String::as_str)) {
        return Err(Error::Cache("column layout mismatch".into()));
    }
    let mut out = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = row as u64 + 3;
        let sum = |i: usize| -> Result<CompensatedSum> {
            Ok(CompensatedSum { sum: field(&rec, i, line)?, comp: field(&rec, i + 1, line)? })
        };
        let x: f64 = field(&rec, 0, line)?;
        let n: u64 = field(&rec, 1, line)?;
        if x.floor() as u64 != n {
            return Err(Error::Cache(format!("row {line}: floor({x}) != {n}")));
        }
        let span = Span::new(2, n + 1);
        let primes = PrimeAccumulator {
            span,
            count: field(&rec, 2, line)?,
            sum_p: field(&rec, 3, line)?,
            sum_log: sum(4)?,
            sum_inv: sum(6)?,
            sum_log_over_p: sum(8)?,
            sum_inv_logp1: sum(10)?,
            sum_p_log: sum(12)?,
        };
        let powers = PrimePowerAccumulator {
            span,
            count: field(&rec, 14, line)?,
            sum_log: sum(15)?,
            sum_pm_log: sum(17)?,
            sum_log_over_pm: sum(19)?,
            sum_inv_m: sum(21)?,
            sum_pm_over_m: sum(23)?,
        };
        out.push(PrefixSums { x, primes, powers });
    }
    Ok(out)
}
