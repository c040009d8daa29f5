//! Line-delimited JSON result records with checkpoint and resume.
//!
//! A record file holds one JSON object per line. Files are only ever
//! appended to; when the same `(n, measure)` appears twice the later line
//! wins. A torn final line (no trailing newline, not valid JSON) is what a
//! crash mid-write leaves behind, and is skipped with a warning.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use log::{info, warn};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::arith::{factor, Factorization};
use crate::error::{Error, Result};
use crate::search::{compute, Measure, Method, SearchOptions, SearchResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecordLine {
    pub schema_version: u32,
    pub n: u64,
    pub factorization: String,
    pub measure: Measure,
    /// Absent for skipped entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    /// Why no value was computed (e.g. divisor budget).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    pub witness_count: u64,
    pub witnesses: Vec<Vec<u64>>,
    pub escalated: bool,
    pub nodes_visited: u64,
    pub elapsed_ms: u64,
    pub tool_version: String,
    /// Fields written by other versions, kept verbatim.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl RecordLine {
    pub fn from_result(r: &SearchResult) -> Self {
        RecordLine {
            schema_version: SCHEMA_VERSION,
            n: r.n,
            factorization: r.factorization.to_string(),
            measure: r.measure,
            value: Some(r.value),
            skipped: None,
            method: Some(r.method),
            witness_count: r.witness_total,
            witnesses: r.witnesses.clone(),
            escalated: r.escalated,
            nodes_visited: r.nodes_visited,
            elapsed_ms: r.elapsed.as_millis() as u64,
            tool_version: TOOL_VERSION.to_string(),
            extra: Map::new(),
        }
    }

    pub fn skipped(n: u64, factorization: &Factorization, measure: Measure, reason: String) -> Self {
        RecordLine {
            schema_version: SCHEMA_VERSION,
            n,
            factorization: factorization.to_string(),
            measure,
            value: None,
            skipped: Some(reason),
            method: None,
            witness_count: 0,
            witnesses: Vec::new(),
            escalated: false,
            nodes_visited: 0,
            elapsed_ms: 0,
            tool_version: TOOL_VERSION.to_string(),
            extra: Map::new(),
        }
    }

    pub fn key(&self) -> (u64, Measure) {
        (self.n, self.measure)
    }
}

/// One JSON object, no trailing newline.
pub fn emit_record(r: &RecordLine) -> String {
    serde_json::to_string(r).expect("records always serialize")
}

fn field_err(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn take<T: serde::de::DeserializeOwned>(obj: &mut Map<String, Value>, line: usize, field: &str) -> Result<T> {
    let v = obj.remove(field).ok_or_else(|| field_err(line, field, "missing"))?;
    serde_json::from_value(v).map_err(|e| field_err(line, field, e.to_string()))
}

fn take_opt<T: serde::de::DeserializeOwned>(
    obj: &mut Map<String, Value>,
    line: usize,
    field: &str,
) -> Result<Option<T>> {
    match obj.remove(field) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v)
            .map(Some)
            .map_err(|e| field_err(line, field, e.to_string())),
    }
}

/// Parse one record. `line` is only used in error messages.
pub fn parse_record(text: &str, line: usize) -> Result<RecordLine> {
    let value: Value = serde_json::from_str(text).map_err(|e| field_err(line, "<line>", e.to_string()))?;
    let Value::Object(mut obj) = value else {
        return Err(field_err(line, "<line>", "not a JSON object"));
    };
    let schema_version: u32 = take(&mut obj, line, "schema_version")?;
    if schema_version > SCHEMA_VERSION {
        return Err(field_err(
            line,
            "schema_version",
            format!("unsupported version {schema_version}"),
        ));
    }
    let n: u64 = take(&mut obj, line, "n")?;
    if n == 0 {
        return Err(field_err(line, "n", "must be positive"));
    }
    let factorization: String = take(&mut obj, line, "factorization")?;
    match factorization.parse::<Factorization>() {
        Ok(f) if f.value() == n && f.to_string() == factorization => {}
        Ok(_) => {
            return Err(field_err(
                line,
                "factorization",
                format!("`{factorization}` is not the factorization of {n}"),
            ))
        }
        Err(e) => return Err(field_err(line, "factorization", e.to_string())),
    }
    let measure: Measure = take(&mut obj, line, "measure")?;
    let value: Option<u64> = take_opt(&mut obj, line, "value")?;
    let skipped: Option<String> = take_opt(&mut obj, line, "skipped")?;
    if value.is_none() == skipped.is_none() {
        return Err(field_err(
            line,
            "value",
            "exactly one of `value` and `skipped` must be present",
        ));
    }
    if value == Some(0) {
        return Err(field_err(line, "value", "must be positive"));
    }
    let record = RecordLine {
        schema_version,
        n,
        factorization,
        measure,
        value,
        skipped,
        method: take_opt(&mut obj, line, "method")?,
        witness_count: take(&mut obj, line, "witness_count")?,
        witnesses: take(&mut obj, line, "witnesses")?,
        escalated: take(&mut obj, line, "escalated")?,
        nodes_visited: take(&mut obj, line, "nodes_visited")?,
        elapsed_ms: take(&mut obj, line, "elapsed_ms")?,
        tool_version: take(&mut obj, line, "tool_version")?,
        extra: obj,
    };
    if record.witnesses.len() as u64 > record.witness_count {
        return Err(field_err(
            line,
            "witness_count",
            "smaller than the number of listed witnesses",
        ));
    }
    Ok(record)
}

/// Records read from a file, keyed by `(n, measure)`.
#[derive(Clone, Debug, Default)]
pub struct RecordSet {
    pub records: BTreeMap<(u64, Measure), RecordLine>,
    pub warnings: Vec<String>,
}

impl RecordSet {
    pub fn get(&self, n: u64, measure: Measure) -> Option<&RecordLine> {
        self.records.get(&(n, measure))
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RecordLine> {
        self.records.values()
    }
}

/// Parse a whole record file. Blank lines are ignored.
pub fn parse_records(text: &str) -> Result<RecordSet> {
    let mut set = RecordSet::default();
    let torn_tail = !text.is_empty() && !text.ends_with('\n');
    let lines: Vec<&str> = text.lines().collect();
    for (i, raw) in lines.iter().enumerate() {
        let lineno = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let record = match parse_record(raw, lineno) {
            Ok(r) => r,
            Err(e) if torn_tail && lineno == lines.len() => {
                let msg = format!("line {lineno}: skipping incomplete final line ({e})");
                warn!("{msg}");
                set.warnings.push(msg);
                continue;
            }
            Err(e) => return Err(e),
        };
        if let Some(old) = set.records.insert(record.key(), record) {
            let new = &set.records[&old.key()];
            if old.value != new.value || old.skipped != new.skipped {
                let msg = format!(
                    "line {lineno}: {}({}) redefined ({} -> {}); keeping the later record",
                    old.measure,
                    old.n,
                    describe(&old),
                    describe(new)
                );
                warn!("{msg}");
                set.warnings.push(msg);
            }
        }
    }
    Ok(set)
}

fn describe(r: &RecordLine) -> String {
    match (r.value, &r.skipped) {
        (Some(v), _) => v.to_string(),
        (None, Some(s)) => format!("skipped: {s}"),
        (None, None) => "?".into(),
    }
}

/// [`parse_records`] on a file; a missing file is an empty set.
pub fn load_records(path: &Path) -> Result<RecordSet> {
    let mut text = String::new();
    match File::open(path) {
        Ok(mut f) => {
            f.read_to_string(&mut text)?;
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e.into()),
    }
    parse_records(&text)
}

/// Appends records, one flushed line at a time.
pub struct RecordWriter {
    out: BufWriter<File>,
}

impl RecordWriter {
    /// Open `path` for appending. A torn final line left by an interrupted
    /// write is cut off first, so new records start on a fresh line.
    pub fn open(path: &Path) -> Result<Self> {
        let mut file = OpenOptions::new().create(true).read(true).append(true).open(path)?;
        let mut text = Vec::new();
        file.read_to_end(&mut text)?;
        if !text.is_empty() && text.last() != Some(&b'\n') {
            let keep = text.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
            warn!(
                "{}: dropping {} bytes of incomplete final line",
                path.display(),
                text.len() - keep
            );
            file.set_len(keep as u64)?;
        }
        Ok(RecordWriter {
            out: BufWriter::new(file),
        })
    }

    pub fn append(&mut self, r: &RecordLine) -> Result<()> {
        let mut line = emit_record(r);
        line.push('\n');
        self.out.write_all(line.as_bytes())?;
        self.out.flush()?;
        self.out.get_ref().sync_data()?;
        Ok(())
    }
}

fn value_or_skip(r: &RecordLine) -> String {
    r.value.map_or_else(|| "skipped".into(), |v| v.to_string())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RangeSummary {
    /// Values newly computed in this run.
    pub computed: usize,
    /// New skipped entries (budget or overflow).
    pub skipped: usize,
    /// `n` already present in the checkpoint.
    pub reused: usize,
}

/// Compute every `n` in `lo..=hi` not yet in the checkpoint file,
/// appending one record per `n` as soon as it is done.
///
/// Budget and overflow failures become skipped records. A skipped record
/// is retried once the divisor budget admits it.
pub fn run_range(lo: u64, hi: u64, measure: Measure, opts: &SearchOptions, checkpoint: &Path) -> Result<RangeSummary> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidParams(format!("need 1 <= lo <= hi, got {lo}..{hi}")));
    }
    let existing = load_records(checkpoint)?;
    let mut writer = RecordWriter::open(checkpoint)?;
    let mut summary = RangeSummary::default();
    for n in lo..=hi {
        let f = factor(n)?;
        if let Some(old) = existing.get(n, measure) {
            if old.value.is_some() || f.num_divisors() > opts.divisor_budget {
                summary.reused += 1;
                continue;
            }
        }
        let record = match compute(n, measure, opts) {
            Ok(r) => {
                summary.computed += 1;
                RecordLine::from_result(&r)
            }
            Err(e @ (Error::BudgetExceeded { .. } | Error::MeasureOverflow)) => {
                summary.skipped += 1;
                RecordLine::skipped(n, &f, measure, e.to_string())
            }
            Err(e) => return Err(e),
        };
        writer.append(&record)?;
        info!("{measure}({n}) = {}", value_or_skip(&record));
    }
    info!(
        "{lo}..={hi}: computed {}, skipped {}, reused {}",
        summary.computed, summary.skipped, summary.reused
    );
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::compute_b;

    #[test]
    fn round_trip_fifteen() {
        let r = RecordLine::from_result(&compute_b(15, &SearchOptions::exhaustive()).unwrap());
        assert_eq!(r.value, Some(3));
        assert!(r.witness_count >= 1);
        let line = emit_record(&r);
        assert!(!line.contains('\n'));
        assert_eq!(parse_record(&line, 1).unwrap(), r);
    }

    #[test]
    fn unknown_fields_survive() {
        let r = RecordLine::from_result(&compute_b(6, &SearchOptions::default()).unwrap());
        let mut v: Value = serde_json::from_str(&emit_record(&r)).unwrap();
        v["host"] = "box7".into();
        let back = parse_record(&v.to_string(), 1).unwrap();
        assert_eq!(back.extra["host"], "box7");
        assert_eq!(parse_record(&emit_record(&back), 1).unwrap(), back);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let r = RecordLine::from_result(&compute_b(6, &SearchOptions::default()).unwrap());
        let mut v: Value = serde_json::from_str(&emit_record(&r)).unwrap();
        v["nodes_visited"] = "many".into();
        match parse_record(&v.to_string(), 7) {
            Err(Error::Parse { line: 7, field, .. }) => assert_eq!(field, "nodes_visited"),
            other => panic!("{other:?}"),
        }
        v["nodes_visited"] = 1.into();
        v["factorization"] = "2*5".into();
        assert!(matches!(parse_record(&v.to_string(), 1), Err(Error::Parse { field, .. }) if field == "factorization"));
        assert!(matches!(parse_record("{", 3), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn empty_and_duplicates() {
        assert!(parse_records("").unwrap().is_empty());
        let mut a = RecordLine::from_result(&compute_b(10, &SearchOptions::default()).unwrap());
        let first = emit_record(&a);
        a.value = Some(5);
        let text = format!("{first}\n{}\n", emit_record(&a));
        let set = parse_records(&text).unwrap();
        assert_eq!(set.get(10, Measure::Height).unwrap().value, Some(5));
        assert_eq!(set.warnings.len(), 1);
    }

    #[test]
    fn torn_tail_is_skipped_only_at_the_end() {
        let a = emit_record(&RecordLine::from_result(
            &compute_b(10, &SearchOptions::default()).unwrap(),
        ));
        let set = parse_records(&format!("{a}\n{}", &a[..20])).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.warnings.len(), 1);
        assert!(parse_records(&format!("{}\n{a}\n", &a[..20])).is_err());
    }
}
