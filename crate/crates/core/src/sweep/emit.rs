//! CSV and JSON serialization of sweep results.
//!
//! Numbers carry 12 significant digits. Candidate entropies become one
//! `cand_<label>` column (CSV) or key (JSON) each, after the fixed columns.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{OutputFormat, SweepConfig, SweepOutput, SweepRecord};
use crate::crossover::Crossover;
use crate::error::{invalid, Error, Result};
use crate::xstate::CandidateEntropy;

pub const CSV_FIXED_COLUMNS: [&str; 8] = [
    "tau",
    "eof",
    "winner",
    "cc",
    "discord",
    "lower_bound",
    "identity_residual",
    "oracle_gap",
];

const CANDIDATE_PREFIX: &str = "cand_";

fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

fn round_sig(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

fn candidate_labels(records: &[SweepRecord]) -> Result<Vec<String>> {
    let first = records.first().ok_or_else(|| invalid("records", "nothing to emit"))?;
    let labels: Vec<String> = first.candidate_entropies.iter().map(|c| c.label.clone()).collect();
    for r in records {
        if r.candidate_entropies.len() != labels.len()
            || r.candidate_entropies.iter().zip(&labels).any(|(c, l)| &c.label != l)
        {
            return Err(invalid("records", format!("candidate labels change at τ = {}", r.tau)));
        }
    }
    Ok(labels)
}

pub fn write_csv<W: Write>(out: &SweepOutput, w: W) -> Result<()> {
    let labels = candidate_labels(&out.records)?;
    let mut wtr = csv::Writer::from_writer(w);
    let header: Vec<String> = CSV_FIXED_COLUMNS
        .iter()
        .map(|s| s.to_string())
        .chain(labels.iter().map(|l| format!("{CANDIDATE_PREFIX}{l}")))
        .collect();
    wtr.write_record(&header)?;
    for r in &out.records {
        let mut row = vec![
            fmt_num(r.tau),
            fmt_num(r.eof),
            r.winner.clone(),
            fmt_num(r.classical_correlation),
            fmt_num(r.discord),
            fmt_num(r.lower_bound),
            fmt_num(r.identity_residual),
            r.oracle_gap.map(fmt_num).unwrap_or_default(),
        ];
        row.extend(r.candidate_entropies.iter().map(|c| fmt_num(c.value)));
        wtr.write_record(&row)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    let fixed = CSV_FIXED_COLUMNS.len();
    if header.len() < fixed || header.iter().zip(CSV_FIXED_COLUMNS).any(|(h, e)| h != e) {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let labels = header
        .iter()
        .skip(fixed)
        .map(|h| {
            h.strip_prefix(CANDIDATE_PREFIX)
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("column {h:?} lacks the {CANDIDATE_PREFIX} prefix")))
        })
        .collect::<Result<Vec<_>>>()?;
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let f = |i: usize| num(&row[i]);
        records.push(SweepRecord {
            tau: f(0)?,
            eof: f(1)?,
            winner: row[2].to_string(),
            classical_correlation: f(3)?,
            discord: f(4)?,
            lower_bound: f(5)?,
            identity_residual: f(6)?,
            oracle_gap: if row[7].is_empty() { None } else { Some(f(7)?) },
            candidate_entropies: labels
                .iter()
                .enumerate()
                .map(|(k, l)| {
                    Ok(CandidateEntropy {
                        label: l.clone(),
                        value: f(fixed + k)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        });
    }
    Ok(records)
}

fn record_to_json(r: &SweepRecord) -> Value {
    let mut m = Map::new();
    m.insert("tau".into(), json!(round_sig(r.tau)));
    m.insert("eof".into(), json!(round_sig(r.eof)));
    m.insert("winner".into(), json!(r.winner));
    m.insert("cc".into(), json!(round_sig(r.classical_correlation)));
    m.insert("discord".into(), json!(round_sig(r.discord)));
    m.insert("lower_bound".into(), json!(round_sig(r.lower_bound)));
    m.insert("identity_residual".into(), json!(round_sig(r.identity_residual)));
    m.insert("oracle_gap".into(), json!(r.oracle_gap.map(round_sig)));
    for c in &r.candidate_entropies {
        m.insert(format!("{CANDIDATE_PREFIX}{}", c.label), json!(round_sig(c.value)));
    }
    Value::Object(m)
}

pub fn write_json<W: Write>(out: &SweepOutput, mut w: W) -> Result<()> {
    candidate_labels(&out.records)?;
    let crossovers: Vec<Value> = out
        .crossovers
        .iter()
        .map(|c| json!({"tau": round_sig(c.tau), "left_winner": c.left_winner, "right_winner": c.right_winner}))
        .collect();
    let doc = json!({
        "metadata": {
            "tool": env!("CARGO_PKG_NAME"),
            "tool_version": env!("CARGO_PKG_VERSION"),
            "config": out.config,
            "crossovers": crossovers,
        },
        "records": out.records.iter().map(record_to_json).collect::<Vec<_>>(),
    });
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    Ok(())
}

pub fn read_json<R: Read>(r: R) -> Result<SweepOutput> {
    let doc: Value = serde_json::from_reader(r)?;
    let meta = doc
        .get("metadata")
        .ok_or_else(|| Error::Parse("missing metadata".into()))?;
    let config: SweepConfig = serde_json::from_value(meta.get("config").cloned().unwrap_or(Value::Null))?;
    let crossovers: Vec<Crossover> = serde_json::from_value(meta.get("crossovers").cloned().unwrap_or(json!([])))?;
    let rows = doc
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing records".into()))?;

    let records = rows
        .iter()
        .map(|row| {
            let obj = row
                .as_object()
                .ok_or_else(|| Error::Parse("record is not an object".into()))?;
            let num = |k: &str| {
                obj.get(k)
                    .and_then(Value::as_f64)
                    .ok_or_else(|| Error::Parse(format!("record field {k} missing or not a number")))
            };
            Ok(SweepRecord {
                tau: num("tau")?,
                eof: num("eof")?,
                winner: obj
                    .get("winner")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("record field winner missing".into()))?
                    .to_string(),
                classical_correlation: num("cc")?,
                discord: num("discord")?,
                lower_bound: num("lower_bound")?,
                identity_residual: num("identity_residual")?,
                oracle_gap: obj.get("oracle_gap").and_then(Value::as_f64),
                candidate_entropies: obj
                    .iter()
                    .filter_map(|(k, v)| {
                        k.strip_prefix(CANDIDATE_PREFIX).map(|l| CandidateEntropy {
                            label: l.to_string(),
                            value: v.as_f64().unwrap_or(f64::NAN),
                        })
                    })
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutput {
        config,
        records,
        crossovers,
    })
}

/// Writes `out` to `path`, or to standard output when `path` is `None`.
pub fn emit(out: &SweepOutput, path: Option<&Path>, format: OutputFormat) -> Result<()> {
    let write = |w: &mut dyn Write| match format {
        OutputFormat::Csv => write_csv(out, w),
        OutputFormat::Json => write_json(out, w),
    };
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
    }
    Ok(())
}
