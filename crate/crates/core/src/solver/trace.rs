//! Per-outer-iteration metrics and their CSV encoding.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed CSV header of a run trace.
pub const CSV_HEADER: &str =
    "outer_k,wall_ms,f_value,sfo_calls,fo_calls,exact_lmo_calls,weak_sep_calls,cache_hits,inner_iters,phi_final,cert_gap";

/// One row per outer iteration. Counters are cumulative over the run;
/// `inner_iters`, `phi_final` and `cert_gap` describe this iteration only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub outer_k: u64,
    pub wall_ms: f64,
    pub f_value: f64,
    pub sfo_calls: u64,
    pub fo_calls: u64,
    pub exact_lmo_calls: u64,
    pub weak_sep_calls: u64,
    pub cache_hits: u64,
    pub inner_iters: u64,
    pub phi_final: f64,
    pub cert_gap: f64,
}

impl TraceRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{:e},{},{},{},{},{},{},{:e},{:e}",
            self.outer_k,
            self.wall_ms,
            self.f_value,
            self.sfo_calls,
            self.fo_calls,
            self.exact_lmo_calls,
            self.weak_sep_calls,
            self.cache_hits,
            self.inner_iters,
            self.phi_final,
            self.cert_gap
        )
    }

    pub fn from_csv(line: &str) -> Result<Self> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 11 {
            return Err(Error::config(format!("trace row has {} fields, expected 11", f.len())));
        }
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::config(format!("bad float `{s}` in trace row")))
        };
        let int = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| Error::config(format!("bad integer `{s}` in trace row")))
        };
        Ok(TraceRow {
            outer_k: int(f[0])?,
            wall_ms: float(f[1])?,
            f_value: float(f[2])?,
            sfo_calls: int(f[3])?,
            fo_calls: int(f[4])?,
            exact_lmo_calls: int(f[5])?,
            weak_sep_calls: int(f[6])?,
            cache_hits: int(f[7])?,
            inner_iters: int(f[8])?,
            phi_final: float(f[9])?,
            cert_gap: float(f[10])?,
        })
    }
}

/// Identifying metadata of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub solver: String,
    pub seed: u64,
    pub config_hash: String,
    pub version: String,
    /// Some step asked for a batch above the configured cap.
    pub batch_capped: bool,
}

/// Rows of one run plus its metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub meta: RunMeta,
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.rows {
            writeln!(w, "{}", r.to_csv())?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }

    /// Parses rows written by [`RunTrace::write_csv`].
    pub fn read_rows<R: BufRead>(r: R) -> Result<Vec<TraceRow>> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .transpose()
            .map_err(|e| Error::io("<trace>", e))?
            .unwrap_or_default();
        if header.trim() != CSV_HEADER {
            return Err(Error::config("trace header does not match the expected columns"));
        }
        let mut rows = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::io("<trace>", e))?;
            if !line.trim().is_empty() {
                rows.push(TraceRow::from_csv(&line)?);
            }
        }
        Ok(rows)
    }

    pub fn last(&self) -> Option<&TraceRow> {
        self.rows.last()
    }

    /// First row with `f_value <= target`.
    pub fn first_hit(&self, target: f64) -> Option<&TraceRow> {
        first_hit(&self.rows, target)
    }
}

pub fn first_hit(rows: &[TraceRow], target: f64) -> Option<&TraceRow> {
    rows.iter().find(|r| r.f_value <= target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let row = TraceRow {
            outer_k: 3,
            wall_ms: 1.5,
            f_value: 0.125,
            sfo_calls: 384,
            fo_calls: 0,
            exact_lmo_calls: 7,
            weak_sep_calls: 20,
            cache_hits: 11,
            inner_iters: 4,
            phi_final: 1e-3,
            cert_gap: 2.5e-4,
        };
        let trace = RunTrace {
            meta: RunMeta {
                solver: "calsgd".into(),
                seed: 1,
                config_hash: "x".into(),
                version: "0".into(),
                batch_capped: false,
            },
            rows: vec![row],
        };
        let text = trace.to_csv_string();
        assert!(text.starts_with(CSV_HEADER));
        let rows = RunTrace::read_rows(text.as_bytes()).unwrap();
        assert_eq!(rows, vec![row]);
    }
}
