//! The sweep table and its CSV form.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::io::{Read, Write};

pub const COLUMNS: [&str; 15] = [
    "q",
    "chi1_label",
    "chi2_label",
    "sigma1",
    "t1",
    "sigma2",
    "t2",
    "z_re",
    "z_im",
    "method",
    "value_re",
    "value_im",
    "err_est",
    "quantity",
    "elapsed_ms",
];

/// One row of a sweep. A failed grid point keeps its inputs and has NaN
/// in value_re, value_im and err_est.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub q: u64,
    pub chi1_label: String,
    pub chi2_label: String,
    pub sigma1: f64,
    pub t1: f64,
    pub sigma2: f64,
    pub t2: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub method: String,
    pub value_re: f64,
    pub value_im: f64,
    pub err_est: f64,
    /// Quantity name, followed by `@key=value;...` for quantities with
    /// parameters outside the fixed columns (τ, ξ, part).
    pub quantity: String,
    pub elapsed_ms: f64,
}

impl SweepRecord {
    pub fn is_error(&self) -> bool {
        self.value_re.is_nan() || self.value_im.is_nan()
    }

    pub fn abs_value(&self) -> f64 {
        self.value_re.hypot(self.value_im)
    }

    /// The quantity name without parameters.
    pub fn quantity_name(&self) -> &str {
        self.quantity.split('@').next().unwrap_or_default()
    }

    pub fn params(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        if let Some((_, rest)) = self.quantity.split_once('@') {
            for kv in rest.split(';') {
                if let Some((k, v)) = kv.split_once('=') {
                    out.insert(k.to_string(), v.to_string());
                }
            }
        }
        out
    }

    pub fn param(&self, key: &str) -> Result<f64> {
        let params = self.params();
        let v = params.get(key).ok_or_else(|| Error::Parse(format!("row quantity {:?} lacks {key}", self.quantity)))?;
        v.parse().map_err(|e| Error::Parse(format!("bad {key} in {:?}: {e}", self.quantity)))
    }

    /// Numeric column by name, plus the derived columns `qt2` (q|t₂|),
    /// `abs_t2`, `abs_value` and its alias `abs_residual`.
    pub fn column(&self, name: &str) -> Result<f64> {
        Ok(match name {
            "q" => self.q as f64,
            "sigma1" => self.sigma1,
            "t1" => self.t1,
            "sigma2" => self.sigma2,
            "t2" => self.t2,
            "z_re" => self.z_re,
            "z_im" => self.z_im,
            "value_re" => self.value_re,
            "value_im" => self.value_im,
            "err_est" => self.err_est,
            "elapsed_ms" => self.elapsed_ms,
            "qt2" => self.q as f64 * self.t2.abs(),
            "abs_t2" => self.t2.abs(),
            "abs_value" | "abs_residual" => self.abs_value(),
            other => return Err(Error::Parse(format!("unknown column {other:?}"))),
        })
    }
}

/// 17 significant digits; enough to round-trip any f64.
fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn parse_float(s: &str, line: usize, col: &str) -> Result<f64> {
    s.trim().parse().map_err(|e| Error::Parse(format!("line {line}, column {col}: {s:?}: {e}")))
}

pub fn write_csv<W: Write>(rows: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            r.q.to_string(),
            r.chi1_label.clone(),
            r.chi2_label.clone(),
            fmt_float(r.sigma1),
            fmt_float(r.t1),
            fmt_float(r.sigma2),
            fmt_float(r.t2),
            fmt_float(r.z_re),
            fmt_float(r.z_im),
            r.method.clone(),
            fmt_float(r.value_re),
            fmt_float(r.value_im),
            fmt_float(r.err_est),
            r.quantity.clone(),
            fmt_float(r.elapsed_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != COLUMNS {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let f = |k: usize| parse_float(&rec[k], line, COLUMNS[k]);
        rows.push(SweepRecord {
            q: rec[0].trim().parse().map_err(|e| Error::Parse(format!("line {line}, column q: {e}")))?,
            chi1_label: rec[1].to_string(),
            chi2_label: rec[2].to_string(),
            sigma1: f(3)?,
            t1: f(4)?,
            sigma2: f(5)?,
            t2: f(6)?,
            z_re: f(7)?,
            z_im: f(8)?,
            method: rec[9].to_string(),
            value_re: f(10)?,
            value_im: f(11)?,
            err_est: f(12)?,
            quantity: rec[13].to_string(),
            elapsed_ms: f(14)?,
        });
    }
    Ok(rows)
}

pub fn read_csv_file(path: &std::path::Path) -> Result<Vec<SweepRecord>> {
    read_csv(std::fs::File::open(path)?)
}

pub fn write_csv_file(rows: &[SweepRecord], path: &std::path::Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(rows, std::io::BufWriter::new(file))
}
