//! Tables, float formatting and the run manifest.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `x` with 9 significant digits, trailing zeros dropped.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let body = if !(-7..=15).contains(&exp) {
        let m = trim_zeros(format!("{}.{}", &digits[..1], &digits[1..]));
        return format!("{}{}e{}", if negative { "-" } else { "" }, m, exp);
    } else if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            format!("{}{}", digits, "0".repeat(point - digits.len()))
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{}{}", if negative { "-" } else { "" }, trim_zeros(body))
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn round9(x: f64) -> f64 {
    if x.is_finite() {
        sig9(x).parse().unwrap_or(x)
    } else {
        x
    }
}

/// Rounds every non-integer number in place.
fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round9(x))) {
                *n = x;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => sig9(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.into_inner().map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// What a subcommand produces: a flat table for CSV, a structured value
/// for JSON, and headline scalars carried by the manifest.
#[derive(Debug, Default)]
pub struct Output {
    pub table: Table,
    pub result: Value,
    pub summary: Map<String, Value>,
}

impl Output {
    pub fn new(headers: &[&str]) -> Self {
        Output { table: Table::new(headers), ..Default::default() }
    }

    pub fn summarize(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), serde_json::to_value(value).expect("summary values serialize"));
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub flags: Value,
    pub rng_seed: Option<u64>,
    pub version: &'static str,
    pub summary: Map<String, Value>,
    pub duration_seconds: f64,
}

pub struct Run {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub flags: Value,
    pub rng_seed: Option<u64>,
    pub started: Instant,
}

impl Run {
    fn manifest(&self, summary: Map<String, Value>) -> RunManifest {
        RunManifest {
            subcommand: self.subcommand.clone(),
            inputs: self.inputs.clone(),
            flags: self.flags.clone(),
            rng_seed: self.rng_seed,
            version: env!("CARGO_PKG_VERSION"),
            summary,
            duration_seconds: self.started.elapsed().as_secs_f64(),
        }
    }
}

fn pretty(v: &impl Serialize) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_value(v)?;
    round_json(&mut v);
    let mut bytes = serde_json::to_vec_pretty(&v)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

fn write_stdout(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).and_then(|_| out.flush()).map_err(|source| CliError::Write { path: PathBuf::from("<stdout>"), source })
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `output` to `out` or stdout. JSON embeds the manifest. The
/// manifest also goes to `sidecar` when given; CSV without a sidecar prints
/// it on stderr.
pub fn emit(run: &Run, output: Output, format: Format, out: Option<&Path>, sidecar: Option<PathBuf>) -> Result<(), CliError> {
    let manifest = run.manifest(output.summary);
    if let Some(path) = &sidecar {
        write_file(path, &pretty(&manifest)?)?;
    }
    let bytes = match format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("manifest".into(), serde_json::to_value(&manifest)?);
            doc.insert("result".into(), output.result);
            pretty(&doc)?
        }
        Format::Csv => {
            if sidecar.is_none() {
                eprint!("{}", String::from_utf8_lossy(&pretty(&manifest)?));
            }
            output.table.to_csv()?
        }
    };
    match out {
        Some(path) => write_file(path, &bytes),
        None => write_stdout(&bytes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(0.92), "0.92");
        assert_eq!(sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(sig9(-2.0 / 3.0), "-0.666666667");
        assert_eq!(sig9(123456789.4), "123456789");
        assert_eq!(sig9(1234567891234.0), "1234567890000");
        assert_eq!(sig9(0.000123456789012), "0.000123456789");
        assert_eq!(sig9(1e-12), "1e-12");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(-1.0), "-1");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(9.9999999996), "10");
    }

    #[test]
    fn rounding_reaches_nested_values() {
        let mut v = serde_json::json!({"a": [0.1234567891234, 3], "b": {"c": 2.0}});
        round_json(&mut v);
        assert_eq!(v, serde_json::json!({"a": [0.123456789, 3], "b": {"c": 2.0}}));
    }
}
