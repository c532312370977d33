//! Locale-independent table rendering.

use serde::Serialize;
use serde_json::{json, Value};

use super::config::RunConfig;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_nan() => "NaN".to_string(),
            Cell::Num(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.to_string(),
            // 17 significant digits survive a round trip through text.
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // serde_json writes non-finite floats as null.
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Int(b as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Config lines prefixed with `# `, a header row, then one line per row.
pub fn render_csv(config: &RunConfig, table: &Table) -> String {
    let mut out = String::new();
    let provenance = serde_json::to_string_pretty(config).expect("config serializes");
    for line in provenance.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(config: &RunConfig, table: &Table) -> String {
    #[derive(Serialize)]
    struct Doc<'a> {
        config: &'a RunConfig,
        columns: &'a [String],
        rows: Vec<Value>,
    }
    let doc = Doc {
        config,
        columns: &table.columns,
        rows: table
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect(),
    };
    let mut out = serde_json::to_string(&doc).expect("table serializes");
    out.push('\n');
    out
}

/// Verification report: the config, one entry per suite, overall verdict.
pub fn render_report<T: Serialize>(config: &RunConfig, suites: &T, pass: bool) -> String {
    #[derive(Serialize)]
    struct Report<'a, T> {
        config: &'a RunConfig,
        suites: &'a T,
        pass: bool,
    }
    let doc = Report { config, suites, pass };
    let mut out = serde_json::to_string(&doc).expect("report serializes");
    out.push('\n');
    out
}

/// Recover the config echoed at the top of a CSV table.
pub fn parse_provenance(csv: &str) -> Result<RunConfig, serde_json::Error> {
    let text: String = csv
        .lines()
        .take_while(|l| l.starts_with('#'))
        .map(|l| l.strip_prefix("# ").unwrap_or(&l[1..]))
        .collect::<Vec<_>>()
        .join("\n");
    serde_json::from_str(&text)
}
