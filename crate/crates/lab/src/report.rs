//! Experiment reports and their JSON/CSV renderings.
//!
//! Floats are written in scientific notation with 17 significant digits;
//! non-finite floats become `null` in JSON and empty cells in CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Number, Value as Json};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    F(f64),
    I(i64),
    U(u128),
    B(bool),
    S(String),
    Null,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::F(v)
    }
}
impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::I(v)
    }
}
impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::U(v as u128)
    }
}
impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::U(v as u128)
    }
}
impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::U(v as u128)
    }
}
impl From<u128> for Value {
    fn from(v: u128) -> Self {
        Value::U(v)
    }
}
impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::B(v)
    }
}
impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::S(v.to_owned())
    }
}
impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::S(v)
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

pub fn format_float(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::F(x) => match format_float(*x) {
                Some(s) => Json::Number(Number::from_str(&s).expect("formatted float is a JSON number")),
                None => Json::Null,
            },
            Value::I(i) => Json::from(*i),
            Value::U(u) => Json::Number(Number::from_str(&u.to_string()).expect("integer is a JSON number")),
            Value::B(b) => Json::Bool(*b),
            Value::S(s) => Json::String(s.clone()),
            Value::Null => Json::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Value::F(x) => format_float(*x).unwrap_or_default(),
            Value::I(i) => i.to_string(),
            Value::U(u) => u.to_string(),
            Value::B(b) => b.to_string(),
            Value::S(s) => csv_escape(s),
            Value::Null => String::new(),
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub type Fields = Vec<(&'static str, Value)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: &'static str,
    pub config: Fields,
    pub rows: Vec<Fields>,
    pub summary: Fields,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn object(fields: &Fields) -> Json {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert((*k).to_owned(), v.to_json());
    }
    Json::Object(map)
}

impl Report {
    pub fn new(experiment: &'static str, config: Fields) -> Self {
        let mut full: Fields = vec![("artifact_version", VERSION.into())];
        full.extend(config);
        Self {
            experiment,
            config: full,
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    /// Column names, taken from the first row.
    pub fn columns(&self) -> Vec<&'static str> {
        self.rows.first().map(|r| r.iter().map(|(k, _)| *k).collect()).unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        map.insert("experiment".into(), self.experiment.into());
        map.insert("config".into(), object(&self.config));
        map.insert("rows".into(), Json::Array(self.rows.iter().map(object).collect()));
        map.insert("summary".into(), object(&self.summary));
        let mut s = serde_json::to_string_pretty(&Json::Object(map)).expect("report serializes");
        s.push('\n');
        s
    }

    /// Comment lines (`# key=value`) for the experiment and config, then the
    /// header and rows, then summary comment lines.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# experiment={}", self.experiment);
        for (k, v) in &self.config {
            let _ = writeln!(s, "# config.{k}={}", v.to_csv());
        }
        let columns = self.columns();
        s.push_str(&columns.join(","));
        s.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.iter().map(|(k, _)| *k).collect::<Vec<_>>(), columns);
            let cells: Vec<String> = row.iter().map(|(_, v)| v.to_csv()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        for (k, v) in &self.summary {
            let _ = writeln!(s, "# summary.{k}={}", v.to_csv());
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn summary_value(&self, key: &str) -> Option<&Value> {
        self.summary.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}
