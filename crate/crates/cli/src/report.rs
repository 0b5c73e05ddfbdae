//! Report rendering. Every command produces the same envelope (command echo,
//! parameters, seed, per-trial records, summary) and the wall time is kept in
//! a single field that sorts last, so byte-level comparisons can drop it.

use std::io;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub trials: Vec<Value>,
    pub summary: Value,
}

impl Report {
    fn to_value(&self, wall_time_ms: f64) -> Value {
        // serde_json's map is ordered by key, which puts wall_time_ms last
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("parameters".into(), self.parameters.clone());
        map.insert(
            "seed".into(),
            self.seed.map(Value::from).unwrap_or(Value::Null),
        );
        map.insert("summary".into(), self.summary.clone());
        map.insert("trials".into(), Value::Array(self.trials.clone()));
        map.insert("wall_time_ms".into(), Value::from(wall_time_ms));
        Value::Object(map)
    }
}

/// Pretty JSON, except floats are printed as `{:.16e}`: 17 significant
/// digits, enough to reproduce any f64 exactly on parse.
struct SciNotation<'a> {
    pretty: PrettyFormatter<'a>,
}

impl<'a> Formatter for SciNotation<'a> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.pretty.end_object_value(writer)
    }
}

pub fn render(report: &Report, format: Format, wall_time_ms: f64) -> String {
    let value = report.to_value(wall_time_ms);
    match format {
        Format::Json => {
            let mut buf = Vec::new();
            let mut ser = Serializer::with_formatter(
                &mut buf,
                SciNotation {
                    pretty: PrettyFormatter::new(),
                },
            );
            value.serialize(&mut ser).expect("report serialization");
            String::from_utf8(buf).expect("json output is utf-8")
        }
        Format::Csv => {
            let mut rows = Vec::new();
            walk("", &value, &mut rows);
            rows.iter()
                .map(|(path, v)| format!("{path},{}", csv_cell(v)))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Format::Human => {
            let mut rows = Vec::new();
            walk("", &value, &mut rows);
            rows.iter()
                .map(|(path, v)| format!("{path} = {}", human_cell(v)))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

/// Depth-first flatten into `(dotted.path, scalar)` rows; key order follows
/// the (sorted) json maps, so the wall time row stays last here too.
fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                walk(&join(prefix, key), child, out);
            }
        }
        Value::Array(items) => {
            for (index, child) in items.iter().enumerate() {
                walk(&join(prefix, &index.to_string()), child, out);
            }
        }
        scalar => out.push((prefix.to_string(), scalar.clone())),
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn csv_cell(value: &Value) -> String {
    match value {
        Value::Number(x) if x.is_f64() => format!("{:.16e}", x.as_f64().expect("f64 number")),
        Value::Number(x) => x.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::String(s) => csv_quote(s),
        Value::Null => String::new(),
        Value::Object(_) | Value::Array(_) => unreachable!("flattened"),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn human_cell(value: &Value) -> String {
    match value {
        Value::Number(x) if x.is_f64() => format!("{}", x.as_f64().expect("f64 number")),
        Value::Number(x) => x.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Object(_) | Value::Array(_) => unreachable!("flattened"),
    }
}
