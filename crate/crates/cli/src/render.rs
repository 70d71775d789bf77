//! JSON, CSV and text output of a report envelope.

use std::io::{IsTerminal, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// Version of the report envelope and payload layouts in `schemas/`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// What every command prints: `kind` names the payload schema, `ok` is false exactly
/// when the command exits with status 1.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub kind: &'static str,
    pub version: u32,
    pub ok: bool,
    pub result: Value,
}

impl Envelope {
    pub fn new(kind: &'static str, ok: bool, result: impl Serialize) -> Self {
        Envelope { kind, version: SCHEMA_VERSION, ok, result: serde_json::to_value(result).expect("reports are plain data") }
    }
}

pub fn emit(env: &Envelope, format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, env)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["path", "value"])?;
            for (k, v) in flatten(&serde_json::to_value(env).expect("plain data")) {
                w.write_record([k, v])?;
            }
            w.flush()
        }
        Format::Text => {
            let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
            let status = match (env.ok, color) {
                (true, true) => "\x1b[32mPASS\x1b[0m",
                (false, true) => "\x1b[31mFAIL\x1b[0m",
                (true, false) => "PASS",
                (false, false) => "FAIL",
            };
            writeln!(out, "{} ({status})", env.kind)?;
            let mut s = String::new();
            text(&env.result, 1, &mut s);
            write!(out, "{s}")
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Dotted paths to every scalar, with arrays of scalars kept on one line.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| walk(x, join(k), out)),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((path, a.iter().map(scalar).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| walk(x, join(&i.to_string()), out)),
        other => out.push((path, scalar(other))),
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    text(x, depth + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    text(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && (!x.is_array() || x.as_array().is_some_and(|y| y.iter().all(|z| !z.is_array() && !z.is_object())))),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => scalar(other),
    }
}

/// Rounds to 12 significant digits, the precision η tables are printed with.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// `{"re": .., "im": ..}` pairs rounded with [`sig12`].
pub fn complex_table(pairs: &[[f64; 2]]) -> Value {
    Value::Array(pairs.iter().map(|[re, im]| json!([sig12(*re), sig12(*im)])).collect())
}

/// An object from key/value pairs, keeping insertion order.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
