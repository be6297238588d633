//! Deterministic JSON and CSV rendering of command results.

use serde_json::{json, Map, Value};

use crate::numeric::{self, HpComplex, HpReal};

pub const SCHEMA: &str = "1";

/// Formats numbers with a fixed number of significant digits.
#[derive(Clone, Copy, Debug)]
pub struct Fmt {
    pub digits: usize,
}

impl Fmt {
    pub fn for_precision(prec: u32) -> Self {
        Fmt {
            digits: numeric::decimal_digits(prec),
        }
    }

    pub fn real(&self, x: &HpReal) -> Value {
        Value::String(numeric::format_real(x, self.digits))
    }

    pub fn complex(&self, z: &HpComplex) -> Value {
        json!({ "re": self.real(&z.re), "im": self.real(&z.im) })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub precision: u32,
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("results".into(), self.results.clone());
        m.insert("precision".into(), json!(self.precision));
        if let Some(t) = self.wall_time_s {
            m.insert("wall_time_s".into(), json!(t));
        }
        Value::Object(m)
    }

    /// Pretty JSON; object keys come out sorted.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// One `path,value` line per leaf.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        flatten("", &self.to_value(), &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push_str(&format!("{prefix},{}\n", csv_field(s))),
        Value::Null => out.push_str(&format!("{prefix},\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
