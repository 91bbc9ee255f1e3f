//! Ordered key-value reports with two encodings, JSON and CSV, that carry
//! byte-identical numeric text. Floats are printed with 17 significant
//! digits, enough to round-trip any f64 exactly.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    UInt(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

/// 17 significant digits in scientific notation; non-finite values become
/// the strings "inf", "-inf", "nan" in both encodings.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_uint(&mut self, key: &str, v: u64) {
        self.entries.push((key.into(), Value::UInt(v)));
    }

    pub fn push_float(&mut self, key: &str, v: f64) {
        self.entries.push((key.into(), Value::Float(v)));
    }

    pub fn push_text(&mut self, key: &str, v: &str) {
        self.entries.push((key.into(), Value::Text(v.into())));
    }

    pub fn push_bool(&mut self, key: &str, v: bool) {
        self.entries.push((key.into(), Value::Bool(v)));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v)
    }

    pub fn get_float(&self, key: &str) -> Option<f64> {
        match self.get(key)? {
            Value::Float(x) => Some(*x),
            _ => None,
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// One key per line, insertion order, trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        for (i, (key, value)) in self.entries.iter().enumerate() {
            let rendered = match value {
                Value::UInt(v) => v.to_string(),
                // Non-finite floats have no JSON literal; they ship as the
                // same strings the CSV encoding uses.
                Value::Float(v) if !v.is_finite() => json_escape(&format_float(*v)),
                Value::Float(v) => format_float(*v),
                Value::Text(v) => json_escape(v),
                Value::Bool(v) => v.to_string(),
            };
            let comma = if i + 1 == self.entries.len() { "" } else { "," };
            let _ = writeln!(out, "  {}: {rendered}{comma}", json_escape(key));
        }
        out.push_str("}\n");
        out
    }

    /// `key,value` rows under a header, insertion order, trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for (key, value) in &self.entries {
            let rendered = match value {
                Value::UInt(v) => v.to_string(),
                Value::Float(v) => format_float(*v),
                Value::Text(v) => csv_escape(v),
                Value::Bool(v) => v.to_string(),
            };
            let _ = writeln!(out, "{},{}", csv_escape(key), rendered);
        }
        out
    }
}
