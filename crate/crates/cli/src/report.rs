//! Report envelope and its two renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "supersplit";

/// Every command's output. Field order is fixed by the struct, so equal
/// inputs give byte-identical JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub result: T,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes).as_slice())
}

impl<T: Serialize> Report<T> {
    pub fn new(command: String, input: &[u8], result: T) -> Self {
        Report {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            command,
            input_digest: sha256_hex(input),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Indented `key: value` listing of the same fields as the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        write_value(&mut out, &value, 0);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => Some(format!(
            "[{}]",
            a.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, x, depth + 1);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                let _ = writeln!(out, "{pad}{line}");
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
