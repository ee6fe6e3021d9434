use std::fmt::Write as _;

use clap::ValueEnum;
use quasiherm_core::invariants::Check;
use quasiherm_core::{Fe, Field, Space};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A field element as its ξ-power code and its (x0, x1) pair over GF(q).
#[derive(Clone, Debug, Serialize)]
pub struct Elem {
    pub code: String,
    pub pair: [u32; 2],
}

pub fn elem(f: &Field, a: Fe) -> Elem {
    let code = match a.log() {
        None => "0".to_string(),
        Some(k) => format!("xi^{k}"),
    };
    let (x0, x1) = f.decompose(a);
    Elem { code, pair: [f.value(x0), f.value(x1)] }
}

pub fn vec_json(f: &Field, v: &[Fe]) -> Value {
    Value::Array(v.iter().map(|&a| serde_json::to_value(elem(f, a)).unwrap()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub version: &'static str,
    pub q: u32,
    pub p: u32,
    pub e: u32,
    pub xi: Elem,
    pub s: Elem,
    pub i_elem: Elem,
    /// Coefficients of the primitive polynomial, constant term first.
    pub primitive_polynomial: Vec<u32>,
    pub formulas: String,
}

impl Header {
    pub fn new(space: &Space, formulas: &str) -> Header {
        let f = space.field();
        Header {
            version: env!("CARGO_PKG_VERSION"),
            q: f.q(),
            p: f.p(),
            e: f.e(),
            xi: elem(f, f.xi()),
            s: elem(f, f.s()),
            i_elem: elem(f, f.i_elem()),
            primitive_polynomial: f.primitive_poly().to_vec(),
            formulas: formulas.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub header: Header,
    pub command: String,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut rows = Vec::new();
                flatten("", &serde_json::to_value(self).expect("report serializes"), &mut rows);
                let mut out = String::from("key,value\n");
                for (k, v) in rows {
                    let _ = writeln!(out, "{},{}", csv_field(&k), csv_field(&v));
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let mut rows = Vec::new();
                flatten("header", &serde_json::to_value(&self.header).unwrap(), &mut rows);
                flatten("result", &self.result, &mut rows);
                let _ = writeln!(out, "# {}", self.command);
                for (k, v) in rows {
                    let _ = writeln!(out, "{k} = {v}");
                }
                for c in &self.checks {
                    let _ = writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
                }
                out
            }
        }
    }
}

/// Leaves of a JSON value as (dotted path, scalar text).
pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_paths() {
        let mut rows = Vec::new();
        flatten("", &json!({"a": [1, {"b": "x"}], "c": true}), &mut rows);
        assert_eq!(rows, vec![("a.0".into(), "1".into()), ("a.1.b".into(), "x".into()), ("c".into(), "true".into())]);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn zero_and_one() {
        let f = Field::for_q(3).unwrap();
        let z = elem(&f, Fe::ZERO);
        assert_eq!((z.code.as_str(), z.pair), ("0", [0, 0]));
        let one = elem(&f, Fe::ONE);
        assert_eq!((one.code.as_str(), one.pair), ("xi^0", [1, 0]));
    }
}
