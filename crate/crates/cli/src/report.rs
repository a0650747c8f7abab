//! Text and JSON rendering of command results.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use weyl_core::bfunction::BFunction;
use weyl_core::logarithmic::Derivation;
use weyl_core::{Element, Rational};

pub const SCHEMA: &str = "1";

/// `{num, den}` with both integers as decimal strings.
pub fn rational(r: &Rational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

pub fn bfunction(b: &BFunction) -> Value {
    let factored: Vec<Value> = b.roots.iter().map(|r| json!({ "root": rational(&r.value), "mult": r.mult })).collect();
    json!({ "expanded": b.poly.display_in("s"), "factored": factored, "display": b.factored() })
}

pub fn elements(es: &[Element]) -> Value {
    Value::Array(es.iter().map(|e| Value::String(e.to_string())).collect())
}

/// `c_1*dx_1 + ... + c_n*dx_n` over the ring of the coefficients.
pub fn derivation_text(theta: &Derivation) -> String {
    let mut parts = Vec::new();
    for (i, c) in theta.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = format!("d{}", c.sig().name(i));
        let s = c.to_string();
        parts.push(if s == "1" {
            d
        } else if c.len() == 1 && !s.starts_with('-') {
            format!("{s}*{d}")
        } else {
            format!("({s})*{d}")
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn derivation(theta: &Derivation) -> Value {
    elements(theta)
}

/// One command's output, rendered as text or as versioned JSON.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub methods: Vec<String>,
    pub result: Value,
    pub timings_ms: BTreeMap<String, u64>,
    /// `None` unless two independent routes ran.
    pub agreement: Option<bool>,
    pub text: String,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Self {
        Report {
            command: command.into(),
            input,
            methods: Vec::new(),
            result: Value::Null,
            timings_ms: BTreeMap::new(),
            agreement: None,
            text: String::new(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.command));
        m.insert("input".into(), self.input.clone());
        m.insert("methods".into(), json!(self.methods));
        m.insert("result".into(), self.result.clone());
        m.insert("timings_ms".into(), json!(self.timings_ms));
        m.insert("agreement".into(), json!(self.agreement));
        Value::Object(m)
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut s = self.text.clone();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    }
}

/// JSON with `timings_ms` removed, for comparing runs.
pub fn without_timings(v: &Value) -> Value {
    let mut v = v.clone();
    if let Value::Object(m) = &mut v {
        m.remove("timings_ms");
    }
    v
}
