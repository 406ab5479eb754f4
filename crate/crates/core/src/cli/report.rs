use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cyclo::{format_coeff, CycloNum};
use crate::jet::{GermJet, LinearPart};
use crate::moebius::MoebiusMap;

/// The result of one command. `verdicts` holds the decision fields as
/// strings; `certificates` holds the evidence behind them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub verdicts: BTreeMap<String, String>,
    pub certificates: Value,
    /// A cap or bound stopped the command before it could decide.
    pub limit_reached: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} on {}", self.command, self.input);
        let width = self.verdicts.keys().map(String::len).max().unwrap_or(0);
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "  {k:width$}  {v}");
        }
        if self.limit_reached {
            let _ = writeln!(out, "  (limit reached)");
        }
        if !is_empty(&self.certificates) {
            let _ = writeln!(out, "certificates:");
            text_value(&mut out, &self.certificates, 1);
        }
        let _ = writeln!(out, "time: {} ms", self.timing_ms);
        out
    }
}

fn is_empty(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.is_empty(),
        _ => false,
    }
}

/// Scalars and short arrays stay on one line; jets and objects nest.
fn text_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar_line(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    text_value(out, x, depth + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar_line(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    text_value(out, x, depth + 1);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", inline(x));
        }
    }
}

fn is_scalar_line(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}

/// JSON rendering of group elements, in the input schema where one exists.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for CycloNum {
    fn to_json(&self) -> Value {
        Value::String(format_coeff(self))
    }
}

/// Coordinates as `[{coeff, monomial}]` lists in graded-lex order, so a jet
/// can be pasted back into an input document; `text` is the same jet on
/// one line.
impl ToJson for GermJet {
    fn to_json(&self) -> Value {
        let coords: Vec<Value> = self
            .coords()
            .iter()
            .map(|p| {
                p.iter()
                    .map(|(m, c)| json!({"coeff": format_coeff(c), "monomial": m.exponents()}))
                    .collect()
            })
            .collect();
        json!({"text": self.to_string(), "coords": coords})
    }
}

impl ToJson for LinearPart {
    fn to_json(&self) -> Value {
        Value::Array(
            self.rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

impl ToJson for MoebiusMap {
    fn to_json(&self) -> Value {
        let [a, b, c, d] = self.entries();
        json!([[format_coeff(a), format_coeff(b)], [format_coeff(c), format_coeff(d)]])
    }
}
