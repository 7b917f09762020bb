//! Report types and the text rendering of their JSON form.
//!
//! JSON is the source of truth: `--format text` walks the serialized value,
//! so both formats always carry the same fields.

use std::fmt::Write as _;

use fdecomp::decomposition::{BoundCheck, DecompositionReport, Precheck};
use fdecomp::invariants::InvariantOutcome;
use fdecomp::kinetics::PlkClass;
use fdecomp::network::NetworkStats;
use fdecomp::transform::{TransformMethod, VerificationReport};
use fdecomp::ReactionNetwork;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct NetworkSummary {
    pub species: Vec<String>,
    pub reactions: Vec<String>,
    #[serde(flatten)]
    pub stats: NetworkStats,
}

impl NetworkSummary {
    pub fn of(net: &ReactionNetwork) -> Self {
        NetworkSummary {
            species: net.species().to_vec(),
            reactions: (0..net.r()).map(|j| net.render_reaction(j)).collect(),
            stats: net.stats(),
        }
    }
}

#[derive(Serialize)]
pub struct KineticsSummary {
    pub classification: PlkClass,
    /// Reactant complexes whose branching reactions carry different kinetic-order rows.
    pub nf_nodes: Vec<String>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: String,
    pub network: NetworkSummary,
    pub kinetics: Option<KineticsSummary>,
    pub orientation: Vec<String>,
    pub decomposition: DecompositionReport,
    pub bounds: Vec<BoundCheck>,
    /// Absence-of-multistationarity precheck, under mass action when the input has no kinetics.
    pub precheck: Option<Precheck>,
}

#[derive(Serialize)]
pub struct TransformReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: String,
    pub method: TransformMethod,
    pub modified: Vec<String>,
    pub added_complexes: Vec<String>,
    pub input_kinetics: KineticsSummary,
    pub output_kinetics: KineticsSummary,
    /// The transformed system in the input text format.
    pub output: String,
    pub verification: Option<VerificationReport>,
}

#[derive(Serialize)]
pub struct FileCheck {
    pub input: String,
    pub passed: bool,
    pub outcomes: Vec<InvariantOutcome>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub invariants: Vec<&'static str>,
    pub passed: bool,
    pub files: Vec<FileCheck>,
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

/// One-line form for arrays of scalars and arrays of such arrays.
fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let Value::Array(items) = v else { return None };
    if items.is_empty() {
        return Some("[]".into());
    }
    if let Some(parts) = items.iter().map(scalar).collect::<Option<Vec<_>>>() {
        return Some(parts.join(", "));
    }
    let groups = items
        .iter()
        .map(|i| match i {
            Value::Array(inner) => inner.iter().map(scalar).collect::<Option<Vec<_>>>().map(|p| format!("{{{}}}", p.join(", "))),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Some(groups.join(" "))
}

fn write_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(line) = inline(v) {
        writeln!(out, "{pad}{key}: {line}").unwrap();
        return;
    }
    match v {
        Value::String(s) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for line in s.lines() {
                writeln!(out, "{pad}  | {line}").unwrap();
            }
        }
        Value::Object(map) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (k, v) in map {
                write_value(out, k, v, indent + 1);
            }
        }
        Value::Array(items) => {
            writeln!(out, "{pad}{key}:").unwrap();
            for (i, item) in items.iter().enumerate() {
                write_value(out, &format!("[{i}]"), item, indent + 1);
            }
        }
        _ => unreachable!("scalars are inline"),
    }
}

/// Indented `key: value` rendering of a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                write_value(&mut out, k, v, 0);
            }
        }
        other => write_value(&mut out, "value", other, 0),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_classes_render_inline() {
        let text = render_text(&json!({"classes": [["R1", "R2"], ["R3"]], "ok": true}));
        assert_eq!(text, "classes: {R1, R2} {R3}\nok: yes\n");
    }

    #[test]
    fn multiline_strings_become_blocks() {
        let text = render_text(&json!({"output": "a\nb\n"}));
        assert_eq!(text, "output:\n  | a\n  | b\n");
    }
}
