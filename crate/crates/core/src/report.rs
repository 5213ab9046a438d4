//! Deterministic report structures for the CLI: every command fills one of
//! these and renders it as aligned text (default) or JSON. Identical inputs
//! and flags yield byte-identical output; anything nondeterministic (timing)
//! goes to stderr, never into a report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::clone::LayerDiff;
use crate::commutant::{Classification, CommuteWitness};
use crate::ops::FiniteOp;
use crate::pairs::{CentralInclusionReport, PairStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(crate::error::Error::input(format!(
                "unknown format {other:?}"
            ))),
        }
    }
}

pub fn render<T: Serialize + TextReport>(report: &T, format: Format) -> String {
    match format {
        Format::Text => report.text(),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serializes");
            out.push('\n');
            out
        }
    }
}

pub trait TextReport {
    fn text(&self) -> String;
}

fn push_kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{key}: {value}\n"));
}

fn push_layer_counts(out: &mut String, label: &str, sizes: &BTreeMap<usize, usize>) {
    out.push_str(label);
    out.push_str(":\n");
    for (arity, count) in sizes {
        out.push_str(&format!("  arity {arity}: {count}\n"));
    }
}

fn push_witness(out: &mut String, label: &str, witness: &CommuteWitness) {
    out.push_str(&format!("{label}: {witness}\n"));
}

fn push_diff(out: &mut String, label: &str, diff: &LayerDiff) {
    out.push_str(&format!("{label}: arity {} op {}\n", diff.arity, diff.op));
}

fn flag(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}

fn profile_string(arities: &[usize]) -> String {
    arities
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Layers rendered op-by-op under `--emit tables`.
#[derive(Debug, Clone, Serialize)]
pub struct LayerTables(pub BTreeMap<usize, Vec<FiniteOp>>);

#[derive(Debug, Clone, Serialize)]
pub struct CloneReport {
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    pub carrier: usize,
    pub bound: usize,
    pub profile: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dropped_generators: Vec<String>,
    pub closure_fixpoint: bool,
    pub layer_counts: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<LayerTables>,
}

impl TextReport for CloneReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input", &self.input);
        if let Some(strategy) = &self.strategy {
            push_kv(&mut out, "strategy", strategy);
        }
        push_kv(&mut out, "carrier", self.carrier);
        push_kv(&mut out, "bound", self.bound);
        push_kv(&mut out, "profile", profile_string(&self.profile));
        if !self.dropped_generators.is_empty() {
            push_kv(
                &mut out,
                "profile restriction dropped generators",
                self.dropped_generators.join(","),
            );
        }
        push_kv(
            &mut out,
            "closure",
            if self.closure_fixpoint {
                "fixpoint"
            } else {
                "incomplete"
            },
        );
        push_layer_counts(&mut out, "layer counts", &self.layer_counts);
        if let Some(tables) = &self.tables {
            out.push_str("tables:\n");
            for (arity, ops) in &tables.0 {
                out.push_str(&format!("  arity {arity}:\n"));
                for op in ops {
                    out.push_str(&format!("    {op}\n"));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub command: String,
    pub input: String,
    pub carrier: usize,
    pub bound: usize,
    #[serde(flatten)]
    pub classification: Classification,
}

impl TextReport for ClassifyReport {
    fn text(&self) -> String {
        let c = &self.classification;
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input", &self.input);
        push_kv(&mut out, "carrier", self.carrier);
        push_kv(&mut out, "bound", self.bound);
        push_kv(&mut out, "commutative", flag(c.commutative));
        if let Some(w) = &c.commutative_witness {
            push_witness(&mut out, "commutative witness", w);
        }
        push_kv(&mut out, "contracommutative", flag(c.contracommutative));
        if let Some(w) = &c.contracommutative_witness {
            push_witness(&mut out, "contracommutative witness", w);
        }
        push_kv(
            &mut out,
            &format!("saturated@{}", self.bound),
            flag(c.saturated_at),
        );
        if let Some(d) = &c.saturated_witness {
            push_diff(&mut out, "saturated witness", d);
        }
        push_kv(
            &mut out,
            &format!("balanced@{}", self.bound),
            flag(c.balanced_at),
        );
        if let Some(d) = &c.balanced_witness {
            push_diff(&mut out, "balanced witness", d);
        }
        push_layer_counts(&mut out, "clone layer counts", &c.clone_layer_sizes);
        push_layer_counts(&mut out, "commutant layer counts", &c.commutant_layer_sizes);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckCommuteReport {
    pub command: String,
    pub input_a: String,
    pub input_b: String,
    pub carrier: usize,
    pub commutes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CommuteWitness>,
}

impl TextReport for CheckCommuteReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input a", &self.input_a);
        push_kv(&mut out, "input b", &self.input_b);
        push_kv(&mut out, "carrier", self.carrier);
        push_kv(&mut out, "commutes", flag(self.commutes));
        if let Some(w) = &self.witness {
            push_witness(&mut out, "witness", w);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairStatusReport {
    pub command: String,
    pub input_a: String,
    pub input_b: String,
    pub carrier: usize,
    #[serde(flatten)]
    pub status: PairStatus,
}

impl TextReport for PairStatusReport {
    fn text(&self) -> String {
        let s = &self.status;
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input a", &self.input_a);
        push_kv(&mut out, "input b", &self.input_b);
        push_kv(&mut out, "carrier", self.carrier);
        push_kv(&mut out, "bound", s.bound);
        push_kv(&mut out, "commuting", flag(s.commuting));
        if let Some(w) = &s.commuting_witness {
            push_witness(&mut out, "commuting witness", w);
        }
        push_kv(
            &mut out,
            &format!("right_commutant@{}", s.bound),
            flag(s.right_commutant_at),
        );
        if let Some(d) = &s.right_commutant_witness {
            push_diff(&mut out, "right_commutant witness", d);
        }
        push_kv(
            &mut out,
            &format!("left_commutant@{}", s.bound),
            flag(s.left_commutant_at),
        );
        if let Some(d) = &s.left_commutant_witness {
            push_diff(&mut out, "left_commutant witness", d);
        }
        push_kv(
            &mut out,
            &format!("commutant@{}", s.bound),
            flag(s.commutant_at),
        );
        push_kv(
            &mut out,
            &format!("balanced@{}", s.bound),
            flag(s.balanced_at),
        );
        if let Some(d) = &s.balanced_witness {
            push_diff(&mut out, "balanced witness", d);
        }
        push_layer_counts(&mut out, "left clone layer counts", &s.left_layer_sizes);
        push_layer_counts(&mut out, "right clone layer counts", &s.right_layer_sizes);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RcomReport {
    pub command: String,
    pub input: String,
    pub carrier: usize,
    pub bound: usize,
    pub commutant_layer_counts: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wrote: Option<String>,
}

impl TextReport for RcomReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input", &self.input);
        push_kv(&mut out, "carrier", self.carrier);
        push_kv(&mut out, "bound", self.bound);
        push_layer_counts(
            &mut out,
            "commutant layer counts",
            &self.commutant_layer_counts,
        );
        if let Some(path) = &self.wrote {
            push_kv(&mut out, "wrote", path);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TransportReport {
    pub command: String,
    pub input_left: String,
    pub input_right: String,
    pub target: String,
    pub bound: usize,
    pub target_carrier: usize,
    pub commutes: bool,
    pub induced_generators: BTreeMap<String, FiniteOp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wrote: Option<String>,
}

impl TextReport for TransportReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input left", &self.input_left);
        push_kv(&mut out, "input right", &self.input_right);
        push_kv(&mut out, "target", &self.target);
        push_kv(&mut out, "bound", self.bound);
        push_kv(&mut out, "target carrier", self.target_carrier);
        push_kv(&mut out, "commutes", flag(self.commutes));
        out.push_str("induced left generators:\n");
        for (name, op) in &self.induced_generators {
            out.push_str(&format!("  {name}: {op}\n"));
        }
        if let Some(path) = &self.wrote {
            push_kv(&mut out, "wrote", path);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralReport {
    pub command: String,
    pub input_a: String,
    pub input_b: String,
    #[serde(flatten)]
    pub report: CentralInclusionReport,
}

impl TextReport for CentralReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "input a", &self.input_a);
        push_kv(&mut out, "input b", &self.input_b);
        push_kv(&mut out, "bound", self.report.bound);
        push_kv(
            &mut out,
            "left clone inside right clone",
            flag(self.report.left_in_right.holds),
        );
        if let Some(op) = &self.report.left_in_right.missing {
            push_kv(&mut out, "missing", op);
        }
        push_kv(
            &mut out,
            "left clone inside center of right",
            flag(self.report.left_in_center_of_right.holds),
        );
        if let Some(op) = &self.report.left_in_center_of_right.missing {
            push_kv(&mut out, "missing", op);
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub command: String,
    pub seed: u64,
    pub random_instances: usize,
    pub bound: usize,
    pub checks: Vec<crate::selfcheck::CheckOutcome>,
    pub passed: bool,
}

impl TextReport for SelfcheckReport {
    fn text(&self) -> String {
        let mut out = String::new();
        push_kv(&mut out, "command", &self.command);
        push_kv(&mut out, "seed", self.seed);
        push_kv(&mut out, "random instances", self.random_instances);
        push_kv(&mut out, "bound", self.bound);
        for check in &self.checks {
            let status = if check.violations == 0 { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} ({} instances",
                check.name, check.instances
            ));
            if check.violations > 0 {
                out.push_str(&format!(", {} violations", check.violations));
            }
            out.push_str(")\n");
            if let Some(detail) = &check.detail {
                out.push_str(&format!("  first violation: {detail}\n"));
            }
        }
        push_kv(&mut out, "result", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
