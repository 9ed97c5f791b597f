//! Plain-text layout of reports, validations and table comparisons.

use std::fmt::Write;

use pcw_core::cohomology::{CohomologyReport, VerdictKind, VerificationResult};
use pcw_core::forms::GradedBasis;
use pcw_core::model::ModelVerdict;
use pcw_core::ManifoldModel;

use crate::oracle::{OracleSummary, Which};
use crate::tables::{PointOutcome, PointwiseCheck, RowStatus, TableComparison};

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn validation(v: &ModelVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {}", v.model);
    for c in &v.checks {
        let _ = writeln!(out, "  [{}] {}", mark(c.passed), c.name);
        for w in &c.witnesses {
            let _ = writeln!(out, "         {w}");
        }
    }
    let _ = writeln!(out, "{}", if v.passed() { "valid" } else { "invalid" });
    out
}

pub fn report(r: &CohomologyReport, model: &ManifoldModel, basis: &GradedBasis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {} (dimension {})", r.model, r.dim);
    let betti: Vec<String> = r.betti.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "betti numbers: {}", betti.join(" "));
    let _ = writeln!(out);
    let width = r.spaces.iter().map(|s| s.name.len()).max().unwrap_or(0).max(5);
    let _ = writeln!(out, "{:<width$}  dim  basis", "space");
    for s in &r.spaces {
        let forms: Vec<String> = s.space.forms(basis).iter().map(|f| model.render(f)).collect();
        let shown = if forms.is_empty() { "0".to_string() } else { forms.join(", ") };
        let _ = writeln!(out, "{:<width$}  {:>3}  {}", s.name, s.space.dim(), shown);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "verdicts");
    for v in &r.verdicts {
        let kind = match v.kind {
            VerdictKind::Invariant => "invariant",
            VerdictKind::Observation => "observation",
        };
        let _ = writeln!(out, "  [{}] {} ({kind}): {}", mark(v.holds), v.name, v.detail);
    }
    if !r.notes.is_empty() {
        let _ = writeln!(out);
        let _ = writeln!(out, "notes");
        for n in &r.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
    out
}

pub fn table(t: &TableComparison) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} ({})", t.model, t.title);
    let width = t.rows.iter().map(|r| r.label.len()).max().unwrap_or(0).max(3);
    let _ = writeln!(out, "{:<width$}  expected  computed  status", "row");
    for r in &t.rows {
        let status = match &r.status {
            RowStatus::Match => "match",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Discrepancy(_) => "discrepancy",
        };
        let _ = writeln!(out, "{:<width$}  {:>8}  {:>8}  {status}", r.label, r.expected_dim, r.computed_dim);
        let _ = writeln!(out, "{:<width$}    listed:   {}", "", r.expected.join(", "));
        let _ = writeln!(out, "{:<width$}    computed: {}", "", r.computed.join(", "));
        if let RowStatus::Discrepancy(note) = &r.status {
            let _ = writeln!(out, "{:<width$}    note: {note}", "");
        }
    }
    out
}

pub fn pointwise(checks: &[PointwiseCheck]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "t4-m (four-torus with twisted J, checked pointwise)");
    let mut current = "";
    for c in checks {
        if c.row != current {
            current = c.row;
            let _ = writeln!(out, "{current}");
        }
        let outcome = match &c.outcome {
            PointOutcome::Holds => "holds".to_string(),
            PointOutcome::Fails(w) => format!("fails, witness {w}"),
            PointOutcome::Undetermined(why) => format!("undetermined: {why}"),
        };
        let _ = writeln!(out, "  {} [{}] {outcome}", c.form, c.predicate);
        for n in &c.notes {
            let _ = writeln!(out, "      note: {n}");
        }
    }
    out
}

pub fn verification(v: &VerificationResult, model: &ManifoldModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} is {}", v.predicate, model.render(&v.form), if v.holds { "true" } else { "false" });
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness: {}", model.render(w));
    }
    for n in &v.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn oracle(model: &str, s: &OracleSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "oracle check on {model}: {} star evaluations compared", s.compared);
    for (k, which, form, main, brute) in &s.mismatches {
        let star = match which {
            Which::Metric => "*_g",
            Which::Symplectic => "*_s",
        };
        let _ = writeln!(out, "  degree {k} {star} {form}: main {main}, oracle {brute}");
    }
    let _ = writeln!(out, "{}", if s.passed() { "all agree" } else { "disagreement found" });
    out
}
