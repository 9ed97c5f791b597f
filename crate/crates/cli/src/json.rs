use std::collections::BTreeMap;

use pcw_core::cohomology::{CohomologyReport, VerdictKind};
use pcw_core::model::ModelVerdict;
use pcw_core::ManifoldModel;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub name: String,
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub holds: bool,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub model: String,
    pub dim: usize,
    pub betti: Vec<usize>,
    pub spaces: Vec<SpaceJson>,
    pub verdicts: BTreeMap<String, VerdictJson>,
    pub notes: Vec<String>,
}

impl ReportJson {
    pub fn new(report: &CohomologyReport, model: &ManifoldModel, basis: &pcw_core::forms::GradedBasis) -> Self {
        ReportJson {
            model: report.model.clone(),
            dim: report.dim,
            betti: report.betti.clone(),
            spaces: report
                .spaces
                .iter()
                .map(|s| SpaceJson {
                    name: s.name.clone(),
                    degree: s.space.degree(),
                    dim: s.space.dim(),
                    basis: s.space.forms(basis).iter().map(|f| model.render(f)).collect(),
                })
                .collect(),
            verdicts: report
                .verdicts
                .iter()
                .map(|v| {
                    let kind = match v.kind {
                        VerdictKind::Invariant => "invariant",
                        VerdictKind::Observation => "observation",
                    };
                    (v.name.clone(), VerdictJson { holds: v.holds, kind: kind.into(), detail: v.detail.clone() })
                })
                .collect(),
            notes: report.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub model: String,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

impl From<&ModelVerdict> for ValidationJson {
    fn from(v: &ModelVerdict) -> Self {
        ValidationJson {
            model: v.model.clone(),
            passed: v.passed(),
            checks: v
                .checks
                .iter()
                .map(|c| CheckJson { name: c.name.clone(), passed: c.passed, witnesses: c.witnesses.clone() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub model: String,
    pub predicate: String,
    pub form: String,
    pub holds: Option<bool>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}
