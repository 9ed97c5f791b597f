//! Published table rows for the builtins, compared against computed spaces.

use pcw_core::cohomology::{verify, CohomologyReport, Engine, Predicate};
use pcw_core::linalg::Subspace;
use pcw_core::{builtin, Error, Geometry, ManifoldModel, Result};

pub struct ReferenceRow {
    pub label: &'static str,
    /// Name of the computed space in the report.
    pub space: &'static str,
    pub forms: &'static [&'static str],
}

pub struct Reference {
    pub model: &'static str,
    pub title: &'static str,
    pub rows: &'static [ReferenceRow],
}

const OMEGA4: &str = "e1^e2 + e3^e4";

const T4_FLAT: Reference = Reference {
    model: "t4-flat",
    title: "flat four-torus with the standard structure",
    rows: &[
        ReferenceRow { label: "Z_J0^+", space: "Z_J^+", forms: &[OMEGA4, "e1^e2 - e3^e4", "e1^e3 + e2^e4", "e1^e4 - e2^e3"] },
        ReferenceRow { label: "Z_J0^-", space: "Z_J^-", forms: &["e1^e3 - e2^e4", "e1^e4 + e2^e3"] },
        ReferenceRow {
            label: "ker P_J0",
            space: "ker_P_J",
            forms: &["e1^e2 - e3^e4", "e1^e3 + e2^e4", "e1^e4 - e2^e3", "e1^e3 - e2^e4", "e1^e4 + e2^e3"],
        },
        ReferenceRow { label: "Harm_g0^+", space: "Harm_g^+", forms: &[OMEGA4, "e1^e3 - e2^e4", "e1^e4 + e2^e3"] },
        ReferenceRow { label: "Harm_g0^-", space: "Harm_g^-", forms: &["e1^e2 - e3^e4", "e1^e3 + e2^e4", "e1^e4 - e2^e3"] },
    ],
};

const M6C_KER: &[&str] = &["a1^b2 - a2^b1", "a1^b2 + a2^b1", "a1^b1 - gam^eta", "a2^b2 - gam^eta"];

const M6C: Reference = Reference {
    model: "m6c",
    title: "six-dimensional completely solvable example",
    rows: &[
        ReferenceRow { label: "H^2_dR", space: "H^2_dR", forms: &["a1^b1", "a1^b2", "a2^b1", "a2^b2", "gam^eta"] },
        ReferenceRow { label: "Z_J^+", space: "Z_J^+", forms: &["a1^b2 + a2^b1", "a1^b1", "a2^b2", "gam^eta"] },
        ReferenceRow { label: "Z_J^-", space: "Z_J^-", forms: &["a1^b2 - a2^b1"] },
        ReferenceRow { label: "Harm^-_d+dL", space: "Harm^-_d+dL", forms: M6C_KER },
        ReferenceRow { label: "Harm^-_ddL", space: "Harm^-_ddL", forms: M6C_KER },
        ReferenceRow { label: "ker P_J", space: "ker_P_J", forms: M6C_KER },
    ],
};

const KT_OMEGA: &str = "e1^e2 + e3^e4";

const KODAIRA_THURSTON: Reference = Reference {
    model: "kodaira-thurston",
    title: "Kodaira-Thurston nilmanifold",
    rows: &[
        ReferenceRow { label: "H^2_dR", space: "H^2_dR", forms: &[KT_OMEGA, "e1^e2 - e3^e4", "e1^e3", "e2^e4"] },
        ReferenceRow { label: "Z_J^+", space: "Z_J^+", forms: &[KT_OMEGA, "e1^e2 - e3^e4"] },
        ReferenceRow { label: "Z_J^-", space: "Z_J^-", forms: &["e1^e3", "e2^e4"] },
        ReferenceRow {
            label: "H^2_d+dL",
            space: "Harm^2_d+dL",
            forms: &[KT_OMEGA, "e1^e2 - e3^e4", "e1^e3", "e2^e4", "e2^e3"],
        },
        ReferenceRow {
            label: "H^2_ddL",
            space: "Harm^2_ddL",
            forms: &[KT_OMEGA, "e1^e2 - e3^e4", "e1^e3", "e2^e4", "e1^e4"],
        },
        ReferenceRow { label: "ker P_J", space: "ker_P_J", forms: &["e1^e2 - e3^e4", "e1^e3", "e2^e4"] },
    ],
};

pub fn reference(model: &str) -> Option<&'static Reference> {
    [&T4_FLAT, &M6C, &KODAIRA_THURSTON].into_iter().find(|r| r.model == model)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    /// Known disagreement with the published row, with an explanation.
    Discrepancy(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub space: String,
    pub expected: Vec<String>,
    pub expected_dim: usize,
    pub computed: Vec<String>,
    pub computed_dim: usize,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableComparison {
    pub model: String,
    pub title: String,
    pub rows: Vec<TableRow>,
}

impl TableComparison {
    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status == RowStatus::Match)
    }
}

fn parse_all(model: &ManifoldModel, forms: &[&str]) -> Result<Vec<pcw_core::forms::InvariantForm>> {
    forms.iter().map(|f| model.parse_form(f)).collect()
}

fn j_rows_note(model: &ManifoldModel, engine: &Engine, report: &CohomologyReport, r: &Reference) -> Result<String> {
    let listed = |space: &str| -> Result<Subspace> {
        let row = r.rows.iter().find(|row| row.space == space).expect("J rows present");
        engine.span(2, &parse_all(model, row.forms)?)
    };
    let together = listed("Z_J^+")?.sum(&listed("Z_J^-")?)?;
    let computed = report.space("Z_J^+").expect("computed").sum(report.space("Z_J^-").expect("computed"))?;
    let agree = if together.equals(&computed)? { "agree" } else { "disagree" };
    Ok(format!(
        "the J-involution exchanges e1^e3 and e2^e4, so only their difference is anti-invariant; \
         the two listed J rows together span {} dimensions and {agree} with Z_J^+ + Z_J^-",
        together.dim()
    ))
}

/// Compares each published row with the computed space of the same name.
pub fn compare(name: &str) -> Result<TableComparison> {
    let r = reference(name).ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
    let model = builtin(name)?;
    let engine = Engine::new(&model)?;
    let report = engine.report()?;
    let mut rows = Vec::new();
    for row in r.rows {
        let expected = engine.span(2, &parse_all(&model, row.forms)?)?;
        let computed = report.space(row.space).ok_or_else(|| Error::Invalid(format!("no space {}", row.space)))?;
        let status = if expected.equals(computed)? {
            RowStatus::Match
        } else if name == "kodaira-thurston" && row.space.starts_with("Z_J") {
            RowStatus::Discrepancy(j_rows_note(&model, &engine, &report, r)?)
        } else {
            RowStatus::Mismatch
        };
        rows.push(TableRow {
            label: row.label.to_string(),
            space: row.space.to_string(),
            expected: row.forms.iter().map(|f| f.to_string()).collect(),
            expected_dim: expected.dim(),
            computed: engine.forms(computed).iter().map(|f| model.render(f)).collect(),
            computed_dim: computed.dim(),
            status,
        });
    }
    Ok(TableComparison { model: name.to_string(), title: r.title.to_string(), rows })
}

/// Notes to attach to a report on a builtin with known disagreements.
pub fn discrepancy_notes(name: &str) -> Result<Vec<String>> {
    if reference(name).is_none() {
        return Ok(Vec::new());
    }
    let table = compare(name)?;
    Ok(table
        .rows
        .iter()
        .filter_map(|r| match &r.status {
            RowStatus::Discrepancy(note) => Some(format!("published {} row differs: {note}", r.label)),
            _ => None,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointOutcome {
    Holds,
    Fails(String),
    Undetermined(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseCheck {
    pub row: &'static str,
    pub form: &'static str,
    pub predicate: &'static str,
    pub outcome: PointOutcome,
    pub notes: Vec<String>,
}

const PLUS_1: &str = "(1/(1+m))*(e1^e2 - e3^e4 + e1^e4 - m*e2^e3)";
const PLUS_2: &str = "(1/(1-m))*(e1^e2 + e3^e4 + e1^e4 - m*e2^e3)";
const HARM_PLUS: &str = "(1/(1+m))*(e1^e2 + e3^e4 + e1^e4 + m*e2^e3)";

/// Rows of the twisted four-torus, each with the predicates its row asserts.
pub const T4_M_ROWS: &[(&str, &[&str], &[&str])] = &[
    ("Z_J^+", &[OMEGA4, "e1^e2 - e3^e4", "e1^e3 + m*e2^e4", PLUS_1, PLUS_2], &["closed", "j-invariant"]),
    ("Z_J^-", &["e1^e3 - m*e2^e4"], &["closed", "j-anti-invariant"]),
    ("ker P_J", &["e1^e3 - m*e2^e4", "e1^e2 - e3^e4", "e1^e3 + m*e2^e4", PLUS_1], &["in-ker-pj"]),
    ("Harm_g^+", &[OMEGA4, "e1^e3 - m*e2^e4", HARM_PLUS], &["harmonic", "self-dual"]),
    ("Harm_g^-", &["e1^e2 - e3^e4", "e1^e3 + m*e2^e4", PLUS_1], &["harmonic", "anti-self-dual"]),
];

fn star_check(geo: &Geometry, form: &pcw_core::forms::InvariantForm, sign: i64) -> Result<Option<pcw_core::forms::InvariantForm>> {
    let star = geo.hodge_star(form)?;
    let target = form.scale(&pcw_core::coeff::Scalar::from_int(sign));
    let diff = &star - &target;
    Ok(if diff.is_zero() { None } else { Some(diff) })
}

/// Pointwise verification of every form in the twisted four-torus rows.
pub fn pointwise_t4m() -> Result<Vec<PointwiseCheck>> {
    let model = builtin("t4-m")?;
    let geo = Geometry::new(&model)?;
    let mut out = Vec::new();
    for &(row, forms, predicates) in T4_M_ROWS {
        for &text in forms {
            let form = model.parse_form(text)?;
            for &pred in predicates {
                let (outcome, notes) = match pred {
                    "self-dual" | "anti-self-dual" => {
                        let sign = if pred == "self-dual" { 1 } else { -1 };
                        match star_check(&geo, &form, sign)? {
                            None => (PointOutcome::Holds, Vec::new()),
                            Some(w) => (PointOutcome::Fails(model.render(&w)), Vec::new()),
                        }
                    }
                    _ => {
                        let p: Predicate = pred.parse()?;
                        match verify(&geo, &form, p) {
                            Ok(v) => {
                                let outcome = match &v.witness {
                                    None => PointOutcome::Holds,
                                    Some(w) => PointOutcome::Fails(model.render(w)),
                                };
                                (outcome, v.notes)
                            }
                            Err(e @ Error::UndeclaredSymbol(_)) => (PointOutcome::Undetermined(e.to_string()), Vec::new()),
                            Err(e) => return Err(e),
                        }
                    }
                };
                out.push(PointwiseCheck { row, form: text, predicate: pred, outcome, notes });
            }
        }
    }
    Ok(out)
}
