use std::fs;
use std::path::Path;

use pcw_core::cohomology::{verify, Engine, Predicate};
use pcw_core::manifest::parse_manifest;
use pcw_core::model::BUILTIN_NAMES;
use pcw_core::{builtin, Error, Geometry, ManifoldModel};

use crate::config::{Command, Format, RunConfig};
use crate::json::{ReportJson, ValidationJson, VerifyJson};
use crate::{oracle, render, tables};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_MODEL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(err: &Error) -> Self {
        Outcome { code: exit_code(err), stdout: String::new(), stderr: format!("error: {err}\n") }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvariantViolation(_) | Error::SplitFailure(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

/// Resolves a builtin name, or reads and parses a manifest file.
pub fn load_model(source: &str) -> Result<ManifoldModel, Error> {
    if BUILTIN_NAMES.contains(&source) {
        return builtin(source);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Error::UnknownBuiltin(source.to_string()));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {source}: {e}")))?;
    parse_manifest(&text)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn run(config: &RunConfig) -> Outcome {
    if let Err(msg) = config.check() {
        return Outcome::usage(msg);
    }
    if config.command == Command::ListBuiltins {
        let mut out = String::new();
        for name in BUILTIN_NAMES {
            out.push_str(name);
            out.push('\n');
        }
        return Outcome::ok(out);
    }
    let source = config.source.as_deref().expect("checked");
    let model = match load_model(source) {
        Ok(m) => m,
        Err(e) => return Outcome::error(&e),
    };
    if model.dim() > config.max_dim {
        return Outcome::error(&Error::DimensionTooLarge { dim: model.dim(), limit: config.max_dim });
    }
    let result = match config.command {
        Command::Validate => Ok(validate(&model, config.format)),
        Command::Report => report(&model, config.format),
        Command::Tables => tables_for(&model),
        Command::Verify => verify_form(&model, config),
        Command::OracleCheck => oracle::oracle_check(&model).map(|s| {
            let text = render::oracle(model.name(), &s);
            Outcome::with_code(if s.passed() { EXIT_OK } else { EXIT_INVARIANT }, text)
        }),
        Command::ListBuiltins => unreachable!(),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn validate(model: &ManifoldModel, format: Format) -> Outcome {
    let verdict = model.validate();
    let text = match format {
        Format::Text => render::validation(&verdict),
        Format::Json => to_json(&ValidationJson::from(&verdict)),
    };
    Outcome::with_code(if verdict.passed() { EXIT_OK } else { EXIT_INVALID_MODEL }, text)
}

fn report(model: &ManifoldModel, format: Format) -> Result<Outcome, Error> {
    let verdict = model.validate();
    if !verdict.passed() {
        return Ok(Outcome::with_code(EXIT_INVALID_MODEL, render::validation(&verdict)));
    }
    let engine = match Engine::new(model) {
        Err(Error::FunctionCoefficientModel(name)) => {
            return Ok(Outcome::usage(format!(
                "{name} has function coefficients; use `verify` to check individual forms"
            )))
        }
        other => other?,
    };
    let mut report = engine.report()?;
    if BUILTIN_NAMES.contains(&model.name()) && builtin(model.name())? == *model {
        report.notes.extend(tables::discrepancy_notes(model.name())?);
    }
    let basis = engine.geometry().basis();
    let text = match format {
        Format::Text => render::report(&report, model, basis),
        Format::Json => to_json(&ReportJson::new(&report, model, basis)),
    };
    let code = if report.invariant_failures().is_empty() { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Outcome::with_code(code, text))
}

fn tables_for(model: &ManifoldModel) -> Result<Outcome, Error> {
    let name = model.name();
    if name == "t4-m" {
        return Ok(Outcome::ok(render::pointwise(&tables::pointwise_t4m()?)));
    }
    if tables::reference(name).is_none() {
        return Ok(Outcome::usage(format!("no published table for `{name}`")));
    }
    Ok(Outcome::ok(render::table(&tables::compare(name)?)))
}

fn verify_form(model: &ManifoldModel, config: &RunConfig) -> Result<Outcome, Error> {
    let predicate: Predicate = config.predicate.as_deref().expect("checked").parse()?;
    let text = config.form.as_deref().expect("checked");
    let form = model.parse_form(text)?;
    let geo = Geometry::new(model)?;
    match verify(&geo, &form, predicate) {
        Ok(v) => {
            let out = match config.format {
                Format::Text => render::verification(&v, model),
                Format::Json => to_json(&VerifyJson {
                    model: model.name().to_string(),
                    predicate: predicate.to_string(),
                    form: model.render(&form),
                    holds: Some(v.holds),
                    witness: v.witness.as_ref().map(|w| model.render(w)),
                    notes: v.notes.clone(),
                }),
            };
            Ok(Outcome::ok(out))
        }
        Err(e @ Error::UndeclaredSymbol(_)) => Ok(Outcome {
            code: EXIT_USAGE,
            stdout: format!("{predicate}: undetermined\n"),
            stderr: format!("error: {e}\n"),
        }),
        Err(e) => Err(e),
    }
}
