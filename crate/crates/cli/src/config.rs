use std::env;

pub const DEFAULT_MAX_DIM: usize = 8;
pub const MAX_DIM_VAR: &str = "PCW_MAX_DIM";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Report,
    Tables,
    Verify,
    ListBuiltins,
    OracleCheck,
}

impl Command {
    pub fn needs_model(self) -> bool {
        self != Command::ListBuiltins
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    /// Builtin name or path to a manifest file.
    pub source: Option<String>,
    pub format: Format,
    pub form: Option<String>,
    pub predicate: Option<String>,
    pub max_dim: usize,
}

impl RunConfig {
    pub fn new(command: Command, source: Option<&str>) -> Self {
        RunConfig {
            command,
            source: source.map(str::to_string),
            format: Format::Text,
            form: None,
            predicate: None,
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn json(mut self) -> Self {
        self.format = Format::Json;
        self
    }

    pub fn with_check(mut self, form: &str, predicate: &str) -> Self {
        self.form = Some(form.to_string());
        self.predicate = Some(predicate.to_string());
        self
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> Self {
        self.max_dim = max_dim;
        self
    }

    /// Reads `PCW_MAX_DIM`, falling back to the default when unset.
    pub fn max_dim_from_env() -> Result<usize, String> {
        match env::var(MAX_DIM_VAR) {
            Err(_) => Ok(DEFAULT_MAX_DIM),
            Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_DIM_VAR} must be a positive integer, got `{v}`")),
        }
    }

    pub fn check(&self) -> Result<(), String> {
        if self.command.needs_model() && self.source.is_none() {
            return Err("a builtin name or manifest path is required".into());
        }
        if self.command == Command::Verify && (self.form.is_none() || self.predicate.is_none()) {
            return Err("verify needs both --form and --pred".into());
        }
        Ok(())
    }
}
