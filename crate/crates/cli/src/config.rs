use std::fmt;

use horobound::group::{FREE, OCTAGON};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Disk,
    Tree,
}

impl ModelKind {
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        match s {
            "disk" => Ok(ModelKind::Disk),
            "tree" => Ok(ModelKind::Tree),
            _ => Err(UsageError(format!("unknown model {s:?}, expected disk or tree"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Disk => "disk",
            ModelKind::Tree => "tree",
        }
    }

    pub fn default_group(self) -> &'static str {
        match self {
            ModelKind::Disk => OCTAGON,
            ModelKind::Tree => FREE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(UsageError(format!("unknown format {s:?}, expected json or csv"))),
        }
    }
}

/// Bad flags, config files or descriptors. Maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<horobound::Error> for UsageError {
    fn from(e: horobound::Error) -> Self {
        UsageError(e.to_string())
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TOL: f64 = horobound::disk::ALGEBRAIC_TOL;
pub const DEFAULT_LIMIT_TOL: f64 = horobound::disk::LIMIT_TOL;

/// Everything a command needs. `samples` scales the per-check input counts:
/// at the default of 100 every check draws its nominal count.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelKind,
    pub group: String,
    pub tol: f64,
    pub limit_tol: f64,
    pub samples: usize,
    pub rmax: usize,
    pub seed: u64,
    pub format: Format,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(model: ModelKind) -> Self {
        RunConfig {
            model,
            group: model.default_group().to_string(),
            tol: DEFAULT_TOL,
            limit_tol: DEFAULT_LIMIT_TOL,
            samples: 100,
            rmax: 8,
            seed: DEFAULT_SEED,
            format: Format::Json,
            timings: false,
        }
    }

    /// `nominal` inputs at the default sample setting, at least one.
    pub fn scaled(&self, nominal: usize) -> usize {
        (nominal * self.samples / 100).max(1)
    }

    /// Sets one `key=value` entry.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), UsageError> {
        let value = value.trim();
        let float = |v: &str| -> Result<f64, UsageError> {
            let x: f64 = v.parse().map_err(|_| UsageError(format!("{key}: {v:?} is not a number")))?;
            if !(x > 0.0 && x.is_finite()) {
                return Err(UsageError(format!("{key} must be a positive number, got {v}")));
            }
            Ok(x)
        };
        let count = |v: &str| -> Result<usize, UsageError> {
            v.parse().map_err(|_| UsageError(format!("{key}: {v:?} is not a nonnegative integer")))
        };
        match key.trim() {
            "model" => {
                let m = ModelKind::parse(value)?;
                if self.group == self.model.default_group() {
                    self.group = m.default_group().to_string();
                }
                self.model = m;
            }
            "group" => self.group = value.to_string(),
            "tol" => self.tol = float(value)?,
            "limit_tol" => self.limit_tol = float(value)?,
            "samples" => self.samples = count(value)?,
            "rmax" => self.rmax = count(value)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| UsageError(format!("seed: {value:?} is not a 64-bit integer")))?
            }
            "format" => self.format = Format::parse(value)?,
            "timings" => {
                self.timings = value.parse().map_err(|_| UsageError(format!("timings: {value:?} is not true/false")))?
            }
            other => return Err(UsageError(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a config file: one `key = value` per line, `#` starts a
    /// comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), UsageError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected key = value", i + 1)))?;
            self.set(k, v).map_err(|e| UsageError(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.group != self.model.default_group() {
            return Err(UsageError(format!(
                "group {:?} does not act on the {} model (expected {})",
                self.group,
                self.model.name(),
                self.model.default_group()
            )));
        }
        if self.samples == 0 {
            return Err(UsageError("samples must be positive".into()));
        }
        Ok(())
    }
}
