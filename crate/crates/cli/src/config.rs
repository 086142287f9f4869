//! Run configuration: an optional TOML document, overridden by command-line flags.
//!
//! ```toml
//! class = "rado"              # builtin name, or
//! class_file = "k4free.toml"  # class document, relative to this file
//! format = "csv"
//! seed = 2024
//! budget = "2^24"
//! max_size = 3
//! size = 2
//! depth = 6
//! quick = false
//! ```

use std::path::{Path, PathBuf};

use bigdeg_core::document::{class_from_toml, class_to_toml};
use bigdeg_core::ClassSpec;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Document { path: String, message: String },
    #[error("unknown class `{0}` (builtins: linear-order, rado, triangle-free, digraph, tournament; or a path to a class document)")]
    UnknownClass(String),
    #[error("no class given: pass --class or set `class` in the config")]
    MissingClass,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

/// The config document. Every field is optional; unknown keys are rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub class: Option<String>,
    pub class_file: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub budget: Option<toml::Value>,
    pub jobs: Option<usize>,
    pub max_size: Option<usize>,
    pub size: Option<usize>,
    pub depth: Option<usize>,
    #[serde(default)]
    pub quick: bool,
    /// Directory the document was read from, for resolving `class_file`.
    #[serde(skip)]
    pub base: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Document { path: path.display().to_string(), message: e.to_string() })?;
        let mut cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| ConfigError::Document { path: path.display().to_string(), message: e.to_string() })?;
        cfg.base = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn budget_text(&self) -> Option<String> {
        self.budget.as_ref().map(|v| match v {
            toml::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
    }
}

pub fn builtin(name: &str) -> Option<ClassSpec> {
    Some(match name {
        "linear-order" | "rationals" => ClassSpec::linear_order(),
        "rado" | "graphs" => ClassSpec::rado(),
        "triangle-free" | "forb-k3" => ClassSpec::triangle_free(),
        "digraph" => ClassSpec::digraph(),
        "tournament" => ClassSpec::tournament(),
        _ => return None,
    })
}

fn load_class_file(path: &Path) -> Result<ClassSpec, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Document { path: path.display().to_string(), message: e.to_string() })?;
    class_from_toml(&text).map_err(|e| ConfigError::Document { path: path.display().to_string(), message: e.to_string() })
}

/// Resolves the class: the flag wins over the config; a non-builtin name is read as a path.
pub fn resolve_class(flag: Option<&str>, cfg: &RunConfig) -> Result<ClassSpec, ConfigError> {
    if let Some(name) = flag.or(cfg.class.as_deref()) {
        if let Some(spec) = builtin(name) {
            return Ok(spec);
        }
        let path = Path::new(name);
        if path.is_file() {
            return load_class_file(path);
        }
        return Err(ConfigError::UnknownClass(name.to_string()));
    }
    if let Some(file) = &cfg.class_file {
        let path = match &cfg.base {
            Some(base) if file.is_relative() => base.join(file),
            _ => file.clone(),
        };
        return load_class_file(&path);
    }
    Err(ConfigError::MissingClass)
}

/// What the output header records and the config hash covers.
#[derive(Clone, Debug, Serialize)]
pub struct Resolved {
    pub command: String,
    /// Class document, so equal classes hash equally however they were named.
    pub class: Option<String>,
    pub format: Format,
    pub seed: u64,
    pub depth: Option<usize>,
    pub params: Vec<(String, String)>,
}

impl Resolved {
    pub fn new(command: &str, class: Option<&ClassSpec>, format: Format, seed: u64) -> Result<Self, ConfigError> {
        let class = class
            .map(|c| class_to_toml(c).map_err(|e| ConfigError::Invalid(e.to_string())))
            .transpose()?;
        Ok(Resolved { command: command.into(), class, format, seed, depth: None, params: Vec::new() })
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn depth(mut self, d: Option<usize>) -> Self {
        self.depth = d;
        self
    }

    /// First 16 hex digits of the SHA-256 of the resolved config.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(&Sha256::digest(bytes)[..8])
    }
}
