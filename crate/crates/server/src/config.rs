use std::path::{Path, PathBuf};

use nliq_core::query_service::EngineError;
use nliq_core::Engine;
use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: toml::de::Error,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Settings read from a TOML file. Relative paths are resolved against
/// the directory containing the file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AppConfig {
    pub schema: PathBuf,
    pub data_dir: PathBuf,
    pub lexicon: PathBuf,
    #[serde(default = "default_host")]
    pub host: String,
    #[serde(default = "default_port")]
    pub port: u16,
    #[serde(default)]
    pub trace: bool,
    /// Origin allowed to call the API from a browser, e.g. a chat page
    /// served from another port.
    #[serde(default)]
    pub allow_origin: Option<String>,
}

fn default_host() -> String {
    "127.0.0.1".into()
}

fn default_port() -> u16 {
    DEFAULT_PORT
}

impl AppConfig {
    pub fn from_toml(text: &str, base: &Path) -> Result<Self, toml::de::Error> {
        let mut config: AppConfig = toml::from_str(text)?;
        for p in [&mut config.schema, &mut config.data_dir, &mut config.lexicon] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let display = || path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: display(), source })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base).map_err(|source| ConfigError::Parse { path: display(), source })
    }

    /// Loads and validates every referenced file.
    pub fn engine(&self) -> Result<Engine, ConfigError> {
        Ok(Engine::load(&self.schema, &self.data_dir, &self.lexicon)?)
    }
}
