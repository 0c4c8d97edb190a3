//! Front ends for the question answering engine: a JSON HTTP API and a
//! line-oriented REPL.

pub mod config;
pub mod http;
pub mod repl;

pub use config::{AppConfig, ConfigError};
