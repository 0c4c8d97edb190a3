#![allow(dead_code)]

use std::path::{Path, PathBuf};

use nliq_core::Engine;
use nliq_server::AppConfig;

pub fn config_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/nliq.toml")
}

pub fn fixture_engine() -> Engine {
    AppConfig::load(&config_path()).unwrap().engine().unwrap()
}
