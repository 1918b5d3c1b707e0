//! Scenario-driven command line front end for the multiscale laboratory.
//!
//! The `mslab` binary reads TOML scenario files, validates them (reporting
//! every violated constraint, not just the first), runs the selected model,
//! and writes deterministic CSV result files plus a one-line summary. A
//! study file wraps a scenario and sweeps one parameter across a list of
//! values, tabulating a summary metric and its log-log slope.
//!
//! Exit codes: `0` success, `2` configuration or validation failure,
//! `3` runtime failure inside a model.

pub mod runner;
pub mod scenario;
pub mod study;

use std::path::PathBuf;

use scenario::{Issue, ScenarioDoc};
use study::StudyDoc;

/// Environment variable overriding the default output root (`./outputs`).
pub const OUTPUT_ROOT_ENV: &str = "MSLAB_OUTPUT_ROOT";

/// Resolves the output root: explicit flag, then the
/// [`OUTPUT_ROOT_ENV`] environment variable, then `./outputs`.
pub fn output_root(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("outputs"))
}

/// A parsed configuration file: either a single scenario or a study.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Scenario(ScenarioDoc),
    Study(StudyDoc),
}

impl Document {
    /// Parses TOML text, deciding by the presence of a `[sweep]` section
    /// whether it describes a scenario or a study.
    pub fn from_toml(text: &str) -> Result<Self, Vec<Issue>> {
        let value: toml::Value = toml::from_str(text).map_err(|e| {
            vec![Issue {
                path: "<document>".to_string(),
                message: e.to_string(),
            }]
        })?;
        if value.get("sweep").is_some() {
            StudyDoc::from_toml(text).map(Document::Study)
        } else {
            ScenarioDoc::from_toml(text).map(Document::Scenario)
        }
    }

    /// Runs all semantic checks.
    pub fn validate(&self) -> Vec<Issue> {
        match self {
            Document::Scenario(s) => s.validate(),
            Document::Study(s) => s.validate(),
        }
    }

    pub fn model(&self) -> &str {
        match self {
            Document::Scenario(s) => &s.model,
            Document::Study(s) => &s.scenario.model,
        }
    }
}
