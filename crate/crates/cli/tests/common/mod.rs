//! Helpers shared by the command-line integration tests.
#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

/// Directory holding the shipped scenario files (`<workspace>/scenarios`).
pub fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .canonicalize()
        .expect("shipped scenario directory exists")
}

/// Sorted list of every shipped scenario file.
pub fn shipped_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(scenario_dir())
        .expect("listing the scenario directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    assert!(
        files.len() >= 12,
        "expected the full set of shipped scenario files, found {}",
        files.len()
    );
    files
}

/// Fresh scratch directory under the system temp dir, wiped on re-entry.
pub fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("mslab-cli-tests").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("creating scratch directory");
    dir
}
