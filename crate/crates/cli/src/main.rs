//! `mslab` — scenario runner for the multiscale differential-equation
//! laboratory.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mslab_cli::runner::run_scenario;
use mslab_cli::scenario::Issue;
use mslab_cli::study::run_study;
use mslab_cli::{output_root, Document};

/// Exit code for configuration and validation failures.
const EXIT_CONFIG: u8 = 2;
/// Exit code for runtime failures inside a model.
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mslab",
    version,
    about = "Multiscale differential-equation laboratory",
    long_about = "Runs scenario files describing oscillator, sorption and shallow-water \
                  experiments, writing deterministic CSV results.\n\
                  Output lands under --output-root, the MSLAB_OUTPUT_ROOT environment \
                  variable, or ./outputs, in that order of preference."
)]
struct Cli {
    /// Root directory for all outputs (overrides MSLAB_OUTPUT_ROOT).
    #[arg(long, global = true)]
    output_root: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a single scenario file.
    Run {
        /// Path to the scenario TOML file.
        scenario: PathBuf,
    },
    /// Run a parameter study file (a scenario plus a [sweep] section).
    Study {
        /// Path to the study TOML file.
        study: PathBuf,
    },
    /// Check a scenario or study file and report every violated constraint.
    Validate {
        /// Path to the TOML file.
        file: PathBuf,
    },
    /// List the scenario files of a directory with their model tags.
    ListScenarios {
        /// Directory to scan for *.toml files.
        #[arg(long, default_value = "scenarios")]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let root = output_root(cli.output_root.clone());
    let code = match &cli.cmd {
        Cmd::Run { scenario } => cmd_run(scenario, &root),
        Cmd::Study { study } => cmd_study(study, &root),
        Cmd::Validate { file } => cmd_validate(file),
        Cmd::ListScenarios { dir } => cmd_list(dir),
    };
    ExitCode::from(code)
}

/// Reads and parses a file; prints the issues and returns `None` on failure.
fn load(path: &Path) -> Option<Document> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return None;
        }
    };
    match Document::from_toml(&text) {
        Ok(doc) => Some(doc),
        Err(issues) => {
            print_issues(path, &issues);
            None
        }
    }
}

fn print_issues(path: &Path, issues: &[Issue]) {
    eprintln!("invalid: {} ({} issue{})", path.display(), issues.len(), plural(issues.len()));
    for issue in issues {
        eprintln!("  - {issue}");
    }
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

/// Parses and validates; on success hands the document to `action`.
fn with_valid_document(path: &Path, action: impl FnOnce(Document) -> u8) -> u8 {
    let Some(doc) = load(path) else {
        return EXIT_CONFIG;
    };
    let issues = doc.validate();
    if !issues.is_empty() {
        print_issues(path, &issues);
        return EXIT_CONFIG;
    }
    action(doc)
}

fn cmd_run(path: &Path, root: &Path) -> u8 {
    with_valid_document(path, |doc| match doc {
        Document::Study(_) => {
            eprintln!(
                "error: {} is a study file (it has a [sweep] section); use `mslab study`",
                path.display()
            );
            EXIT_CONFIG
        }
        Document::Scenario(scenario) => {
            let dir = root.join(&scenario.output);
            match run_scenario(&scenario, &dir) {
                Ok(summary) => {
                    println!(
                        "wrote {} file{} under {}",
                        summary.files.len(),
                        plural(summary.files.len()),
                        dir.display()
                    );
                    println!("{}", summary.summary_line(&scenario.model, &scenario.output));
                    0
                }
                Err(e) => {
                    eprintln!("error: scenario {}: {e:#}", path.display());
                    EXIT_RUNTIME
                }
            }
        }
    })
}

fn cmd_study(path: &Path, root: &Path) -> u8 {
    with_valid_document(path, |doc| match doc {
        Document::Scenario(_) => {
            eprintln!(
                "error: {} is a plain scenario (no [sweep] section); use `mslab run`",
                path.display()
            );
            EXIT_CONFIG
        }
        Document::Study(study) => {
            let dir = root.join(&study.scenario.output);
            match run_study(&study, &dir) {
                Ok(summary) => {
                    for (value, metric) in &summary.rows {
                        println!(
                            "point: {}={value:.6e} {}={metric:.6e}",
                            study.sweep.parameter, study.sweep.metric
                        );
                    }
                    println!(
                        "wrote {} file{} under {}",
                        summary.files.len(),
                        plural(summary.files.len()),
                        dir.display()
                    );
                    println!("{}", summary.summary_line(&study.sweep));
                    0
                }
                Err(e) => {
                    eprintln!("error: study {}: {e:#}", path.display());
                    eprintln!("note: completed sweep points remain under {}", dir.display());
                    EXIT_RUNTIME
                }
            }
        }
    })
}

fn cmd_validate(path: &Path) -> u8 {
    with_valid_document(path, |doc| {
        match &doc {
            Document::Scenario(s) => {
                println!("ok: {} — scenario, model {}", path.display(), s.model);
            }
            Document::Study(s) => {
                println!(
                    "ok: {} — study, model {}, sweeping {} over {} values",
                    path.display(),
                    s.scenario.model,
                    s.sweep.parameter,
                    s.sweep.values.len()
                );
            }
        }
        0
    })
}

fn cmd_list(dir: &Path) -> u8 {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: cannot list {}: {e}", dir.display());
            return EXIT_CONFIG;
        }
    };
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        println!("no scenario files in {}", dir.display());
        return 0;
    }
    for path in paths {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        match fs::read_to_string(&path) {
            Err(e) => println!("{name:34} <unreadable: {e}>"),
            Ok(text) => {
                let description = text
                    .lines()
                    .find(|l| l.starts_with("# "))
                    .map(|l| l.trim_start_matches("# ").to_string())
                    .unwrap_or_default();
                match Document::from_toml(&text) {
                    Ok(Document::Scenario(s)) => {
                        println!("{name:34} scenario  {:18} {description}", s.model);
                    }
                    Ok(Document::Study(s)) => {
                        println!(
                            "{name:34} study     {:18} {description}",
                            s.scenario.model
                        );
                    }
                    Err(_) => println!("{name:34} <unparsable>"),
                }
            }
        }
    }
    0
}
