//! Parameter studies: run one scenario repeatedly while sweeping a single
//! parameter, tabulate a chosen summary metric against the swept values, and
//! report the log-log slope of the relation when it is well defined.
//!
//! A study file wraps a complete scenario document under `[scenario]` and
//! adds a `[sweep]` section:
//!
//! ```toml
//! [sweep]
//! parameter = "sorption1d.n-cells"   # which knob to turn
//! values = [20, 40, 80]              # at least two settings
//! metric = "manufactured-sup-error"  # summary metric to tabulate
//!
//! [scenario]
//! model = "sorption1d"
//! output = "grid-study"
//! # ... full scenario as usual ...
//! ```
//!
//! Every sweep point runs in its own `point-NN` subdirectory; `study.csv`
//! grows one row per completed point, so a failing point leaves the finished
//! part of the table behind.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use serde::{Deserialize, Serialize};

use crate::runner::{ff, run_scenario};
use crate::scenario::{Issue, ScenarioDoc};

/// The swept parameter, its settings, and the metric to tabulate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SweepDoc {
    /// Dotted path of the swept field, e.g. `"oscillator.damping"`.
    pub parameter: String,
    /// Settings to run; at least two.
    pub values: Vec<f64>,
    /// Name of the summary metric to tabulate against the parameter.
    pub metric: String,
}

/// A full study: a base scenario plus the sweep description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyDoc {
    pub sweep: SweepDoc,
    pub scenario: ScenarioDoc,
}

/// Sweepable parameters per model tag.
pub fn sweepable_parameters(model: &str) -> &'static [&'static str] {
    match model {
        "oscillator" => &[
            "oscillator.mass",
            "oscillator.stiffness",
            "oscillator.damping",
            "oscillator.t-end",
        ],
        "pendulum" => &["pendulum.stiffness"],
        "sorption1d" => &["sorption1d.n-cells", "sorption1d.dt", "sorption1d.m-left"],
        "sorption1d-compare" => &["sorption1d-compare.epsilon"],
        "sorption2d" => &["sorption2d.n-cells"],
        "sw-network" => &["sw-network.n-cells", "sw-network.cfl"],
        _ => &[],
    }
}

fn as_cell_count(value: f64) -> Result<usize, String> {
    if value.is_finite() && value >= 1.0 && value.fract() == 0.0 {
        Ok(value as usize)
    } else {
        Err(format!("cell counts must be positive whole numbers (got {value})"))
    }
}

/// Returns a copy of `base` with the swept parameter set to `value`.
pub fn apply_sweep(base: &ScenarioDoc, parameter: &str, value: f64) -> Result<ScenarioDoc, String> {
    let mut doc = base.clone();
    match (doc.model.as_str(), parameter) {
        ("oscillator", "oscillator.mass") => {
            doc.oscillator.as_mut().ok_or("missing [oscillator] section")?.mass = value;
        }
        ("oscillator", "oscillator.stiffness") => {
            doc.oscillator.as_mut().ok_or("missing [oscillator] section")?.stiffness = value;
        }
        ("oscillator", "oscillator.damping") => {
            doc.oscillator.as_mut().ok_or("missing [oscillator] section")?.damping = value;
        }
        ("oscillator", "oscillator.t-end") => {
            doc.oscillator.as_mut().ok_or("missing [oscillator] section")?.t_end = value;
        }
        ("pendulum", "pendulum.stiffness") => {
            doc.pendulum.as_mut().ok_or("missing [pendulum] section")?.stiffness = value;
        }
        ("sorption1d", "sorption1d.n-cells") => {
            doc.sorption1d.as_mut().ok_or("missing [sorption1d] section")?.n_cells =
                as_cell_count(value)?;
        }
        ("sorption1d", "sorption1d.dt") => {
            doc.sorption1d.as_mut().ok_or("missing [sorption1d] section")?.dt = value;
        }
        ("sorption1d", "sorption1d.m-left") => {
            doc.sorption1d.as_mut().ok_or("missing [sorption1d] section")?.m_left = Some(value);
        }
        ("sorption1d-compare", "sorption1d-compare.epsilon") => {
            doc.sorption1d_compare
                .as_mut()
                .ok_or("missing [sorption1d-compare] section")?
                .epsilons = vec![value];
        }
        ("sorption2d", "sorption2d.n-cells") => {
            doc.sorption2d.as_mut().ok_or("missing [sorption2d] section")?.n_cells =
                as_cell_count(value)?;
        }
        ("sw-network", "sw-network.n-cells") => {
            let n = as_cell_count(value)?;
            for ch in &mut doc.sw_network.as_mut().ok_or("missing [sw-network] section")?.channels
            {
                ch.n_cells = n;
            }
        }
        ("sw-network", "sw-network.cfl") => {
            doc.sw_network.as_mut().ok_or("missing [sw-network] section")?.cfl = value;
        }
        (model, param) => {
            let known = sweepable_parameters(model);
            return Err(if known.is_empty() {
                format!("model {model:?} has no sweepable parameters")
            } else {
                format!(
                    "parameter {param:?} is not sweepable for model {model:?} (known: {})",
                    known.join(", ")
                )
            });
        }
    }
    Ok(doc)
}

impl StudyDoc {
    pub fn from_toml(text: &str) -> Result<Self, Vec<Issue>> {
        toml::from_str(text).map_err(|e| {
            vec![Issue {
                path: "<document>".to_string(),
                message: e.to_string(),
            }]
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("study documents serialize to TOML")
    }

    /// Validates the base scenario, the sweep description, and every derived
    /// scenario; returns all violations found.
    pub fn validate(&self) -> Vec<Issue> {
        let mut issues: Vec<Issue> = self
            .scenario
            .validate()
            .into_iter()
            .map(|i| Issue {
                path: format!("scenario.{}", i.path),
                message: i.message,
            })
            .collect();
        if self.sweep.values.len() < 2 {
            issues.push(Issue {
                path: "sweep.values".to_string(),
                message: format!(
                    "need at least two sweep values (got {})",
                    self.sweep.values.len()
                ),
            });
        }
        for (i, v) in self.sweep.values.iter().enumerate() {
            if !v.is_finite() {
                issues.push(Issue {
                    path: format!("sweep.values[{i}]"),
                    message: format!("must be finite (got {v})"),
                });
            }
        }
        if self.sweep.metric.is_empty() {
            issues.push(Issue {
                path: "sweep.metric".to_string(),
                message: "metric name must not be empty".to_string(),
            });
        }
        // Only meaningful to derive scenarios from a structurally sound base.
        if issues.iter().all(|i| !i.path.starts_with("scenario.")) {
            for (i, &v) in self.sweep.values.iter().enumerate() {
                if !v.is_finite() {
                    continue;
                }
                match apply_sweep(&self.scenario, &self.sweep.parameter, v) {
                    Err(msg) => {
                        issues.push(Issue {
                            path: "sweep.parameter".to_string(),
                            message: msg,
                        });
                        break; // the same message would repeat per value
                    }
                    Ok(derived) => {
                        for issue in derived.validate() {
                            issues.push(Issue {
                                path: format!("sweep.values[{i}] → {}", issue.path),
                                message: issue.message,
                            });
                        }
                    }
                }
            }
        }
        issues
    }
}

/// Outcome of a parameter study.
#[derive(Debug, Clone)]
pub struct StudySummary {
    /// `(parameter value, metric value)`, in sweep order.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of `ln(metric)` against `ln(parameter)`, defined
    /// when every value and metric is positive.
    pub slope: Option<f64>,
    pub files: Vec<PathBuf>,
}

impl StudySummary {
    pub fn summary_line(&self, sweep: &SweepDoc) -> String {
        let mut line = format!(
            "study: parameter={} metric={} points={}",
            sweep.parameter,
            sweep.metric,
            self.rows.len()
        );
        match self.slope {
            Some(s) => line.push_str(&format!(" log-log-slope={s:.4}")),
            None => line.push_str(" log-log-slope=undefined"),
        }
        line
    }
}

/// Runs every sweep point under `dir/point-NN/` and tabulates the metric.
///
/// `study.csv` is rewritten after each completed point, so an aborted study
/// leaves the rows finished so far on disk alongside the per-point outputs.
pub fn run_study(doc: &StudyDoc, dir: &Path) -> Result<StudySummary> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let table_path = dir.join("study.csv");
    let mut table = format!("{},{}\n", doc.sweep.parameter, doc.sweep.metric);
    fs::write(&table_path, &table).with_context(|| format!("writing {}", table_path.display()))?;

    let mut rows = Vec::new();
    let mut files = vec![table_path.clone()];
    for (i, &value) in doc.sweep.values.iter().enumerate() {
        let derived = apply_sweep(&doc.scenario, &doc.sweep.parameter, value)
            .map_err(|m| anyhow!("sweep point {i} ({} = {value}): {m}", doc.sweep.parameter))?;
        let point_dir = dir.join(format!("point-{i:02}"));
        let summary = run_scenario(&derived, &point_dir).with_context(|| {
            format!("sweep point {i} ({} = {value})", doc.sweep.parameter)
        })?;
        let metric = summary.metric(&doc.sweep.metric).ok_or_else(|| {
            anyhow!(
                "sweep point {i} ({} = {value}): metric {:?} not reported by this scenario \
                 (available: {})",
                doc.sweep.parameter,
                doc.sweep.metric,
                summary.metric_names().join(", ")
            )
        })?;
        files.extend(summary.files);
        rows.push((value, metric));
        table.push_str(&format!("{},{}\n", ff(value), ff(metric)));
        fs::write(&table_path, &table)
            .with_context(|| format!("writing {}", table_path.display()))?;
    }

    let slope = log_log_slope(&rows);
    let summary_path = dir.join("study-summary.csv");
    let slope_cell = match slope {
        Some(s) => ff(s),
        None => "nan".to_string(),
    };
    fs::write(
        &summary_path,
        format!("n-points,log-log-slope\n{},{}\n", rows.len(), slope_cell),
    )
    .with_context(|| format!("writing {}", summary_path.display()))?;
    files.push(summary_path);

    Ok(StudySummary { rows, slope, files })
}

/// Least-squares slope of `ln(y)` vs `ln(x)`; `None` unless all points are
/// strictly positive and at least two are given.
pub fn log_log_slope(rows: &[(f64, f64)]) -> Option<f64> {
    if rows.len() < 2 || rows.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return None;
    }
    let n = rows.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in rows {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}
