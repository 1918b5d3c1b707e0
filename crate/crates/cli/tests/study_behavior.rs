//! Parameter-study behavior: the tabulated log-log slopes of the shipped
//! study files, and the abort semantics of a failing sweep point.

mod common;

use std::fs;

use mslab_cli::study::{run_study, StudyDoc};
use mslab_cli::Document;

fn shipped_study(name: &str) -> StudyDoc {
    let text = fs::read_to_string(common::scenario_dir().join(name)).expect("reading study file");
    match Document::from_toml(&text).expect("study parses") {
        Document::Study(s) => s,
        Document::Scenario(_) => panic!("{name} is not a study file"),
    }
}

fn shipped_slope(name: &str, scratch: &str) -> f64 {
    let doc = shipped_study(name);
    assert!(doc.validate().is_empty());
    let summary = run_study(&doc, &common::scratch(scratch)).expect("study runs");
    assert_eq!(summary.rows.len(), doc.sweep.values.len());
    summary.slope.unwrap_or_else(|| panic!("{name} has a well-defined slope"))
}

#[test]
fn grid_refinement_slope_is_second_order_in_the_spacing() {
    // The sweep runs over the cell count, so second-order convergence in the
    // spacing shows up as a slope of -2 against the swept parameter.
    let slope = shipped_slope("sorption-grid-study.toml", "grid-study");
    assert!(
        (-2.2..=-1.8).contains(&slope),
        "grid-refinement slope {slope} outside -2 ± 0.2"
    );
}

#[test]
fn capacity_correction_slope_is_just_under_first_order() {
    // The raw sup error against the layer width carries a first-order
    // capacity correction, which drags the three-point least-squares slope
    // slightly below one over this width range.
    let slope = shipped_slope("sorption-eps-study.toml", "eps-study");
    assert!(
        (0.85..=0.95).contains(&slope),
        "layer-width slope {slope} outside [0.85, 0.95]"
    );
}

#[test]
fn overdamped_deviation_slope_is_first_order_in_mass() {
    let slope = shipped_slope("oscillator-overdamped-limit.toml", "overdamped-study");
    assert!(
        (0.9..=1.1).contains(&slope),
        "overdamped-deviation slope {slope} outside 1 ± 0.1"
    );
}

#[test]
fn pendulum_angle_error_slope_is_inverse_first_order() {
    let slope = shipped_slope("pendulum-stiffness-study.toml", "pendulum-study");
    assert!(
        (-1.2..=-0.8).contains(&slope),
        "pendulum angle-error slope {slope} outside -1 ± 0.2"
    );
}

#[test]
fn failing_sweep_point_keeps_completed_rows() {
    // The explicit step 2e-4 is stable on the 40-cell grid but exceeds the
    // diffusive stability bound on the 80-cell grid, so the second point
    // aborts the study after the first has been tabulated.
    let doc = StudyDoc::from_toml(
        r#"
[sweep]
parameter = "sorption2d.n-cells"
values = [40, 80]
metric = "mass-drift"

[scenario]
model = "sorption2d"
output = "unstable"

[scenario.sorption2d]
domain-half-width = 1.0
n-cells = 40
diffusivity = 1.0
m = 0.5
t-end = 0.002
n-outputs = 1
dt = 2e-4
initial = "uniform"

[scenario.sorption2d.shape]
kind = "circle"
center = [0.0, 0.0]
radius = 0.25
"#,
    )
    .expect("study parses");
    assert!(doc.validate().is_empty(), "the step bound is a runtime property");

    let dir = common::scratch("failing-study");
    let err = run_study(&doc, &dir).expect_err("the refined point must abort");
    let msg = format!("{err:#}");
    assert!(
        msg.contains("sweep point 1 (sorption2d.n-cells = 80)"),
        "the failing point is identified: {msg}"
    );

    let table = fs::read_to_string(dir.join("study.csv")).expect("partial table kept");
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "sorption2d.n-cells,mass-drift");
    assert_eq!(lines.len(), 2, "header plus the one completed row: {table:?}");
    assert!(lines[1].starts_with("4.000000000000e1,"), "{table:?}");
    assert!(dir.join("point-00").is_dir(), "the completed point's files remain");
}

#[test]
fn unavailable_metric_aborts_with_the_reported_list() {
    let doc = StudyDoc::from_toml(
        r#"
[sweep]
parameter = "oscillator.damping"
values = [0.5, 1.0]
metric = "front-position-error"

[scenario]
model = "oscillator"
output = "wrong-metric"

[scenario.oscillator]
mass = 1.0
stiffness = 4.0
damping = 0.5
x0 = 1.0
v0 = 0.0
t-end = 1.0
n-outputs = 10
"#,
    )
    .expect("study parses");
    assert!(doc.validate().is_empty(), "metric availability is a runtime property");

    let dir = common::scratch("wrong-metric-study");
    let err = run_study(&doc, &dir).expect_err("the metric is never reported");
    let msg = format!("{err:#}");
    assert!(msg.contains("not reported"), "{msg}");
    assert!(
        msg.contains("available:") && msg.contains("rk4-max-deviation"),
        "the reported metrics are listed: {msg}"
    );
    let table = fs::read_to_string(dir.join("study.csv")).expect("table exists");
    assert_eq!(table.lines().count(), 1, "only the header was written: {table:?}");
}
