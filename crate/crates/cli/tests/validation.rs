//! Parsing and validation behavior of scenario and study documents: strict
//! TOML parsing, complete issue lists with field paths, and serialization
//! round-trips of every shipped file.

mod common;

use mslab_cli::scenario::{Issue, ScenarioDoc};
use mslab_cli::study::StudyDoc;
use mslab_cli::Document;

const MINIMAL_OSCILLATOR: &str = r#"
model = "oscillator"
output = "demo"

[oscillator]
mass = 1.0
stiffness = 4.0
damping = 0.0
x0 = 1.0
v0 = 0.0
t-end = 10.0
n-outputs = 100
"#;

fn scenario(text: &str) -> ScenarioDoc {
    ScenarioDoc::from_toml(text).expect("scenario parses")
}

fn paths(issues: &[Issue]) -> Vec<&str> {
    issues.iter().map(|i| i.path.as_str()).collect()
}

#[test]
fn minimal_oscillator_is_valid_with_defaults() {
    let doc = scenario(MINIMAL_OSCILLATOR);
    assert_eq!(doc.validate(), vec![], "a complete oscillator scenario has no issues");
    let osc = doc.oscillator.as_ref().expect("section present");
    assert!(!osc.compare_overdamped, "the comparison switch defaults to off");
    assert_eq!(doc.model, "oscillator");
    assert_eq!(doc.output, "demo");
}

#[test]
fn zero_layer_width_is_rejected_with_field_path() {
    let doc = scenario(
        r#"
model = "sorption1d"
output = "eps-zero"

[sorption1d]
variant = "resolved"
diffusivity = 1.0
t-end = 0.1
dt = 1e-3
scheme = "crank-nicolson"
n-cells = 100
n-outputs = 1
initial = "uniform"
x-right = 1.0

[sorption1d.potential]
kind = "square-well"
epsilon = 0.0
phi = 2.0
"#,
    );
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "exactly the layer width is wrong: {issues:?}");
    assert_eq!(issues[0].path, "sorption1d.potential.epsilon");
    assert!(
        issues[0].message.contains("epsilon must be positive"),
        "unexpected message: {}",
        issues[0].message
    );
}

#[test]
fn doubly_linked_channel_end_names_both_claims() {
    // Two junctions, each structurally sound on its own, both claim the
    // right end of channel 0.
    let doc = scenario(
        r#"
model = "sw-network"
output = "bad-network"

[sw-network]
t-end = 0.1
n-outputs = 1

[[sw-network.channels]]
length = 1.0
n-cells = 10
angle-deg = 0.0
bc-left = "wall"
bc-right = "junction"
initial = { kind = "uniform", h = 1.0, u = 0.0 }

[[sw-network.junctions]]
area = 0.01
h0 = 1.0
u0 = 0.0
v0 = 0.0
edges = [
  { length = 1.0, angle-deg = 180.0, channel = 0, end = "right" },
  { length = 1.0, angle-deg = 0.0, wall = true },
]

[[sw-network.junctions]]
area = 0.01
h0 = 1.0
u0 = 0.0
v0 = 0.0
edges = [
  { length = 1.0, angle-deg = 180.0, channel = 0, end = "right" },
  { length = 1.0, angle-deg = 0.0, wall = true },
]
"#,
    );
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "one linkage violation expected: {issues:?}");
    let msg = &issues[0].message;
    assert!(msg.contains("linked twice"), "unexpected message: {msg}");
    assert!(
        msg.contains("junction 0 edge 0") && msg.contains("junction 1 edge 0"),
        "both claiming edges must be named: {msg}"
    );
}

#[test]
fn every_violation_is_listed() {
    let doc = scenario(
        r#"
model = "oscillator"
output = "/abs/../bad"

[oscillator]
mass = -1.0
stiffness = 0.0
damping = 0.0
x0 = 1.0
v0 = 0.0
t-end = 0.0
n-outputs = 0
"#,
    );
    let issues = doc.validate();
    let got = paths(&issues);
    for expected in [
        "output",
        "oscillator.mass",
        "oscillator.stiffness",
        "oscillator.t-end",
        "oscillator.n-outputs",
    ] {
        assert!(got.contains(&expected), "missing issue for {expected}: {issues:?}");
    }
    assert_eq!(issues.len(), 5, "all violations and nothing else: {issues:?}");
}

#[test]
fn mismatched_section_is_flagged_both_ways() {
    let doc = scenario(
        r#"
model = "oscillator"
output = "demo"

[pendulum]
mass = 1.0
length = 1.0
stiffness = 1e3
theta0-deg = 30.0
t-end = 2.0
n-outputs = 10
rigid-dt = 1e-3
"#,
    );
    let issues = doc.validate();
    let got = paths(&issues);
    assert!(got.contains(&"oscillator"), "the required section is reported: {issues:?}");
    assert!(got.contains(&"pendulum"), "the stray section is reported: {issues:?}");
    assert_eq!(issues.len(), 2, "{issues:?}");
}

#[test]
fn unknown_model_tag_lists_the_known_tags() {
    let doc = scenario("model = \"weather\"\noutput = \"x\"\n");
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "{issues:?}");
    assert_eq!(issues[0].path, "model");
    assert!(issues[0].message.contains("unknown model tag \"weather\""));
    assert!(
        issues[0].message.contains("oscillator") && issues[0].message.contains("sw-network"),
        "the known tags are listed: {}",
        issues[0].message
    );
}

#[test]
fn unknown_keys_are_rejected_at_parse_time() {
    let text = MINIMAL_OSCILLATOR.replace("x0 = 1.0", "x0 = 1.0\nphase = 0.3");
    let err = ScenarioDoc::from_toml(&text).expect_err("unknown key must not parse");
    assert_eq!(err.len(), 1);
    assert_eq!(err[0].path, "<document>");
    assert!(err[0].message.contains("phase"), "names the offending key: {}", err[0].message);
}

#[test]
fn study_with_one_sweep_value_is_rejected() {
    let text = format!(
        "[sweep]\nparameter = \"oscillator.damping\"\nvalues = [1.0]\nmetric = \"rk4-max-deviation\"\n\n[scenario]\n{}",
        MINIMAL_OSCILLATOR.replace("\n[oscillator]", "\n[scenario.oscillator]")
    );
    let doc = StudyDoc::from_toml(&text).expect("study parses");
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "{issues:?}");
    assert_eq!(issues[0].path, "sweep.values");
    assert!(
        issues[0].message.contains("need at least two sweep values (got 1)"),
        "{}",
        issues[0].message
    );
}

#[test]
fn sweep_derived_scenarios_are_validated() {
    let text = format!(
        "[sweep]\nparameter = \"oscillator.damping\"\nvalues = [1.0, -2.0]\nmetric = \"rk4-max-deviation\"\n\n[scenario]\n{}",
        MINIMAL_OSCILLATOR.replace("\n[oscillator]", "\n[scenario.oscillator]")
    );
    let doc = StudyDoc::from_toml(&text).expect("study parses");
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "{issues:?}");
    assert_eq!(issues[0].path, "sweep.values[1] → oscillator.damping");
    assert!(issues[0].message.contains("must be ≥ 0"), "{}", issues[0].message);
}

#[test]
fn unknown_sweep_parameter_lists_the_known_ones() {
    let text = format!(
        "[sweep]\nparameter = \"oscillator.phase\"\nvalues = [1.0, 2.0]\nmetric = \"rk4-max-deviation\"\n\n[scenario]\n{}",
        MINIMAL_OSCILLATOR.replace("\n[oscillator]", "\n[scenario.oscillator]")
    );
    let doc = StudyDoc::from_toml(&text).expect("study parses");
    let issues = doc.validate();
    assert_eq!(issues.len(), 1, "{issues:?}");
    assert_eq!(issues[0].path, "sweep.parameter");
    assert!(
        issues[0].message.contains("not sweepable")
            && issues[0].message.contains("oscillator.damping"),
        "{}",
        issues[0].message
    );
}

#[test]
fn shipped_files_validate_cleanly_and_round_trip() {
    for file in common::shipped_files() {
        let name = file.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&file).expect("reading shipped file");
        let doc = Document::from_toml(&text)
            .unwrap_or_else(|e| panic!("{name} does not parse: {e:?}"));
        let issues = doc.validate();
        assert!(issues.is_empty(), "{name} has validation issues: {issues:?}");
        match &doc {
            Document::Scenario(s) => {
                let reparsed = ScenarioDoc::from_toml(&s.to_toml())
                    .unwrap_or_else(|e| panic!("{name} does not re-parse: {e:?}"));
                assert_eq!(&reparsed, s, "{name} changes across serialize/parse");
            }
            Document::Study(s) => {
                let reparsed = StudyDoc::from_toml(&s.to_toml())
                    .unwrap_or_else(|e| panic!("{name} does not re-parse: {e:?}"));
                assert_eq!(&reparsed, s, "{name} changes across serialize/parse");
            }
        }
    }
}
